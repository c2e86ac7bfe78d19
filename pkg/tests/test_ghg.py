import numpy as np
import pytest
from hypothesis import given, strategies as st

from ghgkit.abelian import FinAbGroup, GroupHom
from ghgkit.ghg import (GhgDescriptor, base_case, canonical_autos, centre_and_derived, check_ndc,
                        commutator, diagonal_hom, direct_sum, even_base_case, inverse, multiply)


def naive_mul(d, x, y):
    """Base Case group law with plain integers."""
    a, b, c = x
    a2, b2, c2 = y
    return ((a + a2) % d, (b + b2) % d, (c + c2 + a * b2) % d)


def brute_centre_and_derived(desc):
    X = desc.all_coords()
    n = len(X)
    P = desc.mul_coords(np.repeat(X, n, axis=0), np.tile(X, (n, 1)))
    Q = desc.mul_coords(np.tile(X, (n, 1)), np.repeat(X, n, axis=0))
    same = np.all(P == Q, axis=1).reshape(n, n)
    centre = int(np.sum(np.all(same, axis=1)))
    comms = desc.commutator_coords(np.repeat(X, n, axis=0), np.tile(X, (n, 1)))
    derived = len({tuple(r) for r in comms.tolist()})
    return centre, derived


@pytest.mark.parametrize("d", [3, 5, 7, 9, 15])
def test_group_law_base_case(d, rng):
    desc = base_case(d)
    P, Q, R = (desc.random_coords(rng, 1000) for _ in range(3))
    lhs = desc.mul_coords(desc.mul_coords(P, Q), R)
    rhs = desc.mul_coords(P, desc.mul_coords(Q, R))
    assert np.array_equal(lhs, rhs)
    for x, y in zip(P[:200].tolist(), Q[:200].tolist()):
        assert tuple(desc.mul_coords(np.array(x), np.array(y)).tolist()) == naive_mul(d, x, y)
    ident = desc.identity().coords()
    assert np.all(desc.mul_coords(P, desc.inv_coords(P)) == ident)


def test_examples_d3():
    desc = base_case(3)
    h = desc.element([1], [1], [0])
    assert multiply(h, h).coords().tolist() == [2, 2, 1]
    assert multiply(h, desc.identity()) == h
    assert inverse(desc.element([1], [2], [0])).coords().tolist() == [2, 1, 2]
    assert inverse(desc.central([1])).coords().tolist() == [0, 0, 2]
    assert commutator(desc.element([1], [0], [0]), desc.element([0], [1], [0])).coords().tolist() == [0, 0, 1]
    assert commutator(h, h).is_identity()


@given(st.sampled_from([3, 4, 5, 6]), st.data())
def test_commutator_formula(d, data):
    desc = base_case(d)
    rnd = lambda: desc.element([data.draw(st.integers(0, d - 1))], [data.draw(st.integers(0, d - 1))],
                               [data.draw(st.integers(0, d - 1))])
    h, k = rnd(), rnd()
    four = h * k * h.inverse() * k.inverse()
    assert commutator(h, k) == four
    assert not np.any(four.coords()[:2])


def test_heis_elem_json_and_validation():
    desc = base_case(5)
    h = desc.element([1], [2], [3])
    assert h.to_json() == {"a": [1], "b": [2], "c": [3]}
    with pytest.raises(ValueError):
        multiply(h, base_case(3).identity())


def test_descriptor_json_roundtrip():
    for desc in (base_case(5), even_base_case(4)):
        assert GhgDescriptor.from_json(desc.to_json()) == desc


def test_centre_and_derived():
    for desc in (base_case(3), base_case(5), base_case(6), even_base_case(2)):
        st_ = centre_and_derived(desc)
        centre, derived = brute_centre_and_derived(desc)
        assert st_.centre_order == centre
        assert st_.derived_order == derived
    assert centre_and_derived(base_case(6)).derived_order == 6
    assert centre_and_derived(base_case(5)).centre_order == 5
    flat = GhgDescriptor(FinAbGroup.cyclic(3), FinAbGroup.cyclic(3), FinAbGroup.cyclic(3), [[[0]]])
    assert centre_and_derived(flat).centre_order == flat.order


def test_check_ndc():
    assert check_ndc(base_case(5))
    assert check_ndc(even_base_case(4))
    Z2, Z4 = FinAbGroup.cyclic(2), FinAbGroup.cyclic(4)
    noncyc = GhgDescriptor(Z2, Z2, FinAbGroup((2, 2)), [[[1, 0]]])
    rep = check_ndc(noncyc)
    assert not rep and not rep.c_cyclic
    degenerate = GhgDescriptor(Z4, Z2, Z4, [[[2]]])
    rep = check_ndc(degenerate)
    assert not rep and not rep.equal_sizes
    # brute force: a = 2 pairs trivially with everything
    assert rep.order_K_A == 2


def test_order_under_ndc():
    for d in (3, 4, 5):
        desc = base_case(d)
        assert desc.order == desc.s ** 2 * desc.r


def test_diagonal_hom():
    d = 5
    desc = base_case(d)
    G = desc.A
    idm = diagonal_hom(GroupHom.identity(G), GroupHom.identity(G), GroupHom.identity(G), desc, desc)
    X = desc.all_coords()
    assert np.array_equal(idm.apply_coords(X), X)
    t = diagonal_hom(GroupHom.scalar(G, 2), GroupHom.scalar(G, 3), GroupHom.scalar(G, 1), desc, desc)
    assert t.is_automorphism()
    d3 = base_case(3)
    Z3 = d3.A
    with pytest.raises(ValueError, match="generator pair"):
        diagonal_hom(GroupHom.identity(Z3), GroupHom.identity(Z3), GroupHom.scalar(Z3, 2), d3, d3)


def test_diagonal_hom_preserves_products(rng):
    desc = base_case(7)
    G = desc.A
    t = diagonal_hom(GroupHom.scalar(G, 3), GroupHom.scalar(G, 5), GroupHom.scalar(G, 1), desc, desc)
    P, Q = desc.random_coords(rng, 300), desc.random_coords(rng, 300)
    assert np.array_equal(t.apply_coords(desc.mul_coords(P, Q)),
                          desc.mul_coords(t.apply_coords(P), t.apply_coords(Q)))


def test_base_case_from_integers_diagonal_iso():
    # H[Z, dZ] = H(Z/d, (1/d)Z/Z, (1/d)Z/Z, x) -> H_d via id x d x d
    from ghgkit.arith import ArithTuple, NumberFieldOrder, trace_pairing_build
    d = 5
    Q = NumberFieldOrder.rationals()
    src = trace_pairing_build(ArithTuple(Q.unit_ideal(), Q.ideal([str(d)]))).desc
    dst = base_case(d)
    # src generators: A = Z/d (1), B = (1/d)Z/Z with generator 1/d identified with coordinate 1
    m = diagonal_hom(GroupHom.identity(src.A), GroupHom(src.B, dst.B, ((1,),)),
                     GroupHom(src.C, dst.C, ((1,),)), src, dst)
    assert m.is_automorphism()


def test_direct_sum():
    ds = direct_sum([base_case(3)])
    assert ds.desc.order == base_case(3).order
    ds = direct_sum([base_case(3), base_case(3)])
    assert ds.desc.order == 3 ** 5
    assert ds.desc.A.invariant_factors == (3, 3)
    d = base_case(3)
    X = d.all_coords()
    # theta is a homomorphism from H x H, surjective with kernel of order r^(m-1) = 3
    images = {}
    for i, x in enumerate(X):
        for j, y in enumerate(X):
            img = tuple(ds.theta_coords([x, y]).tolist())
            images.setdefault(img, 0)
            images[img] += 1
    assert len(images) == ds.desc.order
    kernel = images[tuple(ds.desc.identity().coords().tolist())]
    assert kernel == 3
    rng = np.random.default_rng(1)
    for _ in range(50):
        p1, p2, q1, q2 = (d.random_coords(rng, 1)[0] for _ in range(4))
        lhs = ds.theta_coords([d.mul_coords(p1, q1), d.mul_coords(p2, q2)])
        rhs = ds.desc.mul_coords(ds.theta_coords([p1, p2]), ds.theta_coords([q1, q2]))
        assert np.array_equal(lhs, rhs)
    with pytest.raises(ValueError):
        direct_sum([base_case(3), base_case(5)])


def test_canonical_autos():
    desc = base_case(3)
    maps = canonical_autos(desc)
    assert set(maps) == {"id", "phi_minus_a", "phi_minus_b", "phi_neg", "phi"}
    h = desc.element([1], [1], [1])
    assert maps["phi_minus_a"].apply_coords(h.coords()).tolist() == [2, 1, 2]
    z = desc.central([2]).coords()
    assert np.array_equal(maps["phi_neg"].apply_coords(z), z)
    # phi_-1 = phi^- o phi_-
    X = desc.all_coords()
    assert np.array_equal(maps["phi_neg"].apply_coords(X),
                          maps["phi_minus_b"].compose(maps["phi_minus_a"]).apply_coords(X))
    d5 = base_case(5)
    phi = canonical_autos(d5)["phi"]
    X = d5.all_coords()
    assert np.array_equal(phi.apply_coords(phi.apply_coords(X)), X)
    G = FinAbGroup((3, 3))
    asym = GhgDescriptor(G, G, FinAbGroup.cyclic(3), [[[1], [1]], [[0], [1]]])
    assert "phi" not in canonical_autos(asym)
    from ghgkit.ghg import swap_automorphism
    with pytest.raises(ValueError):
        swap_automorphism(asym)
