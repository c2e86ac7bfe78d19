from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ghgkit.autgrp import (Automorphism, delta, enumerate_sp, inner_automorphism, sum_group_coords,
                           sum_group_index, weil_solve)
from ghgkit.bouquet import (Bouquet, Line, NotFreeError, autgroup_orbits, base_case_eigenbasis,
                            canonical_phase, classify, clinometric_check, divisor_orbits, generating_set,
                            orbit_and_stabilizer, overlap_table, projector_decompose,
                            projector_from_coefficients, rational_vector, same_line, symmetry_group,
                            upsilon_apply, upsilon_apply_exact, upsilon_matrix)
from ghgkit.ghg import GhgDescriptor, base_case, even_base_case
from ghgkit.abelian import FinAbGroup
from ghgkit.schrodinger import RepConfig, sigma_matrices

from conftest import HESSE


def random_vec(rng, s):
    v = rng.normal(size=s) + 1j * rng.normal(size=s)
    return v / np.linalg.norm(v)


def test_line_canonical_phase():
    v = np.array([0.5j, -1j, 0.2])
    L = Line(v)
    assert abs(np.linalg.norm(L.vector) - 1) < 1e-12
    assert L.vector[1].real > 0 and abs(L.vector[1].imag) < 1e-15
    assert L == Line(np.exp(0.7j) * 3 * v)
    assert not same_line(v, np.array([1, 0, 0]))
    with pytest.raises(ValueError):
        Line(np.zeros(3))


def test_e0_line_stabilizer():
    cfg = RepConfig(base_case(3))
    b = orbit_and_stabilizer(cfg, np.array([1, 0, 0]))
    assert len(b.stabilizer) == 3 and len(b) == 3 and not b.free
    G = sum_group_coords(cfg.desc)
    assert all(G[i][0] == 0 for i in b.stabilizer)        # stabilizer = {(0, b)}
    assert len(b) * len(b.stabilizer) == 9


def test_hesse_orbit_and_angles():
    cfg = RepConfig(base_case(3))
    b = orbit_and_stabilizer(cfg, HESSE)
    assert b.free and len(b) == 9
    lines = b.lines
    for i in range(9):
        for j in range(i + 1, 9):
            assert not same_line(lines[i], lines[j])
    # oracle: overlaps with hand-built clock and shift
    X = np.roll(np.eye(3), 1, axis=0)
    Z = np.diag(np.exp(2j * np.pi * np.arange(3) / 3))
    direct = [abs(np.vdot(HESSE, np.linalg.matrix_power(X, a) @ np.linalg.matrix_power(Z, c) @ HESSE))
              for a in range(3) for c in range(3) if (a, c) != (0, 0)]
    assert len(direct) == 8 and max(abs(x - 0.5) for x in direct) < 1e-12
    tab = overlap_table(cfg, b.base)
    assert np.max(np.abs(tab.angles[1:] - 0.5)) < 1e-12
    # each stored line equals gamma . base for its key
    M = sigma_matrices(cfg, cfg.desc.join(sum_group_coords(cfg.desc)[list(b.keys)][:, :1],
                                          sum_group_coords(cfg.desc)[list(b.keys)][:, 1:],
                                          np.zeros((9, 1), dtype=np.int64)))
    for k in range(9):
        assert same_line(M[k] @ b.base.vector, lines[k])


def test_random_lines_free(rng):
    cfg = RepConfig(base_case(5))
    assert all(orbit_and_stabilizer(cfg, random_vec(rng, 5)).free for _ in range(20))


def test_overlap_table_invariants(rng):
    for desc in (base_case(5), base_case(4), even_base_case(3)):
        cfg = RepConfig(desc)
        v = random_vec(rng, cfg.s)
        tab = overlap_table(cfg, v)
        G = sum_group_coords(desc)
        inv = sum_group_index(desc, -G)
        assert abs(tab.angles[0] - 1) < 1e-12
        assert np.max(np.abs(tab.angles - tab.angles[inv])) < 1e-12
        assert np.all(tab.angles <= 1 + 1e-12) and np.all(tab.angles >= 0)
        assert np.all(tab.angles[1:] < 1 - 1e-9)     # generic line is free
    with pytest.raises(ValueError):
        overlap_table(RepConfig(base_case(3)), np.array([2, 0, 0]))


def test_translation_rule_and_base_independence(rng):
    desc = base_case(5)
    cfg = RepConfig(desc)
    v = random_vec(rng, 5)
    G = sum_group_coords(desc)
    D = sigma_matrices(cfg, desc.join(G[:, :1], G[:, 1:], np.mod(3 * G[:, :1] * G[:, 1:], 5)))
    base = overlap_table(cfg, v).values
    for k in rng.integers(0, 25, size=6):
        w = D[k] @ v
        moved = overlap_table(cfg, w).values
        phase = cfg.p(delta(desc, G, G[k]))
        assert np.max(np.abs(moved - phase * base)) < 1e-10
        assert np.max(np.abs(np.abs(moved) - np.abs(base))) < 1e-10


def test_projector_decomposition(rng):
    cfg = RepConfig(base_case(3))
    desc = cfg.desc
    v = random_vec(rng, 3)
    coeffs = projector_decompose(cfg, v)
    P = projector_from_coefficients(cfg, coeffs)
    assert np.max(np.abs(P - np.outer(v, v.conj()))) < 1e-10
    # <v, h(a, b, c) v> = psi(c - lambda(a, b)/2) s l_{-a}
    G = sum_group_coords(desc)
    inv = sum_group_index(desc, -G)
    for n, (a, b) in enumerate(G):
        for c in range(3):
            lhs = np.vdot(v, sigma_matrices(cfg, [a, b, c])[0] @ v)
            rhs = cfg.p(c - 2 * a * b) * 3 * coeffs[inv[n]]
            assert abs(lhs - rhs) < 1e-12


@pytest.mark.parametrize("d", [3, 5, 7])
def test_upsilon_spectrum(d):
    cfg = RepConfig(base_case(d))
    U = upsilon_matrix(cfg)
    s = d
    assert np.allclose(U, U.conj().T)
    assert np.max(np.abs(U @ U - s * s * np.eye(s * s))) < 1e-9
    ev = np.linalg.eigvalsh(U)
    plus = int(np.sum(np.abs(ev - s) < 1e-8))
    minus = int(np.sum(np.abs(ev + s) < 1e-8))
    assert (plus, minus) == (s * (s + 1) // 2, s * (s - 1) // 2)
    if d == 3:
        assert (plus, minus) == (6, 3)


def test_upsilon_dense_matches_matrix_free(rng):
    cfg = RepConfig(base_case(7), 3)
    f = rng.normal(size=49) + 1j * rng.normal(size=49)
    assert np.max(np.abs(upsilon_apply(cfg, f, dense=True) - upsilon_apply(cfg, f, dense=False))) < 1e-10


def test_upsilon_exact_on_w():
    d = 9
    basis = base_case_eigenbasis(d)
    desc = base_case(d)
    phi_deg = 6                                   # degree of the 9th cyclotomic polynomial
    for j, w in basis.w.items():
        got = upsilon_apply_exact(desc, [Fraction(int(x)) for x in w])
        want = rational_vector([Fraction((d // j) ** 2 * int(x)) for x in basis.w[d // j]], d, phi_deg)
        assert got == want


@pytest.mark.parametrize("d", [3, 9])
def test_base_case_u_eigenvectors(d):
    basis = base_case_eigenbasis(d)
    desc = base_case(d)
    for j, u in basis.u.items():
        got = upsilon_apply_exact(desc, u)
        n = len(got[0])
        assert got == rational_vector([d * x for x in u], d, n)


def test_base_case_basis_d3():
    basis = base_case_eigenbasis(3)
    assert sorted(basis.u) == [1]
    assert len(basis.orbits[1]) == 1 and len(basis.orbits[3]) == 8
    w1, w3 = basis.w[1], basis.w[3]
    assert basis.u[1] == [Fraction(1, 4) * int(x) + Fraction(3, 4) * int(y) for x, y in zip(w1, w3)]
    # d prime: the only eigenvector forces the SIC values 1/(d+1) off the identity
    for p in (5, 7):
        b = base_case_eigenbasis(p)
        assert sorted(b.u) == [1]
        assert set(b.u[1][1:]) == {Fraction(1, p + 1)}


def test_clinometric_relation(rng):
    cfg = RepConfig(base_case(5))
    rep = clinometric_check(cfg, random_vec(rng, 5))
    assert rep.residual < 1e-8 and abs(rep.angle_sum - rep.expected) < 1e-10
    cfg3 = RepConfig(base_case(3))
    b = orbit_and_stabilizer(cfg3, np.array([1, 0, 0]))
    rep = clinometric_check(cfg3, b)
    assert rep.residual < 1e-8 and abs(rep.angle_sum - 3) < 1e-10
    cfg_even = RepConfig(even_base_case(4))
    rep = clinometric_check(cfg_even, random_vec(rng, 4))
    assert rep.residual < 1e-8


def test_classification():
    cfg = RepConfig(base_case(3))
    b = orbit_and_stabilizer(cfg, HESSE)
    c = classify(cfg, b, list(divisor_orbits(cfg.desc).values()))
    assert c.equiangular and c.regular and abs(c.value - 0.5) < 1e-12
    with pytest.raises(NotFreeError):
        classify(cfg, orbit_and_stabilizer(cfg, np.array([1, 0, 0])))
    Z3 = FinAbGroup.cyclic(3)
    degenerate = GhgDescriptor(Z3, Z3, Z3, [[[0]]])
    with pytest.raises(ValueError):
        orbit_and_stabilizer(RepConfig(degenerate), HESSE)


def test_classification_perturbed_and_regular(rng):
    from ghgkit.search import equiangular_problem, optimize_fiducial
    cfg5 = RepConfig(base_case(5))
    sic5 = optimize_fiducial(equiangular_problem(cfg5, seed=1)).vector
    c = classify(cfg5, orbit_and_stabilizer(cfg5, sic5 + 1e-3 * random_vec(rng, 5)))
    assert not c.equiangular and 3e-4 < c.spread < 3e-3
    # the Hesse SIC is a degenerate point of the angle map: the spread is quadratic in the noise
    cfg = RepConfig(base_case(3))
    c = classify(cfg, orbit_and_stabilizer(cfg, HESSE + 1e-3 * random_vec(rng, 3)))
    assert not c.equiangular and 1e-7 < c.spread < 1e-5
    # a line with a symmetry is regular for the orbits of that symmetry
    v = random_vec(rng, 5)
    v = v + v[(-np.arange(5)) % 5]                # parity-invariant: angle(g) = angle(-g)
    b = orbit_and_stabilizer(cfg5, v)
    G = sum_group_coords(cfg5.desc)
    pairs = [np.array(sorted({n, int(sum_group_index(cfg5.desc, -G[n]))})) for n in range(1, 25)]
    orbits = list({tuple(p): p for p in pairs}.values())
    c = classify(cfg5, b, orbits)
    assert c.regular and not c.equiangular
    c2 = classify(cfg5, b, [np.arange(1, 25)])
    assert not c2.regular and c2.witness == 0


def test_symmetry_group_hesse():
    cfg = RepConfig(base_case(3))
    b = orbit_and_stabilizer(cfg, HESSE)
    sp = enumerate_sp(cfg.desc)
    sym = symmetry_group(cfg, b, sp, np.random.default_rng(0))
    orders = []
    for g in sym:
        k, acc = 1, g
        while not acc.is_identity():
            acc, k = acc.compose(g), k + 1
        orders.append(k)
    assert 3 in orders
    gens = generating_set(cfg.desc, sym)
    assert 1 <= len(gens) <= 3


def test_symmetry_random_line_reports(rng):
    cfg = RepConfig(base_case(5))
    b = orbit_and_stabilizer(cfg, random_vec(rng, 5))
    sym = symmetry_group(cfg, b, enumerate_sp(cfg.desc)[:40], rng)
    assert all(isinstance(g, type(enumerate_sp(cfg.desc)[0])) for g in sym)


def test_angle_transport_and_inner_invariance(rng):
    cfg = RepConfig(base_case(5))
    desc = cfg.desc
    G = sum_group_coords(desc)
    v = random_vec(rng, 5)
    ang = overlap_table(cfg, v).angles
    sp = enumerate_sp(desc)
    for k in rng.integers(0, len(sp), size=5):
        phi = Automorphism(desc, (0, 0), sp[k])
        w = weil_solve(cfg, phi, rng) @ v
        moved = sum_group_index(desc, sp[k].apply(G))
        assert np.max(np.abs(overlap_table(cfg, w).angles[moved] - ang)) < 1e-8
    # inner automorphisms keep the bouquet: T_{phi_h} v lies in the orbit of v
    b = orbit_and_stabilizer(cfg, v)
    h = desc.join([2], [3], [1])
    w = weil_solve(cfg, inner_automorphism(desc, h), rng) @ v
    assert any(same_line(w, line) for line in b.lines)


def test_orbit_partitions():
    desc = base_case(9)
    div = divisor_orbits(desc)
    assert {j: len(o) for j, o in div.items()} == {3: 8, 9: 72}
    auto = autgroup_orbits(base_case(3), enumerate_sp(base_case(3)))
    assert [len(o) for o in auto] == [8]


@given(st.lists(st.floats(-1, 1), min_size=6, max_size=6))
def test_clinometric_property(xs):
    v = np.array(xs[:3]) + 1j * np.array(xs[3:])
    if np.linalg.norm(v) < 1e-3:
        return
    cfg = RepConfig(base_case(3))
    rep = clinometric_check(cfg, v)
    assert rep.residual < 1e-8 and abs(rep.angle_sum - 3) < 1e-9
