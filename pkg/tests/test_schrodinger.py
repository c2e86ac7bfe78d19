import numpy as np
import pytest
from hypothesis import given, strategies as st

from ghgkit.abelian import FinAbGroup
from ghgkit.ghg import (GhgDescriptor, base_case, canonical_autos, centre_mask, coset_representatives,
                        direct_sum, even_base_case, swap_iso, transpose_descriptor)
from ghgkit.schrodinger import (RepConfig, StateVector, character, fourier_matrix, fourier_xi, rep_matrix,
                                sigma_apply, sigma_matrices, sv_classify, sv_classify_sigma, tau_apply,
                                tau_matrices, tensor_factorize, tensor_vector, unitarity_residual)


def clock_shift(d):
    """Hand-built X (e_j -> e_{j+1}) and Z = diag(zeta^x)."""
    X = np.zeros((d, d))
    for j in range(d):
        X[(j + 1) % d, j] = 1
    Z = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return X, Z


def test_identity_and_generators_d3():
    cfg = RepConfig(base_case(3))
    f = np.array([1, 2j, -1])
    assert np.allclose(sigma_apply(cfg, cfg.desc.identity(), f).values, f)
    X, Z = clock_shift(3)
    assert np.allclose(rep_matrix(cfg, [2, 0, 0]), X)           # h(-1, 0, 0)
    assert np.allclose(rep_matrix(cfg, [0, 1, 0]), Z)
    for x in range(3):
        e = StateVector.basis(cfg.desc.A, [x])
        out = sigma_apply(cfg, cfg.desc.element([0], [1], [0]), e)
        assert np.allclose(out.values, np.exp(2j * np.pi * x / 3) * e.values)


def test_action_law_and_unitarity(rng):
    for desc in (base_case(4), base_case(5), even_base_case(3)):
        cfg = RepConfig(desc)
        P, Q = desc.random_coords(rng, 40), desc.random_coords(rng, 40)
        f = rng.normal(size=cfg.s) + 1j * rng.normal(size=cfg.s)
        SP, SQ = sigma_matrices(cfg, P), sigma_matrices(cfg, Q)
        SPQ = sigma_matrices(cfg, desc.mul_coords(P, Q))
        assert np.max(np.abs(SPQ - SP @ SQ)) < 1e-12
        for n in range(len(P)):
            lhs = sigma_apply(cfg, desc.mul_coords(P[n], Q[n]), f).values
            rhs = sigma_apply(cfg, P[n], sigma_apply(cfg, Q[n], f)).values
            assert np.allclose(lhs, rhs)
            assert abs(np.linalg.norm(sigma_apply(cfg, P[n], f).values) - np.linalg.norm(f)) < 1e-12
            assert unitarity_residual(SP[n]) < 1e-12
        TPQ = tau_matrices(cfg, desc.mul_coords(P, Q))
        assert np.max(np.abs(TPQ - tau_matrices(cfg, P) @ tau_matrices(cfg, Q))) < 1e-12


def test_central_character():
    for desc, u in ((base_case(5), 2), (even_base_case(4), 3)):
        cfg = RepConfig(desc, u)
        for c in range(desc.r):
            want = np.exp(2j * np.pi * ((u * c) % desc.r) / desc.r)
            assert np.max(np.abs(rep_matrix(cfg, desc.central([c])) - want * np.eye(cfg.s))) < 1e-15
            assert np.max(np.abs(rep_matrix(cfg, desc.central([c]), "right") - want * np.eye(cfg.s))) < 1e-15


def test_even_generator_zeta_2d():
    cfg = RepConfig(even_base_case(4))
    assert np.allclose(rep_matrix(cfg, [0, 0, 1]), np.exp(1j * np.pi / 4) * np.eye(4))


def test_tau_from_sigma_of_transposed_group():
    # tau_p = sigma~_{p*} o phi o phi_-1, sigma~ on H(B, A, C, lambda^op), p* = conj(p)
    desc = base_case(3)
    cfg = RepConfig(desc, 1)
    tcfg = RepConfig(transpose_descriptor(desc), -1)
    swap = swap_iso(desc)
    neg = canonical_autos(desc)["phi_neg"]
    X = desc.all_coords()
    lhs = tau_matrices(cfg, X)
    rhs = sigma_matrices(tcfg, swap.apply_coords(neg.apply_coords(X)))
    assert np.max(np.abs(lhs - rhs)) < 1e-12
    l = np.array([1, 1j, 2])
    for x in X[:10]:
        assert np.allclose(tau_apply(cfg, x, l).values, lhs[desc.index(x)] @ l)


@pytest.mark.parametrize("d,u", [(3, 1), (3, 0), (5, 1), (5, 2), (5, 0), (6, 2)])
def test_character_closed_form(d, u):
    cfg = RepConfig(base_case(d), u)
    X = cfg.desc.all_coords()
    brute = np.trace(sigma_matrices(cfg, X), axis1=1, axis2=2)
    brute_r = np.trace(tau_matrices(cfg, X), axis1=1, axis2=2)
    closed = np.array([character(cfg, x) for x in X])
    closed_r = np.array([character(cfg, x, "right") for x in X])
    assert np.max(np.abs(brute - closed)) < 1e-12
    assert np.max(np.abs(brute_r - closed_r)) < 1e-12


def test_character_example():
    cfg = RepConfig(base_case(3))
    assert character(cfg, [0, 1, 0]) == 0
    assert abs(character(cfg, [0, 0, 1]) - 3 * np.exp(2j * np.pi / 3)) < 1e-12


def test_sv_classification():
    assert sv_classify_sigma(RepConfig(base_case(3))).sv
    assert sv_classify_sigma(RepConfig(base_case(5), 2)).sv
    assert sv_classify_sigma(RepConfig(even_base_case(2))).sv
    rep = sv_classify_sigma(RepConfig(base_case(3), 0))
    assert not rep.sv and not rep.irreducible
    rep = sv_classify_sigma(RepConfig(base_case(6), 2))    # p(1) of order 3: not faithful on C
    assert not rep.sv


def test_inflation_is_sv():
    # rho_1 = sigma_p o theta on H x H, m = 2, d = 3
    d = base_case(3)
    ds = direct_sum([d, d])
    cfg = RepConfig(ds.desc)
    X = d.all_coords()
    n = len(X)
    pairs = [(x, y) for x in X for y in X]
    mats = sigma_matrices(cfg, np.array([ds.theta_coords([x, y]) for x, y in pairs]))
    cm = centre_mask(d)
    central = np.array([cm[i] and cm[j] for i in range(n) for j in range(n)])
    zero_c = np.array([not np.any(x[2:]) for x in X])
    reps = [i * n + j for i in range(n) for j in range(n) if zero_c[i] and zero_c[j]]
    assert sv_classify(mats, central, reps).sv


def test_faithful_for_injective_p():
    for d in (2, 3, 4, 5):
        desc = base_case(d)
        for u in range(1, d):
            cfg = RepConfig(desc, u)
            X = desc.all_coords()
            M = sigma_matrices(cfg, X)
            near_id = np.all(np.abs(M - np.eye(cfg.s)) < 1e-9, axis=(1, 2))
            if cfg.injective:
                assert near_id.sum() == 1 and near_id[0]
            else:
                assert near_id.sum() > 1


def test_tight_frame_identity(rng):
    for desc in (base_case(3), base_case(4), even_base_case(3), base_case(5)):
        cfg = RepConfig(desc)
        reps = desc.all_coords()[coset_representatives(desc)]
        M = sigma_matrices(cfg, reps)
        v = rng.normal(size=cfg.s) + 1j * rng.normal(size=cfg.s)
        u = rng.normal(size=cfg.s) + 1j * rng.normal(size=cfg.s)
        frame = M @ v
        lhs = sum(np.vdot(g, u) * g for g in frame)
        rhs = len(reps) * np.vdot(v, v).real / cfg.s * u
        assert np.max(np.abs(lhs - rhs)) < 1e-9
        # Tr F_{u1,u2} = |G| <u1, u2> for F_{u1,u2} w = sum_g <g u1, w> g u2, over all of G
        allM = sigma_matrices(cfg, desc.all_coords())
        F = sum(np.outer(Mg @ u, (Mg @ v).conj()) for Mg in allM)
        assert abs(np.trace(F) - desc.order * np.vdot(v, u)) < 1e-8 * desc.order


@pytest.mark.parametrize("d", [3, 5, 7, 9])
def test_fourier_duality(d, rng):
    cfg = RepConfig(base_case(d))
    F = fourier_matrix(cfg)
    s = cfg.s
    for a in range(s):
        omega = np.exp(2j * np.pi * a * np.arange(s) / d) / np.sqrt(s)
        assert np.allclose(fourier_xi(cfg, StateVector.basis(cfg.desc.A, [a])).values, omega)
    gens = np.eye(3, dtype=np.int64)
    res = np.max(np.abs(F @ sigma_matrices(cfg, gens) - tau_matrices(cfg, gens) @ F))
    assert res < 1e-10
    f1 = rng.normal(size=s) + 1j * rng.normal(size=s)
    f2 = rng.normal(size=s) + 1j * rng.normal(size=s)
    assert abs(np.vdot(F @ f1, F @ f2) - np.vdot(f1, f2)) < 1e-12
    with pytest.raises(ValueError):
        fourier_matrix(RepConfig(base_case(d), 0))


def test_tensor_factorize(rng):
    d = base_case(3)
    ds = direct_sum([d, d])
    cfgs = [RepConfig(d), RepConfig(d)]
    full = RepConfig(ds.desc)
    for _ in range(200):
        h = ds.desc.from_coords(ds.desc.random_coords(rng, 1)[0])
        i, j = rng.integers(0, 3, size=2)
        e1 = StateVector.basis(d.A, [i])
        e2 = StateVector.basis(d.A, [j])
        got = tensor_factorize(ds, cfgs, h, [e1, e2], verify=True)
        ref = sigma_apply(full, h, tensor_vector(ds, [e1, e2]))
        assert np.max(np.abs(got.values - ref.values)) < 1e-12
    with pytest.raises(ValueError):
        tensor_factorize(ds, cfgs, h, [np.ones(9)])


def test_state_vector_json_and_errors():
    G = FinAbGroup.cyclic(3)
    v = StateVector(G, [1, 1j, 0])
    assert np.allclose(StateVector.from_json(G, v.to_json()).values, v.values)
    with pytest.raises(ValueError):
        StateVector(G, [1, 2])
    cfg = RepConfig(base_case(3))
    with pytest.raises(ValueError):
        sigma_apply(cfg, cfg.desc.identity(), np.ones(4))
    with pytest.raises(ValueError):
        RepConfig(GhgDescriptor(G, G, FinAbGroup((3, 3)), [[[1, 0]]]))
    with pytest.raises(ValueError):
        rep_matrix(cfg, [0, 0, 0], "middle")


@given(st.integers(2, 7), st.integers(0, 6), st.data())
def test_rep_homomorphism_property(d, u, data):
    cfg = RepConfig(base_case(d), u)
    el = lambda: np.array([data.draw(st.integers(0, d - 1)) for _ in range(3)])
    x, y = el(), el()
    lhs = rep_matrix(cfg, cfg.desc.mul_coords(x, y))
    assert np.max(np.abs(lhs - rep_matrix(cfg, x) @ rep_matrix(cfg, y))) < 1e-12
