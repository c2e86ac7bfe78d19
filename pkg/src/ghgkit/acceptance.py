"""The ten acceptance checks, shared by ``ghgkit selftest`` and the test suite.

Every check returns a CriterionResult; none of them raises on a failed
comparison.  ``quick`` shrinks sample sizes and dimensions for a fast
smoke run; the full run uses the stated sizes and tolerances.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .arith import (ghg_with_enlarged_centre, parse_config, sl2_correspondence,
                    trace_pairing_build)
from .autgrp import (Automorphism, delta_diagonal, enumerate_aut0, enumerate_sl2, enumerate_sp,
                     half, inner_automorphism, mod_phase_residual, permutation_operator,
                     weil_solve)
from .bouquet import (Line, base_case_eigenbasis, classify, clinometric_check,
                      orbit_and_stabilizer, overlap_table, upsilon_apply_exact)
from .ghg import GhgDescriptor, base_case, centre_and_derived, even_base_case
from .schrodinger import (RepConfig, character, fourier_matrix,
                          sigma_matrices, sv_classify_sigma, tau_matrices, unitarity_residual)
from .search import equiangular_problem, optimize_fiducial

SQRT2_CONFIG = {"min_poly": [-2, 0, 1], "I": ["1", "th"], "frak_f": ["7", "3+th"], "r": None}
SQRT5_CONFIG = {"quadratic": 5, "I": ["1"], "frak_f": ["3"], "r": None}
HESSE_FIDUCIAL = np.array([0, 1, -1]) / np.sqrt(2)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] criterion {self.number}: {self.name} ({self.seconds:.1f} s) {self.detail}"


def _timed(number: int, name: str, fn: Callable[[], tuple[bool, str]]) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure of the criterion, reported as such
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    return CriterionResult(number, name, bool(ok), detail, time.perf_counter() - t0)


# --------------------------------------------------------------------------
# 1. group law
# --------------------------------------------------------------------------

def group_law_failures(desc: GhgDescriptor, rng: np.random.Generator, n: int) -> int:
    X, Y, W = (desc.random_coords(rng, n) for _ in range(3))
    mul = desc.mul_coords
    fails = np.any(mul(mul(X, Y), W) != mul(X, mul(Y, W)), axis=1)
    e = np.zeros_like(X)
    fails |= np.any(mul(X, desc.inv_coords(X)) != e, axis=1)
    fails |= np.any(mul(desc.inv_coords(X), X) != e, axis=1)
    # x y x^-1 y^-1 against h(0, 0, lambda(a, b') - lambda(a', b))
    comm = mul(mul(X, Y), mul(desc.inv_coords(X), desc.inv_coords(Y)))
    a, b, _ = desc.split(X)
    a2, b2, _ = desc.split(Y)
    c = np.mod(desc.pair_coords(a, b2) - desc.pair_coords(a2, b), desc.C.moduli())
    expect = desc.join(np.zeros_like(a), np.zeros_like(b), c)
    fails |= np.any(comm != expect, axis=1)
    return int(fails.sum())


def criterion_1(quick: bool = False) -> CriterionResult:
    def run():
        rng = np.random.default_rng(1)
        n = 200 if quick else 1000
        descs = {f"base d={d}": base_case(d) for d in ((3, 5) if quick else (3, 5, 7, 9, 15))}
        descs["Q(sqrt2), f over 7"] = trace_pairing_build(parse_config(SQRT2_CONFIG)).desc
        descs["Q(sqrt5), f=(3)"] = trace_pairing_build(parse_config(SQRT5_CONFIG)).desc
        bad = {k: group_law_failures(d, rng, n) for k, d in descs.items()}
        total = sum(bad.values())
        return total == 0, f"{len(descs)} groups x {n} triples, failures {total}"
    res = _timed(1, "group law", run)
    if res.passed and res.seconds >= 10:
        return CriterionResult(1, res.name, False, res.detail + " (over 10 s)", res.seconds)
    return res


# --------------------------------------------------------------------------
# 2. characters and SV conditions
# --------------------------------------------------------------------------

def criterion_2(quick: bool = False) -> CriterionResult:
    def run():
        checked = 0
        worst = 0.0
        for d in (3, 5):
            desc = base_case(d)
            X = desc.all_coords()
            for u in range(d):
                cfg = RepConfig(desc, u)
                tr = np.trace(sigma_matrices(cfg, X), axis1=1, axis2=2)
                closed = np.array([character(cfg, x) for x in X])
                worst = max(worst, float(np.max(np.abs(tr - closed))))
                rep = sv_classify_sigma(cfg)          # raises SVInconsistency on disagreement
                if rep.sv != cfg.injective:
                    return False, f"d={d}, u={u}: SV={rep.sv} but injective={cfg.injective}"
                checked += len(X)
        return worst < 1e-9, f"{checked} characters, max |trace - closed form| {worst:.1e}"
    res = _timed(2, "characters and SV conditions", run)
    if res.passed and res.seconds >= 30:
        return CriterionResult(2, res.name, False, res.detail + " (over 30 s)", res.seconds)
    return res


# --------------------------------------------------------------------------
# 3. Fourier duality
# --------------------------------------------------------------------------

def criterion_3(quick: bool = False) -> CriterionResult:
    def run():
        worst_int = worst_form = 0.0
        for d in ((3, 5) if quick else (3, 5, 7, 9)):
            cfg = RepConfig(base_case(d))
            xi = fourier_matrix(cfg)
            gens = np.eye(3, dtype=np.int64)
            S, T = sigma_matrices(cfg, gens), tau_matrices(cfg, gens)
            worst_int = max(worst_int, float(np.max(np.abs(xi @ S - T @ xi))))
            worst_form = max(worst_form, unitarity_residual(xi))
        for conf in (SQRT2_CONFIG, SQRT5_CONFIG):
            desc = trace_pairing_build(parse_config(conf)).desc
            cfg = RepConfig(desc)
            xi = fourier_matrix(cfg)
            gens = np.eye(len(desc.moduli()), dtype=np.int64)
            S, T = sigma_matrices(cfg, gens), tau_matrices(cfg, gens)
            worst_int = max(worst_int, float(np.max(np.abs(xi @ S - T @ xi))))
            worst_form = max(worst_form, unitarity_residual(xi))
        ok = worst_int < 1e-10 and worst_form < 1e-12
        return ok, f"intertwining {worst_int:.1e}, form {worst_form:.1e}"
    return _timed(3, "Fourier duality", run)


# --------------------------------------------------------------------------
# 4. clinometric relation
# --------------------------------------------------------------------------

def criterion_4(quick: bool = False) -> CriterionResult:
    def run():
        rng = np.random.default_rng(4)
        worst_eig = worst_sum = 0.0
        n = 10 if quick else 50
        for d in (3, 5, 7, 9):
            cfg = RepConfig(base_case(d))
            for _ in range(n):
                v = rng.normal(size=d) + 1j * rng.normal(size=d)
                rep = clinometric_check(cfg, Line(v))
                worst_eig = max(worst_eig, rep.residual)
                worst_sum = max(worst_sum, abs(rep.angle_sum - d))
        ok = worst_eig < 1e-8 and worst_sum < 1e-10
        return ok, f"{4 * n} lines, eigen-residual {worst_eig:.1e}, sum error {worst_sum:.1e}"
    res = _timed(4, "clinometric relation", run)
    if res.passed and res.seconds >= 120:
        return CriterionResult(4, res.name, False, res.detail + " (over 2 min)", res.seconds)
    return res


# --------------------------------------------------------------------------
# 5. automorphism structure, d = 3
# --------------------------------------------------------------------------

def brute_force_aut0_count(desc: GhgDescriptor) -> int:
    """Count automorphisms fixing the centre pointwise by trying every pair of
    images for h(1,0,0) and h(0,1,0) (cyclic A and B)."""
    X = desc.all_coords()
    N = len(X)
    mt = desc.index(desc.mul_coords(X[:, None, :], X[None, :, :]))
    idx = lambda x: int(desc.index(np.asarray(x, dtype=np.int64)))
    g1, g2, z = idx([1, 0, 0]), idx([0, 1, 0]), idx([0, 0, 1])
    e = idx([0, 0, 0])

    def power(g, k):
        out = e
        for _ in range(k):
            out = mt[out, g]
        return out

    count = 0
    a_mod, b_mod, c_mod = (int(m) for m in desc.moduli())
    for i1 in range(N):
        for i2 in range(N):
            # h(a, b, c) = m(c) h(0, 1, 0)^b h(1, 0, 0)^a
            table = np.empty(N, dtype=np.int64)
            for n, (a, b, c) in enumerate(X.tolist()):
                table[n] = mt[mt[power(z, c), power(i2, b)], power(i1, a)]
            if table[z] != z or len(set(table.tolist())) != N:
                continue
            if np.array_equal(table[mt], mt[table[:, None], table[None, :]]):
                count += 1
    return count


def criterion_5(quick: bool = False) -> CriterionResult:
    def run():
        desc = base_case(3)
        sp = enumerate_sp(desc)
        sl2 = enumerate_sl2(3)
        autos = enumerate_aut0(desc, sp)
        brute = brute_force_aut0_count(desc)
        X = desc.all_coords()
        tables = np.array([desc.index(phi.apply_coords(X)) for phi in autos])
        lookup = {t.tobytes(): k for k, t in enumerate(tables)}
        # Theta_D read off each element map: eta from D(e_i) images, N = phibar^-1
        gens = np.eye(2, dtype=np.int64)
        eta = np.zeros((len(autos), 2), dtype=np.int64)
        Mbar = np.zeros((len(autos), 2, 2), dtype=np.int64)
        Dg = desc.join(gens[:, :1], gens[:, 1:], np.mod(half(3) * gens[:, :1] * gens[:, 1:], 3))
        for k, t in enumerate(tables):
            img = X[t[desc.index(Dg)]]
            eta[k] = np.mod(img[:, 2] - half(3) * img[:, 0] * img[:, 1], 3)
            Mbar[k] = img[:, :2].T
        inv_of = {}
        mats = {m.tobytes(): m for m in Mbar}
        for key, m in mats.items():
            inv_of[key] = next(n for n in mats.values() if np.array_equal(np.mod(m @ n, 3), np.eye(2)))
        N = np.array([inv_of[m.tobytes()] for m in Mbar])          # phibar^-1
        Ninv = Mbar
        bad_closure = 0
        bad_anti = 0
        for i in range(len(autos)):
            comp = tables[i][tables]                              # phi_i o phi_j, all j
            ks = np.array([lookup.get(row.tobytes(), -1) for row in comp])
            bad_closure += int(np.sum(ks < 0))
            ks = np.where(ks < 0, 0, ks)
            # Theta_D(phi_i o phi_j) = Theta_D(phi_j) Theta_D(phi_i) in the semidirect product
            eta_prod = np.mod(eta + np.einsum("c,jcd->jd", eta[i], Ninv), 3)
            N_prod = np.mod(np.einsum("jab,bc->jac", N, N[i]), 3)
            bad_anti += int(np.sum(np.any(eta_prod != eta[ks], axis=1)
                                   | np.any(N_prod != N[ks], axis=(1, 2))))
        ok = (len(autos) == 216 == brute == 9 * len(sp) and len(sp) == len(sl2) == 24
              and bad_closure == 0 and bad_anti == 0)
        return ok, (f"|Aut0| = {len(autos)} (brute force {brute}), |Sp| = {len(sp)}, "
                    f"|SL2(Z/3)| = {len(sl2)}, closure failures {bad_closure}, "
                    f"anti-homomorphism failures {bad_anti} of {len(autos) ** 2}")
    return _timed(5, "automorphism structure (d=3)", run)


# --------------------------------------------------------------------------
# 6. arithmetic SL2
# --------------------------------------------------------------------------

def criterion_6(quick: bool = False) -> CriterionResult:
    def run():
        ag = trace_pairing_build(parse_config(SQRT2_CONFIG))
        rep = sl2_correspondence(ag)
        ok = (rep.sp_count == rep.sl2_count == 336 and rep.sp_dets_one
              and rep.det_one_symplectic and rep.others_not_symplectic)
        return ok, (f"|Sp| = {rep.sp_count}, |SL2(O/f)| = {rep.sl2_count}, Sp->det 1: {rep.sp_dets_one}, "
                    f"det 1->Sp: {rep.det_one_symplectic}, det != 1 -> not Sp: {rep.others_not_symplectic}")
    res = _timed(6, "arithmetic SL2", run)
    if res.passed and res.seconds >= 300:
        return CriterionResult(6, res.name, False, res.detail + " (over 5 min)", res.seconds)
    return res


# --------------------------------------------------------------------------
# 7. Base Case eigenbasis (exact)
# --------------------------------------------------------------------------

def _is_rational_multiple(out, expect) -> bool:
    return all(o[0] == e and all(x == 0 for x in o[1:]) for o, e in zip(out, expect))


def criterion_7(quick: bool = False) -> CriterionResult:
    def run():
        notes = []
        ok = True
        for d in ((9,) if quick else (9, 15)):
            desc = base_case(d)
            bc = base_case_eigenbasis(d)
            for j, w in bc.w.items():
                out = upsilon_apply_exact(desc, [Fraction(int(x)) for x in w])
                expect = [Fraction((d // j) ** 2 * int(x)) for x in bc.w[d // j]]
                ok &= _is_rational_multiple(out, expect)
            for j, u in bc.u.items():
                out = upsilon_apply_exact(desc, u)
                ok &= _is_rational_multiple(out, [d * x for x in u])
            notes.append(f"d={d}: w_j for j in {sorted(bc.w)}, u_j for j in {sorted(bc.u)}")
        return ok, "; ".join(notes)
    return _timed(7, "Base Case eigenbasis", run)


# --------------------------------------------------------------------------
# 8. SIC reproduction
# --------------------------------------------------------------------------

def hesse_angles_direct() -> np.ndarray:
    """|<v, X^a Z^b v>| for the Hesse fiducial from hand-built clock and shift."""
    d = 3
    w = np.exp(2j * np.pi / d)
    Xs = np.roll(np.eye(d), 1, axis=0)
    Zc = np.diag(w ** np.arange(d))
    v = HESSE_FIDUCIAL
    return np.array([abs(np.vdot(v, np.linalg.matrix_power(Xs, a) @ np.linalg.matrix_power(Zc, b) @ v))
                     for a in range(d) for b in range(d)])


def criterion_8(quick: bool = False) -> CriterionResult:
    def run():
        direct = hesse_angles_direct()
        cfg = RepConfig(base_case(3))
        b = orbit_and_stabilizer(cfg, Line(HESSE_FIDUCIAL))
        cls = classify(cfg, b)
        pkg = overlap_table(cfg, b.base).angles
        hesse_ok = (b.free and cls.equiangular and np.max(np.abs(direct[1:] - 0.5)) < 1e-12
                    and np.max(np.abs(pkg[1:] - 0.5)) < 1e-12)
        notes = [f"Hesse: free {b.free}, equiangular {cls.equiangular}, "
                 f"max |a - 1/2| {np.max(np.abs(pkg[1:] - 0.5)):.1e}"]
        ok = hesse_ok
        for d in ((5,) if quick else (5, 7)):
            t0 = time.perf_counter()
            rep = optimize_fiducial(equiangular_problem(RepConfig(base_case(d)), restarts=20,
                                                        max_iters=5000, seed=d))
            dt = time.perf_counter() - t0
            ok &= rep.max_deviation < 1e-7 and dt < 600
            notes.append(f"d={d}: max |a^2 - 1/(d+1)| {rep.max_deviation:.1e} "
                         f"after {rep.restarts_run} restart(s), {dt:.1f} s")
        return ok, "; ".join(notes)
    return _timed(8, "SIC reproduction", run)


# --------------------------------------------------------------------------
# 9. Weil solver
# --------------------------------------------------------------------------

def criterion_9(quick: bool = False) -> CriterionResult:
    def run():
        rng = np.random.default_rng(9)
        worst_delta = worst_inner = worst_proj = 0.0
        n_pairs = 10 if quick else 50
        for d in (3, 5):
            desc = base_case(d)
            cfg = RepConfig(desc)
            for alpha in range(1, d):
                if np.gcd(alpha, d) != 1:
                    continue
                T = weil_solve(cfg, delta_diagonal(desc, [[alpha]]), rng)
                worst_delta = max(worst_delta, mod_phase_residual(T, permutation_operator(desc.A, [[alpha]])))
            for X in desc.all_coords():
                T = weil_solve(cfg, inner_automorphism(desc, X), rng)
                worst_inner = max(worst_inner, mod_phase_residual(T, sigma_matrices(cfg, X)[0]))
            sp = enumerate_sp(desc)
            for _ in range(n_pairs):
                phis = [Automorphism(desc, tuple(int(x) for x in rng.integers(0, d, 2)),
                                     sp[int(rng.integers(len(sp)))]) for _ in range(2)]
                m1, m2 = phis[0].as_map(), phis[1].as_map()
                lhs = weil_solve(cfg, m2, rng) @ weil_solve(cfg, m1, rng)
                rhs = weil_solve(cfg, m2.compose(m1), rng)
                worst_proj = max(worst_proj, mod_phase_residual(lhs, rhs))
        ok = max(worst_delta, worst_inner, worst_proj) < 1e-8
        return ok, (f"Delta vs permutation {worst_delta:.1e}, inner vs sigma {worst_inner:.1e}, "
                    f"projectivity {worst_proj:.1e}")
    return _timed(9, "Weil solver", run)


# --------------------------------------------------------------------------
# 10. even Base Case
# --------------------------------------------------------------------------

def criterion_10(quick: bool = False) -> CriterionResult:
    def run():
        d = 4
        desc = even_base_case(d)
        built = ghg_with_enlarged_centre(parse_config({"min_poly": [0, 1], "frak_f": [str(d)]}), 2 * d).desc
        st = centre_and_derived(desc)
        cfg = RepConfig(desc)
        z = np.exp(1j * np.pi / d)
        Xs = np.roll(np.eye(d), 1, axis=0)                       # e_j -> e_{j+1}
        Zc = np.diag(z ** (2 * np.arange(d)))
        gens = sigma_matrices(cfg, [[-1, 0, 0], [0, 1, 0], [0, 0, 1]])
        gen_err = max(float(np.max(np.abs(gens[0] - Xs))), float(np.max(np.abs(gens[1] - Zc))),
                      float(np.max(np.abs(gens[2] - z * np.eye(d)))))
        M = sigma_matrices(cfg, desc.all_coords())
        unit = max(unitarity_residual(m) for m in M)
        kernel = int(sum(np.allclose(m, np.eye(d)) for m in M))
        ok = (desc.order == 128 == built.order and st.centre_order == 8 == built.r and gen_err < 1e-12
              and unit < 1e-12 and kernel == 1)
        return ok, (f"|H| = {desc.order}, centre {st.centre_order}, generator error {gen_err:.1e}, "
                    f"unitarity {unit:.1e}, kernel size {kernel}")
    return _timed(10, "even Base Case (d=4, r=8)", run)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run_all(quick: bool = False, echo: Callable[[str], None] | None = print) -> list[CriterionResult]:
    out = []
    for fn in CRITERIA:
        res = fn(quick)
        if echo is not None:
            echo(res.line())
        out.append(res)
    return out
