"""Numerical search for fiducial lines with prescribed squared angles.

The objective for a unit vector v is

    F(v) = sum over gamma != 1 of (|<v, R(gamma) v>|^2 - t_O(gamma))^2

where O(gamma) is the orbit containing gamma and t_O its squared-angle
target.  Angles do not depend on the section R, so the overlaps are
evaluated on the zero lift h(a, b, 0).  All overlaps and the gradient cost
O(s^3) through two matrix products.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .autgrp import sum_group_coords
from .bouquet import (Line, NotFreeError, classify, clinometric_check, default_section,
                      orbit_and_stabilizer)
from .ghg import check_ndc
from .schrodinger import RepConfig


@dataclass(frozen=True)
class SearchProblem:
    cfg: RepConfig
    orbits: tuple                 # tuple of index arrays partitioning A+B minus 0
    targets: tuple                # squared-angle target per orbit
    restarts: int = 20
    max_iters: int = 5000
    tol: float = 1e-24            # objective value counted as converged
    seed: int = 0
    threads: int = 1
    section: object = None

    def __post_init__(self):
        if not check_ndc(self.cfg.desc):
            raise ValueError("search needs a descriptor satisfying ND-C")
        orbits = tuple(np.asarray(o, dtype=np.int64) for o in self.orbits)
        object.__setattr__(self, "orbits", orbits)
        object.__setattr__(self, "targets", tuple(float(t) for t in self.targets))
        if len(orbits) != len(self.targets):
            raise ValueError("need one target per orbit")
        n = self.cfg.desc.A.order * self.cfg.desc.B.order
        cover = np.concatenate(orbits) if orbits else np.zeros(0, dtype=np.int64)
        if len(cover) != n - 1 or set(cover.tolist()) != set(range(1, n)):
            raise ValueError("orbits must partition the non-identity elements of A+B")
        if any(not 0 <= t <= 1 for t in self.targets):
            raise ValueError("targets are squared angles and must lie in [0, 1]")
        total = 1 + sum(len(o) * t for o, t in zip(orbits, self.targets))
        if abs(total - n / self.cfg.s) > 1e-12:
            raise ValueError(f"targets violate the clinometric sum: 1 + sum |O| t_O = {total!r}, "
                             f"expected |Gbar|/s = {n / self.cfg.s!r}")
        if self.section is None:
            object.__setattr__(self, "section", default_section(self.cfg.desc))

    @property
    def target_vector(self) -> np.ndarray:
        """Squared-angle target on every element (identity excluded via weight 0)."""
        n = self.cfg.desc.A.order * self.cfg.desc.B.order
        t = np.zeros(n)
        for o, val in zip(self.orbits, self.targets):
            t[o] = val
        return t


def equiangular_problem(cfg: RepConfig, **kw) -> SearchProblem:
    n = cfg.desc.A.order * cfg.desc.B.order
    return SearchProblem(cfg, (np.arange(1, n),), (1.0 / (cfg.s + 1),), **kw)


def regular_problem(cfg: RepConfig, orbits: Sequence, targets: Sequence[float], **kw) -> SearchProblem:
    return SearchProblem(cfg, tuple(orbits), tuple(targets), **kw)


# --------------------------------------------------------------------------
# objective
# --------------------------------------------------------------------------

def _overlaps(cfg: RepConfig, v: np.ndarray) -> np.ndarray:
    """O[a, b] = <v, sigma(h(a, b, 0)) v>."""
    S = cfg.shift_table_A()
    P = cfg.p(cfg.pairing_table())
    W = v.conj()[None, :] * v[S.T]
    return W @ P


def objective_and_gradient(problem: SearchProblem, v) -> tuple[float, np.ndarray]:
    """F(v) and the gradient of F(v / |v|) at unit v, as a complex vector
    whose real and imaginary parts are the partial derivatives."""
    cfg = problem.cfg
    v = np.asarray(getattr(v, "values", v), dtype=complex)
    S = cfg.shift_table_A()
    P = cfg.p(cfg.pairing_table())
    O = _overlaps(cfg, v)
    shape = O.shape
    t = problem.target_vector.reshape(shape)
    resid = np.abs(O) ** 2 - t
    resid.flat[0] = 0.0
    value = float(np.sum(resid ** 2))
    # d|O|^2 / d conj(v) = conj(O) M v + O M^dagger v, and grad = 2 dF/d conj(v)
    w = 2 * resid
    alpha = w * O.conj()                    # coefficients of M_gamma v
    beta = w * O                            # coefficients of M_gamma^dagger v
    Q = alpha @ P.T                         # Q[a, x] = sum_b alpha[a, b] P[x, b]
    part1 = np.sum(v[S.T] * Q, axis=0)      # sum_a Q[a, x] v(x + a)
    R = beta @ P.conj().T                   # R[a, x] = sum_b beta[a, b] conj P[x, b]
    contrib = R * v[None, :]
    target = S.T.reshape(-1)                # index of x + a
    part2 = (np.bincount(target, weights=contrib.real.reshape(-1), minlength=cfg.s)
             + 1j * np.bincount(target, weights=contrib.imag.reshape(-1), minlength=cfg.s))
    g = 2 * (part1 + part2)
    g = g - np.real(np.vdot(v, g)) * v      # tangent to the unit sphere
    return value, g


def angles_squared(cfg: RepConfig, v) -> np.ndarray:
    return (np.abs(_overlaps(cfg, np.asarray(v, dtype=complex))) ** 2).reshape(-1)


# --------------------------------------------------------------------------
# optimisation
# --------------------------------------------------------------------------

@dataclass
class RestartResult:
    index: int
    vector: np.ndarray
    objective: float
    iterations: int
    history_monotone: bool


def _random_unit(rng: np.random.Generator, s: int) -> np.ndarray:
    v = rng.normal(size=s) + 1j * rng.normal(size=s)
    return v / np.linalg.norm(v)


def _descend(problem: SearchProblem, v: np.ndarray, index: int) -> RestartResult:
    """Projected gradient descent with Barzilai-Borwein steps and Armijo backtracking."""
    F, g = objective_and_gradient(problem, v)
    step = 0.1
    monotone = True
    it = 0
    for it in range(1, problem.max_iters + 1):
        if F < problem.tol:
            break
        gg = float(np.real(np.vdot(g, g)))
        if gg < 1e-32:
            break
        alpha = step
        accepted = False
        for _ in range(60):
            w = v - alpha * g
            w /= np.linalg.norm(w)
            Fw, gw = objective_and_gradient(problem, w)
            if Fw <= F - 1e-4 * alpha * gg:
                accepted = True
                break
            alpha *= 0.5
        if not accepted:
            break
        if Fw > F:
            monotone = False
        dv, dg = w - v, gw - g
        curv = float(np.real(np.vdot(dv, dg)))
        step = float(np.real(np.vdot(dv, dv))) / curv if curv > 0 else 2 * alpha
        step = min(max(step, 1e-8), 1e12)   # quartic minima need very long steps
        v, F, g = w, Fw, gw
    return RestartResult(index, Line(v).vector.copy(), F, it, monotone)


@dataclass
class SearchReport:
    vector: np.ndarray
    objective: float
    best_restart: int
    restarts_run: int
    iterations: int
    converged: bool
    max_deviation: float          # max |a^2 - target| off the identity
    orbit_spreads: tuple          # max - min of angles on each orbit
    clinometric_residual: float
    restart_objectives: tuple = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "fiducial": [[float(z.real), float(z.imag)] for z in self.vector],
            "objective": self.objective,
            "best_restart": self.best_restart,
            "restarts_run": self.restarts_run,
            "iterations": self.iterations,
            "converged": self.converged,
            "max_deviation": self.max_deviation,
            "orbit_spreads": list(self.orbit_spreads),
            "clinometric_residual": self.clinometric_residual,
            "restart_objectives": list(self.restart_objectives),
        }


def optimize_fiducial(problem: SearchProblem, stop_on_success: bool = True) -> SearchReport:
    """Multi-restart search, deterministic in the seed.

    Restarts run in batches of ``problem.threads``.  The reported line is the
    lowest-index converged restart, or the best one when none converges, so
    the outcome does not depend on the thread count.
    """
    seeds = np.random.SeedSequence(problem.seed).spawn(problem.restarts)
    starts = [_random_unit(np.random.default_rng(sq), problem.cfg.s) for sq in seeds]
    threads = max(1, int(problem.threads))
    results: list[RestartResult] = []
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for lo in range(0, problem.restarts, threads):
            idx = range(lo, min(lo + threads, problem.restarts))
            results.extend(pool.map(lambda i: _descend(problem, starts[i], i), idx))
            if stop_on_success and any(r.objective < problem.tol for r in results):
                break
    ok = [r for r in results if r.objective < problem.tol]
    if stop_on_success and ok:
        # drop restarts past the first success so batching leaves no trace
        first = min(r.index for r in ok)
        results = sorted((r for r in results if r.index <= first), key=lambda r: r.index)
        ok = [results[-1]]
    best = min(ok, key=lambda r: r.index) if ok else min(results, key=lambda r: (r.objective, r.index))
    a2 = angles_squared(problem.cfg, best.vector)
    dev = float(np.max(np.abs(a2 - problem.target_vector)[1:]))
    ang = np.sqrt(a2)
    spreads = tuple(float(ang[o].max() - ang[o].min()) for o in problem.orbits)
    clin = clinometric_check(problem.cfg, best.vector, problem.section).residual
    return SearchReport(best.vector, best.objective, best.index, len(results), best.iterations,
                        bool(ok), dev, spreads, clin, tuple(r.objective for r in results))


def default_threads() -> int:
    return max(1, min(8, os.cpu_count() or 1))


# --------------------------------------------------------------------------
# verification
# --------------------------------------------------------------------------

def verify_candidate(problem: SearchProblem, v, angle_tol: float = 1e-7) -> dict:
    """Orbit, freeness, overlaps, clinometric residual and classification of v."""
    cfg = problem.cfg
    vec = np.asarray(getattr(v, "values", v), dtype=complex)
    line = Line(vec)
    b = orbit_and_stabilizer(cfg, line, problem.section)
    a2 = angles_squared(cfg, line.vector)
    clin = clinometric_check(cfg, line, problem.section)
    report = {
        "free": b.free,
        "stabilizer_order": len(b.stabilizer),
        "orbit_size": len(b),
        "objective": objective_and_gradient(problem, line.vector)[0],
        "clinometric_residual": clin.residual,
        "angle_sum": clin.angle_sum,
        "max_target_deviation": float(np.max(np.abs(a2 - problem.target_vector)[1:])),
    }
    try:
        c = classify(cfg, b, problem.orbits, tol=angle_tol)
    except NotFreeError:
        report["classification"] = None
        report["verdict"] = False
        return report
    report["classification"] = {
        "equiangular": c.equiangular,
        "regular": c.regular,
        "value": c.value,
        "spread": c.spread,
        "orbit_spreads": list(c.orbit_spreads),
    }
    targets_met = bool(np.all(np.abs(np.sqrt(a2) - np.sqrt(problem.target_vector))[1:] < angle_tol))
    report["verdict"] = targets_met
    return report
