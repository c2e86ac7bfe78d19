"""Bouquets: orbits of complex lines under Hbar = H/Z acting through sigma_p.

For ND-C descriptors Hbar is A+B; its elements are indexed lexicographically
(A-coordinates first), so index(a, b) = index_A(a) * |B| + index_B(b).
A section R: Hbar -> H picks the lift used for overlaps:

* ``"D"``    -- h(a, b, lambda(a, b)/2), odd r only
* ``"zero"`` -- h(a, b, 0)
* a callable mapping an (N, kA + kB) array to c-offsets.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Callable, Sequence

import numpy as np

from .autgrp import (Automorphism, SpElement, delta, half, sum_group_coords, sum_group_index,
                     weil_solve)
from .ghg import GhgDescriptor, check_ndc, centre_and_derived
from .schrodinger import RepConfig, StateVector, sigma_matrices
from .settings import ANGLE_CLASSIFY_TOL, LINE_EQUALITY_TOL, UPSILON_DENSE_MAX_S


# --------------------------------------------------------------------------
# lines and sections
# --------------------------------------------------------------------------

def canonical_phase(v: np.ndarray) -> np.ndarray:
    """Normalise and rotate so the first entry of largest modulus is positive real."""
    v = np.asarray(v, dtype=complex)
    v = v / np.linalg.norm(v)
    mod = np.abs(v)
    idx = int(np.argmax(mod >= mod.max() - 1e-12))
    return v * (abs(v[idx]) / v[idx])


class Line:
    """A complex line, stored by a unit generator with canonical phase."""

    __slots__ = ("vector",)

    def __init__(self, v):
        vals = v.values if isinstance(v, StateVector) else v
        if np.linalg.norm(vals) == 0:
            raise ValueError("zero vector does not span a line")
        w = canonical_phase(vals)
        w.flags.writeable = False
        self.vector = w

    def __eq__(self, other):
        return isinstance(other, Line) and same_line(self.vector, other.vector)

    __hash__ = None

    def __repr__(self):
        return f"Line({np.round(self.vector, 6).tolist()})"


def same_line(v, w, tol: float = LINE_EQUALITY_TOL) -> bool:
    v = np.asarray(v, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return abs(np.vdot(v, w)) / (np.linalg.norm(v) * np.linalg.norm(w)) > 1 - tol


def section_offsets(desc: GhgDescriptor, G: np.ndarray, section) -> np.ndarray:
    """c-components of R(gamma) for gamma in G."""
    ka = desc.A.rank
    if callable(section):
        return np.mod(np.asarray(section(G), dtype=np.int64), desc.r)
    if section == "D":
        if desc.r % 2 == 0:
            raise ValueError("section D needs odd r")
        return np.mod(half(desc.r) * desc.pair_coords(G[:, :ka], G[:, ka:])[:, 0], desc.r)
    if section == "zero":
        return np.zeros(len(G), dtype=np.int64)
    raise ValueError(f"unknown section {section!r}")


def default_section(desc: GhgDescriptor) -> str:
    return "D" if desc.r % 2 else "zero"


def section_coords(desc: GhgDescriptor, G: np.ndarray, section) -> np.ndarray:
    ka = desc.A.rank
    c = section_offsets(desc, G, section)[:, None]
    return desc.join(G[:, :ka], G[:, ka:], c)


def _require_ndc(cfg: RepConfig):
    if not check_ndc(cfg.desc):
        raise ValueError("needs a descriptor satisfying ND-C")


def overlap_values(cfg: RepConfig, v: np.ndarray, section="D") -> np.ndarray:
    """<v, sigma(R(gamma)) v> for every gamma in A+B (flat, lexicographic)."""
    desc = cfg.desc
    v = np.asarray(v, dtype=complex)
    S = cfg.shift_table_A()
    P = cfg.p(cfg.pairing_table())                 # P[x, b] = p(lambda(x, b))
    W = (v.conj()[None, :] * v[S.T])               # W[a, x] = conj v(x) v(x + a)
    core = W @ P                                   # core[a, b]
    G = sum_group_coords(desc)
    kappa = cfg.p(section_offsets(desc, G, section)).reshape(core.shape)
    return (kappa * core).reshape(-1)


# --------------------------------------------------------------------------
# bouquets and overlap tables
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Bouquet:
    cfg: RepConfig
    base: Line
    stabilizer: tuple        # indices into A+B
    keys: tuple              # one index per coset of the stabilizer
    lines: np.ndarray        # canonical generators, one row per key
    section: object = "D"

    @property
    def free(self) -> bool:
        return len(self.stabilizer) == 1

    def __len__(self):
        return len(self.keys)


def orbit_and_stabilizer(cfg: RepConfig, line, section=None, tol: float = LINE_EQUALITY_TOL) -> Bouquet:
    _require_ndc(cfg)
    desc = cfg.desc
    section = default_section(desc) if section is None else section
    base = line if isinstance(line, Line) else Line(line)
    v = base.vector
    G = sum_group_coords(desc)
    mats = sigma_matrices(cfg, section_coords(desc, G, section))
    images = mats @ v                              # (N, s)
    ang = np.abs(overlap_values(cfg, v, section))
    stab = np.nonzero(ang > 1 - tol)[0]
    # group by cosets of the stabilizer
    stab_G = G[stab]
    mods = np.array(desc.A.invariant_factors + desc.B.invariant_factors, dtype=np.int64)
    assigned = np.full(len(G), -1)
    keys = []
    for n in range(len(G)):
        if assigned[n] >= 0:
            continue
        coset = sum_group_index(desc, np.mod(G[n] + stab_G, mods))
        assigned[coset] = len(keys)
        keys.append(n)
    lines = np.array([canonical_phase(images[k]) for k in keys])
    return Bouquet(cfg, base, tuple(int(x) for x in stab), tuple(keys), lines, section)


@dataclass(frozen=True)
class OverlapTable:
    values: np.ndarray       # complex, indexed by A+B
    angles: np.ndarray
    f: int                   # order of the phase ambiguity mu_f
    section: object

    def at(self, desc: GhgDescriptor, gamma) -> complex:
        return complex(self.values[int(sum_group_index(desc, gamma))])


def overlap_table(cfg: RepConfig, line, section=None) -> OverlapTable:
    _require_ndc(cfg)
    section = default_section(cfg.desc) if section is None else section
    v = line.vector if isinstance(line, Line) else np.asarray(getattr(line, "values", line), dtype=complex)
    if abs(np.linalg.norm(v) - 1) > 1e-12:
        raise ValueError("overlap tables need a unit generator")
    vals = overlap_values(cfg, v, section)
    f = centre_and_derived(cfg.desc).derived_order
    return OverlapTable(vals, np.abs(vals), f, section)


def inverse_index(desc: GhgDescriptor) -> np.ndarray:
    G = sum_group_coords(desc)
    return sum_group_index(desc, -G)


def projector_decompose(cfg: RepConfig, line) -> np.ndarray:
    """Coefficients l_a with vv^dagger = sum_a l_a D(a); s l_{-a} = <v, D(a) v>."""
    tab = overlap_table(cfg, line, "D")
    return tab.values[inverse_index(cfg.desc)] / cfg.s


def projector_from_coefficients(cfg: RepConfig, coeffs: np.ndarray) -> np.ndarray:
    desc = cfg.desc
    G = sum_group_coords(desc)
    mats = sigma_matrices(cfg, section_coords(desc, G, "D"))
    return np.einsum("n,nij->ij", coeffs, mats)


# --------------------------------------------------------------------------
# the operator Upsilon and the clinometric relation
# --------------------------------------------------------------------------

_UPS_CACHE: dict = {}


def upsilon_matrix(cfg: RepConfig) -> np.ndarray:
    """Dense Upsilon: rows gamma', columns gamma, entries psi(delta(gamma, gamma'))."""
    key = (cfg.desc, cfg.u)
    if key in _UPS_CACHE:
        return _UPS_CACHE[key]
    G = sum_group_coords(cfg.desc)
    M = cfg.p(delta(cfg.desc, G[None, :, :], G[:, None, :]))
    if len(_UPS_CACHE) > 16:
        _UPS_CACHE.clear()
    _UPS_CACHE[key] = M
    return M


def upsilon_apply(cfg: RepConfig, f, dense: bool | None = None) -> np.ndarray:
    """(Upsilon f)(gamma') = sum_gamma psi(delta(gamma, gamma')) f(gamma)."""
    _require_ndc(cfg)
    f = np.asarray(f, dtype=complex).reshape(-1)
    if dense is None:
        dense = cfg.s <= UPSILON_DENSE_MAX_S
    if dense:
        return upsilon_matrix(cfg) @ f
    # matrix-free: Upsilon F = conj(P) F^T P with P[a, b] = p(lambda(a, b))
    P = cfg.p(cfg.pairing_table())
    F = f.reshape(cfg.desc.A.order, cfg.desc.B.order)
    return (P.conj() @ F.T @ P).reshape(-1)


@lru_cache(maxsize=32)
def _cyclotomic_coeffs(r: int) -> tuple:
    """Coefficients of the r-th cyclotomic polynomial, low degree first."""
    from sympy import Poly, cyclotomic_poly, symbols
    x = symbols("x")
    return tuple(int(c) for c in Poly(cyclotomic_poly(r, x), x).all_coeffs())[::-1]


def _cyclotomic_reduce(coeffs: list[int], r: int) -> tuple:
    """Reduce sum_k coeffs[k] zeta_r^k modulo the r-th cyclotomic polynomial."""
    phi = _cyclotomic_coeffs(r)
    n = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, n - 1, -1):
        q = c[k]
        if q:
            for i in range(n + 1):
                c[k - n + i] -= q * phi[i]
    return tuple(c[:n])


def upsilon_apply_exact(desc: GhgDescriptor, f: Sequence[Fraction], u: int = 1) -> list[tuple]:
    """Exact Upsilon f for rational f: each output value is returned as its
    coefficient vector on the power basis of Q(zeta_r) (Fractions)."""
    r = desc.r
    G = sum_group_coords(desc)
    f = [Fraction(x) for x in f]
    den = 1
    for x in f:
        den = den * x.denominator // np.gcd(den, x.denominator)
    num = np.array([int(x * den) for x in f], dtype=object)
    D = np.mod(u * delta(desc, G[None, :, :], G[:, None, :]), r)   # rows gamma'
    out = []
    for row in D:
        buckets = [0] * r
        for k, val in zip(row.tolist(), num):
            if val:
                buckets[k] += val
        red = _cyclotomic_reduce(buckets, r)
        out.append(tuple(Fraction(x, den) for x in red))
    return out


def rational_vector(values: Sequence[Fraction], r: int, n: int) -> list[tuple]:
    """Rationals embedded as cyclotomic coefficient vectors of length n."""
    return [tuple([Fraction(v)] + [Fraction(0)] * (n - 1)) for v in values]


@dataclass(frozen=True)
class ClinometricReport:
    residual: float          # max |Upsilon(a^2) - (|Gbar|/s) a^2|
    angle_sum: float         # sum of a^2
    expected: float          # |Gbar| / s


def clinometric_check(cfg: RepConfig, bouquet_or_line, section=None) -> ClinometricReport:
    _require_ndc(cfg)
    if isinstance(bouquet_or_line, Bouquet):
        line = bouquet_or_line.base
        section = bouquet_or_line.section if section is None else section
    else:
        line = bouquet_or_line if isinstance(bouquet_or_line, Line) else Line(bouquet_or_line)
    tab = overlap_table(cfg, line, section)
    a2 = tab.angles ** 2
    n = len(a2)
    expected = n / cfg.s
    res = float(np.max(np.abs(upsilon_apply(cfg, a2) - expected * a2)))
    return ClinometricReport(res, float(a2.sum()), expected)


# --------------------------------------------------------------------------
# classification
# --------------------------------------------------------------------------

class NotFreeError(ValueError):
    pass


@dataclass(frozen=True)
class Classification:
    equiangular: bool
    regular: bool
    value: float | None          # common angle when equiangular
    expected_value: float        # 1/sqrt(s + 1)
    spread: float                # max - min of angles off the identity
    orbit_spreads: tuple
    witness: int | None          # orbit index with the largest spread


def classify(cfg: RepConfig, bouquet: Bouquet, orbits: Sequence[Sequence[int]] | None = None,
             tol: float = ANGLE_CLASSIFY_TOL) -> Classification:
    _require_ndc(cfg)
    if not bouquet.free:
        raise NotFreeError("classification needs a free bouquet")
    nG = cfg.desc.A.order * cfg.desc.B.order
    if nG != cfg.s ** 2:
        raise ValueError("classification needs |Gbar| = s^2")
    ang = overlap_table(cfg, bouquet.base, bouquet.section).angles
    off = np.delete(ang, 0)
    spread = float(off.max() - off.min())
    equi = spread < tol
    expected = 1 / np.sqrt(cfg.s + 1)
    value = float(off.mean()) if equi else None
    if equi and abs(value - expected) > 10 * tol:
        raise RuntimeError(f"equiangular value {value} differs from 1/sqrt(s+1) = {expected}")
    orbits = [] if orbits is None else [np.asarray(o, dtype=np.int64) for o in orbits]
    spreads = tuple(float(ang[o].max() - ang[o].min()) if len(o) else 0.0 for o in orbits)
    regular = all(sp < tol for sp in spreads)
    witness = int(np.argmax(spreads)) if spreads else None
    return Classification(bool(equi), bool(regular), value, float(expected), spread, spreads, witness)


def symmetry_group(cfg: RepConfig, bouquet: Bouquet, candidates: Sequence,
                   rng: np.random.Generator | None = None, tol: float = LINE_EQUALITY_TOL) -> list:
    """Candidates phi (SpElement, taken with eta = 0, or Automorphism) whose
    Weil operator maps the bouquet onto itself."""
    desc = cfg.desc
    v = bouquet.base.vector
    G = sum_group_coords(desc)
    images = sigma_matrices(cfg, section_coords(desc, G, bouquet.section)) @ v
    ang = overlap_table(cfg, bouquet.base, bouquet.section).angles
    found = []
    for cand in candidates:
        phi = cand if isinstance(cand, Automorphism) else \
            Automorphism(desc, (0,) * G.shape[1], cand)
        T = weil_solve(cfg, phi, rng)
        w = T @ v
        if np.max(np.abs(images.conj() @ w)) > 1 - tol:
            # invariance forces the angle map to be constant along phibar-orbits
            moved = sum_group_index(desc, phi.sp.apply(G))
            if np.max(np.abs(ang[moved] - ang)) > 1e-6:
                raise RuntimeError("symmetry found but angles are not invariant under it")
            found.append(cand)
    return found


def generating_set(desc: GhgDescriptor, elements: Sequence) -> list:
    """A small subset of a finite group of SpElements (or Automorphisms, by
    their Sp part) that generates the same group, picked greedily."""
    def key(x):
        return (x.sp if isinstance(x, Automorphism) else x).matrix

    def sp_of(x):
        return x.sp if isinstance(x, Automorphism) else x

    target = {key(x) for x in elements}
    gens: list = []
    closure = {SpElement.identity(desc).matrix}
    for x in elements:
        if key(x) in closure:
            continue
        gens.append(x)
        frontier = [SpElement(desc, m) for m in closure]
        while frontier:
            new = []
            for y in frontier:
                for g in gens:
                    z = sp_of(g).compose(y)
                    if z.matrix not in closure:
                        closure.add(z.matrix)
                        new.append(z)
            frontier = new
        if closure >= target:
            break
    return gens


# --------------------------------------------------------------------------
# orbit partitions of A+B minus the identity
# --------------------------------------------------------------------------

def divisor_orbits(desc: GhgDescriptor) -> dict[int, np.ndarray]:
    """Partition of (Z/d)^2 minus 0 by additive order (Base Case)."""
    G = sum_group_coords(desc)
    m = np.array(desc.A.invariant_factors + desc.B.invariant_factors, dtype=np.int64)
    orders = np.ones(len(G), dtype=np.int64)
    for i in range(G.shape[1]):
        o = m[i] // np.gcd(G[:, i], m[i])
        orders = np.lcm(orders, o)
    return {int(j): np.nonzero(orders == j)[0] for j in sorted(set(orders.tolist())) if j != 1}


def autgroup_orbits(desc: GhgDescriptor, sp_list: Sequence[SpElement]) -> list[np.ndarray]:
    G = sum_group_coords(desc)
    seen = np.zeros(len(G), dtype=bool)
    seen[0] = True
    imgs = np.array([sum_group_index(desc, sp.apply(G)) for sp in sp_list])
    out = []
    for n in range(len(G)):
        if not seen[n]:
            orb = np.unique(imgs[:, n])
            seen[orb] = True
            out.append(orb)
    return out


@dataclass(frozen=True)
class BaseCaseBasis:
    d: int
    orbits: dict             # j -> indices of O_j (j = 1 is the identity)
    w: dict                  # j -> 0/1 integer vector
    u: dict                  # j -> Fraction vector, j in S~_d


def base_case_eigenbasis(d: int) -> BaseCaseBasis:
    if d % 2 == 0 or d < 3:
        raise ValueError("needs odd d >= 3")
    G = np.indices((d, d)).reshape(2, -1).T
    orders = np.lcm(d // np.gcd(G[:, 0], d), d // np.gcd(G[:, 1], d))
    divisors = [j for j in range(1, d + 1) if d % j == 0]
    orbits = {j: np.nonzero(orders == j)[0] for j in divisors}
    # j(Z/d)^2 is the set of elements of order dividing d/j
    w = {j: ((d // j) % orders == 0).astype(np.int64) for j in divisors}
    u = {}
    for j in divisors:
        if j * j <= d:
            cj = Fraction(j * j, j * j + d)
            ck = Fraction(d, j * j + d)
            u[j] = [cj * int(x) + ck * int(y) for x, y in zip(w[j], w[d // j])]
    return BaseCaseBasis(d, orbits, w, u)
