"""Left and right Schroedinger representations of a GHG.

For a character p(c) = exp(2 pi i u c / r) of the cyclic group C:

    (sigma_p(h(a,b,c)) f)(x) = p(lambda(x, b) + c) f(x + a)      on M(A)
    (tau_p(h(a,b,c)) l)(y)   = p(c - lambda(a, y + b)) l(y + b)   on M(B)

Vectors on a group are indexed by the lexicographic enumeration of its
coordinates (``FinAbGroup.all_coords``).  Matrices are plain complex numpy
arrays.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

import numpy as np

from .abelian import FinAbGroup
from .ghg import (GhgDescriptor, HeisElem, DirectSum, check_ndc, centre_mask,
                  coset_representatives)
from .settings import tolerance


@dataclass(frozen=True)
class RepConfig:
    """A descriptor with cyclic C and the character index u."""

    desc: GhgDescriptor
    u: int = 1

    def __post_init__(self):
        if not self.desc.C.is_cyclic:
            raise ValueError("Schroedinger representations need a cyclic C")
        object.__setattr__(self, "u", int(self.u) % max(self.desc.r, 1))

    @property
    def r(self) -> int:
        return self.desc.r

    @property
    def s(self) -> int:
        return self.desc.s

    @property
    def injective(self) -> bool:
        return gcd(self.u, self.r) == 1

    def p(self, c) -> np.ndarray:
        """p evaluated on integer residues c (any shape)."""
        c = np.asarray(c, dtype=np.int64)
        return np.exp(2j * np.pi * np.mod(self.u * c, self.r) / self.r)

    # cached tables ---------------------------------------------------------
    def pairing_table(self) -> np.ndarray:
        return _tables(self.desc)[0]

    def shift_table_A(self) -> np.ndarray:
        return _tables(self.desc)[1]

    def shift_table_B(self) -> np.ndarray:
        return _tables(self.desc)[2]


_TABLE_CACHE: dict = {}


def _tables(desc: GhgDescriptor):
    """lambda(x, y) for all x in A, y in B and the translation tables x + a."""
    hit = _TABLE_CACHE.get(desc)
    if hit is not None:
        return hit
    XA = desc.A.all_coords()
    XB = desc.B.all_coords()
    lam = desc.pair_coords(XA[:, None, :], XB[None, :, :])
    lam = lam[..., 0] if desc.C.rank else np.zeros(lam.shape[:2], dtype=np.int64)
    shA = desc.A.index(XA[:, None, :] + XA[None, :, :]) if desc.A.rank else np.zeros((1, 1), dtype=np.int64)
    shB = desc.B.index(XB[:, None, :] + XB[None, :, :]) if desc.B.rank else np.zeros((1, 1), dtype=np.int64)
    if len(_TABLE_CACHE) > 64:
        _TABLE_CACHE.clear()
    _TABLE_CACHE[desc] = (lam, np.asarray(shA), np.asarray(shB))
    return _TABLE_CACHE[desc]


class StateVector:
    """A complex function on a finite abelian group (read-only values)."""

    __slots__ = ("domain", "values")

    def __init__(self, domain: FinAbGroup, values):
        v = np.array(values, dtype=complex).reshape(-1)
        if len(v) != domain.order:
            raise ValueError(f"expected {domain.order} values, got {len(v)}")
        v.flags.writeable = False
        self.domain = domain
        self.values = v

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def inner(self, other: "StateVector") -> complex:
        """<self, other> = sum conj(self) * other."""
        return complex(np.vdot(self.values, other.values))

    def normalized(self) -> "StateVector":
        return StateVector(self.domain, self.values / self.norm())

    @classmethod
    def basis(cls, domain: FinAbGroup, y) -> "StateVector":
        v = np.zeros(domain.order, dtype=complex)
        v[domain.index(y) if domain.rank else 0] = 1
        return cls(domain, v)

    def to_json(self) -> dict:
        return {"re": [float(x) for x in self.values.real], "im": [float(x) for x in self.values.imag]}

    @classmethod
    def from_json(cls, domain: FinAbGroup, data: dict) -> "StateVector":
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
        return cls(domain, re + 1j * im)

    def __repr__(self):
        return f"StateVector({np.round(self.values, 6).tolist()})"


def _vec(f) -> np.ndarray:
    return f.values if isinstance(f, StateVector) else np.asarray(f, dtype=complex)


def _split_index(cfg: RepConfig, h) -> tuple[int, int, int]:
    """(index of a in A, index of b in B, c) for an element or coordinate row."""
    X = h.coords() if isinstance(h, HeisElem) else np.asarray(h, dtype=np.int64)
    a, b, c = cfg.desc.split(X)
    ia = int(cfg.desc.A.index(a)) if cfg.desc.A.rank else 0
    ib = int(cfg.desc.B.index(b)) if cfg.desc.B.rank else 0
    return ia, ib, int(c[0]) if len(c) else 0


# --------------------------------------------------------------------------
# actions and matrices
# --------------------------------------------------------------------------

def sigma_apply(cfg: RepConfig, h, f) -> StateVector:
    if isinstance(h, HeisElem) and h.desc != cfg.desc:
        raise ValueError("element belongs to a different group")
    v = _vec(f)
    if len(v) != cfg.s:
        raise ValueError("state vector does not live on A")
    ia, ib, c = _split_index(cfg, h)
    T = cfg.pairing_table()
    S = cfg.shift_table_A()
    return StateVector(cfg.desc.A, cfg.p(T[:, ib] + c) * v[S[:, ia]])


def tau_apply(cfg: RepConfig, h, l) -> StateVector:
    if isinstance(h, HeisElem) and h.desc != cfg.desc:
        raise ValueError("element belongs to a different group")
    v = _vec(l)
    if len(v) != cfg.desc.B.order:
        raise ValueError("state vector does not live on B")
    ia, ib, c = _split_index(cfg, h)
    T = cfg.pairing_table()
    S = cfg.shift_table_B()
    moved = S[:, ib]                      # index of y + b
    return StateVector(cfg.desc.B, cfg.p(c - T[ia, moved]) * v[moved])


def sigma_matrices(cfg: RepConfig, X) -> np.ndarray:
    """sigma_p of a batch of coordinate rows, shape (N, s, s)."""
    X = np.atleast_2d(np.asarray(X, dtype=np.int64))
    a, b, c = cfg.desc.split(X)
    ia = cfg.desc.A.index(a) if cfg.desc.A.rank else np.zeros(len(X), dtype=np.int64)
    ib = cfg.desc.B.index(b) if cfg.desc.B.rank else np.zeros(len(X), dtype=np.int64)
    cc = c[:, 0] if c.shape[1] else np.zeros(len(X), dtype=np.int64)
    s = cfg.s
    T = cfg.pairing_table()
    S = cfg.shift_table_A()
    out = np.zeros((len(X), s, s), dtype=complex)
    rows = np.arange(s)
    for n in range(len(X)):
        out[n, rows, S[:, ia[n]]] = cfg.p(T[:, ib[n]] + cc[n])
    return out


def tau_matrices(cfg: RepConfig, X) -> np.ndarray:
    X = np.atleast_2d(np.asarray(X, dtype=np.int64))
    a, b, c = cfg.desc.split(X)
    ia = cfg.desc.A.index(a) if cfg.desc.A.rank else np.zeros(len(X), dtype=np.int64)
    ib = cfg.desc.B.index(b) if cfg.desc.B.rank else np.zeros(len(X), dtype=np.int64)
    cc = c[:, 0] if c.shape[1] else np.zeros(len(X), dtype=np.int64)
    n_b = cfg.desc.B.order
    T = cfg.pairing_table()
    S = cfg.shift_table_B()
    out = np.zeros((len(X), n_b, n_b), dtype=complex)
    rows = np.arange(n_b)
    for n in range(len(X)):
        moved = S[:, ib[n]]
        out[n, rows, moved] = cfg.p(cc[n] - T[ia[n], moved])
    return out


def rep_matrix(cfg: RepConfig, h, side: str = "left") -> np.ndarray:
    X = h.coords() if isinstance(h, HeisElem) else h
    if side == "left":
        return sigma_matrices(cfg, X)[0]
    if side == "right":
        return tau_matrices(cfg, X)[0]
    raise ValueError("side must be 'left' or 'right'")


def unitarity_residual(M: np.ndarray) -> float:
    M = np.asarray(M)
    return float(np.max(np.abs(M.conj().T @ M - np.eye(M.shape[0]))))


# --------------------------------------------------------------------------
# characters and classification
# --------------------------------------------------------------------------

def character(cfg: RepConfig, h, side: str = "left") -> complex:
    """Closed-form character of sigma_p (left) or tau_p (right)."""
    desc = cfg.desc
    X = h.coords() if isinstance(h, HeisElem) else np.asarray(h, dtype=np.int64)
    a, b, c = desc.split(X)
    cval = int(c[0]) if len(c) else 0
    if side == "left":
        if np.any(a):
            return 0j
        # lambda(A, b) inside ker p: enough to test the generators of A
        gens = np.eye(desc.A.rank, dtype=np.int64)
        vals = desc.pair_coords(gens, b[None, :])
        if np.any(np.mod(cfg.u * vals, cfg.r)):
            return 0j
        return complex(cfg.p(cval)) * desc.A.order
    if side == "right":
        if np.any(b):
            return 0j
        gens = np.eye(desc.B.rank, dtype=np.int64)
        vals = desc.pair_coords(a[None, :], gens)
        if np.any(np.mod(cfg.u * vals, cfg.r)):
            return 0j
        return complex(cfg.p(cval)) * desc.B.order
    raise ValueError("side must be 'left' or 'right'")


class SVInconsistency(RuntimeError):
    """The equivalent conditions for an SV representation disagree."""


@dataclass(frozen=True)
class SVReport:
    dim: int
    group_order: int
    centre_order: int
    t: int
    irreducible: bool
    chi_vanishes_off_centre: bool
    reps_independent: bool
    reps_basis: bool
    conditions: tuple

    @property
    def sv(self) -> bool:
        return all(self.conditions)


def sv_classify(matrices: np.ndarray, central: np.ndarray, coset_reps: Sequence[int],
                tol: float | None = None) -> SVReport:
    """Evaluate the five equivalent SV conditions for a representation given
    by its matrices on every group element.

    ``central`` is a boolean mask of the centre, ``coset_reps`` indexes one
    element per coset of the centre.
    """
    tol = tolerance() if tol is None else tol
    M = np.asarray(matrices)
    N, s, _ = M.shape
    central = np.asarray(central, dtype=bool)
    z = int(central.sum())
    t = N // z
    chi = np.trace(M, axis1=1, axis2=2)
    irreducible = bool(abs(float(np.sum(np.abs(chi) ** 2)) - N) < tol * N * s)
    vanish = bool(np.all(np.abs(chi[~central]) < tol * s))
    R = M[np.asarray(coset_reps)].reshape(len(coset_reps), s * s)
    rank = np.linalg.matrix_rank(R, tol=tol * s)
    independent = bool(rank == len(coset_reps))
    basis = bool(independent and rank == s * s)
    conds = (
        vanish and t == s * s,
        irreducible and t == s * s,
        irreducible and vanish,
        irreducible and independent,
        irreducible and basis,
    )
    if len(set(conds)) != 1:
        raise SVInconsistency(f"SV conditions disagree: {conds}")
    return SVReport(s, N, z, t, irreducible, vanish, independent, basis, conds)


def sv_classify_sigma(cfg: RepConfig, tol: float | None = None) -> SVReport:
    desc = cfg.desc
    X = desc.all_coords()
    return sv_classify(sigma_matrices(cfg, X), centre_mask(desc), coset_representatives(desc), tol)


# --------------------------------------------------------------------------
# Fourier duality and tensor factorisation
# --------------------------------------------------------------------------

def fourier_matrix(cfg: RepConfig) -> np.ndarray:
    """Matrix of xi_p: rows indexed by y in B, columns by x in A."""
    if not cfg.injective:
        raise ValueError("the Fourier map needs an injective p")
    if not check_ndc(cfg.desc):
        raise ValueError("the Fourier map needs a non-degenerate pairing")
    return cfg.p(cfg.pairing_table()).T / np.sqrt(cfg.s)


def fourier_xi(cfg: RepConfig, f) -> StateVector:
    """xi_p(f)(y) = s^-1/2 sum_x f(x) p(lambda(x, y))."""
    return StateVector(cfg.desc.B, fourier_matrix(cfg) @ _vec(f))


def tensor_vector(ds: DirectSum, factors: Sequence) -> StateVector:
    """The vector on the sum group A with value prod_i f_i(a_i)."""
    A = ds.desc.A
    parts = ds.split_a(A.all_coords())
    out = np.ones(A.order, dtype=complex)
    for d, blk, f in zip(ds.summands, parts, factors):
        idx = d.A.index(blk) if d.A.rank else np.zeros(A.order, dtype=np.int64)
        out *= _vec(f)[idx]
    return StateVector(A, out)


def tensor_factorize(ds: DirectSum, cfgs: Sequence[RepConfig], h: HeisElem, factors: Sequence,
                     verify: bool = False) -> StateVector:
    """Apply h to an elementary tensor factor by factor:
    p(c) times the tensor of sigma_i(h(a_i, b_i, 0)) f_i."""
    if len(cfgs) != len(ds.summands) or len(factors) != len(ds.summands):
        raise ValueError("need one config and one factor per summand")
    for f, d in zip(factors, ds.summands):
        if len(_vec(f)) != d.A.order or np.ndim(_vec(f)) != 1:
            raise ValueError("input must be an elementary tensor: one vector per summand")
    us = {c.u for c in cfgs}
    if len(us) != 1:
        raise ValueError("all summands must use the same character")
    a, b, c = ds.desc.split(h.coords())
    pa = ds.split_a(a)
    pb = ds.split_b(b)
    moved = []
    for cfg, d, ai, bi, f in zip(cfgs, ds.summands, pa, pb, factors):
        hi = d.join(ai, bi, np.zeros(d.C.rank, dtype=np.int64))
        moved.append(sigma_apply(cfg, hi, f))
    cval = int(c[0]) if len(c) else 0
    out = tensor_vector(ds, moved).values * cfgs[0].p(cval)
    result = StateVector(ds.desc.A, out)
    if verify:
        full = RepConfig(ds.desc, cfgs[0].u)
        ref = sigma_apply(full, h, tensor_vector(ds, factors))
        res = float(np.max(np.abs(ref.values - result.values)))
        if res > tolerance():
            raise RuntimeError(f"tensor factorisation mismatch, residual {res:.3e}")
    return result
