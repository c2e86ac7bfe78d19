"""GHGs of arithmetic type over a monogenic order O = Z[theta].

Field elements are tuples of Fractions on the power basis 1, theta, ...,
theta^(n-1).  A fractional ideal is stored as a lattice: integer rows in
Hermite normal form together with a positive denominator.

For an integral ideal f with f cap Z = fZ and a fractional ideal I:

    A = I / fI,   B = f^-1 Ihat / Ihat,   Ihat = D^-1 I^-1 (the trace dual of I),
    lambda(a, b) = Tr(ab) mod Z, valued in r^-1 Z / Z for a multiple r of f.

Only the current convention for the enlarged-centre group H[I, f, r] is
implemented; the older one differs by the diagonal isomorphism id x r x r.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, isqrt, lcm
from typing import Sequence

import numpy as np
import sympy

from .abelian import FinAbGroup, Quotient, hnf_rows, quotient_group
from .autgrp import SpElement, enumerate_sp, is_symplectic, sum_group_moduli
from .ghg import GhgDescriptor, check_ndc

Elem = tuple  # tuple of Fractions, power basis


def _frac_inverse(M: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    inv = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in M]).inv()
    return [[Fraction(int(x.p), int(x.q)) for x in inv.row(i)] for i in range(inv.rows)]


def _matmul(A, B):
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in zip(*B)] for row in A]


def _vecmat(v, M):
    return tuple(sum((x * M[i][j] for i, x in enumerate(v)), Fraction(0)) for j in range(len(M[0])))


# --------------------------------------------------------------------------
# the order
# --------------------------------------------------------------------------

class NumberFieldOrder:
    """Z[theta] for a monic integer polynomial; maximality is the caller's claim."""

    def __init__(self, min_poly: Sequence[int]):
        c = tuple(int(x) for x in min_poly)       # low -> high
        if len(c) < 2 or c[-1] != 1:
            raise ValueError("min_poly must be monic of degree >= 1 (coefficients low to high)")
        self.min_poly = c
        self.n = len(c) - 1
        if self.n > 1 and self._has_rational_root():
            raise ValueError("min_poly has a rational root, so it is reducible")
        # multiplication by theta: theta^j -> theta^(j+1), reducing theta^n
        n = self.n
        C = [[Fraction(0)] * n for _ in range(n)]   # row j = theta * theta^j
        for j in range(n - 1):
            C[j][j + 1] = Fraction(1)
        C[n - 1] = [Fraction(-x) for x in c[:-1]]
        self._theta_rows = C
        self._powers = [[[Fraction(int(i == j)) for j in range(n)] for i in range(n)]]
        for _ in range(1, n):
            self._powers.append(_matmul(self._powers[-1], C))

    def _has_rational_root(self) -> bool:
        # a monic integer polynomial's rational roots are integers dividing c_0
        c0 = self.min_poly[0]
        if c0 == 0:
            return True
        for t in range(1, abs(c0) + 1):
            if abs(c0) % t == 0:
                for x in (t, -t):
                    if sum(a * x ** k for k, a in enumerate(self.min_poly)) == 0:
                        return True
        return False

    @classmethod
    def rationals(cls) -> "NumberFieldOrder":
        return cls([0, 1])

    @classmethod
    def quadratic(cls, m: int) -> "NumberFieldOrder":
        """Ring of integers of Q(sqrt m) for squarefree m: theta = sqrt m or (1 + sqrt m)/2."""
        if m in (0, 1) or any(m % (p * p) == 0 for p in range(2, isqrt(abs(m)) + 1)):
            raise ValueError("m must be squarefree and not 0 or 1")
        if m % 4 == 1:
            return cls([-(m - 1) // 4, -1, 1])
        return cls([-m, 0, 1])

    def __eq__(self, other):
        return isinstance(other, NumberFieldOrder) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(self.min_poly)

    def __repr__(self):
        return f"NumberFieldOrder({list(self.min_poly)})"

    # elements -------------------------------------------------------------
    def elem(self, coeffs) -> Elem:
        v = [Fraction(x) for x in coeffs]
        if len(v) > self.n:
            v = list(self.reduce_poly(v))
        return tuple(v + [Fraction(0)] * (self.n - len(v)))

    def reduce_poly(self, coeffs) -> Elem:
        """Reduce an arbitrary-degree polynomial in theta."""
        c = [Fraction(x) for x in coeffs]
        for k in range(len(c) - 1, self.n - 1, -1):
            q = c[k]
            if q:
                for i, a in enumerate(self.min_poly):
                    c[k - self.n + i] -= q * a
        c = c[:self.n] + [Fraction(0)] * max(0, self.n - len(c))
        return tuple(c)

    def parse(self, text: str) -> Elem:
        """Parse a polynomial in ``th`` with rational coefficients, e.g. "3+th" or "(1+th)/2"."""
        th = sympy.Symbol("th")
        try:
            expr = sympy.sympify(text, locals={"th": th})
            poly = sympy.Poly(sympy.expand(expr), th, domain="QQ")
        except (sympy.SympifyError, sympy.PolynomialError, TypeError) as exc:
            raise ValueError(f"cannot parse field element {text!r}") from exc
        coeffs = [Fraction(int(x.p), int(x.q)) for x in reversed(poly.all_coeffs())]
        return self.reduce_poly(coeffs)

    def one(self) -> Elem:
        return self.elem([1])

    def theta(self) -> Elem:
        return self.elem([0, 1]) if self.n > 1 else self.elem([-self.min_poly[0]])

    def mul_matrix(self, x: Elem) -> list[list[Fraction]]:
        """Rows: theta^j * x, so y * x = y @ mul_matrix(x)."""
        n = self.n
        M = [[Fraction(0)] * n for _ in range(n)]
        for k, xk in enumerate(x):
            if xk:
                P = self._powers[k]
                for i in range(n):
                    for j in range(n):
                        M[i][j] += xk * P[i][j]
        return M

    def mul(self, x: Elem, y: Elem) -> Elem:
        return _vecmat(y, self.mul_matrix(x))

    def add(self, x: Elem, y: Elem) -> Elem:
        return tuple(a + b for a, b in zip(x, y))

    def trace(self, x: Elem) -> Fraction:
        M = self.mul_matrix(x)
        return sum((M[i][i] for i in range(self.n)), Fraction(0))

    def norm(self, x: Elem) -> Fraction:
        M = self.mul_matrix(x)
        d = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in M]).det()
        return Fraction(int(sympy.fraction(d)[0]), int(sympy.fraction(d)[1]))

    @cached_property
    def trace_form(self) -> list[list[int]]:
        n = self.n
        basis = [self.elem([int(i == j) for j in range(n)]) for i in range(n)]
        return [[int(self.trace(self.mul(a, b))) for b in basis] for a in basis]

    def derivative_at_theta(self) -> Elem:
        c = self.min_poly
        return self.reduce_poly([k * c[k] for k in range(1, len(c))])

    def unit_ideal(self) -> "FracIdeal":
        return FracIdeal.from_generators(self, [self.one()])

    def different(self) -> "FracIdeal":
        """D = (f'(theta)), exact for monogenic maximal orders."""
        return FracIdeal.from_generators(self, [self.derivative_at_theta()])

    def ideal(self, gens: Sequence) -> "FracIdeal":
        elems = [self.parse(g) if isinstance(g, str) else self.elem(g) for g in gens]
        return FracIdeal.from_generators(self, elems)


# --------------------------------------------------------------------------
# fractional ideals as lattices
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FracIdeal:
    """The lattice (1/denom) * rowspan(num), num in row HNF."""

    order: NumberFieldOrder
    num: tuple
    denom: int

    @classmethod
    def from_rows(cls, order: NumberFieldOrder, rows: Sequence[Sequence]) -> "FracIdeal":
        rows = [[Fraction(x) for x in r] for r in rows]
        D = reduce(lcm, (x.denominator for r in rows for x in r), 1)
        H = hnf_rows([[int(x * D) for x in r] for r in rows])
        if len(H) != order.n:
            raise ValueError("the zero ideal (or a lattice of lower rank) is not allowed")
        g = reduce(gcd, (x for r in H for x in r), D)
        return cls(order, tuple(tuple(x // g for x in r) for r in H), D // g)

    @classmethod
    def from_generators(cls, order: NumberFieldOrder, gens: Sequence[Elem]) -> "FracIdeal":
        rows = []
        for g in gens:
            rows.extend(order.mul_matrix(g))      # theta^j * g
        return cls.from_rows(order, rows)

    @classmethod
    def from_lattice(cls, order: NumberFieldOrder, rows) -> "FracIdeal":
        """A lattice that must be closed under multiplication by theta."""
        J = cls.from_rows(order, rows)
        th = order.theta()
        for b in J.basis():
            if not J.contains(order.mul(th, b)):
                raise ValueError("lattice is not an O-module")
        return J

    # lattice data ---------------------------------------------------------
    def basis(self) -> list[Elem]:
        return [tuple(Fraction(x, self.denom) for x in r) for r in self.num]

    @cached_property
    def _inv_basis(self):
        return _frac_inverse(self.basis())

    def coords(self, x: Elem) -> tuple:
        """Coordinates of x on this lattice's basis (Fractions)."""
        return _vecmat(x, self._inv_basis)

    def contains(self, x: Elem) -> bool:
        return all(c.denominator == 1 for c in self.coords(x))

    def contains_ideal(self, other: "FracIdeal") -> bool:
        return all(self.contains(b) for b in other.basis())

    @property
    def is_integral(self) -> bool:
        return self.order.unit_ideal().contains_ideal(self)

    def norm(self) -> Fraction:
        """[O : I] (a Fraction for non-integral I)."""
        return abs(Fraction(int(sympy.Matrix(self.num).det()), self.denom ** self.order.n))

    # arithmetic -----------------------------------------------------------
    def __add__(self, other: "FracIdeal") -> "FracIdeal":
        return FracIdeal.from_rows(self.order, self.basis() + other.basis())

    def __mul__(self, other: "FracIdeal") -> "FracIdeal":
        return ideal_mul(self, other)

    def scale(self, x: Elem) -> "FracIdeal":
        return FracIdeal.from_rows(self.order, [self.order.mul(x, b) for b in self.basis()])

    def dual(self) -> "FracIdeal":
        """{x : Tr(x L) in Z}; for an ideal I this is D^-1 I^-1."""
        Bm = self.basis()
        T = [[Fraction(x) for x in r] for r in self.order.trace_form]
        G = _matmul(Bm, T)                       # G[i] . x = Tr(b_i x)
        Ginv = _frac_inverse(G)
        return FracIdeal.from_rows(self.order, [list(col) for col in zip(*Ginv)])

    def inverse(self) -> "FracIdeal":
        return ideal_inverse(self)

    def __repr__(self):
        return f"FracIdeal({[list(r) for r in self.num]}/{self.denom})"


def ideal_mul(a: FracIdeal, b: FracIdeal) -> FracIdeal:
    if a.order != b.order:
        raise ValueError("ideals of different orders")
    o = a.order
    return FracIdeal.from_rows(o, [o.mul(x, y) for x in a.basis() for y in b.basis()])


def ideal_inverse(a: FracIdeal) -> FracIdeal:
    """a^-1 = {x : x a in O}, computed as the trace dual of a * O^vee."""
    o = a.order
    inv = (a * o.unit_ideal().dual()).dual()
    if a * inv != o.unit_ideal():
        raise ArithmeticError("ideal is not invertible: is the order maximal?")
    return inv


def integer_generator(f: FracIdeal) -> int:
    """The positive f with f cap Z = fZ (integral f)."""
    q = LatticeQuotient(f.order.unit_ideal(), f)
    return q.element_order(f.order.one())


# --------------------------------------------------------------------------
# quotients L1 / L2 of lattices
# --------------------------------------------------------------------------

class LatticeQuotient:
    """L1 / L2 for lattices L2 inside L1, presented as a FinAbGroup."""

    def __init__(self, big: FracIdeal, small: FracIdeal):
        if not big.contains_ideal(small):
            raise ValueError("the sublattice is not contained in the lattice")
        self.big = big
        self.small = small
        R = [big.coords(b) for b in small.basis()]
        self.q: Quotient = quotient_group([[int(x) for x in r] for r in R])
        self.group: FinAbGroup = self.q.group
        self._to = np.array(self.q.to_group, dtype=object).reshape(self.group.rank, big.order.n)

    def project(self, x: Elem) -> np.ndarray:
        c = self.big.coords(x)
        if any(v.denominator != 1 for v in c):
            raise ValueError("element is not in the lattice")
        v = [int(t) for t in c]
        out = [sum(int(self._to[i][j]) * v[j] for j in range(len(v))) for i in range(self.group.rank)]
        return np.mod(np.array(out, dtype=np.int64), self.group.moduli()) if out else np.zeros(0, dtype=np.int64)

    def lift(self, coords) -> Elem:
        v = self.q.lift_coords([int(x) for x in coords])
        B = self.big.basis()
        return tuple(sum((v[i] * B[i][j] for i in range(len(v))), Fraction(0))
                     for j in range(self.big.order.n))

    def element_order(self, x: Elem) -> int:
        c = self.project(x)
        m = self.group.moduli()
        return reduce(lcm, (int(mi) // gcd(int(ci), int(mi)) for ci, mi in zip(c, m)), 1)

    def action_matrix(self, y: Elem) -> np.ndarray:
        """Matrix (columns = images of generators) of multiplication by y in O."""
        o = self.big.order
        k = self.group.rank
        cols = [self.project(o.mul(y, self.lift(np.eye(k, dtype=np.int64)[j]))) for j in range(k)]
        return np.array(cols, dtype=np.int64).T.reshape(k, k)


# --------------------------------------------------------------------------
# arithmetic tuples and their descriptors
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ArithTuple:
    I: FracIdeal
    frak_f: FracIdeal
    r: int | None = None

    def __post_init__(self):
        if self.I.order != self.frak_f.order:
            raise ValueError("I and f live in different orders")
        if not self.frak_f.is_integral:
            raise ValueError("f must be an integral ideal")
        if self.frak_f == self.order.unit_ideal():
            raise ValueError("f must be a proper ideal")
        if self.r is not None and (self.r <= 0 or self.r % self.f):
            raise ValueError(f"r = {self.r} is not a positive multiple of f = {self.f}")

    @property
    def order(self) -> NumberFieldOrder:
        return self.I.order

    @cached_property
    def f(self) -> int:
        return integer_generator(self.frak_f)

    @property
    def centre_order(self) -> int:
        return self.f if self.r is None else self.r

    @cached_property
    def I_hat(self) -> FracIdeal:
        return self.I.dual()

    @cached_property
    def A(self) -> LatticeQuotient:
        return LatticeQuotient(self.I, self.frak_f * self.I)

    @cached_property
    def B(self) -> LatticeQuotient:
        return LatticeQuotient(self.frak_f.inverse() * self.I_hat, self.I_hat)

    def pairing(self, x: Elem, y: Elem) -> int:
        """r * Tr(xy) mod r for lifts x in I and y in f^-1 Ihat."""
        r = self.centre_order
        t = r * self.order.trace(self.order.mul(x, y))
        if t.denominator != 1:
            raise ArithmeticError("trace pairing is not valued in r^-1 Z")
        return int(t) % r


@dataclass(frozen=True)
class ArithGhg:
    tup: ArithTuple
    desc: GhgDescriptor


def _build(t: ArithTuple) -> ArithGhg:
    A, B = t.A, t.B
    ka, kb = A.group.rank, B.group.rank
    liftA = [A.lift(np.eye(ka, dtype=np.int64)[i]) for i in range(ka)]
    liftB = [B.lift(np.eye(kb, dtype=np.int64)[j]) for j in range(kb)]
    values = [[[t.pairing(x, y)] for y in liftB] for x in liftA]
    ring = []
    if t.order.n > 1:
        th = t.order.theta()
        ring.append((A.action_matrix(th).tolist(), B.action_matrix(th).tolist()))
    desc = GhgDescriptor(A.group, B.group, FinAbGroup.cyclic(t.centre_order), values, tuple(ring))
    if not check_ndc(desc):
        raise ArithmeticError("trace pairing is degenerate: check the inputs")
    return ArithGhg(t, desc)


def trace_pairing_build(t: ArithTuple) -> ArithGhg:
    """H[I, f] (or H[I, f, r] when t.r is set)."""
    return _build(t)


def ghg_with_enlarged_centre(t: ArithTuple, r: int) -> ArithGhg:
    """H[I, f, r] = H(A, B, r^-1 Z / Z, lambda) for a multiple r of f."""
    if r % t.f:
        raise ValueError(f"r = {r} is not a multiple of f = {t.f}")
    return _build(ArithTuple(t.I, t.frak_f, r))


def lifts_agree(ag: ArithGhg, x: Elem, y: Elem, dx: Elem, dy: Elem) -> bool:
    """lambda(x + dx, y + dy) = lambda(x, y) for dx in fI and dy in Ihat."""
    t = ag.tup
    o = t.order
    return t.pairing(o.add(x, dx), o.add(y, dy)) == t.pairing(x, y)


def inverse_different_isomorphism(ag: ArithGhg) -> bool:
    """When f + D = O the inclusion f^-1 I^-1 -> f^-1 Ihat induces a bijection
    f^-1 I^-1 / I^-1 -> f^-1 Ihat / Ihat.  Returns whether it does."""
    t = ag.tup
    o = t.order
    if t.frak_f + o.different() != o.unit_ideal():
        raise ValueError("f and the different are not coprime")
    finv = t.frak_f.inverse()
    Iinv = t.I.inverse()
    src = LatticeQuotient(finv * Iinv, Iinv)
    X = src.group.all_coords()
    imgs = {tuple(t.B.project(src.lift(x)).tolist()) for x in X}
    return len(imgs) == src.group.order == t.B.group.order


# --------------------------------------------------------------------------
# the residue ring O/f, module bases and the map Xi
# --------------------------------------------------------------------------

class ResidueRing:
    """O/f with elements indexed as in the underlying FinAbGroup."""

    def __init__(self, frak_f: FracIdeal):
        o = frak_f.order
        self.order = o
        self.quot = LatticeQuotient(o.unit_ideal(), frak_f)
        self.group = self.quot.group
        self.coords = self.group.all_coords()
        self.size = len(self.coords)
        self.lifts = [self.quot.lift(c) for c in self.coords]
        N = self.size
        idx = lambda x: int(self.group.index(self.quot.project(x))) if self.group.rank else 0
        self.mul_table = np.array([[idx(o.mul(a, b)) for b in self.lifts] for a in self.lifts], dtype=np.int64)
        self.add_table = np.array([[idx(o.add(a, b)) for b in self.lifts] for a in self.lifts], dtype=np.int64)
        self.zero = idx(o.elem([0]))
        self.one = idx(o.one())
        self.neg = np.array([int(np.nonzero(self.add_table[a] == self.zero)[0][0]) for a in range(N)])
        self.units = [a for a in range(N) if np.any(self.mul_table[a] == self.one)]

    def index_of(self, x: Elem) -> int:
        return int(self.group.index(self.quot.project(x))) if self.group.rank else 0

    def inv(self, a: int) -> int:
        hit = np.nonzero(self.mul_table[a] == self.one)[0]
        if not len(hit):
            raise ZeroDivisionError("not a unit")
        return int(hit[0])

    def det(self, M) -> int:
        (a, b), (c, d) = M
        return int(self.add_table[self.mul_table[a, d], self.neg[self.mul_table[b, c]]])

    def sl2(self) -> list[tuple]:
        """All matrices over O/f with determinant 1 (independent enumeration)."""
        N = self.size
        ad = self.mul_table
        out = []
        for a, b, c, d in itertools.product(range(N), repeat=4):
            if self.add_table[ad[a, d], self.neg[ad[b, c]]] == self.one:
                out.append(((a, b), (c, d)))
        return out


@dataclass(frozen=True)
class ModuleBasis:
    """x in I and y in f^-1 Ihat generating A and B over O/f."""

    x: Elem
    y: Elem
    xbar: tuple
    ybar: tuple


def _generates(o: NumberFieldOrder, x: Elem, sub: FracIdeal, whole: FracIdeal) -> bool:
    if not any(x):
        return False
    return FracIdeal.from_generators(o, [x]) + sub == whole


def _candidates(L: FracIdeal, bound: int):
    B = L.basis()
    o = L.order
    for b in B:
        yield b
    for i, j in itertools.combinations(range(len(B)), 2):
        for s, t in itertools.product(range(1, bound + 1), repeat=2):
            yield tuple(s * u + t * v for u, v in zip(B[i], B[j]))
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(B)):
        yield tuple(sum((c * B[k][m] for k, c in enumerate(coeffs)), Fraction(0)) for m in range(o.n))


def basis_pick(ag: ArithGhg, bound: int = 3) -> ModuleBasis:
    t = ag.tup
    o = t.order
    fI = t.frak_f * t.I
    big_B = t.frak_f.inverse() * t.I_hat
    x = next((c for c in _candidates(t.I, bound) if _generates(o, c, fI, t.I)), None)
    y = next((c for c in _candidates(big_B, bound) if _generates(o, c, t.I_hat, big_B)), None)
    if x is None or y is None:
        raise ArithmeticError(f"no module generator among small combinations (bound {bound}); "
                              "increase the bound")
    return ModuleBasis(x, y, tuple(t.A.project(x).tolist()), tuple(t.B.project(y).tolist()))


class XiMap:
    """Xi_{xbar, ybar}: O/f-linear endomorphisms of A+B <-> M_2(O/f)."""

    def __init__(self, ag: ArithGhg, mb: ModuleBasis, ring: ResidueRing | None = None):
        self.ag = ag
        self.mb = mb
        t = ag.tup
        self.ring = ResidueRing(t.frak_f) if ring is None else ring
        o = t.order
        desc = ag.desc
        # u -> u xbar and u -> u ybar, as indices into A and B
        self.timesA = np.array([int(desc.A.index(t.A.project(o.mul(u, mb.x)))) for u in self.ring.lifts])
        self.timesB = np.array([int(desc.B.index(t.B.project(o.mul(u, mb.y)))) for u in self.ring.lifts])
        if len(set(self.timesA.tolist())) != self.ring.size or len(set(self.timesB.tolist())) != self.ring.size:
            raise ArithmeticError("chosen elements are not module bases")
        self.coefA = np.empty(self.ring.size, dtype=np.int64)
        self.coefA[self.timesA] = np.arange(self.ring.size)
        self.coefB = np.empty(self.ring.size, dtype=np.int64)
        self.coefB[self.timesB] = np.arange(self.ring.size)
        self.XA = desc.A.all_coords()
        self.XB = desc.B.all_coords()

    def forward(self, sp: SpElement | np.ndarray) -> tuple:
        desc = self.ag.desc
        M = sp.array() if isinstance(sp, SpElement) else np.asarray(sp, dtype=np.int64)
        ka = desc.A.rank
        mods = sum_group_moduli(desc)
        ex = np.concatenate([self.mb.xbar, np.zeros(desc.B.rank, dtype=np.int64)])
        ey = np.concatenate([np.zeros(ka, dtype=np.int64), self.mb.ybar])
        ix, iy = np.mod(M @ ex, mods), np.mod(M @ ey, mods)
        u = int(self.coefA[desc.A.index(ix[:ka])])
        w = int(self.coefB[desc.B.index(ix[ka:])])
        v = int(self.coefA[desc.A.index(iy[:ka])])
        z = int(self.coefB[desc.B.index(iy[ka:])])
        return ((u, v), (w, z))

    def backward(self, mat) -> SpElement:
        """The O/f-linear endomorphism with matrix ``mat`` (ring indices)."""
        desc = self.ag.desc
        (u, v), (w, z) = mat
        mt = self.ring.mul_table
        k = desc.A.rank + desc.B.rank
        ka = desc.A.rank
        cols = []
        for j in range(k):
            g = np.zeros(k, dtype=np.int64)
            g[j] = 1
            if j < ka:      # c xbar -> (u c xbar, w c ybar)
                c = int(self.coefA[desc.A.index(g[:ka])])
                a_img, b_img = self.XA[self.timesA[mt[u, c]]], self.XB[self.timesB[mt[w, c]]]
            else:           # c ybar -> (v c xbar, z c ybar)
                c = int(self.coefB[desc.B.index(g[ka:])])
                a_img, b_img = self.XA[self.timesA[mt[v, c]]], self.XB[self.timesB[mt[z, c]]]
            cols.append(np.concatenate([a_img, b_img]))
        return SpElement(desc, np.array(cols, dtype=np.int64).T)


def xi_sl2_map(ag: ArithGhg, sp: SpElement, mb: ModuleBasis) -> tuple:
    return XiMap(ag, mb).forward(sp)


@dataclass(frozen=True)
class Sl2Report:
    sp_count: int
    sl2_count: int
    sp_dets_one: bool          # every symplectic map has det 1
    det_one_symplectic: bool   # every det-1 matrix gives a symplectic map
    others_not_symplectic: bool


def sl2_correspondence(ag: ArithGhg, mb: ModuleBasis | None = None) -> Sl2Report:
    """Exhaustive check that Xi maps Sp onto SL_2(O/f), in both directions."""
    mb = basis_pick(ag) if mb is None else mb
    xi = XiMap(ag, mb)
    ring = xi.ring
    sp = enumerate_sp(ag.desc)
    dets = [ring.det(xi.forward(g)) for g in sp]
    sl2 = ring.sl2()
    sl2_set = set(sl2)
    det_one_ok = all(is_symplectic(ag.desc, xi.backward(m)) for m in sl2)
    others_ok = True
    units = set(ring.units)
    for m in itertools.product(range(ring.size), repeat=4):
        mat = ((m[0], m[1]), (m[2], m[3]))
        if mat in sl2_set or ring.det(mat) not in units:
            continue
        if is_symplectic(ag.desc, xi.backward(mat)):
            others_ok = False
            break
    return Sl2Report(len(sp), len(sl2), all(d == ring.one for d in dets), det_one_ok, others_ok)


# --------------------------------------------------------------------------
# configs
# --------------------------------------------------------------------------

def parse_config(data: dict) -> ArithTuple:
    """{"min_poly": [-2, 0, 1], "I": ["1", "th"], "frak_f": ["7", "3+th"], "r": null}."""
    try:
        if "quadratic" in data:
            o = NumberFieldOrder.quadratic(int(data["quadratic"]))
        else:
            o = NumberFieldOrder([int(x) for x in data["min_poly"]])
        I = o.ideal(data.get("I", ["1"]))
        frak_f = o.ideal(data["frak_f"])
        r = data.get("r")
    except KeyError as exc:
        raise ValueError(f"config is missing {exc}") from None
    return ArithTuple(I, frak_f, None if r is None else int(r))
