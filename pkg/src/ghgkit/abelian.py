"""Finite abelian groups in invariant-factor form.

A group is stored as its invariant factors d_1 | d_2 | ... | d_k (ascending,
factors equal to 1 dropped).  Elements are residue vectors.  All integer
linear algebra (Smith and Hermite normal forms) is done with Python ints so
that pivots never overflow.

>>> G = FinAbGroup((2, 4))
>>> (G.element([1, 3]) + G.element([1, 2])).coords
(0, 1)
>>> smith_decompose([[4, 2], [2, 4]])[1]
[[2, 0], [0, 6]]
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

import numpy as np


# --------------------------------------------------------------------------
# integer matrix normal forms
# --------------------------------------------------------------------------

def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _as_int_matrix(M) -> list[list[int]]:
    rows = [[int(x) for x in row] for row in M]
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix")
    return rows


def smith_decompose(M) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (U, D, V) with U*M*V = D, U and V unimodular.

    D is diagonal (rectangular if M is) with non-negative entries
    d_1 | d_2 | ...; zeros come last.
    """
    A = _as_int_matrix(M)
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        if k:
            A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]
            U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, k):  # col_dst += k * col_src
        if k:
            for row in A:
                row[dst] += k * row[src]
            for row in V:
                row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            # smallest nonzero entry of the trailing block becomes the pivot
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return U, A, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = A[i][t] // p
                add_row(t, i, -q)
                dirty |= A[i][t] != 0
            for j in range(t + 1, n):
                q = A[t][j] // p
                add_col(t, j, -q)
                dirty |= A[t][j] != 0
            if dirty:
                continue
            # divisibility repair: pull a bad row into the pivot row
            bad = next((i for i in range(t + 1, m)
                        for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(bad, t, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return U, A, V


def smith_diagonal(M) -> list[int]:
    U, D, V = smith_decompose(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def hnf_rows(M) -> list[list[int]]:
    """Row Hermite normal form of the lattice spanned by the rows of M.

    Returns the nonzero rows: echelon form, positive pivots, entries above
    each pivot reduced into [0, pivot).
    """
    A = [row[:] for row in _as_int_matrix(M)]
    if not A:
        return []
    n = len(A[0])
    out_row = 0
    for col in range(n):
        # gcd-combine column entries into A[out_row]
        for i in range(out_row + 1, len(A)):
            a, b = A[out_row][col], A[i][col]
            if b == 0:
                continue
            g, x, y = _xgcd(a, b)
            ra, rb = A[out_row], A[i]
            A[out_row] = [x * u + y * v for u, v in zip(ra, rb)]
            A[i] = [(a // g) * v - (b // g) * u for u, v in zip(ra, rb)]
        if out_row < len(A) and A[out_row][col] != 0:
            if A[out_row][col] < 0:
                A[out_row] = [-x for x in A[out_row]]
            p = A[out_row][col]
            for i in range(out_row):
                q = A[i][col] // p
                if q:
                    A[i] = [u - q * v for u, v in zip(A[i], A[out_row])]
            out_row += 1
            if out_row == len(A):
                break
    return [row for row in A[:out_row] if any(row)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, x, y with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def integer_kernel(M) -> list[list[int]]:
    """Basis (as rows) of {x in Z^n : M x = 0}."""
    A = _as_int_matrix(M)
    n = len(A[0])
    U, D, V = smith_decompose(A)
    rank = sum(1 for i in range(min(len(D), n)) if D[i][i])
    return [[V[r][j] for r in range(n)] for j in range(rank, n)]


def det(M) -> int:
    """Exact integer determinant (Bareiss)."""
    A = _as_int_matrix(M)
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if A[i][k]), None)
            if sw is None:
                return 0
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


# --------------------------------------------------------------------------
# groups and elements
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FinAbGroup:
    """Finite abelian group Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... | d_k."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        f = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", f)
        for d in f:
            if d < 2:
                raise ValueError(f"invariant factors must be >= 2, got {f}")
        for a, b in zip(f, f[1:]):
            if b % a:
                raise ValueError(f"invariant factors must form a divisor chain, got {f}")

    @classmethod
    def cyclic(cls, n: int) -> "FinAbGroup":
        return cls((n,) if n > 1 else ())

    @classmethod
    def from_moduli(cls, moduli: Sequence[int]) -> "FinAbGroup":
        """Canonical form of Z/m_1 + ... + Z/m_k for arbitrary m_i >= 1."""
        k = len(moduli)
        return quotient_group([[int(moduli[i]) if i == j else 0 for j in range(k)]
                               for i in range(k)]).group

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def is_cyclic(self) -> bool:
        return self.rank <= 1

    def element(self, coords: Iterable[int]) -> "GroupElement":
        c = tuple(int(x) for x in coords)
        if len(c) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(c)}")
        return GroupElement(self, tuple(x % d for x, d in zip(c, self.invariant_factors)))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def generators(self) -> list["GroupElement"]:
        return [self.element([int(i == j) for j in range(self.rank)]) for i in range(self.rank)]

    # vectorised helpers -------------------------------------------------
    def moduli(self) -> np.ndarray:
        return np.array(self.invariant_factors, dtype=np.int64)

    def all_coords(self) -> np.ndarray:
        """All elements as an (order, rank) array in lexicographic order."""
        if self.rank == 0:
            return np.zeros((1, 0), dtype=np.int64)
        grids = np.indices(self.invariant_factors).reshape(self.rank, -1).T
        return grids.astype(np.int64)

    def index(self, coords) -> np.ndarray | int:
        """Lexicographic index of coordinate vector(s); inverse of all_coords."""
        c = np.asarray(coords, dtype=np.int64)
        if self.rank == 0:
            return np.zeros(c.shape[:-1], dtype=np.int64) if c.ndim > 1 else 0
        c = np.mod(c, self.moduli())
        idx = np.ravel_multi_index(tuple(np.moveaxis(c, -1, 0)), self.invariant_factors)
        return idx if c.ndim > 1 else int(idx)

    def elements(self) -> Iterator["GroupElement"]:
        for c in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield GroupElement(self, c)

    def random_element(self, rng: np.random.Generator) -> "GroupElement":
        return GroupElement(self, tuple(int(rng.integers(d)) for d in self.invariant_factors))

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors)}

    @classmethod
    def from_json(cls, data) -> "FinAbGroup":
        if isinstance(data, dict):
            data = data["invariant_factors"]
        return cls(tuple(data))

    def __repr__(self):
        if not self.invariant_factors:
            return "FinAbGroup(trivial)"
        return "FinAbGroup(" + " + ".join(f"Z/{d}" for d in self.invariant_factors) + ")"


@dataclass(frozen=True)
class GroupElement:
    parent: FinAbGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        for x, d in zip(self.coords, self.parent.invariant_factors):
            if not 0 <= x < d:
                raise ValueError(f"coordinate {x} not reduced mod {d}")
        if len(self.coords) != self.parent.rank:
            raise ValueError("coordinate length does not match the group rank")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return element_add(self, other)

    def __neg__(self) -> "GroupElement":
        return self.scale(-1)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return element_add(self, other.scale(-1))

    def scale(self, k: int) -> "GroupElement":
        return self.parent.element(k * x for x in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def order(self) -> int:
        o = 1
        for x, d in zip(self.coords, self.parent.invariant_factors):
            k = d // gcd(x, d)
            o = o * k // gcd(o, k)
        return o

    def to_json(self) -> dict:
        return {"coords": list(self.coords)}

    def __repr__(self):
        return f"GroupElement{self.coords}"


def element_add(x: GroupElement, y: GroupElement) -> GroupElement:
    if x.parent != y.parent:
        raise ValueError("elements belong to different groups")
    return x.parent.element(a + b for a, b in zip(x.coords, y.coords))


# --------------------------------------------------------------------------
# quotients of lattices
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Quotient:
    """Z^n / L presented as a FinAbGroup.

    ``to_group`` (rank x n) maps ambient coordinates to group coordinates,
    ``lift`` (n x rank) sends each group generator to an ambient vector.
    """

    group: FinAbGroup
    to_group: tuple[tuple[int, ...], ...]
    lift: tuple[tuple[int, ...], ...]

    def project(self, v: Sequence[int]) -> GroupElement:
        return self.group.element(sum(r[j] * int(v[j]) for j in range(len(v))) for r in self.to_group)

    def lift_coords(self, coords: Sequence[int]) -> list[int]:
        n = len(self.lift)
        return [sum(self.lift[i][k] * int(coords[k]) for k in range(len(coords))) for i in range(n)]


def _inverse_unimodular(U: list[list[int]]) -> list[list[int]]:
    from fractions import Fraction
    n = len(U)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(U)]
    for c in range(n):
        p = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    out = [[row[n + j] for j in range(n)] for row in A]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


def quotient_group(relations) -> Quotient:
    """Present Z^n / (row span of ``relations``) as a FinAbGroup.

    The relation rows must span a full-rank sublattice (finite quotient).
    """
    R = _as_int_matrix(relations)
    n = len(R[0])
    # rows are relations, so work with the transpose: columns span L
    RT = [[R[i][j] for i in range(len(R))] for j in range(n)]
    U, D, V = smith_decompose(RT)
    diag = [D[i][i] if i < len(D[0]) else 0 for i in range(n)]
    if any(d == 0 for d in diag):
        raise ValueError("relations do not have full rank: quotient is infinite")
    Uinv = _inverse_unimodular(U)
    keep = [i for i in range(n) if diag[i] != 1]
    group = FinAbGroup(tuple(diag[i] for i in keep))
    to_group = tuple(tuple(U[i]) for i in keep)
    lift = tuple(tuple(Uinv[r][i] for i in keep) for r in range(n))
    return Quotient(group, to_group, lift)


def subgroup_order(group: FinAbGroup, gens: Sequence[Sequence[int]]) -> int:
    """Order of the subgroup generated by coordinate vectors ``gens``."""
    k = group.rank
    if k == 0:
        return 1
    cols = [[int(d) if i == j else 0 for j, d in enumerate(group.invariant_factors)] for i in range(k)]
    M = [cols[i] + [int(g[i]) for g in gens] for i in range(k)]
    diag = smith_diagonal(M)
    return group.order // prod(diag)


def subgroup_elements(group: FinAbGroup, gens: Sequence[Sequence[int]]) -> np.ndarray:
    """All elements of the subgroup generated by ``gens`` (as a coordinate array)."""
    mods = group.moduli()
    current = {tuple([0] * group.rank)}
    for g in gens:
        g = np.mod(np.asarray(g, dtype=np.int64), mods)
        step = set()
        for c in current:
            x = np.array(c, dtype=np.int64)
            while True:
                t = tuple(int(v) for v in x)
                if t in step:
                    break
                step.add(t)
                x = np.mod(x + g, mods)
        current = step
    arr = np.array(sorted(current), dtype=np.int64).reshape(len(current), group.rank)
    return arr


def hom_kernel(source_moduli: Sequence[int], matrix, target_moduli: Sequence[int]) -> list[list[int]]:
    """Generators (source coordinates) of the kernel of x -> matrix @ x.

    ``matrix`` has one row per target coordinate; target coordinate j is
    read modulo target_moduli[j].
    """
    M = _as_int_matrix(matrix)
    k = len(source_moduli)
    m = len(target_moduli)
    if m == 0:
        return [[int(i == j) for j in range(k)] for i in range(k)]
    block = [M[j] + [int(target_moduli[j]) if j == i else 0 for i in range(m)] for j in range(m)]
    gens = []
    for v in integer_kernel(block):
        x = [v[i] % source_moduli[i] for i in range(k)]
        if any(x):
            gens.append(x)
    return gens


# --------------------------------------------------------------------------
# homomorphisms and pairings
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by an integer matrix on coordinate vectors.

    ``matrix[i][j]`` is coordinate i of the image of source generator j.
    """

    source: FinAbGroup
    target: FinAbGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        M = tuple(tuple(int(x) % d for x in row)
                  for row, d in zip(self.matrix, self.target.invariant_factors))
        if len(M) != self.target.rank or any(len(r) != self.source.rank for r in M):
            raise ValueError("matrix shape does not match source/target ranks")
        object.__setattr__(self, "matrix", M)
        for j, dj in enumerate(self.source.invariant_factors):
            for i, ti in enumerate(self.target.invariant_factors):
                if (dj * M[i][j]) % ti:
                    raise ValueError(f"generator {j} of order {dj} cannot map to coordinate "
                                     f"{M[i][j]} mod {ti}")

    def __call__(self, x: GroupElement) -> GroupElement:
        if x.parent != self.source:
            raise ValueError("element not in the source group")
        return self.target.element(sum(r[j] * x.coords[j] for j in range(len(r))) for r in self.matrix)

    def apply_coords(self, coords: np.ndarray) -> np.ndarray:
        M = np.array(self.matrix, dtype=np.int64).reshape(self.target.rank, self.source.rank)
        return np.mod(np.asarray(coords, dtype=np.int64) @ M.T, self.target.moduli())

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self o inner."""
        if inner.target != self.source:
            raise ValueError("cannot compose: target/source mismatch")
        M = [[sum(self.matrix[i][k] * inner.matrix[k][j] for k in range(self.source.rank))
              for j in range(inner.source.rank)] for i in range(self.target.rank)]
        return GroupHom(inner.source, self.target, tuple(tuple(r) for r in M))

    def is_bijective(self) -> bool:
        if self.source.order != self.target.order:
            return False
        return subgroup_order(self.target, [[row[j] for row in self.matrix]
                                            for j in range(self.source.rank)]) == self.target.order

    @classmethod
    def identity(cls, G: FinAbGroup) -> "GroupHom":
        return cls(G, G, tuple(tuple(int(i == j) for j in range(G.rank)) for i in range(G.rank)))

    @classmethod
    def scalar(cls, G: FinAbGroup, k: int) -> "GroupHom":
        return cls(G, G, tuple(tuple(k * int(i == j) for j in range(G.rank)) for i in range(G.rank)))


def hom_row_vectors(moduli: Sequence[int], r: int) -> np.ndarray:
    """All homomorphisms (Z/m_1 + ... + Z/m_k) -> Z/r as integer rows."""
    choices = []
    for m in moduli:
        g = gcd(int(m), r)
        choices.append([t * (r // g) for t in range(g)])
    rows = list(itertools.product(*choices))
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(moduli))


def hom_enumerate(A: FinAbGroup, C: FinAbGroup) -> list[GroupHom]:
    """Every homomorphism A -> C for cyclic C, each exactly once."""
    if not C.is_cyclic:
        raise ValueError("target group must be cyclic")
    r = C.order
    if r == 1:
        return [GroupHom(A, C, ())]
    return [GroupHom(A, C, (tuple(int(x) for x in row),))
            for row in hom_row_vectors(A.invariant_factors, r)]


@dataclass(frozen=True)
class CyclicPairing:
    """Bilinear map left x right -> target, target cyclic of order r.

    ``values[i][j]`` is lambda(e_i, f_j) as an integer mod r.
    """

    left: FinAbGroup
    right: FinAbGroup
    target: FinAbGroup
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.target.is_cyclic:
            raise ValueError("pairing target must be cyclic")
        r = self.target.order
        V = tuple(tuple(int(x) % r for x in row) for row in self.values)
        if len(V) != self.left.rank or any(len(row) != self.right.rank for row in V):
            raise ValueError("pairing matrix shape does not match the groups")
        object.__setattr__(self, "values", V)
        for i, di in enumerate(self.left.invariant_factors):
            for j, ej in enumerate(self.right.invariant_factors):
                if (di * V[i][j]) % r or (ej * V[i][j]) % r:
                    raise ValueError(f"pairing value {V[i][j]} at ({i},{j}) is not compatible "
                                     f"with generator orders {di}, {ej} and r={r}")

    @property
    def r(self) -> int:
        return self.target.order

    def matrix(self) -> np.ndarray:
        return np.array(self.values, dtype=np.int64).reshape(self.left.rank, self.right.rank)

    def __call__(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return pairing_eval(self, a, b)

    def eval_coords(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Vectorised lambda on coordinate arrays (broadcasting on leading axes)."""
        if self.r == 1:
            return np.zeros(np.broadcast_shapes(np.shape(a)[:-1], np.shape(b)[:-1]), dtype=np.int64)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        aV = np.mod(a @ self.matrix(), self.r)
        return np.mod(np.sum(aV * b, axis=-1), self.r)

    def table(self) -> np.ndarray:
        """lambda(x, y) for all x in left, y in right (lexicographic indices)."""
        X = self.left.all_coords()
        Y = self.right.all_coords()
        if self.r == 1:
            return np.zeros((len(X), len(Y)), dtype=np.int64)
        return np.mod(np.mod(X @ self.matrix(), self.r) @ Y.T, self.r)

    def transpose(self) -> "CyclicPairing":
        V = tuple(tuple(self.values[i][j] for i in range(self.left.rank)) for j in range(self.right.rank))
        return CyclicPairing(self.right, self.left, self.target, V)


def pairing_eval(lam: CyclicPairing, a: GroupElement, b: GroupElement) -> GroupElement:
    if a.parent != lam.left or b.parent != lam.right:
        raise ValueError("arguments are not in the pairing's domain")
    r = lam.r
    if r == 1:
        return lam.target.zero()
    v = sum(a.coords[i] * lam.values[i][j] * b.coords[j]
            for i in range(lam.left.rank) for j in range(lam.right.rank))
    return lam.target.element([v % r])
