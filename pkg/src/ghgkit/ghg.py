"""Generalized Heisenberg groups H(A, B, C, lambda).

Elements are triples h(a, b, c) with product

    h(a, b, c) h(a', b', c') = h(a + a', b + b', c + c' + lambda(a, b')).

Besides the element-level API (HeisElem) every descriptor offers vectorised
versions working on integer coordinate arrays of shape (N, kA + kB + kC),
which is what the representation and automorphism code uses internally.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .abelian import (FinAbGroup, GroupElement, GroupHom, CyclicPairing, Quotient,
                      hom_kernel, quotient_group, subgroup_elements, subgroup_order)


def _freeze(M) -> tuple:
    if isinstance(M, (list, tuple, np.ndarray)):
        return tuple(_freeze(x) for x in M)
    return int(M)


@dataclass(frozen=True)
class GhgDescriptor:
    """The data (A, B, C, lambda) plus an optional ring action.

    ``values[i][j]`` holds lambda(e_i, f_j) as a coordinate vector of C.
    ``ring`` is a tuple of (matrix on A, matrix on B) pairs, one per ring
    generator; matrix columns are images of the generators.
    """

    A: FinAbGroup
    B: FinAbGroup
    C: FinAbGroup
    values: tuple
    ring: tuple = ()

    def __post_init__(self):
        V = np.array(self.values, dtype=np.int64).reshape(self.A.rank, self.B.rank, self.C.rank)
        V = np.mod(V, self.C.moduli()) if self.C.rank else V
        object.__setattr__(self, "values", _freeze(V))
        mods = self.C.invariant_factors
        for i, di in enumerate(self.A.invariant_factors):
            for j, ej in enumerate(self.B.invariant_factors):
                for k, ck in enumerate(mods):
                    if (di * V[i, j, k]) % ck or (ej * V[i, j, k]) % ck:
                        raise ValueError(f"lambda(e_{i}, f_{j}) = {V[i, j].tolist()} is not "
                                         "compatible with the generator orders")
        ring = tuple((_freeze(ma), _freeze(mb)) for ma, mb in self.ring)
        object.__setattr__(self, "ring", ring)
        for ma, mb in ring:
            GroupHom(self.A, self.A, ma)
            GroupHom(self.B, self.B, mb)
            ra = np.array(ma, dtype=np.int64).reshape(self.A.rank, self.A.rank)
            rb = np.array(mb, dtype=np.int64).reshape(self.B.rank, self.B.rank)
            ea = np.eye(self.A.rank, dtype=np.int64)
            eb = np.eye(self.B.rank, dtype=np.int64)
            lhs = self.pair_coords(ra.T[:, None, :], eb[None, :, :])
            rhs = self.pair_coords(ea[:, None, :], rb.T[None, :, :])
            if not np.array_equal(lhs, rhs):
                raise ValueError("lambda is not balanced for the ring action")

    # ---- constructors ---------------------------------------------------
    @classmethod
    def from_pairing(cls, lam: CyclicPairing, ring=()) -> "GhgDescriptor":
        V = [[[v] if lam.target.rank else [] for v in row] for row in lam.values]
        return cls(lam.left, lam.right, lam.target, V, ring)

    # ---- basic invariants ------------------------------------------------
    @property
    def s(self) -> int:
        return self.A.order

    @property
    def e(self) -> int:
        return self.A.exponent

    @property
    def r(self) -> int:
        return self.C.order

    @property
    def order(self) -> int:
        return self.A.order * self.B.order * self.C.order

    @property
    def lam(self) -> CyclicPairing:
        if not self.C.is_cyclic:
            raise ValueError("C is not cyclic")
        V = tuple(tuple(cell[0] if cell else 0 for cell in row) for row in self.values)
        return CyclicPairing(self.A, self.B, self.C, V)

    def value_array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.int64).reshape(self.A.rank, self.B.rank, self.C.rank)

    @property
    def widths(self) -> tuple[int, int, int]:
        return self.A.rank, self.B.rank, self.C.rank

    def moduli(self) -> np.ndarray:
        return np.array(self.A.invariant_factors + self.B.invariant_factors
                        + self.C.invariant_factors, dtype=np.int64)

    # ---- vectorised arithmetic -----------------------------------------
    def pair_coords(self, a, b) -> np.ndarray:
        """lambda(a, b) on coordinate arrays; result has C-coordinates in the last axis."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.C.rank == 0:
            return np.zeros(np.broadcast_shapes(a.shape[:-1], b.shape[:-1]) + (0,), dtype=np.int64)
        V = self.value_array()
        out = np.einsum("...i,ijk,...j->...k", a, V, b)
        return np.mod(out, self.C.moduli())

    def split(self, X) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        X = np.asarray(X, dtype=np.int64)
        ka, kb, _ = self.widths
        return X[..., :ka], X[..., ka:ka + kb], X[..., ka + kb:]

    def join(self, a, b, c) -> np.ndarray:
        X = np.concatenate([np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64),
                            np.asarray(c, dtype=np.int64)], axis=-1)
        return np.mod(X, self.moduli()) if X.shape[-1] else X

    def mul_coords(self, X, Y) -> np.ndarray:
        a, b, c = self.split(X)
        a2, b2, c2 = self.split(Y)
        return self.join(a + a2, b + b2, c + c2 + self.pair_coords(a, b2))

    def inv_coords(self, X) -> np.ndarray:
        a, b, c = self.split(X)
        return self.join(-a, -b, self.pair_coords(a, b) - c)

    def commutator_coords(self, X, Y) -> np.ndarray:
        a, b, _ = self.split(X)
        a2, b2, _ = self.split(Y)
        z = np.zeros_like(a)
        zb = np.zeros_like(b)
        return self.join(z, zb, self.pair_coords(a, b2) - self.pair_coords(a2, b))

    def all_coords(self) -> np.ndarray:
        shape = tuple(int(m) for m in self.moduli())
        if not shape:
            return np.zeros((1, 0), dtype=np.int64)
        return np.indices(shape).reshape(len(shape), -1).T.astype(np.int64)

    def index(self, X) -> np.ndarray:
        X = np.mod(np.asarray(X, dtype=np.int64), self.moduli())
        shape = tuple(int(m) for m in self.moduli())
        return np.ravel_multi_index(tuple(np.moveaxis(X, -1, 0)), shape)

    def random_coords(self, rng: np.random.Generator, n: int) -> np.ndarray:
        m = self.moduli()
        return rng.integers(0, m, size=(n, len(m)))

    # ---- element API ---------------------------------------------------------
    def element(self, a, b, c) -> "HeisElem":
        def grp(G, x):
            if isinstance(x, GroupElement):
                return x
            if np.isscalar(x):
                x = [x]
            return G.element(x)
        return HeisElem(self, grp(self.A, a), grp(self.B, b), grp(self.C, c))

    def from_coords(self, X) -> "HeisElem":
        a, b, c = self.split(np.asarray(X))
        return HeisElem(self, self.A.element(a.tolist()), self.B.element(b.tolist()),
                        self.C.element(c.tolist()))

    def identity(self) -> "HeisElem":
        return HeisElem(self, self.A.zero(), self.B.zero(), self.C.zero())

    def central(self, c) -> "HeisElem":
        """m(c) = h(0, 0, c)."""
        return self.element(self.A.zero(), self.B.zero(), c)

    def elements(self):
        for row in self.all_coords():
            yield self.from_coords(row)

    # ---- serialisation -------------------------------------------------------
    def to_json(self) -> dict:
        V = self.value_array()
        lam = V[..., 0].tolist() if self.C.rank == 1 else V.tolist()
        ring = [{"A": [list(r) for r in ma], "B": [list(r) for r in mb]} for ma, mb in self.ring]
        return {"A": self.A.to_json(), "B": self.B.to_json(), "C": self.C.to_json(),
                "lambda_matrix": lam, "ring": ring or None}

    @classmethod
    def from_json(cls, data: dict) -> "GhgDescriptor":
        A = FinAbGroup.from_json(data["A"])
        B = FinAbGroup.from_json(data["B"])
        C = FinAbGroup.from_json(data["C"])
        lam = np.array(data["lambda_matrix"], dtype=np.int64)
        if C.rank == 1 and lam.ndim == 2:
            lam = lam[..., None]
        lam = lam.reshape(A.rank, B.rank, C.rank)
        ring = tuple((tuple(map(tuple, g["A"])), tuple(map(tuple, g["B"])))
                     for g in (data.get("ring") or ()))
        return cls(A, B, C, lam, ring)


@dataclass(frozen=True)
class HeisElem:
    desc: GhgDescriptor = field(repr=False)
    a: GroupElement
    b: GroupElement
    c: GroupElement

    def __post_init__(self):
        if (self.a.parent != self.desc.A or self.b.parent != self.desc.B
                or self.c.parent != self.desc.C):
            raise ValueError("components do not belong to the descriptor's groups")

    def coords(self) -> np.ndarray:
        return np.array(self.a.coords + self.b.coords + self.c.coords, dtype=np.int64)

    def __mul__(self, other: "HeisElem") -> "HeisElem":
        return multiply(self, other)

    def inverse(self) -> "HeisElem":
        return inverse(self)

    def __pow__(self, n: int) -> "HeisElem":
        if n < 0:
            return inverse(self) ** (-n)
        out = self.desc.identity()
        for _ in range(n):
            out = out * self
        return out

    def is_identity(self) -> bool:
        return self.a.is_zero() and self.b.is_zero() and self.c.is_zero()

    def to_json(self) -> dict:
        return {"a": list(self.a.coords), "b": list(self.b.coords), "c": list(self.c.coords)}

    def __repr__(self):
        f = lambda g: g.coords[0] if len(g.coords) == 1 else g.coords
        return f"h({f(self.a)}, {f(self.b)}, {f(self.c)})"


def _same(h: HeisElem, k: HeisElem):
    if h.desc != k.desc:
        raise ValueError("elements belong to different groups")


def multiply(h: HeisElem, k: HeisElem) -> HeisElem:
    _same(h, k)
    return h.desc.from_coords(h.desc.mul_coords(h.coords(), k.coords()))


def inverse(h: HeisElem) -> HeisElem:
    return h.desc.from_coords(h.desc.inv_coords(h.coords()))


def commutator(h: HeisElem, k: HeisElem) -> HeisElem:
    """[h, k] = h k h^-1 k^-1, by the closed formula."""
    _same(h, k)
    return h.desc.from_coords(h.desc.commutator_coords(h.coords(), k.coords()))


# --------------------------------------------------------------------------
# structure: centre, derived subgroup, ND-C
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Structure:
    kernel_A: tuple          # generators of K_A (A-coordinates)
    kernel_B: tuple
    order_K_A: int
    order_K_B: int
    image_gens: tuple        # generators of Lambda = im(lambda) (C-coordinates)
    order_image: int
    centre_order: int
    derived_order: int


def centre_and_derived(desc: GhgDescriptor) -> Structure:
    """K_A, K_B and im(lambda), from which Z = h(K_A, K_B, C) and [H,H] = h(0,0,Lambda)."""
    V = desc.value_array()
    ka, kb, kc = desc.widths
    cm = desc.C.invariant_factors
    # a -> (lambda(a, f_j))_j : rows indexed by (j, k)
    rows_a = [[int(V[i, j, k]) for i in range(ka)] for j in range(kb) for k in range(kc)]
    rows_b = [[int(V[i, j, k]) for j in range(kb)] for i in range(ka) for k in range(kc)]
    tmods_a = [cm[k] for j in range(kb) for k in range(kc)]
    tmods_b = [cm[k] for i in range(ka) for k in range(kc)]
    KA = hom_kernel(desc.A.invariant_factors, rows_a or [[0] * ka], tmods_a or [1])
    KB = hom_kernel(desc.B.invariant_factors, rows_b or [[0] * kb], tmods_b or [1])
    oKA = subgroup_order(desc.A, KA) if KA else 1
    oKB = subgroup_order(desc.B, KB) if KB else 1
    img = [V[i, j].tolist() for i in range(ka) for j in range(kb)]
    oL = subgroup_order(desc.C, img) if img and kc else 1
    return Structure(tuple(map(tuple, KA)), tuple(map(tuple, KB)), oKA, oKB,
                     tuple(map(tuple, img)), oL, oKA * oKB * desc.r, oL)


@dataclass(frozen=True)
class NdcReport:
    ok: bool
    c_cyclic: bool
    order_K_A: int
    order_K_B: int
    equal_sizes: bool
    exponent_divides_r: bool

    def __bool__(self):
        return self.ok


def check_ndc(desc: GhgDescriptor) -> NdcReport:
    st = centre_and_derived(desc)
    cyc = desc.C.is_cyclic
    ok = cyc and st.order_K_A == 1 and st.order_K_B == 1
    return NdcReport(ok, cyc, st.order_K_A, st.order_K_B, desc.A.order == desc.B.order,
                     desc.r % desc.A.exponent == 0)


def centre_mask(desc: GhgDescriptor) -> np.ndarray:
    """Boolean mask over all_coords() marking central elements."""
    st = centre_and_derived(desc)
    KA = {tuple(x) for x in subgroup_elements(desc.A, st.kernel_A).tolist()}
    KB = {tuple(x) for x in subgroup_elements(desc.B, st.kernel_B).tolist()}
    a, b, _ = desc.split(desc.all_coords())
    return np.array([tuple(x) in KA and tuple(y) in KB for x, y in zip(a.tolist(), b.tolist())])


def coset_representatives(desc: GhgDescriptor) -> np.ndarray:
    """Indices (into all_coords()) of one element per coset of the centre."""
    st = centre_and_derived(desc)
    KA = subgroup_elements(desc.A, st.kernel_A)
    KB = subgroup_elements(desc.B, st.kernel_B)
    X = desc.all_coords()
    a, b, c = desc.split(X)
    seen = set()
    reps = []
    for idx in range(len(X)):
        if np.any(c[idx]):
            continue
        key = min((tuple(np.mod(a[idx] + ka, desc.A.moduli())), tuple(np.mod(b[idx] + kb, desc.B.moduli())))
                  for ka in KA for kb in KB)
        if key not in seen:
            seen.add(key)
            reps.append(idx)
    return np.array(reps, dtype=np.int64)


# --------------------------------------------------------------------------
# maps between GHGs
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class GhgMap:
    """A map src -> dst given by a vectorised function on coordinate arrays."""

    src: GhgDescriptor
    dst: GhgDescriptor
    func: Callable[[np.ndarray], np.ndarray] = field(compare=False)
    name: str = ""

    def apply_coords(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        single = X.ndim == 1
        out = self.func(np.atleast_2d(X))
        out = np.mod(out, self.dst.moduli()) if out.shape[-1] else out
        return out[0] if single else out

    def __call__(self, h: HeisElem) -> HeisElem:
        if h.desc != self.src:
            raise ValueError("element not in the source group")
        return self.dst.from_coords(self.apply_coords(h.coords()))

    def compose(self, inner: "GhgMap") -> "GhgMap":
        """self o inner."""
        if inner.dst != self.src:
            raise ValueError("cannot compose")
        return GhgMap(inner.src, self.dst, lambda X: self.apply_coords(inner.apply_coords(X)),
                      f"{self.name}o{inner.name}")

    def table(self) -> np.ndarray:
        """Images of all source elements as indices into dst.all_coords()."""
        return self.dst.index(self.apply_coords(self.src.all_coords()))

    def is_homomorphism(self, rng: np.random.Generator | None = None, samples: int | None = None) -> bool:
        if samples is None:
            X = self.src.all_coords()
            n = len(X)
            i, j = np.divmod(np.arange(n * n), n)
            P, Q = X[i], X[j]
        else:
            rng = rng or np.random.default_rng(0)
            P = self.src.random_coords(rng, samples)
            Q = self.src.random_coords(rng, samples)
        lhs = self.apply_coords(self.src.mul_coords(P, Q))
        rhs = self.dst.mul_coords(self.apply_coords(P), self.apply_coords(Q))
        return bool(np.array_equal(lhs, rhs))

    def is_bijective(self) -> bool:
        if self.src.order != self.dst.order:
            return False
        return len(np.unique(self.table())) == self.dst.order

    def is_automorphism(self, samples: int | None = None) -> bool:
        return self.is_homomorphism(samples=samples) and self.is_bijective()


def _hom_matrix(t: GroupHom) -> np.ndarray:
    return np.array(t.matrix, dtype=np.int64).reshape(t.target.rank, t.source.rank)


def diagonal_hom(tA: GroupHom, tB: GroupHom, tC: GroupHom,
                 src: GhgDescriptor, dst: GhgDescriptor) -> GhgMap:
    """h(a, b, c) -> h(tA a, tB b, tC c), after checking tC(lambda) = lambda'(tA, tB)."""
    if (tA.source, tB.source, tC.source) != (src.A, src.B, src.C):
        raise ValueError("homomorphism sources do not match the source descriptor")
    if (tA.target, tB.target, tC.target) != (dst.A, dst.B, dst.C):
        raise ValueError("homomorphism targets do not match the target descriptor")
    MA, MB, MC = _hom_matrix(tA), _hom_matrix(tB), _hom_matrix(tC)
    V = src.value_array()
    for i in range(src.A.rank):
        for j in range(src.B.rank):
            lhs = np.mod(MC @ V[i, j], dst.C.moduli()) if dst.C.rank else np.zeros(0)
            rhs = dst.pair_coords(MA[:, i], MB[:, j])
            if not np.array_equal(lhs, rhs):
                raise ValueError(f"compatibility fails on generator pair ({i}, {j}): "
                                 f"tC(lambda) = {lhs.tolist()} but lambda'(tA, tB) = {rhs.tolist()}")

    def f(X):
        a, b, c = src.split(X)
        return dst.join(a @ MA.T, b @ MB.T, c @ MC.T)
    return GhgMap(src, dst, f, "diagonal")


def canonical_autos(desc: GhgDescriptor, verify: bool = True) -> dict[str, GhgMap]:
    """id, phi_minus_a (a,b,c)->(-a,b,-c), phi_minus_b (a,b,c)->(a,-b,-c),
    phi_neg (a,b,c)->(-a,-b,c), and the swap phi when A = B with symmetric lambda."""
    def neg_a(X):
        a, b, c = desc.split(X)
        return desc.join(-a, b, -c)

    def neg_b(X):
        a, b, c = desc.split(X)
        return desc.join(a, -b, -c)

    def neg_ab(X):
        a, b, c = desc.split(X)
        return desc.join(-a, -b, c)

    maps = {
        "id": GhgMap(desc, desc, lambda X: X, "id"),
        "phi_minus_a": GhgMap(desc, desc, neg_a, "phi_minus_a"),
        "phi_minus_b": GhgMap(desc, desc, neg_b, "phi_minus_b"),
        "phi_neg": GhgMap(desc, desc, neg_ab, "phi_neg"),
    }
    if is_symmetric(desc):
        maps["phi"] = swap_automorphism(desc)
    if verify:
        samples = None if desc.order <= 400 else 2000
        for name, m in maps.items():
            if not m.is_homomorphism(samples=samples) or not m.is_bijective():
                raise RuntimeError(f"canonical map {name} failed the automorphism check")
    return maps


def is_symmetric(desc: GhgDescriptor) -> bool:
    V = desc.value_array()
    return desc.A == desc.B and np.array_equal(V, V.transpose(1, 0, 2))


def transpose_descriptor(desc: GhgDescriptor) -> GhgDescriptor:
    """H(B, A, C, lambda^op) with lambda^op(b, a) = lambda(a, b)."""
    ring = tuple((mb, ma) for ma, mb in desc.ring)
    return GhgDescriptor(desc.B, desc.A, desc.C, desc.value_array().transpose(1, 0, 2), ring)


def swap_iso(desc: GhgDescriptor) -> GhgMap:
    """h(a, b, c) -> h(-b, -a, lambda(a, b) - c), an isomorphism onto H(B, A, C, lambda^op)."""
    dst = transpose_descriptor(desc)

    def f(X):
        a, b, c = desc.split(X)
        return dst.join(-b, -a, desc.pair_coords(a, b) - c)
    return GhgMap(desc, dst, f, "swap")


def swap_automorphism(desc: GhgDescriptor) -> GhgMap:
    if not is_symmetric(desc):
        raise ValueError("the swap automorphism needs A = B and symmetric lambda")
    m = swap_iso(desc)
    return GhgMap(desc, desc, m.func, "phi")


# --------------------------------------------------------------------------
# direct sums
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DirectSum:
    """The sum descriptor together with the coordinate bookkeeping for theta."""

    desc: GhgDescriptor
    summands: tuple
    qa: Quotient
    qb: Quotient

    def _blocks(self, widths):
        out, start = [], 0
        for w in widths:
            out.append((start, start + w))
            start += w
        return out

    def split_a(self, a) -> list[np.ndarray]:
        """Canonical A-coordinates -> list of summand A-coordinates."""
        L = np.array(self.qa.lift, dtype=np.int64).reshape(-1, self.desc.A.rank)
        amb = np.asarray(a, dtype=np.int64) @ L.T
        return [np.mod(amb[..., s:e], d.A.moduli())
                for (s, e), d in zip(self._blocks([d.A.rank for d in self.summands]), self.summands)]

    def split_b(self, b) -> list[np.ndarray]:
        L = np.array(self.qb.lift, dtype=np.int64).reshape(-1, self.desc.B.rank)
        amb = np.asarray(b, dtype=np.int64) @ L.T
        return [np.mod(amb[..., s:e], d.B.moduli())
                for (s, e), d in zip(self._blocks([d.B.rank for d in self.summands]), self.summands)]

    def theta_coords(self, parts: Sequence[np.ndarray]) -> np.ndarray:
        """theta(h_1, ..., h_m) = prod of injected h_i (the injections commute)."""
        PA = np.array(self.qa.to_group, dtype=np.int64).reshape(self.desc.A.rank, -1)
        PB = np.array(self.qb.to_group, dtype=np.int64).reshape(self.desc.B.rank, -1)
        splits = [d.split(p) for d, p in zip(self.summands, parts)]
        a = np.concatenate([s[0] for s in splits], axis=-1) @ PA.T
        b = np.concatenate([s[1] for s in splits], axis=-1) @ PB.T
        c = sum(s[2] for s in splits)
        return self.desc.join(a, b, c)

    def inject(self, i: int, h: HeisElem) -> HeisElem:
        parts = [d.identity().coords() for d in self.summands]
        parts[i] = h.coords()
        return self.desc.from_coords(self.theta_coords(parts))

    def theta(self, hs: Sequence[HeisElem]) -> HeisElem:
        return self.desc.from_coords(self.theta_coords([h.coords() for h in hs]))


def direct_sum(descs: Sequence[GhgDescriptor]) -> DirectSum:
    descs = tuple(descs)
    if not descs:
        raise ValueError("need at least one summand")
    C = descs[0].C
    for d in descs:
        if d.C != C:
            raise ValueError("summands must share the same C")
        if not check_ndc(d):
            raise ValueError("every summand must satisfy ND-C")
    amods = [m for d in descs for m in d.A.invariant_factors]
    bmods = [m for d in descs for m in d.B.invariant_factors]
    qa = quotient_group([[m if i == j else 0 for j in range(len(amods))] for i, m in enumerate(amods)])
    qb = quotient_group([[m if i == j else 0 for j in range(len(bmods))] for i, m in enumerate(bmods)])
    # pairing on canonical generators: sum of blockwise pairings of the lifts
    LA = np.array(qa.lift, dtype=np.int64).reshape(len(amods), qa.group.rank)
    LB = np.array(qb.lift, dtype=np.int64).reshape(len(bmods), qb.group.rank)
    V = np.zeros((qa.group.rank, qb.group.rank, C.rank), dtype=np.int64)
    sa = sb = 0
    for d in descs:
        ka, kb = d.A.rank, d.B.rank
        for i in range(qa.group.rank):
            for j in range(qb.group.rank):
                V[i, j] += d.pair_coords(LA[sa:sa + ka, i], LB[sb:sb + kb, j])
        sa += ka
        sb += kb
    desc = GhgDescriptor(qa.group, qb.group, C, np.mod(V, C.moduli()))
    return DirectSum(desc, descs, qa, qb)


# --------------------------------------------------------------------------
# standard examples
# --------------------------------------------------------------------------

def base_case(d: int) -> GhgDescriptor:
    """H(Z/d, Z/d, Z/d, multiplication)."""
    G = FinAbGroup.cyclic(d)
    return GhgDescriptor(G, G, G, [[[1]]])


def even_base_case(d: int) -> GhgDescriptor:
    """H(Z/d, 2Z/2d, Z/2d, x), with B written as Z/d via b = 2b' so lambda(a, b') = 2ab'."""
    G = FinAbGroup.cyclic(d)
    return GhgDescriptor(G, G, FinAbGroup.cyclic(2 * d), [[[2]]])
