"""Automorphisms fixing the centre, for GHGs satisfying ND-C.

Elements of A+B ("bold a") are concatenated coordinate vectors (a, b).  For
odd r the section D(a, b) = h(a, b, lambda(a, b)/2) identifies every element
uniquely as D(bold a) m(c); an automorphism fixing the centre is then
determined by a homomorphism eta: A+B -> C and a symplectic map of A+B:

    phi(D(bold a) m(c)) = D(phibar(bold a)) m(eta(bold a) + c).
"""
from __future__ import annotations

import itertools
from math import prod
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .abelian import FinAbGroup, GroupHom, hom_row_vectors, smith_diagonal
from .ghg import GhgDescriptor, GhgMap, HeisElem, canonical_autos, check_ndc
from .schrodinger import RepConfig, sigma_matrices
from .settings import tolerance


def _require_odd(desc: GhgDescriptor):
    if not desc.C.is_cyclic:
        raise ValueError("C must be cyclic")
    if desc.r % 2 == 0:
        raise ValueError("the displacement section needs odd r")


def half(r: int) -> int:
    """The inverse of 2 modulo odd r."""
    return (r + 1) // 2


def sum_group_moduli(desc: GhgDescriptor) -> np.ndarray:
    return np.array(desc.A.invariant_factors + desc.B.invariant_factors, dtype=np.int64)


def sum_group_coords(desc: GhgDescriptor) -> np.ndarray:
    """All elements of A+B, lexicographic."""
    m = tuple(int(x) for x in sum_group_moduli(desc))
    return np.indices(m).reshape(len(m), -1).T.astype(np.int64)


def sum_group_index(desc: GhgDescriptor, G) -> np.ndarray:
    m = sum_group_moduli(desc)
    G = np.mod(np.asarray(G, dtype=np.int64), m)
    return np.ravel_multi_index(tuple(np.moveaxis(G, -1, 0)), tuple(int(x) for x in m))


def _lam(desc: GhgDescriptor, a, b) -> np.ndarray:
    return desc.pair_coords(a, b)[..., 0]


def delta(desc: GhgDescriptor, G1, G2) -> np.ndarray:
    """delta(bold a, bold a') = lambda(a, b') - lambda(a', b), as integers mod r."""
    ka = desc.A.rank
    G1 = np.asarray(G1, dtype=np.int64)
    G2 = np.asarray(G2, dtype=np.int64)
    a1, b1 = G1[..., :ka], G1[..., ka:]
    a2, b2 = G2[..., :ka], G2[..., ka:]
    return np.mod(_lam(desc, a1, b2) - _lam(desc, a2, b1), desc.r)


def dmap_coords(desc: GhgDescriptor, G) -> np.ndarray:
    _require_odd(desc)
    G = np.asarray(G, dtype=np.int64)
    ka = desc.A.rank
    a, b = G[..., :ka], G[..., ka:]
    c = np.mod(half(desc.r) * _lam(desc, a, b), desc.r)[..., None]
    return desc.join(a, b, c)


def dmap(desc: GhgDescriptor, G) -> HeisElem:
    """D(bold a) = h(a, b, lambda(a, b)/2)."""
    return desc.from_coords(dmap_coords(desc, np.asarray(G)))


def displacement_matrix(cfg: RepConfig, G) -> np.ndarray:
    """D(bold a) = sigma_p(D(bold a))."""
    if not cfg.injective:
        raise ValueError("displacement operators need an injective p")
    return sigma_matrices(cfg, dmap_coords(cfg.desc, G))[0]


# --------------------------------------------------------------------------
# symplectic group
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SpElement:
    """Endomorphism of A+B as an integer matrix on concatenated coordinates
    (column j is the image of generator j)."""

    desc: GhgDescriptor
    matrix: tuple

    def __post_init__(self):
        m = sum_group_moduli(self.desc)
        k = len(m)
        M = np.mod(np.array(self.matrix, dtype=np.int64).reshape(k, k), m[:, None])
        object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in row) for row in M))
        for j in range(k):
            if np.any(np.mod(m[j] * M[:, j], m)):
                raise ValueError(f"column {j} does not respect the order of generator {j}")

    def array(self) -> np.ndarray:
        k = len(self.matrix)
        return np.array(self.matrix, dtype=np.int64).reshape(k, k)

    def apply(self, G) -> np.ndarray:
        G = np.asarray(G, dtype=np.int64)
        return np.mod(G @ self.array().T, sum_group_moduli(self.desc))

    def compose(self, inner: "SpElement") -> "SpElement":
        """self o inner."""
        return SpElement(self.desc, self.array() @ inner.array())

    def inverse(self) -> "SpElement":
        E = sum_group_coords(self.desc)
        img = sum_group_index(self.desc, self.apply(E))
        inv = np.empty_like(img)
        inv[img] = np.arange(len(img))
        k = len(self.matrix)
        gens = np.eye(k, dtype=np.int64)
        cols = E[inv[sum_group_index(self.desc, gens)]]
        return SpElement(self.desc, cols.T)

    def is_identity(self) -> bool:
        return np.array_equal(self.array(), np.eye(len(self.matrix), dtype=np.int64))

    @classmethod
    def identity(cls, desc: GhgDescriptor) -> "SpElement":
        return cls(desc, np.eye(len(sum_group_moduli(desc)), dtype=np.int64))

    @classmethod
    def block(cls, desc: GhgDescriptor, alpha, beta) -> "SpElement":
        ka, kb = desc.A.rank, desc.B.rank
        M = np.zeros((ka + kb, ka + kb), dtype=np.int64)
        M[:ka, :ka] = np.asarray(alpha, dtype=np.int64).reshape(ka, ka)
        M[ka:, ka:] = np.asarray(beta, dtype=np.int64).reshape(kb, kb)
        return cls(desc, M)

    def to_json(self):
        return [list(r) for r in self.matrix]


def ring_matrices(desc: GhgDescriptor) -> list[np.ndarray]:
    """Ring generators acting diagonally on A+B."""
    out = []
    for ma, mb in desc.ring:
        ka, kb = desc.A.rank, desc.B.rank
        M = np.zeros((ka + kb, ka + kb), dtype=np.int64)
        M[:ka, :ka] = np.array(ma, dtype=np.int64).reshape(ka, ka)
        M[ka:, ka:] = np.array(mb, dtype=np.int64).reshape(kb, kb)
        out.append(M)
    return out


def is_ring_linear(desc: GhgDescriptor, M) -> bool:
    m = sum_group_moduli(desc)
    M = np.asarray(M, dtype=np.int64)
    for R in ring_matrices(desc):
        if not np.array_equal(np.mod(M @ R, m[:, None]), np.mod(R @ M, m[:, None])):
            return False
    return True


def is_symplectic(desc: GhgDescriptor, M) -> bool:
    """True iff M is an invertible, ring-linear endomorphism of A+B preserving delta."""
    try:
        el = M if isinstance(M, SpElement) else SpElement(desc, M)
    except ValueError:
        return False
    A = el.array()
    k = A.shape[0]
    gens = np.eye(k, dtype=np.int64)
    imgs = el.apply(gens)
    if not np.array_equal(delta(desc, imgs[:, None, :], imgs[None, :, :]),
                          delta(desc, gens[:, None, :], gens[None, :, :])):
        return False
    if not is_ring_linear(desc, A):
        return False
    return _generates_everything(desc, imgs)


def _generates_everything(desc: GhgDescriptor, imgs: np.ndarray) -> bool:
    # the images generate A+B iff the quotient by them is trivial
    m = sum_group_moduli(desc)
    k = len(m)
    M = [[int(m[i]) if i == j else 0 for j in range(k)] + [int(g[i]) for g in imgs]
         for i in range(k)]
    return prod(smith_diagonal(M)) == 1


def enumerate_sp(desc: GhgDescriptor) -> list[SpElement]:
    """All of Sp_R(A+B; delta) by backtracking over generator images.

    Images are chosen generator by generator; a candidate for generator j
    must have order dividing that of generator j and must pair correctly
    with the images already chosen.  Invertibility and ring-linearity are
    checked on complete assignments.
    """
    if not check_ndc(desc):
        raise ValueError("Sp enumeration needs ND-C")
    m = sum_group_moduli(desc)
    k = len(m)
    E = sum_group_coords(desc)
    gens = np.eye(k, dtype=np.int64)
    target = delta(desc, gens[:, None, :], gens[None, :, :])
    order_ok = [np.all(np.mod(m[j] * E, m) == 0, axis=1) for j in range(k)]
    out: list[SpElement] = []

    def rec(j: int, chosen: list[np.ndarray]):
        if j == k:
            M = np.array(chosen, dtype=np.int64).T
            if is_ring_linear(desc, M) and _generates_everything(desc, np.array(chosen)):
                out.append(SpElement(desc, M))
            return
        mask = order_ok[j].copy()
        for i, img in enumerate(chosen):
            mask &= delta(desc, img, E) == target[i, j]
        for x in E[mask]:
            rec(j + 1, chosen + [x])

    rec(0, [])
    return out


def enumerate_sl2(n: int) -> list[np.ndarray]:
    """All 2x2 integer matrices mod n with determinant 1."""
    out = []
    for a, b, c, d in itertools.product(range(n), repeat=4):
        if (a * d - b * c) % n == 1:
            out.append(np.array([[a, b], [c, d]], dtype=np.int64))
    return out


# --------------------------------------------------------------------------
# automorphisms via (eta, phibar)
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Automorphism:
    """phi with phi(D(bold a) m(c)) = D(sp(bold a)) m(eta(bold a) + c)."""

    desc: GhgDescriptor
    eta: tuple
    sp: SpElement

    def __post_init__(self):
        _require_odd(self.desc)
        m = sum_group_moduli(self.desc)
        r = self.desc.r
        eta = tuple(int(x) % r for x in self.eta)
        if len(eta) != len(m):
            raise ValueError("eta needs one value per generator of A+B")
        for j, mj in enumerate(m):
            if (int(mj) * eta[j]) % r:
                raise ValueError(f"eta is not a homomorphism on generator {j}")
        object.__setattr__(self, "eta", eta)

    def eta_apply(self, G) -> np.ndarray:
        return np.mod(np.asarray(G, dtype=np.int64) @ np.array(self.eta, dtype=np.int64), self.desc.r)

    def apply_coords(self, X) -> np.ndarray:
        desc = self.desc
        X = np.asarray(X, dtype=np.int64)
        a, b, c = desc.split(X)
        G = np.concatenate([a, b], axis=-1)
        c0 = c[..., 0] - half(desc.r) * _lam(desc, a, b)
        img = dmap_coords(desc, self.sp.apply(G))
        img[..., -1] = np.mod(img[..., -1] + self.eta_apply(G) + c0, desc.r)
        return img

    def __call__(self, h: HeisElem) -> HeisElem:
        return self.desc.from_coords(self.apply_coords(h.coords()))

    def as_map(self) -> GhgMap:
        return GhgMap(self.desc, self.desc, self.apply_coords, "auto")

    def compose(self, inner: "Automorphism") -> "Automorphism":
        """self o inner, via eta_{phi1 o phi2} = eta_2 + eta_1 o phibar_2."""
        gens = np.eye(len(self.eta), dtype=np.int64)
        eta = np.mod(inner.eta_apply(gens) + self.eta_apply(inner.sp.apply(gens)), self.desc.r)
        return Automorphism(self.desc, tuple(int(x) for x in eta), self.sp.compose(inner.sp))

    def to_json(self) -> dict:
        return {"eta_matrix": [list(self.eta)], "sp_matrix": self.sp.to_json()}

    @classmethod
    def from_json(cls, desc: GhgDescriptor, data: dict) -> "Automorphism":
        eta = np.array(data["eta_matrix"], dtype=np.int64).reshape(-1)
        return cls(desc, tuple(int(x) for x in eta), SpElement(desc, data["sp_matrix"]))


def auto_from_pair(desc: GhgDescriptor, eta, alpha, verify: bool = True) -> Automorphism:
    """The automorphism nu with Theta-tilde(nu) = (eta, alpha)."""
    if isinstance(eta, GroupHom):
        eta = eta.matrix[0]
    sp = alpha if isinstance(alpha, SpElement) else SpElement(desc, alpha)
    if not is_symplectic(desc, sp):
        raise ValueError("alpha is not symplectic")
    nu = Automorphism(desc, tuple(eta), sp)
    if verify:
        samples = None if desc.order <= 200 else 500
        m = nu.as_map()
        if not m.is_homomorphism(samples=samples):
            raise RuntimeError("reconstructed map is not a homomorphism")
        back = theta_decompose(desc, m, verify=False)
        if back.eta != nu.eta or back.sp != nu.sp:
            raise RuntimeError("decomposition round trip failed")
    return nu


def theta_decompose(desc: GhgDescriptor, phi, verify: bool = True) -> Automorphism:
    """(eta_phi, phibar) of an automorphism given as an element map."""
    _require_odd(desc)
    fmap = phi.as_map() if isinstance(phi, Automorphism) else phi
    k = desc.A.rank + desc.B.rank
    one = desc.central(1).coords()
    if not np.array_equal(fmap.apply_coords(one), one):
        raise ValueError("the map does not fix the centre")
    gens = np.eye(k, dtype=np.int64)
    img = fmap.apply_coords(dmap_coords(desc, gens))
    a, b, c = desc.split(img)
    G = np.concatenate([a, b], axis=-1)
    eta = np.mod(c[:, 0] - half(desc.r) * _lam(desc, a, b), desc.r)
    sp = SpElement(desc, G.T)
    if not is_symplectic(desc, sp):
        raise ValueError("induced map on A+B is not symplectic")
    nu = Automorphism(desc, tuple(int(x) for x in eta), sp)
    if verify:
        X = desc.all_coords()
        if not np.array_equal(nu.apply_coords(X), fmap.apply_coords(X)):
            raise ValueError("the map is not an automorphism fixing the centre")
    return nu


def theta_D(desc: GhgDescriptor, phi) -> tuple[tuple, SpElement]:
    """Theta_D(phi) = (eta_phi, phibar^-1) in Hom(A+B, C) x| Sp."""
    nu = phi if isinstance(phi, Automorphism) else theta_decompose(desc, phi)
    return nu.eta, nu.sp.inverse()


def semidirect_mul(desc: GhgDescriptor, x: tuple, y: tuple) -> tuple[tuple, SpElement]:
    """(eta1, N1)(eta2, N2) = (eta1 + eta2 o N1^-1, N1 N2)."""
    (e1, N1), (e2, N2) = x, y
    k = len(e1)
    gens = np.eye(k, dtype=np.int64)
    pre = N1.inverse().apply(gens)
    e = np.mod(np.array(e1) + pre @ np.array(e2), desc.r)
    return tuple(int(v) for v in e), N1.compose(N2)


def enumerate_aut0(desc: GhgDescriptor, sp_list: Sequence[SpElement] | None = None) -> list[Automorphism]:
    sp_list = enumerate_sp(desc) if sp_list is None else sp_list
    etas = hom_row_vectors(sum_group_moduli(desc).tolist(), desc.r)
    return [Automorphism(desc, tuple(int(x) for x in e), sp) for sp in sp_list for e in etas]


def inner_automorphism(desc: GhgDescriptor, h) -> GhgMap:
    """phi_h(g) = h g h^-1."""
    H = h.coords() if isinstance(h, HeisElem) else np.asarray(h, dtype=np.int64)
    Hinv = desc.inv_coords(H)
    return GhgMap(desc, desc, lambda X: desc.mul_coords(desc.mul_coords(H, X), Hinv), "inner")


def inner_eta(desc: GhgDescriptor, G) -> tuple:
    """delta(hbar, .) on the generators of A+B."""
    k = desc.A.rank + desc.B.rank
    return tuple(int(x) for x in delta(desc, np.asarray(G), np.eye(k, dtype=np.int64)))


def _perm_index(G: FinAbGroup, M: np.ndarray) -> np.ndarray:
    X = G.all_coords()
    return G.index(np.mod(X @ M.T, G.moduli()))


def delta_diagonal(desc: GhgDescriptor, alpha) -> Automorphism:
    """Delta(alpha) = alpha x beta x id with lambda(alpha a, beta b) = lambda(a, b)."""
    if not check_ndc(desc):
        raise ValueError("Delta needs ND-C")
    ta = alpha if isinstance(alpha, GroupHom) else GroupHom(desc.A, desc.A, alpha)
    if not ta.is_bijective():
        raise ValueError("alpha is not an automorphism of A")
    MA = np.array(ta.matrix, dtype=np.int64).reshape(desc.A.rank, desc.A.rank)
    for ma, _ in desc.ring:
        R = np.array(ma, dtype=np.int64).reshape(desc.A.rank, desc.A.rank)
        if not np.array_equal(np.mod(MA @ R, desc.A.moduli()[:, None]),
                              np.mod(R @ MA, desc.A.moduli()[:, None])):
            raise ValueError("alpha is not ring-linear")
    # alpha^-1 on the generators of A
    XA = desc.A.all_coords()
    img = _perm_index(desc.A, MA)
    inv = np.empty_like(img)
    inv[img] = np.arange(len(img))
    ainv_gens = XA[inv[desc.A.index(np.eye(desc.A.rank, dtype=np.int64))]]
    # beta(f_j) is the b' with lambda(e_i, b') = lambda(alpha^-1 e_i, f_j) for all i
    XB = desc.B.all_coords()
    sig = _lam(desc, np.eye(desc.A.rank, dtype=np.int64)[None, :, :], XB[:, None, :])
    lookup = {tuple(row): n for n, row in enumerate(sig.tolist())}
    cols = []
    for j in range(desc.B.rank):
        fj = np.eye(desc.B.rank, dtype=np.int64)[j]
        want = tuple(_lam(desc, ainv_gens, fj[None, :]).tolist())
        if want not in lookup:
            raise RuntimeError("dual pairing solve failed")
        cols.append(XB[lookup[want]])
    MB = np.array(cols, dtype=np.int64).T
    return Automorphism(desc, (0,) * (desc.A.rank + desc.B.rank), SpElement.block(desc, MA, MB))


# --------------------------------------------------------------------------
# Weil representation (numerical)
# --------------------------------------------------------------------------

def phase_normalize(T: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Rotate so that the first non-negligible entry (row-major) is positive real."""
    flat = T.reshape(-1)
    idx = int(np.argmax(np.abs(flat) > tol * max(1.0, float(np.abs(flat).max()))))
    z = flat[idx]
    return T * (abs(z) / z)


def mod_phase_residual(A: np.ndarray, B: np.ndarray) -> float:
    """max |A - t B| over the best unit scalar t."""
    z = np.vdot(B, A)
    t = z / abs(z) if abs(z) > 0 else 1.0
    return float(np.max(np.abs(A - t * B)))


class WeilSolveError(RuntimeError):
    pass


def _as_map(desc, phi) -> GhgMap:
    if isinstance(phi, Automorphism):
        return phi.as_map()
    return phi


def weil_solve(cfg: RepConfig, phi, rng: np.random.Generator | None = None,
               max_tries: int = 5) -> np.ndarray:
    """Unitary T with T sigma(h) = sigma(phi(h)) T, by averaging over the
    cosets of the centre and taking the unitary polar factor."""
    desc = cfg.desc
    fmap = _as_map(desc, phi)
    rng = np.random.default_rng(0) if rng is None else rng
    s = cfg.s
    E = sum_group_coords(desc)
    reps = desc.join(E[:, :desc.A.rank], E[:, desc.A.rank:], np.zeros((len(E), desc.C.rank), dtype=np.int64))
    S_g = sigma_matrices(cfg, reps)
    S_phi = sigma_matrices(cfg, fmap.apply_coords(reps))
    for _ in range(max_tries):
        X = rng.normal(size=(s, s)) + 1j * rng.normal(size=(s, s))
        T0 = np.einsum("nij,jk,nlk->il", S_phi, X, S_g.conj())
        if np.linalg.norm(T0) < 1e-6:
            continue
        W, sv, Vh = np.linalg.svd(T0)
        if sv[-1] < 1e-8 * sv[0]:
            raise WeilSolveError("intertwiner is rank deficient: representation not irreducible")
        T = phase_normalize(W @ Vh)
        gens = np.eye(desc.moduli().size, dtype=np.int64)
        res = np.max(np.abs(np.einsum("ij,njk->nik", T, sigma_matrices(cfg, gens))
                            - np.einsum("nij,jk->nik", sigma_matrices(cfg, fmap.apply_coords(gens)), T)))
        if res > 1e-8:
            raise WeilSolveError(f"intertwining residual {res:.2e}; does phi fix the centre?")
        return T
    raise WeilSolveError("averaging produced a vanishing intertwiner repeatedly; "
                         "phi probably does not fix the centre")


def permutation_operator(G: FinAbGroup, alpha) -> np.ndarray:
    """Matrix of f -> f o alpha^-1 on functions on G."""
    M = np.array(alpha.matrix if isinstance(alpha, GroupHom) else alpha, dtype=np.int64)
    M = M.reshape(G.rank, G.rank)
    img = _perm_index(G, M)
    P = np.zeros((G.order, G.order))
    P[img, np.arange(G.order)] = 1.0
    return P


@dataclass(frozen=True)
class RealLinearMap:
    """f -> matrix @ f, or matrix @ conj(f) when ``conjugate`` is set."""

    matrix: np.ndarray
    conjugate: bool

    def __call__(self, f) -> np.ndarray:
        v = np.asarray(f, dtype=complex)
        return self.matrix @ (v.conj() if self.conjugate else v)

    def after(self, M: np.ndarray) -> np.ndarray:
        """Matrix of (this o M) acting on the un-conjugated input, i.e. matrix @ conj(M)."""
        return self.matrix @ (M.conj() if self.conjugate else M)


def centre_action(desc: GhgDescriptor, fmap: GhgMap) -> int:
    """k with phi(m(1)) = m(k); fails if phi does not preserve m(C)."""
    img = fmap.apply_coords(desc.central(1).coords())
    a, b, c = desc.split(img)
    if np.any(a) or np.any(b):
        raise ValueError("the map does not preserve the centre")
    return int(c[0])


def conj_extension(cfg: RepConfig, upsilon, rng: np.random.Generator | None = None) -> RealLinearMap:
    """Real-linear intertwiner for automorphisms acting on Z by +1 or -1."""
    desc = cfg.desc
    if desc.r == 2:
        raise ValueError("needs r != 2")
    fmap = _as_map(desc, upsilon)
    k = centre_action(desc, fmap)
    if k == 1 % desc.r:
        return RealLinearMap(weil_solve(cfg, fmap, rng), False)
    if k == desc.r - 1:
        flip = canonical_autos(desc, verify=False)["phi_minus_b"]
        phi0 = flip.compose(fmap)
        T0 = weil_solve(cfg, phi0, rng)
        return RealLinearMap(T0.conj(), True)
    raise ValueError(f"automorphism acts on the centre by {k}, not by +1 or -1")
