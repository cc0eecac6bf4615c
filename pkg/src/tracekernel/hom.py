"""Hom spaces, endomorphism rings, centers, and equivariant maps.

``Hom_R(M, N)`` is stored as the subspace of row-major vectorised ``n_N x n_M``
matrices commuting with every action matrix; its RREF basis fixes coordinates,
and the coordinates of a matrix are its entries at the pivot positions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .artin import ModulePresentation
from .gf import GF
from .linalg import Subspace, intertwiners, kernel, left_kernel, rank

__all__ = [
    "HomSpace",
    "hom",
    "compose",
    "FiniteRing",
    "EndRing",
    "end_ring",
    "ring_center",
    "Rep",
    "module_rep",
    "right_rep",
    "left_rep",
    "restrict_rep",
    "EquivariantHom",
    "hom_over_end",
    "center_via_hom_over_end",
    "hom_from_free",
    "clear_caches",
]


@dataclass(frozen=True, eq=False)
class HomSpace:
    source: ModulePresentation
    target: ModulePresentation
    space: Subspace

    @property
    def field(self) -> GF:
        return self.space.field

    @property
    def dim(self) -> int:
        return self.space.dim

    @cached_property
    def basis(self) -> np.ndarray:
        """Basis maps, shape (dim, n_target, n_source)."""
        return self.space.basis.reshape(self.dim, self.target.dim, self.source.dim)

    def coords(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        return self.space.coords(X.reshape(-1, self.target.dim * self.source.dim))

    def element(self, c) -> np.ndarray:
        c = np.asarray(c, dtype=np.int64)
        return self.field.einsum("...a,anm->...nm", c, self.basis)

    def contains(self, X) -> bool:
        X = np.asarray(X, dtype=np.int64)
        return self.space.contains(X.reshape(-1, self.target.dim * self.source.dim))

    def __repr__(self) -> str:
        return f"Hom({self.source.name or '?'}, {self.target.name or '?'}) dim={self.dim}"


@lru_cache(maxsize=8192)
def hom(M: ModulePresentation, N: ModulePresentation) -> HomSpace:
    """Hom_R(M, N)."""
    if M.algebra is not N.algebra:
        raise ValueError("Hom between modules over different algebras")
    F = M.field
    if M.dim == 0 or N.dim == 0:
        return HomSpace(M, N, Subspace.zero(F, M.dim * N.dim))
    space = intertwiners(F, M.act, N.act, M.dim, N.dim)
    return HomSpace(M, N, space)


@lru_cache(maxsize=16384)
def compose(outer: HomSpace, inner: HomSpace, result: HomSpace | None = None) -> np.ndarray:
    """Coordinates of ``outer_a o inner_b`` in ``result``; shape (r_outer, r_inner, r_result)."""
    if outer.source is not inner.target:
        raise ValueError("composition of incompatible Hom spaces")
    if result is None:
        result = hom(inner.source, outer.target)
    F = outer.field
    r1, r2 = outer.dim, inner.dim
    if r1 == 0 or r2 == 0 or result.dim == 0:
        return np.zeros((r1, r2, result.dim), dtype=np.int64)
    prod = F.einsum("anm,bml->abnl", outer.basis, inner.basis)
    flat = prod.reshape(r1 * r2, -1)
    out = flat[:, list(result.space.pivots)].reshape(r1, r2, result.dim)
    out.setflags(write=False)
    return out


def hom_from_free(N: ModulePresentation, H: HomSpace) -> np.ndarray:
    """The isomorphism Hom(R, N) -> N, f -> f(1), as a (dim H, n_N) matrix of rows."""
    A = N.algebra
    return H.field.einsum("anm,m->an", H.basis, A.unit)


# -- rings -------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """A finite-dimensional F-algebra by structure constants ``mult[i, j] = e_i e_j``."""

    field: GF
    mult: np.ndarray = field(repr=False)
    unit: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    def mul(self, x, y) -> np.ndarray:
        F = self.field
        left = F.einsum("i,ijk->jk", np.asarray(x, dtype=np.int64), self.mult)
        return F.einsum("j,jk->k", np.asarray(y, dtype=np.int64), left)

    def is_commutative(self) -> bool:
        return np.array_equal(self.mult, np.transpose(self.mult, (1, 0, 2)))

    def is_associative(self) -> bool:
        F = self.field
        lhs = F.einsum("ijm,mln->ijln", self.mult, self.mult)
        rhs = F.einsum("jlm,imn->ijln", self.mult, self.mult)
        return np.array_equal(lhs, rhs)

    def to_dict(self) -> dict:
        return {"dim": self.dim, "mult": self.mult.tolist(), "unit": self.unit.tolist()}


def ring_center(ring: FiniteRing) -> Subspace:
    """{z : z e_c = e_c z for every basis element e_c}."""
    F = ring.field
    s = ring.dim
    diff = F.sub(ring.mult, np.transpose(ring.mult, (1, 0, 2)))  # [i, c, l]
    return left_kernel(F, diff.reshape(s, s * s))


def subring(ring: FiniteRing, U: Subspace) -> FiniteRing:
    """Structure constants of a subring given by a subspace closed under products."""
    F = ring.field
    B = U.basis
    t = U.dim
    prods = np.zeros((t, t, ring.dim), dtype=np.int64)
    for a in range(t):
        left = F.einsum("i,ijk->jk", B[a], ring.mult)
        prods[a] = F.matmul(B, left)
    mult = U.coords(prods.reshape(t * t, ring.dim)).reshape(t, t, t)
    unit = U.coords(ring.unit)[0]
    return FiniteRing(F, mult, unit)


@dataclass(frozen=True, eq=False)
class EndRing:
    hom: HomSpace
    ring: FiniteRing

    @property
    def module(self) -> ModulePresentation:
        return self.hom.source

    @property
    def dim(self) -> int:
        return self.hom.dim

    @property
    def field(self) -> GF:
        return self.hom.field

    @property
    def basis(self) -> np.ndarray:
        return self.hom.basis

    @property
    def unit(self) -> np.ndarray:
        return self.ring.unit

    @cached_property
    def center(self) -> Subspace:
        return ring_center(self.ring)

    @cached_property
    def center_ring(self) -> FiniteRing:
        return subring(self.ring, self.center)

    @cached_property
    def homothety(self) -> np.ndarray:
        """Coordinates of rho(b_i) for each algebra basis element; shape (d, dim)."""
        return self.hom.coords(self.module.act)


@lru_cache(maxsize=4096)
def end_ring(M: ModulePresentation) -> EndRing:
    H = hom(M, M)
    F = M.field
    mult = compose(H, H, H)
    unit = H.coords(np.eye(M.dim, dtype=np.int64))[0] if M.dim else np.zeros(0, dtype=np.int64)
    return EndRing(H, FiniteRing(F, mult, unit))


# -- representations: a vector space with operators for a spanning set of a ring ---


@dataclass(frozen=True, eq=False)
class Rep:
    """Coordinates of dimension ``dim`` with operator matrices acting on columns."""

    field: GF
    dim: int
    ops: tuple = ()

    def op_array(self) -> np.ndarray:
        return np.array(self.ops, dtype=np.int64).reshape(len(self.ops), self.dim, self.dim)


def module_rep(M: ModulePresentation) -> Rep:
    return Rep(M.field, M.dim, tuple(M.nontrivial_ops))


def end_rep(E: EndRing) -> Rep:
    """M as a left End(M)-module."""
    return Rep(E.field, E.module.dim, tuple(E.basis))


def right_rep(H: HomSpace, E: EndRing) -> Rep:
    """Hom(X, Y) with End(X) acting by precomposition f -> f o e."""
    if E.module is not H.source:
        raise ValueError("End ring does not act on the source of this Hom space")
    T = compose(H, E.hom, H)  # [a, c, a']
    return Rep(H.field, H.dim, tuple(np.ascontiguousarray(T[:, c, :].T) for c in range(E.dim)))


def left_rep(H: HomSpace, E: EndRing) -> Rep:
    """Hom(X, Y) with End(Y) acting by postcomposition f -> e o f."""
    if E.module is not H.target:
        raise ValueError("End ring does not act on the target of this Hom space")
    T = compose(E.hom, H, H)  # [c, a, a']
    return Rep(H.field, H.dim, tuple(np.ascontiguousarray(T[c].T) for c in range(E.dim)))


def restrict_rep(rep: Rep, U: Subspace) -> Rep:
    """The operators restricted to an invariant subspace, in U's RREF coordinates."""
    F = rep.field
    if U.ambient != rep.dim:
        raise ValueError("subspace has the wrong ambient dimension")
    piv = list(U.pivots)
    ops = []
    for P in rep.ops:
        img = F.matmul(np.asarray(P, dtype=np.int64), U.basis.T)  # columns = P u_i
        if not U.contains(img.T):
            raise ValueError("subspace is not invariant under the action")
        ops.append(np.ascontiguousarray(img[piv, :]))
    return Rep(F, U.dim, tuple(ops))


@dataclass(frozen=True, eq=False)
class EquivariantHom:
    """Hom_E(A, B): matrices X (dim B x dim A) with X P_A = P_B X."""

    src: Rep
    tgt: Rep
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def field(self) -> GF:
        return self.space.field

    @cached_property
    def basis(self) -> np.ndarray:
        return self.space.basis.reshape(self.dim, self.tgt.dim, self.src.dim)

    def coords(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        return self.space.coords(X.reshape(-1, self.tgt.dim * self.src.dim))

    def contains(self, X) -> bool:
        X = np.asarray(X, dtype=np.int64)
        return self.space.contains(X.reshape(-1, self.tgt.dim * self.src.dim))

    @cached_property
    def ring(self) -> FiniteRing:
        if self.src is not self.tgt:
            raise ValueError("ring structure needs source == target")
        F = self.field
        t = self.dim
        if t == 0:
            return FiniteRing(F, np.zeros((0, 0, 0), dtype=np.int64), np.zeros(0, dtype=np.int64))
        prods = F.einsum("anm,bml->abnl", self.basis, self.basis)
        mult = self.coords(prods.reshape(t * t, -1)).reshape(t, t, t)
        unit = self.coords(np.eye(self.src.dim, dtype=np.int64))[0]
        return FiniteRing(F, mult, unit)


def hom_over_end(src: Rep, tgt: Rep) -> EquivariantHom:
    """Maps commuting with paired operators (``src.ops[i]`` and ``tgt.ops[i]``)."""
    if len(src.ops) != len(tgt.ops):
        raise ValueError("source and target carry actions of different rings")
    F = src.field
    if src.dim == 0 or tgt.dim == 0:
        return EquivariantHom(src, tgt, Subspace.zero(F, src.dim * tgt.dim))
    space = intertwiners(F, src.ops, tgt.ops, src.dim, tgt.dim)
    return EquivariantHom(src, tgt, space)


def center_via_hom_over_end(E: EndRing) -> Subspace:
    """End_{End(M)}(M) as a subspace of End(M)-coordinates."""
    rep = end_rep(E)
    eq = hom_over_end(rep, rep)
    if eq.dim == 0:
        return Subspace.zero(E.field, E.dim)
    return Subspace.span(E.field, E.dim, E.hom.coords(eq.basis))


def clear_caches() -> None:
    hom.cache_clear()
    compose.cache_clear()
    end_ring.cache_clear()
