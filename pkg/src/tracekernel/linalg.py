"""Dense exact linear algebra over finite fields.

Matrices are ``numpy.int64`` arrays of element codes for a :class:`GF`.
Vectors in a subspace are rows; linear maps act on column vectors unless a
docstring says otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .gf import GF, FieldError

__all__ = [
    "rref",
    "rank",
    "kernel",
    "image",
    "left_kernel",
    "solve",
    "Solution",
    "Subspace",
    "QuotientSpace",
    "quotient",
    "embedding",
    "field_extend",
    "lift_matrix",
    "lift_subspace",
    "inverse",
    "intertwiners",
]


def _as2d(a, cols: int | None = None) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1) if cols is None else a.reshape(-1, cols)
    return a


def rref(F: GF, A, pivot_limit: int | None = None) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row-echelon form; zero rows are dropped.

    ``pivot_limit`` restricts pivot search to the first columns, which is how
    augmented systems are reduced.
    """
    R = np.array(_as2d(A), dtype=np.int64, copy=True)
    m, n = R.shape
    limit = n if pivot_limit is None else pivot_limit
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == m:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        lead = int(R[r, c])
        if lead != 1:
            R[r, c:] = F.mul(R[r, c:], int(F.inv(lead)))
        col = R[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            R[rows, c:] = F.sub(R[rows, c:], F.mul(col[rows, None], R[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return R[:r], tuple(pivots)


def rank(F: GF, A) -> int:
    A = _as2d(A)
    if A.size == 0:
        return 0
    if A.shape[0] > A.shape[1]:
        A = A.T
    return len(rref(F, A)[1])


def _null_from_rref(F: GF, R: np.ndarray, pivots: tuple[int, ...], n: int) -> np.ndarray:
    free = [c for c in range(n) if c not in set(pivots)]
    K = np.zeros((len(free), n), dtype=np.int64)
    for row, f in enumerate(free):
        K[row, f] = 1
        if pivots:
            K[row, list(pivots)] = F.neg(R[:, f])
    return K


def kernel(F: GF, A) -> Subspace:
    """Right kernel {v : A v = 0} as a subspace of F^cols."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    if A.shape[0] == 0:
        return Subspace.full(F, n)
    R, piv = rref(F, A)
    return Subspace.span(F, n, _null_from_rref(F, R, piv, n))


def left_kernel(F: GF, A) -> Subspace:
    """{w : w A = 0} as a subspace of F^rows."""
    A = np.asarray(A, dtype=np.int64)
    return kernel(F, A.T)


def image(F: GF, A) -> Subspace:
    """Column space of A as a subspace of F^rows."""
    A = np.asarray(A, dtype=np.int64)
    return Subspace.span(F, A.shape[0], A.T)


@dataclass(frozen=True)
class Solution:
    """Solution set of A X = B: ``particular + kernel`` (per column of B)."""

    particular: np.ndarray | None
    kernel: Subspace

    @property
    def consistent(self) -> bool:
        return self.particular is not None


def solve(F: GF, A, B) -> Solution:
    """Solve A X = B exactly; ``particular`` is None when inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    vec = B.ndim == 1
    if vec:
        B = B.reshape(-1, 1)
    if A.ndim != 2 or A.shape[0] != B.shape[0]:
        raise ValueError(f"dimension mismatch: A is {A.shape}, b is {B.shape}")
    m, n = A.shape
    aug = np.concatenate([A, B], axis=1)
    R, piv = rref(F, aug)
    # a pivot in the right-hand block means some column is inconsistent
    if piv and piv[-1] >= n:
        k = sum(c < n for c in piv)
        return Solution(None, Subspace.span(F, n, _null_from_rref(F, R[:k, :n], piv[:k], n)))
    kern = Subspace.span(F, n, _null_from_rref(F, R[:, :n], piv, n))
    X = np.zeros((n, B.shape[1]), dtype=np.int64)
    if piv:
        X[list(piv)] = R[: len(piv), n:]
    return Solution(X[:, 0] if vec else X, kern)


def inverse(F: GF, A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    sol = solve(F, A, F.eye(n))
    if not sol.consistent or sol.kernel.dim:
        raise ZeroDivisionError("matrix is singular")
    return sol.particular


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F^ambient stored by its canonical RREF basis."""

    field: GF
    ambient: int
    basis: np.ndarray
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, F: GF, ambient: int, vectors) -> Subspace:
        V = np.asarray(vectors, dtype=np.int64).reshape(-1, ambient)
        if V.shape[0] == 0:
            return cls.zero(F, ambient)
        R, piv = rref(F, V)
        R.setflags(write=False)
        return cls(F, ambient, R, piv)

    @classmethod
    def zero(cls, F: GF, ambient: int) -> Subspace:
        B = np.zeros((0, ambient), dtype=np.int64)
        B.setflags(write=False)
        return cls(F, ambient, B, ())

    @classmethod
    def full(cls, F: GF, ambient: int) -> Subspace:
        B = np.eye(ambient, dtype=np.int64)
        B.setflags(write=False)
        return cls(F, ambient, B, tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, {self.field!r})"

    def _check(self, other: Subspace) -> None:
        if other.ambient != self.ambient:
            raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")
        if other.field is not self.field:
            raise FieldError("subspaces over different fields")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field is other.field
            and self.ambient == other.ambient
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:
        return hash((self.ambient, self.pivots, self.basis.tobytes()))

    def reduce(self, v) -> np.ndarray:
        """Remainder of v (rows) after eliminating this subspace's pivots."""
        F = self.field
        v = _as2d(v, self.ambient).copy()
        if self.dim == 0:
            return v
        piv = list(self.pivots)
        coef = v[:, piv]
        return F.sub(v, F.matmul(coef, self.basis))

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coords(self, v) -> np.ndarray:
        """Coordinates of rows of v in the RREF basis (v must lie in the space)."""
        v = _as2d(v, self.ambient)
        if np.any(self.reduce(v)):
            raise ValueError("vector is not in the subspace")
        return v[:, list(self.pivots)]

    def issubspace(self, other: Subspace) -> bool:
        self._check(other)
        return other.contains(self.basis) if self.dim else True

    def __le__(self, other: Subspace) -> bool:
        return self.issubspace(other)

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.span(self.field, self.ambient, np.concatenate([self.basis, other.basis]))

    def intersection(self, other: Subspace) -> Subspace:
        self._check(other)
        F = self.field
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(F, self.ambient)
        # a U = b V  <=>  (a, -b) in left kernel of [U; V]
        stacked = np.concatenate([self.basis, other.basis])
        lk = left_kernel(F, stacked)
        if lk.dim == 0:
            return Subspace.zero(F, self.ambient)
        vecs = F.matmul(lk.basis[:, : self.dim], self.basis)
        return Subspace.span(F, self.ambient, vecs)

    def __and__(self, other: Subspace) -> Subspace:
        return self.intersection(other)

    def complement_pivots(self) -> tuple[int, ...]:
        s = set(self.pivots)
        return tuple(c for c in range(self.ambient) if c not in s)

    def elements(self) -> np.ndarray:
        """All q^dim vectors of the subspace (small subspaces only)."""
        F = self.field
        if self.dim == 0:
            return np.zeros((1, self.ambient), dtype=np.int64)
        grid = np.array(np.meshgrid(*[F.elements()] * self.dim, indexing="ij"))
        coefs = grid.reshape(self.dim, -1).T
        return F.matmul(coefs, self.basis)

    def lift(self, target: GF) -> Subspace:
        return lift_subspace(self, target)


@dataclass(frozen=True, eq=False)
class QuotientSpace:
    """F^ambient / kernel with the standard complement at non-pivot columns.

    ``projection`` maps ambient rows to quotient coordinates (``v @ projection``)
    and ``section`` maps quotient coordinates back (``c @ section``).
    """

    field: GF
    ambient: int
    kernel: Subspace
    complement: tuple[int, ...]
    projection: np.ndarray = field(repr=False)
    section: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.complement)

    def project(self, v) -> np.ndarray:
        return self.field.matmul(_as2d(v, self.ambient), self.projection)

    def lift(self, c) -> np.ndarray:
        return self.field.matmul(_as2d(c, self.dim), self.section)


def quotient(F: GF, ambient: int, K: Subspace) -> QuotientSpace:
    if K.ambient != ambient:
        raise ValueError("kernel lives in a different ambient space")
    comp = K.complement_pivots()
    # project(e_j): for a pivot column j subtract the kernel row, else unit
    P = np.zeros((ambient, len(comp)), dtype=np.int64)
    pos = {c: i for i, c in enumerate(comp)}
    for c in comp:
        P[c, pos[c]] = 1
    for row, pc in enumerate(K.pivots):
        P[pc] = F.neg(K.basis[row, list(comp)]) if comp else P[pc]
    S = np.zeros((len(comp), ambient), dtype=np.int64)
    for i, c in enumerate(comp):
        S[i, c] = 1
    P.setflags(write=False)
    S.setflags(write=False)
    return QuotientSpace(F, ambient, K, comp, P, S)


# -- field extension ----------------------------------------------------------


@lru_cache(maxsize=None)
def _embedding_table(src: GF, tgt: GF) -> np.ndarray:
    if src.p != tgt.p or tgt.k % src.k:
        raise FieldError(f"{tgt!r} is not an extension of {src!r}")
    if src.prime:
        table = np.arange(src.p, dtype=np.int64)
        table.setflags(write=False)
        return table
    # image of the defining root: the smallest root of src.poly in tgt
    root = None
    for beta in range(tgt.q):
        val = 0
        for c in reversed(src.poly):
            val = int(tgt.add(tgt.mul(val, beta), c))
        if val == 0:
            root = beta
            break
    if root is None:
        raise FieldError(f"no embedding of {src!r} into {tgt!r}")
    powers = [1]
    for _ in range(src.k - 1):
        powers.append(int(tgt.mul(powers[-1], root)))
    coeffs = src.to_coeffs(src.elements())
    table = np.zeros(src.q, dtype=np.int64)
    for i, pw in enumerate(powers):
        table = tgt.add(table, tgt.mul(coeffs[:, i], pw))
    table.setflags(write=False)
    return table


def embedding(src: GF, tgt: GF) -> np.ndarray:
    """Lookup table of the field embedding src -> tgt (a ring homomorphism)."""
    return _embedding_table(src, tgt)


def field_extend(x, src: GF, tgt: GF):
    """Image of field element(s) x under the embedding src -> tgt."""
    return embedding(src, tgt)[np.asarray(x, dtype=np.int64)]


def lift_matrix(A, src: GF, tgt: GF) -> np.ndarray:
    return field_extend(A, src, tgt)


def lift_subspace(U: Subspace, tgt: GF) -> Subspace:
    # the embedding fixes 0 and 1, so the lifted RREF basis stays reduced
    B = field_extend(U.basis, U.field, tgt)
    B.setflags(write=False)
    return Subspace(tgt, U.ambient, B, U.pivots)


def intertwiners(F: GF, ops_src, ops_tgt, dim_src: int, dim_tgt: int) -> Subspace:
    """{X : P_t X = X P_s for all paired operators} as vectorised (row-major) matrices.

    ``ops_src[i]`` and ``ops_tgt[i]`` are the actions of the same ring element on
    source and target coordinates.  The solution space is cut down one operator
    at a time, so later operators only act on the surviving basis.
    """
    D = dim_src * dim_tgt
    V = np.eye(D, dtype=np.int64)
    for Ps, Pt in zip(ops_src, ops_tgt):
        if V.shape[0] == 0:
            break
        Ps = np.asarray(Ps, dtype=np.int64)
        Pt = np.asarray(Pt, dtype=np.int64)
        X = V.reshape(-1, dim_tgt, dim_src)
        resid = F.sub(F.matmul(Pt, X), F.matmul(X, Ps)).reshape(V.shape[0], D)
        if not resid.any():
            continue
        coeff = left_kernel(F, resid)
        if coeff.dim == 0:
            V = np.zeros((0, D), dtype=np.int64)
            break
        V = F.matmul(coeff.basis, V)
    return Subspace.span(F, D, V)
