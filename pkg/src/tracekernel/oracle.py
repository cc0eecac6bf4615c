"""Brute-force enumeration of maps L -> N that factor through a power of M.

This is independent of the trace machinery: it enumerates every pair
``L -> M^n -> N`` as explicit matrices and collects the composites.  Any
sum of ``t`` composites through M factors through ``M^t``, and a sum of more
than ``min(dim Hom(L,N), dim Hom(M,N), dim Hom(L,M))`` rank-one composites can
be regrouped into at most that many, so ``n`` equal to the bound reaches
every element of the trace.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .artin import ModulePresentation, direct_sum
from .hom import hom

__all__ = [
    "OracleResult",
    "factoring_maps",
    "oracle_span",
    "trace_elements",
    "DEFAULT_MAX_PAIRS",
]

DEFAULT_MAX_PAIRS = 1 << 18
_CHUNK = 1 << 14


@dataclass(frozen=True, eq=False)
class OracleResult:
    status: str  # "ok" or "skipped"
    copies: int
    pairs: int
    maps: frozenset | None = None

    @property
    def size(self) -> int:
        return len(self.maps) if self.maps is not None else -1


def _key(X: np.ndarray) -> bytes:
    return np.ascontiguousarray(X, dtype=np.int64).tobytes()


def factoring_maps(
    M: ModulePresentation,
    L: ModulePresentation,
    N: ModulePresentation,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> OracleResult:
    """All matrices of composites ``L -> M^n -> N`` (as byte keys), or a skip."""
    F = M.field
    r1 = hom(M, N).dim
    r2 = hom(L, M).dim
    r3 = hom(L, N).dim
    n = min(r1, r2, r3)
    zero = np.zeros((N.dim, L.dim), dtype=np.int64)
    if n == 0:
        return OracleResult("ok", 0, 1, frozenset({_key(zero)}))
    pairs = F.q ** (n * (r1 + r2))
    if pairs > max_pairs:
        return OracleResult("skipped", n, pairs)
    Mn = direct_sum(*([M] * n)) if n > 1 else M
    S = hom(Mn, N)
    G = hom(L, Mn)
    Ss = S.element(_coords_all(F, S.dim))
    Gs = G.element(_coords_all(F, G.dim))
    seen: set[bytes] = set()
    step = max(1, _CHUNK // max(1, len(Gs)))
    for i in range(0, len(Ss), step):
        prods = F.einsum("snm,gml->sgnl", Ss[i : i + step], Gs)
        flat = np.unique(prods.reshape(-1, N.dim * L.dim), axis=0)
        seen.update(_key(P) for P in flat.reshape(-1, N.dim, L.dim))
    return OracleResult("ok", n, pairs, frozenset(seen))


def _coords_all(F, dim: int) -> np.ndarray:
    """Every coordinate vector in F^dim."""
    grids = np.indices((F.q,) * dim).reshape(dim, -1).T
    return grids.astype(np.int64)


def trace_elements(tr_maps: np.ndarray, F, r: int) -> frozenset:
    """Byte keys of all F-combinations of the given basis matrices (shape (r, n, m))."""
    if r == 0:
        return frozenset({_key(np.zeros(tr_maps.shape[1:], dtype=np.int64))})
    coeffs = _coords_all(F, r)
    mats = F.einsum("ca,anm->cnm", coeffs, tr_maps)
    return frozenset(_key(X) for X in mats)


def oracle_span(result: OracleResult, F, n_rows: int, n_cols: int):
    """The factoring set as a subspace of vectorised n_rows x n_cols matrices."""
    from .linalg import Subspace

    if result.maps is None:
        raise ValueError("oracle skipped")
    vecs = np.array([np.frombuffer(b, dtype=np.int64) for b in sorted(result.maps)])
    return Subspace.span(F, n_rows * n_cols, vecs.reshape(-1, n_rows * n_cols))
