"""Graded presentations and tensor torsion for monomial ideals of k[t^S].

Every graded piece of R and of a monomial ideal has dimension at most 1, so a
free module on generators of degrees a_1..a_r has degree-d piece with basis
``{e_i : d - a_i in S}`` and all linear algebra is per degree.

Degree bounds (m the multiplicity, c the conductor): the syzygies in degree d
are spanned by the binomials e_i - e_j with d in (a_i + S) and (a_j + S), so
minimal syzygies live below max(a) + c + m.  In degree d >= max(a) + max(b) + c
every pair (i, j) is present and connected, so the tensor has no torsion there.
A cutoff past these bounds is exact; otherwise the result is stable when the
top c degrees contribute nothing new.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..gf import GF
from ..linalg import Subspace, kernel, rank
from .ideals import FracIdealVal

__all__ = [
    "DEFAULT_PRIME",
    "GradedPresentation",
    "graded_presentation",
    "TorsionResult",
    "tensor_torsion_length",
    "default_cutoff",
]

DEFAULT_PRIME = 32003


def default_cutoff(*ideals: FracIdealVal) -> int:
    """2 * (largest generator after normalising the minimum to 0) + 2c."""
    S = ideals[0].S
    top = max(max(I.normalized().minimal_generators) for I in ideals)
    return 2 * top + 2 * S.conductor


@dataclass(frozen=True)
class GradedPresentation:
    ideal: FracIdealVal
    generators: tuple[int, ...]
    # (degree, {generator index: coefficient}) per minimal syzygy generator
    relations: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]
    cutoff: int
    stable: bool
    prime: int = DEFAULT_PRIME

    def relation_degrees(self) -> list[int]:
        return [d for d, _ in self.relations]

    def to_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "relations": [{"degree": d, "coefficients": {str(i): c for i, c in v}} for d, v in self.relations],
            "cutoff": self.cutoff,
            "stable": self.stable,
        }


def _support(gens: tuple[int, ...], S, d: int) -> list[int]:
    return [i for i, a in enumerate(gens) if (d - a) in S]


def graded_presentation(I: FracIdealVal, cutoff: int | None = None, prime: int = DEFAULT_PRIME) -> GradedPresentation:
    """Minimal generators of I and minimal syzygy generators in degrees <= cutoff."""
    S = I.S
    gens = I.minimal_generators
    D = default_cutoff(I) + I.m0 if cutoff is None else cutoff
    F = GF(prime)
    r = len(gens)
    syz: dict[int, Subspace] = {}
    rels = []
    sgens = S.generators
    for d in range(min(gens), D + 1):
        P = _support(gens, S, d)
        ones = np.zeros((1, r), dtype=np.int64)
        ones[0, P] = 1
        # kernel of F_d -> I_d inside the coordinates of P
        restrict = np.zeros((r, r), dtype=np.int64)
        for i in range(r):
            if i not in P:
                restrict[i, i] = 1
        K = kernel(F, np.vstack([ones, restrict])) if P else Subspace.zero(F, r)
        syz[d] = K
        if K.dim == 0:
            continue
        inner = Subspace.zero(F, r)
        for g in sgens:
            prev = syz.get(d - g)
            if prev is not None and prev.dim:
                inner = inner + prev
        for v in K.basis:
            if not inner.contains(v):
                rels.append((d, tuple((int(i), int(v[i])) for i in np.flatnonzero(v))))
                inner = inner + Subspace.span(F, r, v)
    c = S.conductor
    proven = D >= max(gens) + c + S.multiplicity - 1
    stable = proven or all(d <= D - c for d, _ in rels)
    return GradedPresentation(I, gens, tuple(rels), D, stable, prime)


@dataclass(frozen=True)
class TorsionResult:
    length: int
    stable: bool
    cutoff: int
    per_degree: tuple[tuple[int, int], ...] = field(default=())

    @property
    def tag(self) -> str:
        return "exact" if self.stable else "lower bound; increase cutoff"

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "stable": self.stable,
            "tag": self.tag,
            "cutoff": self.cutoff,
            "per_degree": {str(d): t for d, t in self.per_degree},
        }


def tensor_torsion_length(
    I: FracIdealVal, J: FracIdealVal, cutoff: int | None = None, prime: int = DEFAULT_PRIME
) -> TorsionResult:
    """Length of ker(I (x) J -> IJ), degree by degree up to the cutoff.

    Both ideals are first translated to minimum 0; the length is translation
    invariant.  The cutoff refers to the translated ideals.
    """
    I0, J0 = I.normalized(), J.normalized()
    S = I.S
    D = default_cutoff(I0, J0) if cutoff is None else cutoff
    pI = graded_presentation(I0, D, prime)
    pJ = graded_presentation(J0, D, prime)
    F = GF(prime)
    a, b = pI.generators, pJ.generators
    per = []
    total = 0
    for d in range(min(a) + min(b), D + 1):
        Q = [(i, j) for i in range(len(a)) for j in range(len(b)) if (d - a[i] - b[j]) in S]
        if not Q:
            continue
        index = {p: n for n, p in enumerate(Q)}
        rows = []
        # lifted syzygies of I times generators of J, and symmetrically
        for e, coeffs in pI.relations:
            for j, bj in enumerate(b):
                if (d - e - bj) in S:
                    v = np.zeros(len(Q), dtype=np.int64)
                    for i, cval in coeffs:
                        v[index[(i, j)]] = cval
                    rows.append(v)
        for e, coeffs in pJ.relations:
            for i, ai in enumerate(a):
                if (d - e - ai) in S:
                    v = np.zeros(len(Q), dtype=np.int64)
                    for j, cval in coeffs:
                        v[index[(i, j)]] = cval
                    rows.append(v)
        rk = rank(F, np.array(rows)) if rows else 0
        t = len(Q) - rk - 1
        if t:
            per.append((d, t))
            total += t
    proven = D >= max(a) + max(b) + S.conductor - 1
    stable = proven or all(d <= D - S.conductor for d, _ in per)
    return TorsionResult(total, stable, D, tuple(per))
