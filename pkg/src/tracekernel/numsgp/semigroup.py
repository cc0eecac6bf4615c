"""Numerical semigroups: cofinite submonoids of the natural numbers."""

from __future__ import annotations

from functools import cached_property, reduce
from math import gcd
from typing import Iterable

__all__ = ["NumericalSemigroup", "semigroup", "enumerate_semigroups", "SemigroupError"]


class SemigroupError(ValueError):
    pass


class NumericalSemigroup:
    """A numerical semigroup, stored by its gaps.

    Equality and hashing use the gap set, so two generator lists of the same
    semigroup compare equal.
    """

    __slots__ = ("_gaps", "_member", "__dict__")

    def __init__(self, generators: Iterable[int]):
        gens = sorted({int(g) for g in generators})
        if not gens or gens[0] <= 0:
            raise SemigroupError("generators must be positive integers")
        if reduce(gcd, gens) != 1:
            raise SemigroupError(f"generators {gens} have gcd > 1")
        m = gens[0]
        member = bytearray([1])
        run = 1 if m == 1 else 0
        z = 0
        # sieve until m consecutive members: everything after is a member
        while run < m:
            z += 1
            hit = any(z >= g and member[z - g] for g in gens)
            member.append(1 if hit else 0)
            run = run + 1 if hit else 0
        self._member = bytes(member)
        self._gaps = tuple(i for i, b in enumerate(member) if not b)

    @classmethod
    def from_gaps(cls, gaps: Iterable[int]) -> NumericalSemigroup:
        gaps = sorted(set(int(g) for g in gaps))
        if gaps and gaps[0] <= 0:
            raise SemigroupError("gaps must be positive")
        c = gaps[-1] + 1 if gaps else 0
        gapset = set(gaps)
        members = [z for z in range(0, 2 * c + 2) if z not in gapset]
        for a in members:
            for b in members:
                if a + b < c and (a + b) in gapset:
                    raise SemigroupError("gap set is not the complement of a semigroup")
        return cls(_minimal_generators(members, gapset, c))

    # -- invariants -------------------------------------------------------------
    @property
    def gaps(self) -> tuple[int, ...]:
        return self._gaps

    @property
    def genus(self) -> int:
        return len(self._gaps)

    @property
    def frobenius(self) -> int:
        return self._gaps[-1] if self._gaps else -1

    @property
    def conductor(self) -> int:
        return self.frobenius + 1

    def __contains__(self, z: int) -> bool:
        if z < 0:
            return False
        if z >= len(self._member):
            return True
        return bool(self._member[z])

    contains = __contains__

    @cached_property
    def generators(self) -> tuple[int, ...]:
        c = self.conductor
        members = [z for z in range(0, c + 2) if z in self]
        return tuple(_minimal_generators(members, set(self._gaps), c))

    @cached_property
    def multiplicity(self) -> int:
        z = 1
        while z not in self:
            z += 1
        return z

    @property
    def embedding_dimension(self) -> int:
        return len(self.generators)

    @cached_property
    def apery(self) -> tuple[int, ...]:
        """Ap(S, m): the least element of S in each residue class mod the multiplicity."""
        m = self.multiplicity
        out = [None] * m
        z = 0
        left = m
        while left:
            if z in self and out[z % m] is None:
                out[z % m] = z
                left -= 1
            z += 1
        return tuple(out)

    @property
    def symmetric(self) -> bool:
        F = self.frobenius
        return all((z in self) != ((F - z) in self) for z in range(0, F + 1))

    def elements_below(self, bound: int) -> list[int]:
        return [z for z in range(0, bound) if z in self]

    def children(self) -> list[NumericalSemigroup]:
        """S minus one minimal generator larger than the Frobenius number."""
        F = self.frobenius
        return [NumericalSemigroup.from_gaps(self._gaps + (g,)) for g in self.generators if g > F]

    def __eq__(self, other) -> bool:
        return isinstance(other, NumericalSemigroup) and self._gaps == other._gaps

    def __hash__(self) -> int:
        return hash(("sgp", self._gaps))

    def __repr__(self) -> str:
        return f"<{', '.join(map(str, self.generators))}>"

    def to_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "frobenius": self.frobenius,
            "conductor": self.conductor,
            "genus": self.genus,
            "gaps": list(self.gaps),
            "multiplicity": self.multiplicity,
            "apery": list(self.apery),
            "symmetric": self.symmetric,
        }


def _minimal_generators(members: list[int], gapset: set[int], c: int) -> list[int]:
    """Nonzero members that are not a sum of two nonzero members.

    Minimal generators lie in [m, c + m], where m is the multiplicity.
    """

    def inside(z: int) -> bool:
        return z >= 0 and z not in gapset

    m = next(z for z in members if z > 0)
    return [
        z
        for z in range(m, c + m + 1)
        if inside(z) and not any(inside(a) and inside(z - a) for a in range(m, z - m + 1))
    ]


def semigroup(generators: Iterable[int]) -> NumericalSemigroup:
    return NumericalSemigroup(generators)


def enumerate_semigroups(max_genus: int) -> list[list[NumericalSemigroup]]:
    """All numerical semigroups by genus, ``out[g]`` for g <= max_genus.

    Every semigroup of genus g + 1 arises exactly once as S minus a minimal
    generator above the Frobenius number of a unique S of genus g.
    """
    out = [[NumericalSemigroup([1])]]
    for _ in range(max_genus):
        out.append([child for S in out[-1] for child in S.children()])
    return out
