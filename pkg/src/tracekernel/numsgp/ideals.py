"""Monomial fractional ideals of k[[t^S]] as value sets.

A value set V is a nonempty set of integers with V + S contained in V.  It is
stored as ``(m0, thr, mask)``: ``m0 = min V``, every integer ``>= thr`` lies in
V, and bit ``i`` of ``mask`` records whether ``m0 + i`` does (for ``m0 + i < thr``).
``thr`` is always minimal, so the triple is canonical.  For monomial ideals
``Hom(I, J)`` is multiplication by the colon ``(J : I)``.
"""

from __future__ import annotations

import re
from typing import Iterable

from .semigroup import NumericalSemigroup

__all__ = [
    "FracIdealVal",
    "value_set",
    "parse_values",
    "semigroup_ideal",
    "maximal_ideal",
    "canonical_ideal",
    "ideal_sum",
    "colon",
    "end_semigroup",
    "trace_ideal",
    "trace_omega",
    "omega_reflexive_check",
    "stable_sets",
]


class FracIdealVal:
    __slots__ = ("S", "m0", "thr", "mask")

    def __init__(self, S: NumericalSemigroup, m0: int, thr: int, mask: int):
        self.S = S
        self.m0 = m0
        self.thr = thr
        self.mask = mask

    # -- membership ---------------------------------------------------------------
    def __contains__(self, z: int) -> bool:
        if z >= self.thr:
            return True
        if z < self.m0:
            return False
        return bool(self.mask >> (z - self.m0) & 1)

    contains = __contains__

    @property
    def rank(self) -> int:
        return 1

    def finite_part(self) -> list[int]:
        """Members below the threshold."""
        return [self.m0 + i for i in range(self.thr - self.m0) if self.mask >> i & 1]

    def members_below(self, bound: int) -> list[int]:
        return [z for z in range(self.m0, bound) if z in self]

    def translate(self, z: int) -> FracIdealVal:
        return FracIdealVal(self.S, self.m0 + z, self.thr + z, self.mask)

    def normalized(self) -> FracIdealVal:
        """The translate with minimum 0."""
        return self.translate(-self.m0)

    def translation_to(self, other: FracIdealVal) -> int | None:
        """z with self + z == other, if any."""
        if self.mask == other.mask and self.thr - self.m0 == other.thr - other.m0:
            return other.m0 - self.m0
        return None

    def is_translate_of(self, other: FracIdealVal) -> bool:
        return self.translation_to(other) is not None

    @property
    def minimal_generators(self) -> tuple[int, ...]:
        """Values not reachable as v + s with v in V and s a nonzero element of S."""
        gens = self.S.generators
        return tuple(
            z for z in range(self.m0, self.thr + self.S.multiplicity) if z in self and not any((z - g) in self for g in gens)
        )

    @property
    def is_principal(self) -> bool:
        return len(self.minimal_generators) == 1

    def __le__(self, other: FracIdealVal) -> bool:
        return all(z in other for z in range(self.m0, max(self.thr, other.thr)) if z in self)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FracIdealVal)
            and (self.m0, self.thr, self.mask) == (other.m0, other.thr, other.mask)
            and self.S == other.S
        )

    def __hash__(self) -> int:
        return hash((self.m0, self.thr, self.mask))

    def __repr__(self) -> str:
        return f"FracIdealVal({format_values(self)})"

    def to_dict(self) -> dict:
        return {"min": self.m0, "threshold": self.thr, "values": format_values(self)}


def format_values(I: FracIdealVal) -> str:
    """``0,3,4,5..``: the finite part, then the threshold followed by ``..``."""
    parts = [str(z) for z in I.finite_part()]
    parts.append(f"{I.thr}..")
    return ",".join(parts)


_TAIL = re.compile(r"^(-?\d+)\.\.$")


def parse_values(text: str) -> tuple[list[int], int | None]:
    """Parse ``0,3,4,5..`` into (finite values, tail start)."""
    vals: list[int] = []
    tail = None
    for tok in re.split(r"[,\s]+", text.strip()):
        if not tok:
            continue
        m = _TAIL.match(tok)
        if m:
            if tail is not None:
                raise ValueError("more than one tail marker")
            tail = int(m.group(1))
        else:
            vals.append(int(tok))
    return vals, tail


def _build(S: NumericalSemigroup, test, lo: int, hi: int) -> FracIdealVal:
    """Value set from a membership predicate on [lo, hi), full from hi on."""
    members = [z for z in range(lo, hi) if test(z)]
    m0 = members[0] if members else hi
    thr = hi
    while thr - 1 >= m0 and test(thr - 1):
        thr -= 1
    mask = 0
    for z in members:
        if z < thr:
            mask |= 1 << (z - m0)
    return FracIdealVal(S, m0, thr, mask)


def value_set(S: NumericalSemigroup, values: Iterable[int], tail: int | None = None) -> FracIdealVal:
    """The value set ``values + [tail, inf)``; it must be S-stable."""
    vals = sorted(set(int(v) for v in values))
    if tail is None:
        if not vals:
            raise ValueError("empty value set")
        tail = vals[0] + S.conductor
    if not vals:
        vals = [tail]
    lo = min(vals[0], tail)
    vs = set(vals)
    I = _build(S, lambda z: z >= tail or z in vs, lo, tail)
    for v in I.finite_part():
        for g in S.generators:
            if (v + g) not in I:
                raise ValueError(f"value set is not S-stable: {v} + {g} missing")
    return I


def semigroup_ideal(S: NumericalSemigroup) -> FracIdealVal:
    """R itself."""
    return _build(S, lambda z: z in S, 0, S.conductor)


def maximal_ideal(S: NumericalSemigroup) -> FracIdealVal:
    m = S.multiplicity
    return _build(S, lambda z: z > 0 and z in S, m, max(S.conductor, m))


def canonical_ideal(S: NumericalSemigroup) -> FracIdealVal:
    """K_S = {z : F - z not in S}."""
    F = S.frobenius
    return _build(S, lambda z: (F - z) not in S, 0, max(S.conductor, 0))


def _check_parent(I: FracIdealVal, J: FracIdealVal) -> NumericalSemigroup:
    if I.S != J.S:
        raise ValueError("value sets over different semigroups")
    return I.S


def ideal_sum(I: FracIdealVal, J: FracIdealVal) -> FracIdealVal:
    """Val(I) + Val(J), the value set of the product ideal."""
    S = _check_parent(I, J)
    lo, hi = I.m0 + J.m0, I.thr + J.m0
    fI = I.finite_part() + list(range(I.thr, hi - J.m0 + 1))

    def test(z):
        return any((z - a) in J for a in fI if a <= z - J.m0)

    return _build(S, test, lo, max(hi, lo))


def colon(J: FracIdealVal, I: FracIdealVal) -> FracIdealVal:
    """(J : I) = {z : z + Val(I) in Val(J)}."""
    S = _check_parent(I, J)
    lo, hi = J.m0 - I.m0, J.thr - I.m0

    def test(z):
        top = max(I.thr, J.thr - z)
        return all((z + a) in J for a in range(I.m0, top) if a in I)

    return _build(S, test, lo, max(hi, lo))


def end_semigroup(I: FracIdealVal) -> NumericalSemigroup:
    """(I : I), a numerical semigroup containing S."""
    E = colon(I, I)
    gaps = [z for z in range(0, E.thr) if z not in E]
    return NumericalSemigroup.from_gaps(gaps)


def trace_ideal(I: FracIdealVal) -> FracIdealVal:
    """tr_R(I) = I (R : I)."""
    return ideal_sum(I, colon(semigroup_ideal(I.S), I))


def trace_omega(I: FracIdealVal) -> FracIdealVal:
    """tr_omega(I) = I (omega : I), a submodule of omega."""
    return ideal_sum(I, colon(canonical_ideal(I.S), I))


def omega_reflexive_check(I: FracIdealVal) -> bool:
    K = canonical_ideal(I.S)
    return colon(K, colon(K, I)) == I


def stable_sets(S: NumericalSemigroup) -> list[FracIdealVal]:
    """All S-stable value sets with minimum 0, in increasing mask order."""
    c = S.conductor
    gaps = S.gaps
    out = []
    for bits in range(1 << len(gaps)):
        extra = {g for i, g in enumerate(gaps) if bits >> i & 1}

        def test(z, extra=extra):
            return z in S or z in extra

        if all(test(x + g) for x in extra for g in S.generators):
            out.append(_build(S, test, 0, c))
    out.sort(key=lambda I: (I.thr, I.mask))
    return out
