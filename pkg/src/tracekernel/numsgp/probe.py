"""Corollary checks and Huneke-Wiegand style probes for monomial ideals."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graded import DEFAULT_PRIME, TorsionResult, tensor_torsion_length
from .ideals import (
    FracIdealVal,
    canonical_ideal,
    colon,
    end_semigroup,
    format_values,
    semigroup_ideal,
    stable_sets,
    trace_omega,
)
from .semigroup import NumericalSemigroup, enumerate_semigroups

__all__ = [
    "COUNTEREXAMPLE",
    "CanonicalReport",
    "check_corollary_canonical",
    "HWReport",
    "hw_probe",
    "sweep_ideals",
    "canonical_sweep",
    "equiv_sweep",
    "hw_sweep",
    "SweepSummary",
]

COUNTEREXAMPLE = "COUNTEREXAMPLE-CANDIDATE"


@dataclass(frozen=True)
class CanonicalReport:
    ideal: FracIdealVal
    end_semigroup: NumericalSemigroup
    trace: FracIdealVal
    claim_i: bool  # (tr_w(I) : tr_w(I)) = (I : I)
    claim_ii: bool  # tr_w(I) is a translate of K_{S'}
    shift: int | None

    @property
    def hypothesis_met(self) -> bool:
        # rank one: at the generic point every nonzero I is free, hence a generator
        return True

    @property
    def verdict(self) -> str:
        return "pass" if self.claim_i and self.claim_ii else "fail"

    def to_dict(self) -> dict:
        return {
            "ideal": format_values(self.ideal),
            "end_semigroup": list(self.end_semigroup.generators),
            "trace_omega": format_values(self.trace),
            "claim_i": self.claim_i,
            "claim_ii": self.claim_ii,
            "shift": self.shift,
            "verdict": self.verdict,
        }


def check_corollary_canonical(I: FracIdealVal) -> CanonicalReport:
    """Z(End I) = End(tr_w I) and tr_w(I) canonical for End(I), on value sets."""
    t = trace_omega(I)
    E = colon(I, I)
    S2 = end_semigroup(I)
    claim_i = colon(t, t) == E
    K2 = canonical_ideal(S2)
    # compare over S' so that both value sets carry the same parent
    t2 = FracIdealVal(S2, t.m0, t.thr, t.mask)
    shift = K2.translation_to(t2)
    return CanonicalReport(I, S2, t, bool(claim_i), shift is not None, shift)


@dataclass(frozen=True)
class HWReport:
    ideal: FracIdealVal
    is_free: bool
    is_omega_translate: bool
    star: TorsionResult  # (R:I) (x) I
    vee_mix: TorsionResult  # (w:I) (x) (I:w)
    chain: TorsionResult  # (R:(w:I)) (x) (w:I)
    gorenstein: bool
    flags: tuple[str, ...] = field(default=())

    @property
    def torsion_len_star(self) -> int:
        return self.star.length

    @property
    def torsion_len_vee_mix(self) -> int:
        return self.vee_mix.length

    @property
    def stable(self) -> bool:
        return self.star.stable and self.vee_mix.stable and self.chain.stable

    @property
    def prop_equiv_consistent(self) -> bool:
        return self.vee_mix.length == self.chain.length

    @property
    def gorenstein_consistent(self) -> bool:
        return not self.gorenstein or self.vee_mix.length == self.star.length

    def to_dict(self) -> dict:
        return {
            "ideal": format_values(self.ideal),
            "is_free": self.is_free,
            "is_omega_translate": self.is_omega_translate,
            "torsion_len_star": self.star.to_dict(),
            "torsion_len_vee_mix": self.vee_mix.to_dict(),
            "torsion_len_chain": self.chain.to_dict(),
            "prop_equiv_consistent": self.prop_equiv_consistent,
            "gorenstein": self.gorenstein,
            "gorenstein_consistent": self.gorenstein_consistent,
            "flags": list(self.flags),
        }


def hw_probe(I: FracIdealVal, cutoff: int | None = None, prime: int = DEFAULT_PRIME) -> HWReport:
    S = I.S
    R, K = semigroup_ideal(S), canonical_ideal(S)
    dual = colon(K, I)
    star = tensor_torsion_length(colon(R, I), I, cutoff, prime)
    vee_mix = tensor_torsion_length(dual, colon(I, K), cutoff, prime)
    chain = tensor_torsion_length(colon(R, dual), dual, cutoff, prime)
    free = I.is_principal
    omega = I.is_translate_of(K)
    flags = []
    if star.stable and star.length == 0 and not free:
        flags.append(f"{COUNTEREXAMPLE}:hwc")
    if vee_mix.stable and vee_mix.length == 0 and not omega:
        flags.append(f"{COUNTEREXAMPLE}:hwcalt")
    return HWReport(I, free, omega, star, vee_mix, chain, S.symmetric, tuple(flags))


# -- sweeps --------------------------------------------------------------------------


@dataclass
class SweepSummary:
    name: str
    instances: int = 0
    passed: int = 0
    excluded: int = 0
    failures: list = field(default_factory=list)
    candidates: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.instances > 0 and self.passed + self.excluded == self.instances and not self.failures

    @property
    def excluded_rate(self) -> float:
        return self.excluded / self.instances if self.instances else 0.0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "instances": self.instances,
            "passed": self.passed,
            "excluded": self.excluded,
            "failures": self.failures,
            "candidates": self.candidates,
        }


def sweep_ideals(max_genus: int, shifts: bool = False, symmetric_only: bool = False):
    """(S, I) over all semigroups of genus <= max_genus and their stable value sets.

    With ``shifts`` every class is also translated to each minimum in [-c, c].
    """
    for level in enumerate_semigroups(max_genus):
        for S in level:
            if symmetric_only and not S.symmetric:
                continue
            c = S.conductor
            for I in stable_sets(S):
                if shifts:
                    for z in range(-c, c + 1):
                        yield S, I.translate(z)
                else:
                    yield S, I


def _label(S: NumericalSemigroup, I: FracIdealVal) -> str:
    return f"S=<{','.join(map(str, S.generators))}> I={format_values(I)}"


def canonical_sweep(max_genus: int = 8) -> SweepSummary:
    out = SweepSummary("corollary_canonical")
    for S, I in sweep_ideals(max_genus, shifts=True):
        out.instances += 1
        rep = check_corollary_canonical(I)
        if rep.verdict == "pass":
            out.passed += 1
        else:
            out.failures.append(_label(S, I))
    return out


def equiv_sweep(max_genus: int = 6, cutoff: int | None = None) -> SweepSummary:
    """torsion((w:I) (x) (I:w)) == torsion((R:(w:I)) (x) (w:I)), computed independently."""
    out = SweepSummary("prop_equiv_chain")
    for S, I in sweep_ideals(max_genus):
        out.instances += 1
        K, R = canonical_ideal(S), semigroup_ideal(S)
        dual = colon(K, I)
        a = tensor_torsion_length(dual, colon(I, K), cutoff)
        b = tensor_torsion_length(colon(R, dual), dual, cutoff)
        if not (a.stable and b.stable):
            out.excluded += 1
        elif a.length == b.length:
            out.passed += 1
        else:
            out.failures.append(_label(S, I))
    return out


def hw_sweep(max_genus: int = 6, cutoff: int | None = None) -> SweepSummary:
    """Symmetric S, non-principal I: torsion((R:I) (x) I) > 0.

    A zero is replayed at twice the cutoff and only counts as a failure when
    both runs are stable; it is always listed as a candidate.
    """
    out = SweepSummary("huneke_wiegand_monomial")
    for S, I in sweep_ideals(max_genus, symmetric_only=True):
        if I.is_principal:
            continue
        out.instances += 1
        R = semigroup_ideal(S)
        t = tensor_torsion_length(colon(R, I), I, cutoff)
        if not t.stable:
            out.excluded += 1
        elif t.length > 0:
            out.passed += 1
        else:
            label = _label(S, I)
            out.candidates.append(f"{COUNTEREXAMPLE}: {label}")
            again = tensor_torsion_length(colon(R, I), I, 2 * t.cutoff)
            if again.stable and again.length == 0:
                out.failures.append(label)
            else:
                out.passed += again.length > 0
                out.excluded += again.length == 0
    return out
