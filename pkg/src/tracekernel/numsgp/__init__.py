"""Numerical semigroup rings k[[t^S]] and their monomial fractional ideals."""

from .graded import (
    DEFAULT_PRIME,
    GradedPresentation,
    TorsionResult,
    default_cutoff,
    graded_presentation,
    tensor_torsion_length,
)
from .ideals import (
    FracIdealVal,
    canonical_ideal,
    colon,
    end_semigroup,
    format_values,
    ideal_sum,
    maximal_ideal,
    omega_reflexive_check,
    parse_values,
    semigroup_ideal,
    stable_sets,
    trace_ideal,
    trace_omega,
    value_set,
)
from .probe import (
    COUNTEREXAMPLE,
    CanonicalReport,
    HWReport,
    SweepSummary,
    canonical_sweep,
    check_corollary_canonical,
    equiv_sweep,
    hw_probe,
    hw_sweep,
    sweep_ideals,
)
from .semigroup import NumericalSemigroup, SemigroupError, enumerate_semigroups, semigroup

__all__ = [
    "DEFAULT_PRIME",
    "GradedPresentation",
    "TorsionResult",
    "default_cutoff",
    "graded_presentation",
    "tensor_torsion_length",
    "FracIdealVal",
    "canonical_ideal",
    "colon",
    "end_semigroup",
    "format_values",
    "ideal_sum",
    "maximal_ideal",
    "omega_reflexive_check",
    "parse_values",
    "semigroup_ideal",
    "stable_sets",
    "trace_ideal",
    "trace_omega",
    "value_set",
    "COUNTEREXAMPLE",
    "CanonicalReport",
    "HWReport",
    "SweepSummary",
    "canonical_sweep",
    "check_corollary_canonical",
    "equiv_sweep",
    "hw_probe",
    "hw_sweep",
    "sweep_ideals",
    "NumericalSemigroup",
    "SemigroupError",
    "enumerate_semigroups",
    "semigroup",
]
