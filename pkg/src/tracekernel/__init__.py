"""Exact trace maps, trace submodules and End-ring centers over finite-field algebras."""

from .artin import (
    AlgebraPresentation,
    ModulePresentation,
    ValidationError,
    algebra_preset,
    canonical_module,
    direct_sum,
    free_module,
    matlis_dual,
    maximal_ideal,
    residue_field,
    syzygy,
    validate_algebra,
    validate_module,
)
from .document import Document, DocumentError, parse
from .gf import GF, FieldError
from .hom import end_ring, hom, hom_over_end
from .linalg import Subspace
from .trace import (
    RingMapCertificate,
    TraceData,
    add_membership,
    build_center_isomorphism,
    build_general_isomorphism,
    epsilon_map,
    generation_predicates,
    is_reflexive,
    is_torsionless,
    pi_map,
    reflexivity_predicates,
    semidualizing_check,
    tensor_over_end,
    theta_map,
    trace_ideal,
    trace_image,
    trace_map,
    trace_submodule,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraPresentation",
    "ModulePresentation",
    "ValidationError",
    "algebra_preset",
    "canonical_module",
    "direct_sum",
    "free_module",
    "matlis_dual",
    "maximal_ideal",
    "residue_field",
    "syzygy",
    "validate_algebra",
    "validate_module",
    "Document",
    "DocumentError",
    "parse",
    "GF",
    "FieldError",
    "end_ring",
    "hom",
    "hom_over_end",
    "Subspace",
    "RingMapCertificate",
    "TraceData",
    "add_membership",
    "build_center_isomorphism",
    "build_general_isomorphism",
    "epsilon_map",
    "generation_predicates",
    "is_reflexive",
    "is_torsionless",
    "pi_map",
    "reflexivity_predicates",
    "semidualizing_check",
    "tensor_over_end",
    "theta_map",
    "trace_ideal",
    "trace_image",
    "trace_map",
    "trace_submodule",
]
