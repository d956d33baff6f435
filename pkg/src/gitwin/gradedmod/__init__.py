"""Graded free complexes over positively weighted polynomial rings: the
module-level half of the window machinery (Koszul blocks, origin support,
window tests, lifts, quantization counts, JSON serialization)."""

from .complexes import (
    ChainMap,
    GradedFreeComplex,
    WeightProfile,
    cone_of_chain_map,
    direct_sum,
    dual,
    free_module,
    hom_chain_maps,
    is_acyclic,
    minimize,
    restrict_to_fixed,
    shift,
    strand_basis,
    strand_cohomology_dim,
    strand_differential,
    window_test_complex,
    zero_complex,
)
from .io import complex_from_payload, complex_to_payload
from .koszul import koszul_skyscraper
from .lift import (
    LiftResult,
    LiftStep,
    window_lift,
    window_lift_with_trace,
)
from .quantize import quantization_hom_dims
from .ring import (
    WeightedRing,
    count_exponents_of_weight,
    exponents_of_weight,
    homogeneous_weight,
    monomial_weight,
    poly_add,
    poly_constant,
    poly_mul,
    poly_scale,
    poly_variable,
    poly_zero,
)
from .support import finiteness_threshold, is_supported_at_origin

__all__ = [
    "ChainMap",
    "GradedFreeComplex",
    "LiftResult",
    "LiftStep",
    "WeightProfile",
    "WeightedRing",
    "complex_from_payload",
    "complex_to_payload",
    "cone_of_chain_map",
    "count_exponents_of_weight",
    "direct_sum",
    "dual",
    "exponents_of_weight",
    "finiteness_threshold",
    "free_module",
    "hom_chain_maps",
    "homogeneous_weight",
    "is_acyclic",
    "is_supported_at_origin",
    "koszul_skyscraper",
    "minimize",
    "monomial_weight",
    "poly_add",
    "poly_constant",
    "poly_mul",
    "poly_scale",
    "poly_variable",
    "poly_zero",
    "quantization_hom_dims",
    "restrict_to_fixed",
    "shift",
    "strand_basis",
    "strand_cohomology_dim",
    "strand_differential",
    "window_lift",
    "window_lift_with_trace",
    "window_test_complex",
    "zero_complex",
]
