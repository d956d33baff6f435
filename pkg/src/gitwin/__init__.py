"""Exact tools for linear torus actions on affine space: stability
stratifications, variation fans and wall crossings, grade-restriction
windows, and window lifts of graded free complexes.

Everything computes in exact rational arithmetic; the only compiled piece
is an optional scan kernel with a pure Python fallback (see
``gitwin.oracle``), selected automatically at import time.
"""

from ._version import __version__
from .errors import (
    DimensionMismatchError,
    GitwinError,
    InputError,
    InternalError,
    PreconditionError,
)
from .gitcore import (
    STABLE,
    STRICTLY_SEMISTABLE,
    UNSTABLE,
    NumericalInvariant,
    Stratification,
    Stratum,
    SupportClassification,
    TorusActionProblem,
    effective_cone,
    kn_stratification,
    semistable_iff_in_cone,
    stratum_invariants,
)
from .gradedmod import (
    ChainMap,
    GradedFreeComplex,
    LiftResult,
    LiftStep,
    WeightedRing,
    complex_from_payload,
    complex_to_payload,
    finiteness_threshold,
    is_supported_at_origin,
    koszul_skyscraper,
    minimize,
    quantization_hom_dims,
    restrict_to_fixed,
    window_lift,
    window_lift_with_trace,
    window_test_complex,
)
from .oracle import brute_force_destabilizer, certified_entry_bound
from .polyhedra import Cone, InnerProduct, cone_contains
from .vgit import (
    CHAMBER_INTERIOR,
    ON_WALL,
    OUTSIDE_EFFECTIVE_CONE,
    VERDICT_EMBED_MINUS,
    VERDICT_EMBED_PLUS,
    VERDICT_EQUIVALENCE,
    VERDICT_INDETERMINATE,
    GitFan,
    Wall,
    WallCrossingReport,
    classify_linearization,
    git_fan,
    wall_crossing_report,
)
from .windows import (
    WindowCharacterSet,
    WindowMatch,
    WindowSpec,
    character_weight,
    enumerate_window_characters,
    match_windows_across_wall,
    window_contains_character,
)

__all__ = [
    "CHAMBER_INTERIOR",
    "ChainMap",
    "Cone",
    "DimensionMismatchError",
    "GitFan",
    "GitwinError",
    "GradedFreeComplex",
    "InnerProduct",
    "InputError",
    "InternalError",
    "LiftResult",
    "LiftStep",
    "NumericalInvariant",
    "ON_WALL",
    "OUTSIDE_EFFECTIVE_CONE",
    "PreconditionError",
    "STABLE",
    "STRICTLY_SEMISTABLE",
    "Stratification",
    "Stratum",
    "SupportClassification",
    "TorusActionProblem",
    "UNSTABLE",
    "VERDICT_EMBED_MINUS",
    "VERDICT_EMBED_PLUS",
    "VERDICT_EQUIVALENCE",
    "VERDICT_INDETERMINATE",
    "Wall",
    "WallCrossingReport",
    "WeightedRing",
    "WindowCharacterSet",
    "WindowMatch",
    "WindowSpec",
    "brute_force_destabilizer",
    "certified_entry_bound",
    "character_weight",
    "classify_linearization",
    "complex_from_payload",
    "complex_to_payload",
    "cone_contains",
    "effective_cone",
    "enumerate_window_characters",
    "finiteness_threshold",
    "git_fan",
    "is_supported_at_origin",
    "kn_stratification",
    "koszul_skyscraper",
    "match_windows_across_wall",
    "minimize",
    "quantization_hom_dims",
    "restrict_to_fixed",
    "semistable_iff_in_cone",
    "stratum_invariants",
    "wall_crossing_report",
    "window_contains_character",
    "window_lift",
    "window_lift_with_trace",
    "window_test_complex",
    "__version__",
]
