"""Result payload builders: one JSON-serializable dict per computation.

Every CLI subcommand renders exactly one of these payloads, wrapped in a
small envelope stamping the command name, package version, and a digest of
the canonicalized input, so identical inputs always produce byte-identical
reports.  All scalars are integers, booleans, strings, or exact fraction
strings; nothing here ever emits a float.
"""

from __future__ import annotations

from typing import Optional, Sequence

from ._version import __version__
from .gitcore import Stratification, Stratum
from .gradedmod.complexes import GradedFreeComplex, window_test_complex
from .gradedmod.io import complex_to_payload
from .gradedmod.lift import LiftResult
from .gradedmod.quantize import quantization_hom_dims
from .gradedmod.ring import WeightedRing
from .serialize import fraction_repr, payload_digest
from .vgit import GitFan, WallCrossingReport
from .windows import WindowCharacterSet

__all__ = [
    "stratum_payload",
    "stratification_payload",
    "fan_payload",
    "wall_crossing_payload",
    "window_set_payload",
    "lift_payload",
    "quantize_payload",
    "build_report",
]


def stratum_payload(stratum: Stratum) -> dict:
    return {
        "destabilizer": [int(v) for v in stratum.destabilizer],
        "mu_squared": fraction_repr(stratum.mu.mu_squared),
        "fixed_coords": [int(v) for v in stratum.fixed_coords],
        "blade_coords": [int(v) for v in stratum.blade_coords],
        "member_supports": len(stratum.member_supports),
        "eta": int(stratum.eta),
        "omega_weight": int(stratum.omega_weight),
    }


def stratification_payload(stratification: Stratification) -> dict:
    strata = [stratum_payload(s) for s in stratification.strata]
    if not strata:
        semistable = "all"
    else:
        semistable = {
            "count": len(stratification.semistable_supports),
            "strictly_semistable": len(
                stratification.strictly_semistable_supports
            ),
        }
    return {"strata": strata, "semistable": semistable}


def _vector_payload(vector: Sequence) -> list:
    return [int(v) for v in vector]


def fan_payload(fan: GitFan) -> dict:
    return {
        "effective_generators": [
            _vector_payload(g) for g in fan.effective_cone.generators
        ],
        "normals": [_vector_payload(n) for n in fan.normals],
        "chambers": [
            {
                "index": i,
                "generators": [_vector_payload(g) for g in chamber.generators],
                "witness": _vector_payload(fan.chamber_witnesses[i]),
            }
            for i, chamber in enumerate(fan.chambers)
        ],
        "walls": [
            {
                "normal": _vector_payload(wall.normal),
                "adjacent_chambers": [int(i) for i in wall.adjacent_chambers],
                "generators": [_vector_payload(g) for g in wall.cone.generators],
            }
            for wall in fan.walls
        ],
    }


def wall_crossing_payload(report: WallCrossingReport) -> dict:
    return {
        "direction": _vector_payload(report.direction),
        "epsilon_denominator": int(report.epsilon_denominator),
        "plus_character": _vector_payload(report.plus_character),
        "minus_character": _vector_payload(report.minus_character),
        "plus_classification": report.plus_classification,
        "minus_classification": report.minus_classification,
        "degenerate_side": report.degenerate_side,
        "balanced": report.balanced,
        "verdict": report.verdict,
        "calabi_yau": report.cy_shortcut,
        "matches": [
            {
                "plus_index": m.plus_index,
                "minus_index": m.minus_index,
                "eta_plus": m.eta_plus,
                "eta_minus": m.eta_minus,
                "omega_weight": m.omega_weight,
                "members_mirror": m.members_mirror,
            }
            for m in report.matches
        ],
        "plus_strata": [stratum_payload(s) for s in report.plus_strata],
        "minus_strata": [stratum_payload(s) for s in report.minus_strata],
    }


def window_set_payload(result: WindowCharacterSet) -> dict:
    return {
        "window": [int(v) for v in result.window.values],
        "box_radius": result.box_radius,
        "characters": [_vector_payload(c) for c in result.characters],
        "count_in_box": len(result.characters),
        "finite": result.finite,
        "complete": result.complete,
        "required_radius": result.required_radius,
        "slab_basis": None
        if result.slab_basis is None
        else [_vector_payload(v) for v in result.slab_basis],
    }


def _profile_payload(F: GradedFreeComplex) -> dict:
    return {str(d): sorted(F.weights(d)) for d in F.degrees()}


def lift_payload(
    original: GradedFreeComplex,
    result: LiftResult,
    window_low: int,
    strategy: str,
) -> dict:
    in_window, offending = window_test_complex(result.complex, window_low)
    return {
        "window_low": int(window_low),
        "eta": int(result.complex.ring.eta),
        "strategy": strategy,
        "input_profile": _profile_payload(original),
        "output_profile": _profile_payload(result.complex),
        "complex": complex_to_payload(result.complex),
        "steps": [
            {
                "side": step.side,
                "weight": int(step.weight),
                "block_total_rank": step.block.total_rank(),
            }
            for step in result.steps
        ],
        "iterations": result.iterations,
        "window_ok": in_window,
        "offending_weights": [int(w) for w in offending],
    }


def quantize_payload(ring: WeightedRing, max_difference: int) -> dict:
    table = []
    all_agree = True
    for delta in range(max_difference + 1):
        equivariant, quotient = quantization_hom_dims(ring, 0, delta)
        agree = equivariant == quotient
        all_agree = all_agree and agree
        table.append(
            {
                "difference": delta,
                "equivariant": equivariant,
                "quotient": quotient,
                "agree": agree,
            }
        )
    return {
        "ring_weights": [int(c) for c in ring.weights],
        "table": table,
        "all_agree": all_agree,
    }


def build_report(command: str, input_payload, result_payload) -> dict:
    return {
        "command": command,
        "input_digest": payload_digest(input_payload),
        "version": __version__,
        "result": result_payload,
    }
