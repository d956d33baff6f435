"""Window lifts: replace a complex by a window-compatible representative.

Two complexes that differ by a cone on an origin-supported complex become
isomorphic after restricting away the origin, so coning off Koszul blocks
changes nothing on the quotient geometry while it reshapes the weight
profile.  The lift repeats two elementary moves until every fixed-point
weight lies in the half-open window [w, w + eta):

* raise-low: if the lowest weight a sits below the window, map the complex
  onto Koszul resolutions of the weight-a skyscrapers (one block per
  cohomological degree that carries weight-a generators, anchored by the
  identity on those generators), and replace the complex by the shifted
  mapping cone.  The weight-a generators cancel against the Koszul socles,
  every surviving block generator weighs at least a + 1 and at most
  a + eta < w + eta, so the lowest weight strictly rises and no new
  too-high weights appear.

* lower-high: the mirror move, executed by dualizing (an exact involution
  that negates weights), running raise-low against the reflected window,
  and dualizing back.

Each move is recorded with the origin-supported block it coned off, so a
lift comes with step-by-step support certificates for the comparison cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Optional, Tuple

from .. import _linalg
from ..errors import InputError, InternalError
from .complexes import (
    ChainMap,
    GradedFreeComplex,
    cone_of_chain_map,
    direct_sum,
    dual,
    minimize,
    shift,
)
from .koszul import koszul_skyscraper
from .ring import Monomial, Polynomial, exponents_of_weight

__all__ = ["LiftStep", "LiftResult", "window_lift", "window_lift_with_trace"]

RAISE_LOW = "raise_low"
LOWER_HIGH = "lower_high"

_STRATEGIES = ("low_first", "high_first")


@dataclass(frozen=True)
class LiftStep:
    """One cone-off move: which extreme weight was removed, from which side,
    and the origin-supported block that was coned off (always recorded on
    the primal side, so its support can be certified directly)."""

    side: str
    weight: int
    block: GradedFreeComplex


@dataclass(frozen=True)
class LiftResult:
    complex: GradedFreeComplex
    steps: Tuple[LiftStep, ...]
    iterations: int


def _extension_chain_map(
    source: GradedFreeComplex,
    block: GradedFreeComplex,
    anchors: Dict[Tuple[int, int, int], Fraction],
) -> ChainMap:
    """The chain map source -> block with the given entries pinned,
    all remaining entries solved exactly from the commutation equations.

    The pinned entries are constants (weight-0 positions).  A solution
    exists whenever the block's socle weights sit at the bottom of a
    minimized source: every obstruction lives in a strand the Koszul block
    resolves, so an inconsistent system means an internal invariant broke.
    """
    ring = source.ring

    unknowns: List[Tuple[int, int, int, Monomial]] = []
    position: Dict[Tuple[int, int, int, Monomial], int] = {}
    degrees = sorted(set(source.terms) & set(block.terms))
    for d in degrees:
        for r, bw in enumerate(block.weights(d)):
            for c, sw in enumerate(source.weights(d)):
                if (d, r, c) in anchors:
                    continue
                for expo in exponents_of_weight(ring, sw - bw):
                    key = (d, r, c, expo)
                    position[key] = len(unknowns)
                    unknowns.append(key)

    rows_by_eq: Dict[Tuple[int, int, int, Monomial], Dict[int, Fraction]] = {}
    rhs_by_eq: Dict[Tuple[int, int, int, Monomial], Fraction] = {}

    def add_unknown(eq_key, unknown_key, coeff: Fraction) -> None:
        idx = position.get(unknown_key)
        if idx is None:
            return
        row = rows_by_eq.setdefault(eq_key, {})
        row[idx] = row.get(idx, Fraction(0)) + coeff

    def add_known(eq_key, value: Fraction) -> None:
        rhs_by_eq[eq_key] = rhs_by_eq.get(eq_key, Fraction(0)) - value
        rows_by_eq.setdefault(eq_key, {})

    all_degrees = sorted(set(source.terms) | set(block.terms))
    for d in all_degrees:
        d_block = block.differential(d)
        d_source = source.differential(d)
        for r in range(block.rank(d + 1)):
            for c in range(source.rank(d)):
                # (d_B phi_d - phi_{d+1} d_S)[r][c] = 0, split per monomial.
                for s in range(block.rank(d)):
                    entry = d_block[r][s]
                    if not entry:
                        continue
                    anchor = anchors.get((d, s, c))
                    if anchor is not None:
                        for mono, coeff in entry.items():
                            add_known((d, r, c, mono), coeff * anchor)
                        continue
                    sw = source.weights(d)[c]
                    bw = block.weights(d)[s]
                    for expo in exponents_of_weight(ring, sw - bw):
                        for mono, coeff in entry.items():
                            total = tuple(a + b for a, b in zip(mono, expo))
                            add_unknown((d, r, c, total), (d, s, c, expo), coeff)
                for t in range(source.rank(d + 1)):
                    entry = d_source[t][c]
                    if not entry:
                        continue
                    anchor = anchors.get((d + 1, r, t))
                    if anchor is not None:
                        for mono, coeff in entry.items():
                            add_known((d, r, c, mono), -coeff * anchor)
                        continue
                    sw = source.weights(d + 1)[t]
                    bw = block.weights(d + 1)[r]
                    for expo in exponents_of_weight(ring, sw - bw):
                        for mono, coeff in entry.items():
                            total = tuple(a + b for a, b in zip(mono, expo))
                            add_unknown(
                                (d, r, c, total), (d + 1, r, t, expo), -coeff
                            )

    eq_keys = sorted(set(rows_by_eq) | set(rhs_by_eq))
    matrix = []
    rhs = []
    for key in eq_keys:
        row = [Fraction(0)] * len(unknowns)
        for idx, coeff in rows_by_eq.get(key, {}).items():
            row[idx] = coeff
        matrix.append(row)
        rhs.append(rhs_by_eq.get(key, Fraction(0)))
    if eq_keys:
        solution = _linalg.solve(matrix, rhs)
    else:
        # No commutation constraints at all: every entry is free, take zero.
        solution = [Fraction(0)] * len(unknowns)
    if solution is None:
        raise InternalError(
            "cone-off obstruction did not vanish; the complex violates the "
            "minimality invariant of the lift loop"
        )

    components: Dict[int, List[List[Polynomial]]] = {}
    for d in degrees:
        components[d] = [
            [dict() for _ in range(source.rank(d))]
            for _ in range(block.rank(d))
        ]
    for (d, r, c), value in anchors.items():
        components[d][r][c] = {ring.zero_exponent(): value}
    for key, idx in position.items():
        coeff = solution[idx]
        if coeff == 0:
            continue
        d, r, c, expo = key
        entry = components[d][r][c]
        entry[expo] = entry.get(expo, Fraction(0)) + coeff

    try:
        return ChainMap(source, block, components)
    except InputError as exc:  # pragma: no cover - guards an internal bug
        raise InternalError(f"solved cone-off map failed validation: {exc}")


def _raise_lowest(F: GradedFreeComplex) -> Tuple[GradedFreeComplex, LiftStep]:
    """Cone off the lowest-weight part of a minimized complex.

    Returns the minimized replacement together with the recorded step; the
    replacement's lowest weight is strictly larger, which is asserted.
    """
    ring = F.ring
    low = F.min_weight()
    anchor_degrees = [
        d for d in F.degrees() if any(wt == low for wt in F.weights(d))
    ]
    pieces = []
    for d in anchor_degrees:
        multiplicity = sum(1 for wt in F.weights(d) if wt == low)
        pieces.append(shift(koszul_skyscraper(ring, low, multiplicity), -d))
    block = reduce(direct_sum, pieces)

    anchors: Dict[Tuple[int, int, int], Fraction] = {}
    for i, d in enumerate(anchor_degrees):
        offset = sum(pieces[j].rank(d) for j in range(i))
        socle_rows = range(offset, offset + pieces[i].rank(d))
        low_columns = [
            c for c, wt in enumerate(F.weights(d)) if wt == low
        ]
        for row, col in zip(socle_rows, low_columns):
            anchors[(d, row, col)] = Fraction(1)

    phi = _extension_chain_map(F, block, anchors)
    replacement = minimize(shift(cone_of_chain_map(phi), -1))
    if not replacement.is_zero and replacement.min_weight() <= low:
        raise InternalError("cone-off failed to raise the lowest weight")
    return replacement, LiftStep(RAISE_LOW, low, block)


def _lower_highest(F: GradedFreeComplex) -> Tuple[GradedFreeComplex, LiftStep]:
    """The mirror move: cone an origin-supported block into the complex to
    remove its highest weight, implemented as raise-low on the dual."""
    high = F.max_weight()
    reflected, dual_step = _raise_lowest(dual(F))
    replacement = dual(reflected)
    if not replacement.is_zero and replacement.max_weight() >= high:
        raise InternalError("cone-off failed to lower the highest weight")
    return replacement, LiftStep(LOWER_HIGH, high, dual(dual_step.block))


def window_lift_with_trace(
    F: GradedFreeComplex, window_low: int, strategy: str = "low_first"
) -> LiftResult:
    """Lift F to a complex whose fixed-point weights all lie in the window
    [window_low, window_low + eta), recording every cone-off step.

    ``strategy`` picks which violation to clear first when both ends stick
    out ("low_first" or "high_first"); the results are canonically
    isomorphic either way, which the test suite checks by cancelling one
    against the other.
    """
    if strategy not in _STRATEGIES:
        raise InputError(
            f"unknown lift strategy {strategy!r}; choose from {_STRATEGIES}"
        )
    ring = F.ring
    if ring.n < 1:
        raise InputError("window lifts need at least one variable")
    eta = ring.eta
    window_high = window_low + eta - 1  # inclusive top of the window

    result = minimize(F)
    span = 0
    if not result.is_zero:
        span = result.max_weight() - result.min_weight()
    step_budget = span + eta + 2

    steps: List[LiftStep] = []
    iterations = 0
    while not result.is_zero:
        too_low = result.min_weight() < window_low
        too_high = result.max_weight() > window_high
        if not too_low and not too_high:
            break
        iterations += 1
        if iterations > step_budget:
            raise InternalError(
                "window lift exceeded its certified step budget; the "
                "monotonicity argument for termination has been violated"
            )
        if strategy == "low_first":
            raise_side = too_low
        else:
            raise_side = too_low and not too_high
        if raise_side:
            result, step = _raise_lowest(result)
        else:
            result, step = _lower_highest(result)
        steps.append(step)
    return LiftResult(result, tuple(steps), iterations)


def window_lift(
    F: GradedFreeComplex, window_low: int, strategy: str = "low_first"
) -> GradedFreeComplex:
    """The window-compatible representative of F; see
    :func:`window_lift_with_trace` for the certified trace."""
    return window_lift_with_trace(F, window_low, strategy).complex
