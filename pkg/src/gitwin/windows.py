"""Grade-restriction windows: character boxes attached to a stratification.

Each unstable stratum contributes one integer pairing per character; a
window fixes a half-open integer range of admissible pairings per stratum,
and the admissible characters are those passing every test at once.  The
module enumerates those characters inside a search box, certifies when the
enumeration is complete (the admissible set is finite exactly when the
destabilizers span the character space), and transports windows across a
balanced wall crossing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil
from typing import List, Optional, Sequence, Tuple, Union

from . import _linalg
from .errors import InputError, PreconditionError
from .gitcore import Stratification, Stratum
from .vgit import (
    VERDICT_EMBED_MINUS,
    VERDICT_EMBED_PLUS,
    VERDICT_EQUIVALENCE,
    WallCrossingReport,
)

__all__ = [
    "WindowSpec",
    "WindowCharacterSet",
    "WindowMatch",
    "character_weight",
    "window_contains_character",
    "enumerate_window_characters",
    "match_windows_across_wall",
]

_BOX_BUDGET = 2_000_000

StrataLike = Union[Stratification, Sequence[Stratum]]


@dataclass(frozen=True)
class WindowSpec:
    """Low ends of the half-open admissible ranges, one per stratum (the
    width of stratum i's range is its own eta invariant)."""

    values: Tuple[int, ...]

    def __init__(self, values: Sequence[int]):
        object.__setattr__(self, "values", tuple(int(v) for v in values))

    @classmethod
    def broadcast(cls, value: int, count: int) -> "WindowSpec":
        return cls((int(value),) * count)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class WindowCharacterSet:
    """The characters of a window visible in the search box, plus the
    finiteness/completeness certificate for the enumeration.

    ``finite`` says whether the full admissible set is finite (destabilizers
    of full rank).  When finite, ``required_radius`` is a certified box
    radius containing the whole set, and ``complete`` records whether the
    search box already reached it.  When infinite, ``slab_basis`` spans the
    lattice directions along which membership is invariant.
    """

    window: WindowSpec
    box_radius: int
    characters: Tuple[Tuple[int, ...], ...]
    finite: bool
    complete: bool
    required_radius: Optional[int]
    slab_basis: Optional[Tuple[Tuple[int, ...], ...]]


@dataclass(frozen=True)
class WindowMatch:
    """Windows on the two sides of a balanced crossing selecting the same
    characters stratum by stratum."""

    plus_window: WindowSpec
    minus_window: WindowSpec
    relation: str


def _strata_of(strata: StrataLike) -> Tuple[Stratum, ...]:
    if isinstance(strata, Stratification):
        return tuple(strata.strata)
    return tuple(strata)


def _character_rank(strata: StrataLike, rank: Optional[int]) -> int:
    if isinstance(strata, Stratification):
        inferred = strata.problem.rank
        if rank is not None and rank != inferred:
            raise InputError(
                f"rank {rank} does not match the problem rank {inferred}"
            )
        return inferred
    rows = _strata_of(strata)
    if rank is not None:
        return rank
    if not rows:
        raise InputError("cannot infer the character rank from zero strata")
    return len(rows[0].destabilizer)


def character_weight(stratum: Stratum, character: Sequence[int]) -> int:
    """The integer pairing of a stratum's destabilizer with a character.

    This is the canonical lattice pairing; the inner product used to
    normalize numerical invariants plays no role here.
    """
    lam = stratum.destabilizer
    if len(lam) != len(character):
        raise InputError(
            f"character length {len(character)} does not match the "
            f"destabilizer length {len(lam)}"
        )
    return sum(int(a) * int(b) for a, b in zip(lam, character))


def window_contains_character(
    strata: StrataLike, window: WindowSpec, character: Sequence[int]
) -> bool:
    """Does the character pass every stratum's half-open range test?"""
    rows = _strata_of(strata)
    if len(window) != len(rows):
        raise InputError(
            f"window has {len(window)} entries for {len(rows)} strata"
        )
    for stratum, low in zip(rows, window.values):
        weight = character_weight(stratum, character)
        if not low <= weight < low + stratum.eta:
            return False
    return True


def _independent_rows(
    rows: List[List[Fraction]], rank: int
) -> Optional[List[int]]:
    chosen: List[int] = []
    for i in range(len(rows)):
        trial = chosen + [i]
        if _linalg.rank([rows[j] for j in trial]) == len(trial):
            chosen.append(i)
            if len(chosen) == rank:
                return chosen
    return None


def _required_radius(
    strata: Tuple[Stratum, ...], window: WindowSpec, row_indices: List[int]
) -> int:
    """Certified box radius: the admissible set lies in the closed polytope
    cut out by the chosen independent pairings, whose vertices are the
    solves against the corner values; convexity bounds every solution by
    the worst corner."""
    k = len(row_indices)
    corners_per_row = []
    for i in row_indices:
        low = window.values[i]
        corners_per_row.append((Fraction(low), Fraction(low + strata[i].eta)))
    matrix = [
        [Fraction(v) for v in strata[i].destabilizer] for i in row_indices
    ]
    radius = 0
    for corner in product(*corners_per_row):
        solution = _linalg.solve(matrix, list(corner))
        if solution is None:  # pragma: no cover - rows are independent
            raise InputError("degenerate corner solve for independent rows")
        radius = max(radius, max(ceil(abs(x)) for x in solution))
    return radius


def enumerate_window_characters(
    strata: StrataLike,
    window: WindowSpec,
    box_radius: int = 8,
    rank: Optional[int] = None,
) -> WindowCharacterSet:
    """All admissible characters in the box [-box_radius, box_radius]^k,
    in lexicographic order, with the finiteness/completeness certificate."""
    rows = _strata_of(strata)
    k = _character_rank(strata, rank)
    if len(window) != len(rows):
        raise InputError(
            f"window has {len(window)} entries for {len(rows)} strata"
        )
    if box_radius < 0:
        raise InputError("the box radius must be nonnegative")
    if (2 * box_radius + 1) ** max(k, 1) > _BOX_BUDGET:
        raise InputError(
            "character box too large to scan exactly; lower the radius"
        )

    if any(s.eta == 0 for s in rows):
        # Some stratum admits no pairing at all: the window is empty, which
        # is finite and trivially complete at any radius.
        return WindowCharacterSet(
            window=window,
            box_radius=box_radius,
            characters=(),
            finite=True,
            complete=True,
            required_radius=0,
            slab_basis=None,
        )

    lam_rows = [[Fraction(v) for v in s.destabilizer] for s in rows]
    finite = bool(rows) and _linalg.rank(lam_rows) == k and k > 0
    if k == 0:
        # A trivial torus has a single character, vacuously admissible.
        return WindowCharacterSet(
            window=window,
            box_radius=box_radius,
            characters=((),),
            finite=True,
            complete=True,
            required_radius=0,
            slab_basis=None,
        )

    characters = tuple(
        chi
        for chi in product(range(-box_radius, box_radius + 1), repeat=k)
        if window_contains_character(rows, window, chi)
    )

    if finite:
        row_indices = _independent_rows(lam_rows, k)
        if row_indices is None:  # pragma: no cover - contradicts the rank
            raise InputError("destabilizer rows lost rank unexpectedly")
        needed = _required_radius(rows, window, row_indices)
        return WindowCharacterSet(
            window=window,
            box_radius=box_radius,
            characters=characters,
            finite=True,
            complete=box_radius >= needed,
            required_radius=needed,
            slab_basis=None,
        )

    int_rows = [[int(v) for v in s.destabilizer] for s in rows]
    slab = _linalg.integer_kernel(int_rows, ncols=k)
    return WindowCharacterSet(
        window=window,
        box_radius=box_radius,
        characters=characters,
        finite=False,
        complete=False,
        required_radius=None,
        slab_basis=tuple(tuple(v) for v in slab),
    )


def match_windows_across_wall(
    report: WallCrossingReport, plus_window: WindowSpec
) -> Optional[WindowMatch]:
    """Transport a window across a balanced crossing.

    Matched strata have opposite destabilizers, so a character pairing that
    lands in [w, w + eta_plus) on one side lands in (-w - eta_plus, -w] on
    the other; aligning the low ends gives the transported window
    w_minus = -w_plus - eta_minus + 1 per matched stratum.  With equal
    widths the two windows select exactly the same characters; unequal
    widths give one-sided containment, reported in ``relation``.

    Returns None when one side of the crossing left the effective cone (no
    comparison to transport), and refuses unbalanced crossings, where no
    stratumwise transport exists.
    """
    if report.degenerate_side is not None:
        return None
    if not report.balanced:
        raise PreconditionError(
            "window transport needs a balanced wall crossing"
        )
    plus_count = len(report.plus_strata)
    if len(plus_window) != plus_count:
        raise InputError(
            f"window has {len(plus_window)} entries for {plus_count} "
            "strata on the plus side"
        )
    minus_values = [0] * len(report.minus_strata)
    comparisons = []
    for match in report.matches:
        low = plus_window.values[match.plus_index]
        minus_values[match.minus_index] = -low - match.eta_minus + 1
        comparisons.append((match.eta_plus, match.eta_minus))

    if all(ep == em for ep, em in comparisons):
        relation = VERDICT_EQUIVALENCE
    elif all(em <= ep for ep, em in comparisons):
        relation = VERDICT_EMBED_MINUS
    elif all(ep <= em for ep, em in comparisons):
        relation = VERDICT_EMBED_PLUS
    else:
        relation = "mixed"
    return WindowMatch(
        plus_window=plus_window,
        minus_window=WindowSpec(minus_values),
        relation=relation,
    )
