"""Chamber structure of the character space and wall-crossing analysis.

The stability condition of a linear torus action depends on the
linearization only through the arrangement of cones spanned by subsets of
the weights.  This module computes the resulting fan (chambers, walls,
effective cone), classifies characters against it, and produces
wall-crossing reports: the strata destabilized on either side of a wall,
whether they match up ("balanced"), and the derived-category verdict read
off from the canonical-bundle weights.
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import _linalg
from .errors import InputError, InternalError, PreconditionError
from .gitcore import (
    Stratification,
    Stratum,
    TorusActionProblem,
    _KempfSolver,
    effective_cone,
    kn_stratification,
)
from .polyhedra import (
    Cone,
    as_vector,
    cone_contains,
    dot,
    primitive_direction,
    solve_linear_system,
)

Vector = Tuple[int, ...]

CHAMBER_INTERIOR = "chamber_interior"
ON_WALL = "on_wall"
OUTSIDE_EFFECTIVE_CONE = "outside_effective_cone"

VERDICT_EQUIVALENCE = "equivalence"
VERDICT_EMBED_MINUS = "embed_minus_into_plus"
VERDICT_EMBED_PLUS = "embed_plus_into_minus"
VERDICT_INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class Wall:
    """A codimension-1 face shared by chambers (or bounding the fan).

    adjacent_chambers holds one index for boundary walls and two for
    interior walls; normal is the primitive defining hyperplane normal with
    canonical sign (first nonzero entry positive).
    """

    cone: Cone
    adjacent_chambers: Tuple[int, ...]
    normal: Vector


@dataclass(frozen=True)
class GitFan:
    effective_cone: Cone
    chambers: Tuple[Cone, ...]
    walls: Tuple[Wall, ...]
    normals: Tuple[Vector, ...]
    chamber_witnesses: Tuple[Vector, ...]


def candidate_wall_normals(problem: TorusActionProblem) -> Tuple[Vector, ...]:
    """Primitive normals of all hyperplanes spanned by weight subsets.

    Every wall of the fan lies on the span of some k-1 weights, so these
    hyperplanes suffice to refine the character space into constant-stability
    cells.  Normals are canonicalized (first nonzero entry positive) and
    deduplicated.
    """
    k = problem.rank
    found: List[Vector] = []
    for subset in itertools.combinations(range(problem.dim), k - 1):
        rows = [[Fraction(e) for e in problem.weights[j]] for j in subset]
        if _linalg.rank(rows) != k - 1:
            continue
        basis = _linalg.kernel(rows, ncols=k)
        if len(basis) != 1:  # pragma: no cover - rank check guarantees this
            raise InternalError("hyperplane kernel is not one-dimensional")
        normal = primitive_direction(basis[0])
        lead = next(v for v in normal if v != 0)
        if lead < 0:
            normal = tuple(-v for v in normal)
        if normal not in found:
            found.append(normal)
    return tuple(sorted(found))


def _sign_cells(
    normals: Sequence[Vector], k: int
) -> List[Tuple[Tuple[int, ...], Vector]]:
    """Full-dimensional cells of the hyperplane arrangement.

    Depth-first over sign vectors with feasibility pruning; each cell comes
    with a primitive integer interior witness.  Normalizing the strict
    inequalities to >= 1 is harmless for cones and keeps the witness off
    every hyperplane.
    """
    cells: List[Tuple[Tuple[int, ...], Vector]] = []

    def recurse(index: int, rows: List[tuple]) -> None:
        witness = solve_linear_system([], rows, k)
        if witness is None:
            return
        if index == len(normals):
            point = primitive_direction(witness) if any(witness) else tuple([0] * k)
            cells.append((tuple(r[2] for r in rows_signs), point))
            return
        normal = as_vector(normals[index])
        for sign in (1, -1):
            scaled = tuple(sign * v for v in normal)
            rows_signs.append((index, scaled, sign))
            recurse(index + 1, rows + [(scaled, Fraction(1), False)])
            rows_signs.pop()

    rows_signs: List[tuple] = []
    recurse(0, [])
    return cells


def _candidate_rays(normals: Sequence[Vector], k: int) -> List[Vector]:
    """Both orientations of every intersection of k-1 independent hyperplanes
    (the only possible extreme rays of arrangement cells)."""
    rays: List[Vector] = []
    for subset in itertools.combinations(range(len(normals)), k - 1):
        rows = [[Fraction(e) for e in normals[i]] for i in subset]
        if _linalg.rank(rows) != k - 1:
            continue
        basis = _linalg.kernel(rows, ncols=k)
        if len(basis) != 1:
            continue
        ray = primitive_direction(basis[0])
        for oriented in (ray, tuple(-v for v in ray)):
            if oriented not in rays:
                rays.append(oriented)
    return sorted(rays)


def _cell_cone(
    sigma: Sequence[int], normals: Sequence[Vector], rays: Sequence[Vector], k: int
) -> Cone:
    """Closure of a sign cell as a cone: feasible candidate rays that are
    extreme (tight on k-1 independent defining hyperplanes)."""
    generators = []
    for ray in rays:
        ray_vec = as_vector(ray)
        tight_rows = []
        feasible = True
        for sign, normal in zip(sigma, normals):
            value = dot(as_vector(normal), ray_vec)
            if value == 0:
                tight_rows.append([Fraction(e) for e in normal])
            elif sign * value < 0:
                feasible = False
                break
        if not feasible:
            continue
        if _linalg.rank(tight_rows) >= k - 1:
            generators.append(ray)
    return Cone(tuple(generators), k)


def classify_linearization(problem: TorusActionProblem) -> str:
    """Where the linearization sits relative to the fan, read off from the
    stability of supports rather than from chamber geometry."""
    solver = _KempfSolver(problem)
    full = tuple(range(problem.dim))
    if solver.destabilizer(full) is not None:
        # Destabilized full support kills every subset as well: X^ss is empty.
        return OUTSIDE_EFFECTIVE_CONE
    for support in problem.supports():
        if solver.destabilizer(support) is None and solver.has_neutral_direction(support):
            return ON_WALL
    return CHAMBER_INTERIOR


def git_fan(problem: TorusActionProblem) -> GitFan:
    """Chamber-and-wall decomposition of the character space.

    The candidate hyperplanes cut the space into sign cells, but a cell
    boundary is only a genuine wall when the set of semistable supports
    changes across it; cells where that set agrees carry literally the same
    quotient and are merged into one chamber.  (The merged region is convex:
    it is where a fixed family of support cones all contain the character.)
    A wall either separates two chambers -- there the flipping support is
    strictly semistable -- or bounds the effective region.
    """
    if not any(any(row) for row in problem.weights):
        raise InputError("all weights are zero: the fan is degenerate")
    k = problem.rank
    normals = candidate_wall_normals(problem)
    cells = _sign_cells(normals, k)
    rays = _candidate_rays(normals, k)

    witnesses: Dict[Tuple[int, ...], Vector] = {}
    profiles: Dict[Tuple[int, ...], frozenset] = {}
    for sigma, witness in cells:
        if not any(witness):
            continue
        placed = problem.with_linearization(witness)
        if classify_linearization(placed) != CHAMBER_INTERIOR:
            continue
        solver = _KempfSolver(placed)
        witnesses[sigma] = witness
        profiles[sigma] = frozenset(
            support
            for support in problem.supports()
            if solver.destabilizer(support) is None
        )

    facets: Dict[Tuple[int, ...], List[int]] = {}
    for sigma in witnesses:
        present = []
        for h, normal in enumerate(normals):
            equalities = [(as_vector(normal), Fraction(0))]
            inequalities = [
                (tuple(sign * v for v in as_vector(other)), Fraction(1), False)
                for g, (sign, other) in enumerate(zip(sigma, normals))
                if g != h
            ]
            if solve_linear_system(equalities, inequalities, k) is not None:
                present.append(h)
        facets[sigma] = present

    def flip(sigma: Tuple[int, ...], h: int) -> Tuple[int, ...]:
        return tuple(-s if g == h else s for g, s in enumerate(sigma))

    parent: Dict[Tuple[int, ...], Tuple[int, ...]] = {s: s for s in witnesses}

    def find(s: Tuple[int, ...]) -> Tuple[int, ...]:
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    for sigma in witnesses:
        for h in facets[sigma]:
            other = flip(sigma, h)
            if other in witnesses and profiles[sigma] == profiles[other]:
                ra, rb = find(sigma), find(other)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)

    groups: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = {}
    for sigma in witnesses:
        groups.setdefault(find(sigma), []).append(sigma)

    chamber_entries: List[Tuple[Cone, Vector, List[Tuple[int, ...]]]] = []
    for root in sorted(groups):
        members = sorted(groups[root])
        generators: List[Vector] = []
        for sigma in members:
            for g in _cell_cone(sigma, normals, rays, k).generators:
                if g not in generators:
                    generators.append(g)
        chamber_entries.append(
            (Cone(tuple(sorted(generators)), k), witnesses[members[0]], members)
        )
    chamber_entries.sort(key=lambda item: tuple(sorted(item[0].generators)))

    cell_to_chamber: Dict[Tuple[int, ...], int] = {}
    for index, (_, _, members) in enumerate(chamber_entries):
        for sigma in members:
            cell_to_chamber[sigma] = index

    wall_rays: Dict[Tuple[Tuple[int, ...], Vector], List[Vector]] = {}
    for sigma in witnesses:
        index = cell_to_chamber[sigma]
        for h in facets[sigma]:
            neighbor = cell_to_chamber.get(flip(sigma, h))
            if neighbor == index:
                continue  # semistable set unchanged: not a wall
            if neighbor is None:
                adjacency: Tuple[int, ...] = (index,)
            else:
                adjacency = (min(index, neighbor), max(index, neighbor))
            collected = wall_rays.setdefault((adjacency, normals[h]), [])
            normal_vec = as_vector(normals[h])
            for ray in rays:
                ray_vec = as_vector(ray)
                if dot(normal_vec, ray_vec) != 0:
                    continue
                if ray in collected:
                    continue
                if all(
                    g == h or sign * dot(as_vector(other), ray_vec) >= 0
                    for g, (sign, other) in enumerate(zip(sigma, normals))
                ):
                    collected.append(ray)

    walls = [
        Wall(Cone(tuple(sorted(generators)), k), adjacency, normal)
        for (adjacency, normal), generators in wall_rays.items()
    ]
    walls.sort(key=lambda w: (w.adjacent_chambers, w.normal))

    return GitFan(
        effective_cone=effective_cone(problem),
        chambers=tuple(c for c, _, _ in chamber_entries),
        walls=tuple(walls),
        normals=normals,
        chamber_witnesses=tuple(w for _, w, _ in chamber_entries),
    )


@dataclass(frozen=True)
class StratumMatch:
    """A plus-side flip stratum paired with its minus-side mirror."""

    plus_index: int
    minus_index: int
    eta_plus: int
    eta_minus: int
    omega_weight: int  # the plus side's canonical-bundle weight
    members_mirror: bool


@dataclass(frozen=True)
class WallCrossingReport:
    problem: TorusActionProblem  # linearized at the wall point
    direction: Vector
    epsilon_denominator: int
    plus_character: Vector
    minus_character: Vector
    plus_classification: str
    minus_classification: str
    plus_stratification: Optional[Stratification]
    minus_stratification: Optional[Stratification]
    plus_strata: Tuple[Stratum, ...]  # flip strata: members semistable at the wall
    minus_strata: Tuple[Stratum, ...]
    matches: Tuple[StratumMatch, ...]
    balanced: bool
    degenerate_side: Optional[str]  # "plus", "minus", "both", or None
    verdict: str
    cy_shortcut: bool


def _perturbation_denominator(
    normals: Sequence[Vector], chi0, direction
) -> int:
    """Smallest N with N*chi0 +- direction on the chi0 side of every
    hyperplane not through chi0 (so the perturbed characters stay in the two
    chambers adjacent to the wall)."""
    steps = []
    for normal in normals:
        at_wall = dot(as_vector(normal), chi0)
        along = dot(as_vector(normal), direction)
        if at_wall != 0 and along != 0:
            steps.append(abs(Fraction(at_wall, along)))
    if not steps:
        return 1
    tightest = min(steps)
    return int(1 / tightest) + 1


def _flip_strata(
    stratification: Stratification, wall_semistable: frozenset
) -> Tuple[Stratum, ...]:
    """Strata restricted to supports that are semistable at the wall (the
    locus destabilized by moving off the wall)."""
    flips = []
    for stratum in stratification.strata:
        members = tuple(
            m for m in stratum.member_supports if m in wall_semistable
        )
        if members:
            flips.append(dataclasses.replace(stratum, member_supports=members))
    return tuple(flips)


def wall_crossing_report(
    problem: TorusActionProblem, direction: Sequence[int]
) -> WallCrossingReport:
    """Analyze the crossing chi0 +- epsilon * direction at the problem's
    linearization chi0, which must lie on a single wall."""
    k = problem.rank
    direction = tuple(int(v) for v in direction)
    if len(direction) != k:
        raise InputError("direction has wrong length")
    if not any(direction):
        raise InputError("direction must be nonzero")
    chi0 = as_vector(problem.linearization)

    placement = classify_linearization(problem)
    if placement != ON_WALL:
        raise PreconditionError(
            f"linearization is not on a wall (classified {placement}); "
            "wall crossing needs a strictly semistable point"
        )

    normals = candidate_wall_normals(problem)
    vanishing = [n for n in normals if dot(as_vector(n), chi0) == 0]
    if not vanishing:
        raise PreconditionError(
            "no wall hyperplane passes through the linearization; the "
            "arrangement is degenerate and has no chambers to cross between"
        )
    vanish_rank = _linalg.rank([[Fraction(e) for e in n] for n in vanishing])
    if vanish_rank >= 2:
        raise PreconditionError(
            "wall point lies on a codimension >= 2 face; only single-wall "
            "crossings are supported"
        )
    wall_normal = vanishing[0]
    if dot(as_vector(wall_normal), as_vector(direction)) == 0:
        raise PreconditionError(
            "direction is tangent to the wall: the two sides are not "
            "separated and epsilon is ambiguous"
        )

    denominator = _perturbation_denominator(normals, chi0, as_vector(direction))
    chi_plus = tuple(
        denominator * int(c) + d for c, d in zip(problem.linearization, direction)
    )
    chi_minus = tuple(
        denominator * int(c) - d for c, d in zip(problem.linearization, direction)
    )

    wall_semistable = frozenset(kn_stratification(problem).semistable_supports)

    sides = {}
    for label, character in (("plus", chi_plus), ("minus", chi_minus)):
        shifted = problem.with_linearization(character)
        classification = classify_linearization(shifted)
        if classification == ON_WALL:
            raise InternalError(
                "perturbed character landed on a wall despite the certified "
                "denominator"
            )
        if classification == OUTSIDE_EFFECTIVE_CONE:
            sides[label] = (classification, None, ())
        else:
            stratification = kn_stratification(shifted)
            sides[label] = (
                classification,
                stratification,
                _flip_strata(stratification, wall_semistable),
            )

    plus_classification, plus_stratification, plus_strata = sides["plus"]
    minus_classification, minus_stratification, minus_strata = sides["minus"]

    if plus_classification == OUTSIDE_EFFECTIVE_CONE:
        degenerate_side: Optional[str] = (
            "both" if minus_classification == OUTSIDE_EFFECTIVE_CONE else "plus"
        )
    elif minus_classification == OUTSIDE_EFFECTIVE_CONE:
        degenerate_side = "minus"
    else:
        degenerate_side = None

    matches: List[StratumMatch] = []
    balanced = False
    if degenerate_side is None:
        minus_by_lambda = {
            stratum.destabilizer: i for i, stratum in enumerate(minus_strata)
        }
        matched_minus = set()
        fixed_agree = True
        for pi, plus_stratum in enumerate(plus_strata):
            mirror = tuple(-v for v in plus_stratum.destabilizer)
            mi = minus_by_lambda.get(mirror)
            if mi is None:
                continue
            matched_minus.add(mi)
            minus_stratum = minus_strata[mi]
            if plus_stratum.fixed_coords != minus_stratum.fixed_coords:
                fixed_agree = False
            if (
                plus_stratum.eta - minus_stratum.eta != plus_stratum.omega_weight
                or minus_stratum.omega_weight != -plus_stratum.omega_weight
            ):
                raise InternalError(
                    "width/canonical-weight identity failed on a matched pair"
                )
            matches.append(
                StratumMatch(
                    plus_index=pi,
                    minus_index=mi,
                    eta_plus=plus_stratum.eta,
                    eta_minus=minus_stratum.eta,
                    omega_weight=plus_stratum.omega_weight,
                    members_mirror=(
                        set(plus_stratum.member_supports)
                        == set(minus_stratum.member_supports)
                    ),
                )
            )
        balanced = (
            fixed_agree
            and len(matches) == len(plus_strata) == len(minus_strata)
            and len(matched_minus) == len(minus_strata)
        )

    cy_shortcut = all(
        sum(problem.weights[j][i] for j in range(problem.dim)) == 0
        for i in range(k)
    )

    if degenerate_side is not None or not balanced:
        verdict = VERDICT_INDETERMINATE
    else:
        omegas = [m.omega_weight for m in matches]
        if all(o == 0 for o in omegas):
            verdict = VERDICT_EQUIVALENCE
        elif all(o > 0 for o in omegas):
            verdict = VERDICT_EMBED_MINUS
        elif all(o < 0 for o in omegas):
            verdict = VERDICT_EMBED_PLUS
        else:
            verdict = VERDICT_INDETERMINATE

    if cy_shortcut and balanced and verdict != VERDICT_EQUIVALENCE:
        raise InternalError(
            "zero weight sum must force the equivalence verdict on every "
            "balanced wall"
        )

    return WallCrossingReport(
        problem=problem,
        direction=direction,
        epsilon_denominator=denominator,
        plus_character=chi_plus,
        minus_character=chi_minus,
        plus_classification=plus_classification,
        minus_classification=minus_classification,
        plus_stratification=plus_stratification,
        minus_stratification=minus_stratification,
        plus_strata=plus_strata,
        minus_strata=minus_strata,
        matches=tuple(matches),
        balanced=balanced,
        degenerate_side=degenerate_side,
        verdict=verdict,
        cy_shortcut=cy_shortcut,
    )
