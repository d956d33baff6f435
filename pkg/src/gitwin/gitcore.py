"""Kempf--Ness stratification for linear torus actions on affine space.

A rank-k torus acts on affine n-space with integer weight vectors a_j on
the coordinates, linearized by a character chi.  Stability of a point
depends only on its coordinate support, so everything here is computed
per support: the optimal destabilizing one-parameter subgroup of each
unstable support comes from an exact quadratic program, and supports are
grouped by destabilizer into strata ordered by their numerical invariant.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from . import _linalg
from .errors import DimensionMismatchError, InputError, InternalError
from .polyhedra import (
    Cone,
    InnerProduct,
    QpOptimum,
    Vector,
    as_vector,
    cone_contains,
    dot,
    equality_constrained_minimum,
    primitive_direction,
    solve_linear_system,
)

Support = tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)

UNSTABLE = "unstable"
STABLE = "stable"
STRICTLY_SEMISTABLE = "strictly_semistable"


@dataclass(frozen=True)
class TorusActionProblem:
    """The full input datum: weight matrix, linearization, inner product."""

    rank: int
    dim: int
    weights: tuple[tuple[int, ...], ...]
    linearization: tuple[int, ...]
    inner_product: Optional[InnerProduct] = None

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise InputError("torus rank must be at least 1")
        if self.dim < 0:
            raise InputError("affine dimension must be nonnegative")
        weights = tuple(tuple(int(e) for e in row) for row in self.weights)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "linearization",
                           tuple(int(e) for e in self.linearization))
        if len(weights) != self.dim:
            raise DimensionMismatchError(
                f"expected {self.dim} weight vectors, got {len(weights)}"
            )
        for j, row in enumerate(weights):
            if len(row) != self.rank:
                raise DimensionMismatchError(
                    f"weight vector {j} has length {len(row)}, expected {self.rank}"
                )
        if len(self.linearization) != self.rank:
            raise DimensionMismatchError("linearization has wrong length")
        if self.inner_product is None:
            object.__setattr__(self, "inner_product", InnerProduct.identity(self.rank))
        elif self.inner_product.rank != self.rank:
            raise DimensionMismatchError("inner product rank does not match torus rank")

    def with_linearization(self, chi: Sequence[int]) -> "TorusActionProblem":
        return TorusActionProblem(self.rank, self.dim, self.weights,
                                  tuple(int(e) for e in chi), self.inner_product)

    def pairing(self, lam: Sequence, j: int) -> Fraction:
        """<lam, a_j> for coordinate j."""
        return dot(as_vector(lam), as_vector(self.weights[j]))

    def supports(self) -> Iterator[Support]:
        for size in range(self.dim + 1):
            yield from itertools.combinations(range(self.dim), size)


def normalize_support(problem: TorusActionProblem, support: Iterable[int]) -> Support:
    result = tuple(sorted(set(int(j) for j in support)))
    for j in result:
        if not 0 <= j < problem.dim:
            raise InputError(f"coordinate index {j} out of range 0..{problem.dim - 1}")
    return result


@functools.total_ordering
@dataclass(frozen=True, eq=False)
class NumericalInvariant:
    """mu = pairing/|lam| represented without irrational square roots.

    Ordering compares the sign of the pairing first and then
    pairing^2/norm_squared by exact cross multiplication; the single
    Fraction key pairing*|pairing|/norm_squared realizes both at once.
    """

    pairing: Fraction
    norm_squared: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairing", Fraction(self.pairing))
        object.__setattr__(self, "norm_squared", Fraction(self.norm_squared))
        if self.norm_squared <= 0:
            raise InputError("norm_squared must be positive")

    @property
    def key(self) -> Fraction:
        return self.pairing * abs(self.pairing) / self.norm_squared

    @property
    def mu_squared(self) -> Fraction:
        return self.pairing * self.pairing / self.norm_squared

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NumericalInvariant):
            return NotImplemented
        return self.key == other.key

    def __lt__(self, other: "NumericalInvariant") -> bool:
        return self.key < other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"NumericalInvariant(pairing={self.pairing}, norm_squared={self.norm_squared})"


@dataclass(frozen=True)
class SupportClassification:
    kind: str  # one of UNSTABLE, STABLE, STRICTLY_SEMISTABLE
    destabilizer: Optional[tuple[int, ...]] = None
    mu: Optional[NumericalInvariant] = None

    @property
    def is_semistable(self) -> bool:
        return self.kind != UNSTABLE


@dataclass(frozen=True)
class Stratum:
    """One Kempf--Ness stratum: a distinguished primitive 1-PS with its data.

    fixed_coords are the coordinates on which the 1-PS acts trivially
    (spanning the fixed locus Z), blade_coords those it does not flow away
    (spanning the blade Y); eta is the weight of the determinant of the
    conormal bundle, the width of the stratum's grade-restriction window.
    """

    destabilizer: tuple[int, ...]
    mu: NumericalInvariant
    fixed_coords: Support
    blade_coords: Support
    member_supports: tuple[Support, ...]
    eta: int
    omega_weight: int


@dataclass(frozen=True)
class Stratification:
    problem: TorusActionProblem
    strata: tuple[Stratum, ...]
    semistable_supports: tuple[Support, ...]
    strictly_semistable_supports: frozenset[Support]

    def is_strictly_semistable(self, support: Iterable[int]) -> bool:
        return normalize_support(self.problem, support) in self.strictly_semistable_supports

    @property
    def has_semistable_points(self) -> bool:
        return bool(self.semistable_supports)


class _KempfSolver:
    """Per-problem cache for the active-set QP shared across all supports.

    Candidate minimizers depend only on the subset of weight rows pinned to
    equality, so each subset is solved once and reused by every support.
    """

    def __init__(self, problem: TorusActionProblem):
        self.problem = problem
        self._chi = as_vector(problem.linearization)
        self._equality_row = [Fraction(-c) for c in problem.linearization]
        self._cache: dict[frozenset, Optional[Vector]] = {}

    def _candidate(self, subset: frozenset) -> Optional[Vector]:
        if subset not in self._cache:
            rows = [[Fraction(e) for e in self.problem.weights[j]] for j in sorted(subset)]
            rows.append(list(self._equality_row))
            rhs = [ZERO] * len(subset) + [ONE]
            self._cache[subset] = equality_constrained_minimum(
                self.problem.inner_product, rows, rhs
            )
        return self._cache[subset]

    def destabilizer(self, support: Support) -> Optional[tuple[tuple[int, ...], NumericalInvariant]]:
        problem = self.problem
        q = problem.inner_product
        weight_rows = [as_vector(problem.weights[j]) for j in support]
        best_vec: Optional[Vector] = None
        best_norm: Optional[Fraction] = None
        for size in range(0, min(len(support), problem.rank) + 1):
            for subset in itertools.combinations(support, size):
                candidate = self._candidate(frozenset(subset))
                if candidate is None:
                    continue
                if any(dot(row, candidate) < 0 for row in weight_rows):
                    continue
                norm = q.norm_squared(candidate)
                if (best_norm is None or norm < best_norm
                        or (norm == best_norm and candidate < best_vec)):
                    best_vec, best_norm = candidate, norm
        if best_vec is None:
            return None
        lam = primitive_direction(best_vec)
        pairing = -dot(as_vector(lam), self._chi)
        return lam, NumericalInvariant(pairing, q.norm_squared(as_vector(lam)))

    def has_neutral_direction(self, support: Support) -> bool:
        """Is there a nonzero lam with <lam, a_j> >= 0 on the support and
        <lam, chi> = 0?  (The witness of strict semistability.)"""
        problem = self.problem
        k = problem.rank
        equalities = []
        if any(c != 0 for c in problem.linearization):
            equalities.append((self._chi, ZERO))
        base = [(as_vector(problem.weights[j]), ZERO, False) for j in support]
        for i in range(k):
            for sign in (1, -1):
                pin = tuple(Fraction(sign) if t == i else ZERO for t in range(k))
                if solve_linear_system(equalities, base + [(pin, ONE, False)], k) is not None:
                    return True
        return False

    def classify(self, support: Support) -> SupportClassification:
        found = self.destabilizer(support)
        if found is not None:
            lam, mu = found
            return SupportClassification(UNSTABLE, lam, mu)
        if self.has_neutral_direction(support):
            return SupportClassification(STRICTLY_SEMISTABLE)
        span = _linalg.rank([[Fraction(e) for e in self.problem.weights[j]] for j in support])
        if span < self.problem.rank:
            # semistable and not strictly semistable forces a full span
            raise InternalError("semistable support with degenerate span and no neutral direction")
        return SupportClassification(STABLE)


def stratum_data_for_lambda(problem: TorusActionProblem, lam: Sequence[int]
                            ) -> tuple[Support, Support, int, int]:
    """(fixed_coords, blade_coords, eta, omega_weight) of a 1-PS."""
    pairings = [sum(l * a for l, a in zip(lam, problem.weights[j]))
                for j in range(problem.dim)]
    fixed = tuple(j for j, p in enumerate(pairings) if p == 0)
    blade = tuple(j for j, p in enumerate(pairings) if p >= 0)
    eta = sum(-p for p in pairings if p < 0)
    omega = -sum(pairings)
    return fixed, blade, eta, omega


def classify_support(problem: TorusActionProblem, support: Iterable[int]) -> SupportClassification:
    """Stable / strictly semistable / unstable (with its optimal destabilizer)."""
    return _KempfSolver(problem).classify(normalize_support(problem, support))


def optimal_destabilizer(problem: TorusActionProblem, support: Iterable[int]
                         ) -> Optional[tuple[tuple[int, ...], NumericalInvariant]]:
    """The unique primitive lam maximizing -<lam,chi>/|lam| over the support's
    feasible cone, or None when the support is semistable."""
    return _KempfSolver(problem).destabilizer(normalize_support(problem, support))


def kn_stratification(problem: TorusActionProblem) -> Stratification:
    """Classify all 2^n supports and group the unstable ones by their optimal
    primitive 1-PS, ordered by decreasing numerical invariant (ties broken by
    the 1-PS lexicographically).
    """
    solver = _KempfSolver(problem)
    groups: dict[tuple[int, ...], list[Support]] = {}
    invariants: dict[tuple[int, ...], NumericalInvariant] = {}
    semistable: list[Support] = []
    strict: set[Support] = set()
    for support in problem.supports():
        found = solver.destabilizer(support)
        if found is None:
            semistable.append(support)
            if solver.has_neutral_direction(support):
                strict.add(support)
        else:
            lam, mu = found
            groups.setdefault(lam, []).append(support)
            invariants[lam] = mu
    strata = []
    for lam, members in groups.items():
        fixed, blade, eta, omega = stratum_data_for_lambda(problem, lam)
        strata.append(Stratum(
            destabilizer=lam,
            mu=invariants[lam],
            fixed_coords=fixed,
            blade_coords=blade,
            member_supports=tuple(sorted(members)),
            eta=eta,
            omega_weight=omega,
        ))
    strata.sort(key=lambda s: (-s.mu.key, s.destabilizer))
    return Stratification(
        problem=problem,
        strata=tuple(strata),
        semistable_supports=tuple(sorted(semistable)),
        strictly_semistable_supports=frozenset(strict),
    )


def stratum_invariants(problem: TorusActionProblem, stratum: Stratum
                       ) -> tuple[int, int, NumericalInvariant]:
    """(eta, omega_weight, mu) recomputed from the stratum's 1-PS, after
    checking the stratum is consistent with this problem."""
    lam = stratum.destabilizer
    if len(lam) != problem.rank:
        raise InputError("stratum 1-PS rank does not match the problem")
    fixed, blade, eta, omega = stratum_data_for_lambda(problem, lam)
    pairing = -dot(as_vector(lam), as_vector(problem.linearization))
    mu = NumericalInvariant(pairing, problem.inner_product.norm_squared(as_vector(lam)))
    if (fixed != stratum.fixed_coords or blade != stratum.blade_coords
            or eta != stratum.eta or omega != stratum.omega_weight
            or mu.pairing != stratum.mu.pairing
            or mu.norm_squared != stratum.mu.norm_squared):
        raise InputError("stratum was not produced from this problem")
    return eta, omega, mu


def effective_cone(problem: TorusActionProblem) -> Cone:
    """The cone spanned by all coordinate weights (supports all semistable chi)."""
    return Cone(problem.weights, problem.rank)


def semistable_iff_in_cone(problem: TorusActionProblem, support: Iterable[int]) -> bool:
    """Direct cone-membership form of the semistability test (used as an
    independent cross-check of the QP route)."""
    support = normalize_support(problem, support)
    cone = Cone(tuple(problem.weights[j] for j in support), problem.rank)
    return bool(cone_contains(cone, as_vector(problem.linearization)))
