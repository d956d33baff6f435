"""Exact rational convex geometry.

Cone membership with certificates, linear feasibility with witnesses via
Fourier--Motzkin elimination, and norm minimization over polyhedra by
exhaustive active-set enumeration.  This is the engine behind the
Hilbert--Mumford and Kempf computations; every number is a Fraction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import _linalg
from .errors import DimensionMismatchError, InputError, InternalError

Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_vector(entries: Iterable) -> Vector:
    return tuple(Fraction(e) for e in entries)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatchError(f"vector lengths differ: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), ZERO)


def primitive_direction(v: Sequence) -> tuple[int, ...]:
    """The unique primitive integer vector on the ray through v (gcd 1, same direction)."""
    vec = as_vector(v)
    if all(e == 0 for e in vec):
        raise InputError("zero vector spans no ray")
    ints = _linalg.clear_denominators(vec)
    g = _linalg.content(ints)
    return tuple(e // g for e in ints)


# ---------------------------------------------------------------------------
# inner products
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InnerProduct:
    """A symmetric positive definite rational form on the cocharacter lattice."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        k = len(self.matrix)
        mat = tuple(as_vector(row) for row in self.matrix)
        object.__setattr__(self, "matrix", mat)
        for row in mat:
            if len(row) != k:
                raise DimensionMismatchError("inner product matrix must be square")
        for i in range(k):
            for j in range(i):
                if mat[i][j] != mat[j][i]:
                    raise InputError("inner product matrix must be symmetric")
        # Sylvester's criterion, exact: all leading principal minors positive.
        for i in range(1, k + 1):
            minor = _linalg.det([list(row[:i]) for row in mat[:i]])
            if minor <= 0:
                raise InputError(
                    f"inner product is not positive definite (leading minor {i} is {minor})"
                )

    @staticmethod
    def identity(k: int) -> "InnerProduct":
        return InnerProduct(tuple(
            tuple(ONE if i == j else ZERO for j in range(k)) for i in range(k)
        ))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def pairing(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        if len(u) != self.rank or len(v) != self.rank:
            raise DimensionMismatchError("vector rank does not match inner product rank")
        return sum((u[i] * dot(self.matrix[i], v) for i in range(self.rank)), ZERO)

    def norm_squared(self, v: Sequence[Fraction]) -> Fraction:
        return self.pairing(v, v)


# ---------------------------------------------------------------------------
# linear feasibility: Fourier--Motzkin with witness extraction
# ---------------------------------------------------------------------------

# An inequality row is (coefficients, rhs, strict), meaning <a, x> >= rhs,
# or <a, x> > rhs when strict.  An equality row is (coefficients, rhs).


def _normalize_row(coeffs: tuple[Fraction, ...], rhs: Fraction, strict: bool):
    lead = next((c for c in coeffs if c != 0), None)
    if lead is None:
        return coeffs, rhs, strict
    scale = ONE / abs(lead)
    return tuple(c * scale for c in coeffs), rhs * scale, strict


def solve_linear_system(
    equalities: Sequence[tuple[Sequence, Fraction]],
    inequalities: Sequence[tuple[Sequence, Fraction, bool]],
    num_vars: int,
) -> Optional[Vector]:
    """An exact rational point satisfying all rows, or None if infeasible."""
    eq_rows = [(as_vector(a), Fraction(b)) for a, b in equalities]
    rows = [(as_vector(a), Fraction(b), bool(s)) for a, b, s in inequalities]
    for a, _b in eq_rows:
        if len(a) != num_vars:
            raise DimensionMismatchError("equality row has wrong length")
    for a, _b, _s in rows:
        if len(a) != num_vars:
            raise DimensionMismatchError("inequality row has wrong length")

    # Eliminate equalities by substitution, remembering how to undo it.
    substitutions: list[tuple[int, Vector, Fraction]] = []  # (var, coeffs, const)
    while eq_rows:
        a, b = eq_rows.pop()
        j = next((i for i in range(num_vars - 1, -1, -1) if a[i] != 0), None)
        if j is None:
            if b != 0:
                return None
            continue
        # x_j = (b - sum_{i != j} a_i x_i) / a_j
        inv = ONE / a[j]
        expr = tuple(-a[i] * inv if i != j else ZERO for i in range(num_vars))
        const = b * inv
        substitutions.append((j, expr, const))

        def substitute(coeffs: Vector, rhs: Fraction) -> tuple[Vector, Fraction]:
            cj = coeffs[j]
            if cj == 0:
                return coeffs, rhs
            new = tuple(coeffs[i] + cj * expr[i] if i != j else ZERO
                        for i in range(num_vars))
            return new, rhs - cj * const

        eq_rows = [substitute(c, r) for c, r in eq_rows]
        rows = [(*substitute(c, r), s) for c, r, s in rows]

    eliminated = {j for j, _e, _c in substitutions}
    free_vars = [i for i in range(num_vars) if i not in eliminated]

    # Fourier--Motzkin elimination over the remaining variables, last first.
    bounds_per_var: list[tuple[int, list, list]] = []  # (var, lowers, uppers)
    for var in reversed(free_vars):
        lowers, uppers, passed = [], [], []
        for coeffs, rhs, strict in rows:
            c = coeffs[var]
            if c == 0:
                passed.append((coeffs, rhs, strict))
            elif c > 0:
                # x_var >= (rhs - rest) / c
                lowers.append((coeffs, rhs, strict, c))
            else:
                uppers.append((coeffs, rhs, strict, c))
        combined: dict = {}
        for (lc, lb, ls, lcoef), (uc, ub, us, ucoef) in itertools.product(lowers, uppers):
            # lcoef > 0 > ucoef: eliminate var from lcoef-row/ucoef-row pair
            scale_l, scale_u = -ucoef, lcoef
            coeffs = tuple(scale_l * a + scale_u * b for a, b in zip(lc, uc))
            rhs = scale_l * lb + scale_u * ub
            strict = ls or us
            coeffs, rhs, strict = _normalize_row(coeffs, rhs, strict)
            key = (coeffs, rhs)
            combined[key] = combined.get(key, False) or strict
        new_rows = list(passed)
        for (coeffs, rhs), strict in combined.items():
            if all(c == 0 for c in coeffs):
                if rhs > 0 or (strict and rhs == 0):
                    return None
                continue
            new_rows.append((coeffs, rhs, strict))
        bounds_per_var.append((var, lowers, uppers))
        rows = new_rows

    for coeffs, rhs, strict in rows:
        if any(coeffs[i] != 0 for i in free_vars):
            raise InternalError("Fourier-Motzkin left an uneliminated variable")
        if rhs > 0 or (strict and rhs == 0):
            return None

    # Back-substitute a witness.
    x: list[Fraction] = [ZERO] * num_vars
    for var, lowers, uppers in reversed(bounds_per_var):
        lo: Optional[tuple[Fraction, bool]] = None
        hi: Optional[tuple[Fraction, bool]] = None
        for coeffs, rhs, strict, c in lowers:
            rest = sum((coeffs[i] * x[i] for i in range(num_vars) if i != var), ZERO)
            bound = (rhs - rest) / c
            if lo is None or bound > lo[0] or (bound == lo[0] and strict):
                lo = (bound, strict)
        for coeffs, rhs, strict, c in uppers:
            rest = sum((coeffs[i] * x[i] for i in range(num_vars) if i != var), ZERO)
            bound = (rhs - rest) / c  # c < 0 flips the inequality: upper bound
            if hi is None or bound < hi[0] or (bound == hi[0] and strict):
                hi = (bound, strict)
        if lo is None and hi is None:
            x[var] = ZERO
        elif lo is None:
            x[var] = hi[0] - 1
        elif hi is None:
            x[var] = lo[0] + 1
        else:
            if lo[0] > hi[0] or (lo[0] == hi[0] and (lo[1] or hi[1])):
                raise InternalError("empty witness interval after feasible elimination")
            x[var] = lo[0] if lo[0] == hi[0] else (lo[0] + hi[0]) / 2
    for j, expr, const in reversed(substitutions):
        x[j] = sum((expr[i] * x[i] for i in range(num_vars)), const)
    return tuple(x)


# ---------------------------------------------------------------------------
# cones
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConeMembership:
    contains: bool
    # nonnegative combination of the generators reconstructing the point
    coefficients: Optional[tuple[Fraction, ...]]
    # functional nonnegative on all generators and negative on the point
    separator: Optional[tuple[int, ...]]

    def __bool__(self) -> bool:
        return self.contains


@dataclass(frozen=True)
class Cone:
    """A rational polyhedral cone given by integer generators."""

    generators: tuple[tuple[int, ...], ...]
    rank: int

    def __post_init__(self) -> None:
        seen = []
        for g in self.generators:
            if len(g) != self.rank:
                raise DimensionMismatchError("cone generator has wrong length")
            g = tuple(int(e) for e in g)
            if any(g) and g not in seen:
                seen.append(g)
        object.__setattr__(self, "generators", tuple(seen))

    @staticmethod
    def from_vectors(vectors: Iterable[Sequence[int]], rank: int) -> "Cone":
        return Cone(tuple(tuple(int(e) for e in v) for v in vectors), rank)

    def dimension(self) -> int:
        return _linalg.rank([[Fraction(e) for e in g] for g in self.generators])

    def contains(self, point: Sequence) -> ConeMembership:
        return cone_contains(self, point)


def cone_contains(cone: Cone, point: Sequence) -> ConeMembership:
    """Membership of a point in a cone, with an exact certificate either way."""
    p = as_vector(point)
    if len(p) != cone.rank:
        raise DimensionMismatchError(
            f"point rank {len(p)} does not match cone rank {cone.rank}"
        )
    gens = cone.generators
    m = len(gens)
    if m == 0:
        if all(e == 0 for e in p):
            return ConeMembership(True, (), None)
    else:
        # coefficients u >= 0 with sum u_i g_i = p
        equalities = [
            (tuple(Fraction(g[c]) for g in gens), p[c]) for c in range(cone.rank)
        ]
        inequalities = [
            (tuple(ONE if i == j else ZERO for i in range(m)), ZERO, False)
            for j in range(m)
        ]
        witness = solve_linear_system(equalities, inequalities, m)
        if witness is not None:
            return ConeMembership(True, witness, None)
    # Farkas: p outside the cone iff some functional separates it.
    qp = QpProblem(
        objective=InnerProduct.identity(cone.rank),
        inequality_normals=gens,
        equality_normal=tuple(-e for e in p),
        equality_level=ONE,
    )
    optimum = minimize_norm(qp)
    if optimum is None:
        raise InternalError("point neither in the cone nor separable from it")
    separator = primitive_direction(optimum.minimizer)
    return ConeMembership(False, None, separator)


# ---------------------------------------------------------------------------
# norm minimization (the Kempf quadratic program)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QpProblem:
    """Minimize the objective norm subject to <lam, a_j> >= 0 and one equality."""

    objective: InnerProduct
    inequality_normals: tuple[tuple[int, ...], ...]
    equality_normal: tuple[Fraction, ...]
    equality_level: Fraction

    def __post_init__(self) -> None:
        k = self.objective.rank
        normals = tuple(tuple(int(e) for e in a) for a in self.inequality_normals)
        object.__setattr__(self, "inequality_normals", normals)
        object.__setattr__(self, "equality_normal", as_vector(self.equality_normal))
        object.__setattr__(self, "equality_level", Fraction(self.equality_level))
        for a in normals:
            if len(a) != k:
                raise DimensionMismatchError("inequality normal has wrong length")
        if len(self.equality_normal) != k:
            raise DimensionMismatchError("equality normal has wrong length")


@dataclass(frozen=True)
class QpOptimum:
    minimizer: Vector
    norm_squared: Fraction


def equality_constrained_minimum(
    objective: InnerProduct,
    rows: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
) -> Optional[Vector]:
    """Unique minimizer of the objective norm on the affine set {rows . x = rhs},
    or None when the set is empty."""
    k = objective.rank
    frac_rows = [[Fraction(e) for e in row] for row in rows]
    particular = _linalg.solve(frac_rows, [Fraction(b) for b in rhs])
    if particular is None:
        return None
    if not frac_rows:
        particular = [ZERO] * k
    null = _linalg.kernel(frac_rows, ncols=k)
    if not null:
        return tuple(particular)
    # Minimize (p + N y)^T Q (p + N y): the reduced system is SPD, hence unique.
    gram = [[objective.pairing(u, v) for v in null] for u in null]
    lin = [-objective.pairing(u, particular) for u in null]
    y = _linalg.solve(gram, lin)
    if y is None:
        raise InternalError("reduced SPD system unsolvable")
    return tuple(
        particular[i] + sum((y[t] * null[t][i] for t in range(len(null))), ZERO)
        for i in range(k)
    )


def minimize_norm(problem: QpProblem) -> Optional[QpOptimum]:
    """Exhaustive active-set enumeration for the Kempf QP.

    The unique minimizer (strict convexity) is critical on the affine span of
    its active constraints, so trying every subset of at most rank-many
    inequality rows as equalities and keeping the best feasible candidate
    finds it; no feasible candidate at all certifies infeasibility.
    """
    k = problem.objective.rank
    normals = problem.inequality_normals
    best: Optional[QpOptimum] = None
    for size in range(0, min(len(normals), k) + 1):
        for subset in itertools.combinations(range(len(normals)), size):
            rows = [list(map(Fraction, normals[j])) for j in subset]
            rows.append(list(problem.equality_normal))
            rhs = [ZERO] * size + [problem.equality_level]
            candidate = equality_constrained_minimum(problem.objective, rows, rhs)
            if candidate is None:
                continue
            if any(dot(as_vector(a), candidate) < 0 for a in normals):
                continue
            value = problem.objective.norm_squared(candidate)
            # Distinct candidates may tie at suboptimal values (the optimum
            # itself is unique by strict convexity); break ties lexicographically.
            if (best is None or value < best.norm_squared
                    or (value == best.norm_squared and candidate < best.minimizer)):
                best = QpOptimum(candidate, value)
    return best
