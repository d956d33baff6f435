"""Bounded complexes of graded free modules, chain maps, cones, and the
weight-strand linear algebra they reduce to.

Conventions baked in everywhere:

* terms map a cohomological degree to the tuple of generator weights of the
  free module sitting there;
* the differential stored at degree d maps degree d to degree d+1, and its
  matrix has one row per target generator and one column per source
  generator, so composition is ordinary matrix multiplication
  d_{d+1} * d_d;
* every entry is homogeneous of weight (target generator weight - source
  generator weight), and d^2 = 0 exactly; both are revalidated on every
  construction, so a complex object is always coherent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .. import _linalg
from ..errors import InputError, InternalError
from .ring import (
    Monomial,
    Polynomial,
    WeightedRing,
    exponents_of_weight,
    homogeneous_weight,
    poly_add,
    poly_constant_coefficient,
    poly_is_zero,
    poly_mul,
    poly_normalize,
    poly_scale,
)

Matrix = Tuple[Tuple[Polynomial, ...], ...]


def matrix_is_zero(matrix: Sequence[Sequence[Polynomial]]) -> bool:
    return all(poly_is_zero(entry) for row in matrix for entry in row)


def compose_matrices(
    left: Sequence[Sequence[Polynomial]], right: Sequence[Sequence[Polynomial]]
) -> List[List[Polynomial]]:
    """Matrix product left * right over the polynomial ring."""
    if left and right and len(left[0]) != len(right):
        raise InputError("matrix shapes do not compose")
    inner = len(right)
    cols = len(right[0]) if right else 0
    result = []
    for r in range(len(left)):
        row = []
        for c in range(cols):
            total: Polynomial = {}
            for m in range(inner):
                if poly_is_zero(left[r][m]) or poly_is_zero(right[m][c]):
                    continue
                total = poly_add(total, poly_mul(left[r][m], right[m][c]))
            row.append(total)
        result.append(row)
    return result


class GradedFreeComplex:
    """A finite complex of graded free modules, validated on construction."""

    def __init__(
        self,
        ring: WeightedRing,
        terms: Mapping[int, Sequence[int]],
        differentials: Mapping[int, Sequence[Sequence[Mapping]]] = (),
    ):
        self.ring = ring
        self._terms: Dict[int, Tuple[int, ...]] = {}
        for degree, weights in dict(terms).items():
            weights = tuple(int(w) for w in weights)
            if weights:
                self._terms[int(degree)] = weights

        self._diffs: Dict[int, Matrix] = {}
        for degree, rows in dict(differentials or {}).items():
            degree = int(degree)
            matrix = tuple(
                tuple(poly_normalize(entry, ring.n) for entry in row) for row in rows
            )
            if matrix_is_zero(matrix):
                continue
            source = self._terms.get(degree, ())
            target = self._terms.get(degree + 1, ())
            if len(matrix) != len(target) or any(
                len(row) != len(source) for row in matrix
            ):
                raise InputError(
                    f"differential at degree {degree} has shape "
                    f"{len(matrix)}x{len(matrix[0]) if matrix else 0}, expected "
                    f"{len(target)}x{len(source)}"
                )
            for r, row in enumerate(matrix):
                for c, entry in enumerate(row):
                    weight = homogeneous_weight(ring, entry)
                    if weight is not None and weight != target[r] - source[c]:
                        raise InputError(
                            f"entry ({r},{c}) of the degree-{degree} "
                            f"differential has weight {weight}, expected "
                            f"{target[r] - source[c]}"
                        )
            self._diffs[degree] = matrix

        for degree, matrix in self._diffs.items():
            following = self._diffs.get(degree + 1)
            if following is None:
                continue
            if not matrix_is_zero(compose_matrices(following, matrix)):
                raise InputError(
                    f"differential does not square to zero at degree {degree}"
                )

    # -- structure access ------------------------------------------------

    @property
    def terms(self) -> Dict[int, Tuple[int, ...]]:
        return dict(self._terms)

    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted(self._terms))

    def rank(self, degree: int) -> int:
        return len(self._terms.get(degree, ()))

    def weights(self, degree: int) -> Tuple[int, ...]:
        return self._terms.get(degree, ())

    def differential(self, degree: int) -> Matrix:
        stored = self._diffs.get(degree)
        if stored is not None:
            return stored
        return tuple(
            tuple({} for _ in range(self.rank(degree)))
            for _ in range(self.rank(degree + 1))
        )

    def differentials(self) -> Dict[int, Matrix]:
        return dict(self._diffs)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def total_rank(self) -> int:
        return sum(len(ws) for ws in self._terms.values())

    def min_degree(self) -> Optional[int]:
        return min(self._terms) if self._terms else None

    def max_degree(self) -> Optional[int]:
        return max(self._terms) if self._terms else None

    def all_weights(self) -> Tuple[int, ...]:
        return tuple(
            sorted(w for ws in self._terms.values() for w in ws)
        )

    def min_weight(self) -> Optional[int]:
        weights = self.all_weights()
        return min(weights) if weights else None

    def max_weight(self) -> Optional[int]:
        weights = self.all_weights()
        return max(weights) if weights else None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedFreeComplex):
            return NotImplemented
        return (
            self.ring == other.ring
            and self._terms == other._terms
            and self._diffs == other._diffs
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        parts = ", ".join(
            f"{d}: {list(ws)}" for d, ws in sorted(self._terms.items())
        )
        return f"GradedFreeComplex({{{parts}}})"


def zero_complex(ring: WeightedRing) -> GradedFreeComplex:
    return GradedFreeComplex(ring, {}, {})


def free_module(
    ring: WeightedRing, weights: Sequence[int], degree: int = 0
) -> GradedFreeComplex:
    """A single free module concentrated in one degree, zero differential."""
    return GradedFreeComplex(ring, {degree: tuple(weights)}, {})


def shift(F: GradedFreeComplex, amount: int) -> GradedFreeComplex:
    """F[amount]: degree d of the shift is degree d+amount of F, with the
    differential negated for odd shifts."""
    sign = Fraction(-1) ** (amount % 2)
    terms = {d - amount: ws for d, ws in F.terms.items()}
    diffs = {
        d - amount: [[poly_scale(sign, entry) for entry in row] for row in matrix]
        for d, matrix in F.differentials().items()
    }
    return GradedFreeComplex(F.ring, terms, diffs)


def dual(F: GradedFreeComplex) -> GradedFreeComplex:
    """Weight-negated transpose.  The dual's differential at degree d is the
    transpose of F's differential at degree -d-1, with no signs; this
    convention squares to zero and is an exact involution, which the
    window-lift algorithm relies on to run its low-weight step backwards.
    """
    terms = {-d: tuple(-w for w in ws) for d, ws in F.terms.items()}
    diffs = {}
    for d, matrix in F.differentials().items():
        rows = len(matrix[0]) if matrix else 0
        cols = len(matrix)
        diffs[-d - 1] = [
            [matrix[c][r] for c in range(cols)] for r in range(rows)
        ]
    return GradedFreeComplex(F.ring, terms, diffs)


def direct_sum(F: GradedFreeComplex, G: GradedFreeComplex) -> GradedFreeComplex:
    if F.ring != G.ring:
        raise InputError("direct sum needs a common ring")
    terms: Dict[int, Tuple[int, ...]] = {}
    for d in set(F.terms) | set(G.terms):
        terms[d] = F.weights(d) + G.weights(d)
    diffs: Dict[int, List[List[Polynomial]]] = {}
    degrees = set(F.differentials()) | set(G.differentials())
    for d in degrees:
        fm = F.differential(d)
        gm = G.differential(d)
        rows = []
        for r in range(F.rank(d + 1)):
            rows.append(list(fm[r]) + [{} for _ in range(G.rank(d))])
        for r in range(G.rank(d + 1)):
            rows.append([{} for _ in range(F.rank(d))] + list(gm[r]))
        diffs[d] = rows
    return GradedFreeComplex(F.ring, terms, diffs)


class ChainMap:
    """A degree-0, weight-0 map of complexes, validated to commute with the
    differentials on construction."""

    def __init__(
        self,
        source: GradedFreeComplex,
        target: GradedFreeComplex,
        components: Mapping[int, Sequence[Sequence[Mapping]]],
    ):
        if source.ring != target.ring:
            raise InputError("chain map needs a common ring")
        self.source = source
        self.target = target
        ring = source.ring
        self._components: Dict[int, Matrix] = {}
        for degree, rows in dict(components).items():
            degree = int(degree)
            matrix = tuple(
                tuple(poly_normalize(entry, ring.n) for entry in row) for row in rows
            )
            if matrix_is_zero(matrix):
                continue
            src = source.weights(degree)
            tgt = target.weights(degree)
            if len(matrix) != len(tgt) or any(len(row) != len(src) for row in matrix):
                raise InputError(
                    f"chain map component at degree {degree} has wrong shape"
                )
            for r, row in enumerate(matrix):
                for c, entry in enumerate(row):
                    weight = homogeneous_weight(ring, entry)
                    if weight is not None and weight != tgt[r] - src[c]:
                        raise InputError(
                            f"chain map entry ({r},{c}) at degree {degree} is "
                            f"not weight-homogeneous of the forced weight"
                        )
            self._components[degree] = matrix

        degrees = set(source.terms) | set(target.terms)
        for d in degrees:
            left = compose_matrices(target.differential(d), self.component(d))
            right = compose_matrices(
                self.component(d + 1), source.differential(d)
            )
            difference = [
                [poly_add(a, poly_scale(-1, b)) for a, b in zip(lrow, rrow)]
                for lrow, rrow in zip(left, right)
            ]
            if not matrix_is_zero(difference):
                raise InputError(
                    f"chain map does not commute with differentials at "
                    f"degree {d}"
                )

    def component(self, degree: int) -> Matrix:
        stored = self._components.get(degree)
        if stored is not None:
            return stored
        return tuple(
            tuple({} for _ in range(self.source.rank(degree)))
            for _ in range(self.target.rank(degree))
        )

    def components(self) -> Dict[int, Matrix]:
        return dict(self._components)

    def scale(self, factor) -> "ChainMap":
        return ChainMap(
            self.source,
            self.target,
            {
                d: [[poly_scale(factor, entry) for entry in row] for row in matrix]
                for d, matrix in self._components.items()
            },
        )

    def add(self, other: "ChainMap") -> "ChainMap":
        """Pointwise sum; both maps must share source and target."""
        if self.source != other.source or self.target != other.target:
            raise InputError("chain maps with different endpoints cannot be added")
        combined = {}
        for d in set(self._components) | set(other._components):
            mine, theirs = self.component(d), other.component(d)
            combined[d] = [
                [poly_add(a, b) for a, b in zip(lrow, rrow)]
                for lrow, rrow in zip(mine, theirs)
            ]
        return ChainMap(self.source, self.target, combined)


def cone_of_chain_map(f: ChainMap) -> GradedFreeComplex:
    """Mapping cone: degree d is source^{d+1} (+) target^d, differential
    [[-d_S, 0], [f, d_T]]."""
    S, T = f.source, f.target
    terms: Dict[int, Tuple[int, ...]] = {}
    for d in {e - 1 for e in S.terms} | set(T.terms):
        combined = S.weights(d + 1) + T.weights(d)
        if combined:
            terms[d] = combined
    degrees = sorted(set(terms))
    diffs: Dict[int, List[List[Polynomial]]] = {}
    for d in degrees:
        if d + 1 not in terms:
            continue
        s_cols, t_cols = S.rank(d + 1), T.rank(d)
        s_rows, t_rows = S.rank(d + 2), T.rank(d + 1)
        ds = S.differential(d + 1)
        dt = T.differential(d)
        fc = f.component(d + 1)
        rows: List[List[Polynomial]] = []
        for r in range(s_rows):
            rows.append(
                [poly_scale(-1, ds[r][c]) for c in range(s_cols)]
                + [{} for _ in range(t_cols)]
            )
        for r in range(t_rows):
            rows.append(
                [fc[r][c] for c in range(s_cols)]
                + [dt[r][c] for c in range(t_cols)]
            )
        diffs[d] = rows
    return GradedFreeComplex(S.ring, terms, diffs)


def minimize(F: GradedFreeComplex) -> GradedFreeComplex:
    """Cancel invertible (constant) differential entries until none remain.

    Gaussian elimination on one unit entry at (target r, source c) of the
    degree-d differential removes one generator from degree d and one from
    degree d+1; only the degree-d differential needs the Schur correction,
    the neighbors just lose the corresponding row or column.  The result is
    homotopy equivalent to F with a differential whose entries all vanish at
    the origin, so its generator weights are exactly the weight profile of
    the fixed-point restriction.
    """
    ring = F.ring
    terms: Dict[int, List[int]] = {d: list(ws) for d, ws in F.terms.items()}
    diffs: Dict[int, List[List[Polynomial]]] = {
        d: [list(row) for row in matrix] for d, matrix in F.differentials().items()
    }
    zero_expo = ring.zero_exponent()

    def find_unit() -> Optional[Tuple[int, int, int]]:
        for d in sorted(diffs):
            matrix = diffs[d]
            for r, row in enumerate(matrix):
                for c, entry in enumerate(row):
                    if entry.get(zero_expo):
                        return d, r, c
        return None

    while True:
        found = find_unit()
        if found is None:
            break
        d, r, c = found
        matrix = diffs[d]
        unit = matrix[r][c][zero_expo]
        replacement: List[List[Polynomial]] = []
        for i, row in enumerate(matrix):
            if i == r:
                continue
            new_row = []
            scale = poly_scale(Fraction(-1) / unit, row[c])
            for j, entry in enumerate(row):
                if j == c:
                    continue
                new_row.append(poly_add(entry, poly_mul(scale, matrix[r][j])))
            replacement.append(new_row)
        if replacement and replacement[0]:
            diffs[d] = replacement
        else:
            diffs.pop(d, None)

        into = diffs.get(d - 1)
        if into is not None:
            into = [row for i, row in enumerate(into) if i != c]
            if into and into[0]:
                diffs[d - 1] = into
            else:
                diffs.pop(d - 1, None)
        out_of = diffs.get(d + 1)
        if out_of is not None:
            out_of = [
                [entry for j, entry in enumerate(row) if j != r] for row in out_of
            ]
            if out_of and out_of[0]:
                diffs[d + 1] = out_of
            else:
                diffs.pop(d + 1, None)

        terms[d].pop(c)
        terms[d + 1].pop(r)
        for degree in (d, d + 1):
            if not terms[degree]:
                del terms[degree]

    return GradedFreeComplex(ring, terms, diffs)


@dataclass(frozen=True)
class WeightProfile:
    """Multiset of weights of the fixed-point cohomology, per degree."""

    entries: Tuple[Tuple[int, Tuple[int, ...]], ...]

    @staticmethod
    def from_dict(data: Mapping[int, Sequence[int]]) -> "WeightProfile":
        cleaned = []
        for degree in sorted(data):
            weights = tuple(sorted(int(w) for w in data[degree]))
            if weights:
                cleaned.append((int(degree), weights))
        return WeightProfile(tuple(cleaned))

    def as_dict(self) -> Dict[int, Tuple[int, ...]]:
        return {degree: weights for degree, weights in self.entries}

    def degrees(self) -> Tuple[int, ...]:
        return tuple(degree for degree, _ in self.entries)

    def weights_in(self, degree: int) -> Tuple[int, ...]:
        return self.as_dict().get(degree, ())

    def all_weights(self) -> Tuple[int, ...]:
        return tuple(sorted(w for _, ws in self.entries for w in ws))

    @property
    def is_empty(self) -> bool:
        return not self.entries


def restrict_to_fixed(F: GradedFreeComplex) -> WeightProfile:
    """Weights of the cohomology of F evaluated at the origin.

    Setting all variables to zero keeps only the constant parts of the
    differentials, which act within each generator weight separately, so the
    computation is plain linear algebra per (degree, weight).
    """
    ring = F.ring
    profile: Dict[int, List[int]] = {}
    for d in F.degrees():
        weights_here = F.weights(d)
        for weight in sorted(set(weights_here)):
            here = [i for i, w in enumerate(weights_here) if w == weight]
            outgoing = [
                [
                    poly_constant_coefficient(ring, F.differential(d)[r][c])
                    for c in here
                ]
                for r, w in enumerate(F.weights(d + 1))
                if w == weight
            ]
            incoming = [
                [
                    poly_constant_coefficient(ring, F.differential(d - 1)[r][c])
                    for c, w in enumerate(F.weights(d - 1))
                    if w == weight
                ]
                for r in here
            ]
            rank_out = _linalg.rank(outgoing)
            rank_in = _linalg.rank(
                [list(col) for col in zip(*incoming)] if incoming else []
            )
            h = len(here) - rank_out - rank_in
            if h < 0:  # pragma: no cover - impossible when d^2 = 0
                raise InternalError("negative cohomology dimension")
            if h:
                profile.setdefault(d, []).extend([weight] * h)
    return WeightProfile.from_dict(profile)


def window_test_complex(
    F: GradedFreeComplex, window_low: int
) -> Tuple[bool, Tuple[int, ...]]:
    """Does every fixed-point cohomology weight lie in
    [window_low, window_low + eta)?  Returns the verdict and the sorted
    multiset of offending weights."""
    eta = F.ring.eta
    profile = restrict_to_fixed(F)
    offending = [
        w
        for w in profile.all_weights()
        if not window_low <= w < window_low + eta
    ]
    return (not offending, tuple(sorted(offending)))


# -- weight strands ------------------------------------------------------


def strand_basis(
    ring: WeightedRing, weights: Sequence[int], strand: int
) -> List[Tuple[int, Monomial]]:
    """Monomial basis of the weight-`strand` graded piece of a free module:
    pairs (generator index, exponent tuple), ordered by generator then
    lexicographically.

    The element x^E e_g lives in strand q_g + sum(E_j c_j): this is the
    unique assignment under which the homogeneity rule for differential
    entries (entry weight = target - source, monomials weighing -sum E c)
    makes every strand a subcomplex.  Generators only reach strands at or
    above their own weight.
    """
    basis = []
    for g, q in enumerate(weights):
        for expo in exponents_of_weight(ring, strand - q):
            basis.append((g, expo))
    return basis


def strand_matrix(
    ring: WeightedRing,
    matrix: Sequence[Sequence[Polynomial]],
    source_weights: Sequence[int],
    target_weights: Sequence[int],
    strand: int,
) -> List[List[Fraction]]:
    """The scalar matrix of a homogeneous polynomial matrix on one weight
    strand, rows indexed by the target strand basis."""
    source_basis = strand_basis(ring, source_weights, strand)
    target_basis = strand_basis(ring, target_weights, strand)
    index = {pair: i for i, pair in enumerate(target_basis)}
    rows = [
        [Fraction(0) for _ in range(len(source_basis))]
        for _ in range(len(target_basis))
    ]
    for col, (g, expo) in enumerate(source_basis):
        for r in range(len(target_weights)):
            entry = matrix[r][g]
            for mono, coeff in entry.items():
                shifted = tuple(a + b for a, b in zip(expo, mono))
                rows[index[(r, shifted)]][col] += coeff
    return rows


def strand_differential(
    F: GradedFreeComplex, degree: int, strand: int
) -> List[List[Fraction]]:
    return strand_matrix(
        F.ring,
        F.differential(degree),
        F.weights(degree),
        F.weights(degree + 1),
        strand,
    )


def strand_cohomology_dim(F: GradedFreeComplex, degree: int, strand: int) -> int:
    """dim of the weight-`strand` piece of H^degree(F)."""
    here = len(strand_basis(F.ring, F.weights(degree), strand))
    if here == 0:
        return 0
    rank_out = _linalg.rank(strand_differential(F, degree, strand))
    rank_in = _linalg.rank(strand_differential(F, degree - 1, strand))
    value = here - rank_out - rank_in
    if value < 0:  # pragma: no cover - impossible when d^2 = 0
        raise InternalError("negative strand cohomology dimension")
    return value


def hom_chain_maps(
    source: GradedFreeComplex, target: GradedFreeComplex
) -> List[ChainMap]:
    """A basis of the space of (degree-0, weight-0) chain maps source ->
    target, found by exact linear algebra on the commutation equations."""
    if source.ring != target.ring:
        raise InputError("hom space needs a common ring")
    ring = source.ring

    unknowns: List[Tuple[int, int, int, Monomial]] = []
    position: Dict[Tuple[int, int, int, Monomial], int] = {}
    degrees = sorted(set(source.terms) & set(target.terms))
    for d in degrees:
        for r, tw in enumerate(target.weights(d)):
            for c, sw in enumerate(source.weights(d)):
                for expo in exponents_of_weight(ring, sw - tw):
                    key = (d, r, c, expo)
                    position[key] = len(unknowns)
                    unknowns.append(key)

    equations: Dict[Tuple[int, int, int, Monomial], Dict[int, Fraction]] = {}

    def add_coeff(eq_key, unknown_key, coeff: Fraction) -> None:
        if unknown_key not in position:
            # The unknown was pruned because no monomial of the forced
            # weight exists; its coefficient is structurally zero.
            return
        row = equations.setdefault(eq_key, {})
        row[position[unknown_key]] = row.get(position[unknown_key], Fraction(0)) + coeff

    all_degrees = sorted(set(source.terms) | set(target.terms))
    for d in all_degrees:
        d_target = target.differential(d)
        d_source = source.differential(d)
        for r in range(target.rank(d + 1)):
            for c in range(source.rank(d)):
                # (d_T phi_d - phi_{d+1} d_S)[r][c] = 0, per monomial
                for s in range(target.rank(d)):
                    entry = d_target[r][s]
                    if poly_is_zero(entry):
                        continue
                    for expo in exponents_of_weight(
                        ring, source.weights(d)[c] - target.weights(d)[s]
                    ):
                        for mono, coeff in entry.items():
                            total = tuple(a + b for a, b in zip(mono, expo))
                            add_coeff((d, r, c, total), (d, s, c, expo), coeff)
                for t in range(source.rank(d + 1)):
                    entry = d_source[t][c]
                    if poly_is_zero(entry):
                        continue
                    for expo in exponents_of_weight(
                        ring,
                        source.weights(d + 1)[t] - target.weights(d + 1)[r],
                    ):
                        for mono, coeff in entry.items():
                            total = tuple(a + b for a, b in zip(mono, expo))
                            add_coeff(
                                (d, r, c, total), (d + 1, r, t, expo), -coeff
                            )

    if not unknowns:
        return []
    rows = []
    for _key, entries in sorted(equations.items()):
        row = [Fraction(0)] * len(unknowns)
        for idx, coeff in entries.items():
            row[idx] = coeff
        rows.append(row)
    basis = _linalg.kernel(rows, ncols=len(unknowns))

    maps = []
    for vector in basis:
        components: Dict[int, List[List[Polynomial]]] = {}
        for d in degrees:
            components[d] = [
                [dict() for _ in range(source.rank(d))]
                for _ in range(target.rank(d))
            ]
        for key, idx in position.items():
            coeff = vector[idx]
            if coeff == 0:
                continue
            d, r, c, expo = key
            entry = components[d][r][c]
            entry[expo] = entry.get(expo, Fraction(0)) + coeff
        maps.append(ChainMap(source, target, components))
    return maps


def is_acyclic(F: GradedFreeComplex) -> bool:
    """True when F is exact (minimizes to the zero complex)."""
    return minimize(F).is_zero
