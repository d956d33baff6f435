"""Weighted polynomial rings and sparse graded polynomials.

The ring models functions on affine space attracted to the origin by a
one-parameter subgroup: each variable x_j carries a strictly positive
attraction weight c_j, and as an equivariant function x_j has weight -c_j,
so every nonconstant monomial has strictly negative weight.  Polynomials
are sparse dicts mapping exponent tuples to nonzero Fractions; the empty
dict is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from ..errors import InputError

Monomial = Tuple[int, ...]
Polynomial = Dict[Monomial, Fraction]


@dataclass(frozen=True)
class WeightedRing:
    """k[x_1..x_n] with positive integer attraction weights c_1..c_n.

    The zero-variable ring (the base field) is allowed: the recursion that
    decides origin-supportedness peels off variables one at a time and
    bottoms out there.
    """

    weights: Tuple[int, ...]

    def __post_init__(self) -> None:
        cleaned = tuple(int(c) for c in self.weights)
        if any(c <= 0 for c in cleaned):
            raise InputError("variable weights must be strictly positive")
        object.__setattr__(self, "weights", cleaned)

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def eta(self) -> int:
        return sum(self.weights)

    def drop_first(self) -> "WeightedRing":
        if not self.weights:
            raise InputError("cannot drop a variable from the base field")
        return WeightedRing(self.weights[1:])

    def zero_exponent(self) -> Monomial:
        return (0,) * self.n


def poly_normalize(entries: Mapping[Monomial, object], n: int) -> Polynomial:
    """Canonical form: integer exponent tuples of length n, Fraction
    coefficients, zero coefficients dropped."""
    result: Polynomial = {}
    for expo, coeff in entries.items():
        expo = tuple(int(e) for e in expo)
        if len(expo) != n:
            raise InputError("exponent tuple has wrong length")
        if any(e < 0 for e in expo):
            raise InputError("exponents must be nonnegative")
        value = Fraction(coeff)
        if value == 0:
            continue
        result[expo] = result.get(expo, Fraction(0)) + value
        if result[expo] == 0:
            del result[expo]
    return result


def poly_zero() -> Polynomial:
    return {}


def poly_constant(ring: WeightedRing, value) -> Polynomial:
    value = Fraction(value)
    return {} if value == 0 else {ring.zero_exponent(): value}


def poly_variable(ring: WeightedRing, j: int, coeff=1) -> Polynomial:
    expo = tuple(1 if i == j else 0 for i in range(ring.n))
    value = Fraction(coeff)
    return {} if value == 0 else {expo: value}


def poly_is_zero(p: Polynomial) -> bool:
    return not p


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    result = dict(p)
    for expo, coeff in q.items():
        total = result.get(expo, Fraction(0)) + coeff
        if total == 0:
            result.pop(expo, None)
        else:
            result[expo] = total
    return result


def poly_scale(scalar, p: Polynomial) -> Polynomial:
    scalar = Fraction(scalar)
    if scalar == 0:
        return {}
    return {expo: scalar * coeff for expo, coeff in p.items()}


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    result: Polynomial = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            expo = tuple(a + b for a, b in zip(e1, e2))
            total = result.get(expo, Fraction(0)) + c1 * c2
            if total == 0:
                result.pop(expo, None)
            else:
                result[expo] = total
    return result


def monomial_weight(ring: WeightedRing, expo: Monomial) -> int:
    return -sum(e * c for e, c in zip(expo, ring.weights))


def homogeneous_weight(ring: WeightedRing, p: Polynomial):
    """The common weight of all monomials, None for the zero polynomial.

    Raises for inhomogeneous input; every polynomial entering a complex is
    forced homogeneous, so this doubles as the validation primitive.
    """
    weight = None
    for expo in p:
        w = monomial_weight(ring, expo)
        if weight is None:
            weight = w
        elif w != weight:
            raise InputError("polynomial is not weight-homogeneous")
    return weight


def poly_constant_coefficient(ring: WeightedRing, p: Polynomial) -> Fraction:
    return p.get(ring.zero_exponent(), Fraction(0))


def poly_drop_first_variable(p: Polynomial) -> Polynomial:
    """Set the first variable to zero: keep monomials without it, shorten
    the exponent tuples."""
    return {expo[1:]: coeff for expo, coeff in p.items() if expo[0] == 0}


def poly_shift_exponent(p: Polynomial, shift: Monomial) -> Polynomial:
    """Multiply by the monomial x^shift."""
    return {
        tuple(e + s for e, s in zip(expo, shift)): coeff for expo, coeff in p.items()
    }


def exponents_of_weight(ring: WeightedRing, drop: int) -> List[Monomial]:
    """All exponent tuples E >= 0 with sum E_j c_j = drop, in lexicographic
    order.  Empty for negative drop; for the base field only drop = 0 has a
    (unique, empty) solution."""
    if drop < 0:
        return []
    results: List[Monomial] = []

    def recurse(position: int, remaining: int, prefix: Tuple[int, ...]) -> None:
        if position == ring.n:
            if remaining == 0:
                results.append(prefix)
            return
        c = ring.weights[position]
        for e in range(remaining // c + 1):
            recurse(position + 1, remaining - e * c, prefix + (e,))

    recurse(0, drop, ())
    return results


def count_exponents_of_weight(ring: WeightedRing, drop: int) -> int:
    return len(exponents_of_weight(ring, drop))
