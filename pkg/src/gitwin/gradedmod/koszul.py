"""Koszul resolutions of twisted skyscraper modules.

The Koszul complex on the full variable sequence x_0, ..., x_{n-1} resolves
the origin-supported module k(b)^m by free modules, in cohomological degrees
-n through 0.  It is the basic supported-at-the-origin building block: every
cone-off step of the window lift attaches a (shifted) complex of this shape.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, List, Tuple

from ..errors import InputError
from .complexes import GradedFreeComplex
from .ring import Polynomial, WeightedRing, poly_variable, poly_zero

__all__ = ["koszul_skyscraper"]


def _subset_weight(ring: WeightedRing, subset: Tuple[int, ...]) -> int:
    return sum(ring.weights[j] for j in subset)


def koszul_skyscraper(
    ring: WeightedRing, socle_weight: int, multiplicity: int = 1
) -> GradedFreeComplex:
    """The Koszul complex resolving ``multiplicity`` copies of the skyscraper
    with generator weight ``socle_weight``.

    Cohomological degree -p carries one generator per p-element subset J of
    the variables (and per copy), of weight ``socle_weight`` plus the total
    weight of the variables in J; subsets are ordered as by
    ``itertools.combinations`` with copies nested innermost.  The entry from
    (J, copy) to (J minus {j}, copy) is +/- x_j with the usual alternating
    sign, so all squares anticommute and d^2 = 0.
    """
    if multiplicity < 1:
        raise InputError("koszul multiplicity must be a positive integer")
    n = ring.n
    m = multiplicity

    subsets: Dict[int, List[Tuple[int, ...]]] = {
        p: list(combinations(range(n), p)) for p in range(n + 1)
    }
    terms: Dict[int, List[int]] = {}
    for p in range(n + 1):
        weights = []
        for subset in subsets[p]:
            weights.extend([socle_weight + _subset_weight(ring, subset)] * m)
        terms[-p] = weights

    differentials: Dict[int, List[List[Polynomial]]] = {}
    for p in range(n, 0, -1):
        source = subsets[p]
        target = subsets[p - 1]
        target_index = {subset: i for i, subset in enumerate(target)}
        matrix = [
            [poly_zero() for _ in range(len(source) * m)]
            for _ in range(len(target) * m)
        ]
        for s, subset in enumerate(source):
            for sign_pos, j in enumerate(subset):
                reduced = subset[:sign_pos] + subset[sign_pos + 1 :]
                t = target_index[reduced]
                sign = -1 if sign_pos % 2 else 1
                entry = poly_variable(ring, j, coeff=sign)
                for copy in range(m):
                    matrix[t * m + copy][s * m + copy] = dict(entry)
        differentials[-p] = matrix

    return GradedFreeComplex(ring, terms, differentials)
