"""Dimension counts on the two sides of the affine quotient.

For the one-stratum setup (all variables of positive weight) the space of
equivariant maps between twists is a single weight component of the
polynomial ring, while the quotient side counts sections of the induced
line bundle on the weighted projective base.  With equal variable weights
both counts close to the same binomial formula; computing them through
independent routes and comparing is a small end-to-end sanity check of the
whole grading bookkeeping.
"""

from __future__ import annotations

import math
from typing import Tuple

from ..errors import InputError
from .ring import WeightedRing, count_exponents_of_weight

__all__ = ["quantization_hom_dims"]


def quantization_hom_dims(
    ring: WeightedRing, source_twist: int, target_twist: int
) -> Tuple[int, int]:
    """(equivariant dimension, quotient-section dimension) for maps from
    twist ``source_twist`` to twist ``target_twist``.

    Twists are character labels: the equivariant side counts lattice points
    of the weight component delta = target - source, the quotient side
    evaluates the closed-form section count of O(delta) on the base.  The
    closed form needs all variable weights equal; mixed weights are
    rejected rather than silently compared against the wrong formula.
    """
    if ring.n < 1:
        raise InputError("quantization counts need at least one variable")
    if len(set(ring.weights)) != 1:
        raise InputError(
            "quotient-side dimension formula needs equal variable weights"
        )
    delta = target_twist - source_twist
    equivariant = count_exponents_of_weight(ring, delta)
    weight = ring.weights[0]
    if delta < 0 or delta % weight != 0:
        quotient = 0
    else:
        quotient = math.comb(delta // weight + ring.n - 1, ring.n - 1)
    return equivariant, quotient
