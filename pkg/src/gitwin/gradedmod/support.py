"""Finite-dimensionality of complex cohomology, by weight-window reduction.

A complex of graded free modules has origin-supported cohomology exactly
when its total cohomology is finite-dimensional over the ground field.
Because every generator only occupies weights from its own label upward,
cohomology is automatically bounded below; finite-dimensionality is a
question about large weights only, and it reduces one variable at a time:

for the quotient complex Fbar = F with the first variable set to zero,
the short exact sequence  0 -> F --x_0--> F -> Fbar -> 0  (multiplication
by x_0 is injective on free modules) yields, in each weight w, the exact
sequence

    H^{d-1}(Fbar)_w -> H^d(F)_{w-c_0} --x_0--> H^d(F)_w -> H^d(Fbar)_w.

Once a threshold beta with H(Fbar)_w = 0 for all w > beta is known
(recursion on the smaller ring), both outer terms vanish above beta, so
multiplication by x_0 is an isomorphism between consecutive strands there.
Every weight above beta is then iso-connected down to one of the c_0
strands beta+1, ..., beta+c_0: if those all vanish, H(F)_w = 0 for every
w > beta; if any is nonzero, that dimension repeats along its whole
arithmetic progression and the cohomology is infinite-dimensional.  This
needs only exact linear algebra on finitely many certified strands — no
Groebner bases.
"""

from __future__ import annotations

from typing import Dict, List, Optional

from .complexes import (
    GradedFreeComplex,
    minimize,
    strand_cohomology_dim,
)
from .ring import Polynomial, poly_drop_first_variable

__all__ = ["finiteness_threshold", "is_supported_at_origin"]


def _drop_first_variable(F: GradedFreeComplex) -> GradedFreeComplex:
    """The quotient complex over the ring with the first variable removed."""
    ring = F.ring.drop_first()
    terms = {d: list(ws) for d, ws in F.terms.items()}
    differentials: Dict[int, List[List[Polynomial]]] = {}
    for d in F.terms:
        if d + 1 not in F.terms:
            continue
        matrix = F.differential(d)
        differentials[d] = [
            [poly_drop_first_variable(entry) for entry in row] for row in matrix
        ]
    return GradedFreeComplex(ring, terms, differentials)


def finiteness_threshold(F: GradedFreeComplex) -> Optional[int]:
    """An integer tau with H(F)_w = 0 for every weight w > tau, or None
    when the total cohomology is infinite-dimensional.

    The returned threshold need not be sharp; it is certified.
    """
    F = minimize(F)
    if F.is_zero:
        return 0
    ring = F.ring
    if ring.n == 0:
        # Over the ground field a minimal complex has zero differential, so
        # it is its own cohomology: finite rank, weights bounded by the
        # largest generator label.
        return F.max_weight()

    quotient_threshold = finiteness_threshold(_drop_first_variable(F))
    if quotient_threshold is None:
        # H(Fbar)_w embeds into an extension of two H(F) strands, so an
        # infinite-dimensional quotient cohomology forces the same for F.
        return None
    beta = quotient_threshold
    step = ring.weights[0]
    for d in F.degrees():
        for w in range(beta + 1, beta + step + 1):
            if strand_cohomology_dim(F, d, w) > 0:
                return None
    return beta


def is_supported_at_origin(F: GradedFreeComplex) -> bool:
    """True when the total cohomology of F is finite-dimensional over the
    ground field, i.e. supported at the origin of the affine space."""
    return finiteness_threshold(F) is not None
