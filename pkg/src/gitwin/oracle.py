"""Exhaustive cross-check for the optimal destabilizer search.

The active-set solver in :mod:`gitwin.gitcore` finds the worst one-parameter
subgroup by solving small equality-constrained quadratic programs.  This
module re-derives the same answer by brute force: scan every primitive
integer vector in a certified box and maximize the squared slope directly.
It exists so the tests can confront the solver with an independent oracle;
it is deliberately restricted to the standard inner product, where the
optimum admits a clean a-priori bound on its entries.

Why the box suffices (standard inner product, rank k <= 3): the optimum of
``maximize <lam, -chi> / |lam|`` over the feasibility cone is attained on a
face, where it is proportional to the projection of ``-chi`` onto the
subspace cut out by the active constraint rows.  Writing that projection by
Cramer's rule over an integer basis of the active rows bounds the entries of
a primitive representative by small polynomials in the largest weight and
character entries:

* no active rows: lam ~ -chi, entries <= C;
* one active row r, k = 2: lam ~ (-r_2, r_1), entries <= W;
* one active row r, k = 3: lam ~ <r, r>(-chi) + <chi, r> r, entries
  <= 3 W^2 C + (3 W C) W = 6 W^2 C;
* two active rows r, s (k = 3): lam ~ r x s, entries <= 2 W^2;

where W bounds the weight entries and C the character entries.  The
primitive representative divides each of these integer vectors, so the scan
runs over the componentwise maximum of the bounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Tuple

import numpy as np

from . import _scan
from .errors import InputError
from .gitcore import NumericalInvariant, TorusActionProblem, normalize_support

Vector = Tuple[int, ...]


def certified_entry_bound(
    rank: int, max_weight_entry: int, max_chi_entry: int
) -> int:
    """Entry bound for the optimal primitive destabilizer, identity form only.

    ``max_weight_entry`` may be 0 (empty support); the bound is then just the
    character bound.  The result is always at least 1 so the box is nonempty.
    """
    if rank < 1 or rank > 3:
        raise InputError(f"certified bound only derived for rank 1..3, got {rank}")
    if max_weight_entry < 0 or max_chi_entry < 0:
        raise InputError("entry bounds must be nonnegative")
    w, c = max_weight_entry, max_chi_entry
    candidates = [1, c]
    if rank >= 2:
        candidates.append(w)
    if rank >= 3:
        candidates.append(6 * w * w * c)
        candidates.append(2 * w * w)
    return max(candidates)


def _require_identity_form(problem: TorusActionProblem) -> None:
    k = problem.rank
    for i in range(k):
        for j in range(k):
            expected = Fraction(1 if i == j else 0)
            if problem.inner_product.matrix[i][j] != expected:
                raise InputError(
                    "the exhaustive oracle is certified only for the "
                    "standard inner product"
                )


def brute_force_destabilizer(
    problem: TorusActionProblem,
    support: Sequence[int],
    bound: Optional[int] = None,
) -> Optional[Tuple[Vector, NumericalInvariant]]:
    """Scan a certified box for the worst primitive 1-PS on a support.

    Returns ``None`` when the support is semistable (no destabilizer with a
    positive pairing against the linearization exists anywhere, hence none in
    the box).  Otherwise returns the primitive optimum under the same
    ordering the solver uses: maximal squared slope, then minimal norm, then
    lexicographically smallest.
    """
    _require_identity_form(problem)
    k = problem.rank
    if k > 3:
        raise InputError("the exhaustive oracle handles rank 1..3")
    indices = normalize_support(problem, support)
    rows = np.array(
        [[int(problem.weights[j][i]) for i in range(k)] for j in indices],
        dtype=np.int64,
    ).reshape(len(indices), k)
    chi = np.array([int(v) for v in problem.linearization], dtype=np.int64)
    if bound is None:
        w = max(
            (abs(int(rows[r, c])) for r in range(rows.shape[0]) for c in range(k)),
            default=0,
        )
        c_max = max(abs(int(v)) for v in chi)
        bound = certified_entry_bound(k, w, c_max)
    hit = _scan.scan_box(rows, chi, int(bound))
    if hit is None:
        return None
    lam, pairing, norm_sq = hit
    g = 0
    for v in lam:
        g = gcd(g, abs(v))
    if g != 1:  # pragma: no cover - scan only emits primitive vectors
        raise InputError("scan backend returned an imprimitive vector")
    invariant = NumericalInvariant(Fraction(pairing), Fraction(norm_sq))
    return tuple(int(v) for v in lam), invariant
