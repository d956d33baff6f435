"""Pure numpy implementation of the destabilizer box scan.

Vectorizes the candidate filter (primitivity, feasibility, positive pairing)
over one slab of the box at a time, then shortlists near-maximal candidates
with float64 arithmetic and settles the winner with exact integer
comparisons.  The float shortlist is safe: pairings and norms here are far
below 2**26, so pairing**2 / norm is computed to full precision and the
relative slack of 1e-9 vastly exceeds any rounding error while still
excluding every candidate whose exact key is smaller than the maximum.
"""

from __future__ import annotations

from typing import Optional, Tuple

import numpy as np

Candidate = Tuple[Tuple[int, ...], int, int]


def _beats(pairing: int, norm: int, lam: Tuple[int, ...], best: Candidate) -> bool:
    """Exact comparison: larger pairing^2/norm, then smaller norm, then lex."""
    best_lam, best_p, best_n = best
    lhs = pairing * pairing * best_n
    rhs = best_p * best_p * norm
    if lhs != rhs:
        return lhs > rhs
    if norm != best_n:
        return norm < best_n
    return lam < best_lam


def scan_box(rows: np.ndarray, chi: np.ndarray, bound: int) -> Optional[Candidate]:
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    chi = np.ascontiguousarray(chi, dtype=np.int64)
    k = chi.shape[0]
    if k < 1:
        raise ValueError("scan_box needs rank >= 1")
    if bound < 1:
        raise ValueError("scan_box needs a positive bound")

    axis = np.arange(-bound, bound + 1, dtype=np.int64)
    if k > 1:
        grids = np.meshgrid(*([axis] * (k - 1)), indexing="ij")
        rest = np.stack([g.ravel() for g in grids], axis=1)
    else:
        rest = np.zeros((1, 0), dtype=np.int64)

    best: Optional[Candidate] = None
    slab = np.empty((rest.shape[0], k), dtype=np.int64)
    for x0 in axis:
        slab[:, 0] = x0
        slab[:, 1:] = rest
        gcds = np.abs(slab[:, 0])
        for c in range(1, k):
            gcds = np.gcd(gcds, np.abs(slab[:, c]))
        mask = gcds == 1
        pairings = -(slab @ chi)
        mask &= pairings > 0
        if rows.shape[0]:
            mask &= (slab @ rows.T >= 0).all(axis=1)
        if not mask.any():
            continue
        cands = slab[mask]
        pair = pairings[mask]
        norm = (cands * cands).sum(axis=1)
        keys = pair.astype(np.float64) ** 2 / norm.astype(np.float64)
        top = keys.max()
        shortlist = np.nonzero(keys >= top * (1.0 - 1e-9))[0]
        for i in shortlist.tolist():
            lam = tuple(int(v) for v in cands[i])
            p = int(pair[i])
            n = int(norm[i])
            if best is None or _beats(p, n, lam, best):
                best = (lam, p, n)
    return best
