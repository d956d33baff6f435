"""Box-scan backend selection.

The exhaustive destabilizer search iterates over every primitive integer
vector in a box, which is the one genuinely hot loop in the package.  A
compiled Cython kernel is used when available; a vectorized numpy fallback
provides identical results otherwise.  Set GITWIN_FORCE_FALLBACK=1 to skip
the compiled kernel (used by the benchmark and the backend-equality tests).

Both backends implement

    scan_box(rows, chi, bound) -> (lam, pairing, norm_squared) | None

over int64 inputs: rows is an (m, k) array of constraint normals, chi the
linearization, and the scan maximizes pairing^2/norm over primitive lam in
[-bound, bound]^k subject to rows @ lam >= 0 and pairing = -<lam, chi> > 0,
breaking ties by smaller norm, then lexicographically.
"""

from __future__ import annotations

import os

if os.environ.get("GITWIN_FORCE_FALLBACK"):
    from ._fallback import scan_box

    BACKEND = "fallback"
else:
    try:
        from ._kernel import scan_box  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on the build environment
        from ._fallback import scan_box  # type: ignore[no-redef]

        BACKEND = "fallback"

__all__ = ["scan_box", "BACKEND"]
