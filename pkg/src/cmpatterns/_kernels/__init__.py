"""Kernel backend selection.

The compiled extension is preferred when present; CMPATTERNS_KERNEL=fallback
(or =compiled) forces a choice.  Both backends expose the same two calls:

    imex_advance(u, v, nsteps, dt, dx, d1, d2, kind, alpha, beta, c, d) -> status
    solve_coupled_tridiag(dx, d1, d2, fu, fv, gu, gv, r1, r2) -> (status, x, y)

with status codes OK=0, NONFINITE=1, NEGATIVE=2, SINGULAR=3.
"""

import os

from . import fallback

OK = 0
NONFINITE = 1
NEGATIVE = 2
SINGULAR = 3

try:
    from . import _core
except ImportError:
    _core = None

_FORCED = os.environ.get("CMPATTERNS_KERNEL", "").strip().lower()
if _FORCED == "fallback":
    _active = fallback
elif _FORCED == "compiled":
    if _core is None:
        raise ImportError("CMPATTERNS_KERNEL=compiled but the extension is not built")
    _active = _core
else:
    _active = _core if _core is not None else fallback

BACKEND = _active.BACKEND_NAME


def active():
    """Module implementing the kernel API that this process selected."""
    return _active


def available():
    out = {"fallback": fallback}
    if _core is not None:
        out["compiled"] = _core
    return out
