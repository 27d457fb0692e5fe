"""Pure numpy/scipy implementation of the hot kernels.

Mirrors the compiled module in `_core.pyx` call for call; selected at import
time by the package `__init__` when the extension is unavailable (or forced
via CMPATTERNS_KERNEL=fallback).
"""

import numpy as np
from scipy.linalg import LinAlgError, solve_banded

BACKEND_NAME = "fallback"

_OK = 0
_NONFINITE = 1
_NEGATIVE = 2
_SINGULAR = 3


def _reaction(u, v, kind, alpha, beta, c, d):
    if kind == 0:  # full system
        pr = u / ((1.0 + alpha * u) * (1.0 + beta * v))
        return u * (1.0 - u) - pr * v, -d * v + c * pr * v
    if kind == 1:  # infinite-conversion (w, v) scaling
        s = v / (1.0 + beta * v)
        return u * (1.0 - s), -d * v + u * s
    if kind == 2:  # infinite-conversion (u, z) scaling
        s = u / (beta * (1.0 + alpha * u))
        return u * (1.0 - u) - s, -d * v + s
    if kind == 3:  # pure diffusion
        z = np.zeros_like(u)
        return z, z
    raise ValueError(f"unknown kinetics kind {kind}")


def _implicit_bands(n, r):
    """Banded form of I - r*L for scipy.solve_banded, L the mirrored-ghost
    Laplacian scaled by dx^2 (r = dt*diff/dx^2)."""
    ab = np.zeros((3, n))
    ab[1, :] = 1.0 + 2.0 * r
    ab[0, 1:] = -r
    ab[0, 1] = -2.0 * r
    ab[2, :-1] = -r
    ab[2, -2] = -2.0 * r
    return ab


def imex_advance(u, v, nsteps, dt, dx, d1, d2, kind, alpha, beta, c, d):
    """Advance the pair (u, v) by nsteps IMEX steps in place.

    Explicit reaction, implicit diffusion; returns 0 on success, 1 if a
    non-finite value appeared, 2 if a component went negative.
    """
    ab_u = _implicit_bands(u.shape[0], dt * d1 / (dx * dx))
    ab_v = _implicit_bands(v.shape[0], dt * d2 / (dx * dx))
    for _ in range(nsteps):
        f, g = _reaction(u, v, kind, alpha, beta, c, d)
        u_new = solve_banded((1, 1), ab_u, u + dt * f,
                             check_finite=False, overwrite_b=True)
        v_new = solve_banded((1, 1), ab_v, v + dt * g,
                             check_finite=False, overwrite_b=True)
        u[:] = u_new
        v[:] = v_new
        if not (np.isfinite(u_new).all() and np.isfinite(v_new).all()):
            return _NONFINITE
        if u_new.min() < 0.0 or v_new.min() < 0.0:
            return _NEGATIVE
    return _OK


def solve_coupled_tridiag(dx, d1, d2, fu, fv, gu, gv, r1, r2):
    """Solve the linearised steady-state system

        (d1 L + diag(fu)) x + diag(fv) y = r1
        diag(gu) x + (d2 L + diag(gv)) y = r2

    for the correction pair (x, y).  The interleaved unknown vector makes
    the matrix pentadiagonal, which scipy's banded LU handles directly.
    Returns (status, x, y); status 3 flags a singular matrix.
    """
    n = fu.shape[0]
    s = 1.0 / (dx * dx)
    m = 2 * n
    ab = np.zeros((5, m))

    # main diagonal: reaction + Laplacian diagonal (-2 s for every node)
    ab[2, 0::2] = d1 * (-2.0 * s) + fu
    ab[2, 1::2] = d2 * (-2.0 * s) + gv
    # first superdiagonal (u_i -> v_i) and subdiagonal (v_i -> u_i)
    ab[1, 1::2] = fv
    ab[3, 0::2] = gu
    # second super/sub diagonals: neighbour coupling per component
    up = np.full(n - 1, s)
    up[0] = 2.0 * s
    lo = np.full(n - 1, s)
    lo[-1] = 2.0 * s
    ab[0, 2::2] = d1 * up
    ab[0, 3::2] = d2 * up
    ab[4, 0:-2:2] = d1 * lo
    ab[4, 1:-2:2] = d2 * lo

    rhs = np.empty(m)
    rhs[0::2] = r1
    rhs[1::2] = r2
    try:
        sol = solve_banded((2, 2), ab, rhs, check_finite=False)
    except LinAlgError:
        return _SINGULAR, None, None
    if not np.isfinite(sol).all():
        return _SINGULAR, None, None
    return _OK, sol[0::2].copy(), sol[1::2].copy()
