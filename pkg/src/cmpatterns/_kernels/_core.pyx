# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: the IMEX time stepper and the coupled linearised
steady-state solve.  Mirrors `fallback.py`; keep the two in sync."""

import numpy as np

cimport numpy as cnp
from libc.math cimport isfinite

cnp.import_array()

BACKEND_NAME = "compiled"

DEF OK = 0
DEF NONFINITE = 1
DEF NEGATIVE = 2
DEF SINGULAR = 3


cdef inline void _react(int kind, double u, double v, double alpha,
                        double beta, double c, double d,
                        double* f, double* g) noexcept nogil:
    cdef double pr, s
    if kind == 0:
        pr = u / ((1.0 + alpha * u) * (1.0 + beta * v))
        f[0] = u * (1.0 - u) - pr * v
        g[0] = -d * v + c * pr * v
    elif kind == 1:
        s = v / (1.0 + beta * v)
        f[0] = u * (1.0 - s)
        g[0] = -d * v + u * s
    elif kind == 2:
        s = u / (beta * (1.0 + alpha * u))
        f[0] = u * (1.0 - u) - s
        g[0] = -d * v + s
    else:
        f[0] = 0.0
        g[0] = 0.0


cdef int _thomas_prep(int n, double r, double* cp, double* im) noexcept nogil:
    """Factor I - r*L (L the mirrored-ghost Laplacian scaled by dx^2):
    store the modified superdiagonal cp and inverse pivots im."""
    cdef double b = 1.0 + 2.0 * r
    cdef double a, m
    cdef int i
    im[0] = 1.0 / b
    cp[0] = -2.0 * r * im[0]
    for i in range(1, n):
        a = -2.0 * r if i == n - 1 else -r
        m = b - a * cp[i - 1]
        if m == 0.0:
            return SINGULAR
        im[i] = 1.0 / m
        cp[i] = -r * im[i]
    return OK


cdef inline void _thomas_solve(int n, double r, double* cp, double* im,
                               double* rhs, double* out) noexcept nogil:
    cdef double a
    cdef int i
    out[0] = rhs[0] * im[0]
    for i in range(1, n):
        a = -2.0 * r if i == n - 1 else -r
        out[i] = (rhs[i] - a * out[i - 1]) * im[i]
    for i in range(n - 2, -1, -1):
        out[i] = out[i] - cp[i] * out[i + 1]


def imex_advance(double[::1] u, double[::1] v, int nsteps, double dt,
                 double dx, double d1, double d2, int kind, double alpha,
                 double beta, double c, double d):
    """Advance (u, v) by nsteps IMEX steps in place; see fallback docstring."""
    cdef int n = u.shape[0]
    cdef double ru = dt * d1 / (dx * dx)
    cdef double rv = dt * d2 / (dx * dx)
    cdef cnp.ndarray scratch = np.empty(6 * n, dtype=np.float64)
    cdef double* buf = <double*> cnp.PyArray_DATA(scratch)
    cdef double* cp_u = buf
    cdef double* im_u = buf + n
    cdef double* cp_v = buf + 2 * n
    cdef double* im_v = buf + 3 * n
    cdef double* rhs_u = buf + 4 * n
    cdef double* rhs_v = buf + 5 * n
    cdef int step, i, status = OK
    cdef double f, g

    with nogil:
        if _thomas_prep(n, ru, cp_u, im_u) or _thomas_prep(n, rv, cp_v, im_v):
            status = SINGULAR
        else:
            for step in range(nsteps):
                for i in range(n):
                    _react(kind, u[i], v[i], alpha, beta, c, d, &f, &g)
                    rhs_u[i] = u[i] + dt * f
                    rhs_v[i] = v[i] + dt * g
                _thomas_solve(n, ru, cp_u, im_u, rhs_u, &u[0])
                _thomas_solve(n, rv, cp_v, im_v, rhs_v, &v[0])
                for i in range(n):
                    if not (isfinite(u[i]) and isfinite(v[i])):
                        status = NONFINITE
                        break
                    if u[i] < 0.0 or v[i] < 0.0:
                        status = NEGATIVE
                        break
                if status != OK:
                    break
    return status


def solve_coupled_tridiag(double dx, double d1, double d2,
                          const double[::1] fu, const double[::1] fv,
                          const double[::1] gu, const double[::1] gv,
                          const double[::1] r1, const double[::1] r2):
    """Block-tridiagonal solve of the linearised steady system with 2x2
    blocks per node; see fallback docstring for the layout."""
    cdef int n = fu.shape[0]
    cdef double s = 1.0 / (dx * dx)
    cdef cnp.ndarray x_arr = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray y_arr = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray work = np.empty(6 * n, dtype=np.float64)
    cdef double* x = <double*> cnp.PyArray_DATA(x_arr)
    cdef double* y = <double*> cnp.PyArray_DATA(y_arr)
    cdef double* buf = <double*> cnp.PyArray_DATA(work)
    cdef double* e11 = buf
    cdef double* e12 = buf + n
    cdef double* e21 = buf + 2 * n
    cdef double* e22 = buf + 3 * n
    cdef double* w1 = buf + 4 * n
    cdef double* w2 = buf + 5 * n
    cdef int i, status = OK
    cdef double a_i, c_i, b11, b12, b21, b22, det, inv
    cdef double q11, q12, q21, q22, z1, z2

    with nogil:
        for i in range(n):
            # diagonal block minus the elimination correction from node i-1
            b11 = d1 * (-2.0 * s) + fu[i]
            b12 = fv[i]
            b21 = gu[i]
            b22 = d2 * (-2.0 * s) + gv[i]
            z1 = r1[i]
            z2 = r2[i]
            if i > 0:
                a_i = 2.0 * s if i == n - 1 else s
                # subtract diag(d1 a, d2 a) * E_{i-1} and the matching rhs part
                b11 -= d1 * a_i * e11[i - 1]
                b12 -= d1 * a_i * e12[i - 1]
                b21 -= d2 * a_i * e21[i - 1]
                b22 -= d2 * a_i * e22[i - 1]
                z1 -= d1 * a_i * w1[i - 1]
                z2 -= d2 * a_i * w2[i - 1]
            det = b11 * b22 - b12 * b21
            if det == 0.0 or not isfinite(det):
                status = SINGULAR
                break
            inv = 1.0 / det
            q11 = b22 * inv
            q12 = -b12 * inv
            q21 = -b21 * inv
            q22 = b11 * inv
            if i < n - 1:
                c_i = 2.0 * s if i == 0 else s
                # E_i = D_i^{-1} C_i with C_i = diag(d1 c, d2 c)
                e11[i] = q11 * d1 * c_i
                e12[i] = q12 * d2 * c_i
                e21[i] = q21 * d1 * c_i
                e22[i] = q22 * d2 * c_i
            w1[i] = q11 * z1 + q12 * z2
            w2[i] = q21 * z1 + q22 * z2
        if status == OK:
            x[n - 1] = w1[n - 1]
            y[n - 1] = w2[n - 1]
            for i in range(n - 2, -1, -1):
                x[i] = w1[i] - e11[i] * x[i + 1] - e12[i] * y[i + 1]
                y[i] = w2[i] - e21[i] * x[i + 1] - e22[i] * y[i + 1]
            for i in range(n):
                if not (isfinite(x[i]) and isfinite(y[i])):
                    status = SINGULAR
                    break
    if status != OK:
        return status, None, None
    return OK, x_arr, y_arr
