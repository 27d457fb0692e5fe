"""Damped Newton iteration for discrete steady states.

The unknown is the interleaved nodal vector (u_0, v_0, u_1, v_1, ...); the
residual is the semi-discrete right-hand side and the Jacobian couples the
no-flux Laplacian with the pointwise reaction Jacobian, giving a
block-tridiagonal system solved by the active kernel backend.  Steps are
damped by backtracking (up to 30 halvings) and iterates must stay inside
the open box (0, 1.5) x (0, 1.5 c/(d beta)), a margin above the a-priori
bounds for genuine steady states.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .equilibria import solve_equilibria
from .errors import InsufficientModes, NoConvergence, SingularJacobian
from .fields import Field, Grid, is_constant_component
from .kinetics import KineticsKind, reaction_jacobian_terms
from .params import ModelParams
from .pde_sim import init_field, semi_discrete_rhs
from .stability import classify_stability, dispersion, jacobian

BOX_U = 1.5
DEDUPE_TOL = 1e-6


class SteadyClass(Enum):
    CONSTANT = "Constant"
    NONCONSTANT = "Nonconstant"


@dataclass
class SteadyResult:
    field: Field
    residual_norm: float
    newton_iters: int
    classification: SteadyClass
    bounds_ok: bool
    residual_history: tuple


def residual(field: Field, p: ModelParams, grid: Grid,
             kind: KineticsKind = KineticsKind.CM) -> np.ndarray:
    """Steady-state residual as one interleaved 2n-vector."""
    ru, rv = semi_discrete_rhs(field, p, grid, kind)
    out = np.empty(2 * grid.n)
    out[0::2] = ru
    out[1::2] = rv
    return out


def classify_solution(field: Field) -> SteadyClass:
    if is_constant_component(field.u) and is_constant_component(field.v):
        return SteadyClass.CONSTANT
    return SteadyClass.NONCONSTANT


def _box_v(p: ModelParams) -> float:
    return BOX_U * p.predator_cap


def _inside_box(u, v, p) -> bool:
    return (u.min() > 0.0 and v.min() > 0.0
            and u.max() < BOX_U and v.max() < _box_v(p))


def newton_solve(initial: Field, p: ModelParams, grid: Grid,
                 kind: KineticsKind = KineticsKind.CM,
                 tol: float = 1e-10, max_iter: int = 100) -> SteadyResult:
    """Newton iteration from `initial`; converged when the residual
    sup-norm drops below tol (default 1e-10)."""
    if not _inside_box(initial.u, initial.v, p):
        raise ValueError("initial guess outside the positivity box")
    kern = _kernels.active()
    u = initial.u.copy()
    v = initial.v.copy()

    def res_pair(uu, vv):
        ru, rv = semi_discrete_rhs(Field(uu, vv), p, grid, kind)
        return ru, rv, max(float(np.abs(ru).max()), float(np.abs(rv).max()))

    ru, rv, rn = res_pair(u, v)
    history = [rn]
    iters = 0
    while rn >= tol:
        if iters >= max_iter:
            raise NoConvergence(
                f"residual {rn:.3g} after {max_iter} Newton iterations")
        fu, fv, gu, gv = reaction_jacobian_terms(u, v, p, kind)
        fu = np.ascontiguousarray(fu, dtype=np.float64)
        fv = np.ascontiguousarray(np.broadcast_to(fv, u.shape), dtype=np.float64)
        gu = np.ascontiguousarray(gu, dtype=np.float64)
        gv = np.ascontiguousarray(np.broadcast_to(gv, u.shape), dtype=np.float64)
        status, du, dv = kern.solve_coupled_tridiag(grid.dx, p.d1, p.d2,
                                                    fu, fv, gu, gv, -ru, -rv)
        if status != _kernels.OK:
            raise SingularJacobian("linearised steady system is singular")
        lam = 1.0
        for _ in range(31):
            u_try = u + lam * du
            v_try = v + lam * dv
            if _inside_box(u_try, v_try, p):
                ru_t, rv_t, rn_t = res_pair(u_try, v_try)
                if np.isfinite(rn_t) and rn_t < rn:
                    u, v, ru, rv, rn = u_try, v_try, ru_t, rv_t, rn_t
                    break
            lam *= 0.5
        else:
            raise NoConvergence(
                f"backtracking stalled at residual {rn:.3g} (iteration {iters})")
        iters += 1
        history.append(rn)

    field = Field(u, v, initial.t)
    bounds_ok = bool(u.min() > 0.0 and v.min() > 0.0
                     and u.max() <= 1.0 + 1e-8
                     and v.max() <= p.predator_cap + 1e-8)
    return SteadyResult(field=field, residual_norm=rn, newton_iters=iters,
                        classification=classify_solution(field),
                        bounds_ok=bounds_ok, residual_history=tuple(history))


def seeded_initial_fields(p: ModelParams, grid: Grid, count: int,
                          seed: int = 0) -> list:
    """Deterministic family of smooth positive starting fields inside the
    positivity box; start k uses the stream (seed, k)."""
    out = []
    x = grid.x
    for k in range(count):
        rng = np.random.default_rng([seed, k])
        mean_u = rng.uniform(0.15, 0.9)
        mean_v = p.predator_cap * rng.uniform(0.05, 0.8)
        amps_u = rng.uniform(-0.2, 0.2, 4)
        amps_v = rng.uniform(-0.2, 0.2, 4)
        u = np.full(grid.n, mean_u)
        v = np.full(grid.n, mean_v)
        for j in range(1, 5):
            shape = np.cos(j * np.pi * x / grid.length)
            u += mean_u * amps_u[j - 1] * shape
            v += mean_v * amps_v[j - 1] * shape
        out.append(Field(u, v))
    return out


def _mode_direction(e, p: ModelParams, j: int) -> np.ndarray:
    """Leading eigenvector of the mode-j block of the linearisation, scaled
    so that a unit amplitude displaces the worse-off component by its full
    equilibrium value.  Prey and predator move in opposite phase along the
    unstable direction here, which a same-sign nudge cannot imitate."""
    jac = jacobian(e, p)
    mu = (j * np.pi / p.domain_length) ** 2
    q = np.array([[jac.a11 - p.d1 * mu, jac.a12],
                  [jac.a21, jac.a22 - p.d2 * mu]])
    w, vecs = np.linalg.eig(q)
    vec = vecs[:, int(np.argmax(w.real))].real
    return vec / max(abs(vec[0]) / e.u, abs(vec[1]) / e.v)


def multi_start(p: ModelParams, grid: Grid, kind: KineticsKind = KineticsKind.CM,
                amplitudes=(0.01, 0.05, 0.1), extra_seeds: int = 0,
                seed: int = 0, tol: float = 1e-10, max_iter: int = 100) -> list:
    """Newton from every constant equilibrium displaced along the leading
    eigenvector of each of its unstable modes (both signs, several
    amplitudes), plus optional seeded random starts; converged results
    deduplicated by sup-distance.

    An amplitude is the largest relative displacement either component
    takes, so any value below one keeps the start positive.  The defaults
    stay close to the constants; basins of nonconstant states can sit far
    out along the eigendirection, so pattern hunts should also pass
    amplitudes of a few tenths.

    Failures (no convergence, singular systems) are dropped silently: the
    point of the sweep is the set of distinct steady states it finds.
    """
    starts = []
    for e in solve_equilibria(p):
        starts.append(init_field(grid, e))
        try:
            verdict = classify_stability(dispersion(e, p))
            unstable = verdict.unstable_modes
        except InsufficientModes:
            unstable = ()
        for j in unstable:
            direction = _mode_direction(e, p, j)
            shape = np.cos(j * np.pi * grid.x / grid.length)
            for amp in amplitudes:
                for sign in (1.0, -1.0):
                    f0 = Field(e.u + sign * amp * direction[0] * shape,
                               e.v + sign * amp * direction[1] * shape)
                    if f0.u.min() > 0.0 and f0.v.min() > 0.0:
                        starts.append(f0)
    starts.extend(seeded_initial_fields(p, grid, extra_seeds, seed))

    found = []
    for f0 in starts:
        try:
            res = newton_solve(f0, p, grid, kind, tol=tol, max_iter=max_iter)
        except (NoConvergence, SingularJacobian):
            continue
        dup = any(max(float(np.abs(res.field.u - r.field.u).max()),
                      float(np.abs(res.field.v - r.field.v).max())) < DEDUPE_TOL
                  for r in found)
        if not dup:
            found.append(res)
    return found
