"""Time integration of the reaction-diffusion system on [0, L] with no-flux ends.

The stepper is IMEX: reaction explicit, diffusion implicit, so each step
solves one tridiagonal system per component.  With the step bounded by
0.4 / Lip (Lip a reaction Jacobian bound over the invariant box) the update
preserves positivity: the explicit stage cannot cross zero because both
reaction terms carry a factor of their own component, and the implicit
diffusion matrix is inverse-positive.
"""

from dataclasses import dataclass
from enum import Enum
from math import ceil, gcd, inf

import numpy as np

from . import _kernels
from .equilibria import Equilibrium
from .errors import NonpositiveField, NonpositiveInitialData, StepRejected
from .fields import Field, Grid, is_constant_component, laplacian, spread
from .kinetics import KineticsKind, reaction_lipschitz, reaction_terms
from .params import ModelParams


class RunOutcome(Enum):
    CONVERGED_CONSTANT = "ConvergedConstant"
    CONVERGED_NONCONSTANT = "ConvergedNonconstant"
    TIMED_OUT = "TimedOut"
    BLOWUP = "Blowup"


@dataclass
class RunReport:
    outcome: RunOutcome
    final: Field
    rate_norm: float          # last residual sup-norm of the semi-discrete system
    constancy: tuple          # (spread of u, spread of v) at the end
    lyapunov_trace: np.ndarray | None
    steps: int
    dt: float


def dt_max(p: ModelParams, kind: KineticsKind = KineticsKind.CM, **box) -> float:
    """Largest admissible IMEX step, 0.4 over the reaction Lipschitz bound."""
    lip = reaction_lipschitz(p, kind, **box)
    return inf if lip == 0.0 else 0.4 / lip


def init_field(grid: Grid, base, modes=(), amplitude: float = 0.0,
               seed: int | None = None) -> Field:
    """Base state plus cosine perturbations a * sum_j w_j cos(j pi x / L).

    base may be an Equilibrium, a pair of constants or a pair of profiles.
    Without a seed all weights are 1; with a seed they are uniform on
    [-1, 1], drawn u-weights first then v-weights, so a given seed always
    builds the same field.  Both components must come out strictly positive.
    """
    if isinstance(base, Equilibrium):
        base_u, base_v = base.u, base.v
    else:
        base_u, base_v = base
    x = grid.x
    u = np.broadcast_to(np.asarray(base_u, dtype=float), x.shape).copy()
    v = np.broadcast_to(np.asarray(base_v, dtype=float), x.shape).copy()

    modes = tuple(int(j) for j in modes)
    if any(j < 0 for j in modes):
        raise ValueError("perturbation modes must be nonnegative integers")
    if modes and amplitude != 0.0:
        rng = np.random.default_rng(seed) if seed is not None else None
        w_u = rng.uniform(-1.0, 1.0, len(modes)) if rng is not None else np.ones(len(modes))
        w_v = rng.uniform(-1.0, 1.0, len(modes)) if rng is not None else np.ones(len(modes))
        for w1, w2, j in zip(w_u, w_v, modes):
            shape = np.cos(j * np.pi * x / grid.length)
            u += amplitude * w1 * shape
            v += amplitude * w2 * shape

    if u.min() <= 0.0 or v.min() <= 0.0:
        raise NonpositiveInitialData(
            f"initial data must be strictly positive (min u = {u.min():.3g}, "
            f"min v = {v.min():.3g})")
    return Field(u, v, 0.0)


def _advance(field: Field, grid: Grid, nsteps: int, dt: float, p: ModelParams,
             kind: KineticsKind) -> int:
    kern = _kernels.active()
    return kern.imex_advance(field.u, field.v, nsteps, dt, grid.dx,
                             p.d1, p.d2, int(kind), p.alpha, p.beta, p.c, p.d)


def step(field: Field, dt: float, p: ModelParams, grid: Grid,
         kind: KineticsKind = KineticsKind.CM) -> Field:
    """One IMEX step; rejects inadmissible dt and bad values."""
    if not 0.0 < dt <= dt_max(p, kind):
        raise ValueError(f"dt = {dt:.3g} outside (0, {dt_max(p, kind):.3g}]")
    out = field.copy()
    status = _advance(out, grid, 1, dt, p, kind)
    if status != _kernels.OK:
        what = "non-finite value" if status == _kernels.NONFINITE else "negative value"
        raise StepRejected(f"step produced a {what}")
    out.t = field.t + dt
    return out


def semi_discrete_rhs(field: Field, p: ModelParams, grid: Grid,
                      kind: KineticsKind = KineticsKind.CM):
    """Right-hand side (d1 L u + f, d2 L v + g) of the method-of-lines system;
    its sup-norm is the steadiness residual used everywhere."""
    f, g = reaction_terms(field.u, field.v, p, kind)
    ru = p.d1 * laplacian(field.u, grid.dx) + f
    rv = p.d2 * laplacian(field.v, grid.dx) + g
    return ru, rv


def run_until(field: Field, p: ModelParams, grid: Grid,
              steady_tol: float = 1e-8, t_max: float = 2000.0,
              dt: float | None = None, kind: KineticsKind = KineticsKind.CM,
              check_every: int = 25, lyapunov_ref: Equilibrium | None = None,
              sample_every: int = 100) -> RunReport:
    """March to steadiness, blowup, or the time horizon.

    Steadiness means the semi-discrete residual drops below steady_tol in
    sup-norm; the final profile is then classified constant or nonconstant
    by its relative spread.  When lyapunov_ref is given the Lyapunov value
    is recorded every sample_every steps (including t = 0).
    """
    if dt is None:
        dt = dt_max(p, kind)
        if dt == inf:
            raise ValueError("pure diffusion has no natural dt; pass one")
    elif not 0.0 < dt <= dt_max(p, kind):
        raise ValueError(f"dt = {dt:.3g} outside (0, {dt_max(p, kind):.3g}]")

    field = field.copy()
    t0 = field.t
    trace = None
    if lyapunov_ref is not None:
        chunk = gcd(check_every, sample_every)
        trace = [lyapunov_value(field, lyapunov_ref, p, grid)]
    else:
        chunk = check_every

    total = max(1, ceil(t_max / dt - 1e-9))
    steps = 0

    def report(outcome, rate):
        tr = None if trace is None else np.asarray(trace)
        return RunReport(outcome=outcome, final=field, rate_norm=rate,
                         constancy=(spread(field.u), spread(field.v)),
                         lyapunov_trace=tr, steps=steps, dt=dt)

    while steps < total:
        n_chunk = min(chunk, total - steps)
        status = _advance(field, grid, n_chunk, dt, p, kind)
        steps += n_chunk
        field.t = t0 + steps * dt
        if status != _kernels.OK:
            return report(RunOutcome.BLOWUP, inf)
        if trace is not None and steps % sample_every == 0:
            trace.append(lyapunov_value(field, lyapunov_ref, p, grid))
        ru, rv = semi_discrete_rhs(field, p, grid, kind)
        rate = max(float(np.abs(ru).max()), float(np.abs(rv).max()))
        if rate < steady_tol:
            const = (is_constant_component(field.u)
                     and is_constant_component(field.v))
            return report(RunOutcome.CONVERGED_CONSTANT if const
                          else RunOutcome.CONVERGED_NONCONSTANT, rate)
    return report(RunOutcome.TIMED_OUT, rate)


def lyapunov_value(field: Field, e: Equilibrium, p: ModelParams, grid: Grid) -> float:
    """Energy of the field relative to a positive constant equilibrium.

    The integrand is c * int_{u*}^{u} (phi1(s)-phi1(u*))/phi1(s) ds plus the
    same expression in v with phi2.  Since (phi1(s)-phi1(u*))/phi1(s)
    = 1 - phi1(u*)(1/s + alpha), the inner integral evaluates to

        [ (u - u*) - u* log(u/u*) ] / (1 + alpha u*)

    and likewise for v with beta; both parts are nonnegative and vanish only
    at the equilibrium, so the value is zero iff the field equals it.
    """
    if field.u.min() <= 0.0 or field.v.min() <= 0.0:
        raise NonpositiveField("Lyapunov value needs strictly positive fields")
    iu = ((field.u - e.u) - e.u * np.log(field.u / e.u)) / (1.0 + p.alpha * e.u)
    iv = ((field.v - e.v) - e.v * np.log(field.v / e.v)) / (1.0 + p.beta * e.v)
    w = grid.weights
    return float(p.c * np.dot(w, iu) + np.dot(w, iv))
