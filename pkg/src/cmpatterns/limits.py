"""Infinite-conversion limits and rescaled comparisons.

For large conversion c the positive equilibria split into two groups:

  * prey collapses like 1/c: in (w, v) = (c*u, v) the limit state is
    (d/(1-beta), 1/(1-beta)), requiring beta < 1;
  * prey stays order one: in (u, z) = (u, v/c) the limit prey levels solve
    psi1(u) = 1/beta, i.e. they are the zeros of G (the poles of the
    equilibrium curve C), each with z = phi1(u)/(d*beta).

`rescale_compare` measures how far a computed field sits from these limit
states in the rescaled variables; the distances shrink like 1/c along a
conversion ladder.  The limit systems themselves can be simulated by
passing KineticsKind.LIMIT_WV / LIMIT_UZ to the pde_sim entry points.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .fields import Field
from .kinetics import classify_regime, phi1
from .params import ModelParams


@dataclass(frozen=True)
class LimitEquilibria:
    wv_point: tuple | None   # (w, v) or None when beta >= 1
    uz_points: tuple         # ((u, z), ...) ascending in u, deduplicated


@dataclass(frozen=True)
class RescaleDistances:
    w_dist: float | None     # sup |c*u - w_hat|
    v_dist: float | None     # sup |v - v_hat|
    uz: tuple                # ((sup|u - u_hat|, sup|v/c - z_hat|), ...)


def limit_wv_equilibrium(beta: float, d: float) -> tuple:
    """Constant state (d/(1-beta), 1/(1-beta)) of the (w, v) limit system."""
    if not (beta > 0.0 and d > 0.0):
        raise ValueError("beta and d must be positive")
    if beta >= 1.0:
        raise DomainError("the (w, v) limit state needs beta < 1")
    return (d / (1.0 - beta), 1.0 / (1.0 - beta))


def limit_uz_equilibria(alpha: float, beta: float, d: float) -> tuple:
    """Solutions of psi1(u) = 1/beta in (0,1) with z = phi1(u)/(d*beta).

    Empty below the tangency level beta = 4 alpha/(1+alpha)^2 (alpha > 1);
    at the tangency the merged root is reported once.
    """
    if not d > 0.0:
        raise ValueError("d must be positive")
    zeros = classify_regime(alpha, beta, d).g_zeros
    distinct = []
    for z in zeros:
        if not distinct or z - distinct[-1] > 1e-12:
            distinct.append(z)
    return tuple((u, phi1(u, alpha) / (d * beta)) for u in distinct)


def limit_equilibria(p: ModelParams) -> LimitEquilibria:
    wv = None if p.beta >= 1.0 else limit_wv_equilibrium(p.beta, p.d)
    return LimitEquilibria(wv_point=wv,
                           uz_points=limit_uz_equilibria(p.alpha, p.beta, p.d))


def c_ladder(p: ModelParams, rungs: int = 4, base_factor: float = 50.0) -> list:
    """Doubling ladder of conversion rates starting at base_factor*d(1+alpha)."""
    base = base_factor * p.extinction_threshold
    return [base * 2.0**k for k in range(rungs)]


def rescale_compare(field: Field, p: ModelParams) -> RescaleDistances:
    """Sup-distances of a computed (u, v) field from the limit states, in
    the rescaled variables (c*u, v) and (u, v/c)."""
    lim = limit_equilibria(p)
    if lim.wv_point is None:
        w_dist = v_dist = None
    else:
        w_hat, v_hat = lim.wv_point
        w_dist = float(np.abs(p.c * field.u - w_hat).max())
        v_dist = float(np.abs(field.v - v_hat).max())
    uz = tuple((float(np.abs(field.u - u_hat).max()),
                float(np.abs(field.v / p.c - z_hat).max()))
               for u_hat, z_hat in lim.uz_points)
    return RescaleDistances(w_dist=w_dist, v_dist=v_dist, uz=uz)
