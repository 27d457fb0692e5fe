"""Linearised analysis at constant equilibria under no-flux conditions.

The linearisation of the reaction at an equilibrium (u, v) is

    G_u = [ phi1(u) psi1'(u)      -phi1(u) phi2'(v) ]
          [ c phi2(v) phi1'(u)    -d beta phi2(v)   ]

(the product-rule terms proportional to psi1 - phi2 and psi2 + c*phi1 vanish
because both factors are zero at an equilibrium).  Against the Neumann
eigenvalues mu_j = (j pi / L)^2 of -d^2/dx^2 on (0, L), mode j evolves with
the matrix Q_j = G_u - diag(d1, d2) mu_j, and

    det Q_j = d1 d2 mu^2 - (d2 a11 + d1 a22) mu + det G_u =: H(mu)

is a parabola in mu.  Where H has real roots lambda_minus <= lambda_plus,
the open interval between them is the band of diffusively unstable spatial
eigenvalues; counting Neumann eigenvalues inside it gives the fixed point
index (-1)^gamma used by the degree argument for nonconstant steady states.
"""

from dataclasses import dataclass
from math import ceil, floor, isfinite, pi, sqrt

import numpy as np

from .equilibria import Equilibrium
from .errors import EigenvalueOnBandBoundary, InsufficientModes
from .kinetics import phi1, phi1_prime, phi2, phi2_prime
from .params import ModelParams

BAND_EDGE_TOL = 1e-10


@dataclass(frozen=True)
class Jacobian2x2:
    a11: float
    a12: float
    a21: float
    a22: float

    @property
    def trace(self) -> float:
        return self.a11 + self.a22

    @property
    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a21


@dataclass(frozen=True)
class DispersionRow:
    j: int
    mu: float
    trace: float
    det: float
    max_re_lambda: float


@dataclass(frozen=True)
class StabilityResult:
    stable: bool
    unstable_modes: tuple


@dataclass(frozen=True)
class IndexEntry:
    band: tuple | None
    gamma: int
    index: int


@dataclass(frozen=True)
class IndexReport:
    entries: tuple
    degree_sum: int
    predicts_nonconstant: bool


@dataclass(frozen=True)
class ThresholdReport:
    a_bound: float
    b_bound: float
    mu1: float
    d_star: float


def jacobian(e: Equilibrium, p: ModelParams) -> Jacobian2x2:
    """Reaction Jacobian at a constant equilibrium."""
    f1 = phi1(e.u, p.alpha)
    f2 = phi2(e.v, p.beta)
    return Jacobian2x2(
        a11=f1 * e.psi1_prime_at_u,
        a12=-f1 * phi2_prime(e.v, p.beta),
        a21=p.c * f2 * phi1_prime(e.u, p.alpha),
        a22=-p.d * p.beta * f2,
    )


def neumann_spectrum(length: float, j_max: int) -> np.ndarray:
    """Eigenvalues (j pi / L)^2, j = 0..j_max, of -d^2/dx^2 with no-flux
    ends; on an interval every eigenvalue is simple."""
    if not length > 0.0:
        raise ValueError("domain length must be positive")
    if j_max < 0:
        raise ValueError("j_max must be nonnegative")
    j = np.arange(j_max + 1)
    return (j * pi / length) ** 2


def _max_re_root(tr: float, det: float) -> float:
    """Largest real part among roots of z^2 - tr z + det."""
    disc = tr * tr - 4.0 * det
    if disc < 0.0:
        return 0.5 * tr
    root = sqrt(disc)
    if tr > 0.0:
        return 0.5 * (tr + root)
    big = 0.5 * (tr - root)  # the larger-magnitude root; avoids cancellation
    if big == 0.0:
        return 0.0
    return det / big


def _band_quadratic(jac: Jacobian2x2, p: ModelParams):
    """Coefficients (A, B, C) of det Q as a quadratic in mu."""
    return p.d1 * p.d2, -(p.d2 * jac.a11 + p.d1 * jac.a22), jac.det


def default_j_max(e: Equilibrium, p: ModelParams) -> int:
    """Smallest j whose eigenvalue clears both the det-parabola (twice the
    vertex abscissa and the upper band edge) and the trace zero; at least 16."""
    jac = jacobian(e, p)
    qa, qb, qc = _band_quadratic(jac, p)
    vertex = -qb / (2.0 * qa)
    target = max(2.0 * vertex, 0.0)
    band = _band_roots(qa, qb, qc)
    if band is not None:
        target = max(target, band[1])
    if jac.trace > 0.0:
        target = max(target, jac.trace / (p.d1 + p.d2))
    j = floor(p.domain_length * sqrt(max(target, 0.0)) / pi) + 1
    return max(16, j)


def dispersion(e: Equilibrium, p: ModelParams, j_max: int | None = None) -> list:
    """Per-mode trace, determinant and growth rate of Q_j = G_u - mu_j D."""
    if j_max is None:
        j_max = default_j_max(e, p)
    jac = jacobian(e, p)
    rows = []
    for j, mu in enumerate(neumann_spectrum(p.domain_length, j_max)):
        b11 = jac.a11 - p.d1 * mu
        b22 = jac.a22 - p.d2 * mu
        tr = b11 + b22
        det = b11 * b22 - jac.a12 * jac.a21
        rows.append(DispersionRow(j=j, mu=float(mu), trace=tr, det=det,
                                  max_re_lambda=_max_re_root(tr, det)))
    return rows


def classify_stability(rows: list) -> StabilityResult:
    """Stable iff every sampled mode has trace < 0 and det > 0.

    The verdict is only sound when the rows reach past the det-parabola
    vertex (det rising at the tail) and into the trace-negative range;
    otherwise modes beyond j_max could still destabilise, and we refuse to
    answer rather than extrapolate.
    """
    if len(rows) < 2:
        raise InsufficientModes("need at least two modes to see the parabola tail")
    last, prev = rows[-1], rows[-2]
    if not (last.det > prev.det and last.trace < 0.0 and last.det > 0.0):
        raise InsufficientModes(
            f"modes up to j = {last.j} do not clear the instability range; "
            "raise j_max")
    unstable = tuple(r.j for r in rows if not (r.trace < 0.0 and r.det > 0.0))
    return StabilityResult(stable=not unstable, unstable_modes=unstable)


def _band_roots(qa: float, qb: float, qc: float):
    """Real roots of qa*x^2 + qb*x + qc, ascending, or None.

    Evaluated with the product trick so the small root survives cancellation."""
    disc = qb * qb - 4.0 * qa * qc
    if disc < 0.0:
        return None
    if qb == 0.0:
        r = sqrt(disc) / (2.0 * qa)
        return (-r, r)
    q = -0.5 * (qb + (1.0 if qb > 0.0 else -1.0) * sqrt(disc))
    r1 = q / qa
    r2 = qc / q
    return (r1, r2) if r1 <= r2 else (r2, r1)


def lambda_band(e: Equilibrium, p: ModelParams):
    """Instability band (lambda_minus, lambda_plus) in the spatial eigenvalue,
    or None when the det-parabola stays positive.

    As d2 grows (predator diffusion dominating), lambda_plus tends to
    a11/d1 = phi1(u) psi1'(u)/d1 and lambda_minus to 0: the band fills
    (0, a11/d1) exactly when the prey-activation slope psi1'(u) is positive.
    """
    return _band_roots(*_band_quadratic(jacobian(e, p), p))


def index_and_degree(equilibria: list, p: ModelParams) -> IndexReport:
    """Fixed point indices (-1)^gamma_i and their sum over the given
    equilibria; a sum different from 1 (the degree of the whole positive
    cone) forces a nonconstant steady state to exist."""
    entries = []
    total = 0
    for e in equilibria:
        band = lambda_band(e, p)
        gamma = 0
        if band is not None and band[1] > 0.0:
            lo, hi = band
            j_top = ceil(p.domain_length * sqrt(hi) / pi) + 1 if isfinite(hi) else 0
            for mu in neumann_spectrum(p.domain_length, j_top):
                if min(abs(mu - lo), abs(mu - hi)) < BAND_EDGE_TOL:
                    raise EigenvalueOnBandBoundary(
                        f"mu = {mu:.12g} sits on a band edge of ({lo:.12g}, {hi:.12g})")
                if lo < mu < hi:
                    gamma += 1
        idx = -1 if gamma % 2 else 1
        entries.append(IndexEntry(band=band, gamma=gamma, index=idx))
        total += idx
    return IndexReport(entries=tuple(entries), degree_sum=total,
                       predicts_nonconstant=(total != 1))


def nonexistence_threshold(p: ModelParams) -> ThresholdReport:
    """Diffusion level above which no nonconstant steady state survives.

    a_bound dominates the prey equation (3/2 + c alpha/d + c^2/(2d)), b_bound
    the predator equation (c/(1+alpha) + c^2/(2d) + 1/2); dividing the larger
    one by mu_1 turns the energy estimate into a threshold for min(d1, d2).
    """
    a_bound = 1.5 + p.c * p.alpha / p.d + p.c * p.c / (2.0 * p.d)
    b_bound = p.c / (1.0 + p.alpha) + p.c * p.c / (2.0 * p.d) + 0.5
    mu1 = (pi / p.domain_length) ** 2
    return ThresholdReport(a_bound=a_bound, b_bound=b_bound, mu1=mu1,
                           d_star=max(a_bound, b_bound) / mu1)


def band_opening_d2(e: Equilibrium, p: ModelParams, modes) -> float:
    """Smallest d2 beyond which every requested mode j lies inside the
    instability band of this equilibrium.

    det Q_j is affine in d2 with slope mu_j (d1 mu_j - a11), so each mode
    below the a11/d1 cutoff crosses into the band at an explicit d2; the
    answer is the largest of those crossings (0 if all modes are already
    inside for every positive d2).  Modes at or beyond the cutoff never
    enter the band and raise ValueError.
    """
    jac = jacobian(e, p)
    worst = 0.0
    for j in modes:
        mu = (j * pi / p.domain_length) ** 2
        if mu == 0.0:
            if jac.det < 0.0:
                continue  # mode 0 is in the band for any d2
            raise ValueError("mode 0 enters the band only when det G_u < 0")
        slope = mu * (p.d1 * mu - jac.a11)
        if slope >= 0.0:
            raise ValueError(
                f"mode {j}: mu = {mu:.6g} is not below a11/d1; no d2 opens the band")
        crossing = (p.d1 * (-jac.a22) * mu + jac.det) / (-slope)
        worst = max(worst, crossing)
    return worst
