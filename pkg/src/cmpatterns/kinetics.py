"""Scalar kinetics of the Crowley-Martin predator-prey system.

Notation used throughout the package, for prey u >= 0 and predator v >= 0:

    phi1(u) = u/(1+alpha*u)        phi2(v) = v/(1+beta*v)
    psi1(u) = (1-u)(1+alpha*u)     psi2(v) = -d(1+beta*v)

so that the reaction terms factor as

    f(u,v) = phi1(u) * (psi1(u) - phi2(v))
    g(u,v) = phi2(v) * (psi2(v) + c*phi1(u))

Positive constant equilibria (u, v) with 0 < u < 1 are parametrised by the
prey level: eliminating v gives the scalar equation C(u) = c with

    G(u) = 1/beta - (1-u)(1+alpha*u)
    C(u) = d(1+alpha*u) / (beta*u*G(u))     on  {u in (0,1): G(u) > 0}.

The sign of C' is the sign of the cubic

    H(u) = -2 alpha^2 u^3 + alpha(alpha-4) u^2 + 2(alpha-1) u - (1/beta - 1)

via C'(u) = d H(u) / (beta u^2 G(u)^2).  The shape of C over (0,1) falls
into five regimes depending on (alpha, beta); `classify_regime` computes the
regime tag together with the zeros of G (poles of C) and the interior
critical points of C (roots of H inside the domain).
"""

from dataclasses import dataclass
from enum import Enum, IntEnum

import numpy as np

from .errors import DomainError
from .params import ModelParams

# absolute tolerance for snapping (alpha, beta) onto a regime boundary; the
# classification is discontinuous across these equalities, so values closer
# than this are resolved to the tangency case
BOUNDARY_SNAP = 1e-12

# roots of G and H are refined to this absolute tolerance in u
ROOT_TOL = 1e-12

# a root of H closer than this to a domain endpoint is treated as sitting on
# the boundary (where C is undefined) and dropped
EDGE_GUARD = 1e-9


# ---------------------------------------------------------------------------
# pointwise building blocks
# ---------------------------------------------------------------------------

def phi1(u, alpha):
    return u / (1.0 + alpha * u)


def phi1_prime(u, alpha):
    return 1.0 / (1.0 + alpha * u) ** 2


def phi2(v, beta):
    return v / (1.0 + beta * v)


def phi2_prime(v, beta):
    return 1.0 / (1.0 + beta * v) ** 2


def psi1(u, alpha):
    return (1.0 - u) * (1.0 + alpha * u)


def psi1_prime(u, alpha):
    return (alpha - 1.0) - 2.0 * alpha * u


def psi2(v, beta, d):
    return -d * (1.0 + beta * v)


def functional_response(u, v, p: ModelParams):
    """Predation rate per predator, u/((1+alpha*u)(1+beta*v))."""
    if np.any(np.asarray(u) < 0.0) or np.any(np.asarray(v) < 0.0):
        raise DomainError("functional response needs u, v >= 0")
    return u / ((1.0 + p.alpha * u) * (1.0 + p.beta * v))


def reaction(u, v, p: ModelParams):
    """Reaction pair (f, g) of the full system."""
    pr = functional_response(u, v, p)
    f = u * (1.0 - u) - pr * v
    g = -p.d * v + p.c * pr * v
    return f, g


# ---------------------------------------------------------------------------
# the equilibrium curve C and its derivative
# ---------------------------------------------------------------------------

def g_of_u(u, alpha, beta):
    """G(u) = 1/beta - (1-u)(1+alpha*u); C has a pole where G vanishes."""
    return 1.0 / beta - (1.0 - u) * (1.0 + alpha * u)


def h_of_u(u, alpha, beta):
    """Cubic carrying the sign of C'."""
    a = alpha
    return (-2.0 * a * a * u**3 + a * (a - 4.0) * u**2
            + 2.0 * (a - 1.0) * u - (1.0 / beta - 1.0))


def _check_c_domain(u, alpha, beta):
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0.0) or np.any(u >= 1.0):
        raise DomainError("C(u) is defined for 0 < u < 1 only")
    if np.any(g_of_u(u, alpha, beta) <= 0.0):
        raise DomainError("C(u) needs G(u) > 0")


def c_of_u(u, p: ModelParams):
    """Conversion rate that makes u the prey level of a constant equilibrium."""
    _check_c_domain(u, p.alpha, p.beta)
    val = p.d * (1.0 + p.alpha * u) / (p.beta * u * g_of_u(u, p.alpha, p.beta))
    return float(val) if np.isscalar(u) else val


def c_prime(u, p: ModelParams):
    """dC/du; shares the sign of H(u) on the domain of C."""
    _check_c_domain(u, p.alpha, p.beta)
    g = g_of_u(u, p.alpha, p.beta)
    val = p.d * h_of_u(u, p.alpha, p.beta) / (p.beta * u * u * g * g)
    return float(val) if np.isscalar(u) else val


def gamma_of_alpha(alpha):
    """Interference level below which C has no interior critical point
    (alpha > 1).  Equals 27a/((a-1)^2(a+8) + 27a); value in (0, 1]."""
    a = alpha
    return 27.0 * a / ((a - 1.0) ** 2 * (a + 8.0) + 27.0 * a)


def g_tangency_beta(alpha):
    """beta at which the two zeros of G merge: 1/beta equals the maximum of
    psi1 over (0,1), attained at (alpha-1)/(2 alpha) for alpha > 1."""
    return 4.0 * alpha / (1.0 + alpha) ** 2


# ---------------------------------------------------------------------------
# regime classification
# ---------------------------------------------------------------------------

class RegimeTag(Enum):
    A_LE_1 = "A_LE_1"
    A_GT_1_B_GE_1 = "A_GT_1_B_GE_1"
    A_GT_1_B_MID_HIGH = "A_GT_1_B_MID_HIGH"
    A_GT_1_B_MID_LOW = "A_GT_1_B_MID_LOW"
    A_GT_1_B_SMALL = "A_GT_1_B_SMALL"


@dataclass(frozen=True)
class RegimeClass:
    """Shape of C over (0,1).

    g_zeros            poles of C (zeros of G), ascending; a tangency is
                       reported as a repeated value
    c_critical_points  roots of H strictly inside the domain, ascending;
                       idem for a repeated value at the fold
    domain_of_c        open intervals where C is defined
    """
    tag: RegimeTag
    g_zeros: tuple
    c_critical_points: tuple
    domain_of_c: tuple


def _bisect(fn, lo, hi, tol=ROOT_TOL):
    """Plain bisection; assumes fn(lo) and fn(hi) have opposite signs."""
    flo = fn(lo)
    fhi = fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise ValueError("bisection bracket does not straddle a sign change")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = fn(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def _polish(fn, dfn, x, lo, hi, iters=2):
    """A couple of Newton corrections, kept inside the bracket."""
    for _ in range(iters):
        df = dfn(x)
        if df == 0.0:
            break
        step = fn(x) / df
        x_new = x - step
        if not (lo < x_new < hi):
            break
        x = x_new
    return x


def _g_root(alpha, beta, lo, hi):
    x = _bisect(lambda u: g_of_u(u, alpha, beta), lo, hi)
    return _polish(lambda u: g_of_u(u, alpha, beta),
                   lambda u: 2.0 * alpha * u - (alpha - 1.0), x, lo, hi)


def _h_root(alpha, beta, lo, hi):
    x = _bisect(lambda u: h_of_u(u, alpha, beta), lo, hi)
    a = alpha
    return _polish(lambda u: h_of_u(u, alpha, beta),
                   lambda u: -6.0 * a * a * u * u + 2.0 * a * (a - 4.0) * u + 2.0 * (a - 1.0),
                   x, lo, hi)


def _domain_from_zeros(g_zeros):
    if not g_zeros:
        return ((0.0, 1.0),)
    if len(g_zeros) == 1:
        return ((g_zeros[0], 1.0),)
    return ((0.0, g_zeros[0]), (g_zeros[1], 1.0))


def _critical_points_in(pieces, roots):
    kept = []
    for r in roots:
        for lo, hi in pieces:
            if lo + EDGE_GUARD < r < hi - EDGE_GUARD:
                kept.append(r)
                break
    return tuple(sorted(kept))


def classify_regime(alpha, beta, d) -> RegimeClass:
    """Locate (alpha, beta) in the five-regime decomposition of the C-curve.

    Boundary equalities resolve to the closed side (alpha = 1 counts as
    alpha <= 1, beta = 1 as beta >= 1, and the tangency values
    beta = 4 alpha/(1+alpha)^2 and beta = gamma(alpha) join the regime whose
    description includes them); values within 1e-12 of a boundary are
    snapped onto it.
    """
    for name, val in (("alpha", alpha), ("beta", beta), ("d", d)):
        if not val > 0.0:
            raise ValueError(f"{name} must be positive")

    if abs(alpha - 1.0) <= BOUNDARY_SNAP:
        alpha = 1.0
    if abs(beta - 1.0) <= BOUNDARY_SNAP:
        beta = 1.0

    u_vertex = (alpha - 1.0) / (2.0 * alpha)   # maximiser of psi1 (alpha > 1)
    u_hump = (alpha - 1.0) / (3.0 * alpha)     # maximiser of H    (alpha > 1)

    if alpha <= 1.0:
        # C is strictly decreasing on its whole domain; G is increasing, so
        # there is a single pole iff beta > 1
        if beta > 1.0:
            zeros = (_g_root(alpha, beta, 0.0, 1.0),)
        else:
            zeros = ()
        return RegimeClass(RegimeTag.A_LE_1, zeros, (),
                           _domain_from_zeros(zeros))

    b_tan = g_tangency_beta(alpha)
    b_gam = gamma_of_alpha(alpha)

    if beta >= 1.0:
        if beta == 1.0:
            zeros = ((alpha - 1.0) / alpha,)
        else:
            # G(vertex) <= G(0) < 0 < G(1): single pole on the rising branch
            zeros = (_g_root(alpha, beta, u_vertex, 1.0),)
        return RegimeClass(RegimeTag.A_GT_1_B_GE_1, zeros, (),
                           _domain_from_zeros(zeros))

    if abs(beta - b_tan) <= BOUNDARY_SNAP or beta > b_tan:
        # two poles straddling the psi1 maximiser; C keeps one interior
        # minimum on the left piece
        if abs(beta - b_tan) <= BOUNDARY_SNAP:
            zeros = (u_vertex, u_vertex)
        else:
            zeros = (_g_root(alpha, beta, 0.0, u_vertex),
                     _g_root(alpha, beta, u_vertex, 1.0))
        pieces = _domain_from_zeros(zeros)
        crit = _critical_points_in(pieces, (_h_root(alpha, beta, 0.0, u_hump),
                                            _h_root(alpha, beta, u_hump, 1.0)))
        return RegimeClass(RegimeTag.A_GT_1_B_MID_HIGH, zeros, crit, pieces)

    if abs(beta - b_gam) <= BOUNDARY_SNAP:
        crit = (u_hump, u_hump)
        return RegimeClass(RegimeTag.A_GT_1_B_MID_LOW, (), crit, ((0.0, 1.0),))

    if beta > b_gam:
        # no poles; H rises through zero before its hump and falls back after
        crit = (_h_root(alpha, beta, 0.0, u_hump),
                _h_root(alpha, beta, u_hump, u_vertex))
        return RegimeClass(RegimeTag.A_GT_1_B_MID_LOW, (), crit, ((0.0, 1.0),))

    return RegimeClass(RegimeTag.A_GT_1_B_SMALL, (), (), ((0.0, 1.0),))


# ---------------------------------------------------------------------------
# reaction variants (hook used by the time stepper and the Newton solver)
# ---------------------------------------------------------------------------

class KineticsKind(IntEnum):
    """Right-hand sides the solvers can be pointed at.

    CM        the full system in (u, v)
    LIMIT_WV  infinite-conversion scaling in (w, v) = (c*u, v): the pair
              slot holds (w, v) and the reaction is
                  f = w(1 - v/(1+beta*v)),  g = -d v + w v/(1+beta*v)
    LIMIT_UZ  infinite-conversion scaling in (u, z) = (u, v/c):
                  f = u(1-u) - u/(beta(1+alpha*u)),  g = -d z + u/(beta(1+alpha*u))
    NONE      zero reaction (pure diffusion; used to validate the stepper)
    """
    CM = 0
    LIMIT_WV = 1
    LIMIT_UZ = 2
    NONE = 3


def reaction_terms(u, v, p: ModelParams, kind: KineticsKind = KineticsKind.CM):
    """Vectorised reaction pair for the chosen kinetics variant."""
    if kind == KineticsKind.CM:
        return reaction(u, v, p)
    if kind == KineticsKind.LIMIT_WV:
        pred = v / (1.0 + p.beta * v)
        return u * (1.0 - pred), -p.d * v + u * pred
    if kind == KineticsKind.LIMIT_UZ:
        uptake = u / (p.beta * (1.0 + p.alpha * u))
        return u * (1.0 - u) - uptake, -p.d * v + uptake
    if kind == KineticsKind.NONE:
        z = np.zeros_like(np.asarray(u, dtype=float))
        return z, z.copy()
    raise ValueError(f"unknown kinetics kind {kind!r}")


def reaction_jacobian_terms(u, v, p: ModelParams,
                            kind: KineticsKind = KineticsKind.CM):
    """Pointwise reaction Jacobian (f_u, f_v, g_u, g_v), vectorised."""
    a, b, c, d = p.alpha, p.beta, p.c, p.d
    if kind == KineticsKind.CM:
        fu = phi1_prime(u, a) * (psi1(u, a) - phi2(v, b)) + phi1(u, a) * psi1_prime(u, a)
        fv = -phi1(u, a) * phi2_prime(v, b)
        gu = c * phi2(v, b) * phi1_prime(u, a)
        gv = phi2_prime(v, b) * (psi2(v, b, d) + c * phi1(u, a)) - d * b * phi2(v, b)
        return fu, fv, gu, gv
    if kind == KineticsKind.LIMIT_WV:
        s = 1.0 + b * v
        return (1.0 - v / s, -u / s**2, v / s, -d + u / s**2)
    if kind == KineticsKind.LIMIT_UZ:
        dz = np.zeros_like(np.asarray(u, dtype=float))
        fu = 1.0 - 2.0 * u - 1.0 / (b * (1.0 + a * u) ** 2)
        gu = 1.0 / (b * (1.0 + a * u) ** 2)
        return fu, dz, gu, dz - d
    if kind == KineticsKind.NONE:
        z = np.zeros_like(np.asarray(u, dtype=float))
        return z, z.copy(), z.copy(), z.copy()
    raise ValueError(f"unknown kinetics kind {kind!r}")


def reaction_lipschitz(p: ModelParams, kind: KineticsKind = KineticsKind.CM,
                       u_max=None, v_max=None) -> float:
    """Upper bound for the max row sum of the reaction Jacobian over the
    invariant box [0, u_max] x [0, v_max].

    Defaults: the full system uses its a-priori box [0,1] x [0, c/(d beta)];
    the limit variants use boxes built from their equilibria with a margin.
    """
    a, b, c, d = p.alpha, p.beta, p.c, p.d
    if kind == KineticsKind.CM:
        if u_max is None:
            u_max = 1.0
        if v_max is None:
            v_max = p.predator_cap
        m_psi1 = max(1.0, (1.0 + a) ** 2 / (4.0 * a))
        m_phi2 = min(1.0 / b, v_max)
        phi1_top = u_max / (1.0 + a * u_max)
        dpsi1 = max(abs(a - 1.0), abs(a - 1.0 - 2.0 * a * u_max))
        row_f = (max(m_psi1, m_phi2) + phi1_top * dpsi1) + phi1_top
        row_g = c * m_phi2 + max(d * (1.0 + b * v_max), c * phi1_top) + d * b * m_phi2
        return max(row_f, row_g)
    if kind == KineticsKind.LIMIT_WV:
        if u_max is None or v_max is None:
            if b >= 1.0:
                raise DomainError("LIMIT_WV box defaults need beta < 1")
            u_max = 4.0 * max(1.0, d / (1.0 - b)) if u_max is None else u_max
            v_max = 4.0 * max(1.0, 1.0 / (1.0 - b)) if v_max is None else v_max
        row_f = max(1.0, 1.0 / b) + u_max
        row_g = min(v_max, 1.0 / b) + d + u_max
        return max(row_f, row_g)
    if kind == KineticsKind.LIMIT_UZ:
        return max(1.0 + 1.0 / b, 1.0 / b + d)
    if kind == KineticsKind.NONE:
        return 0.0
    raise ValueError(f"unknown kinetics kind {kind!r}")
