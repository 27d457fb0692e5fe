"""Constant positive equilibria of the full system.

A positive constant equilibrium (u, v) with 0 < u < 1 satisfies C(u) = c and
v = (c*phi1(u) - d)/(d*beta).  `solve_equilibria` splits the domain of C
into monotone pieces at the regime's critical points, brackets c on each
piece and refines by bisection; the count follows the fold structure of the
regime:

    c <= d(1+alpha)            no equilibrium (predator under-provisioned)
    strictly decreasing C      exactly one
    one interior minimum       1 / 2 / 3 as c crosses C(u_0)
    interior minimum + maximum 1 / 2 / 3 / 2 / 1 as c crosses C(u_1), C(u_2)
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoPositivePredator
from .kinetics import (RegimeClass, RegimeTag, c_of_u, c_prime, classify_regime,
                       phi1, psi1_prime)
from .params import ModelParams

# monotone pieces are shrunk inward by this much before bracketing
PIECE_SHRINK = 1e-12

# |c - C(x)| < TANGENCY_RTOL * c at a critical point x reports the fold as a
# double root at x itself
TANGENCY_RTOL = 1e-10

# roots closer than this merge into one entry
DEDUPE_TOL = 1e-9


@dataclass(frozen=True)
class Equilibrium:
    """Constant equilibrium with the two scalars the stability theory uses."""
    u: float
    v: float
    c_prime_at_u: float
    psi1_prime_at_u: float


@dataclass(frozen=True)
class ExpectedCount:
    count: int
    label: str  # none | unique | tangency_pair | triple


def v_from_u(u, p: ModelParams) -> float:
    """Predator level paired with prey level u; needs c*phi1(u) > d."""
    if not u > 0.0:
        raise DomainError("prey level must be positive")
    excess = p.c * phi1(u, p.alpha) - p.d
    if excess <= 0.0:
        raise NoPositivePredator(
            f"c*phi1(u) = {p.c * phi1(u, p.alpha):.6g} does not exceed d = {p.d:.6g}")
    return excess / (p.d * p.beta)


def make_equilibrium(u: float, p: ModelParams) -> Equilibrium:
    return Equilibrium(u=float(u), v=v_from_u(u, p),
                       c_prime_at_u=c_prime(u, p),
                       psi1_prime_at_u=psi1_prime(u, p.alpha))


def _monotone_pieces(reg: RegimeClass):
    pieces = []
    cuts = sorted(set(reg.c_critical_points))
    for lo, hi in reg.domain_of_c:
        pts = [lo] + [x for x in cuts if lo < x < hi] + [hi]
        pieces.extend(zip(pts[:-1], pts[1:]))
    return pieces


def _c_value(u, p: ModelParams) -> float:
    """C(u) for bracketing; points that fall into the numerical dead zone of
    a pole (G underflows to <= 0 although u is inside the piece) count as
    +inf, which is the correct limit there."""
    try:
        return c_of_u(u, p)
    except DomainError:
        return np.inf


def _piece_root(lo, hi, p: ModelParams):
    a = lo + PIECE_SHRINK
    b = hi - PIECE_SHRINK
    if not a < b:
        return None
    fa = _c_value(a, p) - p.c
    fb = _c_value(b, p) - p.c
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        return None
    while b - a > 1e-12:
        mid = 0.5 * (a + b)
        fm = _c_value(mid, p) - p.c
        if fm == 0.0:
            return mid
        if fa * fm < 0.0:
            b = mid
        else:
            a, fa = mid, fm
    root = 0.5 * (a + b)
    # Newton correction: C' grows like C^2 near the poles, so bisection alone
    # leaves |C(u)-c| well above c*1e-10 when the root sits close to one
    try:
        for _ in range(3):
            slope = c_prime(root, p)
            if slope == 0.0:
                break
            step = (c_of_u(root, p) - p.c) / slope
            cand = root - step
            if not lo < cand < hi:
                break
            root = cand
    except DomainError:
        pass
    return root


def solve_equilibria(p: ModelParams) -> list:
    """All constant positive equilibria, ascending in u."""
    reg = classify_regime(p.alpha, p.beta, p.d)
    pieces = _monotone_pieces(reg)

    roots = []
    skip = set()
    for x in sorted(set(reg.c_critical_points)):
        if abs(c_of_u(x, p) - p.c) < TANGENCY_RTOL * p.c:
            roots.append(x)
            # the adjacent pieces only carry the two coalescing roots; the
            # fold point itself stands in for the pair
            for i, (a, b) in enumerate(pieces):
                if a == x or b == x:
                    skip.add(i)

    for i, (a, b) in enumerate(pieces):
        if i in skip:
            continue
        r = _piece_root(a, b, p)
        if r is not None:
            roots.append(r)

    roots.sort()
    kept = []
    for r in roots:
        if not kept or r - kept[-1] > DEDUPE_TOL:
            kept.append(r)
    return [make_equilibrium(u, p) for u in kept]


def count_thresholds(p: ModelParams) -> dict:
    """Fold values of c separating the count cases, keyed by description."""
    reg = classify_regime(p.alpha, p.beta, p.d)
    out = {"extinction": p.extinction_threshold}
    crit = sorted(set(reg.c_critical_points))
    if reg.tag is RegimeTag.A_GT_1_B_MID_HIGH:
        out["fold"] = c_of_u(crit[0], p)
    elif reg.tag is RegimeTag.A_GT_1_B_MID_LOW and len(crit) == 2:
        out["fold_lower"] = c_of_u(crit[0], p)
        out["fold_upper"] = c_of_u(crit[1], p)
    return out


def expected_count(p: ModelParams) -> ExpectedCount:
    """Equilibrium count predicted from the regime and the fold values of C."""
    if p.c <= p.extinction_threshold:
        return ExpectedCount(0, "none")

    reg = classify_regime(p.alpha, p.beta, p.d)
    tag = reg.tag
    if tag in (RegimeTag.A_LE_1, RegimeTag.A_GT_1_B_GE_1, RegimeTag.A_GT_1_B_SMALL):
        return ExpectedCount(1, "unique")

    crit = sorted(set(reg.c_critical_points))
    if tag is RegimeTag.A_GT_1_B_MID_HIGH:
        if not crit:
            raise DomainError("fold point of C not located")
        c_fold = c_of_u(crit[0], p)
        if abs(p.c - c_fold) < TANGENCY_RTOL * p.c:
            return ExpectedCount(2, "tangency_pair")
        if p.c > c_fold:
            return ExpectedCount(3, "triple")
        return ExpectedCount(1, "unique")

    # A_GT_1_B_MID_LOW
    if len(crit) < 2:
        # merged critical point: C is injective, one equilibrium for any
        # admissible c
        return ExpectedCount(1, "unique")
    c_lo = c_of_u(crit[0], p)
    c_hi = c_of_u(crit[1], p)
    if (abs(p.c - c_lo) < TANGENCY_RTOL * p.c
            or abs(p.c - c_hi) < TANGENCY_RTOL * p.c):
        return ExpectedCount(2, "tangency_pair")
    if c_lo < p.c < c_hi:
        return ExpectedCount(3, "triple")
    return ExpectedCount(1, "unique")
