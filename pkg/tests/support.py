"""Shared draw helpers: random parameter sets inside a chosen kinetic regime,
kept a safe margin away from every case boundary so the expected equilibrium
count is unambiguous."""

import numpy as np

from cmpatterns.equilibria import count_thresholds, expected_count
from cmpatterns.kinetics import RegimeTag, classify_regime, g_tangency_beta, gamma_of_alpha
from cmpatterns.params import ModelParams

MARGIN = 1e-6

ALL_TAGS = (RegimeTag.A_LE_1, RegimeTag.A_GT_1_B_GE_1,
            RegimeTag.A_GT_1_B_MID_HIGH, RegimeTag.A_GT_1_B_MID_LOW,
            RegimeTag.A_GT_1_B_SMALL)


def draw_alpha_beta(rng, tag):
    """Alpha and beta inside the region of the given tag, at least MARGIN
    from the region boundaries."""
    if tag is RegimeTag.A_LE_1:
        alpha = rng.uniform(0.05, 1.0 - MARGIN)
        # stay off beta = 1 where the G-zero appears/disappears
        beta = rng.uniform(0.1, 0.999) if rng.random() < 0.5 else rng.uniform(1.001, 3.0)
        return alpha, beta
    alpha = rng.uniform(1.0 + 1e-3, 6.0)
    b_tan = g_tangency_beta(alpha)
    b_gam = gamma_of_alpha(alpha)
    if tag is RegimeTag.A_GT_1_B_GE_1:
        return alpha, rng.uniform(1.0 + MARGIN, 3.0)
    if tag is RegimeTag.A_GT_1_B_MID_HIGH:
        return alpha, rng.uniform(b_tan + MARGIN, 1.0 - MARGIN)
    if tag is RegimeTag.A_GT_1_B_MID_LOW:
        return alpha, rng.uniform(b_gam + MARGIN, b_tan - MARGIN)
    return alpha, rng.uniform(0.02, b_gam - MARGIN)


def draw_params(rng, tag, want=None):
    """A full parameter set in the given regime.

    want selects the target equilibrium count (0, 1 or 3 where available;
    None picks uniformly among the counts the regime supports).  The chosen
    c keeps a relative margin of MARGIN from the extinction level and from
    any fold value, so solve_equilibria and expected_count must agree.
    """
    alpha, beta = draw_alpha_beta(rng, tag)
    d = rng.uniform(0.02, 1.0)
    p = ModelParams(d1=1.0, d2=1.0, alpha=alpha, beta=beta, c=1.0, d=d)
    thr = count_thresholds(p)
    ext = thr["extinction"]
    folds = sorted(v for k, v in thr.items() if k != "extinction")
    supported = [0, 1] if not folds else [0, 1, 3]
    if want is None:
        want = supported[rng.integers(len(supported))]
    if want == 0:
        c = ext * rng.uniform(0.2, 1.0 - MARGIN)
    elif want == 1:
        if not folds:
            c = ext * rng.uniform(1.0 + MARGIN, 40.0)
        else:
            lo_fold = folds[0]
            if len(folds) == 1:
                # single fold: the single-root window sits below it
                hi = lo_fold * (1.0 - MARGIN)
                if hi <= ext * (1.0 + MARGIN):
                    c = folds[-1] * rng.uniform(1.5, 40.0)  # fall back above
                    want = 3 if tag is RegimeTag.A_GT_1_B_MID_HIGH else 1
                else:
                    c = rng.uniform(ext * (1.0 + MARGIN), hi)
            else:
                # below the lower fold or above the upper one
                if rng.random() < 0.5 and folds[0] > ext * (1.0 + 2 * MARGIN):
                    c = rng.uniform(ext * (1.0 + MARGIN), folds[0] * (1.0 - MARGIN))
                else:
                    c = folds[1] * rng.uniform(1.0 + MARGIN, 10.0)
    else:
        if len(folds) == 1:
            c = folds[0] * rng.uniform(1.0 + MARGIN, 10.0)
        else:
            lo = max(folds[0] * (1.0 + MARGIN), ext * (1.0 + MARGIN))
            hi = folds[1] * (1.0 - MARGIN)
            if hi <= lo:  # degenerate window; retry with a fresh draw
                return draw_params(rng, tag, want=None)
            c = rng.uniform(lo, hi)
    p = p.with_(c=c)
    return p, expected_count(p).count


def assert_regime(p, tag):
    assert classify_regime(p.alpha, p.beta, p.d).tag is tag


# Case-II parameter set with a dynamically stable striped steady state.
# The predator-feedback triple sits at u = (0.0307, 0.1767, 0.4592); the
# first root has phi1(u1) psi1'(u1)/d1 = 5.105 in (4, 9) and the middle one
# 10.85 in (9, 16), so the mode-count parity is odd and the degree sum is 3.
# Mode 2 of the first root becomes diffusively unstable at
# d2 = band_opening_d2(...) = 0.3831; doubling that lands well inside the
# band, where the bifurcated branch is an attractor.
PATTERN_SET = {
    "alpha": 3.0, "beta": 0.755, "d": 0.1, "c": 17.715, "d1": 0.01,
    "band_modes": (1, 2), "d2_factor": 2.0,
    "newton_mode": 2, "newton_rel": -0.7,
    "sim_mode": 2, "sim_rel": -0.3,
}


def pattern_params():
    """ModelParams for PATTERN_SET with d2 set above the band opening."""
    from cmpatterns.equilibria import solve_equilibria
    from cmpatterns.stability import band_opening_d2

    s = PATTERN_SET
    p0 = ModelParams(d1=s["d1"], d2=1.0, alpha=s["alpha"], beta=s["beta"],
                     c=s["c"], d=s["d"])
    e1 = solve_equilibria(p0)[0]
    d2 = s["d2_factor"] * band_opening_d2(e1, p0, s["band_modes"])
    return p0.with_(d2=d2), e1


def eigenmode_seed(e, p, mode, rel, n):
    """Constant state displaced along the leading eigenvector of Q_mode.

    Amplitude is rel * e.u on the prey component; the predator component
    follows the eigenvector ratio so the displacement decays (or grows)
    along a single linearised direction.
    """
    import numpy as np

    from cmpatterns.fields import Field
    from cmpatterns.stability import jacobian

    jac = jacobian(e, p)
    mu = (mode * np.pi / p.domain_length) ** 2
    Q = np.array([[jac.a11 - p.d1 * mu, jac.a12],
                  [jac.a21, jac.a22 - p.d2 * mu]])
    w, V = np.linalg.eig(Q)
    vec = V[:, int(np.argmax(w.real))].real
    vec = vec / vec[0]
    x = np.linspace(0.0, p.domain_length, n)
    amp = rel * e.u
    return Field(e.u + amp * np.cos(mode * np.pi * x / p.domain_length),
                 e.v + amp * vec[1] * np.cos(mode * np.pi * x / p.domain_length))
