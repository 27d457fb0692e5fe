import numpy as np
import pytest

from cmpatterns.equilibria import solve_equilibria
from cmpatterns.errors import DomainError
from cmpatterns.fields import Field
from cmpatterns.kinetics import g_tangency_beta, psi1
from cmpatterns.limits import (c_ladder, limit_equilibria,
                               limit_uz_equilibria, limit_wv_equilibrium,
                               rescale_compare)
from cmpatterns.params import ModelParams


def test_wv_limit_point_closed_form():
    w, v = limit_wv_equilibrium(0.5, 0.2)
    assert w == pytest.approx(0.4, rel=1e-14)
    assert v == pytest.approx(2.0, rel=1e-14)
    with pytest.raises(DomainError):
        limit_wv_equilibrium(1.0, 0.2)
    with pytest.raises(ValueError):
        limit_wv_equilibrium(-0.1, 0.2)


def test_uz_limit_points_solve_psi1_equation():
    pts = limit_uz_equilibria(3.0, 0.9, 0.1)
    assert len(pts) == 2
    for u, z in pts:
        assert psi1(u, 3.0) == pytest.approx(1.0 / 0.9, rel=1e-10)
        assert z == pytest.approx(u / ((1 + 3 * u) * 0.1 * 0.9), rel=1e-12)
    assert pts[0][0] < pts[1][0]


def test_uz_limit_empty_below_tangency_and_merged_at_it():
    assert limit_uz_equilibria(3.0, 0.5, 0.1) == ()
    b_tan = g_tangency_beta(3.0)
    merged = limit_uz_equilibria(3.0, b_tan, 0.1)
    assert len(merged) == 1
    assert merged[0][0] == pytest.approx(1.0 / 3.0, abs=1e-10)  # (alpha-1)/(2alpha)


def test_limit_equilibria_collects_both_views():
    p = ModelParams(d1=1, d2=1, alpha=3.0, beta=0.9, c=100.0, d=0.1)
    lim = limit_equilibria(p)
    assert lim.wv_point == pytest.approx((1.0, 10.0), rel=1e-12)
    assert len(lim.uz_points) == 2
    p_big_beta = p.with_(beta=1.2)
    assert limit_equilibria(p_big_beta).wv_point is None


def test_c_ladder_doubles_from_extinction_multiple():
    p = ModelParams(d1=1, d2=1, alpha=3.0, beta=0.9, c=1.0, d=0.1)
    ladder = c_ladder(p, rungs=4, base_factor=50.0)
    base = 50.0 * 0.1 * 4.0
    assert ladder == pytest.approx([base, 2 * base, 4 * base, 8 * base], rel=1e-13)


def test_equilibria_approach_limit_points_along_ladder():
    """The small-prey constant equilibrium tracks the (w, v) point like 1/c
    and the order-one roots pin to the G-zeros.

    At alpha = 3, beta = 0.8 the fold sits at 43.3 times the extinction
    level, so every rung of the 50x ladder carries the full triple; the
    G-zeros are exactly 1/6 and 1/2 here.
    """
    p0 = ModelParams(d1=1, d2=1, alpha=3.0, beta=0.8, c=1.0, d=0.1)
    w_hat, v_hat = limit_wv_equilibrium(0.8, 0.1)
    prev_w = prev_u = None
    for c in c_ladder(p0, rungs=4, base_factor=50.0):
        p = p0.with_(c=c)
        eqs = solve_equilibria(p)
        assert len(eqs) == 3
        small, mid, big = eqs
        w_err = abs(c * small.u - w_hat)
        field = Field(np.full(16, big.u), np.full(16, big.v))
        uz_err = min(d[0] for d in rescale_compare(field, p).uz)
        if prev_w is not None:
            assert w_err < prev_w
            assert uz_err < prev_u
        prev_w, prev_u = w_err, uz_err
    assert prev_w < 0.05 * w_hat
    assert prev_u < 5e-3


def test_rescale_compare_distances():
    p = ModelParams(d1=1, d2=1, alpha=3.0, beta=0.9, c=200.0, d=0.1)
    w_hat, v_hat = limit_wv_equilibrium(0.9, 0.1)
    field = Field(np.full(8, w_hat / 200.0), np.full(8, v_hat + 0.25))
    dist = rescale_compare(field, p)
    assert dist.w_dist == pytest.approx(0.0, abs=1e-12)
    assert dist.v_dist == pytest.approx(0.25, rel=1e-12)
    assert len(dist.uz) == 2
