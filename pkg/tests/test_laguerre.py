import pytest
from mpmath import mp, mpf

from genfreud import (Params, kernel_gram, kernel_polys, laguerre_recurrence, mu0,
                      painleve_alpha_beta, quadratic_map_residual, symmetrization_check)
from genfreud.laguerre import half_line_integral, half_line_moments

TOL = mpf(10) ** -40


def test_origin_values(ctx):
    lag = laguerre_recurrence(3, 0, 0, ctx=ctx)
    assert abs(lag.alpha[0] - 1 / mp.sqrt(mp.pi)) < TOL
    assert lag.beta[0] == 0
    assert lag.L[1].coeffs[1] == 1 and lag.L[1](lag.alpha[0]) == 0


def test_laguerre_orthogonality(ctx):
    p = Params(1, "0.5")
    lag = laguerre_recurrence(5, p.t, p.lam, ctx=ctx)
    mom = half_line_moments(10, p, ctx)
    for m in range(5):
        for n in range(m + 1, 6):
            assert abs(half_line_integral(lag.L[m] * lag.L[n], mom)) < TOL


def test_kernel_polys(ctx):
    p = Params(0, 0)
    Q = kernel_polys(laguerre_recurrence(3, 0, 0, ctx=ctx))
    assert Q[0].coeffs == (1,)
    # Q_1 = x - m'_1/m'_0 with moments of the lam + 1 weight
    ratio = mu0(p.shifted(2), ctx=ctx) / mu0(p.shifted(1), ctx=ctx)
    assert abs(Q[1].coeffs[0] + ratio) < TOL and Q[1].coeffs[1] == 1


@pytest.mark.parametrize("t,lam", [("0", "0"), ("-2", "2.5"), ("2", "-0.3")])
def test_kernel_orthogonality(ctx, t, lam):
    assert kernel_gram(6, Params(t, lam), ctx=ctx) < TOL


def test_symmetrization(ctx, grid_point):
    r = symmetrization_check(11, grid_point, ctx=ctx)
    assert r.passed and r.max_residual < TOL


def test_symmetrization_limit(ctx, origin):
    with pytest.raises(ValueError):
        symmetrization_check(13, origin, ctx=ctx)


def test_quadratic_map(ctx, grid_point):
    assert quadratic_map_residual(5, grid_point, ctx=ctx) < TOL


@pytest.mark.parametrize("t,lam", [("0", "0"), ("1", "0.5"), ("-2", "-0.3"), ("2", "2.5")])
def test_painleve_parametrization(ctx, t, lam):
    lag = laguerre_recurrence(2, t, lam, ctx=ctx)
    for n in (0, 1):
        a, b = painleve_alpha_beta(n, t, lam, ctx=ctx)
        assert abs(a - lag.alpha[n]) < mpf(10) ** -40
        assert abs(b - lag.beta[n]) < mpf(10) ** -40


def test_painleve_only_low_orders(ctx):
    with pytest.raises(ValueError):
        painleve_alpha_beta(2, 0, 0, ctx=ctx)
