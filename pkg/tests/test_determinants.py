import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from genfreud import Params, PrecisionContext, hn, hn_trace, log_tau, mu0, sigma_residual, tau
from genfreud.core import central_diff
from genfreud.determinants import lu_logdet


def test_tau_small_values(ctx, origin):
    assert tau(0, origin, ctx=ctx).value == 1
    assert tau(1, origin, ctx=ctx).value == mu0(origin, ctx=ctx)
    # det [[mu0(0), mu0(1)], [mu0(1), mu0(2)]] = (sqrt(pi)/2)(1/2) - (1/2)^2... with mu0(lam) = Gamma((lam+1)/2)/2
    ref = mp.sqrt(mp.pi) / 2 * mp.sqrt(mp.pi) / 4 - mpf(1) / 4
    assert abs(tau(2, origin, ctx=ctx).value - ref) < mpf(10) ** -60
    assert mp.nstr(ref, 17) == "0.14269908169872415"


def test_tau_rejects_negative_order(ctx, origin):
    with pytest.raises(ValueError):
        tau(-1, origin, ctx=ctx)


def test_mu0_derivative_raises_lambda(ctx):
    p = Params("0.4", "-0.3")
    d = central_diff(lambda s: mu0(p.with_t(s), ctx=ctx), p.t, 1, ctx=ctx)
    assert abs(d / mu0(p.shifted(1), ctx=ctx) - 1) < mpf(10) ** -45


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("t,lam", [("0", "0"), ("1", "0.5"), ("-2", "-0.3"), ("2", "2.5")])
def test_wronskian_equals_shifted_hankel(ctx, n, t, lam):
    # the Wronskian of mu0, mu0', ..., mu0^(n-1) in t, derivatives taken by mpmath.diff
    p = Params(t, lam)
    fine = PrecisionContext(ctx.digits, ctx.guard + 160)
    with fine.workdps():
        f = lambda s: mu0(p.with_t(s), ctx=fine)
        # two-point central steps: error O(h^2), cancellation 6 * 20 digits at order 6
        d = [mp.diff(f, p.t, k, h=mpf(10) ** -20) for k in range(2 * n - 1)]
        w = mp.det(mp.matrix([[d[j + k] for k in range(n)] for j in range(n)]))
    hank = tau(n, p, ctx=ctx).value
    assert abs(w / hank - 1) < mpf(10) ** -30


@pytest.mark.parametrize("n", [1, 2, 5])
def test_hn_difference_matches_trace(ctx, grid_point, n):
    assert abs(hn(n, grid_point, ctx=ctx).value - hn_trace(n, grid_point, ctx=ctx)) < mpf(10) ** -40


def test_h1_is_phi_and_large_t(ctx):
    p = Params(50, 1)
    assert mp.nstr(hn_trace(1, p, ctx=ctx), 4) == "25.02"


@pytest.mark.parametrize("n", [1, 3, 6])
def test_sigma_equation(ctx, n):
    assert sigma_residual(n, Params("0.5", "1"), ctx=ctx) < mpf(10) ** -25


@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4))
def test_lu_logdet_matches_mpmath(rows):
    ref = mp.det(mp.matrix(rows))
    sign, logdet = lu_logdet([[mpf(x) for x in r] for r in rows])
    if ref == 0:
        assert sign == 0 or abs(mp.exp(logdet)) < mpf(10) ** -40
    else:
        assert sign * mp.exp(logdet) == pytest.approx(ref, rel=1e-30)


def test_log_tau_grows_with_n(ctx):
    p = Params(0, "0.5")
    assert log_tau(6, p, ctx=ctx) < log_tau(5, p, ctx=ctx)
