import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from genfreud import Params, moment, moment_oracle, moment_sequence, mu0


def test_mu0_closed_form_at_t1(ctx):
    ref = mp.exp(mpf(1) / 4) * mp.sqrt(mp.pi) / 2 * (1 + mp.erf(mpf(1) / 2))
    assert abs(mu0(Params(1, 0), ctx=ctx) - ref) < mpf(10) ** -60
    assert mp.nstr(ref, 11) == "1.7302344337"


def test_origin_moments_are_gamma_values(ctx, origin):
    # int |x| e^{-x^4} x^{2n} dx = Gamma((n+1)/2)/2
    for n in range(5):
        ref = mp.gamma(mpf(n + 1) / 2) / 2
        assert abs(moment(2 * n, origin, ctx=ctx) - ref) < mpf(10) ** -60


def test_odd_moments_vanish(ctx, origin):
    assert moment(3, origin, ctx=ctx) == 0
    assert moment_oracle(5, origin, ctx=ctx) == 0


def test_even_moment_is_shifted_mu0(ctx):
    p = Params("0.7", "1.5")
    assert moment(6, p, ctx=ctx) == mu0(p.shifted(3), ctx=ctx)


@pytest.mark.parametrize("t", ["-2", "0", "2", "30"])
def test_oracle_agreement(ctx, t):
    p = Params(t, "-0.3")
    for k in (0, 4):
        val = moment(k, p, ctx=ctx)
        assert abs(moment_oracle(k, p, ctx=ctx) - val) / val < mpf(10) ** -60


@given(st.decimals(min_value=-3, max_value=3, places=2).map(str),
       st.decimals(min_value="-0.95", max_value=3, places=2).map(str))
def test_moments_positive_and_log_convex(t, lam):
    seq = moment_sequence(6, Params(t, lam)).mu
    even = seq[::2]
    assert all(m > 0 for m in even)
    # Cauchy-Schwarz: mu_{2k}^2 <= mu_{2k-2} mu_{2k+2}
    for k in range(1, len(even) - 1):
        assert even[k] ** 2 <= even[k - 1] * even[k + 1]


def test_moment_sequence_methods_agree(ctx):
    p = Params(1, "0.5")
    a = moment_sequence(4, p, ctx=ctx).mu
    b = moment_sequence(4, p, "quadrature", ctx=ctx).mu
    assert max(abs(x - y) for x, y in zip(a, b)) < mpf(10) ** -55
