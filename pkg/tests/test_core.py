import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from genfreud import Params, PrecisionContext, PrecisionExhausted, ResidualReport, combine
from genfreud.core import central_diff


def test_context_derived_quantities():
    c = PrecisionContext(40, guard=10)
    assert c.working_digits == 50
    assert abs(c.eps / mpf(10) ** -40 - 1) < mpf(10) ** -45
    assert c.nested_step > c.deriv_step > c.eps


@pytest.mark.parametrize("digits", [0, 15, 20.5])
def test_context_rejects_bad_digits(digits):
    with pytest.raises(ValueError):
        PrecisionContext(digits)


def test_context_from_env(monkeypatch):
    monkeypatch.setenv("FREUD_DIGITS", "33")
    assert PrecisionContext.from_env().digits == 33
    monkeypatch.delenv("FREUD_DIGITS")
    assert PrecisionContext.from_env().digits == 50


def test_workdps_restores_precision():
    before = mp.dps
    with PrecisionContext(100).workdps():
        assert mp.dps == 120
    assert mp.dps == before


def test_params_validation_and_exact_decimals():
    with pytest.raises(ValueError):
        Params(0, -1)
    p = Params("0.1", "-0.3")
    with mp.workdps(110):
        assert abs(p.t - mpf("0.1")) < mpf(10) ** -100
    assert p.shifted(2).lam == p.lam + 2
    assert p.with_t(3).t == 3


def test_central_diff_exp(ctx):
    assert abs(central_diff(mp.exp, 1, 1, ctx=ctx) - mp.e) < mpf(10) ** -45
    assert abs(central_diff(mp.exp, 1, 2, ctx=ctx) - mp.e) < mpf(10) ** -25
    with pytest.raises(ValueError):
        central_diff(mp.exp, 1, 3, ctx=ctx)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=5), st.integers(-3, 3))
def test_central_diff_exact_on_quartics(coeffs, x):
    # the five-point stencils are exact for polynomials of degree <= 4
    ctx = PrecisionContext(30)
    f = lambda s: sum(c * s ** k for k, c in enumerate(coeffs))
    df = sum(k * c * mpf(x) ** (k - 1) for k, c in enumerate(coeffs) if k)
    with ctx.workdps():
        assert abs(central_diff(f, x, 1, ctx=ctx) - df) < mpf(10) ** -25


def test_residual_report_and_combine():
    a = ResidualReport("x", mpf("1e-20"), mpf("1e-12"), ((0, 0, 1),))
    b = ResidualReport("x", mpf("1e-10"), mpf("1e-12"), ((1, 0, 1),))
    assert a.passed and not b.passed
    assert a.line().startswith("PASS x")
    both = combine("x", [a, b])
    assert not both.passed and len(both.grid) == 2


def test_precision_exhausted_message():
    exc = PrecisionExhausted("beta_dp1[9]", "lost digits", required_digits=80)
    assert "beta_dp1[9]" in str(exc) and "80" in str(exc)
