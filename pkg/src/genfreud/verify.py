"""The full residual suite at one parameter point.

Every identity is folded into a single :class:`ResidualReport` over
n = 1..n_max.  Two convention checks are included: the ladder offset sign
must agree with the kernel-integral oracle, and the adopted S_1..S_5
closed forms must agree with the recurrence.
"""

from __future__ import annotations

from mpmath import mpf

from .core import Params, PrecisionContext, ResidualReport, with_precision
from .determinants import sigma_residual
from .laguerre import symmetrization_check
from .polynomials import closed_form_residual, gram_check
from .recurrence import backlund_residual, dp1_residual, hankel_betas, pIV_residual
from .special import riccati_residual
from .structure import (B_OFFSET_SIGN, decide_b_offset_sign, dde_residual,
                        lemma_b_sum_residual, ode_residual, shohat_residual)

IDENTITIES = ("riccati", "dp1", "pIV", "sigma", "backlund", "dde", "ode", "shohat",
              "lemma-b-sum", "symmetrization", "gram", "b-offset-sign", "closed-form-S")


def _report(name, values, tol, p, n_max, detail=""):
    worst = max(values, default=mpf(0))
    return ResidualReport(name, worst, tol, ((p.t, p.lam, n_max),), detail)


@with_precision
def run_suite(p: Params, n_max: int = 6, tolerance=mpf("1e-12"), *,
              ctx: PrecisionContext, only=None) -> list[ResidualReport]:
    """Evaluate every identity in ``IDENTITIES`` (or the subset ``only``)."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    tol = mpf(tolerance)
    wanted = set(IDENTITIES if only is None else only)
    unknown = wanted - set(IDENTITIES)
    if unknown:
        raise ValueError(f"unknown identities: {sorted(unknown)}")
    ns = range(1, n_max + 1)
    out = []

    def add(name, compute, detail=""):
        if name in wanted:
            out.append(_report(name, compute(), tol, p, n_max, detail))

    b = hankel_betas(n_max + 2, p, ctx=ctx)
    add("riccati", lambda: [riccati_residual(p, ctx=ctx)])
    add("dp1", lambda: [dp1_residual(n, p.t, p.lam, b) for n in ns])
    add("pIV", lambda: [pIV_residual(n, p, ctx=ctx) for n in ns])
    add("sigma", lambda: [sigma_residual(n, p, ctx=ctx) for n in ns])
    add("backlund", lambda: [max(backlund_residual(n, p, ctx=ctx)) for n in ns])
    add("dde", lambda: [dde_residual(n, p, ctx=ctx).max_residual for n in ns])
    add("ode", lambda: [ode_residual(n, p, ctx=ctx).max_residual for n in ns])
    add("shohat", lambda: [shohat_residual(n, p, ctx=ctx).max_residual
                           for n in range(4, n_max + 1)])
    add("lemma-b-sum", lambda: [lemma_b_sum_residual(n, p, ctx=ctx) for n in ns])
    add("symmetrization",
        lambda: [symmetrization_check(min(n_max, 12), p, ctx=ctx).max_residual])
    add("gram", lambda: [gram_check(n_max, p, ctx=ctx).max_residual])

    if "b-offset-sign" in wanted:
        decided = decide_b_offset_sign(n_max, p, ctx=ctx)
        out.append(_report("b-offset-sign", [mpf(decided != B_OFFSET_SIGN)], tol, p, n_max,
                           f"oracle sign {decided:+d}, adopted {B_OFFSET_SIGN:+d}"))
    add("closed-form-S", lambda: [closed_form_residual(p, ctx=ctx)])
    return out


def all_passed(reports) -> bool:
    return all(r.passed for r in reports)
