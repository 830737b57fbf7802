"""Moments of the weight |x|^(2 lam + 1) exp(-x^4 + t x^2) on the real line.

Odd moments vanish.  Even moments only shift the exponent,
mu_2n(t; lam) = mu_0(t; lam + n), and

    mu_0(t; lam) = Gamma(lam+1) 2^(-(lam+1)/2) exp(t^2/8) D_(-lam-1)(-t/sqrt2).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from mpmath import mp, mpf

from .core import Params, PrecisionContext, with_precision
from .special import pcf_d, power_weight_quad


@functools.lru_cache(maxsize=4096)
def _mu0_cached(t: mpf, lam: mpf, dps: int) -> mpf:
    z = -t / mp.sqrt(2)
    return (mp.gamma(lam + 1) * mp.power(2, -(lam + 1) / 2) * mp.exp(t * t / 8)
            * pcf_d(-lam - 1, z, ctx=_CTX_BY_DPS(dps)))


def _CTX_BY_DPS(dps: int) -> PrecisionContext:
    return PrecisionContext(digits=max(dps, 16), guard=0)


@with_precision
def mu0(p: Params, *, ctx: PrecisionContext) -> mpf:
    """First moment mu_0(t; lambda), via the parabolic cylinder closed form."""
    return +_mu0_cached(p.t, p.lam, mp.dps)


@with_precision
def moment(k: int, p: Params, *, ctx: PrecisionContext) -> mpf:
    """k-th moment from the closed form: 0 for odd k, mu_0(t; lam + k/2) otherwise."""
    if k < 0:
        raise ValueError("moment order must be non-negative")
    if k % 2:
        return mpf(0)
    return mu0(p.shifted(k // 2), ctx=ctx)


@with_precision
def moment_oracle(k: int, p: Params, *, ctx: PrecisionContext) -> mpf:
    """k-th moment by direct quadrature of the defining integral.

    Folding to [0, inf) and substituting y = x^2 leaves
    int_0^Y y^(lam + k/2) exp(-y^2 + t y) dy, truncated where
    Y^2 - t Y = (digits + 10) ln 10.
    """
    if k < 0:
        raise ValueError("moment order must be non-negative")
    if k % 2:
        return mpf(0)
    t = p.t
    a = p.lam + k // 2
    c = (ctx.working_digits + 10) * mp.ln(10)
    top = (t + mp.sqrt(t * t + 4 * c)) / 2
    peak = (t + mp.sqrt(t * t + 8 * max(a, mpf(0)))) / 4
    return power_weight_quad(a, lambda y: mp.exp(-y * y + t * y), top, peak=peak)


@dataclass(frozen=True)
class MomentSequence:
    params: Params
    mu: tuple
    method: str


@with_precision
def moment_sequence(N: int, p: Params, method: str = "closed-form", *,
                    ctx: PrecisionContext) -> MomentSequence:
    """mu_0 .. mu_2N by either route."""
    if method == "closed-form":
        f = moment
    elif method == "quadrature":
        f = moment_oracle
    else:
        raise ValueError(f"unknown moment method {method!r}")
    return MomentSequence(p, tuple(f(k, p, ctx=ctx) for k in range(2 * N + 1)), method)
