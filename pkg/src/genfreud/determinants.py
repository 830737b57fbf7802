"""Hankel/Wronskian determinants tau_n(t; lam) and H_n = d/dt log tau_n.

Differentiating mu_0 in t raises lam by one, so the Wronskian of
mu_0, mu_0', ..., mu_0^(n-1) is the Hankel determinant
det[mu_0(t; lam + j + k)]_{j,k<n}.  Every entry comes from the closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

from .core import Params, PrecisionContext, central_diff, with_precision
from .moments import mu0


@dataclass(frozen=True)
class TauValue:
    n: int
    params: Params
    value: mpf
    log_value: mpf


@dataclass(frozen=True)
class HnValue:
    n: int
    params: Params
    value: mpf


def lu_logdet(rows) -> tuple[int, mpf]:
    """(sign, log|det|) by Gaussian elimination with full pivoting."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    logdet = mpf(0)
    for k in range(n):
        pi, pj = max(((i, j) for i in range(k, n) for j in range(k, n)),
                     key=lambda ij: abs(a[ij[0]][ij[1]]))
        piv = a[pi][pj]
        if piv == 0:
            return 0, mp.ninf
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
            sign = -sign
        if pj != k:
            for r in a:
                r[k], r[pj] = r[pj], r[k]
            sign = -sign
        if piv < 0:
            sign = -sign
        logdet += mp.log(abs(piv))
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
    return sign, logdet


def shifted_hankel(n: int, p: Params, ctx: PrecisionContext, offset: int = 0):
    """[mu_0(t; lam + j + k + offset)]_{j,k<n}."""
    col = [mu0(p.shifted(m + offset), ctx=ctx) for m in range(2 * n - 1)]
    return [[col[j + k] for k in range(n)] for j in range(n)]


@with_precision
def tau(n: int, p: Params, *, ctx: PrecisionContext) -> TauValue:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return TauValue(0, p, mpf(1), mpf(0))
    sign, logdet = lu_logdet(shifted_hankel(n, p, ctx))
    if sign <= 0:
        raise ArithmeticError(f"tau_{n} not positive at t={p.t}, lambda={p.lam}")
    return TauValue(n, p, mp.exp(logdet), logdet)


@with_precision
def log_tau(n: int, p: Params, *, ctx: PrecisionContext) -> mpf:
    return tau(n, p, ctx=ctx).log_value


@with_precision
def hn(n: int, p: Params, *, ctx: PrecisionContext) -> HnValue:
    """H_n = d/dt log tau_n by central differences."""
    if n == 0:
        return HnValue(0, p, mpf(0))
    value = central_diff(lambda s: log_tau(n, p.with_t(s), ctx=ctx), p.t, 1, ctx=ctx)
    return HnValue(n, p, value)


@with_precision
def hn_trace(n: int, p: Params, *, ctx: PrecisionContext) -> mpf:
    """H_n without differencing: tr(M^-1 M') with M' the lam+1 shifted Hankel matrix.

    Jacobi's formula d log det M = tr(M^-1 dM) and dM/dt = shift of lam by one.
    """
    if n == 0:
        return mpf(0)
    m = mp.matrix(shifted_hankel(n, p, ctx))
    dm = mp.matrix(shifted_hankel(n, p, ctx, offset=1))
    x = mp.inverse(m) * dm
    return sum(x[i, i] for i in range(n))


@with_precision
def sigma_residual(n: int, p: Params, *, ctx: PrecisionContext) -> mpf:
    """Residual of (H'')^2 - (t H' - H)^2/4 + H'(2H' - n)(2H' - n - lam) = 0."""
    if n < 1:
        raise ValueError("n must be at least 1")
    h = lambda s: hn(n, p.with_t(s), ctx=ctx).value
    step = ctx.nested_step
    H = h(p.t)
    dH = central_diff(h, p.t, 1, ctx=ctx, step=step)
    d2H = central_diff(h, p.t, 2, ctx=ctx, step=step)
    t, lam = p.t, p.lam
    return abs(d2H ** 2 - (t * dH - H) ** 2 / 4 + dH * (2 * dH - n) * (2 * dH - n - lam))
