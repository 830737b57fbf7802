"""Ladder (differential-difference) relation, second-order ODE and Shohat coefficients.

All identities are checked as polynomial identities: both sides are
expanded into coefficient vectors and the largest coefficient of the
difference is reported, relative to the largest coefficient of the terms
that were combined.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mpf

from .core import Params, PrecisionContext, ResidualReport, with_precision
from .polynomials import X, Poly, integrate, orthogonal_polys
from .recurrence import hankel_betas

# Sign s in the B_n offset (lam + 1/2)(1 + s (-1)^n).  The ladder oracle
# confirms s = -1; see decide_b_offset_sign.
B_OFFSET_SIGN = -1


@dataclass(frozen=True)
class LadderPair:
    n: int
    params: Params
    A: Poly
    B: Poly


@dataclass(frozen=True)
class OdeCoeffs:
    """R_n = R_num / R_den and T_n = T_num / T_den as polynomial ratios."""

    n: int
    params: Params
    R_num: Poly
    R_den: Poly
    T_num: Poly
    T_den: Poly

    def R(self, x) -> mpf:
        return self.R_num(x) / self.R_den(x)

    def T(self, x) -> mpf:
        return self.T_num(x) / self.T_den(x)


@dataclass(frozen=True)
class ShohatCoeffs:
    n: int
    c: dict


def _betas(n_needed: int, p: Params, betas, ctx) -> list:
    if betas is None or len(betas) <= n_needed:
        return hankel_betas(n_needed, p, ctx=ctx)
    return betas


def b_offset(n: int, lam, sign: int = B_OFFSET_SIGN) -> mpf:
    return (mpf(lam) + mpf(1) / 2) * (1 + sign * (-1) ** n)


def _relative(residual: Poly, *terms: Poly) -> mpf:
    scale = max(t.max_abs() for t in terms)
    return residual.max_abs() / scale if scale else residual.max_abs()


@with_precision
def ladder(n: int, p: Params, betas=None, *, ctx: PrecisionContext,
           sign: int = B_OFFSET_SIGN) -> LadderPair:
    """A_n = 4 beta_n x (x^2 - t/2 + beta_n + beta_{n+1}), B_n = 4 beta_n x^2 + offset."""
    if n < 1:
        raise ValueError("n must be at least 1")
    b = _betas(n + 1, p, betas, ctx)
    w = Poly([-p.t / 2 + b[n] + b[n + 1], 0, 1])
    A = 4 * b[n] * X * w
    B = Poly([b_offset(n, p.lam, sign), 0, 4 * b[n]])
    return LadderPair(n, p, A, B)


@with_precision
def dde_residual(n: int, p: Params, *, ctx: PrecisionContext, tolerance=None,
                 sign: int = B_OFFSET_SIGN) -> ResidualReport:
    """x S_n' + B_n S_n - A_n S_{n-1}, expanded exactly."""
    b = hankel_betas(n + 1, p, ctx=ctx)
    S = orthogonal_polys(n, p, ctx=ctx)
    lad = ladder(n, p, b, ctx=ctx, sign=sign)
    lhs = X * S[n].derivative()
    bs = lad.B * S[n].to_poly()
    as_ = lad.A * S[n - 1].to_poly()
    res = _relative(lhs + bs - as_, lhs, bs, as_)
    tol = mpf(10) ** (-(ctx.digits / 3)) if tolerance is None else mpf(tolerance)
    return ResidualReport(f"dde[n={n}]", res, tol, ((p.t, p.lam, n),))


def _kernel_integrals(poly: Poly, p: Params, ctx) -> tuple:
    """(int poly w, int y poly w, int y^2 poly w) by exact moment sums."""
    return tuple(integrate(Poly.x_power(k) * poly, p, ctx) for k in range(3))


def _integral_over_y(poly: Poly, p: Params, ctx) -> mpf:
    """int poly(y)/y w(y) dy; only the odd part of poly contributes (principal value)."""
    odd = Poly([c if k % 2 else 0 for k, c in enumerate(poly.coeffs)] or [0])
    if odd.degree < 0:
        return mpf(0)
    return integrate(odd.divide_by_x(), p, ctx)


@with_precision
def ladder_oracle(n: int, p: Params, *, ctx: PrecisionContext) -> LadderPair:
    """A_n, B_n from the kernel integrals with K(x, y) = 4x^2 + 4xy + 4y^2 - 2t.

        A_n = x/h_{n-1} int K S_n^2 w dy
        B_n = x/h_{n-1} int K S_n S_{n-1} w dy + (2 lam + 1)/h_{n-1} int S_n S_{n-1}/y w dy

    Every integral is a finite sum of moments; no recurrence coefficient enters.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    S = [s.to_poly() for s in orthogonal_polys(n, p, ctx=ctx)]
    h_prev = integrate(S[n - 1] * S[n - 1], p, ctx)
    t = p.t

    def kernel_poly(prod: Poly) -> Poly:
        i0, i1, i2 = _kernel_integrals(prod, p, ctx)
        # int K prod w dy as a polynomial in x
        return Poly([-2 * t * i0 + 4 * i2, 4 * i1, 4 * i0])

    A = X * kernel_poly(S[n] * S[n]) * (1 / h_prev)
    gamma = 2 * p.lam + 1
    offset = gamma * _integral_over_y(S[n] * S[n - 1], p, ctx) / h_prev
    B = X * kernel_poly(S[n] * S[n - 1]) * (1 / h_prev) + offset
    return LadderPair(n, p, A, B)


@with_precision
def parity_integrals(n: int, p: Params, *, ctx: PrecisionContext) -> tuple[mpf, mpf, mpf]:
    """(int S_n^2/y w, int S_n S_{n-1}/y w, h_{n-1}) by moment sums."""
    S = [s.to_poly() for s in orthogonal_polys(n, p, ctx=ctx)]
    return (_integral_over_y(S[n] * S[n], p, ctx),
            _integral_over_y(S[n] * S[n - 1], p, ctx),
            integrate(S[n - 1] * S[n - 1], p, ctx))


@with_precision
def decide_b_offset_sign(n_max: int, p: Params, *, ctx: PrecisionContext) -> int:
    """Which sign s in (lam + 1/2)(1 + s (-1)^n) the kernel-integral oracle supports.

    Returns -1 or +1, or 0 if neither matches for every n <= n_max.
    """
    tol = mpf(10) ** (-(ctx.digits - 10))
    votes = {-1: True, 1: True}
    for n in range(1, n_max + 1):
        oracle = ladder_oracle(n, p, ctx=ctx).B.coeffs[0]
        for s in votes:
            if abs(oracle - b_offset(n, p.lam, s)) > tol * max(1, abs(oracle)):
                votes[s] = False
    good = [s for s, ok in votes.items() if ok]
    return good[0] if len(good) == 1 else 0


@with_precision
def ode_coeffs(n: int, p: Params, betas=None, *, ctx: PrecisionContext) -> OdeCoeffs:
    """R_n and T_n over the common denominators W and 2 x^2 W.

    W = x^2 - t/2 + beta_n + beta_{n+1};
    R_n = -4x^4 + 2t x^2 + 2 lam + 1 - 2x^2/W;
    T_n = 4n x^3 + 16 x b_n (b_n + b_{n+1} - t/2)(b_n + b_{n-1} - t/2)
          + 4x [1 + (2 lam + 1)(-1)^n] b_n - (8 b_n x^3 + g x)/W + g x (t - 1/(2x^2)),
    with g = (2 lam + 1)(1 - (-1)^n).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    b = _betas(n + 1, p, betas, ctx)
    t, lam = p.t, p.lam
    gam = 2 * lam + 1
    g = gam * (1 - (-1) ** n)
    W = Poly([-t / 2 + b[n] + b[n + 1], 0, 1])
    R_num = Poly([gam, 0, 2 * t, 0, -4]) * W - Poly([0, 0, 2])
    poly_part = Poly([0,
                      16 * b[n] * (b[n] + b[n + 1] - t / 2) * (b[n] + b[n - 1] - t / 2)
                      + 4 * (1 + gam * (-1) ** n) * b[n],
                      0, 4 * n])
    two_x2 = Poly([0, 0, 2])
    T_num = (poly_part * two_x2 * W
             - Poly([0, g, 0, 8 * b[n]]) * two_x2
             + g * Poly([0, -1, 0, 2 * t]) * W)
    return OdeCoeffs(n, p, R_num, W, T_num, two_x2 * W)


@with_precision
def ode_residual(n: int, p: Params, *, ctx: PrecisionContext, tolerance=None) -> ResidualReport:
    """2x^2 W (x S_n'' + R_n S_n' + T_n S_n), expanded exactly."""
    b = hankel_betas(n + 1, p, ctx=ctx)
    S = orthogonal_polys(n, p, ctx=ctx)[n].to_poly()
    oc = ode_coeffs(n, p, b, ctx=ctx)
    d1 = S.derivative()
    d2 = d1.derivative()
    two_x2 = Poly([0, 0, 2])
    t1 = oc.T_den * X * d2
    t2 = two_x2 * oc.R_num * d1
    t3 = oc.T_num * S
    res = _relative(t1 + t2 + t3, t1, t2, t3)
    tol = mpf(10) ** (-(ctx.digits / 3)) if tolerance is None else mpf(tolerance)
    return ResidualReport(f"ode[n={n}]", res, tol, ((p.t, p.lam, n),))


@with_precision
def shohat(n: int, p: Params, betas=None, *, ctx: PrecisionContext) -> ShohatCoeffs:
    """Quasi-orthogonality coefficients of x S_n' over S_{n-4}..S_n."""
    if n < 4:
        raise ValueError("n must be at least 4")
    b = _betas(n + 1, p, betas, ctx)
    c = {
        n - 4: 4 * b[n] * b[n - 1] * b[n - 2] * b[n - 3],
        n - 3: mpf(0),
        n - 2: 4 * b[n] * b[n - 1] * (b[n - 2] + b[n - 1] + b[n] + b[n + 1] - p.t / 2),
        n - 1: mpf(0),
        n: mpf(n),
    }
    return ShohatCoeffs(n, c)


@with_precision
def shohat_integrals(n: int, p: Params, *, ctx: PrecisionContext) -> ShohatCoeffs:
    """c_{n,k} = (1/h_k) int x S_n' S_k w for n-4 <= k <= n, by moment sums."""
    S = [s.to_poly() for s in orthogonal_polys(n, p, ctx=ctx)]
    xd = X * S[n].derivative()
    c = {}
    for k in range(max(n - 4, 0), n + 1):
        c[k] = integrate(xd * S[k], p, ctx) / integrate(S[k] * S[k], p, ctx)
    return ShohatCoeffs(n, c)


@with_precision
def shohat_residual(n: int, p: Params, *, ctx: PrecisionContext, tolerance=None) -> ResidualReport:
    """x S_n' - (c_{n,n-4} S_{n-4} + c_{n,n-2} S_{n-2} + n S_n), expanded exactly."""
    b = hankel_betas(n + 1, p, ctx=ctx)
    S = [s.to_poly() for s in orthogonal_polys(n, p, ctx=ctx)]
    c = shohat(n, p, b, ctx=ctx).c
    lhs = X * S[n].derivative()
    terms = [c[n - 4] * S[n - 4], c[n - 2] * S[n - 2], c[n] * S[n]]
    res = _relative(lhs - sum(terms, Poly()), lhs, *terms)
    tol = mpf(10) ** (-(ctx.digits / 3)) if tolerance is None else mpf(tolerance)
    return ResidualReport(f"shohat[n={n}]", res, tol, ((p.t, p.lam, n),))


@with_precision
def shohat_ladder(n: int, p: Params, betas=None, *, ctx: PrecisionContext) -> LadderPair:
    """A_n, B_n obtained by eliminating S_{n-2}, S_{n-4} from the quasi-orthogonal expansion.

    S_{n-2} = (x S_{n-1} - S_n)/b_{n-1} and
    S_{n-4} = [(x^3 - (b_{n-1} + b_{n-2}) x) S_{n-1} - (x^2 - b_{n-2}) S_n]/(b_{n-1} b_{n-2} b_{n-3}).
    """
    b = _betas(n + 1, p, betas, ctx)
    c = shohat(n, p, b, ctx=ctx).c
    d3 = b[n - 1] * b[n - 2] * b[n - 3]
    A = (c[n - 4] / d3) * Poly([0, -(b[n - 1] + b[n - 2]), 0, 1]) + (c[n - 2] / b[n - 1]) * X
    minus_B = (-(c[n - 4] / d3) * Poly([-b[n - 2], 0, 1])) - c[n - 2] / b[n - 1] + c[n]
    return LadderPair(n, p, A, -minus_B)


@with_precision
def lemma_b_sum_residual(n: int, p: Params, *, ctx: PrecisionContext, samples=None) -> mpf:
    """max_x |B_n + B_{n+1} - x A_n/beta_n - (2 lam + 1) + x v'(x)|, v'(x) = 4x^3 - 2t x."""
    b = hankel_betas(n + 2, p, ctx=ctx)
    ln = ladder(n, p, b, ctx=ctx)
    ln1 = ladder(n + 1, p, b, ctx=ctx)
    vprime = Poly([0, -2 * p.t, 0, 4])
    poly = ln.B + ln1.B - X * ln.A * (1 / b[n]) - (2 * p.lam + 1) + X * vprime
    xs = samples if samples is not None else [mpf(k) / 4 for k in range(-12, 13)]
    return max(abs(poly(x)) for x in xs)
