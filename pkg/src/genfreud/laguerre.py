"""Semi-classical Laguerre polynomials for x^lam exp(-x^2 + t x) on (0, inf).

Half-line moments are the shifted first moments of the even weight,
int_0^inf x^(k+lam) exp(-x^2 + t x) dx = mu_0(t; lam + k), and the even weight's
polynomials follow from S_2m(x) = L_m(x^2), S_2m+1(x) = x Q_m(x^2), where Q_m are
the kernel polynomials of L at the origin.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

from .core import Params, PrecisionContext, ResidualReport, with_precision
from .moments import mu0
from .polynomials import X, Poly, orthogonal_polys
from .recurrence import recurrence_from_moments
from .special import pcf_d


@dataclass(frozen=True)
class LaguerrePolySet:
    params: Params
    L: tuple
    alpha: tuple
    beta: tuple
    norms: tuple


def half_line_moments(K: int, p: Params, ctx: PrecisionContext, shift: int = 0) -> list:
    """m_0..m_K of x^(lam+shift) exp(-x^2 + t x) on (0, inf)."""
    return [mu0(p.shifted(k + shift), ctx=ctx) for k in range(K + 1)]


@with_precision
def laguerre_recurrence(N: int, t, lam, *, ctx: PrecisionContext) -> LaguerrePolySet:
    """L_0..L_N with alpha_0..alpha_{N-1}, beta_0..beta_N from the moment Cholesky factor."""
    p = Params(t, lam)
    mom = half_line_moments(2 * N, p, ctx)
    alpha, beta, h = recurrence_from_moments(mom, N, label=f"Laguerre moment matrix (N={N})")
    L = [Poly([1])]
    if N >= 1:
        L.append(X - alpha[0])
    for n in range(1, N):
        L.append((X - alpha[n]) * L[n] - beta[n] * L[n - 1])
    return LaguerrePolySet(p, tuple(L), tuple(alpha), tuple(beta), tuple(h))


def kernel_polys(lag: LaguerrePolySet) -> list[Poly]:
    """Q_n = [L_{n+1} - (L_{n+1}(0)/L_n(0)) L_n]/x for n < N."""
    L = lag.L
    out = []
    for n in range(len(L) - 1):
        l0 = L[n](0)
        if l0 == 0:
            raise ZeroDivisionError(f"L_{n}(0) = 0; kernel polynomial Q_{n} undefined")
        num = L[n + 1] - (L[n + 1](0) / l0) * L[n]
        # the constant term cancels up to rounding; drop it before dividing
        out.append(Poly((0,) + num.coeffs[1:]).divide_by_x())
    return out


def half_line_integral(poly: Poly, moments) -> mpf:
    return sum((c * moments[k] for k, c in enumerate(poly.coeffs) if c), mpf(0))


@with_precision
def kernel_gram(N: int, p: Params, *, ctx: PrecisionContext) -> mpf:
    """Largest normalized off-diagonal of int Q_m Q_n x^(lam+1) e^(-x^2+tx) dx, m != n < N."""
    lag = laguerre_recurrence(N, p.t, p.lam, ctx=ctx)
    Q = kernel_polys(lag)
    mom = half_line_moments(2 * N, p, ctx, shift=1)
    diag = [half_line_integral(q * q, mom) for q in Q]
    worst = mpf(0)
    for m in range(len(Q)):
        for n in range(m + 1, len(Q)):
            val = half_line_integral(Q[m] * Q[n], mom)
            worst = max(worst, abs(val) / mp.sqrt(diag[m] * diag[n]))
    return worst


@with_precision
def symmetrization_check(N: int, p: Params, *, ctx: PrecisionContext,
                         tolerance=None) -> ResidualReport:
    """Coefficient residual between S_0..S_N and L_m(x^2), x Q_m(x^2).

    Normalized by the largest coefficient of the S_n being compared.
    """
    if N > 12:
        raise ValueError("symmetrization check is limited to N <= 12")
    M = N // 2 + 1
    lag = laguerre_recurrence(M, p.t, p.lam, ctx=ctx)
    Q = kernel_polys(lag)
    S = orthogonal_polys(N, p, ctx=ctx)
    worst = mpf(0)
    for n in range(N + 1):
        m, odd = divmod(n, 2)
        sym = X * Q[m].compose_square() if odd else lag.L[m].compose_square()
        s = S[n].to_poly()
        worst = max(worst, (s - sym).max_abs() / s.max_abs())
    tol = mpf(10) ** (-(ctx.digits / 2)) if tolerance is None else mpf(tolerance)
    return ResidualReport(f"symmetrization[N={N}]", worst, tol, ((p.t, p.lam, N),))


@with_precision
def quadratic_map_residual(M: int, p: Params, *, ctx: PrecisionContext) -> mpf:
    """max_m of |alpha_m - (b_2m + b_2m+1)| and |beta_m^L - b_2m-1 b_2m|, relative.

    b are the even-weight recurrence coefficients, alpha/beta^L the half-line ones.
    """
    from .recurrence import hankel_betas

    lag = laguerre_recurrence(M + 1, p.t, p.lam, ctx=ctx)
    b = hankel_betas(2 * M + 2, p, ctx=ctx)
    worst = mpf(0)
    for m in range(M + 1):
        a = b[2 * m] + b[2 * m + 1]
        worst = max(worst, abs(lag.alpha[m] - a) / abs(a))
        if m >= 1:
            c = b[2 * m - 1] * b[2 * m]
            worst = max(worst, abs(lag.beta[m] - c) / c)
    return worst


def psi(z, lam, ctx: PrecisionContext) -> mpf:
    """psi_lam(z) = D_(-lam-1)(-sqrt2 z) exp(z^2/2)."""
    return pcf_d(-mpf(lam) - 1, -mp.sqrt(2) * z, ctx=ctx) * mp.exp(z * z / 2)


def _psi_wronskian(n: int, z, lam, ctx, h) -> mpf:
    """Psi_n = W(psi, psi', ..., psi^(n-1)) with derivatives from mpmath.diff.

    ``psi`` resets the working precision, so mpmath's default (tiny) step
    would be rounded away; ``h`` is passed explicitly.
    """
    if n == 0:
        return mpf(1)
    f = lambda s: psi(s, lam, ctx)
    # mp.diffs with an explicit step is one-sided; per-order mp.diff is central
    d = [mp.diff(f, z, k, h=h) for k in range(2 * n - 1)]
    return mp.det(mp.matrix([[d[j + k] for k in range(n)] for j in range(n)]))


@with_precision
def painleve_alpha_beta(n: int, t, lam, *, ctx: PrecisionContext) -> tuple[mpf, mpf]:
    """alpha_n, beta_n of the half-line weight from the P_IV parametrization (n = 0, 1).

        q_n(z) = -2z + d/dz log(Psi_{n+1}/Psi_n),  z = t/2,
        alpha_n = q_n/2 + t/2,
        beta_n = -q_n'/8 - q_n^2/8 - z q_n/4 + lam/4 + n/2.
    """
    if n not in (0, 1):
        raise ValueError("only n = 0 and n = 1 are implemented")
    t, lam = mpf(t), mpf(lam)
    # three nested differences; psi gets enough guard digits to absorb all of them
    inner = PrecisionContext(ctx.digits, ctx.guard + 2 * ctx.digits)
    with inner.workdps():
        # mp.diff with a given step is a two-point central difference: error O(h^2),
        # and each of the three nested levels cancels about log10(1/h) digits
        h = mpf(10) ** (-(ctx.digits // 2))

        def q(z):
            ratio = lambda s: mp.log(_psi_wronskian(n + 1, s, lam, inner, h)
                                     / _psi_wronskian(n, s, lam, inner, h))
            return -2 * z + mp.diff(ratio, z, h=h)

        z = t / 2
        qz = q(z)
        dq = mp.diff(q, z, h=h)
        alpha = qz / 2 + t / 2
        beta = -dq / 8 - qz ** 2 / 8 - z * qz / 4 + lam / 4 + mpf(n) / 2
    return +alpha, +beta
