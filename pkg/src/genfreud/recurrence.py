"""Recurrence coefficients beta_n(t; lam) of x S_n = S_{n+1} + beta_n S_{n-1}.

Four routes are provided:

* ``hankel``      Cholesky of the full moment matrix [mu_{j+k}] (production route)
* ``tau-ratio``   differences of H_m = d/dt log tau_m across lam and lam + 1
* ``dp1``         forward iteration of the discrete Painleve I string equation
* ``closed-form`` rational expressions in Phi_lambda for n <= 4
"""

from __future__ import annotations

from dataclasses import dataclass, field

from mpmath import mp, mpf

from .core import Params, PrecisionContext, PrecisionExhausted, central_diff, with_precision
from .determinants import hn
from .moments import moment
from .special import big_phi, phi_expansion

METHODS = ("hankel", "tau-ratio", "dp1", "closed-form")


@dataclass
class BetaTable:
    params: Params
    N: int
    beta: list
    method: str
    est_digits: list = field(default_factory=list)

    def __getitem__(self, n: int) -> mpf:
        return self.beta[n]


def gamma_n(n: int, lam) -> mpf:
    """n/2 + (2 lam + 1)(1 - (-1)^n)/4, the Backlund forcing constant."""
    return mpf(n) / 2 + (2 * mpf(lam) + 1) * (1 - (-1) ** n) / 4


def dp1_forcing(n: int, lam) -> mpf:
    """Numerator 2n + (2 lam + 1)(1 - (-1)^n) of the string equation."""
    return 2 * n + (2 * mpf(lam) + 1) * (1 - (-1) ** n)


def cholesky_upper(m, label: str = "moment matrix"):
    """Upper triangular R with R^T R = m; raises PrecisionExhausted on a non-positive pivot."""
    n = len(m)
    r = [[mpf(0)] * n for _ in range(n)]
    for i in range(n):
        s = m[i][i] - sum(r[k][i] ** 2 for k in range(i))
        if not s > 0:
            # the pivot is the squared norm of a monic OP; it has sunk below rounding noise
            scale = max(abs(m[i][i]), mpf(1))
            lost = int(mp.log10(scale)) - int(mp.log10(abs(s))) if s else mp.dps
            raise PrecisionExhausted(f"{label} pivot {i}", "Cholesky pivot is not positive",
                                     required_digits=mp.dps + max(lost, 10))
        r[i][i] = mp.sqrt(s)
        for j in range(i + 1, n):
            r[i][j] = (m[i][j] - sum(r[k][i] * r[k][j] for k in range(i))) / r[i][i]
    return r


def recurrence_from_moments(mom, N: int, label: str = "moment matrix"):
    """(alpha_0..alpha_{N-1}, beta_0..beta_N, h_0..h_N) from moments mom[0..2N].

    Uses the Cholesky factor of the (N+1)x(N+1) Hankel matrix:
    h_n = R_nn^2, beta_n = (R_nn/R_{n-1,n-1})^2,
    alpha_n = R_{n,n+1}/R_nn - R_{n-1,n}/R_{n-1,n-1}.
    """
    m = [[mom[j + k] for k in range(N + 1)] for j in range(N + 1)]
    r = cholesky_upper(m, label)
    h = [r[n][n] ** 2 for n in range(N + 1)]
    beta = [mpf(0)] + [h[n] / h[n - 1] for n in range(1, N + 1)]
    alpha = []
    for n in range(N):
        a = r[n][n + 1] / r[n][n]
        if n:
            a -= r[n - 1][n] / r[n - 1][n - 1]
        alpha.append(a)
    return alpha, beta, h


@with_precision
def hankel_betas(N: int, p: Params, *, ctx: PrecisionContext) -> list:
    mom = [moment(k, p, ctx=ctx) for k in range(2 * N + 1)]
    _, beta, _ = recurrence_from_moments(mom, N, label=f"Hankel beta table (N={N})")
    return beta


@with_precision
def beta_hankel(n: int, p: Params, *, ctx: PrecisionContext) -> mpf:
    if n < 1:
        raise ValueError("n must be at least 1")
    return hankel_betas(n, p, ctx=ctx)[n]


@with_precision
def beta_tau(n: int, p: Params, *, ctx: PrecisionContext) -> mpf:
    """beta_2m = H_m(lam+1) - H_m(lam); beta_2m+1 = H_{m+1}(lam) - H_m(lam+1)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    m, odd = divmod(n, 2)
    up = p.shifted(1)
    if odd:
        return hn(m + 1, p, ctx=ctx).value - hn(m, up, ctx=ctx).value
    return hn(m, up, ctx=ctx).value - hn(m, p, ctx=ctx).value


@with_precision
def beta_closed(n: int, p: Params, *, ctx: PrecisionContext) -> mpf:
    """The closed forms of beta_1..beta_4 as rational functions of Phi_lambda(t)."""
    if not 1 <= n <= 4:
        raise ValueError("closed forms exist for 1 <= n <= 4 only")
    t, lam = p.t, p.lam
    phi = big_phi(p, ctx=ctx)
    if n == 1:
        return phi
    d = 2 * phi ** 2 - t * phi - lam - 1
    if d == 0:
        raise ZeroDivisionError("2 Phi^2 - t Phi - lambda - 1 vanished")
    if n == 2:
        return -d / (2 * phi)
    if n == 3:
        return -phi / d - (lam + 1) / (2 * phi)
    e = 2 * (lam + 2) * phi ** 2 - (lam + 1) * t * phi - (lam + 1) ** 2
    return (t / (2 * (lam + 2)) + phi / d
            + ((lam + 1) * (t ** 2 + 2 * lam + 4) * phi + (lam + 1) ** 2 * t)
            / (2 * (lam + 2) * e))


def _digits_agreeing(x, ref, cap: int) -> int:
    if x == ref:
        return cap
    rel = abs(x - ref) / abs(ref)
    return max(0, min(cap, int(-mp.log10(rel))))


@with_precision
def beta_dp1(N: int, p: Params, *, ctx: PrecisionContext, seed=None,
             reference: list | None = None, min_digits: int = 5) -> BetaTable:
    """Forward iteration of the string equation from beta_0 = 0, beta_1 = Phi.

    est_digits compares against the Hankel route.  The iteration is unstable;
    once an entry is non-positive or keeps fewer than ``min_digits`` digits a
    :class:`PrecisionExhausted` is raised carrying the valid prefix in
    ``partial``.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    t, lam = p.t, p.lam
    ref = hankel_betas(N, p, ctx=ctx) if reference is None else reference
    beta = [mpf(0), big_phi(p, ctx=ctx) if seed is None else mpf(seed)]
    for n in range(1, N):
        beta.append(t / 2 + dp1_forcing(n, lam) / (8 * beta[n]) - beta[n] - beta[n - 1])
    est = [ctx.digits]
    for n in range(1, N + 1):
        ok_sign = beta[n] > 0
        d = _digits_agreeing(beta[n], ref[n], ctx.digits) if ok_sign else 0
        if not ok_sign or d < min_digits:
            partial = BetaTable(p, n - 1, beta[:n], "dp1", est)
            raise PrecisionExhausted(f"beta_dp1[{n}]",
                                     f"forward string-equation iteration kept {d} digits",
                                     required_digits=ctx.digits + (min_digits - d) + 5,
                                     partial=partial)
        est.append(d)
    return BetaTable(p, N, beta, "dp1", est)


@with_precision
def beta_table(N: int, p: Params, method: str = "hankel", *, ctx: PrecisionContext) -> BetaTable:
    """beta_0..beta_N by one route, with est_digits from a cross-check.

    The Hankel route is checked against itself at ``digits`` (no guard), the
    others against the Hankel route.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    ref = hankel_betas(N, p, ctx=ctx)
    if method == "hankel":
        with mp.workdps(ctx.digits):
            low = hankel_betas(N, p, ctx=PrecisionContext(ctx.digits, guard=0))
        est = [ctx.digits] + [_digits_agreeing(low[n], ref[n], ctx.digits)
                              for n in range(1, N + 1)]
        return BetaTable(p, N, ref, method, est)
    if method == "dp1":
        return beta_dp1(N, p, ctx=ctx, reference=ref)
    if method == "tau-ratio":
        beta = [mpf(0)] + [beta_tau(n, p, ctx=ctx) for n in range(1, N + 1)]
    elif method == "closed-form":
        if N > 4:
            raise ValueError("closed forms exist for n <= 4 only")
        beta = [mpf(0)] + [beta_closed(n, p, ctx=ctx) for n in range(1, N + 1)]
    else:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    est = [ctx.digits] + [_digits_agreeing(beta[n], ref[n], ctx.digits) for n in range(1, N + 1)]
    return BetaTable(p, N, beta, method, est)


def dp1_residual(n: int, t, lam, beta) -> mpf:
    """|beta_{n+1} + beta_n + beta_{n-1} - t/2 - forcing/(8 beta_n)|."""
    return abs(beta[n + 1] + beta[n] + beta[n - 1] - mpf(t) / 2
               - dp1_forcing(n, lam) / (8 * beta[n]))


def painleve_params(n: int, lam) -> tuple[mpf, mpf]:
    """(A_n, B_n) of the Painleve IV type equation for beta_n."""
    lam = mpf(lam)
    m, odd = divmod(n, 2)
    if odd:
        return lam - m, -2 * (lam + m + 1) ** 2
    return -2 * lam - m - 1, mpf(-2 * m * m)


@with_precision
def pIV_residual(n: int, p: Params, *, ctx: PrecisionContext) -> mpf:
    """|b'' - b'^2/(2b) - (3/2)b^3 + t b^2 - (t^2/8 - A/2) b - B/(16 b)| with b = beta_tau."""
    if n < 1:
        raise ValueError("n must be at least 1")
    f = lambda s: beta_tau(n, p.with_t(s), ctx=ctx)
    step = ctx.nested_step
    b = f(p.t)
    db = central_diff(f, p.t, 1, ctx=ctx, step=step)
    d2b = central_diff(f, p.t, 2, ctx=ctx, step=step)
    A, B = painleve_params(n, p.lam)
    t = p.t
    rhs = db ** 2 / (2 * b) + mpf(3) / 2 * b ** 3 - t * b ** 2 + (t ** 2 / 8 - A / 2) * b + B / (16 * b)
    return abs(d2b - rhs)


@with_precision
def backlund_residual(n: int, p: Params, *, ctx: PrecisionContext) -> tuple[mpf, mpf]:
    """Residuals of beta_{n+-1} = +-b'/(2b) - b/2 + t/4 + gamma_n/(4b).

    beta_n and its t-derivative come from the Hankel route; beta_{n+-1}
    from an independent Hankel table at the same t.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    f = lambda s: beta_hankel(n, p.with_t(s), ctx=ctx)
    table = hankel_betas(n + 1, p, ctx=ctx)
    b = table[n]
    db = central_diff(f, p.t, 1, ctx=ctx)
    g = gamma_n(n, p.lam)
    common = -b / 2 + p.t / 4 + g / (4 * b)
    up = abs(table[n + 1] - (db / (2 * b) + common))
    down = abs(table[n - 1] - (-db / (2 * b) + common))
    return up, down


def beta_asymptotic(n: int, p: Params) -> mpf:
    """Large-t expansion of beta_n through the t^-3 term."""
    t, lam = p.t, p.lam
    m, odd = divmod(n, 2)
    if odd:
        return t / 2 + (lam - m) / t - 2 * (lam ** 2 - 4 * lam * m + m ** 2 - lam - m) / t ** 3
    return m / t - 2 * m * (2 * lam - m + 1) / t ** 3


def _series_inv(a: list) -> list:
    """Reciprocal of a power series with a[0] != 0, same length."""
    out = [1 / a[0]]
    for k in range(1, len(a)):
        out.append(-sum(a[j] * out[k - j] for j in range(1, k + 1)) / a[0])
    return out


def _series_mul(a: list, b: list) -> list:
    n = min(len(a), len(b))
    return [sum(a[j] * b[k - j] for j in range(k + 1)) for k in range(n)]


@with_precision
def beta_expansion(N: int, lam, terms: int = 6, *, ctx: PrecisionContext) -> list[list]:
    """Large-t coefficients of beta_0..beta_N from the string equation.

    With s = 1/t^2, beta_n = t * P_n(s) as t -> +inf.  Entry ``[n][k]`` is the
    coefficient of s^k in P_n, i.e. of t^(1-2k) in beta_n.  P_1 is the
    expansion of Phi; each even step divides by P_n/s, which costs one term,
    so the seed carries ``terms + N`` coefficients.
    """
    lam = mpf(lam)
    K = terms + N + 1
    half = [mpf(1) / 2] + [mpf(0)] * (K - 1)
    P = [[mpf(0)] * K, [mpf(1) / 2] + list(phi_expansion(lam, K - 1, ctx=ctx).coeffs)]
    for n in range(1, N):
        pn = P[n]
        if n % 2:
            ratio = [mpf(0)] + _series_inv(pn)[:-1]  # s / P_n
        else:
            ratio = _series_inv(pn[1:]) + [mpf(0)]  # P_n = s Q_n
        f = dp1_forcing(n, lam) / 8
        P.append([half[k] + f * ratio[k] - pn[k] - P[n - 1][k] for k in range(K)])
    return [row[:terms] for row in P]


def leading_omitted_order(coeffs, kept: int, tol=None):
    """Decay order of the first nonzero coefficient after the first ``kept``.

    ``coeffs[k]`` multiplies t^(1-2k); the return value is 2k - 1 (so the
    truncation error is O(t^-(2k-1))), or None if every later coefficient
    vanishes.
    """
    tol = mpf(10) ** (-(mp.dps // 2)) if tol is None else tol
    for k in range(kept, len(coeffs)):
        if abs(coeffs[k]) > tol:
            return 2 * k - 1
    return None


def doubling_exponent(err_lo, err_hi) -> mpf:
    """log2 of the error ratio between t and 2t."""
    return mp.log(err_lo / err_hi, 2)


def hn_from_betas(n: int, lam, beta_at) -> mpf:
    """H_n(lam) = sum_j beta_{2j+1}(lam + n - 1 - j), from the tau-ratio relations."""
    return sum((beta_at(2 * j + 1, mpf(lam) + n - 1 - j) for j in range(n)), mpf(0))


def hn_asymptotic(n: int, p: Params) -> mpf:
    """Large-t expansion of H_n through the t^-3 term."""
    t, lam = p.t, p.lam
    return n * t / 2 + n * lam / t + 2 * n * lam * (n - lam) / t ** 3


def string_equation_residual(n: int, t, beta) -> mpf:
    """Residual of the classical Freud string equation at lam = -1/2.

    There the weight is exp(-x^4 + t x^2), and q_n = 2 beta_n, s = -t/2 satisfy
    q_n (q_{n-1} + q_n + q_{n+1}) + 2 s q_n = n.
    """
    q = [2 * b for b in beta]
    s = -mpf(t) / 2
    return abs(q[n] * (q[n - 1] + q[n] + q[n + 1]) + 2 * s * q[n] - n)
