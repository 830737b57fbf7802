"""Orthogonal polynomials S_n as exact coefficient vectors.

``Poly`` is a plain dense polynomial over mpf used for all coefficient-level
identity checks.  ``MonicPoly`` stores S_n in parity-compressed form: only
the coefficients of x^(n mod 2), x^(n mod 2 + 2), ..., x^n are kept, so the
symmetry S_n(-x) = (-1)^n S_n(x) holds by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from mpmath import mp, mpf

from .core import Params, PrecisionContext, ResidualReport, with_precision
from .moments import moment, moment_oracle
from .recurrence import hankel_betas
from .special import big_phi


@dataclass(frozen=True)
class Poly:
    """Dense polynomial, coefficients from the constant term up."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence = (0,)):
        c = [mpf(x) for x in coeffs] or [mpf(0)]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def x_power(cls, k: int, scale=1) -> "Poly":
        return cls([0] * k + [scale])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if any(self.coeffs) else -1

    def __call__(self, x) -> mpf:
        acc = mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (mpf(0),) * (n - len(self.coeffs))
        b = other.coeffs + (mpf(0),) * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        other = _as_poly(other)
        out = [mpf(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:] or [0])

    def divide_by_x(self) -> "Poly":
        """Exact division by x; the constant term must be zero."""
        if self.coeffs[0] != 0:
            raise ValueError("polynomial is not divisible by x")
        return Poly(self.coeffs[1:] or [0])

    def compose_square(self) -> "Poly":
        """p(x^2)."""
        out = []
        for c in self.coeffs:
            out += [c, mpf(0)]
        return Poly(out[:-1])

    def max_abs(self) -> mpf:
        return max(abs(c) for c in self.coeffs)


def _as_poly(p) -> Poly:
    if isinstance(p, Poly):
        return p
    if isinstance(p, MonicPoly):
        return p.to_poly()
    return Poly([p])


X = Poly([0, 1])


@dataclass(frozen=True)
class MonicPoly:
    """Monic S_n with only the degree-parity coefficients stored.

    ``half[k]`` is the coefficient of x^(parity + 2k); ``half[-1] == 1``.
    """

    degree: int
    half: tuple

    @property
    def parity(self) -> str:
        return "odd" if self.degree % 2 else "even"

    @property
    def coeffs(self) -> tuple:
        out = [mpf(0)] * (self.degree + 1)
        for k, c in enumerate(self.half):
            out[self.degree % 2 + 2 * k] = c
        return tuple(out)

    def to_poly(self) -> Poly:
        return Poly(self.coeffs)

    def __call__(self, x) -> mpf:
        x = mpf(x)
        x2 = x * x
        acc = mpf(0)
        for c in reversed(self.half):
            acc = acc * x2 + c
        return acc * x if self.degree % 2 else acc

    def derivative(self) -> Poly:
        return self.to_poly().derivative()


def eval(poly, x) -> mpf:  # noqa: A001 - mirrors the operation name
    return poly(x)


def derivative(poly) -> Poly:
    return poly.derivative()


def generate(N: int, betas: Sequence) -> list[MonicPoly]:
    """S_0..S_N from S_{n+1} = x S_n - beta_n S_{n-1}; needs betas[1..N-1]."""
    polys = [MonicPoly(0, (mpf(1),))]
    if N >= 1:
        polys.append(MonicPoly(1, (mpf(1),)))
    for n in range(1, N):
        cur, prev = polys[n], polys[n - 1]
        # multiplying by x flips parity; going odd -> even prepends a zero constant term
        shifted = list(cur.half) if n % 2 == 0 else [mpf(0)] + list(cur.half)
        b = betas[n]
        for k, c in enumerate(prev.half):
            shifted[k] -= b * c
        polys.append(MonicPoly(n + 1, tuple(shifted)))
    return polys


@with_precision
def orthogonal_polys(N: int, p: Params, *, ctx: PrecisionContext) -> list[MonicPoly]:
    return generate(N, hankel_betas(max(N, 1), p, ctx=ctx))


@with_precision
def closed_form_polys(p: Params, variant: str = "corrected", *, ctx: PrecisionContext) -> list[Poly]:
    """S_1..S_5 as rational functions of Phi_lambda(t).

    ``"corrected"`` is what the recurrence produces.  ``"alternate"`` has
    the opposite sign on the x coefficient of S_3 and on the x^2
    coefficient of S_4, and is kept so the two conventions can be told apart
    numerically.
    """
    if variant not in ("corrected", "alternate"):
        raise ValueError("variant must be 'corrected' or 'alternate'")
    t, lam = p.t, p.lam
    f = big_phi(p, ctx=ctx)
    flip = 1 if variant == "alternate" else -1
    d = 2 * f ** 2 - t * f - lam - 1
    e = 4 * (lam + 2) * f ** 2 - 2 * (lam + 1) * t * f - 2 * (lam + 1) ** 2
    s3 = flip * (t * f + lam + 1) / (2 * f)
    s4_2 = flip * (2 * t * f ** 2 - (t ** 2 + 2) * f - (lam + 1) * t) / (2 * d)
    s4_0 = -(2 * (lam + 2) * f ** 2 - (lam + 1) * t * f - (lam + 1) ** 2) / (2 * d)
    s5_3 = -(2 * (lam + 3) * t * f ** 2 - (lam + 1) * (t ** 2 - 2) * f - (lam + 1) ** 2 * t) / e
    s5_1 = -((2 * (lam + 2) ** 2 - t ** 2) * f ** 2 - (lam + 1) * (lam + 4) * t * f
             - (lam + 1) ** 2 * (lam + 3)) / e
    return [X, Poly([-f, 0, 1]), Poly([0, s3, 0, 1]), Poly([s4_0, 0, s4_2, 0, 1]),
            Poly([0, s5_1, 0, s5_3, 0, 1])]


@with_precision
def closed_form_residual(p: Params, variant: str = "corrected", *,
                         ctx: PrecisionContext) -> mpf:
    """Largest coefficient mismatch between the S_1..S_5 closed forms and the recurrence."""
    gen = orthogonal_polys(5, p, ctx=ctx)
    closed = closed_form_polys(p, variant, ctx=ctx)
    return max((closed[n - 1] - gen[n].to_poly()).max_abs() / gen[n].to_poly().max_abs()
               for n in range(1, 6))


@dataclass(frozen=True)
class NormTable:
    params: Params
    h: tuple


@with_precision
def norms(N: int, p: Params, betas=None, *, ctx: PrecisionContext) -> NormTable:
    """h_0 = mu_0, h_n = beta_n h_{n-1}."""
    betas = hankel_betas(max(N, 1), p, ctx=ctx) if betas is None else betas
    h = [moment(0, p, ctx=ctx)]
    for n in range(1, N + 1):
        h.append(betas[n] * h[-1])
    return NormTable(p, tuple(h))


def integrate(poly, p: Params, ctx: PrecisionContext, oracle: bool = False) -> mpf:
    """int poly(x) w(x) dx by summing coefficient * moment."""
    f = moment_oracle if oracle else moment
    return sum((c * f(k, p, ctx=ctx) for k, c in enumerate(_as_poly(poly).coeffs) if c),
               mpf(0))


@with_precision
def norms_oracle(N: int, p: Params, *, ctx: PrecisionContext) -> list:
    """h_n recomputed as int S_n^2 w with quadrature moments (n <= 6)."""
    if N > 6:
        raise ValueError("quadrature oracle is limited to n <= 6")
    polys = orthogonal_polys(N, p, ctx=ctx)
    return [integrate(s.to_poly() * s.to_poly(), p, ctx, oracle=True) for s in polys]


@with_precision
def gram_check(N: int, p: Params, *, ctx: PrecisionContext, tolerance=None) -> ResidualReport:
    """max_{m != n <= N} |int S_m S_n w| / sqrt(h_m h_n) with exact moment sums.

    ``detail`` also records the worst relative mismatch of the diagonal
    against the norm table.
    """
    polys = orthogonal_polys(N, p, ctx=ctx)
    table = norms(N, p, ctx=ctx).h
    worst = mpf(0)
    worst_diag = mpf(0)
    for m in range(N + 1):
        for n in range(m, N + 1):
            if (m + n) % 2:
                continue  # odd integrand
            val = integrate(polys[m].to_poly() * polys[n].to_poly(), p, ctx)
            if m == n:
                worst_diag = max(worst_diag, abs(val - table[n]) / table[n])
            else:
                worst = max(worst, abs(val) / mp.sqrt(table[m] * table[n]))
    tol = mpf(10) ** (-(ctx.digits - 10)) if tolerance is None else mpf(tolerance)
    return ResidualReport(f"gram[N={N}]", worst, tol, ((p.t, p.lam, N),),
                          detail=f"diagonal mismatch {mp.nstr(worst_diag, 3)}")


def jacobi_matrix(N: int, betas: Sequence):
    j = mp.zeros(N, N)
    for k in range(1, N):
        j[k, k - 1] = j[k - 1, k] = mp.sqrt(betas[k])
    return j


def zeros(n: int, betas: Sequence) -> list:
    """Zeros of S_n, the eigenvalues of the n x n Jacobi matrix, ascending."""
    if n == 0:
        return []
    return sorted(mp.eigsy(jacobi_matrix(n, betas), eigvals_only=True))


@with_precision
def gauss_rule(N: int, p: Params, betas=None, *, ctx: PrecisionContext):
    """N-point Gauss rule for w from the eigen-decomposition of the Jacobi matrix."""
    if N < 1:
        raise ValueError("N must be at least 1")
    betas = hankel_betas(N, p, ctx=ctx) if betas is None else betas
    mu0 = moment(0, p, ctx=ctx)
    if N == 1:
        return [mpf(0)], [mu0]
    evals, evecs = mp.eigsy(jacobi_matrix(N, betas))
    order = sorted(range(N), key=lambda i: evals[i])
    nodes = [evals[i] for i in order]
    weights = [mu0 * evecs[0, i] ** 2 for i in order]
    return nodes, weights
