"""Parabolic cylinder functions and the log-derivative ``Phi_lambda``.

``pcf_d`` evaluates Weber's D_nu(z) for real arguments from the pair of
Kummer series

    D_nu(z) = 2^(nu/2) e^(-z^2/4) [ sqrt(pi)/Gamma((1-nu)/2) M(-nu/2, 1/2, z^2/2)
                                  - sqrt(2 pi) z/Gamma(-nu/2) M((1-nu)/2, 3/2, z^2/2) ]

with reciprocal gammas, so the gamma poles need no special casing.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

from .core import Params, PrecisionContext, central_diff, with_precision

__all__ = [
    "gamma", "rgamma", "erfc", "kummer_m", "pcf_d", "pcf_d_integral", "big_phi",
    "riccati_residual", "PhiExpansion", "phi_expansion", "power_weight_quad",
]


def gamma(x) -> mpf:
    x = mpf(x)
    if x <= 0 and x == int(x):
        raise ValueError(f"gamma has a pole at {x}")
    return mp.gamma(x)


def rgamma(x) -> mpf:
    """1/Gamma(x), zero at the poles."""
    return mp.rgamma(x)


def erfc(x) -> mpf:
    return mp.erfc(x)


def kummer_m(a, b, x, max_terms: int = 200000) -> mpf:
    """Confluent hypergeometric 1F1(a; b; x) by direct summation.

    Intended for x >= 0, where every term past the first sign change of
    ``a + k`` has one sign and summation is stable.
    """
    a, b, x = mpf(a), mpf(b), mpf(x)
    term = mpf(1)
    total = mpf(1)
    tiny = mp.eps
    k = 0
    while True:
        term *= (a + k) * x / ((b + k) * (k + 1))
        total += term
        k += 1
        if term == 0:
            break
        # past the hump the ratio is < 1, so the tail is bounded by a few terms
        if k > x - a and abs(term) <= tiny * abs(total):
            break
        if k > max_terms:
            raise ArithmeticError(f"1F1({a}; {b}; {x}) did not converge in {max_terms} terms")
    return total


@with_precision
def pcf_d(nu, z, *, ctx: PrecisionContext) -> mpf:
    """Weber parabolic cylinder function D_nu(z) for real nu and z."""
    nu, z = mpf(nu), mpf(z)
    x = z * z / 2
    # for z > 0 the two series cancel down to ~exp(-z^2/4) from terms of size exp(z^2/4)
    extra = int(x / mp.ln(10)) + 5 if z > 0 else 5
    with mp.extradps(extra):
        nu, z, x = +nu, +z, +x
        even = mp.sqrt(mp.pi) * rgamma((1 - nu) / 2) * kummer_m(-nu / 2, mpf(1) / 2, x)
        odd = mp.sqrt(2 * mp.pi) * z * rgamma(-nu / 2) * kummer_m((1 - nu) / 2, mpf(3) / 2, x)
        value = mp.power(2, nu / 2) * mp.exp(-x / 2) * (even - odd)
    return +value


@with_precision
def pcf_d_integral(nu, z, *, ctx: PrecisionContext) -> mpf:
    """D_nu(z) from its integral representation, valid for nu < 0.

        D_nu(z) = e^(-z^2/4)/Gamma(-nu) * int_0^inf s^(-nu-1) exp(-s^2/2 - z s) ds

    Used as an independent check on :func:`pcf_d`.
    """
    nu, z = mpf(nu), mpf(z)
    if not nu < 0:
        raise ValueError("the integral representation needs nu < 0")
    c = (ctx.working_digits + 10) * mp.ln(10)
    top = -z + mp.sqrt(z * z + 2 * c) + 10
    integral = power_weight_quad(-nu - 1, lambda s: mp.exp(-s * s / 2 - z * s), top)
    return mp.exp(-z * z / 4) * integral / mp.gamma(-nu)


def power_weight_quad(a, g, top, peak=None) -> mpf:
    """int_0^top s^a g(s) ds for a > -1 by tanh-sinh quadrature.

    The substitution u = s^(a+1) removes the algebraic endpoint behaviour,
    leaving (1/(a+1)) int_0^(top^(a+1)) g(u^(1/(a+1))) du.
    """
    a = mpf(a)
    q = a + 1
    f = lambda u: g(mp.power(u, 1 / q))
    points = [mpf(0)]
    if peak is not None and 0 < peak < top:
        points.append(mp.power(peak, q))
    points.append(mp.power(top, q))
    return mp.quad(f, points, method="tanh-sinh") / q


@with_precision
def big_phi(p: Params, *, ctx: PrecisionContext) -> mpf:
    """Phi_lambda(t) = t/2 + (sqrt2/2) D_{-lam}(-t/sqrt2) / D_{-lam-1}(-t/sqrt2).

    This is d/dt log of the first moment, i.e. beta_1(t; lambda).
    """
    z = -p.t / mp.sqrt(2)
    den = pcf_d(-p.lam - 1, z, ctx=ctx)
    if den == 0:
        raise ZeroDivisionError(f"D_(-lambda-1) vanished at t={p.t}, lambda={p.lam}")
    return p.t / 2 + mp.sqrt(2) / 2 * pcf_d(-p.lam, z, ctx=ctx) / den


@with_precision
def riccati_residual(p: Params, *, ctx: PrecisionContext) -> mpf:
    """|Phi' + Phi^2 - (t/2) Phi - (lambda+1)/2|, Phi' by central differences."""
    phi = big_phi(p, ctx=ctx)
    dphi = central_diff(lambda s: big_phi(p.with_t(s), ctx=ctx), p.t, 1, ctx=ctx)
    return abs(dphi + phi * phi - p.t / 2 * phi - (p.lam + 1) / 2)


@dataclass(frozen=True)
class PhiExpansion:
    """Coefficients of Phi_lambda(t) ~ t/2 + sum_n a_n t^(1-2n) as t -> +inf."""

    lam: mpf
    coeffs: tuple

    def __call__(self, t, terms: int | None = None) -> mpf:
        t = mpf(t)
        used = self.coeffs if terms is None else self.coeffs[:terms]
        return t / 2 + sum(a * t ** (1 - 2 * n) for n, a in enumerate(used, start=1))


@with_precision
def phi_expansion(lam, N: int, *, ctx: PrecisionContext) -> PhiExpansion:
    if N < 1:
        raise ValueError("N must be at least 1")
    a = [mpf(lam)]
    for n in range(1, N):
        conv = sum(a[j - 1] * a[n - j] for j in range(1, n + 1))
        a.append(2 * (2 * n - 1) * a[n - 1] - 2 * conv)
    return PhiExpansion(mpf(lam), tuple(a))
