"""Working precision, parameter pairs, finite differences and residual reports.

Every numerical routine in the package runs on mpmath ``mpf`` values.  The
precision is process-global in mpmath, so a :class:`PrecisionContext` is
activated with :meth:`PrecisionContext.workdps` around each computation rather
than being stored on the numbers themselves.
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass, field
from typing import Callable, Sequence

from mpmath import mp, mpf

DEFAULT_DIGITS = 50
DIGITS_ENV = "FREUD_DIGITS"


class PrecisionExhausted(ArithmeticError):
    """A computation lost too many digits to be trusted.

    ``quantity`` names what failed (e.g. ``"beta_dp1[14]"``) and
    ``required_digits`` is a rough estimate of the precision that would
    have been needed, when one is available.
    """

    def __init__(self, quantity: str, message: str = "", required_digits: int | None = None,
                 partial=None):
        self.quantity = quantity
        self.required_digits = required_digits
        self.partial = partial
        text = f"precision exhausted in {quantity}"
        if message:
            text += f": {message}"
        if required_digits is not None:
            text += f" (needs about {required_digits} digits)"
        super().__init__(text)


@dataclass(frozen=True)
class PrecisionContext:
    """Significant decimal digits plus the tolerances derived from them.

    ``guard`` extra digits are carried internally so that results are good
    to ``digits`` after the cancellation in Hankel determinants and finite
    differences.
    """

    digits: int = DEFAULT_DIGITS
    guard: int = 20

    def __post_init__(self):
        if int(self.digits) != self.digits or self.digits < 16:
            raise ValueError(f"digits must be an integer >= 16, got {self.digits!r}")
        if self.guard < 0:
            raise ValueError("guard must be non-negative")

    @property
    def working_digits(self) -> int:
        return self.digits + self.guard

    @property
    def eps(self) -> mpf:
        with self.workdps():
            return mpf(10) ** (-self.digits)

    @property
    def deriv_step(self) -> mpf:
        with self.workdps():
            return mpf(10) ** (-mpf(self.digits) / 3)

    @property
    def nested_step(self) -> mpf:
        # step for differentiating a quantity that is itself a finite difference
        with self.workdps():
            return mpf(10) ** (-mpf(self.digits) / 8)

    def workdps(self):
        return mp.workdps(self.working_digits)

    @classmethod
    def from_env(cls) -> "PrecisionContext":
        raw = os.environ.get(DIGITS_ENV)
        return cls(int(raw)) if raw else cls()


def default_context() -> PrecisionContext:
    return PrecisionContext.from_env()


def resolve(ctx: PrecisionContext | None) -> PrecisionContext:
    return default_context() if ctx is None else ctx


def with_precision(func):
    """Run ``func`` inside its context's working precision.

    The wrapped function receives ``ctx`` as a keyword argument; callers may
    omit it to get the default (``FREUD_DIGITS`` or 50 digits).
    """

    @functools.wraps(func)
    def wrapper(*args, ctx: PrecisionContext | None = None, **kwargs):
        ctx = resolve(ctx)
        with ctx.workdps():
            return func(*args, ctx=ctx, **kwargs)

    return wrapper


def _exact(x) -> mpf:
    # decimal strings such as "-0.3" are converted well beyond any working precision
    with mp.workdps(max(mp.dps, 120)):
        return mpf(x)


@dataclass(frozen=True)
class Params:
    """The deformation parameter ``t`` and the exponent ``lam`` (> -1)."""

    t: mpf
    lam: mpf

    def __init__(self, t, lam):
        t, lam = _exact(t), _exact(lam)
        if not lam > -1:
            raise ValueError(f"lambda must exceed -1, got {lam}")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "lam", lam)

    def with_t(self, t) -> "Params":
        return Params(t, self.lam)

    def shifted(self, k) -> "Params":
        return Params(self.t, self.lam + k)


# 5-point stencils, fourth order accurate
_D1 = ((-2, 1), (-1, -8), (1, 8), (2, -1))  # / 12h
_D2 = ((-2, -1), (-1, 16), (0, -30), (1, 16), (2, -1))  # / 12h^2


@with_precision
def central_diff(f: Callable[[mpf], mpf], x, order: int = 1, *, ctx: PrecisionContext,
                 step=None) -> mpf:
    """Fourth-order central difference of ``f`` at ``x``.

    ``step`` defaults to ``ctx.deriv_step``; pass ``ctx.nested_step`` when
    ``f`` is itself computed by differencing.
    """
    h = ctx.deriv_step if step is None else mpf(step)
    x = mpf(x)
    if order == 1:
        stencil, scale = _D1, 12 * h
    elif order == 2:
        stencil, scale = _D2, 12 * h * h
    else:
        raise ValueError("order must be 1 or 2")
    total = mpf(0)
    for k, w in stencil:
        v = f(x + k * h)
        if not mp.isfinite(v):
            raise ArithmeticError(f"non-finite value {v} at x={x + k * h}")
        total += w * v
    return total / scale


@dataclass
class ResidualReport:
    """Outcome of checking one identity on a set of evaluation points."""

    name: str
    max_residual: mpf
    tolerance: mpf
    grid: Sequence = field(default_factory=tuple)
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.max_residual <= self.tolerance)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return (f"{mark} {self.name}: max residual {mp.nstr(self.max_residual, 3)}"
                f" (tol {mp.nstr(self.tolerance, 2)})")


def combine(name: str, reports: Sequence[ResidualReport], tolerance=None) -> ResidualReport:
    """Fold several reports of the same identity into one."""
    tol = reports[0].tolerance if tolerance is None else tolerance
    worst = max((r.max_residual for r in reports), default=mpf(0))
    grid = tuple(g for r in reports for g in r.grid)
    return ResidualReport(name, worst, tol, grid)
