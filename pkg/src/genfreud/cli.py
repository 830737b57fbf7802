"""Command-line front end: ``genfreud {beta,poly,verify,table}``.

Numbers are printed with ``digits - 5`` significant figures in scientific
notation and are carried as strings in JSON so CSV and JSON agree exactly.
Exit status: 0 on success, 1 if ``verify`` finds a residual above the
tolerance, 2 on usage errors, 3 on precision exhaustion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from mpmath import mp, mpf

from .core import DIGITS_ENV, Params, PrecisionContext, PrecisionExhausted
from .polynomials import orthogonal_polys
from .recurrence import METHODS, BetaTable, beta_table
from .verify import run_suite

COMMANDS = ("beta", "poly", "verify", "table")
FORMATS = ("csv", "json")
GRID_T = ("-2", "0", "2")
GRID_LAMBDA = ("-0.3", "0.5", "1", "2.5")

EXIT_OK, EXIT_RESIDUAL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    t: str = "0"
    lam: str = "0"
    n_max: int = 4
    method: str = "all"
    digits: int = 50
    format: str = "csv"
    tolerance_exponent: int = -12
    workers: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"command must be one of {COMMANDS}")
        if self.method != "all" and self.method not in METHODS:
            raise ValueError(f"method must be 'all' or one of {METHODS}")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        if self.n_max < 1:
            raise ValueError("n-max must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        PrecisionContext(self.digits)  # validates digits
        Params(self.t, self.lam)  # validates lambda

    @property
    def ctx(self) -> PrecisionContext:
        return PrecisionContext(self.digits)

    @property
    def methods(self) -> tuple:
        if self.method != "all":
            return (self.method,)
        return METHODS if self.n_max <= 4 else tuple(m for m in METHODS if m != "closed-form")


def fmt(x, digits: int) -> str:
    """``digits - 5`` significant figures, always in scientific notation."""
    sig = digits - 5
    if x == 0:
        return "0." + "0" * (sig - 1) + "e+0"
    text = mp.nstr(mpf(x), sig, strip_zeros=False, min_fixed=1, max_fixed=0)
    # mpmath keeps exponent 0 in fixed notation
    return text if "e" in text else text + "e+0"


def _table_rows(table: BetaTable, digits: int) -> list[dict]:
    return [{"n": n, "method": table.method, "value": fmt(table.beta[n], digits),
             "est_digits": table.est_digits[n]} for n in range(1, len(table.beta))]


def beta_entries(cfg: RunConfig, t=None, lam=None) -> tuple[list[dict], PrecisionExhausted | None]:
    """Rows for every requested route, sorted by (n, route order).

    A dp1 precision failure keeps the valid prefix and is returned alongside.
    """
    ctx = cfg.ctx
    failure = None
    rows = []
    with ctx.workdps():
        p = Params(cfg.t if t is None else t, cfg.lam if lam is None else lam)
        for method in cfg.methods:
            try:
                table = beta_table(cfg.n_max, p, method, ctx=ctx)
            except PrecisionExhausted as exc:
                failure = exc
                if exc.partial is None:
                    continue
                table = exc.partial
            rows += _table_rows(table, cfg.digits)
    order = {m: i for i, m in enumerate(METHODS)}
    rows.sort(key=lambda r: (r["n"], order[r["method"]]))
    return rows, failure


def poly_entries(cfg: RunConfig) -> list[dict]:
    """One row per coefficient of S_0..S_N; ``n`` is the power, ``method`` names S_d."""
    ctx = cfg.ctx
    with ctx.workdps():
        p = Params(cfg.t, cfg.lam)
        est = beta_table(max(cfg.n_max, 1), p, "hankel", ctx=ctx).est_digits
        polys = orthogonal_polys(cfg.n_max, p, ctx=ctx)
        rows = []
        for d, s in enumerate(polys):
            acc = min(est[: max(d, 1)])
            rows += [{"n": k, "method": f"S_{d}", "value": fmt(c, cfg.digits), "est_digits": acc}
                     for k, c in enumerate(s.coeffs)]
    return rows


def verify_reports(cfg: RunConfig) -> list[dict]:
    ctx = cfg.ctx
    with ctx.workdps():
        p = Params(cfg.t, cfg.lam)
        tol = mpf(10) ** cfg.tolerance_exponent
        reports = run_suite(p, cfg.n_max, tol, ctx=ctx)
        return [{"name": r.name, "max_residual": fmt(r.max_residual, cfg.digits),
                 "tolerance": fmt(r.tolerance, cfg.digits), "pass": r.passed}
                for r in reports]


def _table_cell(args):
    cfg, t, lam = args
    rows, failure = beta_entries(cfg, t, lam)
    return t, lam, rows, None if failure is None else str(failure)


def table_entries(cfg: RunConfig) -> tuple[list[dict], list[str]]:
    """Beta rows over the (t, lambda) grid, ordered by (t, lambda, n)."""
    jobs = [(cfg, t, lam) for t in GRID_T for lam in GRID_LAMBDA]
    if cfg.workers > 1:
        # mpmath precision is process-global, so cells run in separate processes
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            cells = list(pool.map(_table_cell, jobs))
    else:
        cells = [_table_cell(j) for j in jobs]
    rows, failures = [], []
    for t, lam, cell_rows, failure in sorted(cells, key=lambda c: (mpf(c[0]), mpf(c[1]))):
        rows += [{"t": t, "lambda": lam, **r} for r in cell_rows]
        if failure:
            failures.append(f"t={t}, lambda={lam}: {failure}")
    return rows, failures


def _csv(rows: list[dict], fields: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: ("true" if v is True else "false" if v is False else v)
                         for k, v in r.items()})
    return buf.getvalue()


def render(cfg: RunConfig, entries: list[dict], residuals: list[dict]) -> str:
    if cfg.format == "json":
        params = {"t": cfg.t, "lambda": cfg.lam, "n_max": cfg.n_max, "digits": cfg.digits}
        if cfg.command == "table":
            params = {"t": list(GRID_T), "lambda": list(GRID_LAMBDA),
                      "n_max": cfg.n_max, "digits": cfg.digits}
        doc = {"params": params, "entries": entries, "residuals": residuals}
        return json.dumps(doc, indent=2) + "\n"
    if cfg.command == "verify":
        return _csv(residuals, ["name", "max_residual", "tolerance", "pass"])
    fields = ["n", "method", "value", "est_digits"]
    if cfg.command == "table":
        fields = ["t", "lambda"] + fields
    return _csv(entries, fields)


def run(cfg: RunConfig, out=None, err=None) -> int:
    """Execute one command, write the serialized result to ``out``, return the exit status."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    entries, residuals, failures = [], [], []
    try:
        if cfg.command == "beta":
            entries, failure = beta_entries(cfg)
            if failure is not None:
                failures.append(str(failure))
        elif cfg.command == "poly":
            entries = poly_entries(cfg)
        elif cfg.command == "verify":
            residuals = verify_reports(cfg)
        else:
            entries, failures = table_entries(cfg)
    except PrecisionExhausted as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PRECISION
    out.write(render(cfg, entries, residuals))
    for f in failures:
        print(f"error: {f}", file=err)
    if failures:
        return EXIT_PRECISION
    if residuals and not all(r["pass"] for r in residuals):
        return EXIT_RESIDUAL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genfreud",
        description="Recurrence coefficients, polynomials and identity checks for the "
                    "weight |x|^(2 lambda + 1) exp(-x^4 + t x^2).")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--t", default="0", help="deformation parameter (default 0)")
    parser.add_argument("--lambda", dest="lam", default="0", help="exponent, > -1 (default 0)")
    parser.add_argument("--n-max", type=int, default=4)
    parser.add_argument("--method", default="all", choices=("all",) + METHODS)
    parser.add_argument("--digits", type=int, default=None,
                        help=f"significant digits (default ${DIGITS_ENV} or 50)")
    parser.add_argument("--format", default="csv", choices=FORMATS)
    parser.add_argument("--tolerance-exponent", type=int, default=-12,
                        help="verify fails if a residual exceeds 10^this (default -12)")
    parser.add_argument("--workers", type=int, default=1,
                        help="processes for the table sweep (default 1)")
    return parser


def config_from_args(argv=None) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    digits = ns.digits if ns.digits is not None else PrecisionContext.from_env().digits
    try:
        return RunConfig(ns.command, ns.t, ns.lam, ns.n_max, ns.method, digits, ns.format,
                         ns.tolerance_exponent, ns.workers)
    except (ValueError, ArithmeticError) as exc:
        parser.error(str(exc))


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
