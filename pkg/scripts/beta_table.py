"""Sweep beta_n over the standard (t, lambda) grid with every route side by side.

Writes one CSV row per (t, lambda, n) with the four routes and the largest
relative disagreement between them.

    python scripts/beta_table.py --n-max 12 --digits 50 > betas.csv
"""

import argparse
from concurrent.futures import ProcessPoolExecutor

from mpmath import mp

from genfreud import Params, PrecisionContext, beta_closed, beta_dp1, beta_tau, hankel_betas
from genfreud.cli import GRID_LAMBDA, GRID_T


def cell(job):
    t, lam, n_max, digits = job
    ctx = PrecisionContext(digits)
    with ctx.workdps():
        p = Params(t, lam)
        ref = hankel_betas(n_max, p, ctx=ctx)
        dp1 = beta_dp1(n_max, p, ctx=ctx, reference=ref, min_digits=1)
        out = []
        for n in range(1, n_max + 1):
            vals = [ref[n], beta_tau(n, p, ctx=ctx), dp1[n]]
            vals.append(beta_closed(n, p, ctx=ctx) if n <= 4 else None)
            spread = max(abs(a - b) / abs(ref[n]) for a in vals if a is not None
                         for b in vals if b is not None)
            text = ["" if v is None else mp.nstr(v, digits - 5) for v in vals]
            out.append(f"{t},{lam},{n}," + ",".join(text) + f",{mp.nstr(spread, 3)}")
        return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=12)
    ap.add_argument("--digits", type=int, default=50)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    jobs = [(t, lam, args.n_max, args.digits) for t in GRID_T for lam in GRID_LAMBDA]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            cells = list(pool.map(cell, jobs))
    else:
        cells = [cell(j) for j in jobs]
    print("t,lambda,n,hankel,tau_ratio,dp1,closed_form,max_rel_spread")
    for rows in cells:
        print("\n".join(rows))


if __name__ == "__main__":
    main()
