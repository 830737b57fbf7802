"""Digits kept by forward string-equation iteration, against the Cholesky route.

    python scripts/dp1_instability.py --t -2 --lambda -0.3 --n-max 60 --digits 30
"""

import argparse

from mpmath import mp

from genfreud import Params, PrecisionContext, PrecisionExhausted, beta_dp1, hankel_betas


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--t", default="-2")
    ap.add_argument("--lambda", dest="lam", default="-0.3")
    ap.add_argument("--n-max", type=int, default=60)
    ap.add_argument("--digits", type=int, default=30)
    args = ap.parse_args()

    ctx = PrecisionContext(args.digits, guard=0)
    ref_ctx = PrecisionContext(args.digits + 60)
    with ref_ctx.workdps():
        p = Params(args.t, args.lam)
        ref = hankel_betas(args.n_max, p, ctx=ref_ctx)
    with ctx.workdps():
        try:
            table = beta_dp1(args.n_max, p, ctx=ctx, reference=ref, min_digits=1)
        except PrecisionExhausted as exc:
            print(f"# stopped: {exc}")
            table = exc.partial
    print("n,beta_dp1,digits_kept")
    for n in range(1, len(table.beta)):
        print(f"{n},{mp.nstr(table.beta[n], 12)},{table.est_digits[n]}")


if __name__ == "__main__":
    main()
