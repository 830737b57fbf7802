"""Large-t doubling test: truncation error of the beta_n and H_n expansions at t and 2t.

The measured exponent log2(err(t)/err(2t)) is printed next to the order of the
first omitted coefficient of the formal expansion.

    python scripts/asymptotics.py --lambda 0.5 --t 30
"""

import argparse

from mpmath import mp, mpf

from genfreud import (Params, PrecisionContext, beta_asymptotic, beta_expansion, hankel_betas,
                      hn_asymptotic, hn_trace)
from genfreud.recurrence import doubling_exponent, leading_omitted_order


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lambda", dest="lam", default="0.5")
    ap.add_argument("--t", default="30")
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--digits", type=int, default=50)
    args = ap.parse_args()

    ctx = PrecisionContext(args.digits)
    with ctx.workdps():
        lam, t = mpf(args.lam), mpf(args.t)
        E = {k: beta_expansion(2 * args.n_max, lam + k, 8, ctx=ctx) for k in range(args.n_max)}
        print("quantity,err_t,err_2t,measured,predicted")
        for n in range(1, args.n_max + 1):
            errs = [abs(hankel_betas(n, Params(s, lam), ctx=ctx)[n]
                        - beta_asymptotic(n, Params(s, lam))) for s in (t, 2 * t)]
            pred = leading_omitted_order(E[0][n], 3)
            meas = doubling_exponent(*errs) if errs[1] else mp.inf
            print(f"beta_{n},{mp.nstr(errs[0], 4)},{mp.nstr(errs[1], 4)},{mp.nstr(meas, 4)},{pred}")
        for n in range(1, args.n_max // 2 + 1):
            errs = [abs(hn_trace(n, Params(s, lam), ctx=ctx) - hn_asymptotic(n, Params(s, lam)))
                    for s in (t, 2 * t)]
            coeffs = [sum(E[n - 1 - j][2 * j + 1][k] for j in range(n)) for k in range(8)]
            pred = leading_omitted_order(coeffs, 3)
            meas = doubling_exponent(*errs) if errs[1] else mp.inf
            print(f"H_{n},{mp.nstr(errs[0], 4)},{mp.nstr(errs[1], 4)},{mp.nstr(meas, 4)},{pred}")


if __name__ == "__main__":
    main()
