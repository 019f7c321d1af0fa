#!/usr/bin/env python3
"""Run the full desk-scale measurement battery and write plot-ready CSVs.

Reproduces every headline quantity in one sweep:

  * dyadic sign-change counts against the X^{1/4} floor and the
    square-root prediction,
  * window scans at exponent 0.76,
  * S1/S2 checkpoint series with sup-window envelopes and fitted
    growth exponents,
  * solved local correction factors U_p at s = 2,
  * truncated-Perron discrepancies over a T ladder.

Usage:
    python scripts/run_experiments.py --limit 1000000 --outdir results/
"""

import argparse
import csv
import json
import math
import sys
import time
from pathlib import Path

from signflux import acceptance, dirichlet, series, signscan
from signflux.arithmetic import primes_upto


def log(msg):
    print(f"[{time.strftime('%H:%M:%S')}] {msg}", flush=True)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--limit", type=int, default=10**6)
    parser.add_argument("--outdir", type=Path, default=Path("results"))
    args = parser.parse_args(argv)
    args.outdir.mkdir(parents=True, exist_ok=True)

    log(f"building tables to {args.limit}")
    ctx = acceptance.build_context(args.limit)
    summary = {"schema": 1, "limit": args.limit}

    log("dyadic sign-change counts")
    with open(args.outdir / "dyadic_counts.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["X", "count", "x_quarter", "count_over_sqrt_x"])
        x = 1000
        while 2 * x <= args.limit:
            count = signscan.count_dyadic(ctx.eig, ctx.arith, x).count
            writer.writerow([x, count, x**0.25, count / math.sqrt(x)])
            x *= 2

    log("checkpointed sums and exponent fits")
    spec = series.CheckpointSpec()
    s1, s2 = series.stream_sums(ctx.eig, ctx.arith, spec)
    c_f, residual = series.estimate_cf(s2)
    sups = series.residual_sup_windows(ctx.eig, ctx.arith, c_f, spec)
    beta_fit = series.fit_exponent(s1, "sup_dyadic_abs")
    eta_fit = series.fit_exponent(
        series.attach_sup_windows(residual, sups), "sup_dyadic_abs"
    )
    summary["c_f"] = c_f
    summary["beta_hat"] = beta_fit.slope
    summary["beta_r_squared"] = beta_fit.r_squared
    summary["eta_hat"] = eta_fit.slope
    summary["eta_r_squared"] = eta_fit.r_squared
    with open(args.outdir / "sums.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["kind", "X", "value", "sup_window", "residual"])
        sup1 = dict(s1.sup_windows)
        sup2 = dict(sups)
        resid = dict(residual.checkpoints)
        for x, v in s1.checkpoints:
            writer.writerow(["S1", x, repr(v), sup1.get(x, ""), ""])
        for x, v in s2.checkpoints:
            writer.writerow(["S2", x, repr(v), sup2.get(x, ""), resid.get(x, "")])

    log("local correction factors at s = 2")
    with open(args.outdir / "euler_factors.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["p", "u_p_re", "u_p_im", "abs_u_minus_1", "residual"])
        for p in (int(q) for q in primes_upto(100)):
            check = dirichlet.solve_local_factor(ctx.eig, ctx.arith, p, 2.0, depth=1)
            writer.writerow(
                [p, check.u_p.real, check.u_p.imag, check.abs_u_minus_1, check.residual]
            )
    product, tail = dirichlet.euler_product_ltilde(ctx.eig, ctx.arith, 2.0, 100)
    direct = dirichlet.eval_series(
        dirichlet.SeriesSpec("Ltilde", ctx.eig, ctx.arith, ctx.limit), 2.0
    )
    summary["euler_product"] = product.real
    summary["dirichlet_sum"] = direct.value.real
    summary["euler_gap"] = abs(product - direct.value)
    summary["euler_tail_budget"] = tail + direct.tail_bound

    log("truncated-Perron ladder at X = 50.5")
    with open(args.outdir / "perron.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["kind", "X", "T", "sigma", "contour", "direct", "discrepancy"])
        for t_max in (100.0, 200.0, 400.0, 800.0):
            check = dirichlet.perron_check(ctx.eig, ctx.arith, "S1", 50.5, t_max, 1.25)
            writer.writerow(
                [
                    "S1",
                    check.x,
                    check.t,
                    check.sigma,
                    check.contour_value,
                    check.direct_value,
                    check.discrepancy,
                ]
            )

    log("acceptance suite")
    results = acceptance.run_all(ctx)
    for result in results:
        print(result.line())
    summary["acceptance"] = {
        str(r.number): {"name": r.name, "status": r.status} for r in results
    }

    with open(args.outdir / "summary.json", "w") as fh:
        json.dump(summary, fh, indent=2)
    log(f"wrote {args.outdir}/summary.json")
    return 1 if any(r.status == "FAIL" for r in results) else 0


if __name__ == "__main__":
    sys.exit(main())
