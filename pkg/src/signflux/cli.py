"""Command-line front end.

One subcommand per experiment so each headline quantity is reproducible
with a single invocation:

    signflux build     --limit N [--cache PATH] [--dump-arith CSV]
    signflux sums      --limit N [--ratio R] [--dump-sums CSV]
    signflux scan      --limit N --X INT --r RAT
    signflux count     --limit N --X INT
    signflux exponents [--beta-prime Q --eta-prime Q --eta-double-prime Q]
                       [--alpha Q --beta Q --gamma Q --eta Q]
    signflux euler     --limit N --p PRIME [--s RE,IM] [--depth J]
    signflux perron    --limit N --kind {S1,S2} --X REAL [--T REAL] [--sigma REAL]
    signflux verify    --limit N

JSON goes to stdout (every document carries "schema": 1); CSV artifacts go
to files.  Exit codes: 0 success, 1 criterion failure, 2 usage or
configuration error.  All commands are deterministic for a fixed
configuration; SIGNFLUX_CACHE provides a default coefficient-cache path.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from . import acceptance, arithmetic, dirichlet, eigenform, series, signscan
from .errors import SignfluxError

SCHEMA = 1
_CHANGES_SAMPLE = 20


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text}") from exc


def _complex_pair(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text}")


def _emit(payload: dict) -> None:
    payload = {"schema": SCHEMA, **payload}
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _load_tables(
    args: argparse.Namespace,
) -> tuple[eigenform.EigenformTable, arithmetic.ArithmeticTables]:
    """Build or load the eigenform table, then sieve to the same limit."""
    cache = args.cache or os.environ.get("SIGNFLUX_CACHE")
    if cache and os.path.exists(cache):
        cached = eigenform.read_cache(cache)
        if cached.limit >= args.limit:
            eig = eigenform.truncate_table(cached, args.limit)
            return eig, arithmetic.sieve_arithmetic(args.limit)
    eig = eigenform.build_delta_table(args.limit)
    if cache:
        eigenform.write_cache(eig, cache)
    return eig, arithmetic.sieve_arithmetic(args.limit)


def _report_json(report: signscan.SignChangeReport) -> dict:
    return {
        "interval": list(report.interval),
        "count": report.count,
        "first_change": list(report.changes[0]) if report.changes else None,
        "changes_sample": [list(c) for c in report.changes[:_CHANGES_SAMPLE]],
    }


def _write_changes_csv(path: str, report: signscan.SignChangeReport) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n1", "n2"])
        writer.writerows(report.changes)


def cmd_build(args: argparse.Namespace) -> int:
    cache = args.cache or os.environ.get("SIGNFLUX_CACHE")
    eig = eigenform.build_delta_table(args.limit)
    if cache:
        eigenform.write_cache(eig, cache)
    if args.dump_arith:
        arith = arithmetic.sieve_arithmetic(args.limit)
        b = arithmetic.b_coefficients(eig, arith)
        with open(args.dump_arith, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "r2", "chi4", "mu", "b"])
            for n in range(1, args.limit + 1):
                writer.writerow(
                    [
                        n,
                        int(arith.r2[n]),
                        int(arith.chi4[n]),
                        int(arith.mu[n]),
                        repr(float(b[n])),
                    ]
                )
    _emit(
        {
            "command": "build",
            "weight": eig.weight,
            "limit": eig.limit,
            "cache": cache,
            "a_max_bits": max(abs(a).bit_length() for a in eig.exact[1:]),
        }
    )
    return 0


def cmd_sums(args: argparse.Namespace) -> int:
    eig, arith = _load_tables(args)
    spec = series.CheckpointSpec(ratio=args.ratio)
    s1, s2 = series.stream_sums(eig, arith, spec)
    c_f, residual = series.estimate_cf(s2)
    sups = series.residual_sup_windows(eig, arith, c_f, spec)
    beta_fit = series.fit_exponent(s1, "sup_dyadic_abs")
    eta_fit = series.fit_exponent(
        series.attach_sup_windows(residual, sups), "sup_dyadic_abs"
    )
    if args.dump_sums:
        _write_sums_csv(args.dump_sums, s1, s2, residual, sups, c_f)
    _emit(
        {
            "command": "sums",
            "N": args.limit,
            "c_f": c_f,
            "beta_hat": beta_fit.slope,
            "eta_hat": eta_fit.slope,
            "r_squared": beta_fit.r_squared,
            "eta_r_squared": eta_fit.r_squared,
        }
    )
    return 0


def _write_sums_csv(
    path: str,
    s1: series.CheckpointSeries,
    s2: series.CheckpointSeries,
    residual: series.CheckpointSeries,
    sups: list[tuple[int, float]],
    c_f: float,
) -> None:
    sup_lookup = {("S1", x): v for x, v in (s1.sup_windows or [])}
    sup_lookup.update({("S2", x): v for x, v in sups})
    resid_lookup = dict(residual.checkpoints)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["kind", "X", "value", "sup_window", "residual"])
        for kind, ser in (("S1", s1), ("S2", s2)):
            for x, value in ser.checkpoints:
                sup = sup_lookup.get((kind, x), "")
                resid = resid_lookup.get(x, "") if kind == "S2" else ""
                writer.writerow([kind, x, repr(value), sup, resid])


def cmd_scan(args: argparse.Namespace) -> int:
    eig, arith = _load_tables(args)
    report = signscan.scan_window(eig, arith, args.X, args.r)
    if args.out:
        _write_changes_csv(args.out, report)
    _emit({"command": "scan", "r": str(args.r), **_report_json(report)})
    return 0


def cmd_count(args: argparse.Namespace) -> int:
    eig, arith = _load_tables(args)
    report = signscan.count_dyadic(eig, arith, args.X)
    if args.out:
        _write_changes_csv(args.out, report)
    _emit({"command": "count", **_report_json(report)})
    return 0


def cmd_exponents(args: argparse.Namespace) -> int:
    payload: dict = {"command": "exponents"}
    beta, eta = args.beta, args.eta
    if args.beta_prime is not None:
        beta_bound, eta_bound = signscan.transfer_exponents(
            args.beta_prime, args.eta_prime, args.eta_double_prime
        )
        payload["beta_bound"] = str(beta_bound)
        payload["eta_bound"] = str(eta_bound)
        beta = beta if beta is not None else beta_bound
        eta = eta if eta is not None else eta_bound
    if beta is not None and eta is not None:
        params = signscan.CriteriaParams(args.alpha, beta, args.gamma, eta)
        interval = signscan.admissible_r(params)
        payload["r_interval"] = (
            [str(interval[0]), str(interval[1])] if interval else None
        )
    _emit(payload)
    return 0


def cmd_euler(args: argparse.Namespace) -> int:
    eig, arith = _load_tables(args)
    check = dirichlet.solve_local_factor(eig, arith, args.p, args.s, args.depth)
    _emit(
        {
            "command": "euler",
            "p": check.prime,
            "s": [args.s.real, args.s.imag],
            "depth": check.depth,
            "depth_solved": check.depth_solved,
            "ltilde_local": [check.ltilde_local.real, check.ltilde_local.imag],
            "ff_local": [check.ff_local.real, check.ff_local.imag],
            "ffchi_local": [check.ffchi_local.real, check.ffchi_local.imag],
            "u_p": [check.u_p.real, check.u_p.imag],
            "abs_u_minus_1": check.abs_u_minus_1,
            "residual": check.residual,
            "tail_bound": dirichlet.local_envelope_tail(
                check.prime, check.depth_solved, args.s.real
            ),
        }
    )
    return 0


def cmd_perron(args: argparse.Namespace) -> int:
    eig, arith = _load_tables(args)
    check = dirichlet.perron_check(
        eig, arith, args.kind, args.X, args.T, args.sigma, truncation=args.truncation
    )
    _emit(
        {
            "command": "perron",
            "kind": check.kind,
            "X": check.x,
            "T": check.t,
            "sigma": check.sigma,
            "truncation": check.truncation,
            "contour": check.contour_value,
            "direct": check.direct_value,
            "discrepancy": check.discrepancy,
        }
    )
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    eig, arith = _load_tables(args)
    ctx = acceptance.VerifyContext(
        eig=eig, arith=arith, limit=args.limit, threads=args.threads
    )
    results = acceptance.run_all(ctx)
    for result in results:
        print(result.line())
    failed = sum(r.status == acceptance.FAIL for r in results)
    passed = sum(r.status == acceptance.PASS for r in results)
    skipped = sum(r.status == acceptance.SKIP for r in results)
    print(f"{passed} passed, {failed} failed, {skipped} skipped")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signflux",
        description="Eigenform coefficients along sums of two squares: "
        "sign-change scans, partial-sum exponents, and series cross-checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_table_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--limit", type=_positive_int, required=True)
        p.add_argument("--cache", help="coefficient cache path (or $SIGNFLUX_CACHE)")
        p.add_argument(
            "--threads",
            type=_positive_int,
            default=os.cpu_count() or 1,
            help="worker bound; results are independent of it",
        )

    p = sub.add_parser("build", help="construct tables and write the cache")
    add_table_args(p)
    p.add_argument("--dump-arith", help="CSV path for n, r2, chi4, mu, b")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("sums", help="checkpointed running sums and exponent fits")
    add_table_args(p)
    p.add_argument("--ratio", type=float, default=2.0**0.125)
    p.add_argument("--dump-sums", help="CSV path for kind, X, value, sup, residual")
    p.set_defaults(func=cmd_sums)

    p = sub.add_parser("scan", help="sign changes in [X, X + X^r]")
    add_table_args(p)
    p.add_argument("--X", type=_positive_int, required=True)
    p.add_argument("--r", type=_fraction, required=True)
    p.add_argument("--out", help="CSV path for the full change list")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("count", help="sign changes in [X, 2X]")
    add_table_args(p)
    p.add_argument("--X", type=_positive_int, required=True)
    p.add_argument("--out", help="CSV path for the full change list")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("exponents", help="exact rational exponent calculators")
    p.add_argument("--beta-prime", type=_fraction)
    p.add_argument("--eta-prime", type=_fraction, default=Fraction(0))
    p.add_argument("--eta-double-prime", type=_fraction, default=Fraction(0))
    p.add_argument("--alpha", type=_fraction, default=Fraction(0))
    p.add_argument("--beta", type=_fraction)
    p.add_argument("--gamma", type=_fraction, default=Fraction(1))
    p.add_argument("--eta", type=_fraction)
    p.set_defaults(func=cmd_exponents)

    p = sub.add_parser("euler", help="solve one local correction factor")
    add_table_args(p)
    p.add_argument("--p", type=_positive_int, required=True)
    p.add_argument("--s", type=_complex_pair, default=complex(2.0, 0.0))
    p.add_argument("--depth", type=_positive_int, default=1)
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("perron", help="contour value against the primed sum")
    add_table_args(p)
    p.add_argument("--kind", choices=("S1", "S2"), default="S1")
    p.add_argument("--X", type=float, required=True)
    p.add_argument("--T", type=float, default=200.0)
    p.add_argument("--sigma", type=float, default=1.25)
    p.add_argument("--truncation", type=_positive_int)
    p.set_defaults(func=cmd_perron)

    p = sub.add_parser("verify", help="run the acceptance suite")
    add_table_args(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SignfluxError as exc:
        print(f"signflux: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"signflux: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
