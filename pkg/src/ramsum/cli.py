"""Command-line front end: single evaluations, period tables, identity sweeps.

Exit codes are CI-oriented: 0 success, 1 usage or resource errors, 2 for
verification failures (and for findings under --strict-findings).  All
output is deterministic; the --jobs flag changes wall time, never bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

from .arith import configure_default_sieve, factorize, gen_gcd, jordan_totient
from .csum import DEFAULT_CAP, csum_eval, csum_table, theta
from .errors import ResourceLimitError
from .exactnum import bernoulli_number, rat_str
from .identities import ALL_IDENTITIES, DEFAULT_SWEEP_CAP, SuiteConfig, render_report, run_suite


class _Parser(argparse.ArgumentParser):
    # argparse's default usage-error exit code is 2, reserved here for
    # verification failures; remap to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_common(parser: argparse.ArgumentParser, default_cap: int) -> None:
    parser.add_argument("--cap", type=int, default=default_cap, help="largest k^s any evaluation may touch")
    parser.add_argument("--sieve-limit", type=int, default=None, help="rebuild the shared factorization sieve")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ramsum", description="Generalized Ramanujan sums and their weighted-average identities")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_eval = sub.add_parser("eval", help="evaluate one quantity")
    ev = p_eval.add_subparsers(dest="what", required=True, parser_class=_Parser)

    p = ev.add_parser("csum", help="c_k^(s)(j)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--method", choices=("moebius", "hoelder", "direct"), default="moebius")
    _add_common(p, DEFAULT_CAP)

    p = ev.add_parser("jordan", help="Jordan totient J_s(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    _add_common(p, DEFAULT_CAP)

    p = ev.add_parser("bernoulli", help="Bernoulli number B_m")
    p.add_argument("--m", type=int, required=True)

    p = ev.add_parser("gengcd", help="generalized gcd (j, k^s)_s")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    _add_common(p, DEFAULT_CAP)

    p = ev.add_parser("theta", help="indicator theta_k^(s)(n)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    _add_common(p, DEFAULT_CAP)

    p = sub.add_parser("table", help="one full period of c_k^(s)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_common(p, DEFAULT_CAP)

    p = sub.add_parser("verify", help="sweep identity checks over a parameter grid")
    p.add_argument("identity", choices=ALL_IDENTITIES + ("all",))
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--s", type=int, default=None, help="fix s (overrides --s-max)")
    p.add_argument("--s-max", type=int, default=None)
    p.add_argument("--r-max", type=int, default=None)
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--ks", type=str, default=None, help="multivariate moduli, e.g. '2,3;4,6'")
    p.add_argument("--weights", type=str, default=None, help="comma list: power:T|power:s|phi|jordan:T|tau|sigma")
    p.add_argument("--tuples", type=int, default=20, help="random tuple count for g-multiplicative")
    p.add_argument("--seed", type=int, default=91)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv", "human"), default="human")
    p.add_argument("--tol", type=float, default=None, help="override floating tolerances")
    p.add_argument("--strict-findings", action="store_true", help="treat findings as failures")
    _add_common(p, DEFAULT_SWEEP_CAP)

    return parser


def _parse_ks(text: str) -> tuple:
    groups = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        values = tuple(int(v) for v in part.split(","))
        if not values or any(v < 1 for v in values):
            raise ValueError(f"bad moduli group {part!r}")
        groups.append(values)
    if not groups:
        raise ValueError("empty --ks list")
    return tuple(groups)


def _cmd_eval(args) -> int:
    if args.what == "csum":
        print(csum_eval(args.k, args.j, args.s, method=args.method, cap=args.cap).value)
    elif args.what == "jordan":
        print(jordan_totient(args.s, factorize(args.n)))
    elif args.what == "bernoulli":
        print(rat_str(bernoulli_number(args.m)))
    elif args.what == "gengcd":
        print(gen_gcd(args.j, args.k, args.s))
    else:
        print(theta(args.k, args.n, args.s))
    return 0


def _cmd_table(args) -> int:
    values = csum_table(args.k, args.s, cap=args.cap).values
    if args.format == "json":
        print(json.dumps(list(values), separators=(",", ":")))
    else:
        sys.stdout.write("j,c\n")
        sys.stdout.write("".join(f"{j},{v}\n" for j, v in enumerate(values)))
    return 0


def _cmd_verify(args) -> int:
    cfg = SuiteConfig(
        identities=(args.identity,),
        k_min=args.k_min,
        k_max=args.k_max,
        s=args.s,
        s_max=args.s_max,
        r_max=args.r_max,
        m_max=args.m_max,
        n_max=args.n_max,
        ks=_parse_ks(args.ks) if args.ks else None,
        weights=tuple(w.strip() for w in args.weights.split(",")) if args.weights else None,
        tuples=args.tuples,
        seed=args.seed,
        cap=args.cap,
        tolerance=args.tol,
        jobs=args.jobs,
        strict_findings=args.strict_findings,
    )
    report = run_suite(cfg)
    sys.stdout.write(render_report(report, args.format))
    if report.failed:
        return 2
    if report.findings and args.strict_findings:
        return 2
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "sieve_limit", None):
            configure_default_sieve(args.sieve_limit)
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "table":
            return _cmd_table(args)
        return _cmd_verify(args)
    except (ValueError, ResourceLimitError) as exc:
        print(f"ramsum: error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())
