"""Command-line interface.

Subcommands: compute (single values), verify (one statement instance),
campaign (grid runs with JSON/CSV reports), trend (plot-ready ratio
series), self-test (constants consistency plus a corrupted-constant
falsifiability check).

Conventions: every "log" is the natural logarithm; integers print
verbatim, rationals as p/q, intervals as "[lo, hi] @ bits" with both
endpoints at full stored precision.  Exit codes: 0 PASS/SKIPPED, 1 FAIL,
2 INCONCLUSIVE, 3 usage or bad config, 4 I/O failure.  The sieve is
sized to the minimum the request implies; AP_LCM_SIEVE_LIMIT or
--sieve-limit raises it.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Sequence

from .core_arith import DomainError, PrecisionPolicy, padic_valuation
from .primes import MemoryBudgetError, SieveRangeError, build_sieve, pi, theta_progression
from .progression import (
    ProgressionSpec,
    euler_phi,
    lcm_progression,
    m_function,
    m_function_interval,
)
from .bounds import StatementId
from .verify import (
    check_instance,
    constants_consistency,
    negative_control,
    sieve_requirement,
    verdict_exit_code,
    worst_verdict,
)
from .campaign import (
    ALL_STATEMENTS,
    CampaignConfig,
    SIEVE_LIMIT_ENV,
    bateman_trend,
    corollary2_trend,
    normalize_statement,
    report_document,
    run_campaign,
    spaced_points,
    write_records_csv,
    write_trend_csv,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3
EXIT_IO = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit code 3 instead of argparse's 2
        raise UsageError(message)


_VERIFY_PARAMS = {
    "thm1": ("a", "b", "n"),
    "thm2": ("a", "b", "n"),
    "eq_a": ("a", "b", "n"),
    "farhi": ("a", "b", "n"),
    "lemma6": ("a", "b", "n"),
    "lemma7": ("b",),
    "lemma8": ("b", "n"),
    "cor1": ("r",),
    "cor1_lower": ("r",),
    "cor1_upper": ("r",),
    "cor3": ("x", "k", "l"),
    "rosser_sum": ("n",),
    "rosser_pn": ("n",),
    "rosser_series": ("limit",),
    "hanson": ("x",),
    "robin": ("n",),
}


def _env_sieve_limit() -> int | None:
    raw = os.environ.get(SIEVE_LIMIT_ENV)
    return int(raw) if raw else None


def _build_sized_sieve(args, need: int):
    override = getattr(args, "sieve_limit", None) or _env_sieve_limit()
    limit = max(2, need, override or 0)
    return build_sieve(limit)


def build_parser() -> _Parser:
    p = _Parser(
        prog="aplcm",
        description="Exact lcm of arithmetic progressions and rigorous "
        "verification of effective bounds (all logarithms are natural).",
    )
    from . import __version__

    p.add_argument("--version", action="version", version=f"aplcm {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log extra detail to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    # compute
    comp = sub.add_parser("compute", help="compute a single exact value or interval")
    csub = comp.add_subparsers(dest="target", required=True)

    c_lcm = csub.add_parser("lcm", help="lcm of a, a+b, ..., a+nb")
    for name in ("a", "b", "n"):
        c_lcm.add_argument(f"--{name}", type=int, required=True)
    c_lcm.set_defaults(func=_cmd_compute)

    c_m = csub.add_parser("m", help="M(r), exact rational up to --exact-cap")
    c_m.add_argument("--r", type=int, required=True)
    c_m.add_argument("--exact-cap", type=int, default=5000)
    c_m.add_argument("--bits", type=int, default=128)
    c_m.set_defaults(func=_cmd_compute)

    c_theta = csub.add_parser("theta", help="sum of ln p over primes p <= x, p = l (mod k)")
    for name in ("x", "k", "l"):
        c_theta.add_argument(f"--{name}", type=int, required=True)
    c_theta.add_argument("--bits", type=int, default=128)
    c_theta.add_argument("--sieve-limit", type=int)
    c_theta.set_defaults(func=_cmd_compute)

    c_phi = csub.add_parser("phi", help="Euler totient")
    c_phi.add_argument("--n", type=int, required=True)
    c_phi.add_argument("--sieve-limit", type=int)
    c_phi.set_defaults(func=_cmd_compute)

    c_val = csub.add_parser("valuation", help="p-adic valuation of n")
    c_val.add_argument("--p", type=int, required=True)
    c_val.add_argument("--n", type=int, required=True)
    c_val.set_defaults(func=_cmd_compute)

    c_pi = csub.add_parser("pi", help="number of primes <= x")
    c_pi.add_argument("--x", type=int, required=True)
    c_pi.add_argument("--sieve-limit", type=int)
    c_pi.set_defaults(func=_cmd_compute)

    # verify
    ver = sub.add_parser("verify", help="check one statement instance")
    ver.add_argument("statement", help="e.g. thm1, thm2, eq-a, lemma7, cor1, cor3, hanson")
    for name in ("a", "b", "n", "r", "x", "k", "l", "limit"):
        ver.add_argument(f"--{name}", type=int)
    ver.add_argument("--bits-start", type=int, default=128)
    ver.add_argument("--bits-max", type=int, default=2048)
    ver.add_argument("--sieve-limit", type=int)
    ver.set_defaults(func=_cmd_verify)

    # campaign
    camp = sub.add_parser("campaign", help="run statement grids and write a report")
    camp.add_argument("--config", help="JSON campaign config file")
    camp.add_argument("--statements", help="comma-separated subset (default: all)")
    camp.add_argument("--out", help="write the JSON report here")
    camp.add_argument("--csv", help="also write records as CSV here")
    camp.add_argument("--format", choices=("json", "csv"), default="json",
                      help="stdout format when --out is not given")
    camp.add_argument("--jobs", type=int)
    camp.add_argument("--sieve-limit", type=int)
    camp.add_argument("--bits-start", type=int)
    camp.add_argument("--bits-max", type=int)
    camp.add_argument("--r-max", type=int, help="cor1 grid override")
    camp.add_argument("--b-max", type=int, help="thm1/thm2/lemma6/lemma7/lemma8 grid override")
    camp.add_argument("--n-max", type=int, help="eq-a/farhi/lemma8/robin/rosser-sum grid override")
    camp.add_argument("--x-max", type=int, help="hanson grid override")
    camp.add_argument("--k-max", type=int, help="cor3 grid override")
    camp.set_defaults(func=_cmd_campaign)

    # trend
    tr = sub.add_parser("trend", help="emit plot-ready ratio series as CSV")
    tsub = tr.add_subparsers(dest="target", required=True)
    t_bat = tsub.add_parser("bateman", help="ln L(a,b,n) / (n b M(b))")
    t_bat.add_argument("--a", type=int, default=1)
    t_bat.add_argument("--b", type=int, default=2)
    t_bat.add_argument("--n-max", type=int, required=True)
    t_bat.add_argument("--points", type=int, default=20)
    t_bat.add_argument("--bits", type=int, default=128)
    t_bat.add_argument("--out")
    t_bat.add_argument("--sieve-limit", type=int)
    t_bat.set_defaults(func=_cmd_trend)
    t_cor = tsub.add_parser("cor2", help="r M(r) / ln r")
    t_cor.add_argument("--r-max", type=int, required=True)
    t_cor.add_argument("--points", type=int, default=20)
    t_cor.add_argument("--bits", type=int, default=128)
    t_cor.add_argument("--out")
    t_cor.set_defaults(func=_cmd_trend)

    # self-test
    st = sub.add_parser(
        "self-test",
        help="constants consistency plus the corrupted-constant FAIL check",
    )
    st.add_argument("--bits-start", type=int, default=128)
    st.add_argument("--bits-max", type=int, default=2048)
    st.set_defaults(func=_cmd_self_test)

    return p


def _cmd_compute(args) -> int:
    t = args.target
    if t == "lcm":
        print(lcm_progression(ProgressionSpec(args.a, args.b, args.n)))
    elif t == "m":
        if args.r <= args.exact_cap:
            print(m_function(args.r))
        else:
            print(m_function_interval(args.r, args.bits))
    elif t == "theta":
        sieve = _build_sized_sieve(args, args.x)
        print(theta_progression(sieve, args.x, args.k, args.l, args.bits))
    elif t == "phi":
        sieve = _build_sized_sieve(args, args.n)
        print(euler_phi(args.n, sieve))
    elif t == "valuation":
        print(padic_valuation(args.p, args.n))
    elif t == "pi":
        sieve = _build_sized_sieve(args, args.x)
        print(pi(sieve, args.x))
    return EXIT_OK


def _cmd_verify(args) -> int:
    key = args.statement.strip().lower().replace("-", "_")
    if key not in _VERIFY_PARAMS:
        raise UsageError(f"unknown statement '{args.statement}'")
    params = {}
    for name in _VERIFY_PARAMS[key]:
        value = getattr(args, name)
        if value is None:
            raise UsageError(f"statement '{args.statement}' needs --{name}")
        params[name] = value
    ids = (
        [StatementId.COR1_LOWER, StatementId.COR1_UPPER]
        if key == "cor1"
        else [StatementId[key.upper()]]
    )
    policy = PrecisionPolicy(start_bits=args.bits_start, max_bits=args.bits_max)
    need = max(sieve_requirement(sid, params) for sid in ids)
    sieve = _build_sized_sieve(args, need)
    records = [check_instance(sid, params, sieve, policy) for sid in ids]
    for record in records:
        print(record.line())
    return verdict_exit_code(worst_verdict(r.verdict for r in records))


def _campaign_config(args) -> CampaignConfig:
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise e
        try:
            config = CampaignConfig.from_json(text)
        except (ValueError, KeyError, TypeError, json.JSONDecodeError) as e:
            raise UsageError(f"bad config {args.config}: {e}") from None
    else:
        config = CampaignConfig()
    kwargs = config.to_dict()
    if args.statements:
        kwargs["statements"] = [s for s in args.statements.split(",") if s]
    if args.jobs:
        kwargs["jobs"] = args.jobs
    if args.sieve_limit:
        kwargs["sieve_limit"] = args.sieve_limit
    if args.bits_start:
        kwargs["start_bits"] = args.bits_start
    if args.bits_max:
        kwargs["max_bits"] = args.bits_max
    overrides = {
        "r_max": ("cor1",),
        "b_max": ("thm1", "thm2", "lemma6", "lemma7", "lemma8"),
        "n_max": ("eq_a", "farhi", "lemma8", "robin", "rosser_sum"),
        "x_max": ("hanson",),
        "k_max": ("cor3",),
    }
    grids = {k: dict(v) for k, v in kwargs["grids"].items()}
    selected = {normalize_statement(s) for s in kwargs["statements"]}
    for flag, targets in overrides.items():
        value = getattr(args, flag)
        if value is not None:
            for statement in targets:
                if statement in selected:
                    grids.setdefault(statement, {})[flag] = value
    kwargs["grids"] = grids
    try:
        return CampaignConfig.from_dict(kwargs)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _cmd_campaign(args) -> int:
    config = _campaign_config(args)
    try:
        result = run_campaign(config)
    except (ValueError, MemoryBudgetError) as e:
        raise UsageError(str(e)) from None
    doc = report_document(config, result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        s = result.summary
        print(
            f"wrote {args.out}: {s['total']} records, pass={s['pass']} "
            f"fail={s['fail']} inconclusive={s['inconclusive']} skipped={s['skipped']}"
        )
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            write_records_csv(result.records, fh)
    if not args.out and not args.csv:
        if args.format == "csv":
            write_records_csv(result.records, sys.stdout)
        else:
            json.dump(doc, sys.stdout, indent=2)
            sys.stdout.write("\n")
    if result.summary["fail"]:
        return EXIT_FAIL
    if result.summary["inconclusive"]:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _cmd_trend(args) -> int:
    if args.target == "bateman":
        points = spaced_points(args.n_max, args.points, min_value=1)
        sieve = _build_sized_sieve(args, args.a + args.n_max * args.b)
        report = bateman_trend(args.a, args.b, points, sieve, args.bits)
    else:
        points = spaced_points(args.r_max, args.points, min_value=2)
        report = corollary2_trend(points, args.bits)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_trend_csv(report, fh)
    else:
        write_trend_csv(report, sys.stdout)
    return EXIT_OK


def _cmd_self_test(args) -> int:
    policy = PrecisionPolicy(start_bits=args.bits_start, max_bits=args.bits_max)
    records = constants_consistency(policy)
    for record in records:
        print(record.line())
    consistent = all(r.verdict == "PASS" for r in records)
    sieve = build_sieve(32)
    control = negative_control(sieve, policy)
    fails = sum(1 for r in control if r.verdict == "FAIL")
    print(f"negative control (c1 corrupted to 1): {fails}/{len(control)} FAIL, expected >= 1")
    fired = fails >= 1
    if not fired:
        print("self-test FAILURE: the corrupted constant produced no FAIL verdict")
    return EXIT_OK if (consistent and fired) else EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(2_000_000)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help / --version
        return EXIT_OK if not e.code else EXIT_USAGE
    if args.verbose:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, SieveRangeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except MemoryBudgetError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return EXIT_IO


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
