#!/usr/bin/env python3
"""Run the full verification campaign and write a JSON report plus a CSV table.

Every statement is checked on its default parameter grid with directed-rounding
interval arithmetic; the per-statement verdict counts are printed as a summary
table at the end.  Exit status is 0 when nothing failed, 1 when at least one
instance FAILed, and 2 when some comparison stayed INCONCLUSIVE at the
precision cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from pathlib import Path

from aplcm.campaign import (
    ALL_STATEMENTS,
    CampaignConfig,
    normalize_statement,
    report_document,
    run_campaign,
    write_records_csv,
)


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out-dir",
        type=Path,
        default=Path("results"),
        help="directory for report.json and records.csv (default: results/)",
    )
    parser.add_argument(
        "--jobs", type=int, default=1, help="worker processes for grid statements"
    )
    parser.add_argument(
        "--statements",
        nargs="*",
        default=list(ALL_STATEMENTS),
        help="statement keys to run (default: all)",
    )
    parser.add_argument(
        "--bits-start", type=int, default=128, help="starting interval precision"
    )
    parser.add_argument(
        "--bits-max", type=int, default=2048, help="precision cap before INCONCLUSIVE"
    )
    parser.add_argument(
        "--sieve-limit",
        type=int,
        default=None,
        help="prime sieve size override (default: sized from the grids)",
    )
    return parser.parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    args = parse_args(argv)
    statements = tuple(normalize_statement(s) for s in args.statements)
    config = CampaignConfig(
        statements=statements,
        sieve_limit=args.sieve_limit,
        start_bits=args.bits_start,
        max_bits=args.bits_max,
        jobs=args.jobs,
    )

    t0 = time.perf_counter()
    result = run_campaign(config)
    elapsed = time.perf_counter() - t0

    args.out_dir.mkdir(parents=True, exist_ok=True)
    report_path = args.out_dir / "report.json"
    csv_path = args.out_dir / "records.csv"
    with report_path.open("w", encoding="utf-8") as fh:
        json.dump(report_document(config, result), fh, indent=2)
        fh.write("\n")
    with csv_path.open("w", encoding="utf-8") as fh:
        write_records_csv(result.records, fh)

    per_statement: dict[str, Counter] = {}
    for record in result.records:
        per_statement.setdefault(record.statement, Counter())[record.verdict] += 1

    width = max(len(s) for s in per_statement) if per_statement else 9
    print(f"{'statement':<{width}}  {'PASS':>7} {'FAIL':>6} {'SKIP':>6} {'INCONCL':>8}")
    for statement in sorted(per_statement):
        counts = per_statement[statement]
        print(
            f"{statement:<{width}}  {counts['PASS']:>7} {counts['FAIL']:>6}"
            f" {counts['SKIPPED']:>6} {counts['INCONCLUSIVE']:>8}"
        )
    print(
        f"total records: {len(result.records)}  summary: {result.summary}"
        f"  sieve_limit: {result.sieve_limit}  wall: {elapsed:.1f}s"
    )
    print(f"wrote {report_path} and {csv_path}")

    if result.summary.get("fail", 0):
        return 1
    if result.summary.get("inconclusive", 0):
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
