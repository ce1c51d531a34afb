#!/usr/bin/env python3
"""Emit CSV trend data for the two asymptotic ratio studies.

Two kinds of trend are sampled:

* ``bateman`` — the ratio of ln L(a,b,n) to its predicted linear rate
  n*b*M(b), sampled at spaced values of n.  The ratio tends to 1.
* ``cor2`` — the ratio of r*M(r) to ln r, sampled at spaced values of r.
  The ratio tends to 1 as well, with visible oscillation driven by the
  factorization structure of r.

Each row carries the lower and upper endpoint of the rigorously enclosed
ratio, so downstream plotting needs no rounding assumptions.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from aplcm.campaign import (
    bateman_trend,
    corollary2_trend,
    spaced_points,
    write_trend_csv,
)
from aplcm.primes import build_sieve


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out-dir",
        type=Path,
        default=Path("results"),
        help="directory for the CSV files (default: results/)",
    )
    parser.add_argument("--a", type=int, default=1, help="first progression term")
    parser.add_argument("--b", type=int, default=2, help="common difference")
    parser.add_argument(
        "--n-max", type=int, default=5000, help="largest sampled n for bateman"
    )
    parser.add_argument(
        "--r-max", type=int, default=5000, help="largest sampled r for cor2"
    )
    parser.add_argument(
        "--points", type=int, default=40, help="sample count per trend"
    )
    parser.add_argument(
        "--bits", type=int, default=128, help="interval precision in bits"
    )
    return parser.parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    args = parse_args(argv)
    args.out_dir.mkdir(parents=True, exist_ok=True)

    ns = spaced_points(args.n_max, args.points, min_value=1)
    sieve = build_sieve(args.a + args.n_max * args.b)
    bateman = bateman_trend(args.a, args.b, ns, sieve, bits=args.bits)
    bateman_path = args.out_dir / f"bateman_a{args.a}_b{args.b}.csv"
    with bateman_path.open("w", encoding="utf-8") as fh:
        write_trend_csv(bateman, fh)
    last_n, last_ratio = bateman.rows[-1]
    print(f"wrote {bateman_path} ({len(bateman.rows)} rows, ratio({last_n}) = {last_ratio})")

    rs = spaced_points(args.r_max, args.points, min_value=2)
    cor2 = corollary2_trend(rs, bits=args.bits)
    cor2_path = args.out_dir / "cor2_ratio.csv"
    with cor2_path.open("w", encoding="utf-8") as fh:
        write_trend_csv(cor2, fh)
    last_r, last_ratio = cor2.rows[-1]
    print(f"wrote {cor2_path} ({len(cor2.rows)} rows, ratio({last_r}) = {last_ratio})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
