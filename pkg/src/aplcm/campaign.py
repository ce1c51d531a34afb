"""Grid campaigns over statements, report documents, and trend series.

A campaign is a declarative config: which statements, which grid ranges,
one sieve, one precision policy.  Point statements fan out into
independent instances evaluated either inline or on a fork pool; the
range statements and the theta campaign run their own vectorized
checkers.  Records are assembled in sorted (statement, params) order so
two runs of the same config serialize identically regardless of
parallelism.
"""

from __future__ import annotations

import csv
import json
import math
import os
import time
from dataclasses import dataclass, field
from multiprocessing import get_context
from typing import Iterable, Sequence, TextIO

from .core_arith import DomainError, PrecisionPolicy, is_prime
from .primes import (
    DEFAULT_SIEVE_LIMIT,
    PrimeSieve,
    build_sieve,
    theta_progression,
    theta_snapshots,
)
from .progression import ProgressionSpec, log_lcm_interval, m_function
from .bounds import StatementId, corollary3_bound
from .verify import (
    VerificationRecord,
    Verdict,
    check_hanson_range,
    check_instance,
    check_robin_range,
    check_rosser_pn_range,
    check_rosser_sum_range,
    check_series_range,
    decide_le,
    format_value,
    sieve_requirement,
)

SIEVE_LIMIT_ENV = "AP_LCM_SIEVE_LIMIT"

POINT_STATEMENTS = ("thm1", "thm2", "eq_a", "farhi", "lemma6", "lemma7", "lemma8", "cor1")
SPECIAL_STATEMENTS = ("cor3", "rosser_sum", "rosser_pn", "rosser_series", "hanson", "robin")
ALL_STATEMENTS = POINT_STATEMENTS + SPECIAL_STATEMENTS

# 0 means "as far as the sieve goes" (resolved once the sieve limit is known)
GRID_DEFAULTS: dict[str, dict] = {
    "thm1": {"b_min": 2, "b_max": 20, "a_mult": 3, "n_span": 30},
    "thm2": {"b_max": 31, "n_span": 50},
    "eq_a": {"ab_max": 12, "n_min": 0, "n_max": 40},
    "farhi": {"ab_max": 12, "n_min": 0, "n_max": 40},
    "lemma6": {"b_min": 2, "b_max": 15, "n_span": 40},
    "lemma7": {"b_min": 3, "b_max": 10_000},
    "lemma8": {"b_min": 2, "b_max": 100, "n_min": 2, "n_max": 200},
    "cor1": {"r_min": 2, "r_max": 2000},
    "cor3": {"k_max": 47, "xs": [10_000, 100_000, 1_000_000], "include_kk1": 1},
    "rosser_sum": {"n_min": 2, "n_max": 10**6},
    "rosser_pn": {"n_min": 6, "n_max": 0},
    "rosser_series": {"limit": 10**6},
    "hanson": {"x_min": 2, "x_max": 0},
    "robin": {"n_min": 3, "n_max": 10**6},
}


def default_sieve_limit() -> int:
    raw = os.environ.get(SIEVE_LIMIT_ENV)
    if raw is None:
        return DEFAULT_SIEVE_LIMIT
    limit = int(raw)
    if limit < 2:
        raise ValueError(f"{SIEVE_LIMIT_ENV} must be >= 2, got {limit}")
    return limit


def normalize_statement(name: str) -> str:
    key = name.strip().lower().replace("-", "_")
    if key not in ALL_STATEMENTS:
        raise ValueError(f"unknown statement '{name}'")
    return key


@dataclass(frozen=True)
class CampaignConfig:
    """Declarative campaign: statements, grid overrides, sieve, precision."""

    statements: tuple = tuple(ALL_STATEMENTS)
    grids: dict = field(default_factory=dict)
    sieve_limit: int | None = None
    start_bits: int = 128
    max_bits: int = 2048
    jobs: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "statements", tuple(self.statements))
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")

    def policy(self) -> PrecisionPolicy:
        return PrecisionPolicy(start_bits=self.start_bits, max_bits=self.max_bits)

    def to_dict(self) -> dict:
        return {
            "statements": list(self.statements),
            "grids": {k: dict(v) for k, v in self.grids.items()},
            "sieve_limit": self.sieve_limit,
            "start_bits": self.start_bits,
            "max_bits": self.max_bits,
            "jobs": self.jobs,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CampaignConfig":
        known = {"statements", "grids", "sieve_limit", "start_bits", "max_bits", "jobs"}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kwargs = dict(d)
        if "statements" in kwargs:
            kwargs["statements"] = tuple(normalize_statement(s) for s in kwargs["statements"])
        if "grids" in kwargs:
            kwargs["grids"] = {normalize_statement(k): dict(v) for k, v in kwargs["grids"].items()}
        return cls(**kwargs)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "CampaignConfig":
        return cls.from_dict(json.loads(text))


def effective_grid(config: CampaignConfig, statement: str) -> dict:
    return {**GRID_DEFAULTS[statement], **config.grids.get(statement, {})}


# -- grid generators ----------------------------------------------------------


def _jobs_thm1(g) -> list:
    out = []
    for b in range(max(2, g["b_min"]), g["b_max"] + 1):
        for a in range(1, g["a_mult"] * b + 1):
            if math.gcd(a, b) == 1:
                for n in range(b + 1, b + g["n_span"] + 1):
                    out.append((StatementId.THM1.value, {"a": a, "b": b, "n": n}))
    return out


def _jobs_thm2(g) -> list:
    out = []
    for b in range(2, g["b_max"] + 1):
        if not is_prime(b):
            continue
        for a in range(1, b):
            for n in range(b + 1, b + g["n_span"] + 1):
                out.append((StatementId.THM2.value, {"a": a, "b": b, "n": n}))
    return out


def _jobs_pair_grid(sid: str, g) -> list:
    out = []
    for a in range(1, g["ab_max"] + 1):
        for b in range(1, g["ab_max"] + 1):
            if math.gcd(a, b) == 1:
                for n in range(g["n_min"], g["n_max"] + 1):
                    out.append((sid, {"a": a, "b": b, "n": n}))
    return out


def _jobs_lemma6(g) -> list:
    out = []
    for b in range(max(2, g["b_min"]), g["b_max"] + 1):
        for a in range(1, b):
            if math.gcd(a, b) == 1:
                for n in range(b + 1, b + g["n_span"] + 1):
                    out.append((StatementId.LEMMA6.value, {"a": a, "b": b, "n": n}))
    return out


def _jobs_lemma7(g) -> list:
    return [(StatementId.LEMMA7.value, {"b": b}) for b in range(max(3, g["b_min"]), g["b_max"] + 1)]


def _jobs_lemma8(g) -> list:
    return [
        (StatementId.LEMMA8.value, {"b": b, "n": n})
        for b in range(max(2, g["b_min"]), g["b_max"] + 1)
        for n in range(max(2, g["n_min"]), g["n_max"] + 1)
    ]


def _jobs_cor1(g) -> list:
    out = []
    for r in range(max(2, g["r_min"]), g["r_max"] + 1):
        out.append((StatementId.COR1_LOWER.value, {"r": r}))
        out.append((StatementId.COR1_UPPER.value, {"r": r}))
    return out


def build_point_jobs(config: CampaignConfig, statement: str) -> list:
    g = effective_grid(config, statement)
    if statement == "thm1":
        return _jobs_thm1(g)
    if statement == "thm2":
        return _jobs_thm2(g)
    if statement == "eq_a":
        return _jobs_pair_grid(StatementId.EQ_A.value, g)
    if statement == "farhi":
        return _jobs_pair_grid(StatementId.FARHI.value, g)
    if statement == "lemma6":
        return _jobs_lemma6(g)
    if statement == "lemma7":
        return _jobs_lemma7(g)
    if statement == "lemma8":
        return _jobs_lemma8(g)
    if statement == "cor1":
        return _jobs_cor1(g)
    raise ValueError(f"'{statement}' is not a point statement")


def _cor3_xs(g, k: int) -> list[int]:
    xs = set(int(x) for x in g["xs"])
    if g.get("include_kk1", 1):
        xs.add(k * (k + 1))
    return sorted(xs)


def _cor3_ks(g) -> list[int]:
    return [k for k in range(2, g["k_max"] + 1) if is_prime(k)]


def _special_sieve_need(statement: str, g, cap: int | None = None) -> int:
    # `cap` is an explicitly configured sieve limit; "scan the whole sieve"
    # sentinels (0) then mean that limit rather than the package default
    open_ended = cap if cap else default_sieve_limit()
    if statement == "cor3":
        need = 2
        for k in _cor3_ks(g):
            need = max(need, max(_cor3_xs(g, k), default=2))
        return need
    if statement == "rosser_sum":
        return g["n_max"]
    if statement == "rosser_pn":
        n_max = g["n_max"]
        if n_max == 0:
            return open_ended
        return int(n_max * (math.log(n_max) + math.log(math.log(n_max)))) + 16
    if statement == "rosser_series":
        return g["limit"]
    if statement == "hanson":
        return g["x_max"] if g["x_max"] else open_ended
    if statement == "robin":
        return g["n_max"]
    raise ValueError(f"'{statement}' is not a special statement")


def _run_cor3(g, sieve: PrimeSieve, policy: PrecisionPolicy) -> list[VerificationRecord]:
    """All (k, l, x) instances, one ascending prime pass per modulus k."""
    records = []
    for k in _cor3_ks(g):
        xs = _cor3_xs(g, k)
        snaps = theta_snapshots(sieve, k, xs, policy.start_bits)
        for l in range(1, k):
            for x in xs:
                t0 = time.perf_counter()
                if x < k * (k + 1):
                    records.append(VerificationRecord(
                        statement=StatementId.COR3.value,
                        params={"x": x, "k": k, "l": l},
                        lhs="", rhs="", verdict=Verdict.SKIPPED.value,
                        bits=0, elapsed_ms=0.0,
                        note=f"hypothesis x >= k(k+1) = {k * (k + 1)} not met",
                    ))
                    continue
                lhs0 = snaps[(l % k, x)]

                def lhs_fn(bits, lhs0=lhs0, x=x, k=k, l=l):
                    if bits == lhs0.bits:
                        return lhs0
                    return theta_progression(sieve, x, k, l, bits)

                verdict, lhs, rhs, bits = decide_le(
                    lhs_fn,
                    lambda bits, x=x, k=k: corollary3_bound(x, k, bits),
                    policy,
                )
                records.append(VerificationRecord(
                    statement=StatementId.COR3.value,
                    params={"x": x, "k": k, "l": l},
                    lhs=format_value(lhs),
                    rhs=format_value(rhs),
                    verdict=verdict.value,
                    bits=bits,
                    elapsed_ms=(time.perf_counter() - t0) * 1000.0,
                ))
    return records


def _run_special(statement: str, g, sieve: PrimeSieve, policy: PrecisionPolicy) -> list[VerificationRecord]:
    if statement == "cor3":
        return _run_cor3(g, sieve, policy)
    if statement == "rosser_sum":
        return [check_rosser_sum_range(sieve, policy, g["n_min"], g["n_max"])]
    if statement == "rosser_pn":
        n_max = g["n_max"] or None
        return [check_rosser_pn_range(sieve, policy, g["n_min"], n_max)]
    if statement == "rosser_series":
        return [check_series_range(sieve, policy, g["limit"])]
    if statement == "hanson":
        x_max = g["x_max"] or sieve.limit
        return [check_hanson_range(sieve, policy, g["x_min"], x_max)]
    if statement == "robin":
        return [check_robin_range(sieve, policy, g["n_min"], g["n_max"])]
    raise ValueError(f"'{statement}' is not a special statement")


# -- parallel execution -------------------------------------------------------

_WORKER_STATE: dict = {}


def _init_worker(sieve: PrimeSieve, policy: PrecisionPolicy) -> None:
    _WORKER_STATE["sieve"] = sieve
    _WORKER_STATE["policy"] = policy


def _run_point_job(job) -> VerificationRecord:
    sid, params = job
    try:
        return check_instance(sid, params, _WORKER_STATE["sieve"], _WORKER_STATE["policy"])
    except MemoryError:
        return VerificationRecord(
            statement=sid, params=dict(params), lhs="", rhs="",
            verdict=Verdict.INCONCLUSIVE.value, bits=0, elapsed_ms=0.0,
            note="resource exhaustion",
        )


def record_sort_key(record: VerificationRecord):
    return (record.statement, tuple(sorted(record.params.items())))


def summarize(records: Sequence[VerificationRecord]) -> dict:
    counts = {"pass": 0, "fail": 0, "inconclusive": 0, "skipped": 0}
    for r in records:
        counts[r.verdict.lower()] += 1
    counts["total"] = len(records)
    return counts


@dataclass
class CampaignResult:
    records: list
    summary: dict
    elapsed_ms: float
    sieve_limit: int


def run_campaign(config: CampaignConfig) -> CampaignResult:
    """Run all selected statements; deterministic records, per-verdict summary."""
    t0 = time.perf_counter()
    selected = [normalize_statement(s) for s in config.statements]
    policy = config.policy()

    point_jobs: list = []
    for s in selected:
        if s in POINT_STATEMENTS:
            point_jobs.extend(build_point_jobs(config, s))

    need = 2
    for sid, params in point_jobs:
        need = max(need, sieve_requirement(sid, params))
    for s in selected:
        if s in SPECIAL_STATEMENTS:
            need = max(need, _special_sieve_need(s, effective_grid(config, s), config.sieve_limit))
    limit = config.sieve_limit if config.sieve_limit else need
    if limit < need:
        raise ValueError(f"sieve_limit {limit} below the grid's requirement {need}")
    sieve = build_sieve(limit)

    records: list[VerificationRecord] = []
    if point_jobs:
        if config.jobs > 1:
            ctx = get_context("fork")
            chunk = max(1, len(point_jobs) // (config.jobs * 8))
            with ctx.Pool(config.jobs, initializer=_init_worker, initargs=(sieve, policy)) as pool:
                records.extend(pool.map(_run_point_job, point_jobs, chunksize=chunk))
        else:
            _init_worker(sieve, policy)
            records.extend(_run_point_job(job) for job in point_jobs)
    for s in selected:
        if s in SPECIAL_STATEMENTS:
            records.extend(_run_special(s, effective_grid(config, s), sieve, policy))

    records.sort(key=record_sort_key)
    return CampaignResult(
        records=records,
        summary=summarize(records),
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
        sieve_limit=limit,
    )


def report_document(config: CampaignConfig, result: CampaignResult) -> dict:
    from . import __version__

    return {
        "schema": 1,
        "tool": "aplcm",
        "version": __version__,
        "config": config.to_dict(),
        "sieve_limit": result.sieve_limit,
        "summary": result.summary,
        "elapsed_ms": round(result.elapsed_ms, 3),
        "records": [r.to_dict() for r in result.records],
    }


CSV_HEADER = ("statement", "params", "lhs", "rhs", "verdict", "bits", "ms")


def write_records_csv(records: Iterable[VerificationRecord], stream: TextIO) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        params = ";".join(f"{k}={v}" for k, v in r.params.items())
        w.writerow([r.statement, params, r.lhs, r.rhs, r.verdict, r.bits, round(r.elapsed_ms, 3)])


# -- trend reports ------------------------------------------------------------


@dataclass(frozen=True)
class TrendReport:
    """Sampled ratio intervals for an asymptotic statement."""

    kind: str
    var: str
    rows: tuple  # ((n, Interval), ...) with n strictly increasing


def spaced_points(max_value: int, count: int, min_value: int = 1) -> list[int]:
    """count strictly increasing integers ending at max_value."""
    if count < 1:
        raise ValueError("need at least one point")
    if max_value - min_value < count:
        raise ValueError(f"cannot fit {count} points in [{min_value}, {max_value}]")
    span = max_value - min_value
    return [min_value + (i * span) // count for i in range(1, count + 1)]


def bateman_trend(
    a: int, b: int, points: Sequence[int], sieve: PrimeSieve, bits: int = 128
) -> TrendReport:
    """Ratio of ln L(a,b,n) to n*b*M(b) at each sampled n.

    The expected limit of the ratio is 1; ln L comes from the
    factorization path so n in the thousands stays cheap.
    """
    if list(points) != sorted(set(points)) or (points and points[0] < 1):
        raise ValueError("points must be strictly increasing and >= 1")
    bm = b * m_function(b)
    if bm <= 0:
        raise DomainError("b*M(b) must be positive")
    rows = []
    for n in points:
        ratio = log_lcm_interval(ProgressionSpec(a, b, n), sieve, bits).div(n * bm)
        rows.append((n, ratio))
    return TrendReport(kind="bateman", var="n", rows=tuple(rows))


def corollary2_trend(points: Sequence[int], bits: int = 128) -> TrendReport:
    """Ratio of r*M(r) to ln r at each sampled r; expected limit 1."""
    if list(points) != sorted(set(points)) or (points and points[0] < 2):
        raise ValueError("points must be strictly increasing and >= 2")
    from .core_arith import Interval, log_interval

    rows = []
    for r in points:
        ratio = Interval.from_rational(r * m_function(r), bits).div(log_interval(r, bits))
        rows.append((r, ratio))
    return TrendReport(kind="cor2", var="r", rows=tuple(rows))


def write_trend_csv(report: TrendReport, stream: TextIO) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow([report.var, "ratio_lo", "ratio_hi"])
    for n, ratio in report.rows:
        w.writerow([n, str(ratio.lo), str(ratio.hi)])
