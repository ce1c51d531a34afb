"""Statement checking: verdicts, the comparison engine, and range checks.

A verdict is decided, never guessed.  Exact sides (ints, rationals)
compare directly; interval sides compare by endpoints (lhs.hi <= rhs.lo
proves lhs <= rhs, lhs.lo > rhs.hi refutes it) and anything in between
escalates precision along the policy ladder until decided or capped at
INCONCLUSIVE.  Unmet statement hypotheses give SKIPPED: a theorem makes
no claim outside its stated range.

The cited-result checks over ranges up to 1e7 points do not evaluate
every point.  Each left side is a step function and each right side is
nondecreasing on the scanned range, so one comparison per block (max of
lhs against rhs at the left edge) soundly covers the whole block;
blocks grow and shrink adaptively and collapse to rigorously decided
singletons near tight spots.
"""

from __future__ import annotations

import enum
import logging
import math
import time
from dataclasses import dataclass
from typing import Callable, Sequence, Union

from gmpy2 import mpfr, mpq

from .core_arith import (
    DEFAULT_POLICY,
    Interval,
    PrecisionPolicy,
    _ctxs,
    exp_interval,
    log_interval,
)
from .primes import (
    PrimeSieve,
    c7_series_partial,
    factorize,
    ln_pair,
    nth_prime,
    omega_table,
    pi,
    rosser_log_sum,
    theta_progression,
)
from .progression import (
    ProgressionSpec,
    factorize_L,
    lcm_progression,
    log_of_factorization,
    m_function,
    reduce_a_greater_b,
)
from .bounds import (
    CONSTANTS,
    SERIES_VALUE,
    PreconditionNotMet,
    StatementId,
    corollary1_interval,
    corollary3_bound,
    farhi_lower,
    lemma6_rhs_exact,
    lemma7_sides,
    lemma8_sides,
    reference_bounds,
    theorem1_log_bound,
    theorem2_log_bound,
)

log = logging.getLogger(__name__)

Exactish = Union[int, mpq]
Side = Union[Exactish, Interval]


class Verdict(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"
    SKIPPED = "SKIPPED"


_EXIT_CODES = {Verdict.PASS: 0, Verdict.SKIPPED: 0, Verdict.FAIL: 1, Verdict.INCONCLUSIVE: 2}


def verdict_exit_code(verdict: Union[Verdict, str]) -> int:
    return _EXIT_CODES[Verdict(verdict)]


def worst_verdict(verdicts) -> Verdict:
    vs = {Verdict(v) for v in verdicts}
    if Verdict.FAIL in vs:
        return Verdict.FAIL
    if Verdict.INCONCLUSIVE in vs:
        return Verdict.INCONCLUSIVE
    if Verdict.PASS in vs:
        return Verdict.PASS
    return Verdict.SKIPPED


def format_value(value: Side) -> str:
    if isinstance(value, Interval):
        return str(value)
    return str(value)


@dataclass
class VerificationRecord:
    """One checked statement instance with its evidence."""

    statement: str
    params: dict
    lhs: str
    rhs: str
    verdict: str
    bits: int
    elapsed_ms: float
    note: str = ""

    def canonical(self) -> dict:
        """Serialization-stable view: everything except wall-clock time."""
        return {
            "statement": self.statement,
            "params": dict(self.params),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "verdict": self.verdict,
            "bits": self.bits,
            "note": self.note,
        }

    def to_dict(self) -> dict:
        d = self.canonical()
        d["ms"] = round(self.elapsed_ms, 3)
        return d

    def line(self) -> str:
        ps = " ".join(f"{k}={v}" for k, v in self.params.items())
        head = f"{self.statement} {ps}" if ps else self.statement
        out = f"{head}: {self.verdict}"
        if self.lhs or self.rhs:
            out += f"  lhs={self.lhs}  rhs={self.rhs}  bits={self.bits}"
        if self.note:
            out += f"  ({self.note})"
        return out


def _exact(v: Side) -> bool:
    return not isinstance(v, Interval)


def decide_le(
    lhs_fn: Callable[[int], Side],
    rhs_fn: Callable[[int], Side],
    policy: PrecisionPolicy,
) -> tuple[Verdict, Side, Side, int]:
    """Decide lhs <= rhs rigorously, escalating precision as needed.

    Returns (verdict, lhs, rhs, bits_used); bits_used is 0 when both
    sides were exact and no rounding was involved.
    """
    lhs = rhs = None
    bits = 0
    for bits in policy.ladder():
        lhs = lhs_fn(bits)
        rhs = rhs_fn(bits)
        if _exact(lhs) and _exact(rhs):
            return (Verdict.PASS if lhs <= rhs else Verdict.FAIL), lhs, rhs, 0
        if _exact(lhs):
            if lhs <= rhs.lo:
                return Verdict.PASS, lhs, rhs, bits
            if lhs > rhs.hi:
                return Verdict.FAIL, lhs, rhs, bits
        elif _exact(rhs):
            if lhs.hi <= rhs:
                return Verdict.PASS, lhs, rhs, bits
            if lhs.lo > rhs:
                return Verdict.FAIL, lhs, rhs, bits
        else:
            if lhs.hi <= rhs.lo:
                return Verdict.PASS, lhs, rhs, bits
            if lhs.lo > rhs.hi:
                return Verdict.FAIL, lhs, rhs, bits
    return Verdict.INCONCLUSIVE, lhs, rhs, bits


def _finish(
    sid: str,
    params: dict,
    verdict: Verdict,
    lhs: Side,
    rhs: Side,
    bits: int,
    t0: float,
    note: str = "",
) -> VerificationRecord:
    return VerificationRecord(
        statement=sid,
        params=dict(params),
        lhs="" if lhs is None else format_value(lhs),
        rhs="" if rhs is None else format_value(rhs),
        verdict=verdict.value,
        bits=bits,
        elapsed_ms=(time.perf_counter() - t0) * 1000.0,
        note=note,
    )


def _skip(sid: str, params: dict, reason: str, t0: float) -> VerificationRecord:
    return _finish(sid, params, Verdict.SKIPPED, None, None, 0, t0, note=reason)


def _decide_and_finish(sid, params, lhs_fn, rhs_fn, policy, t0, note=""):
    verdict, lhs, rhs, bits = decide_le(lhs_fn, rhs_fn, policy)
    return _finish(sid, params, verdict, lhs, rhs, bits, t0, note)


def _need_positive(params: dict, keys: Sequence[str]) -> tuple[int, ...]:
    vals = []
    for k in keys:
        if k not in params:
            raise ValueError(f"missing parameter '{k}'")
        v = int(params[k])
        if v < 0:
            raise ValueError(f"parameter '{k}' must be >= 0, got {v}")
        vals.append(v)
    return tuple(vals)


# -- per-statement checkers --------------------------------------------------


def _check_thm1(params, sieve, policy, c1=None, sid=StatementId.THM1.value):
    t0 = time.perf_counter()
    a, b, n = _need_positive(params, ("a", "b", "n"))
    p = {"a": a, "b": b, "n": n}
    if b < 2:
        return _skip(sid, p, "hypothesis b >= 2 not met", t0)
    if math.gcd(a, b) != 1 or a < 1:
        return _skip(sid, p, "hypothesis gcd(a,b)=1 not met", t0)
    if n < b + 1:
        return _skip(sid, p, f"hypothesis n >= b+1 = {b + 1} not met", t0)
    spec = ProgressionSpec(a, b, n)
    if a > b:
        red = reduce_a_greater_b(spec)
        log.info(
            "a > b reduction available: L(%d,%d,%d) divides L(%d,%d,%d); "
            "verifying the stated exponent n + floor(a/b) = %d directly",
            a, b, n, red.a, red.b, red.n, n + a // b,
        )
    pairs = factorize_L(spec, sieve).pairs()
    return _decide_and_finish(
        sid, p,
        lambda bits: log_of_factorization(pairs, bits),
        lambda bits: theorem1_log_bound(a, b, n, bits, c1),
        policy, t0, note="log-domain comparison",
    )


def _check_thm2(params, sieve, policy):
    t0 = time.perf_counter()
    a, b, n = _need_positive(params, ("a", "b", "n"))
    p = {"a": a, "b": b, "n": n}
    from .core_arith import is_prime

    if not is_prime(b):
        return _skip(StatementId.THM2.value, p, "hypothesis b prime not met", t0)
    if not (1 <= a < b):
        return _skip(StatementId.THM2.value, p, "hypothesis 1 <= a < b not met", t0)
    if n < b + 1:
        return _skip(StatementId.THM2.value, p, f"hypothesis n >= b+1 = {b + 1} not met", t0)
    pairs = factorize_L(ProgressionSpec(a, b, n), sieve).pairs()
    return _decide_and_finish(
        StatementId.THM2.value, p,
        lambda bits: log_of_factorization(pairs, bits),
        lambda bits: theorem2_log_bound(b, n, bits),
        policy, t0, note="log-domain comparison",
    )


def check_lemma5_divisibility(spec: ProgressionSpec, sieve: PrimeSieve) -> VerificationRecord:
    """Exact divisibility of the large-prime part of L into the quotient B.

    B = [a(a+b)...(a+nb) * prod over p <= n, p | b of p^(v_p(n!))] divided
    by [n! * prod over p <= n not dividing b of p^(v_p(n+1))].  PASS iff
    B is an integer and the large-prime part divides it; no rounding.
    """
    t0 = time.perf_counter()
    a, b, n = spec.a, spec.b, spec.n
    p = {"a": a, "b": b, "n": n}
    from .core_arith import legendre_valuation, padic_valuation

    big = factorize_L(spec, sieve).large.value()
    num = math.prod(spec.terms())
    den = math.factorial(n)
    for q in sieve.prime_ints():
        if q > n:
            break
        if b % q == 0:
            num *= q ** legendre_valuation(q, n)
        else:
            den *= q ** padic_valuation(q, n + 1)
    quotient = mpq(num, den)
    ok = quotient.denominator == 1 and quotient.numerator % big == 0
    return _finish(
        StatementId.EQ_A.value, p,
        Verdict.PASS if ok else Verdict.FAIL,
        big, quotient, 0, t0, note="exact divisibility",
    )


def _check_eq_a(params, sieve, policy):
    t0 = time.perf_counter()
    a, b, n = _need_positive(params, ("a", "b", "n"))
    p = {"a": a, "b": b, "n": n}
    if a < 1 or b < 1 or math.gcd(a, b) != 1:
        return _skip(StatementId.EQ_A.value, p, "hypothesis gcd(a,b)=1 not met", t0)
    return check_lemma5_divisibility(ProgressionSpec(a, b, n), sieve)


def _check_farhi(params, sieve, policy):
    t0 = time.perf_counter()
    a, b, n = _need_positive(params, ("a", "b", "n"))
    p = {"a": a, "b": b, "n": n}
    if a < 1 or b < 1 or math.gcd(a, b) != 1:
        return _skip(StatementId.FARHI.value, p, "hypothesis gcd(a,b)=1 not met", t0)
    if n < 1:
        return _skip(StatementId.FARHI.value, p, "lower bound evaluated for n >= 1 only", t0)
    bound = farhi_lower(a, b, n)
    value = lcm_progression(ProgressionSpec(a, b, n))
    return _decide_and_finish(
        StatementId.FARHI.value, p,
        lambda bits: bound, lambda bits: value,
        policy, t0, note="exact comparison",
    )


def _check_lemma6(params, sieve, policy):
    t0 = time.perf_counter()
    a, b, n = _need_positive(params, ("a", "b", "n"))
    p = {"a": a, "b": b, "n": n}
    if not (1 <= a < b) or math.gcd(a, b) != 1:
        return _skip(StatementId.LEMMA6.value, p, "hypothesis a < b, gcd(a,b)=1 not met", t0)
    if n < b + 1:
        return _skip(StatementId.LEMMA6.value, p, f"hypothesis n >= b+1 = {b + 1} not met", t0)
    small = factorize_L(ProgressionSpec(a, b, n), sieve).small.value()
    rhs = lemma6_rhs_exact(a, b, n, sieve)
    return _decide_and_finish(
        StatementId.LEMMA6.value, p,
        lambda bits: small, lambda bits: rhs,
        policy, t0, note="exact comparison",
    )


def _check_lemma7(params, sieve, policy):
    t0 = time.perf_counter()
    (b,) = _need_positive(params, ("b",))
    p = {"b": b}
    if b < 3:
        return _skip(StatementId.LEMMA7.value, p, "hypothesis b >= 3 not met", t0)
    return _decide_and_finish(
        StatementId.LEMMA7.value, p,
        lambda bits: lemma7_sides(b, sieve, bits)[0],
        lambda bits: lemma7_sides(b, sieve, bits)[1],
        policy, t0,
    )


def _check_lemma8(params, sieve, policy):
    t0 = time.perf_counter()
    b, n = _need_positive(params, ("b", "n"))
    p = {"b": b, "n": n}
    if b < 2 or n < 2:
        return _skip(StatementId.LEMMA8.value, p, "hypothesis b >= 2, n >= 2 not met", t0)
    lhs = lemma8_sides(b, n, sieve, policy.start_bits)[0]
    return _decide_and_finish(
        StatementId.LEMMA8.value, p,
        lambda bits: lhs,
        lambda bits: lemma8_sides(b, n, sieve, bits)[1],
        policy, t0,
    )


def _check_cor1_lower(params, sieve, policy):
    t0 = time.perf_counter()
    (r,) = _need_positive(params, ("r",))
    p = {"r": r}
    if r < 2:
        return _skip(StatementId.COR1_LOWER.value, p, "hypothesis r >= 2 not met", t0)
    rm = r * m_function(r)
    return _decide_and_finish(
        StatementId.COR1_LOWER.value, p,
        lambda bits: corollary1_interval(r, bits)[0],
        lambda bits: rm,
        policy, t0, note="ln(r+1) <= r*M(r)",
    )


def _check_cor1_upper(params, sieve, policy):
    t0 = time.perf_counter()
    (r,) = _need_positive(params, ("r",))
    p = {"r": r}
    if r < 2:
        return _skip(StatementId.COR1_UPPER.value, p, "hypothesis r >= 2 not met", t0)
    rm = r * m_function(r)
    return _decide_and_finish(
        StatementId.COR1_UPPER.value, p,
        lambda bits: rm,
        lambda bits: corollary1_interval(r, bits)[1],
        policy, t0, note="r*M(r) <= ln r + ln ln r + ln c1",
    )


def _check_cor3(params, sieve, policy):
    t0 = time.perf_counter()
    x, k, l = _need_positive(params, ("x", "k", "l"))
    p = {"x": x, "k": k, "l": l}
    from .core_arith import is_prime

    if not is_prime(k):
        return _skip(StatementId.COR3.value, p, "hypothesis k prime not met", t0)
    if not (1 <= l < k):
        return _skip(StatementId.COR3.value, p, "hypothesis 1 <= l < k not met", t0)
    if x < k * (k + 1):
        return _skip(StatementId.COR3.value, p, f"hypothesis x >= k(k+1) = {k * (k + 1)} not met", t0)
    return _decide_and_finish(
        StatementId.COR3.value, p,
        lambda bits: theta_progression(sieve, x, k, l, bits),
        lambda bits: corollary3_bound(x, k, bits),
        policy, t0,
    )


def _check_rosser_sum(params, sieve, policy):
    t0 = time.perf_counter()
    (n,) = _need_positive(params, ("n",))
    p = {"n": n}
    if n < 2:
        return _skip(StatementId.ROSSER_SUM.value, p, "hypothesis n >= 2 not met", t0)
    return _decide_and_finish(
        StatementId.ROSSER_SUM.value, p,
        lambda bits: rosser_log_sum(sieve, n, bits),
        lambda bits: log_interval(n, bits),
        policy, t0,
    )


def _check_rosser_pn(params, sieve, policy):
    t0 = time.perf_counter()
    (n,) = _need_positive(params, ("n",))
    p = {"n": n}
    if n < 6:
        return _skip(StatementId.ROSSER_PN.value, p, "bound cited for n >= 6 only", t0)
    value = nth_prime(sieve, n)
    return _decide_and_finish(
        StatementId.ROSSER_PN.value, p,
        lambda bits: value,
        lambda bits: reference_bounds(StatementId.ROSSER_PN, n, bits),
        policy, t0,
    )


def _check_rosser_series(params, sieve, policy):
    t0 = time.perf_counter()
    (limit,) = _need_positive(params, ("limit",))
    p = {"limit": limit}
    if limit < 2:
        return _skip(StatementId.ROSSER_SERIES.value, p, "hypothesis limit >= 2 not met", t0)
    return _decide_and_finish(
        StatementId.ROSSER_SERIES.value, p,
        lambda bits: c7_series_partial(sieve, limit, bits),
        lambda bits: log_interval(CONSTANTS.c7, bits),
        policy, t0, note="partial sum < ln c7",
    )


def _check_hanson(params, sieve, policy):
    t0 = time.perf_counter()
    (x,) = _need_positive(params, ("x",))
    p = {"x": x}
    if x < 2:
        return _skip(StatementId.HANSON.value, p, "hypothesis x > 1 not met", t0)
    value = pi(sieve, x)
    return _decide_and_finish(
        StatementId.HANSON.value, p,
        lambda bits: value,
        lambda bits: reference_bounds(StatementId.HANSON, x, bits),
        policy, t0,
    )


def _check_robin(params, sieve, policy):
    t0 = time.perf_counter()
    (n,) = _need_positive(params, ("n",))
    p = {"n": n}
    if n < 3:
        return _skip(StatementId.ROBIN.value, p, "hypothesis n >= 3 not met", t0)
    value = factorize(sieve, n).omega
    return _decide_and_finish(
        StatementId.ROBIN.value, p,
        lambda bits: value,
        lambda bits: reference_bounds(StatementId.ROBIN, n, bits),
        policy, t0,
    )


_CHECKERS = {
    StatementId.THM1: _check_thm1,
    StatementId.THM2: _check_thm2,
    StatementId.EQ_A: _check_eq_a,
    StatementId.FARHI: _check_farhi,
    StatementId.LEMMA6: _check_lemma6,
    StatementId.LEMMA7: _check_lemma7,
    StatementId.LEMMA8: _check_lemma8,
    StatementId.COR1_LOWER: _check_cor1_lower,
    StatementId.COR1_UPPER: _check_cor1_upper,
    StatementId.COR3: _check_cor3,
    StatementId.ROSSER_SUM: _check_rosser_sum,
    StatementId.ROSSER_PN: _check_rosser_pn,
    StatementId.ROSSER_SERIES: _check_rosser_series,
    StatementId.HANSON: _check_hanson,
    StatementId.ROBIN: _check_robin,
}


def resolve_statement(name: Union[str, StatementId]) -> StatementId:
    if isinstance(name, StatementId):
        return name
    key = name.strip().replace("-", "_").upper()
    try:
        return StatementId[key]
    except KeyError:
        raise ValueError(f"unknown statement '{name}'") from None


def check_instance(
    statement: Union[str, StatementId],
    params: dict,
    sieve: PrimeSieve,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> VerificationRecord:
    """Check one statement instance and return its record."""
    sid = resolve_statement(statement)
    return _CHECKERS[sid](params, sieve, policy)


def sieve_requirement(statement: Union[str, StatementId], params: dict) -> int:
    """Smallest sieve limit that lets this instance be checked."""
    sid = resolve_statement(statement)
    g = lambda k: int(params.get(k, 0))
    if sid in (StatementId.THM1, StatementId.THM2, StatementId.LEMMA6, StatementId.EQ_A):
        return max(2, g("a") + g("n") * g("b"))
    if sid in (StatementId.LEMMA7, StatementId.LEMMA8):
        return max(2, g("b"))
    if sid is StatementId.COR3:
        return max(2, g("x"))
    if sid is StatementId.ROSSER_SUM:
        return max(2, g("n"))
    if sid is StatementId.ROSSER_PN:
        n = g("n")
        if n < 6:
            return 2
        return int(n * (math.log(n) + math.log(math.log(n)))) + 16
    if sid is StatementId.ROSSER_SERIES:
        return max(2, g("limit"))
    if sid is StatementId.HANSON:
        return max(2, g("x"))
    if sid is StatementId.ROBIN:
        return max(2, g("n"))
    return 2  # FARHI, COR1_*: no sieve needed


# -- constants consistency and the negative control --------------------------


def constants_consistency(policy: PrecisionPolicy = DEFAULT_POLICY) -> list[VerificationRecord]:
    """The four relations the constants must satisfy for the proofs to chain.

    exp(2*c3) <= c2 is decided by interval escalation; the two products
    are exact rational comparisons; the series value stays below ln c7.
    Note: exp(2*c3) = 12.306652... actually exceeds c2 = 12.30641 by
    about 2.4e-4, so the first relation is rigorously FAIL as stated.
    """
    records = []
    t0 = time.perf_counter()
    records.append(_decide_and_finish(
        "CONST_EXP_2C3_LE_C2", {},
        lambda bits: exp_interval(2 * CONSTANTS.c3, bits),
        lambda bits: CONSTANTS.c2,
        policy, t0, note="exp(2*c3) <= c2",
    ))
    t0 = time.perf_counter()
    records.append(_decide_and_finish(
        "CONST_C2_C4_LE_C1", {},
        lambda bits: CONSTANTS.c2 * CONSTANTS.c4,
        lambda bits: CONSTANTS.c1,
        policy, t0, note="c2*c4 <= c1, exact",
    ))
    t0 = time.perf_counter()
    records.append(_decide_and_finish(
        "CONST_C6_C7_LE_C4", {},
        lambda bits: CONSTANTS.c6 * CONSTANTS.c7,
        lambda bits: CONSTANTS.c4,
        policy, t0, note="c6*c7 <= c4, exact",
    ))
    t0 = time.perf_counter()
    records.append(_decide_and_finish(
        "CONST_SERIES_LT_LN_C7", {},
        lambda bits: SERIES_VALUE,
        lambda bits: log_interval(CONSTANTS.c7, bits),
        policy, t0, note="series value < ln c7",
    ))
    return records


def negative_control(
    sieve: PrimeSieve, policy: PrecisionPolicy = DEFAULT_POLICY
) -> list[VerificationRecord]:
    """Falsifiability smoke test: corrupt c1 to 1 and expect FAILs.

    With the leading constant collapsed, the claimed bound drops below
    the actual lcm growth, so the engine must produce FAIL verdicts.
    """
    records = []
    for n in range(3, 13):
        records.append(
            _check_thm1({"a": 1, "b": 2, "n": n}, sieve, policy,
                        c1=mpq(1), sid="THM1_NEGATIVE_CONTROL")
        )
    return records


# -- sound range checks for the cited results --------------------------------


@dataclass
class _Tightest:
    margin: float = math.inf
    at: int = 0
    lhs: Side = None
    rhs: Side = None

    def offer(self, margin: float, at: int, lhs: Side, rhs: Side) -> None:
        if margin < self.margin:
            self.margin = margin
            self.at = at
            self.lhs = lhs
            self.rhs = rhs


def _float_of(v: Side) -> float:
    if isinstance(v, Interval):
        return float(v.hi)
    return float(v)


def _monotone_block_scan(
    sid: str,
    params: dict,
    scan_lo: int,
    scan_hi: int,
    lhs_max: Callable[[int, int], Exactish],
    rhs_at: Callable[[int, int], Interval],
    policy: PrecisionPolicy,
    t0: float,
    singles: Sequence[int] = (),
    var: str = "n",
) -> VerificationRecord:
    """PASS iff lhs(n) <= rhs(n) for every integer n in the range.

    Requires rhs nondecreasing on [scan_lo, scan_hi] and lhs_max(lo, hi)
    an exact upper bound for lhs on [lo, hi]; then max-lhs <= rhs(lo)
    proves the whole block.  Values outside the monotone stretch go in
    `singles` and are checked one by one.
    """
    bits0 = policy.start_bits
    tight = _Tightest()
    blocks = 0

    def _point(nv: int) -> VerificationRecord | None:
        nonlocal blocks
        blocks += 1
        exact = lhs_max(nv, nv)
        verdict, lhs, rhs, bits = decide_le(
            lambda b: exact, lambda b: rhs_at(nv, b), policy
        )
        if verdict is not Verdict.PASS:
            return _finish(sid, params, verdict, lhs, rhs, bits, t0,
                           note=f"decided at {var}={nv}")
        tight.offer(float(rhs.lo) - _float_of(lhs), nv, lhs, rhs)
        return None

    for s in singles:
        bad = _point(s)
        if bad is not None:
            return bad

    lo = scan_lo
    span = 64
    while lo <= scan_hi:
        hi = min(lo + span - 1, scan_hi)
        lmax = lhs_max(lo, hi)
        rhs = rhs_at(lo, bits0)
        if lmax <= rhs.lo:
            tight.offer(float(rhs.lo) - _float_of(lmax), lo, lmax, rhs)
            blocks += 1
            lo = hi + 1
            span = min(span * 2, 1 << 22)
        elif hi > lo:
            span = max(1, span // 2)
        else:
            bad = _point(lo)
            if bad is not None:
                return bad
            lo += 1
            span = 64
    return _finish(
        sid, params, Verdict.PASS, tight.lhs, tight.rhs, bits0, t0,
        note=f"{blocks} blocks; tightest at {var}={tight.at}",
    )


def check_rosser_sum_range(
    sieve: PrimeSieve,
    policy: PrecisionPolicy = DEFAULT_POLICY,
    n_min: int = 2,
    n_max: int = 10**6,
) -> VerificationRecord:
    """Sum of ln(p)/p over p <= n stays below ln n for every n in range.

    The sum is constant between consecutive primes and ln n is increasing,
    so one comparison per prime block covers all n in the block.
    """
    t0 = time.perf_counter()
    sid = StatementId.ROSSER_SUM.value
    params = {"n_min": n_min, "n_max": n_max}
    if not (2 <= n_min <= n_max <= sieve.limit):
        raise ValueError(f"need 2 <= n_min <= n_max <= sieve limit, got {params}")
    bits0 = policy.start_bits
    down, up = _ctxs(bits0)
    acc_lo = mpfr(0)
    acc_hi = mpfr(0)
    tight = _Tightest()
    blocks = 0
    primes = sieve.prime_ints()
    for i, p in enumerate(primes):
        if p > n_max:
            break
        plo, phi = ln_pair(p, bits0)
        acc_lo = down.add(acc_lo, down.div(plo, p))
        acc_hi = up.add(acc_hi, up.div(phi, p))
        nxt = primes[i + 1] if i + 1 < len(primes) else sieve.limit + 1
        if min(nxt - 1, n_max) < n_min:
            continue  # block entirely below the requested range
        at = max(p, n_min)
        rlo, _ = ln_pair(at, bits0)
        blocks += 1
        if acc_hi <= rlo:
            tight.offer(float(rlo) - float(acc_hi), at,
                        Interval(acc_lo, acc_hi, bits0),
                        Interval(*ln_pair(at, bits0), bits0))
        else:
            # tight block: re-decide the single point on the full ladder
            verdict, lhs, rhs, bits = decide_le(
                lambda b, pp=p: rosser_log_sum(sieve, pp, b),
                lambda b, aa=at: log_interval(aa, b),
                policy,
            )
            if verdict is not Verdict.PASS:
                return _finish(sid, params, verdict, lhs, rhs, bits, t0,
                               note=f"decided at n={at}")
            tight.offer(float(rhs.lo) - float(lhs.hi), at, lhs, rhs)
    return _finish(
        sid, params, Verdict.PASS, tight.lhs, tight.rhs, bits0, t0,
        note=f"{blocks} prime blocks; tightest at n={tight.at}",
    )


def check_rosser_pn_range(
    sieve: PrimeSieve,
    policy: PrecisionPolicy = DEFAULT_POLICY,
    n_min: int = 6,
    n_max: int | None = None,
) -> VerificationRecord:
    """p_n <= n(ln n + ln ln n) for every n in range (default: all of sieve)."""
    t0 = time.perf_counter()
    total = len(sieve.primes)
    if n_max is None:
        n_max = total
    params = {"n_min": n_min, "n_max": n_max}
    if not (6 <= n_min <= n_max <= total):
        raise ValueError(f"need 6 <= n_min <= n_max <= pi(limit) = {total}, got {params}")
    return _monotone_block_scan(
        StatementId.ROSSER_PN.value, params, n_min, n_max,
        lambda lo, hi: int(sieve.primes[hi - 1]),
        lambda n, bits: reference_bounds(StatementId.ROSSER_PN, n, bits),
        policy, t0,
    )


def check_hanson_range(
    sieve: PrimeSieve,
    policy: PrecisionPolicy = DEFAULT_POLICY,
    x_min: int = 2,
    x_max: int = 10**7,
) -> VerificationRecord:
    """pi(x) <= c3*x/ln x for every integer x in range.

    c3*x/ln x is increasing from x = 3 on (its minimum over the reals is
    at x = e), so x = 2 is checked as a singleton.
    """
    t0 = time.perf_counter()
    params = {"x_min": x_min, "x_max": x_max}
    if not (2 <= x_min <= x_max <= sieve.limit):
        raise ValueError(f"need 2 <= x_min <= x_max <= sieve limit, got {params}")
    singles = [2] if x_min == 2 else []
    return _monotone_block_scan(
        StatementId.HANSON.value, params, max(3, x_min), x_max,
        lambda lo, hi: pi(sieve, hi),
        lambda x, bits: reference_bounds(StatementId.HANSON, x, bits),
        policy, t0, singles=singles, var="x",
    )


def check_robin_range(
    sieve: PrimeSieve,
    policy: PrecisionPolicy = DEFAULT_POLICY,
    n_min: int = 3,
    n_max: int = 10**6,
) -> VerificationRecord:
    """omega(n) <= c5*ln n/ln ln n for every n in range.

    The right side decreases until n = 15 and increases from n = 16 on,
    so 3..15 are singletons and the rest is block-scanned against a
    precomputed omega table.
    """
    t0 = time.perf_counter()
    params = {"n_min": n_min, "n_max": n_max}
    if not (3 <= n_min <= n_max <= sieve.limit):
        raise ValueError(f"need 3 <= n_min <= n_max <= sieve limit, got {params}")
    table = omega_table(sieve, n_max)
    singles = list(range(n_min, min(15, n_max) + 1))
    return _monotone_block_scan(
        StatementId.ROBIN.value, params, max(16, n_min), n_max,
        lambda lo, hi: int(table[lo : hi + 1].max()),
        lambda n, bits: reference_bounds(StatementId.ROBIN, n, bits),
        policy, t0, singles=singles,
    )


def check_series_range(
    sieve: PrimeSieve,
    policy: PrecisionPolicy = DEFAULT_POLICY,
    limit: int = 10**6,
) -> VerificationRecord:
    """Partial sum of ln(p)/(p(p-1)) up to limit stays below ln c7."""
    t0 = time.perf_counter()
    params = {"limit": limit}
    if not (2 <= limit <= sieve.limit):
        raise ValueError(f"need 2 <= limit <= sieve limit, got {params}")
    return _decide_and_finish(
        StatementId.ROSSER_SERIES.value, params,
        lambda bits: c7_series_partial(sieve, limit, bits),
        lambda bits: log_interval(CONSTANTS.c7, bits),
        policy, t0, note="partial sum < ln c7",
    )
