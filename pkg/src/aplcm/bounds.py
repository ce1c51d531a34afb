"""Bound evaluators and the constants they share.

Every named inequality gets an evaluator producing either an exact value
(int/mpq) or an outward-rounded Interval at a requested precision.  The
constants are stored as exact decimal rationals so products like c2*c4
can be compared against c1 with no rounding at all; the margins involved
are around 5e-5, far too small to trust to binary floats.

Statements whose hypotheses are not met raise PreconditionNotMet, which
the verification layer converts into a SKIPPED verdict (a theorem only
claims its stated range).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from .core_arith import Interval, is_prime, legendre_valuation, log_interval
from .primes import PrimeSieve, factorize


class PreconditionNotMet(Exception):
    """Statement hypothesis violated; instance must be SKIPPED, not failed."""


def _dec(s: str) -> mpq:
    f = Fraction(s)
    return mpq(f.numerator, f.denominator)


@dataclass(frozen=True)
class Constants:
    c1: mpq
    c2: mpq
    c3: mpq
    c4: mpq
    c5: mpq
    c6: mpq
    c7: mpq


CONSTANTS = Constants(
    c1=_dec("41.30142"),
    c2=_dec("12.30641"),
    c3=_dec("1.25507"),
    c4=_dec("3.35609"),
    c5=_dec("1.38402"),
    c6=_dec("1.57681"),
    c7=_dec("2.1284"),
)

# decimal expansion of the prime series sum of ln(p)/(p(p-1)), used by the
# consistency check that it stays below ln(c7)
SERIES_VALUE = _dec("0.7553666111")


class StatementId(str, enum.Enum):
    THM1 = "THM1"
    THM2 = "THM2"
    COR1_LOWER = "COR1_LOWER"
    COR1_UPPER = "COR1_UPPER"
    COR3 = "COR3"
    FARHI = "FARHI"
    ROSSER_SUM = "ROSSER_SUM"
    ROSSER_PN = "ROSSER_PN"
    ROSSER_SERIES = "ROSSER_SERIES"
    HANSON = "HANSON"
    ROBIN = "ROBIN"
    LEMMA6 = "LEMMA6"
    LEMMA7 = "LEMMA7"
    LEMMA8 = "LEMMA8"
    EQ_A = "EQ_A"


@dataclass(frozen=True)
class BoundExpression:
    """One statement instance: an id plus its named integer parameters."""

    statement: StatementId
    params: dict


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise PreconditionNotMet(msg)


def theorem1_exponent(a: int, b: int, n: int) -> int:
    return n + a // b


def _theorem1_base(b: int, bits: int, c1: mpq | None) -> Interval:
    c = CONSTANTS.c1 if c1 is None else c1
    return Interval.from_int(b, bits).ln().mul(b).mul(c)


def theorem1_bound(a: int, b: int, n: int, bits: int, c1: mpq | None = None) -> Interval:
    """Interval containing (c1 * b * ln b)^(n + floor(a/b))."""
    _require(math.gcd(a, b) == 1, f"gcd({a},{b}) != 1")
    _require(b >= 2, f"b must be >= 2, got {b}")
    _require(n >= b + 1, f"n must be >= b+1 = {b + 1}, got {n}")
    return _theorem1_base(b, bits, c1).pow_int(theorem1_exponent(a, b, n))


def theorem1_log_bound(a: int, b: int, n: int, bits: int, c1: mpq | None = None) -> Interval:
    """Interval containing (n + floor(a/b)) * ln(c1 * b * ln b)."""
    _require(math.gcd(a, b) == 1, f"gcd({a},{b}) != 1")
    _require(b >= 2, f"b must be >= 2, got {b}")
    _require(n >= b + 1, f"n must be >= b+1 = {b + 1}, got {n}")
    return _theorem1_base(b, bits, c1).ln().mul(theorem1_exponent(a, b, n))


def theorem2_bound(b: int, n: int, bits: int) -> Interval:
    """Interval containing (c2 * b^(b/(b-1)))^n."""
    _require(is_prime(b), f"b must be prime, got {b}")
    _require(n >= b + 1, f"n must be >= b+1 = {b + 1}, got {n}")
    power = Interval.from_int(b, bits).pow_rational(mpq(b, b - 1))
    return power.mul(CONSTANTS.c2).pow_int(n)


def theorem2_log_bound(b: int, n: int, bits: int) -> Interval:
    """Interval containing n * (ln c2 + (b/(b-1)) * ln b)."""
    _require(is_prime(b), f"b must be prime, got {b}")
    _require(n >= b + 1, f"n must be >= b+1 = {b + 1}, got {n}")
    lnb = Interval.from_int(b, bits).ln()
    return log_interval(CONSTANTS.c2, bits).add(lnb.mul(mpq(b, b - 1))).mul(n)


def farhi_lower(a: int, b: int, n: int) -> int:
    """Exact lower bound a * (b+1)^(n-1); defined for n >= 1."""
    _require(math.gcd(a, b) == 1, f"gcd({a},{b}) != 1")
    _require(n >= 1, f"lower bound needs n >= 1, got {n}")
    return a * (b + 1) ** (n - 1)


def corollary1_interval(r: int, bits: int) -> tuple[Interval, Interval]:
    """(lower, upper) sandwich for r*M(r): ln(r+1) and ln r + ln ln r + ln c1."""
    _require(r >= 2, f"sandwich needs r >= 2, got {r}")
    lower = log_interval(r + 1, bits)
    ln_r = log_interval(r, bits)
    upper = ln_r.add(ln_r.ln()).add(log_interval(CONSTANTS.c1, bits))
    return lower, upper


def corollary3_bound(x: int, k: int, bits: int) -> Interval:
    """Interval containing x * (2*c3/k + ln(k)/(k-1))."""
    _require(is_prime(k), f"k must be prime, got {k}")
    _require(x >= k * (k + 1), f"x must be >= k(k+1) = {k * (k + 1)}, got {x}")
    per_class = Interval.from_rational(2 * CONSTANTS.c3 / k, bits)
    return per_class.add(log_interval(k, bits).div(k - 1)).mul(x)


def reference_bounds(kind: StatementId, arg: int, bits: int) -> Interval:
    """Right-hand sides of the cited results: HANSON, ROSSER_PN, ROBIN."""
    if kind is StatementId.HANSON:
        _require(arg > 1, f"pi bound needs x > 1, got {arg}")
        return Interval.from_rational(CONSTANTS.c3 * arg, bits).div(log_interval(arg, bits))
    if kind is StatementId.ROSSER_PN:
        _require(arg >= 6, f"p_n bound needs n >= 6, got {arg}")
        ln_n = log_interval(arg, bits)
        return ln_n.add(ln_n.ln()).mul(arg)
    if kind is StatementId.ROBIN:
        _require(arg >= 3, f"omega bound needs n >= 3, got {arg}")
        ln_n = log_interval(arg, bits)
        return ln_n.mul(CONSTANTS.c5).div(ln_n.ln())
    raise ValueError(f"no reference bound of kind {kind}")


def lemma7_sides(b: int, sieve: PrimeSieve, bits: int) -> tuple[Interval, Interval]:
    """lhs containing prod over p|b of p^(1/p); rhs containing c6 * ln b."""
    _require(b >= 3, f"needs b >= 3, got {b}")
    lhs = Interval.from_int(1, bits)
    for p, _ in factorize(sieve, b):
        lhs = lhs.mul(Interval.from_int(p, bits).pow_rational(mpq(1, p)))
    rhs = log_interval(b, bits).mul(CONSTANTS.c6)
    return lhs, rhs


def lemma8_sides(b: int, n: int, sieve: PrimeSieve, bits: int) -> tuple[int, Interval]:
    """Exact prod over p|b of p^(v_p(n!)) against an interval of (c4*ln b)^n."""
    _require(b >= 2, f"needs b >= 2, got {b}")
    _require(n >= 2, f"needs n >= 2, got {n}")
    lhs = 1
    for p, _ in factorize(sieve, b):
        lhs *= p ** legendre_valuation(p, n)
    rhs = log_interval(b, bits).mul(CONSTANTS.c4).pow_int(n)
    return lhs, rhs


def _lemma6_pre(a: int, b: int, n: int) -> None:
    _require(a < b, f"needs a < b, got a={a}, b={b}")
    _require(math.gcd(a, b) == 1, f"gcd({a},{b}) != 1")
    _require(n >= b + 1, f"n must be >= b+1 = {b + 1}, got {n}")


def lemma6_rhs_exact(a: int, b: int, n: int, sieve: PrimeSieve) -> mpq:
    """Exact rational c2^n / (a+nb)^omega(b)."""
    _lemma6_pre(a, b, n)
    w = factorize(sieve, b).omega
    return CONSTANTS.c2**n / mpq(a + n * b) ** w


def lemma6_rhs(a: int, b: int, n: int, sieve: PrimeSieve, bits: int) -> Interval:
    """Interval form of the same bound, for display."""
    _lemma6_pre(a, b, n)
    w = factorize(sieve, b).omega
    return Interval.from_rational(CONSTANTS.c2, bits).pow_int(n).div((a + n * b) ** w)
