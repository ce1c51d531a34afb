"""Exact integer primitives and directed-rounding interval arithmetic.

Every transcendental quantity in this package is carried as an Interval:
a pair of MPFR floats [lo, hi] rounded outward at a fixed bit precision,
so that the true real value provably lies inside.  Verdicts about
inequalities are only ever derived from interval endpoints, never from
nearest-rounded floats.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

import gmpy2
from gmpy2 import mpfr, mpq


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


RationalLike = Union[int, mpq, Fraction]

_ZERO = mpfr(0)


@functools.lru_cache(maxsize=None)
def _ctxs(bits: int) -> tuple[gmpy2.context, gmpy2.context]:
    """Round-down / round-up context pair at the given precision."""
    if bits < 2:
        raise ValueError(f"precision must be >= 2 bits, got {bits}")
    down = gmpy2.context(precision=bits, round=gmpy2.RoundDown)
    up = gmpy2.context(precision=bits, round=gmpy2.RoundUp)
    return down, up


@dataclass(frozen=True)
class PrecisionPolicy:
    """Escalation ladder for interval precision.

    Comparisons start at `start_bits`; whenever an interval comparison is
    indecisive the precision is multiplied by `escalation_factor`, up to
    `max_bits`.  Past that the verdict is INCONCLUSIVE.
    """

    start_bits: int = 128
    max_bits: int = 2048
    escalation_factor: int = 2

    def __post_init__(self) -> None:
        if self.start_bits < 64:
            raise ValueError("start_bits must be >= 64")
        if self.max_bits < self.start_bits:
            raise ValueError("max_bits must be >= start_bits")
        if self.escalation_factor < 2:
            raise ValueError("escalation_factor must be >= 2")

    def ladder(self) -> Iterator[int]:
        bits = self.start_bits
        while bits <= self.max_bits:
            yield bits
            bits *= self.escalation_factor


DEFAULT_POLICY = PrecisionPolicy()


def _to_mpq(value: RationalLike) -> mpq:
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    return mpq(value)


class Interval:
    """A closed interval [lo, hi] of MPFR floats enclosing one real number.

    All constructors and operations round outward, so for exact inputs the
    mathematical result of the operation is always contained in the output.
    Inputs may be Intervals, ints, or rationals (mpq/Fraction); exact
    operands are rounded directly by MPFR, never pre-converted.
    """

    __slots__ = ("lo", "hi", "bits")

    def __init__(self, lo: mpfr, hi: mpfr, bits: int):
        if gmpy2.is_nan(lo) or gmpy2.is_nan(hi):
            raise DomainError("NaN endpoint in interval")
        if lo > hi:
            raise DomainError(f"inverted interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.bits = bits

    @classmethod
    def from_int(cls, n: int, bits: int) -> "Interval":
        down, up = _ctxs(bits)
        return cls(down.add(n, _ZERO), up.add(n, _ZERO), bits)

    @classmethod
    def from_rational(cls, q: RationalLike, bits: int) -> "Interval":
        q = _to_mpq(q)
        down, up = _ctxs(bits)
        return cls(down.add(q, _ZERO), up.add(q, _ZERO), bits)

    @classmethod
    def exact(cls, value: RationalLike, bits: int) -> "Interval":
        """Alias accepting any exact value."""
        return cls.from_rational(value, bits)

    # -- queries ---------------------------------------------------------

    def contains(self, value: RationalLike) -> bool:
        q = _to_mpq(value)
        return self.lo <= q <= self.hi

    def encloses(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def width(self) -> mpfr:
        _, up = _ctxs(self.bits)
        return up.sub(self.hi, self.lo)

    def mid_float(self) -> float:
        return (float(self.lo) + float(self.hi)) / 2.0

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r}, bits={self.bits})"

    def __str__(self) -> str:
        # str(mpfr) prints enough digits to round-trip at the stored precision
        return f"[{self.lo}, {self.hi}] @ {self.bits}"

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other: Union["Interval", RationalLike]) -> "Interval":
        if isinstance(other, Interval):
            return other
        return Interval.from_rational(other, self.bits)

    def add(self, other: Union["Interval", RationalLike]) -> "Interval":
        o = self._coerce(other)
        bits = max(self.bits, o.bits)
        down, up = _ctxs(bits)
        return Interval(down.add(self.lo, o.lo), up.add(self.hi, o.hi), bits)

    def sub(self, other: Union["Interval", RationalLike]) -> "Interval":
        o = self._coerce(other)
        bits = max(self.bits, o.bits)
        down, up = _ctxs(bits)
        return Interval(down.sub(self.lo, o.hi), up.sub(self.hi, o.lo), bits)

    def neg(self) -> "Interval":
        return Interval(-self.hi, -self.lo, self.bits)

    def mul(self, other: Union["Interval", RationalLike]) -> "Interval":
        o = self._coerce(other)
        bits = max(self.bits, o.bits)
        down, up = _ctxs(bits)
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(down.mul(x, y) for x, y in pairs)
        hi = max(up.mul(x, y) for x, y in pairs)
        return Interval(lo, hi, bits)

    def div(self, other: Union["Interval", RationalLike]) -> "Interval":
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise DomainError("division by interval containing zero")
        bits = max(self.bits, o.bits)
        down, up = _ctxs(bits)
        pairs = ((self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi))
        lo = min(down.div(x, y) for x, y in pairs)
        hi = max(up.div(x, y) for x, y in pairs)
        return Interval(lo, hi, bits)

    def ln(self) -> "Interval":
        if self.lo <= 0:
            raise DomainError("log of interval touching (-inf, 0]")
        down, up = _ctxs(self.bits)
        return Interval(down.log(self.lo), up.log(self.hi), self.bits)

    def exp(self) -> "Interval":
        down, up = _ctxs(self.bits)
        return Interval(down.exp(self.lo), up.exp(self.hi), self.bits)

    def pow_int(self, e: int) -> "Interval":
        if e < 0:
            return Interval.from_int(1, self.bits).div(self.pow_int(-e))
        if e == 0:
            return Interval.from_int(1, self.bits)
        down, up = _ctxs(self.bits)
        if self.lo >= 0:
            return Interval(down.pow(self.lo, e), up.pow(self.hi, e), self.bits)
        if self.hi <= 0:
            if e % 2 == 0:
                return Interval(down.pow(self.hi, e), up.pow(self.lo, e), self.bits)
            return Interval(down.pow(self.lo, e), up.pow(self.hi, e), self.bits)
        # straddles zero
        if e % 2 == 0:
            hi = max(up.pow(self.lo, e), up.pow(self.hi, e))
            return Interval(mpfr(0), hi, self.bits)
        return Interval(down.pow(self.lo, e), up.pow(self.hi, e), self.bits)

    def pow_rational(self, q: RationalLike) -> "Interval":
        q = _to_mpq(q)
        if q.denominator == 1:
            return self.pow_int(int(q))
        if self.lo <= 0:
            raise DomainError("non-integer power of interval touching (-inf, 0]")
        return self.ln().mul(Interval.from_rational(q, self.bits)).exp()


# -- convenience wrappers ---------------------------------------------------


def log_interval(value: Union[Interval, RationalLike], bits: int = DEFAULT_POLICY.start_bits) -> Interval:
    """Interval provably containing ln(value); value must be positive."""
    if isinstance(value, Interval):
        return value.ln()
    q = _to_mpq(value)
    if q <= 0:
        raise DomainError(f"log requires a positive argument, got {q}")
    return Interval.from_rational(q, bits).ln()


def exp_interval(value: Union[Interval, RationalLike], bits: int = DEFAULT_POLICY.start_bits) -> Interval:
    if isinstance(value, Interval):
        return value.exp()
    return Interval.from_rational(value, bits).exp()


def pow_interval(base: Union[Interval, RationalLike], exponent: RationalLike,
                 bits: int = DEFAULT_POLICY.start_bits) -> Interval:
    """Interval containing base**exponent.

    Integer exponents work for any base; fractional exponents require a
    strictly positive base (evaluated as exp(exponent * ln(base))).
    """
    b = base if isinstance(base, Interval) else Interval.from_rational(base, bits)
    return b.pow_rational(exponent)


# -- exact integer primitives ----------------------------------------------


def gcd(a: int, b: int) -> int:
    """Greatest common divisor on non-negative integers; gcd(0, 0) = 0."""
    if a < 0 or b < 0:
        raise DomainError("gcd is defined here for non-negative integers")
    return math.gcd(a, b)


def lcm(a: int, b: int) -> int:
    """Least common multiple; lcm(x, 0) = 0 by convention."""
    if a < 0 or b < 0:
        raise DomainError("lcm is defined here for non-negative integers")
    return math.lcm(a, b)


def is_prime(n: int) -> bool:
    """Primality via gmpy2 (BPSW + Miller-Rabin; exact for n < 3*10^24)."""
    return bool(gmpy2.is_prime(n)) if n >= 2 else False


def padic_valuation(p: int, n: int) -> int:
    """Largest e with p**e dividing n; requires p prime and n >= 1."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if n <= 0:
        raise DomainError("valuation requires n >= 1 (v_p(0) is infinite)")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def legendre_valuation(p: int, n: int) -> int:
    """Valuation of n! at the prime p, as the finite sum of floor(n/p^l).

    The factorial itself is never formed; cost is O(log_p n).
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if n < 0:
        raise DomainError("n must be >= 0")
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total
