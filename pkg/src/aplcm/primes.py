"""Prime sieving and prime-indexed sums.

A PrimeSieve is a plain (non-segmented) bitset over [0, limit] plus the
ascending array of primes; it is immutable after construction and every
query is read-only.  The log-weighted prime sums (theta over a residue
class, sum of log(p)/p, sum of log(p)/(p(p-1))) are accumulated in
interval arithmetic term by term, in ascending prime order, so results
are reproducible bit for bit at a given precision.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpfr

from .core_arith import DomainError, Interval, _ctxs

DEFAULT_SIEVE_LIMIT = 10**7


class MemoryBudgetError(MemoryError):
    """Sieve limit exceeds the configured memory budget."""


class SieveRangeError(ValueError):
    """Query outside the range covered by the sieve."""


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ascending (prime, exponent) pairs."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def omega(self) -> int:
        return len(self.pairs)

    def value(self) -> int:
        v = 1
        for p, e in self.pairs:
            v *= p**e
        return v

    def valuation(self, p: int) -> int:
        for q, e in self.pairs:
            if q == p:
                return e
        return 0

    def __iter__(self):
        return iter(self.pairs)


@dataclass
class PrimeSieve:
    limit: int
    flags: bytes  # flags[m] == 1 iff m prime
    primes: np.ndarray  # ascending int64 primes <= limit
    _prime_ints: list[int] | None = field(default=None, repr=False)

    def is_prime(self, m: int) -> bool:
        if m < 0 or m > self.limit:
            raise SieveRangeError(f"{m} outside sieve range [0, {self.limit}]")
        return self.flags[m] == 1

    def prime_ints(self) -> list[int]:
        """Primes as a cached list of Python ints (fast to iterate)."""
        if self._prime_ints is None:
            self._prime_ints = [int(p) for p in self.primes]
        return self._prime_ints

    def primes_upto(self, x: int) -> np.ndarray:
        if x > self.limit:
            raise SieveRangeError(f"{x} exceeds sieve limit {self.limit}")
        return self.primes[: int(np.searchsorted(self.primes, x, side="right"))]


def build_sieve(limit: int, max_bytes: int = 2**31) -> PrimeSieve:
    """Sieve of Eratosthenes over [0, limit]; deterministic.

    Raises MemoryBudgetError when the flag array would exceed max_bytes.
    """
    if limit < 2:
        raise ValueError("sieve limit must be >= 2")
    if limit + 1 > max_bytes:
        raise MemoryBudgetError(
            f"sieve to {limit} needs {limit + 1} bytes, budget is {max_bytes}"
        )
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            start = p * p
            flags[start :: p] = bytes(len(range(start, limit + 1, p)))
    frozen = bytes(flags)
    primes = np.flatnonzero(np.frombuffer(frozen, dtype=np.uint8)).astype(np.int64)
    return PrimeSieve(limit=limit, flags=frozen, primes=primes)


def pi(sieve: PrimeSieve, x: int) -> int:
    """Number of primes <= x."""
    if x > sieve.limit:
        raise SieveRangeError(f"pi({x}) beyond sieve limit {sieve.limit}")
    if x < 2:
        return 0
    return int(np.searchsorted(sieve.primes, x, side="right"))


def nth_prime(sieve: PrimeSieve, n: int) -> int:
    if n < 1:
        raise ValueError("prime index starts at 1")
    if n > len(sieve.primes):
        raise SieveRangeError(f"sieve holds only {len(sieve.primes)} primes")
    return int(sieve.primes[n - 1])


def factorize(sieve: PrimeSieve, n: int) -> Factorization:
    """Trial-division factorization using sieve primes.

    Any prime factor must be <= sieve.limit, otherwise SieveRangeError.
    """
    if n < 1:
        raise DomainError("factorize requires n >= 1")
    pairs: list[tuple[int, int]] = []
    rem = n
    for p in sieve.prime_ints():
        if p * p > rem:
            break
        if rem % p == 0:
            e = 0
            while rem % p == 0:
                rem //= p
                e += 1
            pairs.append((p, e))
    if rem > 1:
        if rem > sieve.limit:
            raise SieveRangeError(
                f"unfactored remainder {rem} exceeds sieve limit {sieve.limit}"
            )
        pairs.append((rem, 1))
    return Factorization(tuple(pairs))


def omega(sieve: PrimeSieve, n: int) -> int:
    """Number of distinct prime divisors."""
    return factorize(sieve, n).omega


def omega_table(sieve: PrimeSieve, n_max: int) -> np.ndarray:
    """uint8 array t with t[n] = omega(n) for 0 <= n <= n_max."""
    if n_max > sieve.limit:
        raise SieveRangeError(f"{n_max} exceeds sieve limit {sieve.limit}")
    table = np.zeros(n_max + 1, dtype=np.uint8)
    for p in sieve.primes[sieve.primes <= n_max]:
        table[p::p] += 1
    return table


@functools.lru_cache(maxsize=400_000)
def ln_pair(n: int, bits: int) -> tuple[mpfr, mpfr]:
    """Outward-rounded (lo, hi) enclosure of ln(n) for an integer n >= 1."""
    down, up = _ctxs(bits)
    return down.log(down.add(n, mpfr(0))), up.log(up.add(n, mpfr(0)))


def ln_int(n: int, bits: int) -> Interval:
    lo, hi = ln_pair(n, bits)
    return Interval(lo, hi, bits)


def theta_progression(sieve: PrimeSieve, x: int, k: int, l: int, bits: int) -> Interval:
    """Interval containing the sum of ln(p) over primes p <= x, p = l (mod k).

    l may exceed k (it is reduced mod k); the residue-0 class counts primes
    divisible by k, which is at most the prime k itself.
    """
    if k < 1 or l < 1:
        raise DomainError("theta requires k >= 1 and l >= 1")
    if x > sieve.limit:
        raise SieveRangeError(f"theta at x={x} beyond sieve limit {sieve.limit}")
    cls = l % k
    down, up = _ctxs(bits)
    lo = mpfr(0)
    hi = mpfr(0)
    if x >= 2:
        for p in sieve.prime_ints():
            if p > x:
                break
            if p % k == cls:
                plo, phi = ln_pair(p, bits)
                lo = down.add(lo, plo)
                hi = up.add(hi, phi)
    return Interval(lo, hi, bits)


def theta_snapshots(sieve: PrimeSieve, k: int, xs: list[int], bits: int) -> dict[tuple[int, int], Interval]:
    """theta(x; k, l) for every residue class l in [0, k) and every x in xs.

    One ascending pass over the primes; per-class accumulation order is the
    same as in theta_progression, so the enclosures are identical.
    """
    if any(x > sieve.limit for x in xs):
        raise SieveRangeError("snapshot beyond sieve limit")
    xs_sorted = sorted(set(xs))
    down, up = _ctxs(bits)
    acc_lo = [mpfr(0)] * k
    acc_hi = [mpfr(0)] * k
    out: dict[tuple[int, int], Interval] = {}
    xi = 0
    for p in sieve.prime_ints():
        while xi < len(xs_sorted) and p > xs_sorted[xi]:
            for cls in range(k):
                out[(cls, xs_sorted[xi])] = Interval(acc_lo[cls], acc_hi[cls], bits)
            xi += 1
        if xi >= len(xs_sorted):
            break
        cls = p % k
        plo, phi = ln_pair(p, bits)
        acc_lo[cls] = down.add(acc_lo[cls], plo)
        acc_hi[cls] = up.add(acc_hi[cls], phi)
    while xi < len(xs_sorted):
        for cls in range(k):
            out[(cls, xs_sorted[xi])] = Interval(acc_lo[cls], acc_hi[cls], bits)
        xi += 1
    return out


def rosser_log_sum(sieve: PrimeSieve, n: int, bits: int) -> Interval:
    """Interval containing the sum of ln(p)/p over primes p <= n."""
    if n < 2:
        raise DomainError("rosser_log_sum requires n >= 2")
    if n > sieve.limit:
        raise SieveRangeError(f"n={n} beyond sieve limit {sieve.limit}")
    down, up = _ctxs(bits)
    lo = mpfr(0)
    hi = mpfr(0)
    for p in sieve.prime_ints():
        if p > n:
            break
        plo, phi = ln_pair(p, bits)
        lo = down.add(lo, down.div(plo, p))
        hi = up.add(hi, up.div(phi, p))
    return Interval(lo, hi, bits)


def c7_series_partial(sieve: PrimeSieve, limit: int, bits: int) -> Interval:
    """Interval containing the partial sum of ln(p)/(p(p-1)) over p <= limit."""
    if limit > sieve.limit:
        raise SieveRangeError(f"limit={limit} beyond sieve limit {sieve.limit}")
    down, up = _ctxs(bits)
    lo = mpfr(0)
    hi = mpfr(0)
    for p in sieve.prime_ints():
        if p > limit:
            break
        plo, phi = ln_pair(p, bits)
        den = p * (p - 1)
        lo = down.add(lo, down.div(plo, den))
        hi = up.add(hi, up.div(phi, den))
    return Interval(lo, hi, bits)
