"""Arithmetic-progression quantities.

L(a, b, n) denotes lcm(a, a+b, ..., a+nb) with gcd(a, b) = 1.  It is
computed two independent ways: an incremental lcm over the terms, and a
prime-factorization assembly that splits the primes at n (a prime p > n
divides at most one term, a prime p <= n is handled by counting the
indices x with p^e | a + bx).  The factorization route also yields
log L as an interval without ever materializing L, which is what makes
large-n verification feasible.

Also here: the totient, the mean reciprocal sum M(r) over residues
coprime to r (exact rational and interval forms), and the reduction of
a progression with a > b to one with a <= b whose lcm is a multiple.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from gmpy2 import mpfr, mpq

from .core_arith import DomainError, Interval, _ctxs, is_prime, padic_valuation
from .primes import Factorization, PrimeSieve, SieveRangeError, factorize, ln_pair


@dataclass(frozen=True)
class ProgressionSpec:
    """Finite arithmetic progression a, a+b, ..., a+nb with gcd(a,b)=1."""

    a: int
    b: int
    n: int

    def __post_init__(self) -> None:
        if self.a < 1 or self.b < 1 or self.n < 0:
            raise DomainError(f"need a >= 1, b >= 1, n >= 0, got {self}")
        if math.gcd(self.a, self.b) != 1:
            raise DomainError(f"a and b must be coprime, got {self}")

    @property
    def last_term(self) -> int:
        return self.a + self.n * self.b

    def terms(self) -> range:
        return range(self.a, self.last_term + 1, self.b)


@dataclass(frozen=True)
class LcmFactorization:
    """Factorization of L(a,b,n) split at n: small has p <= n, large p > n."""

    spec: ProgressionSpec
    small: Factorization
    large: Factorization

    def value(self) -> int:
        return self.small.value() * self.large.value()

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return self.small.pairs + self.large.pairs


def lcm_progression(spec: ProgressionSpec) -> int:
    """Exact L(a,b,n) by incremental lcm over the terms."""
    return functools.reduce(math.lcm, spec.terms())


def valuation_of_L(p: int, spec: ProgressionSpec) -> int:
    """Largest e with p^e dividing some term, i.e. the p-valuation of L.

    Zero when p divides b: every term is congruent to a, and gcd(a,b)=1.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if spec.b % p == 0:
        return 0
    best = 0
    for t in spec.terms():
        if t % p == 0:
            best = max(best, padic_valuation(p, t))
    return best


def count_multiples(q: int, e: int, spec: ProgressionSpec) -> int:
    """Number of indices 0 <= x <= n with q^e | a + bx.

    The congruence a + bx = 0 (mod q^e) has the single solution class
    x_e = -a * b^{-1}; the count is floor((n - x_e)/q^e) + 1 when x_e <= n.
    """
    if not is_prime(q):
        raise DomainError(f"{q} is not prime")
    if e < 1:
        raise DomainError("exponent must be >= 1")
    if spec.b % q == 0:
        raise DomainError(f"modulus {q} divides the step {spec.b}")
    m = q**e
    x_e = (-spec.a * pow(spec.b, -1, m)) % m
    if x_e > spec.n:
        return 0
    return (spec.n - x_e) // m + 1


def factorize_L(spec: ProgressionSpec, sieve: PrimeSieve) -> LcmFactorization:
    """Factor L(a,b,n) without computing it, split at the prime bound n.

    p <= n: valuation is the largest e with at least one index x giving
    q^e | a + bx.  p > n: divides at most one term, so a per-term
    factorization assigns its full valuation directly.
    """
    if spec.last_term > sieve.limit:
        raise SieveRangeError(
            f"largest term {spec.last_term} exceeds sieve limit {sieve.limit}"
        )
    small: list[tuple[int, int]] = []
    for p in sieve.prime_ints():
        if p > spec.n:
            break
        if spec.b % p == 0:
            continue
        e = 0
        while count_multiples(p, e + 1, spec) >= 1:
            e += 1
        if e >= 1:
            small.append((p, e))
    large: dict[int, int] = {}
    for t in spec.terms():
        for p, e in factorize(sieve, t):
            if p > spec.n:
                large[p] = max(large.get(p, 0), e)
    return LcmFactorization(
        spec=spec,
        small=Factorization(tuple(small)),
        large=Factorization(tuple(sorted(large.items()))),
    )


def log_of_factorization(pairs, bits: int) -> Interval:
    """Interval containing sum of e * ln(p) over (p, e) pairs."""
    down, up = _ctxs(bits)
    lo = mpfr(0)
    hi = mpfr(0)
    for p, e in pairs:
        plo, phi = ln_pair(p, bits)
        lo = down.add(lo, down.mul(plo, e))
        hi = up.add(hi, up.mul(phi, e))
    return Interval(lo, hi, bits)


def log_lcm_interval(spec: ProgressionSpec, sieve: PrimeSieve, bits: int) -> Interval:
    """Interval containing ln L(a,b,n), assembled from the factorization."""
    return log_of_factorization(factorize_L(spec, sieve).pairs(), bits)


def euler_phi(n: int, sieve: PrimeSieve) -> int:
    """Euler totient via factorization."""
    if n < 1:
        raise DomainError("totient requires n >= 1")
    phi = 1
    for p, e in factorize(sieve, n):
        phi *= p ** (e - 1) * (p - 1)
    return phi


def _coprime_residues(r: int) -> list[int]:
    return [l for l in range(1, r + 1) if math.gcd(l, r) == 1]


def _reciprocal_sum(ells: list[int], lo: int, hi: int) -> tuple[int, int]:
    # unnormalized (num, den) of sum of 1/ell over ells[lo:hi], by halving
    if hi - lo == 1:
        return 1, ells[lo]
    mid = (lo + hi) // 2
    n1, d1 = _reciprocal_sum(ells, lo, mid)
    n2, d2 = _reciprocal_sum(ells, mid, hi)
    return n1 * d2 + n2 * d1, d1 * d2


def m_function(r: int) -> mpq:
    """Exact M(r) = (1/phi(r)) * sum of 1/ell over ell <= r coprime to r."""
    if r < 1:
        raise DomainError("M(r) requires r >= 1")
    ells = _coprime_residues(r)
    num, den = _reciprocal_sum(ells, 0, len(ells))
    return mpq(num, den * len(ells))


def m_function_interval(r: int, bits: int) -> Interval:
    """Interval containing M(r); avoids the exact common denominator."""
    if r < 1:
        raise DomainError("M(r) requires r >= 1")
    ells = _coprime_residues(r)
    down, up = _ctxs(bits)
    slo = mpfr(0)
    shi = mpfr(0)
    one = mpfr(1)
    for l in ells:
        slo = down.add(slo, down.div(one, l))
        shi = up.add(shi, up.div(one, l))
    phi = len(ells)
    return Interval(down.div(slo, phi), up.div(shi, phi), bits)


def reduce_a_greater_b(spec: ProgressionSpec) -> ProgressionSpec:
    """Reduce a > b to first term a - qb <= b with q = floor(a/b).

    L(a,b,n) divides L(a',b,n+q): the reduced progression's terms are a
    superset of the original's.  When b = 1 the remainder a - qb is 0, so
    the reduction stops one step earlier at a' = 1.
    """
    if spec.a <= spec.b:
        raise DomainError(f"reduction requires a > b, got {spec}")
    q = spec.a // spec.b
    a_red = spec.a - q * spec.b
    if a_red == 0:
        q -= 1
        a_red = spec.b
    return ProgressionSpec(a=a_red, b=spec.b, n=spec.n + q)
