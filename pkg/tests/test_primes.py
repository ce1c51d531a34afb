"""Sieve construction, factorization, and prime-indexed interval sums."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from aplcm.core_arith import DomainError
from oracle_util import contains_frozen

from aplcm.primes import (
    MemoryBudgetError,
    SieveRangeError,
    build_sieve,
    c7_series_partial,
    factorize,
    ln_int,
    nth_prime,
    omega,
    omega_table,
    pi,
    rosser_log_sum,
    theta_progression,
    theta_snapshots,
)

# oracle: mpmath mp.dps=60
THETA_20_4_1 = "7.007600613951853190903781392664632779919"  # ln5 + ln13 + ln17
ROSSER_SUM_10 = "1.312652433140255003680328636364193389154"  # sum ln(p)/p, p <= 10
C7_PARTIAL_3 = "0.5296756383913242699411569335495092348123"  # ln2/2 + ln3/6


class TestSieve:
    def test_flags_agree_with_trial_division(self, sieve_small):
        def brute(m):
            return m >= 2 and all(m % d for d in range(2, int(m**0.5) + 1))

        for m in range(0, 10_001):
            assert sieve_small.is_prime(m) == brute(m), m

    def test_prime_array_sorted_and_counted(self, sieve_small):
        ps = sieve_small.prime_ints()
        assert ps[0] == 2 and ps[-1] == 9973
        assert len(ps) == 1229
        assert all(x < y for x, y in zip(ps, ps[1:]))

    def test_is_prime_out_of_range(self, sieve_small):
        with pytest.raises(SieveRangeError):
            sieve_small.is_prime(10_001)

    def test_limit_validation(self):
        with pytest.raises(ValueError):
            build_sieve(1)
        with pytest.raises(MemoryBudgetError):
            build_sieve(10**6, max_bytes=1000)

    def test_pi_values(self, sieve_small):
        assert pi(sieve_small, 1) == 0
        assert pi(sieve_small, 2) == 1
        assert pi(sieve_small, 10) == 4
        assert pi(sieve_small, 100) == 25
        assert pi(sieve_small, 10_000) == 1229
        with pytest.raises(SieveRangeError):
            pi(sieve_small, 10_001)

    def test_nth_prime(self, sieve_small):
        assert nth_prime(sieve_small, 1) == 2
        assert nth_prime(sieve_small, 25) == 97
        assert nth_prime(sieve_small, 1229) == 9973
        with pytest.raises(ValueError):
            nth_prime(sieve_small, 0)
        with pytest.raises(SieveRangeError):
            nth_prime(sieve_small, 1230)


class TestFactorize:
    def test_examples(self, sieve_small):
        assert factorize(sieve_small, 360).pairs == ((2, 3), (3, 2), (5, 1))
        assert factorize(sieve_small, 1).pairs == ()
        assert factorize(sieve_small, 9973).pairs == ((9973, 1),)

    @given(n=st.integers(min_value=1, max_value=10_000))
    def test_value_round_trip(self, sieve_small, n):
        f = factorize(sieve_small, n)
        assert f.value() == n
        assert all(sieve_small.is_prime(p) for p, _ in f)

    def test_valuation_accessor(self, sieve_small):
        f = factorize(sieve_small, 360)
        assert f.valuation(2) == 3 and f.valuation(7) == 0
        assert f.omega == 3

    def test_rejects_zero(self, sieve_small):
        with pytest.raises(DomainError):
            factorize(sieve_small, 0)

    def test_remainder_beyond_limit_raises(self):
        # 1009 * 1013 has no factor <= 100, and both exceed the limit
        sieve = build_sieve(100)
        with pytest.raises(SieveRangeError):
            factorize(sieve, 1009 * 1013)

    def test_omega_table_agrees(self, sieve_small):
        table = omega_table(sieve_small, 2000)
        for n in range(1, 2001):
            assert table[n] == omega(sieve_small, n), n


class TestPrimeSums:
    def test_theta_oracle(self, sieve_small):
        assert contains_frozen(theta_progression(sieve_small, 20, 4, 1, 128), THETA_20_4_1)

    def test_theta_empty_below_two(self, sieve_small):
        iv = theta_progression(sieve_small, 1, 4, 1, 64)
        assert iv.lo == 0 and iv.hi == 0

    def test_theta_reduces_residue(self, sieve_small):
        a = theta_progression(sieve_small, 100, 4, 9, 128)
        b = theta_progression(sieve_small, 100, 4, 1, 128)
        assert a.lo == b.lo and a.hi == b.hi

    def test_theta_zero_class_is_single_prime(self, sieve_small):
        # only p = 5 is divisible by 5
        iv = theta_progression(sieve_small, 100, 5, 5, 128)
        assert contains_frozen(iv, "1.60943791243410037460075933322618763953")  # oracle: ln 5

    def test_theta_classes_partition_full_theta(self, sieve_small):
        full = theta_progression(sieve_small, 500, 1, 1, 128)
        total = theta_progression(sieve_small, 500, 6, 6, 128)
        for l in range(1, 6):
            total = total.add(theta_progression(sieve_small, 500, 6, l, 128))
        # both enclose the same exact sum
        assert total.lo <= full.hi and full.lo <= total.hi

    def test_theta_snapshots_match_pointwise(self, sieve_small):
        xs = [30, 100, 1000]
        snap = theta_snapshots(sieve_small, 7, xs, 128)
        for x in xs:
            for cls in range(7):
                direct = theta_progression(sieve_small, x, 7, cls if cls else 7, 128)
                got = snap[(cls, x)]
                assert got.lo == direct.lo and got.hi == direct.hi

    def test_theta_beyond_limit(self, sieve_small):
        with pytest.raises(SieveRangeError):
            theta_progression(sieve_small, 10_001, 3, 1, 64)

    def test_rosser_sum_oracle(self, sieve_small):
        assert contains_frozen(rosser_log_sum(sieve_small, 10, 128), ROSSER_SUM_10)

    def test_rosser_sum_constant_between_primes(self, sieve_small):
        at3 = rosser_log_sum(sieve_small, 3, 128)
        at4 = rosser_log_sum(sieve_small, 4, 128)
        assert at3.lo == at4.lo and at3.hi == at4.hi

    def test_c7_partial_oracle(self, sieve_small):
        assert contains_frozen(c7_series_partial(sieve_small, 3, 128), C7_PARTIAL_3)

    def test_c7_partial_monotone(self, sieve_small):
        a = c7_series_partial(sieve_small, 100, 128)
        b = c7_series_partial(sieve_small, 10_000, 128)
        assert a.lo <= b.lo and a.hi <= b.hi

    def test_ln_int_contains(self, sieve_small):
        assert contains_frozen(ln_int(2, 128), "0.6931471805599453094172321214581765680755")
