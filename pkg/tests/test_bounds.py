"""Bound evaluators against frozen reference values.

Every "oracle:" value was computed once with mpmath (60 significant
digits) from the bound's closed form and frozen as a decimal string;
interval evaluators must contain it, exact evaluators must equal it.
"""

from fractions import Fraction

import pytest
from gmpy2 import mpq

from oracle_util import as_q, contains_frozen

from aplcm.bounds import (
    CONSTANTS,
    SERIES_VALUE,
    PreconditionNotMet,
    StatementId,
    corollary1_interval,
    corollary3_bound,
    farhi_lower,
    lemma6_rhs,
    lemma6_rhs_exact,
    lemma7_sides,
    lemma8_sides,
    reference_bounds,
    theorem1_bound,
    theorem1_log_bound,
    theorem2_bound,
    theorem2_log_bound,
)
from aplcm.core_arith import exp_interval, log_interval


# oracle: mpmath mp.dps=60, formulas evaluated from the decimal constants
THM1_BOUND_123 = "187698.7242426783164796596032256078367441"  # (c1*2*ln2)^3
THM1_LOG_123 = "12.1425934257623613486946642318019721120265"  # 3*ln(c1*2*ln2)
COR1_LO_R2 = "1.09861228866810969139524523692252570464749"  # ln 3
COR1_UP_R2 = "4.04753114192078711623155474393399070400883"  # ln2 + ln ln2 + ln c1
COR3_X6_K2 = "11.6893030833596718565033927287490594084530"  # 6*(c3 + ln2)
COR3_X12_K3 = "16.6322337320086581483714714215351542278849"  # 12*(2c3/3 + ln3/2)
HANSON_X10 = "5.45069975402314271330102372264663540635229"  # c3*10/ln10
ROSSER_PN_N6 = "14.2497453000642857923316737664660385654000"  # 6(ln6 + ln ln6)
ROBIN_N3 = "16.1673205888325997556192703776478547005932"  # c5*ln3/ln ln3
LEMMA7_LHS_B3 = "1.44224957030740838232163831078010958839187"  # 3^(1/3)
LEMMA7_RHS_B3 = "1.73230284289476204248893664203180775634521"  # c6*ln3
LEMMA7_LHS_B30 = "2.81416408996061909173411854184230212904752"  # 2^(1/2) 3^(1/3) 5^(1/5)
LEMMA8_RHS_B2N4 = "29.2843938557751369932305013915335574358036"  # (c4*ln2)^4
EXP_2C3 = "12.3066528713128253385729693794217429422706"  # e^(2*c3)
LN_C7 = "0.755370523740077179690798351309233194907897"  # ln 2.1284


class TestTheorem1:
    def test_bound_contains_oracle(self):
        assert contains_frozen(theorem1_bound(1, 2, 3, 128), THM1_BOUND_123)

    def test_log_bound_contains_oracle(self):
        assert contains_frozen(theorem1_log_bound(1, 2, 3, 128), THM1_LOG_123)

    def test_exponent_ignores_a_below_b(self):
        # n + floor(a/b) is constant for a < b, so bounds coincide exactly
        ref = theorem1_log_bound(1, 5, 9, 128)
        for a in (2, 3, 4):
            iv = theorem1_log_bound(a, 5, 9, 128)
            assert iv.lo == ref.lo and iv.hi == ref.hi

    def test_exponent_grows_with_a_over_b(self):
        base = theorem1_log_bound(1, 2, 5, 128)
        shifted = theorem1_log_bound(5, 2, 5, 128)  # exponent 5+2 instead of 5
        assert shifted.lo > base.hi

    def test_preconditions(self):
        with pytest.raises(PreconditionNotMet):
            theorem1_bound(2, 4, 10, 128)  # gcd != 1
        with pytest.raises(PreconditionNotMet):
            theorem1_bound(1, 1, 10, 128)  # b < 2
        with pytest.raises(PreconditionNotMet):
            theorem1_bound(1, 2, 2, 128)  # n < b+1


class TestTheorem2:
    def test_bound_equals_exact_rational_at_b2(self):
        # b = 2 makes b^(b/(b-1)) = 4 exact, so (4*c2)^3 is rational
        iv = theorem2_bound(2, 3, 128)
        assert iv.contains((4 * CONSTANTS.c2) ** 3)
        assert iv.contains(as_q("119281.780679312942144"))

    def test_log_bound_contains(self):
        # oracle: 5*(ln c2 + 1.5*ln 3)
        assert contains_frozen(
            theorem2_log_bound(3, 5, 128),
            "20.7901934892328006440789191405170633532043",
        )

    def test_preconditions(self):
        with pytest.raises(PreconditionNotMet):
            theorem2_bound(4, 10, 128)  # composite b
        with pytest.raises(PreconditionNotMet):
            theorem2_bound(3, 3, 128)  # n < b+1


class TestFarhi:
    def test_values(self):
        assert farhi_lower(3, 4, 7) == 3 * 5**6
        assert farhi_lower(1, 1, 1) == 1

    def test_preconditions(self):
        with pytest.raises(PreconditionNotMet):
            farhi_lower(2, 4, 3)
        with pytest.raises(PreconditionNotMet):
            farhi_lower(1, 2, 0)


class TestCorollaries:
    def test_cor1_oracles(self):
        lower, upper = corollary1_interval(2, 128)
        assert contains_frozen(lower, COR1_LO_R2)
        assert contains_frozen(upper, COR1_UP_R2)

    def test_cor1_precondition(self):
        with pytest.raises(PreconditionNotMet):
            corollary1_interval(1, 128)

    def test_cor3_oracles(self):
        assert contains_frozen(corollary3_bound(6, 2, 128), COR3_X6_K2)
        assert contains_frozen(corollary3_bound(12, 3, 128), COR3_X12_K3)

    def test_cor3_preconditions(self):
        with pytest.raises(PreconditionNotMet):
            corollary3_bound(100, 4, 128)  # composite k
        with pytest.raises(PreconditionNotMet):
            corollary3_bound(5, 2, 128)  # x < k(k+1)


class TestReferenceBounds:
    def test_oracles(self):
        assert contains_frozen(reference_bounds(StatementId.HANSON, 10, 128), HANSON_X10)
        assert contains_frozen(reference_bounds(StatementId.ROSSER_PN, 6, 128), ROSSER_PN_N6)
        assert contains_frozen(reference_bounds(StatementId.ROBIN, 3, 128), ROBIN_N3)

    def test_domain_edges(self):
        with pytest.raises(PreconditionNotMet):
            reference_bounds(StatementId.HANSON, 1, 128)
        with pytest.raises(PreconditionNotMet):
            reference_bounds(StatementId.ROSSER_PN, 5, 128)
        with pytest.raises(PreconditionNotMet):
            reference_bounds(StatementId.ROBIN, 2, 128)
        with pytest.raises(ValueError):
            reference_bounds(StatementId.THM1, 10, 128)


class TestLemmas:
    def test_lemma7_oracles(self, sieve_small):
        lhs, rhs = lemma7_sides(3, sieve_small, 128)
        assert contains_frozen(lhs, LEMMA7_LHS_B3)
        assert contains_frozen(rhs, LEMMA7_RHS_B3)
        lhs30, _ = lemma7_sides(30, sieve_small, 128)
        assert contains_frozen(lhs30, LEMMA7_LHS_B30)

    def test_lemma7_precondition(self, sieve_small):
        with pytest.raises(PreconditionNotMet):
            lemma7_sides(2, sieve_small, 128)

    def test_lemma8_oracle(self, sieve_small):
        lhs, rhs = lemma8_sides(2, 4, sieve_small, 128)
        assert lhs == 8  # v_2(4!) = 3
        assert contains_frozen(rhs, LEMMA8_RHS_B2N4)

    def test_lemma8_lhs_is_exact_product(self, sieve_small):
        lhs, _ = lemma8_sides(12, 10, sieve_small, 128)
        assert lhs == 2**8 * 3**4  # v_2(10!) = 8, v_3(10!) = 4

    def test_lemma6_exact_rational(self, sieve_small):
        got = lemma6_rhs_exact(1, 2, 3, sieve_small)
        assert got == mpq(1863777823114264721, 7000000000000000)
        assert lemma6_rhs(1, 2, 3, sieve_small, 128).contains(got)

    def test_lemma6_precondition(self, sieve_small):
        with pytest.raises(PreconditionNotMet):
            lemma6_rhs_exact(3, 2, 10, sieve_small)  # a >= b


class TestConstants:
    def test_exact_decimal_rationals(self):
        assert CONSTANTS.c1 == mpq(4130142, 100000)
        assert CONSTANTS.c2 == mpq(1230641, 100000)
        assert SERIES_VALUE == mpq(7553666111, 10**10)

    def test_product_relations_hold_exactly(self):
        assert CONSTANTS.c2 * CONSTANTS.c4 <= CONSTANTS.c1
        assert CONSTANTS.c6 * CONSTANTS.c7 <= CONSTANTS.c4

    def test_exp_2c3_exceeds_c2(self):
        # pins the arithmetic fact behind the one honestly failing check:
        # e^(2*c3) = 12.30665... > c2 = 12.30641, margin about 2.4e-4
        iv = exp_interval(2 * CONSTANTS.c3, 128)
        assert contains_frozen(iv, EXP_2C3)
        assert iv.lo > CONSTANTS.c2

    def test_series_value_below_ln_c7(self):
        iv = log_interval(CONSTANTS.c7, 128)
        assert contains_frozen(iv, LN_C7)
        assert SERIES_VALUE < iv.lo
