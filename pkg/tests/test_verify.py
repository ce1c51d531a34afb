"""The comparison engine, per-statement checkers, and sound range scans."""

import logging
import math

import pytest
from gmpy2 import mpq

from aplcm.core_arith import Interval, PrecisionPolicy, log_interval
from aplcm.bounds import StatementId
from aplcm.progression import ProgressionSpec
from aplcm.verify import (
    Verdict,
    check_hanson_range,
    check_instance,
    check_lemma5_divisibility,
    check_robin_range,
    check_rosser_pn_range,
    check_rosser_sum_range,
    check_series_range,
    constants_consistency,
    decide_le,
    negative_control,
    resolve_statement,
    sieve_requirement,
    verdict_exit_code,
    worst_verdict,
)

POLICY = PrecisionPolicy(start_bits=128, max_bits=2048)


class TestDecideLe:
    def test_exact_sides(self):
        v, lhs, rhs, bits = decide_le(lambda b: 5, lambda b: 7, POLICY)
        assert v is Verdict.PASS and bits == 0
        v, *_ = decide_le(lambda b: 7, lambda b: 5, POLICY)
        assert v is Verdict.FAIL
        v, *_ = decide_le(lambda b: mpq(1, 3), lambda b: mpq(1, 3), POLICY)
        assert v is Verdict.PASS  # <= is not <

    def test_escalates_until_decidable(self):
        gap = mpq(1, 2**200)  # invisible at 128 bits, visible at 256
        v, _, _, bits = decide_le(
            lambda b: Interval.from_rational(mpq(1, 3), b),
            lambda b: Interval.from_rational(mpq(1, 3) + gap, b),
            POLICY,
        )
        assert v is Verdict.PASS
        assert bits == 256

    def test_inconclusive_when_sides_coincide(self):
        v, _, _, bits = decide_le(
            lambda b: log_interval(3, b), lambda b: log_interval(3, b), POLICY
        )
        assert v is Verdict.INCONCLUSIVE
        assert bits == POLICY.max_bits

    def test_exact_against_interval(self):
        v, *_ = decide_le(lambda b: 1, lambda b: Interval.from_int(1, b), POLICY)
        assert v is Verdict.PASS
        v, *_ = decide_le(lambda b: Interval.from_int(2, b), lambda b: 1, POLICY)
        assert v is Verdict.FAIL


class TestVerdictPlumbing:
    def test_exit_codes(self):
        assert verdict_exit_code(Verdict.PASS) == 0
        assert verdict_exit_code("SKIPPED") == 0
        assert verdict_exit_code(Verdict.FAIL) == 1
        assert verdict_exit_code("INCONCLUSIVE") == 2

    def test_worst(self):
        assert worst_verdict(["PASS", "SKIPPED"]) is Verdict.PASS
        assert worst_verdict(["PASS", "FAIL", "INCONCLUSIVE"]) is Verdict.FAIL
        assert worst_verdict(["PASS", "INCONCLUSIVE"]) is Verdict.INCONCLUSIVE
        assert worst_verdict(["SKIPPED"]) is Verdict.SKIPPED

    def test_resolve_statement(self):
        assert resolve_statement("eq-a") is StatementId.EQ_A
        assert resolve_statement("THM1") is StatementId.THM1
        assert resolve_statement(StatementId.COR3) is StatementId.COR3
        with pytest.raises(ValueError):
            resolve_statement("nonsense")

    def test_record_round_trip(self, sieve_small):
        rec = check_instance("thm1", {"a": 1, "b": 2, "n": 3}, sieve_small, POLICY)
        d = rec.to_dict()
        assert d["statement"] == "THM1" and d["verdict"] == "PASS"
        assert "ms" in d and "ms" not in rec.canonical()
        assert "THM1" in rec.line() and "PASS" in rec.line()


class TestCheckers:
    def test_thm1_pass(self, sieve_small):
        rec = check_instance("thm1", {"a": 1, "b": 2, "n": 3}, sieve_small, POLICY)
        assert rec.verdict == "PASS" and rec.bits == 128
        assert rec.note == "log-domain comparison"

    def test_thm1_reduction_logged(self, sieve_small, caplog):
        with caplog.at_level(logging.INFO, logger="aplcm.verify"):
            rec = check_instance("thm1", {"a": 7, "b": 2, "n": 5}, sieve_small, POLICY)
        assert rec.verdict == "PASS"
        assert any("reduction" in m for m in caplog.messages)

    def test_thm1_hypothesis_gates(self, sieve_small):
        assert check_instance("thm1", {"a": 5, "b": 2, "n": 1}, sieve_small, POLICY).verdict == "SKIPPED"
        assert check_instance("thm1", {"a": 2, "b": 4, "n": 9}, sieve_small, POLICY).verdict == "SKIPPED"
        assert check_instance("thm1", {"a": 1, "b": 1, "n": 5}, sieve_small, POLICY).verdict == "SKIPPED"

    def test_thm2_gates(self, sieve_small):
        assert check_instance("thm2", {"a": 1, "b": 4, "n": 9}, sieve_small, POLICY).verdict == "SKIPPED"
        assert check_instance("thm2", {"a": 4, "b": 3, "n": 9}, sieve_small, POLICY).verdict == "SKIPPED"
        assert check_instance("thm2", {"a": 2, "b": 3, "n": 5}, sieve_small, POLICY).verdict == "PASS"

    def test_eq_a_small_case(self, sieve_small):
        rec = check_instance("eq_a", {"a": 1, "b": 2, "n": 2}, sieve_small, POLICY)
        assert rec.verdict == "PASS" and rec.bits == 0
        assert rec.lhs == "15" and rec.rhs == "15"

    def test_eq_a_degenerate_n(self, sieve_small):
        for n in (0, 1):
            rec = check_lemma5_divisibility(ProgressionSpec(3, 5, n), sieve_small)
            assert rec.verdict == "PASS", n

    def test_eq_a_grid(self, sieve_small):
        for a in range(1, 7):
            for b in range(1, 7):
                if math.gcd(a, b) != 1:
                    continue
                for n in range(0, 13):
                    rec = check_lemma5_divisibility(ProgressionSpec(a, b, n), sieve_small)
                    assert rec.verdict == "PASS", (a, b, n)

    def test_farhi(self, sieve_small):
        assert check_instance("farhi", {"a": 3, "b": 4, "n": 7}, sieve_small, POLICY).verdict == "PASS"
        assert check_instance("farhi", {"a": 1, "b": 2, "n": 0}, sieve_small, POLICY).verdict == "SKIPPED"

    def test_cor1_both_directions(self, sieve_small):
        lo = check_instance("cor1_lower", {"r": 10}, sieve_small, POLICY)
        up = check_instance("cor1_upper", {"r": 10}, sieve_small, POLICY)
        assert lo.verdict == up.verdict == "PASS"
        assert "250/63" in (lo.rhs, up.lhs)  # 10*M(10) appears exactly

    def test_cor3_gates(self, sieve_small):
        assert check_instance("cor3", {"x": 100, "k": 6, "l": 1}, sieve_small, POLICY).verdict == "SKIPPED"
        assert check_instance("cor3", {"x": 100, "k": 7, "l": 7}, sieve_small, POLICY).verdict == "SKIPPED"
        assert check_instance("cor3", {"x": 10, "k": 7, "l": 3}, sieve_small, POLICY).verdict == "SKIPPED"
        assert check_instance("cor3", {"x": 5000, "k": 7, "l": 3}, sieve_small, POLICY).verdict == "PASS"

    def test_missing_parameter_raises(self, sieve_small):
        with pytest.raises(ValueError, match="missing parameter"):
            check_instance("thm1", {"a": 1, "b": 2}, sieve_small, POLICY)

    def test_pass_stable_at_higher_precision(self, sieve_small):
        stiff = PrecisionPolicy(start_bits=256, max_bits=2048)
        for sid, params in (
            ("thm1", {"a": 1, "b": 2, "n": 3}),
            ("lemma7", {"b": 30}),
            ("cor1_upper", {"r": 97}),
        ):
            a = check_instance(sid, params, sieve_small, POLICY)
            b = check_instance(sid, params, sieve_small, stiff)
            assert a.verdict == b.verdict == "PASS"

    def test_sieve_requirement(self):
        assert sieve_requirement("thm1", {"a": 1, "b": 2, "n": 3}) == 7
        assert sieve_requirement("lemma7", {"b": 500}) == 500
        assert sieve_requirement("farhi", {"a": 9, "b": 10, "n": 100}) == 2
        assert sieve_requirement("rosser_pn", {"n": 100}) > 100 * math.log(100)


class TestControls:
    def test_constants_consistency_verdicts(self):
        records = constants_consistency(POLICY)
        by_id = {r.statement: r.verdict for r in records}
        assert by_id["CONST_C2_C4_LE_C1"] == "PASS"
        assert by_id["CONST_C6_C7_LE_C4"] == "PASS"
        assert by_id["CONST_SERIES_LT_LN_C7"] == "PASS"
        # rigorously red: e^(2*c3) exceeds c2 by ~2.4e-4
        assert by_id["CONST_EXP_2C3_LE_C2"] == "FAIL"

    def test_negative_control_fires(self, sieve_small):
        records = negative_control(sieve_small, POLICY)
        assert len(records) == 10
        assert all(r.statement == "THM1_NEGATIVE_CONTROL" for r in records)
        assert sum(1 for r in records if r.verdict == "FAIL") >= 1


class TestRangeChecks:
    def test_rosser_sum_range(self, sieve_small):
        rec = check_rosser_sum_range(sieve_small, POLICY, 2, 10_000)
        assert rec.verdict == "PASS"
        assert "tightest at n=2" in rec.note

    def test_rosser_pn_range(self, sieve_small):
        rec = check_rosser_pn_range(sieve_small, POLICY, 6, None)
        assert rec.verdict == "PASS"
        assert rec.params == {"n_min": 6, "n_max": 1229}

    def test_hanson_range(self, sieve_small):
        rec = check_hanson_range(sieve_small, POLICY, 2, 10_000)
        assert rec.verdict == "PASS"
        assert "tightest at x=113" in rec.note

    def test_robin_range(self, sieve_small):
        rec = check_robin_range(sieve_small, POLICY, 3, 10_000)
        assert rec.verdict == "PASS"

    def test_series_range(self, sieve_small):
        rec = check_series_range(sieve_small, POLICY, 10_000)
        assert rec.verdict == "PASS"

    def test_range_validation(self, sieve_small):
        with pytest.raises(ValueError):
            check_rosser_sum_range(sieve_small, POLICY, 2, 10**7)
        with pytest.raises(ValueError):
            check_rosser_pn_range(sieve_small, POLICY, 5, 100)

    def test_block_scan_agrees_with_pointwise(self, sieve_small):
        # every instance the scan promises is re-checkable one by one
        for x in (2, 3, 113, 114, 9973, 10_000):
            rec = check_instance("hanson", {"x": x}, sieve_small, POLICY)
            assert rec.verdict == "PASS", x
