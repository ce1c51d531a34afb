"""Exact lcm of finite arithmetic progressions and rigorous bound checking.

The package computes L(a, b, n) = lcm(a, a+b, ..., a+nb) and related
arithmetic quantities exactly, then verifies effective inequalities about
them with directed-rounding interval arithmetic: a PASS is a machine
proof for that instance, never a floating-point impression.
"""

__version__ = "0.1.0"

from .core_arith import (
    DEFAULT_POLICY,
    DomainError,
    Interval,
    PrecisionPolicy,
    exp_interval,
    gcd,
    is_prime,
    lcm,
    legendre_valuation,
    log_interval,
    padic_valuation,
    pow_interval,
)
from .primes import (
    DEFAULT_SIEVE_LIMIT,
    Factorization,
    MemoryBudgetError,
    PrimeSieve,
    SieveRangeError,
    build_sieve,
    c7_series_partial,
    factorize,
    nth_prime,
    omega,
    omega_table,
    pi,
    rosser_log_sum,
    theta_progression,
    theta_snapshots,
)
from .progression import (
    LcmFactorization,
    ProgressionSpec,
    count_multiples,
    euler_phi,
    factorize_L,
    lcm_progression,
    log_lcm_interval,
    m_function,
    m_function_interval,
    reduce_a_greater_b,
    valuation_of_L,
)
from .bounds import (
    CONSTANTS,
    BoundExpression,
    Constants,
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
from .verify import (
    Verdict,
    VerificationRecord,
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
from .campaign import (
    ALL_STATEMENTS,
    GRID_DEFAULTS,
    SIEVE_LIMIT_ENV,
    CampaignConfig,
    CampaignResult,
    TrendReport,
    bateman_trend,
    corollary2_trend,
    default_sieve_limit,
    report_document,
    run_campaign,
    spaced_points,
    write_records_csv,
    write_trend_csv,
)

__all__ = [
    "__version__",
    "DEFAULT_POLICY",
    "DomainError",
    "Interval",
    "PrecisionPolicy",
    "exp_interval",
    "gcd",
    "is_prime",
    "lcm",
    "legendre_valuation",
    "log_interval",
    "padic_valuation",
    "pow_interval",
    "DEFAULT_SIEVE_LIMIT",
    "Factorization",
    "MemoryBudgetError",
    "PrimeSieve",
    "SieveRangeError",
    "build_sieve",
    "c7_series_partial",
    "factorize",
    "nth_prime",
    "omega",
    "omega_table",
    "pi",
    "rosser_log_sum",
    "theta_progression",
    "theta_snapshots",
    "LcmFactorization",
    "ProgressionSpec",
    "count_multiples",
    "euler_phi",
    "factorize_L",
    "lcm_progression",
    "log_lcm_interval",
    "m_function",
    "m_function_interval",
    "reduce_a_greater_b",
    "valuation_of_L",
    "CONSTANTS",
    "BoundExpression",
    "Constants",
    "PreconditionNotMet",
    "StatementId",
    "corollary1_interval",
    "corollary3_bound",
    "farhi_lower",
    "lemma6_rhs",
    "lemma6_rhs_exact",
    "lemma7_sides",
    "lemma8_sides",
    "reference_bounds",
    "theorem1_bound",
    "theorem1_log_bound",
    "theorem2_bound",
    "theorem2_log_bound",
    "Verdict",
    "VerificationRecord",
    "check_hanson_range",
    "check_instance",
    "check_lemma5_divisibility",
    "check_robin_range",
    "check_rosser_pn_range",
    "check_rosser_sum_range",
    "check_series_range",
    "constants_consistency",
    "decide_le",
    "negative_control",
    "resolve_statement",
    "sieve_requirement",
    "verdict_exit_code",
    "worst_verdict",
    "ALL_STATEMENTS",
    "GRID_DEFAULTS",
    "SIEVE_LIMIT_ENV",
    "CampaignConfig",
    "CampaignResult",
    "TrendReport",
    "bateman_trend",
    "corollary2_trend",
    "default_sieve_limit",
    "report_document",
    "run_campaign",
    "spaced_points",
    "write_records_csv",
    "write_trend_csv",
]
