"""Shared fixtures: sieves are expensive, so build each size once per session."""

import pytest
from hypothesis import HealthCheck, settings

from aplcm.primes import build_sieve

settings.register_profile(
    "pkg",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("pkg")


@pytest.fixture(scope="session")
def sieve_small():
    return build_sieve(10_000)


@pytest.fixture(scope="session")
def sieve_mid():
    return build_sieve(200_000)


@pytest.fixture(scope="session")
def sieve_big():
    return build_sieve(10_000_000)
