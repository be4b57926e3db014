"""Brute-force oracles shared by the test modules.

These deliberately avoid the package's own factorization and sieve code.
"""

from __future__ import annotations

import sys
from functools import lru_cache

import pytest


def naive_is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@lru_cache(maxsize=None)
def _naive_primes(x: int) -> tuple[int, ...]:
    return tuple(n for n in range(2, x + 1) if naive_is_prime(n))


def naive_primes(x: int) -> list[int]:
    return list(_naive_primes(x))


def order_mod(g: int, p: int) -> int:
    """Multiplicative order of g mod p by repeated multiplication (0 if p | g)."""
    g %= p
    if g == 0:
        return 0
    k, v = 1, g
    while v != 1:
        v = v * g % p
        k += 1
    return k


def brute_has_root(g: int, p: int) -> bool:
    if p == 2:
        return g % 2 == 1
    return order_mod(g, p) == p - 1


def naive_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        if n % d == 0:
            n //= d
        d += 1
    return True


@pytest.fixture(scope="session")
def primes_2000() -> list[int]:
    return naive_primes(2000)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "_RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
