"""Closed-form densities of primes with primitive root g in a progression.

Every density is an exact rational multiple of Artin's constant
A = prod_p (1 - 1/(p(p-1))).  The infinite product over primes outside a
finite set S is rewritten as A / prod_{p in S} (1 - 1/(p(p-1))), so all
finite bookkeeping stays in exact rationals and A is only enclosed
numerically at the very end (see :func:`artin_constant`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from . import arith
from .arith import GInvariants, Rational, euler_phi, kronecker, mobius, prime_divisors
from .errors import DegenerateH, NotCoprime
from .interval import IntervalReal
from .sieve import prime_segments

# Primes <= this bound give an Artin-constant enclosure narrower than 1e-9.
DEFAULT_ARTIN_BOUND = 10**8

_U = 2.0**-53
_WHEEL = 30030  # 2*3*5*7*11*13
_WHEEL_PHI = 5760


@lru_cache(maxsize=4096)
def g_invariants(g: int) -> GInvariants:
    return arith.g_invariants(g)


def _artin_factor(p: int) -> Fraction:
    return 1 - Fraction(1, p * (p - 1))


def _tail_log_bound(bound: int) -> Fraction:
    """Upper bound for -log prod_{p > bound} (1 - 1/(p(p-1))).

    Every prime above ``bound`` (>= 13) is coprime to the wheel W = 30030.
    In each of the phi(W) admissible classes the terms 1/(n(n-1)) with
    n > bound sum to at most 1/((bound+1)bound) + 1/(W bound) (first term
    plus an integral comparison).  -log(1-x) <= x/(1-x) gives the last factor.
    For small bounds the plain estimate sum_{n > bound} 2/(n(n-1)) = 2/bound
    is better, so the smaller of the two is returned.
    """
    per_class = Fraction(1, (bound + 1) * bound) + Fraction(1, _WHEEL * bound)
    wheel = _WHEEL_PHI * per_class * (1 + Fraction(2, bound * bound))
    return min(wheel, Fraction(2, bound))


@lru_cache(maxsize=8)
def artin_constant(tail_bound_prime: int = DEFAULT_ARTIN_BOUND) -> IntervalReal:
    """Rigorous enclosure of Artin's constant.

    The product over p <= ``tail_bound_prime`` is summed in log space with
    ``math.fsum``; the interval is widened by a float error budget (8 units
    in the last place per term, which covers the rounding of 1/(p(p-1))
    and of log1p) and by the prime tail bound of :func:`_tail_log_bound`.
    """
    if tail_bound_prime < 100:
        raise ValueError("tail_bound_prime must be >= 100")
    abs_sum = 0.0
    chunks = []
    for seg in prime_segments(tail_bound_prime, 1 << 21):
        p = seg.astype(np.float64)
        t = np.log1p(-1.0 / (p * (p - 1.0)))
        abs_sum += float(-t.sum())
        chunks.append(math.fsum(t.tolist()))
    # per-chunk fsums are correctly rounded, hence the extra |chunk| terms
    s = math.fsum(chunks)
    err = 8 * _U * abs_sum * 1.01 + 2 * _U * (abs(s) + sum(abs(c) for c in chunks))
    log_lo = math.nextafter(s - err, -math.inf)
    log_hi = math.nextafter(s + err, math.inf)
    lo = math.exp(log_lo)
    hi = math.exp(log_hi)
    for _ in range(2):
        lo = math.nextafter(lo, 0.0)
        hi = math.nextafter(hi, math.inf)
    lo_q = Fraction(lo) * (1 - _tail_log_bound(tail_bound_prime))  # exp(-t) >= 1 - t
    return IntervalReal(lo_q, Fraction(hi))


@dataclass(frozen=True)
class ArtinMultiple:
    """The real number q * A with q exact."""

    q: Rational

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", Fraction(self.q))

    def enclose(self, bound: int = DEFAULT_ARTIN_BOUND) -> IntervalReal:
        return artin_constant(bound) * self.q

    def __add__(self, other: "ArtinMultiple") -> "ArtinMultiple":
        return ArtinMultiple(self.q + other.q)

    def __sub__(self, other: "ArtinMultiple") -> "ArtinMultiple":
        return ArtinMultiple(self.q - other.q)

    def __mul__(self, r: Rational | int) -> "ArtinMultiple":
        return ArtinMultiple(self.q * r)

    __rmul__ = __mul__

    def __truediv__(self, r: Rational | int) -> "ArtinMultiple":
        return ArtinMultiple(self.q / r)

    def __str__(self) -> str:
        return f"({self.q.numerator}/{self.q.denominator})*A"


ZERO = ArtinMultiple(Fraction(0))


def big_a(a: int, m: int, h: int) -> ArtinMultiple:
    if gcd(a, m) != 1:
        raise NotCoprime(f"gcd(a={a}, m={m}) > 1")
    if gcd(gcd(a - 1, m), h) > 1:
        return ZERO
    q = Fraction(1)
    for p in prime_divisors(gcd(a - 1, m)):
        q *= 1 - Fraction(1, p)
    for p in prime_divisors(h):
        if m % p:
            q *= 1 - Fraction(1, p - 1)
    for p in prime_divisors(m * h):
        q /= _artin_factor(p)
    return ArtinMultiple(q)


def c_of_h(h: int) -> ArtinMultiple:
    """Hooley's C(h)."""
    q = Fraction(1)
    for p in prime_divisors(h):
        q *= (1 - Fraction(1, p - 1)) / _artin_factor(p)
    return ArtinMultiple(q)


@dataclass(frozen=True)
class MoreeContext:
    a: int
    m: int
    ginv: GInvariants
    b: int
    gamma: int


def _odd_sign(b: int) -> int:
    """(-1)**((b-1)/2) for odd b of either sign."""
    return -1 if ((b - 1) // 2) % 2 else 1


def moree_context(a: int, m: int, g: int) -> MoreeContext:
    if a < 1 or m < 1:
        raise ValueError("a and m must be positive")
    ginv = g_invariants(g)
    if gcd(a, m) != 1:
        raise NotCoprime(f"gcd(a={a}, m={m}) > 1")
    md = gcd(m, ginv.abs_delta)
    b = ginv.delta // md
    gamma = _odd_sign(b) * md if b % 2 else 1
    return MoreeContext(a=a, m=m, ginv=ginv, b=b, gamma=gamma)


def _kummer_denominator(n: int, h: int) -> int:
    """prod_{p|n, p|h} (p-2) * prod_{p|n, p not| h} (p^2-p-1)."""
    den = 1
    for p in prime_divisors(n):
        den *= p - 2 if h % p == 0 else p * p - p - 1
    return den


def correction_factor(ctx: MoreeContext) -> Rational:
    if ctx.b % 2 == 0:
        return Fraction(1)  # mu(|2b|) = 0
    mu_2b = -mobius(abs(ctx.b))
    if mu_2b == 0:
        return Fraction(1)
    den = _kummer_denominator(ctx.b, ctx.ginv.h)
    return 1 + Fraction(kronecker(ctx.gamma, ctx.a) * mu_2b, den)


def delta(a: int, m: int, g: int) -> ArtinMultiple:
    """delta(a, m, g): density of primes p = a mod m having g as primitive root."""
    ctx = moree_context(a, m, g)
    base = big_a(a, m, ctx.ginv.h)
    if base.q == 0:
        return ZERO
    return base * correction_factor(ctx) / euler_phi(m)


def hooley_density(g: int) -> ArtinMultiple:
    ginv = g_invariants(g)
    c = c_of_h(ginv.h)
    if ginv.g1 % 4 != 1:
        return c
    den = _kummer_denominator(ginv.g1, ginv.h)
    return c * (1 - Fraction(mobius(abs(ginv.g1)), den))


def delta_natural(a: int, m: int, g: int) -> Rational:
    """A(a,m,h) / (phi(m) C(h)): the correction-free relative density."""
    ginv = g_invariants(g)
    c = c_of_h(ginv.h)
    if c.q == 0:
        raise DegenerateH(f"C(h) = 0 for h = {ginv.h}")
    return big_a(a, m, ginv.h).q / (euler_phi(m) * c.q)


def coprime_residues(m: int) -> list[int]:
    """Representatives 1..m of the classes coprime to m."""
    return [a for a in range(1, m + 1) if gcd(a, m) == 1]


def partition_sum(m: int, g: int) -> ArtinMultiple:
    """sum over a mod m (coprime) of delta(a, m, g)."""
    return sum((delta(a, m, g) for a in coprime_residues(m)), ZERO)


__all__ = [
    "ArtinMultiple",
    "DEFAULT_ARTIN_BOUND",
    "MoreeContext",
    "artin_constant",
    "big_a",
    "c_of_h",
    "coprime_residues",
    "correction_factor",
    "delta",
    "delta_natural",
    "g_invariants",
    "hooley_density",
    "moree_context",
    "partition_sum",
]
