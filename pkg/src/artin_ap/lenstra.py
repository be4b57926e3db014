"""Independent route to delta(a, m, g): Lenstra's series over squarefree k.

    delta(a, m, g) = sum_k mu(k) c_a(k) / [Q(zeta_m, zeta_k, g^(1/k)) : Q]

with the field degree k1 phi([m,k]) / eps(m,k) and the splitting indicator
c_a(k) given by two congruence conditions.  No field arithmetic is done.

The truncated sum is bracketed exactly: each term 1/deg is rounded down
and up to a multiple of 2**-SCALE_BITS with integer arithmetic, so the
partial-sum interval is rigorous without any floating point.  The tail
k > N is bounded using phi(k) >= sqrt(k/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator

import numpy as np

from .arith import GInvariants, Rational, euler_phi, kronecker, lcm, mobius, require_squarefree
from .density import g_invariants, moree_context
from .interval import IntervalReal
from .sieve import small_primes

SCALE_BITS = 128


@dataclass(frozen=True)
class SeriesTerm:
    k: int
    c_a: int
    degree: int
    value: Rational  # mu(k) * c_a / degree


def _epsilon(m: int, k: int, abs_delta: int) -> int:
    return 2 if k % 2 == 0 and lcm(m, k) % abs_delta == 0 else 1


def field_degree(m: int, k: int, ginv: GInvariants) -> int:
    """Degree of Q(zeta_m, zeta_k, g^(1/k)) over Q, for squarefree k."""
    require_squarefree(k)
    k1 = k // gcd(k, ginv.h)
    return k1 * euler_phi(lcm(m, k)) // _epsilon(m, k, ginv.abs_delta)


def c_a(a: int, m: int, k: int, ginv: GInvariants, gamma: int) -> int:
    """1 if the class a mod m is compatible with splitting in the degree-k Kummer field."""
    require_squarefree(k)
    if (a - 1) % gcd(m, k):
        return 0
    d = ginv.abs_delta
    if k % 2 == 0 and k % d and lcm(m, k) % d == 0 and kronecker(gamma, a) != 1:
        return 0
    return 1


def series_terms(a: int, m: int, g: int, max_k: int) -> Iterator[SeriesTerm]:
    """Exact terms for squarefree k <= max_k (slow path, for checking)."""
    ctx = moree_context(a, m, g)
    for k in range(1, max_k + 1):
        mu = mobius(k)
        if mu == 0:
            continue
        ca = c_a(a, m, k, ctx.ginv, ctx.gamma)
        deg = field_degree(m, k, ctx.ginv)
        yield SeriesTerm(k=k, c_a=ca, degree=deg, value=Fraction(mu * ca, deg))


def partial_sum(a: int, m: int, g: int, max_k: int) -> Rational:
    """Exact rational partial sum over k <= max_k."""
    return sum((t.value for t in series_terms(a, m, g, max_k)), Fraction(0))


def _sqrt_up(r: Fraction, bits: int = 64) -> Fraction:
    y = (r.numerator << (2 * bits)) // r.denominator
    return Fraction(isqrt(y) + 1, 1 << bits)


def series_tail_bound(m: int, h: int, max_k: int) -> Fraction:
    """Bound on sum_{k > max_k} |term|.

    |term| <= 2 (k,h) phi((m,k)) / (k phi(k) phi(m)) <= (2hm/phi(m)) * sqrt(2) k^(-3/2),
    and sum_{k > N} k^(-3/2) <= 2/sqrt(N).
    """
    return Fraction(2 * h * m, euler_phi(m)) * _sqrt_up(Fraction(8, max_k))


@lru_cache(maxsize=4)
def _tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Squarefree k <= n with their Moebius values and totients."""
    mu = np.ones(n + 1, dtype=np.int8)
    phi = np.arange(n + 1, dtype=np.int64)
    for p in small_primes(n).tolist():
        mu[p::p] *= -1
        mu[p * p :: p * p] = 0
        phi[p::p] -= phi[p::p] // p
    mu[0] = 0
    ks = np.flatnonzero(mu).astype(np.int64)
    return ks, mu[ks], phi[ks]


def _bracket_sum(degrees: np.ndarray, sign: int, scale: int) -> tuple[int, int]:
    """Integer (lo, hi) with lo <= scale * sum(sign/d) <= hi."""
    lo = hi = 0
    values, counts = np.unique(degrees, return_counts=True)
    for d, c in zip(values.tolist(), counts.tolist()):
        fl = scale // d
        ce = fl if fl * d == scale else fl + 1
        lo += c * fl
        hi += c * ce
    return (lo, hi) if sign > 0 else (-hi, -lo)


def delta_series(a: int, m: int, g: int, max_k: int = 10**5) -> IntervalReal:
    """Enclosure of Lenstra's series for delta(a, m, g), truncated at max_k."""
    if max_k < 16:
        raise ValueError("max_k must be >= 16")
    ctx = moree_context(a, m, g)
    ginv = ctx.ginv
    d = ginv.abs_delta
    ks, mu, phi_k = _tables(max_k)

    t = np.gcd(ks, m)
    keep = (a - 1) % t == 0
    lcm_mk = ks // t * m
    even = ks % 2 == 0
    delta_divides = lcm_mk % d == 0
    if kronecker(ctx.gamma, a) != 1:
        keep &= ~(even & (ks % d != 0) & delta_divides)
    eps = np.where(even & delta_divides, 2, 1)

    uniq_t, inv = np.unique(t[keep], return_inverse=True)
    phi_t = np.array([euler_phi(int(v)) for v in uniq_t], dtype=np.int64)[inv]
    k_sel = ks[keep]
    k1 = k_sel // np.gcd(k_sel, ginv.h)
    phi_m = euler_phi(m)
    if phi_m * max_k * max_k >= 2**62:
        k1, phi_t = k1.astype(object), phi_t.astype(object)
    degree = k1 * (phi_k[keep] // phi_t) * phi_m // eps[keep]

    scale = 1 << SCALE_BITS
    mu_sel = mu[keep]
    lo_p, hi_p = _bracket_sum(degree[mu_sel == 1], 1, scale)
    lo_n, hi_n = _bracket_sum(degree[mu_sel == -1], -1, scale)
    tail = series_tail_bound(m, ginv.h, max_k)
    return IntervalReal(Fraction(lo_p + lo_n, scale) - tail, Fraction(hi_p + hi_n, scale) + tail)


def partial_sum_bracket(a: int, m: int, g: int, max_k: int) -> IntervalReal:
    """The bracketed partial sum of :func:`delta_series` without the tail widening."""
    enclosure = delta_series(a, m, g, max_k)
    tail = series_tail_bound(m, g_invariants(g).h, max_k)
    return IntervalReal(enclosure.lo + tail, enclosure.hi - tail)
