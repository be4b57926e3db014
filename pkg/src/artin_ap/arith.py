"""Exact elementary number theory used by every other module.

Everything here is a pure function of its arguments.  Integers are Python
ints, so there is no overflow; inputs to :func:`factorize` are capped at
2**63 because factorization is plain trial division.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Sequence

from .errors import InvalidG, NotCoprime, NotSquarefree

# Rational numbers are plain fractions.Fraction (always in lowest terms,
# positive denominator).
Rational = Fraction

Factorization = list[tuple[int, int]]

MAX_INPUT = 2**63


def factorize(n: int, spf: Optional[Sequence[int]] = None) -> Factorization:
    """Return the prime factorization of ``n`` as increasing (prime, exponent) pairs.

    ``spf`` may be a smallest-prime-factor table indexed by integer; it is
    used while ``n`` lies inside it.
    """
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    if n > MAX_INPUT:
        raise ValueError(f"factorize input {n} exceeds 2**63")
    out: Factorization = []

    def push(p: int) -> None:
        if out and out[-1][0] == p:
            out[-1] = (p, out[-1][1] + 1)
        else:
            out.append((p, 1))

    if spf is not None:
        while 1 < n < len(spf):
            p = int(spf[n])
            push(p)
            n //= p
        if n == 1:
            return out

    for p in (2, 3):
        while n % p == 0:
            push(p)
            n //= p
    p, step = 5, 2
    while p * p <= n:
        while n % p == 0:
            push(p)
            n //= p
        p += step
        step = 6 - step
    if n > 1:
        push(n)
    return out


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(abs(n))] if n else []


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == [(n, 1)]


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in factorize(abs(n)))


def radical(n: int) -> int:
    r = 1
    for p in prime_divisors(n):
        r *= p
    return r


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError(f"mobius needs n >= 1, got {n}")
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError(f"euler_phi needs n >= 1, got {n}")
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers.

    Conventions: (a/0) = 1 iff a = +-1; (a/-1) = -1 iff a < 0; (a/2) follows
    the mod 8 rule.
    """
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        n >>= v
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd positive n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def mod_pow(base: int, exp: int, modulus: int) -> int:
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(base, exp, modulus)


def mod_inverse(a: int, n: int) -> int:
    if n < 2:
        raise ValueError("modulus must be >= 2")
    if gcd(a, n) != 1:
        raise NotCoprime(f"gcd({a}, {n}) = {gcd(a, n)} > 1")
    return pow(a, -1, n)


def u0(a: int, b: int, d: int) -> int:
    """The residue u mod d**2 with a*u + b == 0 (mod d**2)."""
    if a < 1 or d < 1:
        raise ValueError("u0 needs a >= 1 and d >= 1")
    if gcd(a, d) != 1:
        raise NotCoprime(f"gcd(a={a}, d={d}) > 1")
    mod = d * d
    if mod == 1:
        return 0
    return (-b * mod_inverse(a, mod)) % mod


@dataclass(frozen=True)
class GInvariants:
    """Arithmetic profile of g: g = g1*g2**2, power index h, discriminant delta."""

    g: int
    g1: int
    g2: int
    h: int
    delta: int

    @property
    def abs_delta(self) -> int:
        return abs(self.delta)


def g_invariants(g: int) -> GInvariants:
    if g == 0 or g == -1:
        raise InvalidG(f"g = {g} is excluded")
    if g > 0 and isqrt(g) ** 2 == g:
        raise InvalidG(f"g = {g} is a perfect square")
    fac = factorize(abs(g))
    g1 = -1 if g < 0 else 1
    g2 = 1
    h = 0
    for p, e in fac:
        if e % 2:
            g1 *= p
        g2 *= p ** (e // 2)
        h = gcd(h, e)
    if h == 0:  # |g| = 1, only g = -1 reaches here and it was rejected
        h = 1
    if g < 0:
        while h % 2 == 0:
            h //= 2
    delta = g1 if g1 % 4 == 1 else 4 * g1
    return GInvariants(g=g, g1=g1, g2=g2, h=h, delta=delta)


def require_squarefree(k: int) -> None:
    if k < 1 or not is_squarefree(k):
        raise NotSquarefree(f"{k} is not a squarefree positive integer")
