"""Leading constant for primes p with primitive root g and a*p + b squarefree.

The constant is a finite residue-class sum of densities times an Euler
product over the primes not dividing Delta, a*b or (a+b, h):

    C(g, a, b) = S(g, a, b) * prod_p F_p

Residue sum.  The local condition p**2 not| a*c + b for p | Delta depends on
c modulo p**2, so the sum runs over c modulo M = lcm(|Delta|, rad(Delta)**2)
rather than |Delta| alone.  The two agree when Delta is a power of 2 times
a unit (g = 2, g = 8 give M = 8); odd p | Delta enlarge M.  The Moebius form
sum_{d | rad(Delta)} mu(d) delta(u0(d), d**2, g) is provided as an
independent check.

Euler product tail.  Each omitted factor lies in (1 - 2/p**2, 1) for p >= 5,
and -log(1 - t) <= t/(1 - t), so for B >= 100

    -log prod_{p > B} F_p <= sum_{n > B} 2/(n**2 - 2) <= 3/B,

hence the tail lies in [exp(-3/B), 1] which is contained in [1 - 3/B, 1].
The partial product is bracketed in fixed point with integer floor/ceil,
so the enclosure is rigorous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import GInvariants, Rational, is_squarefree, lcm, mobius, prime_divisors, radical, u0
from .density import ZERO, ArtinMultiple, _odd_sign, delta, delta_natural, g_invariants
from .errors import NotCoprime, NotSquarefree, PreconditionViolated
from .interval import IntervalReal
from .sieve import prime_segments

SCALE_BITS = 128


@dataclass(frozen=True)
class ShiftContext:
    a: int
    b: int
    ginv: GInvariants

    def __post_init__(self) -> None:
        if self.a < 1:
            raise ValueError(f"a must be positive, got {self.a}")
        if self.b == 0:
            raise ValueError("b must be nonzero")
        if gcd(self.a, self.b) != 1:
            raise NotCoprime(f"gcd(a={self.a}, b={self.b}) > 1")

    @classmethod
    def make(cls, g: int, a: int, b: int) -> "ShiftContext":
        return cls(a=a, b=b, ginv=g_invariants(g))

    @property
    def g(self) -> int:
        return self.ginv.g


@dataclass(frozen=True)
class DFactorData:
    d: int
    b_M: int
    gamma_d: int


def gamma_d_data(d: int, ctx: ShiftContext) -> DFactorData:
    if d < 1 or not is_squarefree(d):
        raise NotSquarefree(f"d={d} is not a squarefree positive integer")
    if gcd(ctx.a, d) != 1:
        raise NotCoprime(f"gcd(a={ctx.a}, d={d}) > 1")
    delta_ = ctx.ginv.delta
    common = gcd(abs(delta_), d * d)
    b_m = delta_ // common
    gamma = _odd_sign(b_m) * common if b_m % 2 else 1
    return DFactorData(d=d, b_M=b_m, gamma_d=gamma)


def _qualifies(p: int, ctx: ShiftContext) -> bool:
    return (
        ctx.ginv.abs_delta % p != 0
        and (ctx.a * ctx.b) % p != 0
        and gcd(ctx.a + ctx.b, ctx.ginv.h) % p != 0
    )


def _factor_parts(p: int, ctx: ShiftContext) -> tuple[int, int]:
    """(N, D) with F_p = 1 - N/D."""
    at_sum = (ctx.a + ctx.b) % p == 0
    at_h = ctx.ginv.h % p == 0
    if at_sum:
        return p - 1, p**3 - p * p - p
    if at_h:
        return 1, p * p - 2 * p
    return 1, p * p - p - 1


def euler_factor(p: int, ctx: ShiftContext) -> Rational:
    if not _qualifies(p, ctx):
        raise PreconditionViolated(
            f"p={p} divides Delta, a*b or (a+b, h) for g={ctx.g}, a={ctx.a}, b={ctx.b}"
        )
    n, d = _factor_parts(p, ctx)
    return 1 - Fraction(n, d)


def factor_identity_check(p: int, ctx: ShiftContext) -> int:
    lhs = euler_factor(p, ctx)
    rhs = 1 - delta_natural(u0(ctx.a, ctx.b, p), p * p, ctx.g)
    return int(lhs == rhs)


def euler_product(ctx: ShiftContext, prime_bound: int) -> IntervalReal:
    """Enclosure of the full Euler product from primes <= prime_bound plus the tail."""
    if prime_bound < 100:
        raise ValueError("prime_bound must be >= 100")
    scale = 1 << SCALE_BITS
    lo = hi = scale
    for seg in prime_segments(prime_bound):
        for p in seg.tolist():
            if not _qualifies(p, ctx):
                continue
            n, d = _factor_parts(p, ctx)
            lo -= -(-lo * n // d)
            hi -= hi * n // d
    tail = 1 - Fraction(3, prime_bound)
    return IntervalReal(Fraction(lo, scale) * tail, Fraction(hi, scale))


def residue_modulus(ginv: GInvariants) -> int:
    """M = lcm(|Delta|, rad(Delta)**2): the period of the local conditions at p | Delta."""
    r = radical(ginv.abs_delta)
    return lcm(ginv.abs_delta, r * r)


def residue_sum(ctx: ShiftContext) -> ArtinMultiple:
    """Sum of delta(c, M, g) over coprime c mod M with p**2 not| a*c + b for all p | Delta."""
    m = residue_modulus(ctx.ginv)
    ps = prime_divisors(ctx.ginv.abs_delta)
    total = ZERO
    for c in range(1, m + 1):
        if gcd(c, m) != 1:
            continue
        v = ctx.a * c + ctx.b
        if any(v % (p * p) == 0 for p in ps):
            continue
        total = total + delta(c, m, ctx.g)
    return total


def residue_sum_mobius(ctx: ShiftContext) -> ArtinMultiple:
    """sum over squarefree d | Delta with (a, d) = 1 of mu(d) delta(u0(d), d**2, g)."""
    r = radical(ctx.ginv.abs_delta)
    total = ZERO
    for d in range(1, r + 1):
        if r % d or gcd(ctx.a, d) != 1:
            continue
        mod = d * d
        u = u0(ctx.a, ctx.b, d) or mod
        if gcd(u, mod) != 1:
            continue  # the class holds at most one prime
        total = total + delta(u, mod, ctx.g) * mobius(d)
    return total


def shift_leading_constant(ctx: ShiftContext, prime_bound: int) -> IntervalReal:
    s = residue_sum(ctx)
    if s.q == 0:
        return IntervalReal.point(0)
    return (s.enclose() * euler_product(ctx, prime_bound)).rounded()


__all__ = [
    "DFactorData",
    "ShiftContext",
    "euler_factor",
    "euler_product",
    "factor_identity_check",
    "gamma_d_data",
    "residue_modulus",
    "residue_sum",
    "residue_sum_mobius",
    "shift_leading_constant",
]
