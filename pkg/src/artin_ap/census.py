"""Empirical prime census: primitive roots, Kummer splitting sets, squarefree shifts.

All counting runs over numpy arrays of primes, one sieve segment at a
time.  Modular exponentiation is vectorized in uint64, which is exact for
moduli below 2**32; larger primes fall back to Python's ``pow``.

Conventions
-----------
* p = 2 has primitive root g iff g is odd (the unit group mod 2 is trivial).
  Primes dividing g never have g as a primitive root.
* P_k (k squarefree) is the set of p with k | p-1 and g^((p-1)/k) = 1 mod p;
  P_1 is the set of all primes.
* |ap+b| = 1 counts as squarefree, ap+b = 0 does not.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd, isqrt
from pathlib import Path
from typing import Optional

import numpy as np
from scipy import integrate

from .arith import euler_phi, require_squarefree, u0
from .density import delta, g_invariants, moree_context
from .errors import ArtinError, NotCoprime
from .lenstra import c_a as splitting_indicator
from .lenstra import field_degree
from .sieve import DEFAULT_SEGMENT, SpfTable, odd_primes_in_range, segment_bounds, small_primes

MAX_X = 2**40
# Above this the SPF table (one byte per integer) is replaced by trial division.
SPF_LIMIT = 2 * 10**8
_VEC_MOD_LIMIT = 2**32


def powmod_vec(base: np.ndarray, exp: np.ndarray, mod: np.ndarray) -> np.ndarray:
    """Elementwise base**exp % mod for nonnegative int64 arrays, base < mod."""
    if mod.size == 0:
        return np.zeros(0, dtype=np.int64)
    if int(mod.max()) >= _VEC_MOD_LIMIT:
        return np.array(
            [pow(int(b), int(e), int(n)) for b, e, n in zip(base, exp, mod)], dtype=np.int64
        )
    b = base.astype(np.uint64)
    e = exp.astype(np.uint64)
    n = mod.astype(np.uint64)
    r = np.ones_like(b)
    one = np.uint64(1)
    while True:
        r = np.where((e & one).astype(bool), r * b % n, r)
        e >>= one
        if not e.any():
            break
        b = b * b % n
    return r.astype(np.int64)


def _strip(cof: np.ndarray, q: np.ndarray) -> np.ndarray:
    while True:
        hit = cof % q == 0
        if not hit.any():
            return cof
        cof[hit] //= q[hit]


def primitive_root_mask(
    g: int, primes: np.ndarray, spf: Optional[SpfTable] = None, base: Optional[np.ndarray] = None
) -> np.ndarray:
    """Boolean mask: g is a primitive root mod p, for an array of odd primes.

    Tests g^((p-1)/q) != 1 for every prime q | p-1.  Factors of p-1 come from
    ``spf`` when given, otherwise from trial division by ``base`` (all primes
    up to sqrt(max p)).
    """
    P = primes
    gm = np.mod(g, P)
    ok = gm != 0
    pm1 = P - 1

    def test(idx: np.ndarray, q: np.ndarray | int) -> None:
        r = powmod_vec(gm[idx], pm1[idx] // q, P[idx])
        ok[idx[r == 1]] = False

    test(np.flatnonzero(ok), 2)
    cof = pm1 // (pm1 & -pm1)
    if spf is not None:
        while True:
            idx = np.flatnonzero(ok & (cof > 1))
            if idx.size == 0:
                break
            c = cof[idx]
            q = spf.smallest_odd(c)
            test(idx, q)
            cof[idx] = _strip(c, q)
        return ok
    if base is None:
        base = small_primes(isqrt(int(P.max())) if P.size else 1)
    for q in base.tolist():
        if q == 2:
            continue
        idx = np.flatnonzero(ok & (cof % q == 0))
        if idx.size:
            test(idx, q)
            c = cof[idx]
            cof[idx] = _strip(c, np.full_like(c, q))
    idx = np.flatnonzero(ok & (cof > 1))
    if idx.size:
        test(idx, cof[idx])
    return ok


def pk_mask(g: int, primes: np.ndarray, k: int) -> np.ndarray:
    """Membership of each prime in P_k (k squarefree); P_1 is everything."""
    if k == 1:
        return np.ones(primes.size, dtype=bool)
    out = np.zeros(primes.size, dtype=bool)
    idx = np.flatnonzero((primes - 1) % k == 0)
    if idx.size:
        P = primes[idx]
        r = powmod_vec(np.mod(g, P), (P - 1) // k, P)
        out[idx] = r == 1
    return out


def is_primitive_root(g: int, p: int, spf: Optional[SpfTable] = None) -> int:
    """Scalar primitive-root test for a prime p."""
    if p == 2:
        return int(g % 2 == 1)
    mask = primitive_root_mask(g, np.array([p], dtype=np.int64), spf)
    return int(mask[0])


def _check_x(x: int) -> None:
    if not 2 <= x <= MAX_X:
        raise ArtinError(f"x = {x} outside [2, 2**40]")


def _segments(
    x: int, segment_size: int, with_spf: bool = True
) -> tuple[list[tuple[int, int]], np.ndarray, Optional[SpfTable]]:
    base = small_primes(isqrt(x))
    spf = SpfTable(x) if with_spf and x <= SPF_LIMIT else None
    return segment_bounds(x, segment_size), base, spf


@dataclass(frozen=True)
class CensusConfig:
    g: int
    x_limit: int
    m: int = 1
    segment_size: int = DEFAULT_SEGMENT
    thread_count: int = 1

    def __post_init__(self) -> None:
        if not 100 <= self.x_limit <= MAX_X:
            raise ArtinError("x_limit must lie in [100, 2**40]")
        if self.m < 1:
            raise ArtinError("m must be positive")
        if self.segment_size < 2**16:
            raise ArtinError("segment_size must be >= 2**16")
        if self.thread_count < 1:
            raise ArtinError("thread_count must be >= 1")


@dataclass
class CensusResult:
    g: int
    x_limit: int
    m: int
    counts: dict[int, int] = field(default_factory=dict)
    total_primes: int = 0
    total_primroot: int = 0

    def count(self, a: int) -> int:
        return self.counts.get(a % self.m, 0)


def _census_segment(g: int, m: int, lo: int, hi: int, base, spf) -> tuple[np.ndarray, int, int]:
    P = odd_primes_in_range(lo, hi, base)
    mask = primitive_root_mask(g, P, spf, base)
    counts = np.bincount(P[mask] % m, minlength=m)
    return counts, int(P.size), int(mask.sum())


def run_census(cfg: CensusConfig) -> CensusResult:
    """Count primes p <= x with primitive root g, split by p mod m."""
    g, x, m = cfg.g, cfg.x_limit, cfg.m
    g_invariants(g)
    bounds, base, spf = _segments(x, cfg.segment_size)

    def work(bound: tuple[int, int]):
        return _census_segment(g, m, bound[0], bound[1], base, spf)

    if cfg.thread_count > 1:
        with ThreadPoolExecutor(cfg.thread_count) as pool:
            parts = list(pool.map(work, bounds))
    else:
        parts = [work(b) for b in bounds]

    counts = np.zeros(m, dtype=np.int64)
    total_primes = total_root = 0
    for c, n_p, n_r in parts:
        counts += c
        total_primes += n_p
        total_root += n_r
    total_primes += 1  # p = 2
    if g % 2:
        counts[2 % m] += 1
        total_root += 1
    table = {a: int(counts[a]) for a in range(m) if gcd(a, m) == 1 or counts[a]}
    return CensusResult(g, x, m, table, total_primes, total_root)


def _all_prime_segments(x: int, with_spf: bool = True, segment_size: int = DEFAULT_SEGMENT):
    bounds, base, spf = _segments(x, segment_size, with_spf)
    for i, (lo, hi) in enumerate(bounds):
        P = odd_primes_in_range(lo, hi, base)
        if i == 0:
            P = np.concatenate([np.array([2], dtype=np.int64), P])
        yield P, base, spf


def p_k_count(x: int, m: int, a: int, k: int, g: int) -> int:
    """#{p <= x : p = a mod m, p in P_k}."""
    _check_x(x)
    require_squarefree(k)
    if gcd(a, m) != 1:
        raise NotCoprime(f"gcd(a={a}, m={m}) > 1")
    g_invariants(g)
    total = 0
    for P, _, _ in _all_prime_segments(x, with_spf=False):
        sel = P[P % m == a % m]
        total += int(pk_mask(g, sel, k).sum())
    return total


def li(x: float) -> float:
    """Offset logarithmic integral: integral from 2 to x of dt / log t."""
    if x < 2:
        raise ValueError("li needs x >= 2")
    if x == 2:
        return 0.0
    # with t = e^u the integrand becomes e^u / u, smooth on the whole range
    val, _ = integrate.quad(
        lambda u: math.exp(u) / u, math.log(2.0), math.log(x), epsabs=0.0, epsrel=1e-13, limit=200
    )
    return val


@dataclass(frozen=True)
class ChebotarevReport:
    observed: int
    predicted: float
    ratio: Optional[float]


def chebotarev_check(x: int, m: int, a: int, k: int, g: int) -> ChebotarevReport:
    """Compare P_k(x; m, a) with eps(m,k) / (k1 phi([m,k])) * li(x)."""
    require_squarefree(k)
    ginv = g_invariants(g)
    ctx = moree_context(a, m, g)
    observed = p_k_count(x, m, a, k, g)
    if splitting_indicator(a, m, k, ginv, ctx.gamma):
        predicted = li(x) / field_degree(m, k, ginv)
    else:
        predicted = 0.0
    if predicted:
        ratio: Optional[float] = observed / predicted
    else:
        ratio = None
    return ChebotarevReport(observed, predicted, ratio)


def squarefree_shift_mask(primes: np.ndarray, a: int, b: int) -> np.ndarray:
    """|a p + b| squarefree, via sieving p = u0(d) mod d^2 for primes d."""
    if primes.size == 0:
        return np.zeros(0, dtype=bool)
    top = a * int(primes.max()) + abs(b)
    if top >= 2**62:
        raise ArtinError("a*x + |b| too large for the census")
    bad = a * primes + b == 0
    for d in small_primes(isqrt(top)).tolist():
        if a % d == 0:
            continue  # d | a and d | ap+b would force d | b
        bad |= primes % (d * d) == u0(a, b, d)
    return ~bad


def squarefree_shift_count(x: int, a: int, b: int, g: int) -> int:
    """#{p <= x : g primitive root mod p and |a p + b| squarefree}."""
    _check_x(x)
    if a < 1 or b == 0:
        raise ArtinError("need a > 0 and b != 0")
    if gcd(a, b) != 1:
        raise NotCoprime(f"gcd(a={a}, b={b}) > 1")
    g_invariants(g)
    total = 0
    for P, base, spf in _all_prime_segments(x):
        root = np.zeros(P.size, dtype=bool)
        odd = P > 2
        root[odd] = primitive_root_mask(g, P[odd], spf, base)
        root[~odd] = g % 2 == 1
        R = P[root]
        total += int(squarefree_shift_mask(R, a, b).sum())
    return total


def error_diagnostic(x: int, m: int, a: int, g: int, census: CensusResult) -> float:
    """Normalized deviation of pi_g(x; m, a) from delta * x / log x.

    |observed - delta x/log x| * phi(m) (log x)^2 / (x log max(|g|,2) max(log 2m, log log x))
    """
    if census.x_limit != x or census.m != m or census.g != g:
        raise ArtinError("census does not cover the requested (g, x, m)")
    lx = math.log(x)
    main = float(delta(a % m or m, m, g).enclose().mid) * x / lx
    observed = census.count(a)
    scale = euler_phi(m) * lx * lx / (x * math.log(max(abs(g), 2)) * max(math.log(2 * m), math.log(lx)))
    return abs(observed - main) * scale


# --- CSV cache -----------------------------------------------------------

CSV_HEADER = ["g", "x", "m", "a", "count"]


def write_census_csv(result: CensusResult, path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for a in sorted(result.counts):
            w.writerow([result.g, result.x_limit, result.m, a, result.counts[a]])
        w.writerow([result.g, result.x_limit, result.m, "_total", result.total_primroot])
        w.writerow([result.g, result.x_limit, result.m, "_primes", result.total_primes])
    tmp.replace(path)


def read_census_csv(path: Path) -> CensusResult:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows or list(rows[0].keys()) != CSV_HEADER:
        raise ValueError(f"{path}: not a census CSV")
    g, x, m = int(rows[0]["g"]), int(rows[0]["x"]), int(rows[0]["m"])
    res = CensusResult(g, x, m)
    for row in rows:
        if (int(row["g"]), int(row["x"]), int(row["m"])) != (g, x, m):
            raise ValueError(f"{path}: mixed census keys")
        if row["a"] == "_total":
            res.total_primroot = int(row["count"])
        elif row["a"] == "_primes":
            res.total_primes = int(row["count"])
        else:
            res.counts[int(row["a"])] = int(row["count"])
    return res


def cache_path(cache_dir: Path, g: int, x: int, m: int) -> Path:
    return Path(cache_dir) / f"census_g{g}_x{x}_m{m}.csv"
