import math
from itertools import combinations

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artin_ap.arith import euler_phi, mod_pow
from artin_ap.census import (
    CSV_HEADER,
    CensusConfig,
    CensusResult,
    cache_path,
    chebotarev_check,
    error_diagnostic,
    is_primitive_root,
    li,
    p_k_count,
    powmod_vec,
    read_census_csv,
    run_census,
    squarefree_shift_count,
    write_census_csv,
)
from artin_ap.errors import ArtinError, InvalidG, NotCoprime, NotSquarefree
from artin_ap.sieve import SpfTable, prime_segments, sieve_primes, small_primes

from conftest import brute_has_root, naive_primes, naive_squarefree, order_mod


# --- sieve ----------------------------------------------------------------


def test_sieve_examples():
    assert list(sieve_primes(10)) == [2, 3, 5, 7]
    assert len(list(sieve_primes(100))) == 25


def test_sieve_matches_trial_division():
    assert list(sieve_primes(20000, 1 << 16)) == naive_primes(20000)


def test_two_sieve_variants_agree_at_1e7():
    segmented = sum(seg.size for seg in prime_segments(10**7, 1 << 16))
    plain = small_primes(10**7).size
    assert segmented == plain == 664579


def test_spf_table():
    spf = SpfTable(10**5)
    for n in range(2, 10**5 + 1, 13):
        q = spf[n]
        assert n % q == 0
        assert all(n % d for d in range(2, min(q, math.isqrt(n) + 1)))


# --- primitive roots ------------------------------------------------------


def test_is_primitive_root_examples():
    assert is_primitive_root(2, 3) == 1
    assert is_primitive_root(2, 7) == 0
    # 5 has order 22 mod 23 (5 is a non-residue since (23/5) = (3/5) = -1)
    assert order_mod(5, 23) == 22
    assert is_primitive_root(5, 23) == 1


@pytest.mark.parametrize("g", [2, 3, 5, 8, 12, -2])
def test_primitive_root_oracle(g, primes_2000):
    spf = SpfTable(2000)
    for p in primes_2000[1:]:
        assert is_primitive_root(g, p, spf) == int(brute_has_root(g, p)), (g, p)


def test_primitive_root_mod_p_dividing_g():
    assert is_primitive_root(12, 3) == 0


@given(st.lists(st.integers(min_value=2, max_value=2**32 - 1), min_size=1, max_size=20), st.integers(-50, 50))
@settings(max_examples=200)
def test_powmod_vec(mods, base):
    mods = np.array(mods, dtype=np.int64)
    exps = mods - 1
    got = powmod_vec(np.full_like(mods, base % 2**31), exps, mods)
    assert got.tolist() == [pow(base % 2**31, int(e), int(m)) for e, m in zip(exps, mods)]


# --- census ---------------------------------------------------------------


def test_census_examples():
    r = run_census(CensusConfig(g=2, x_limit=100))
    assert r.total_primroot == 12 and r.total_primes == 25
    roots = [p for p in naive_primes(100) if brute_has_root(2, p)]
    assert roots == [3, 5, 11, 13, 19, 29, 37, 53, 59, 61, 67, 83]
    r4 = run_census(CensusConfig(g=2, x_limit=100, m=4))
    assert r4.count(1) + r4.count(3) == 12
    assert r4.count(1) == sum(1 for p in roots if p % 4 == 1)
    small = [p for p in naive_primes(10) if brute_has_root(2, p)]
    assert small == [3, 5]


@pytest.mark.parametrize("g, m", [(3, 5), (-2, 8), (12, 7), (5, 1), (8, 9)])
def test_census_matches_brute_force(g, m):
    x = 5000
    r = run_census(CensusConfig(g=g, x_limit=x, m=m))
    roots = [p for p in naive_primes(x) if brute_has_root(g, p)]
    assert r.total_primroot == len(roots)
    for a in range(m):
        assert r.count(a) == sum(1 for p in roots if p % m == a)


def test_census_invariants():
    for m in (1, 4, 5, 12):
        r = run_census(CensusConfig(g=3, x_limit=20000, m=m))
        coprime_total = sum(c for a, c in r.counts.items() if math.gcd(a, m) == 1)
        assert coprime_total <= r.total_primroot <= r.total_primes
        exceptional = r.total_primroot - coprime_total
        assert 0 <= exceptional <= len([p for p in (2, 3, 5, 7, 11) if m % p == 0])
    prev = 0
    for x in (100, 1000, 10**4, 10**5):
        cur = run_census(CensusConfig(g=2, x_limit=x)).total_primroot
        assert cur >= prev
        prev = cur


def test_census_thread_count_does_not_change_counts():
    base = run_census(CensusConfig(g=2, x_limit=10**6, m=12, segment_size=1 << 16))
    threaded = run_census(CensusConfig(g=2, x_limit=10**6, m=12, segment_size=1 << 16, thread_count=4))
    assert base == threaded


def test_census_config_guards():
    with pytest.raises(ArtinError):
        CensusConfig(g=2, x_limit=99)
    with pytest.raises(ArtinError):
        CensusConfig(g=2, x_limit=2**40 + 1)
    with pytest.raises(ArtinError):
        CensusConfig(g=2, x_limit=1000, segment_size=1000)
    with pytest.raises(InvalidG):
        run_census(CensusConfig(g=9, x_limit=1000))


# --- P_{k,g} --------------------------------------------------------------


def _brute_pk(x, m, a, k, g):
    return sum(
        1
        for p in naive_primes(x)
        if p % m == a % m and (p - 1) % k == 0 and p % g != 0 and mod_pow(g, (p - 1) // k, p) == 1
    )


def test_p_k_count_examples():
    assert p_k_count(100, 1, 1, 2, 2) == 11
    assert p_k_count(100, 3, 1, 3, 8) == sum(1 for p in naive_primes(100) if p % 3 == 1)
    assert p_k_count(10**4, 7, 3, 1, 5) == sum(1 for p in naive_primes(10**4) if p % 7 == 3)
    with pytest.raises(NotSquarefree):
        p_k_count(100, 1, 1, 4, 2)


@pytest.mark.parametrize("m, a, k, g", [(1, 1, 6, 2), (4, 3, 2, 3), (5, 1, 10, -2), (12, 7, 3, 12)])
def test_p_k_count_brute_force(m, a, k, g):
    assert p_k_count(3000, m, a, k, g) == _brute_pk(3000, m, a, k, g)


def _inclusion_exclusion(x, m, a, g, eta):
    qs = [q for q in (2, 3, 5, 7) if q <= eta]
    direct = sum(
        1
        for p in naive_primes(x)
        if p % m == a % m
        and all(not ((p - 1) % q == 0 and p % g and mod_pow(g, (p - 1) // q, p) == 1) for q in qs)
    )
    sieve_side = 0
    for r in range(len(qs) + 1):
        for combo in combinations(qs, r):
            k = math.prod(combo)
            sieve_side += (-1) ** r * p_k_count(x, m, a, k, g)
    return direct, sieve_side


def test_inclusion_exclusion_identity():
    for m in (1, 3, 4, 5):
        for a in (b for b in range(1, m + 1) if math.gcd(b, m) == 1):
            for eta in (3, 5, 7):
                direct, sieve_side = _inclusion_exclusion(10**4, m, a, 2, eta)
                assert direct == sieve_side, (m, a, eta)


# --- Chebotarev -----------------------------------------------------------


def test_chebotarev_examples():
    rep = chebotarev_check(10**6, 1, 1, 2, 2)
    assert abs(rep.ratio - 1) <= 0.02
    empty = chebotarev_check(10**6, 5, 2, 2, 5)
    assert empty.observed == 0 and empty.predicted == 0 and empty.ratio is None
    full = chebotarev_check(10**6, 1, 1, 1, 2)
    assert full.observed == 78498
    assert full.predicted == pytest.approx(li(10**6), rel=1e-12)


def test_chebotarev_brute_force_small():
    rep = chebotarev_check(10**4, 1, 1, 2, 2)
    assert rep.observed == _brute_pk(10**4, 1, 1, 2, 2)


# --- squarefree shift -----------------------------------------------------


def _brute_shift(x, a, b, g, root=brute_has_root):
    return sum(1 for p in naive_primes(x) if root(g, p) and naive_squarefree(a * p + b))


def _fast_root(g, p):
    # checked against repeated multiplication in test_primitive_root_oracle
    return g % 2 == 1 if p == 2 else bool(is_primitive_root(g, p))


def test_shift_count_examples():
    assert squarefree_shift_count(100, 1, 2, 2) == 11 == _brute_shift(100, 1, 2, 2)
    # p - 1 squarefree among the 12 primes with root 2: 3, 11, 59, 67, 83
    assert squarefree_shift_count(100, 1, -1, 2) == 5 == _brute_shift(100, 1, -1, 2)
    assert squarefree_shift_count(10, 2, 1, 2) == 2


@pytest.mark.parametrize("a, b, g", [(1, 2, 2), (1, -1, 5), (2, 1, 3), (3, 2, 8), (1, -3, -2), (5, -7, 12)])
def test_shift_sieve_matches_factorization(a, b, g):
    x = 10**5
    assert squarefree_shift_count(x, a, b, g) == _brute_shift(x, a, b, g, _fast_root)


def test_shift_zero_value_not_squarefree():
    # a*p + b = 0 at p = 3 for (a, b) = (1, -3)
    assert squarefree_shift_count(100, 1, -3, 2) == _brute_shift(100, 1, -3, 2)


def test_shift_count_errors():
    with pytest.raises(NotCoprime):
        squarefree_shift_count(100, 2, 4, 2)
    with pytest.raises(InvalidG):
        squarefree_shift_count(100, 1, 2, 4)


# --- li ---------------------------------------------------------------------


def test_li_examples():
    assert li(2) == 0.0
    assert li(10**6) == pytest.approx(78626.5, abs=0.5)
    assert li(10**7) > li(10**6)


@pytest.mark.parametrize("x", [3, 10, 1000, 10**5, 10**7, 1e12])
def test_li_against_mpmath(x):
    mpmath.mp.dps = 30
    ref = mpmath.li(x, offset=True)
    assert abs(li(x) - float(ref)) <= 1e-10 * float(ref)


# --- diagnostics and cache -------------------------------------------------


def test_error_diagnostic_zero_for_perfect_agreement():
    r = run_census(CensusConfig(g=2, x_limit=1000))
    from artin_ap.density import delta

    main = float(delta(1, 1, 2).enclose().mid) * 1000 / math.log(1000)
    fake = CensusResult(2, 1000, 1, {0: main}, r.total_primes, r.total_primroot)
    assert error_diagnostic(1000, 1, 1, 2, fake) == 0.0


def test_error_diagnostic_rejects_mismatched_census():
    r = run_census(CensusConfig(g=2, x_limit=1000))
    with pytest.raises(ArtinError):
        error_diagnostic(2000, 1, 1, 2, r)


def test_error_diagnostic_formula():
    x, m, a, g = 10**5, 5, 2, 2
    r = run_census(CensusConfig(g=g, x_limit=x, m=m))
    from artin_ap.density import delta

    lx = math.log(x)
    main = float(delta(a, m, g).enclose().mid) * x / lx
    want = abs(r.count(a) - main) * euler_phi(m) * lx**2 / (x * math.log(2) * max(math.log(10), math.log(lx)))
    assert error_diagnostic(x, m, a, g, r) == pytest.approx(want, rel=1e-12)


def test_csv_round_trip(tmp_path):
    r = run_census(CensusConfig(g=3, x_limit=10**4, m=8))
    path = cache_path(tmp_path, 3, 10**4, 8)
    write_census_csv(r, path)
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[-2].split(",")[3] == "_total"
    keys = [int(line.split(",")[3]) for line in lines[1:-2]]
    assert keys == sorted(keys)
    assert read_census_csv(path) == r
