from fractions import Fraction
from math import gcd

import pytest

from artin_ap.arith import euler_phi, lcm, mobius
from artin_ap.density import delta, g_invariants, moree_context
from artin_ap.errors import NotSquarefree
from artin_ap.lenstra import (
    c_a,
    delta_series,
    field_degree,
    partial_sum,
    partial_sum_bracket,
    series_terms,
)


@pytest.mark.parametrize("m, k, g, deg", [(1, 1, 2, 1), (1, 2, 2, 2), (5, 2, 5, 4), (1, 3, 8, 2)])
def test_field_degree_examples(m, k, g, deg):
    assert field_degree(m, k, g_invariants(g)) == deg


def test_field_degree_rejects_square_factor():
    with pytest.raises(NotSquarefree):
        field_degree(1, 4, g_invariants(2))


def test_c_a_examples():
    for m, k, g in [(1, 1, 2), (5, 2, 5), (12, 30, 3), (7, 14, -2)]:
        ctx = moree_context(1, m, g)
        assert c_a(1, m, k, ctx.ginv, ctx.gamma) == 1
    ctx = moree_context(2, 5, 5)
    assert c_a(2, 5, 2, ctx.ginv, ctx.gamma) == 0
    ctx = moree_context(2, 3, 2)
    assert c_a(2, 3, 3, ctx.ginv, ctx.gamma) == 0


@pytest.mark.parametrize("a, m, g, max_k", [(1, 1, 2, 10**5), (1, 3, 8, 10**4), (2, 5, 5, 10**4)])
def test_series_contains_closed_form(a, m, g, max_k):
    enc = delta_series(a, m, g, max_k)
    closed = delta(a, m, g).enclose()
    assert enc.contains(closed)


def test_series_zero_branch_contains_zero():
    assert delta_series(1, 3, 8, 10**4).contains(0)


def test_term_identity_with_main_term_function():
    # mu(k) c_a / degree == mu(k) eps c_a / (k1 phi([m,k])) with eps computed independently
    for g in (2, 5, 8, -8, 12):
        gi = g_invariants(g)
        for m in (1, 3, 4, 5, 8, 12):
            for a in (x for x in range(1, m + 1) if gcd(x, m) == 1):
                for t in series_terms(a, m, g, 1000):
                    k = t.k
                    k1 = k // gcd(k, gi.h)
                    eps = 2 if (k % 2 == 0 and lcm(m, k) % gi.abs_delta == 0) else 1
                    assert t.value == Fraction(mobius(k) * eps * t.c_a, k1 * euler_phi(lcm(m, k)))


def test_only_squarefree_terms():
    ks = [t.k for t in series_terms(1, 4, 3, 500)]
    assert ks == [k for k in range(1, 501) if mobius(k) != 0]


@pytest.mark.parametrize("a, m, g", [(1, 1, 2), (2, 5, 5), (3, 8, -2), (5, 12, 12), (1, 9, -8)])
def test_bracket_contains_exact_partial_sum(a, m, g):
    exact = partial_sum(a, m, g, 3000)
    br = partial_sum_bracket(a, m, g, 3000)
    assert br.contains(exact)
    assert float(br.width) < 1e-30


def test_monotone_enclosure():
    closed = delta(2, 5, 5).enclose()
    coarse = delta_series(2, 5, 5, 1000)
    fine = delta_series(2, 5, 5, 10**5)
    assert coarse.overlaps(fine)
    assert fine.width < coarse.width
    assert coarse.contains(closed) and fine.contains(closed)


def test_max_k_guard():
    with pytest.raises(ValueError):
        delta_series(1, 1, 2, 8)
