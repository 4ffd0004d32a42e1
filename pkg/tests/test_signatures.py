"""Riemann-Hurwitz arithmetic, signature enumeration and the triple solver."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rsaut.signatures import (NOT_TRIANGLE, NonIntegral, OutOfRange, Signature, divisors,
                              enumerate_signatures, hypermap_type, parse_rhs, rh_euler, rh_genus,
                              solve_triple_period)

SPORADIC = {  # n: periods, from the table of exceptional solutions
    5: (5, 9, 15), 15: (5, 9, 27), 35: (5, 9, 35),
    65: (5, 9, 39), 215: (5, 9, 43), 7: (7, 9, 9),
}


def test_signature_normalizes_and_prints():
    s = Signature(0, (15, 3, 15))
    assert s.periods == (3, 15, 15)
    assert str(s) == "(0; 3,15,15)"
    assert Signature.parse("(0; 3, 15, 15)") == s
    assert Signature.parse("1;2") == Signature(1, (2,))
    assert str(Signature(2)) == "(2; -)"


def test_signature_validation():
    with pytest.raises(ValueError):
        Signature(0, (1, 3))
    with pytest.raises(ValueError):
        Signature(-1, ())


def test_family_dimension():
    assert Signature(0, (2, 2, 3, 21)).family_dimension == 1
    assert Signature(0, (3, 15, 15)).family_dimension == 0
    assert Signature(1, (2,)).family_dimension == 1


def test_rh_genus_theorem_examples():
    assert rh_genus(15, Signature(0, (3, 15, 15))) == 5
    assert rh_genus(30, Signature(0, (2, 6, 15))) == 5
    assert rh_genus(63, Signature(0, (7, 9, 9))) == 21
    assert rh_genus(42, Signature(0, (2, 2, 3, 21))) == 14


def test_rh_genus_small_prime_remarks():
    # A4 acts on genus four with signature (1; 2); order thirty with (0; 5,6,30) gives genus ten
    assert rh_genus(12, Signature(1, (2,))) == 4
    assert rh_genus(30, Signature(0, (5, 6, 30))) == 10


def test_rh_markers():
    bad = rh_genus(7, Signature(0, (2, 3, 7, 7)))
    assert isinstance(bad, NonIntegral) and not bad
    neg = rh_genus(6, Signature(0, (2, 2)))
    assert isinstance(neg, OutOfRange) and not neg and neg.value < 0
    assert rh_euler(5, Signature(3)) == 20
    assert rh_genus(5, Signature(3)) == 11


def test_divisors():
    assert divisors(45) == [1, 3, 5, 9, 15, 45]
    assert divisors(1) == [1]


def brute_signatures(order, g, gamma_max):
    """All signatures by exhaustive multiset search with a length bound."""
    cands = [d for d in divisors(order) if d >= 2]
    out = set()
    for gamma in range(gamma_max + 1):
        # each period adds at least 1/2 to the orbifold Euler characteristic
        max_len = int(2 * (Fraction(2 * g - 2, order) - (2 * gamma - 2))) + 1
        for r in range(0, max(max_len, 0) + 1):
            for periods in itertools.combinations_with_replacement(cands, r):
                s = Signature(gamma, periods)
                if rh_genus(order, s) == g:
                    out.add(s)
    return sorted(out)


@pytest.mark.parametrize("order,g", [(63, 21), (42, 14), (15, 5), (18, 6), (45, 15), (24, 7)])
def test_enumerate_matches_brute_force(order, g):
    assert enumerate_signatures(order, g, 2) == brute_signatures(order, g, 2)


def test_enumerate_order_63_genus_21():
    assert enumerate_signatures(63, 21) == [Signature(0, (3, 63, 63)), Signature(0, (7, 9, 9))]


def test_enumerate_rejects_low_genus():
    with pytest.raises(ValueError):
        enumerate_signatures(10, 1)


def test_parse_rhs():
    assert parse_rhs("1/3+2/45") == Fraction(17, 45)
    assert parse_rhs(" 1/2 - 1/6 ") == Fraction(1, 3)
    assert parse_rhs("1") == 1
    with pytest.raises(ValueError):
        parse_rhs("1/3+x")
    with pytest.raises(ValueError):
        parse_rhs("__import__('os')")


def brute_triples(rhs, allowed):
    allowed = sorted(set(a for a in allowed if a >= 2))
    return [t for t in itertools.combinations_with_replacement(allowed, 3)
            if sum(Fraction(1, m) for m in t) == rhs]


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11, 15, 21, 35])
def test_restricted_solver_matches_brute_force(n):
    rhs = Fraction(1, 3) + Fraction(2, 9 * n)
    assert solve_triple_period(rhs, divisors(9 * n)) == brute_triples(rhs, divisors(9 * n))


def test_sporadic_table():
    found = {}
    for n in range(3, 216, 2):
        rhs = Fraction(1, 3) + Fraction(2, 9 * n)
        sols = solve_triple_period(rhs, divisors(9 * n))
        assert (3, 9 * n, 9 * n) in sols
        extra = [t for t in sols if t != (3, 9 * n, 9 * n)]
        if extra:
            found[n] = extra
    assert found == {n: [t] for n, t in SPORADIC.items()}


def test_triple_examples():
    assert solve_triple_period(parse_rhs("1/3+2/45"), divisors(45)) == [(3, 45, 45), (5, 9, 15)]
    assert solve_triple_period(parse_rhs("1/3+2/99"), divisors(99)) == [(3, 99, 99)]
    assert solve_triple_period(Fraction(1)) == [(2, 3, 6), (2, 4, 4), (3, 3, 3)]


def test_unrestricted_solver_is_complete_for_small_bound():
    # any solution has m2 <= m3 <= bound, so scanning every pair (m1, m2) and
    # solving for m3 exactly covers the whole search space
    rhs = Fraction(17, 45)
    sols = solve_triple_period(rhs)
    assert len(sols) == 14
    bound = max(t[2] for t in sols)
    a, b = rhs.numerator, rhs.denominator
    oracle = []
    for m1 in range(2, bound + 1):
        for m2 in range(m1, bound + 1):
            # 1/m3 = (a m1 m2 - b m1 - b m2) / (b m1 m2) in integers
            num = a * m1 * m2 - b * (m1 + m2)
            den = b * m1 * m2
            if num > 0 and den % num == 0 and den // num >= m2:
                oracle.append((m1, m2, den // num))
    assert sols == oracle


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 30), st.integers(2, 30), st.integers(2, 30))
def test_solver_finds_planted_triple(a, b, c):
    rhs = Fraction(1, a) + Fraction(1, b) + Fraction(1, c)
    sols = solve_triple_period(rhs)
    assert tuple(sorted((a, b, c))) in sols
    for t in sols:
        assert list(t) == sorted(t)
        assert sum(Fraction(1, m) for m in t) == rhs


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 3), st.lists(st.integers(2, 12), max_size=5), st.integers(1, 60))
def test_rh_roundtrip(gamma, periods, order):
    s = Signature(gamma, tuple(periods))
    g = rh_genus(order, s)
    if isinstance(g, int):
        assert 2 * g - 2 == order * s.orbifold_euler
        assert g >= 0


def test_hypermap_type():
    assert hypermap_type(Signature(0, (63, 3, 63))) == (3, 63, 63)
    assert hypermap_type(Signature(0, (2, 2, 3, 21))) is NOT_TRIANGLE
    assert hypermap_type(Signature(1, (2, 3, 4))) is NOT_TRIANGLE
