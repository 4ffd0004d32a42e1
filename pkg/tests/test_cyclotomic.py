"""Exact cyclotomic arithmetic and rational functions over cyclotomic fields.

Every identity is also checked numerically through ``to_complex``, which
evaluates the stored power-basis coefficients with floating point and shares
no code with the exact reduction.
"""

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from rsaut.cyclotomic import (I, CyclotomicNumber, basis_to_number, cyc, cyclotomic_polynomial,
                              euler_phi, omega, roots_to_basis)
from rsaut.functions import FactoredRF, Mobius, Poly, RationalFunctionC, poly_gcd

LEVELS = st.integers(1, 60)


@st.composite
def numbers(draw, level=None):
    n = level if level is not None else draw(LEVELS)
    coeffs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6),
                           min_size=1, max_size=min(n, 8)))
    return CyclotomicNumber(n, coeffs)


def close(x, z):
    return abs(x.to_complex() - z) < 1e-9


def test_cyclotomic_polynomials_known():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    # the first cyclotomic polynomial with a coefficient outside {-1, 0, 1}
    assert 2 in [abs(c) for c in cyclotomic_polynomial(105)]


@pytest.mark.parametrize("n", range(1, 61))
def test_polynomial_degree_and_root(n):
    poly = cyclotomic_polynomial(n)
    assert len(poly) - 1 == euler_phi(n) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
    w = omega(n)
    assert sum((w ** i * c for i, c in enumerate(poly)), CyclotomicNumber.rational(0, n)).is_zero()


@pytest.mark.parametrize("n", range(2, 61))
def test_all_roots_sum_to_zero(n):
    assert sum((omega(n, k) for k in range(n)), cyc(0, n)) == 0


def test_primitive_root_sums_are_mobius():
    # sums of primitive n-th roots: mu(n) for n = 1..12
    mu = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]
    for n, m in enumerate(mu, start=1):
        s = sum((omega(n, k) for k in range(n) if math.gcd(k, n) == 1), cyc(0, n))
        assert s == m


def test_small_identities():
    assert I * I == -1
    assert omega(3) + omega(3, 2) == -1
    assert omega(8) ** 2 == I
    assert omega(6) == -omega(3, 2)
    assert omega(12, 3) == I
    assert (1 + I).inverse() == (1 - I) / 2
    assert omega(5).conjugate() == omega(5, 4)


def test_cross_level_equality_and_hash():
    a = omega(4)
    b = omega(12, 3)
    assert a == b and hash(a) == hash(b)
    assert hash(cyc(Fraction(1, 3))) == hash(cyc(Fraction(1, 3), 15))
    assert {omega(6, 2): 1}[omega(3)] == 1


def test_rational_conversions():
    assert cyc(Fraction(3, 4)).to_fraction() == Fraction(3, 4)
    with pytest.raises(ValueError):
        I.to_fraction()
    with pytest.raises(ZeroDivisionError):
        cyc(0, 5).inverse()
    with pytest.raises(ValueError):
        omega(6).galois(3)


def test_roots_to_basis_matches_sum():
    n = 12
    counts = np.zeros(n, dtype=np.int64)
    counts[0], counts[3], counts[5] = 1, 2, 1
    coeffs = roots_to_basis(n, counts)
    expected = omega(n, 0) + 2 * omega(n, 3) + omega(n, 5)
    assert basis_to_number(n, coeffs.tolist()) == expected


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_field_axioms(data):
    n = data.draw(LEVELS)
    a, b, c = (data.draw(numbers(n)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a - a == 0
    if a:
        assert a * a.inverse() == 1
    za, zb = a.to_complex(), b.to_complex()
    assert close(a * b, za * zb)
    assert close(a + b, za + zb)


@settings(max_examples=40, deadline=None)
@given(numbers(), numbers())
def test_mixed_levels_agree_with_complex(a, b):
    assert close(a * b, a.to_complex() * b.to_complex())
    assert close(a - b, a.to_complex() - b.to_complex())
    if b:
        assert close(a / b, a.to_complex() / b.to_complex())


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_galois_is_a_field_automorphism(data):
    n = data.draw(st.integers(2, 60))
    k = data.draw(st.integers(1, n - 1))
    assume(math.gcd(k, n) == 1)
    a, b = data.draw(numbers(n)), data.draw(numbers(n))
    assert (a * b).galois(k) == a.galois(k) * b.galois(k)
    assert (a + b).galois(k) == a.galois(k) + b.galois(k)
    assert omega(n).galois(k) == omega(n, k)


@settings(max_examples=40, deadline=None)
@given(numbers(), st.integers(1, 4))
def test_lift_preserves_value(a, m):
    lifted = a.lift(a.level * m)
    assert lifted == a and hash(lifted) == hash(a)
    assert close(lifted, a.to_complex())


@settings(max_examples=30, deadline=None)
@given(numbers(), st.integers(-4, 6))
def test_powers(a, k):
    assume(a or k >= 0)
    assert cmath.isclose((a ** k).to_complex(), a.to_complex() ** k, rel_tol=1e-9, abs_tol=1e-9)


# -- polynomials and rational functions ------------------------------------------------


def test_poly_arithmetic():
    x = Poly.x()
    p = (x - 1) * (x + 1)
    assert p == x ** 2 - 1
    assert p.degree == 2
    q, r = (x ** 3 + 2).divmod(x - 1)
    assert q * (x - 1) + r == x ** 3 + 2
    assert r.degree <= 0 and r(0) == 3
    assert poly_gcd(p, (x - 1) ** 2) == x - 1
    assert Poly([]).is_zero()


def test_poly_with_cyclotomic_coefficients():
    x = Poly.x()
    p = (x - I) * (x + I)
    assert p == x ** 2 + 1
    w = omega(3)
    assert ((x - 1) * (x - w) * (x - w ** 2)) == x ** 3 - 1


def test_rational_function_normal_form():
    x = RationalFunctionC.x()
    f = (x ** 2 - 1) / (x - 1)
    assert f == x + 1
    assert (1 / x).compose(1 / x) == x
    assert (x / (x + 1)) * ((x + 1) / x) == RationalFunctionC(1)
    assert ((x + 1) - (x + 1)).is_zero()


def test_factored_rf_round_trip_and_substitution():
    f = FactoredRF(2, {1: 1, omega(3): -2})
    g = f.to_rf()
    assert g == RationalFunctionC(Poly([-2, 2])) / (RationalFunctionC.x() - omega(3)) ** 2
    M = Mobius(omega(4), 1, 0, 1)  # x -> i x + 1
    assert f.substitute(M).to_rf() == g.compose(M.to_rf())
    R = Mobius.reciprocal()
    assert f.substitute(R).to_rf() == g.compose(R.to_rf())
    assert (f * f.inverse()) == FactoredRF(1)
    with pytest.raises(ValueError):
        FactoredRF(0)


def test_mobius_normalization_and_composition():
    assert Mobius(2, 0, 0, 2) == Mobius.identity()
    S = Mobius.scaling(omega(5))
    assert S.compose(Mobius.scaling(omega(5, 4))) == Mobius.identity()
    R = Mobius.reciprocal()
    assert R.compose(R) == Mobius.identity()
    with pytest.raises(ValueError):
        Mobius(1, 1, 1, 1)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 11), st.integers(-3, 3)), max_size=4),
       st.integers(0, 11), st.integers(1, 11))
def test_substitution_agrees_with_numeric_evaluation(factors, k, j):
    f = FactoredRF(omega(12, k), {omega(12, r): e for r, e in factors})
    M = Mobius(omega(12, j), 1, 1, 2)
    z = complex(0.3, 0.7)
    mz = (M.a.to_complex() * z + M.b.to_complex()) / (M.c.to_complex() * z + M.d.to_complex())

    def evaluate(F, t):
        val = F.const.to_complex()
        for r, e in F.factors.items():
            val *= (t - r.to_complex()) ** e
        return val

    assert cmath.isclose(evaluate(f.substitute(M), z), evaluate(f, mz), rel_tol=1e-9)
