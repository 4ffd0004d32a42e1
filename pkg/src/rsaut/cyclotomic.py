"""Exact arithmetic in cyclotomic fields.

An element of ``Q(w_N)``, ``w_N = exp(2 pi i / N)``, is stored as integer
coefficients over a common positive denominator in the power basis
``1, w, ..., w^(phi(N)-1)``, reduced modulo the N-th cyclotomic polynomial.
That form is unique, so equality at a fixed level is coefficient equality.
Numbers of different levels are lifted to the least common level before
combining.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

_INT64_SAFE = 2**62


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of ``Phi_n``, constant term first.

    Computed as ``x^n - 1`` divided by ``Phi_d`` for every proper divisor
    ``d`` of ``n``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _exact_div(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _exact_div(a: list[int], b: list[int]) -> list[int]:
    """Quotient of integer polynomials where ``b`` is monic and divides ``a``."""
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            q[k - db] = c
            for i, bc in enumerate(b):
                a[k - db + i] -= c * bc
    if any(a[:db]):
        raise ArithmeticError("division is not exact")
    return q


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _reduction_rows(n: int, count: int) -> np.ndarray:
    """Row ``k`` holds the coefficients of ``x^k mod Phi_n``, ``k < count``."""
    size = max(n, 2 * len(cyclotomic_polynomial(n)))
    while size < count:
        size *= 2
    return _reduction_table(n, size)[:count]


@lru_cache(maxsize=None)
def _reduction_table(n: int, count: int) -> np.ndarray:
    phi_poly = cyclotomic_polynomial(n)
    deg = len(phi_poly) - 1
    rows = []
    cur = [0] * deg
    if deg:
        cur[0] = 1
    for _ in range(count):
        rows.append(list(cur))
        # multiply by x and reduce
        top = cur[-1] if deg else 0
        cur = [0] + cur[:-1] if deg else []
        if top:
            for i in range(deg):
                cur[i] -= top * phi_poly[i]
    big = max((abs(v) for r in rows for v in r), default=0)
    dtype = np.int64 if big < 2**31 else object
    return np.array(rows, dtype=dtype).reshape(count, deg)


def _reduce(n: int, coeffs: np.ndarray) -> np.ndarray:
    """Reduce an integer coefficient vector of any length modulo ``Phi_n``."""
    coeffs = np.asarray(coeffs)
    R = _reduction_rows(n, len(coeffs))
    if coeffs.dtype != object and R.dtype != object:
        bound = int(np.abs(coeffs).max(initial=0)) * int(np.abs(R).max(initial=0)) * max(len(coeffs), 1)
        if bound < _INT64_SAFE:
            return coeffs.astype(np.int64) @ R
    return np.array(coeffs, dtype=object) @ np.array(R, dtype=object)


def _convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype != object and b.dtype != object:
        bound = int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0)) * min(len(a), len(b))
        if bound < _INT64_SAFE:
            return np.convolve(a, b)
    a = [int(x) for x in a]
    b = [int(x) for x in b]
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return np.array(out, dtype=object)


@lru_cache(maxsize=None)
def _trace_weights(n: int) -> tuple[Fraction, ...]:
    """``Tr(w_n^i) / phi(n)`` for ``i < phi(n)``; the normalized trace does
    not depend on the field the number is viewed in."""
    out = []
    for i in range(euler_phi(n)):
        d = n // math.gcd(n, i)
        out.append(Fraction(_mobius(d), euler_phi(d)))
    return tuple(out)


def _mobius(n: int) -> int:
    res = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res


class CyclotomicNumber:
    """An exact element of ``Q(w_level)``."""

    __slots__ = ("level", "num", "den", "_hash")

    def __init__(self, level: int, coeffs: Sequence, den: int = 1):
        """``coeffs`` may have any length and rational entries; they are
        reduced to canonical form."""
        if level < 1:
            raise ValueError("level must be positive")
        fr = [Fraction(c) for c in coeffs]
        common = math.lcm(1, *(f.denominator for f in fr)) if fr else 1
        ints = np.array([int(f * common) for f in fr] or [0], dtype=object)
        self._set(level, _reduce(level, ints), common * den)

    def _set(self, level: int, num: np.ndarray, den: int):
        num = [int(x) for x in num]
        if den < 0:
            num, den = [-x for x in num], -den
        g = math.gcd(den, *num)
        if g > 1:
            num = [x // g for x in num]
            den //= g
        self.level = level
        self.num = tuple(num)
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, level: int, num: np.ndarray, den: int) -> CyclotomicNumber:
        out = cls.__new__(cls)
        out._set(level, num, den)
        return out

    @classmethod
    def rational(cls, q, level: int = 1) -> CyclotomicNumber:
        q = Fraction(q)
        return cls(level, [q])

    @classmethod
    def root(cls, level: int, k: int = 1) -> CyclotomicNumber:
        """``w_level^k``."""
        k %= level
        row = _reduction_rows(level, level)[k]
        return cls._raw(level, row, 1)

    # -- conversions --------------------------------------------------------

    def lift(self, level: int) -> CyclotomicNumber:
        if level == self.level:
            return self
        if level % self.level:
            raise ValueError(f"cannot lift level {self.level} to {level}")
        step = level // self.level
        spread = np.zeros(step * (len(self.num) - 1) + 1, dtype=object)
        spread[::step] = list(self.num)
        return CyclotomicNumber._raw(level, _reduce(level, spread), self.den)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0] if self.num else 0, self.den)

    def to_complex(self) -> complex:
        w = complex(math.cos(2 * math.pi / self.level), math.sin(2 * math.pi / self.level))
        return sum(c * w**i for i, c in enumerate(self.num)) / self.den

    def normalized_trace(self) -> Fraction:
        weights = _trace_weights(self.level)
        return sum((c * w for c, w in zip(self.num, weights)), Fraction(0)) / self.den

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> tuple[CyclotomicNumber, CyclotomicNumber]:
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.rational(other, self.level)
        if other.level == self.level:
            return self, other
        lv = math.lcm(self.level, other.level)
        return self.lift(lv), other.lift(lv)

    def __add__(self, other):
        if not isinstance(other, (CyclotomicNumber, int, Fraction)):
            return NotImplemented
        a, b = self._coerce(other)
        num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
        return CyclotomicNumber._raw(a.level, num, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self.level, [-x for x in self.num], self.den)

    def __sub__(self, other):
        if not isinstance(other, (CyclotomicNumber, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CyclotomicNumber._raw(self.level, [x * q.numerator for x in self.num],
                                         self.den * q.denominator)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._coerce(other)
        if a.is_rational():
            return b * a.to_fraction()
        if b.is_rational():
            return a * b.to_fraction()
        prod = _convolve(_as_array(a.num), _as_array(b.num))
        return CyclotomicNumber._raw(a.level, _reduce(a.level, prod), a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicNumber:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CyclotomicNumber.rational(1 / self.to_fraction(), self.level)
        inv = _poly_inverse_mod([Fraction(c, self.den) for c in self.num],
                                [Fraction(c) for c in cyclotomic_polynomial(self.level)])
        return CyclotomicNumber(self.level, inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = CyclotomicNumber.rational(1, self.level)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def galois(self, a: int) -> CyclotomicNumber:
        """Image under ``w_level -> w_level^a`` (``gcd(a, level) == 1``)."""
        if math.gcd(a, self.level) != 1:
            raise ValueError(f"{a} is not a unit mod {self.level}")
        spread = np.zeros(self.level, dtype=object)
        for i, c in enumerate(self.num):
            spread[(a * i) % self.level] += c
        return CyclotomicNumber._raw(self.level, _reduce(self.level, spread), self.den)

    def conjugate(self) -> CyclotomicNumber:
        return self.galois(-1)

    # -- comparison -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_fraction() == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._coerce(other)
        return a.den == b.den and a.num == b.num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.normalized_trace())
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.num):
            if c:
                q = Fraction(c, self.den)
                terms.append(f"{q}" if i == 0 else f"{q}*w{self.level}^{i}")
        return " + ".join(terms) if terms else "0"


def _as_array(num: tuple[int, ...]) -> np.ndarray:
    if all(-(2**31) < x < 2**31 for x in num):
        return np.array(num, dtype=np.int64)
    return np.array(num, dtype=object)


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        _poly_trim(a)
    return q, a


def _poly_sub_mul(a, b, q):
    """``a - b*q``."""
    out = list(a) + [Fraction(0)] * max(0, len(b) + len(q) - 1 - len(a))
    for i, x in enumerate(b):
        for j, y in enumerate(q):
            out[i + j] -= x * y
    return _poly_trim(out)


def _poly_inverse_mod(a: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    """``u`` with ``a*u = 1 mod m`` (extended Euclid over Q)."""
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub_mul(s0, s1, q)
    if not r1:
        raise ZeroDivisionError("not invertible")
    c = r1[0]
    return [x / c for x in s1]


def omega(n: int, k: int = 1) -> CyclotomicNumber:
    return CyclotomicNumber.root(n, k)


def cyc(q, level: int = 1) -> CyclotomicNumber:
    return CyclotomicNumber.rational(q, level)


I = omega(4)


# -- vectorized integer layer ---------------------------------------------------
#
# Character computations handle thousands of sums of roots of unity; these
# helpers keep them as integer arrays in the power basis.


def roots_to_basis(n: int, exponent_counts: np.ndarray) -> np.ndarray:
    """Map vectors of multiplicities of ``w_n^0 .. w_n^(n-1)`` (last axis) to
    canonical power-basis coefficients."""
    R = _reduction_rows(n, n)
    return np.asarray(exponent_counts) @ R


def basis_to_number(n: int, coeffs: Sequence[int]) -> CyclotomicNumber:
    return CyclotomicNumber._raw(n, list(coeffs), 1)
