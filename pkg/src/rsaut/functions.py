"""Polynomials and rational functions in one variable over cyclotomic fields.

Two representations are provided. :class:`Poly` and :class:`RationalFunctionC`
are dense and general. :class:`FactoredRF` stores ``c * prod (x - r)^e`` with
integer (possibly negative) exponents; it is exact and stays small under the
high powers that curve automorphism checks produce.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .cyclotomic import CyclotomicNumber, cyc

Number = CyclotomicNumber | int | Fraction


def _c(x: Number) -> CyclotomicNumber:
    return x if isinstance(x, CyclotomicNumber) else cyc(x)


@lru_cache(maxsize=4096)
def _cached_inverse(x: CyclotomicNumber) -> CyclotomicNumber:
    return x.inverse()


def inverse(x: Number) -> CyclotomicNumber:
    return _cached_inverse(_c(x))


class Poly:
    """Dense polynomial, coefficients constant term first, no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_c(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def const(cls, c: Number) -> Poly:
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> CyclotomicNumber:
        return self.coeffs[-1]

    def __add__(self, other) -> Poly:
        if isinstance(other, RationalFunctionC):
            return NotImplemented
        other = _poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (cyc(0),) * (n - len(self.coeffs))
        b = other.coeffs + (cyc(0),) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> Poly:
        return self + (-_poly(other))

    def __rsub__(self, other) -> Poly:
        return _poly(other) - self

    def __mul__(self, other) -> Poly:
        if isinstance(other, RationalFunctionC):
            return NotImplemented
        other = _poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [cyc(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out, base = Poly([1]), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c: Number) -> Poly:
        return Poly(a * _c(c) for a in self.coeffs)

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        inv_lead = inverse(other.lead)
        q = [cyc(0)] * max(len(rem) - len(other.coeffs) + 1, 1)
        d = other.degree
        while len(rem) - 1 >= d and rem:
            c = rem[-1] * inv_lead
            shift = len(rem) - 1 - d
            q[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - c * b
            while rem and rem[-1].is_zero():
                rem.pop()
        return Poly(q), Poly(rem)

    def monic(self) -> Poly:
        return self.scale(inverse(self.lead)) if self.coeffs else self

    def __call__(self, x):
        if isinstance(x, RationalFunctionC):
            out = RationalFunctionC(Poly())
        elif isinstance(x, Poly):
            out = Poly()
        else:
            out = cyc(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"


def _poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction, CyclotomicNumber)):
        return Poly([x])
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


class RationalFunctionC:
    """``num / den`` in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _poly(num)
        den = Poly([1]) if den is None else _poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly([1])
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = inverse(den.lead)
        self.num = num.scale(lead)
        self.den = den.scale(lead)

    @classmethod
    def x(cls) -> RationalFunctionC:
        return cls(Poly.x())

    def __add__(self, other):
        o = _rf(other)
        return RationalFunctionC(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionC(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_rf(other))

    def __rsub__(self, other):
        return _rf(other) - self

    def __mul__(self, other):
        o = _rf(other)
        return RationalFunctionC(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _rf(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFunctionC(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return _rf(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RationalFunctionC(self.den ** (-k), self.num ** (-k))
        return RationalFunctionC(self.num ** k, self.den ** k)

    def compose(self, inner: RationalFunctionC) -> RationalFunctionC:
        """``self(inner(x))``."""
        inner = _rf(inner)
        return _rf(self.num(inner)) / _rf(self.den(inner))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, (RationalFunctionC, Poly, int, Fraction, CyclotomicNumber)):
            return NotImplemented
        o = _rf(other)
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"({self.num}) / ({self.den})"


def _rf(x) -> RationalFunctionC:
    return x if isinstance(x, RationalFunctionC) else RationalFunctionC(x)


class FactoredRF:
    """``const * prod_r (x - r)^e`` with ``e`` non-zero integers. Immutable."""

    __slots__ = ("const", "factors")

    def __init__(self, const: Number = 1, factors: Mapping[CyclotomicNumber, int] | None = None):
        fac = {}
        for r, e in (factors or {}).items():
            r = _c(r)
            e = fac.get(r, 0) + int(e)
            if e:
                fac[r] = e
            else:
                fac.pop(r, None)
        self.const = _c(const)
        self.factors = _FrozenDict(fac)
        if self.const.is_zero():
            raise ValueError("FactoredRF represents a non-zero function")

    @classmethod
    def linear(cls, root: Number, exp: int = 1) -> FactoredRF:
        return cls(1, {_c(root): exp})

    def __mul__(self, other: FactoredRF) -> FactoredRF:
        if not isinstance(other, FactoredRF):
            return FactoredRF(self.const * _c(other), self.factors)
        fac = dict(self.factors)
        for r, e in other.factors.items():
            fac[r] = fac.get(r, 0) + e
        return FactoredRF(self.const * other.const, fac)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> FactoredRF:
        return FactoredRF(self.const ** k, {r: e * k for r, e in self.factors.items()})

    def inverse(self) -> FactoredRF:
        return self ** -1

    def __truediv__(self, other: FactoredRF) -> FactoredRF:
        return self * other.inverse()

    def substitute(self, M: Mobius) -> FactoredRF:
        """``self(M(x))``."""
        out = FactoredRF(self.const)
        den_total = 0
        for r, e in self.factors.items():
            # M(x) - r = ((a - r c) x + (b - r d)) / (c x + d)
            lin_a = M.a - r * M.c
            lin_b = M.b - r * M.d
            if lin_a.is_zero():
                out = out * FactoredRF(lin_b ** e)
            else:
                root = -lin_b * inverse(lin_a)
                out = out * FactoredRF(lin_a ** e, {root: e})
            den_total += e
        if den_total:
            if M.c.is_zero():
                out = out * FactoredRF(M.d ** (-den_total))
            else:
                root = -M.d * inverse(M.c)
                out = out * FactoredRF(M.c ** (-den_total), {root: -den_total})
        return out

    def to_rf(self) -> RationalFunctionC:
        num = Poly([self.const])
        den = Poly([1])
        for r, e in self.factors.items():
            lin = Poly([-r, 1])
            if e > 0:
                num = num * lin ** e
            else:
                den = den * lin ** (-e)
        return RationalFunctionC(num, den)

    def __hash__(self):
        return hash((self.const, frozenset(self.factors.items())))

    def __eq__(self, other):
        if not isinstance(other, FactoredRF):
            return NotImplemented
        return self.const == other.const and dict(self.factors) == dict(other.factors)

    def __repr__(self):
        parts = [f"({self.const})"] + [f"(x - ({r}))^{e}" for r, e in self.factors.items()]
        return "*".join(parts)


class _FrozenDict(dict):
    def __setitem__(self, *a):  # pragma: no cover - defensive
        raise TypeError("immutable")

    def __hash__(self):
        return hash(frozenset(self.items()))


@dataclass(frozen=True)
class Mobius:
    """``x -> (a x + b) / (c x + d)`` normalized so the first non-zero of
    ``(a, b, c, d)`` is 1."""

    a: CyclotomicNumber
    b: CyclotomicNumber
    c: CyclotomicNumber
    d: CyclotomicNumber

    def __init__(self, a: Number, b: Number, c: Number, d: Number):
        vals = [_c(v) for v in (a, b, c, d)]
        det = vals[0] * vals[3] - vals[1] * vals[2]
        if det.is_zero():
            raise ValueError("singular Mobius transformation")
        lead = next(v for v in vals if not v.is_zero())
        s = inverse(lead)
        vals = [v * s for v in vals]
        for name, v in zip("abcd", vals):
            object.__setattr__(self, name, v)

    @classmethod
    def identity(cls) -> Mobius:
        return cls(1, 0, 0, 1)

    @classmethod
    def scaling(cls, k: Number) -> Mobius:
        return cls(k, 0, 0, 1)

    @classmethod
    def reciprocal(cls) -> Mobius:
        return cls(0, 1, 1, 0)

    def compose(self, other: Mobius) -> Mobius:
        """``self(other(x))``."""
        return Mobius(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                      self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d)

    def to_rf(self) -> RationalFunctionC:
        return RationalFunctionC(Poly([self.b, self.a]), Poly([self.d, self.c]))
