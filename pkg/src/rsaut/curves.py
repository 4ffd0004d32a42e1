"""Superelliptic curves ``y^n = f(x)`` and their automorphisms.

Maps have the shape ``(x, y) -> (M(x), u(x) * y^k)`` with ``M`` a Mobius
transformation. Such a map is an automorphism of ``y^n = f`` exactly when

    u(x)^n * f(x)^k == f(M(x))

as rational functions. Powers of ``y`` at or above ``n`` are folded into
``u`` through ``y^n = f``, which keeps every map in a canonical form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .cyclotomic import CyclotomicNumber, I, cyc, omega
from .functions import FactoredRF, Mobius, Poly, RationalFunctionC, poly_gcd
from .groups import (ClosureBoundExceeded, FiniteGroup,
                     table_from_right_multiplication)

DEFAULT_MAP_CAP = 10**4


class ReducibleCover(ValueError):
    pass


class NotAutomorphism(ValueError):
    pass


class InvalidParams(ValueError):
    pass


@dataclass(frozen=True)
class Binomial:
    """The factor ``x^m - c`` for a rational ``c`` that is kept unsplit."""
    m: int
    c: Fraction

    def poly(self) -> Poly:
        return Poly([-self.c] + [0] * (self.m - 1) + [1])


@dataclass(frozen=True)
class SuperellipticCurve:
    """``y^n = lead * prod (x - r)^e * prod (x^m - c)^e``."""

    n: int
    roots: tuple[tuple[CyclotomicNumber, int], ...]
    binomials: tuple[tuple[Binomial, int], ...] = ()
    lead: CyclotomicNumber = field(default_factory=lambda: cyc(1))
    label: str = ""

    def __post_init__(self):
        if self.n < 2:
            raise InvalidParams("n must be at least 2")
        merged: dict[CyclotomicNumber, int] = {}
        for r, e in self.roots:
            merged[r] = merged.get(r, 0) + int(e)
        if any(e <= 0 for e in merged.values()):
            raise InvalidParams("exponents must be positive")
        object.__setattr__(self, "roots", tuple(merged.items()))
        for r, _ in self.roots:
            for b, _ in self.binomials:
                if r ** b.m == b.c:
                    raise InvalidParams(f"root {r} repeats a root of x^{b.m} - {b.c}")
        for i, (b1, _) in enumerate(self.binomials):
            for b2, _ in self.binomials[i + 1:]:
                if poly_gcd(b1.poly(), b2.poly()).degree > 0:
                    raise InvalidParams("binomial factors share a root")

    @property
    def exponents(self) -> list[int]:
        return [e for _, e in self.roots] + [e for _, e in self.binomials]

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.roots) + sum(b.m * e for b, e in self.binomials)

    @property
    def is_split(self) -> bool:
        return not self.binomials

    @cached_property
    def f_factored(self) -> FactoredRF:
        if not self.is_split:
            raise NotImplementedError("factored form needs every root of f")
        return FactoredRF(self.lead, dict(self.roots))

    @cached_property
    def f_poly(self) -> Poly:
        out = Poly([self.lead])
        for r, e in self.roots:
            out = out * Poly([-r, 1]) ** e
        for b, e in self.binomials:
            out = out * b.poly() ** e
        return out

    def __str__(self):
        parts = []
        for r, e in self.roots:
            base = "x" if r.is_zero() else f"(x - ({r}))"
            parts.append(f"{base}^{e}" if e != 1 else base)
        parts += [f"(x^{b.m} - {b.c})^{e}" if e != 1 else f"(x^{b.m} - {b.c})" for b, e in self.binomials]
        return f"y^{self.n} = " + "".join(parts)


def superelliptic(n: int, factors: Sequence[tuple], *, lead=1, label: str = "") -> SuperellipticCurve:
    """Build ``y^n = lead * prod factor^e``.

    Each entry of ``factors`` is ``(root, e)`` for ``(x - root)^e`` or
    ``((m, c), e)`` for ``(x^m - c)^e``; binomials with ``c = 1`` or ``c = -1``
    are split into linear factors over roots of unity.
    """
    roots = []
    binomials = []
    for fac, e in factors:
        if isinstance(fac, tuple):
            m, c = fac
            c = Fraction(c)
            if c == 0:
                roots.append((cyc(0), m * e))
            elif c == 1:
                roots += [(omega(m, i), e) for i in range(m)]
            elif c == -1:
                roots += [(omega(2 * m, 2 * i + 1), e) for i in range(m)]
            else:
                binomials.append((Binomial(m, c), e))
        else:
            roots.append((fac if isinstance(fac, CyclotomicNumber) else cyc(fac), e))
    lead = lead if isinstance(lead, CyclotomicNumber) else cyc(lead)
    return SuperellipticCurve(n, tuple(roots), tuple(binomials), lead, label)


def superelliptic_genus(c: SuperellipticCurve) -> int:
    """Riemann-Hurwitz for the cyclic cover ``(x, y) -> x``.

    A branch point with exponent ``e`` contributes ``n - gcd(n, e)``;
    infinity carries the exponent ``deg f``.
    """
    n = c.n
    if math.gcd(n, *c.exponents) != 1:
        raise ReducibleCover(f"gcd of {n} and the exponents is not 1")
    total = sum(n - math.gcd(n, e) for _, e in c.roots)
    total += sum(b.m * (n - math.gcd(n, e)) for b, e in c.binomials)
    total += n - math.gcd(n, c.degree)
    two_g = total - 2 * n + 2
    if two_g % 2:  # pragma: no cover - Riemann-Hurwitz parity
        raise ArithmeticError("odd 2g")
    return two_g // 2


# -- maps -----------------------------------------------------------------------


@dataclass(frozen=True)
class CurveMap:
    """``(x, y) -> (M(x), u(x) * y^k)``."""

    M: Mobius
    u: FactoredRF
    k: int

    @classmethod
    def identity(cls) -> CurveMap:
        return cls(Mobius.identity(), FactoredRF(1), 1)

    def __str__(self):
        return f"(x, y) -> ({self.M.a}x + {self.M.b})/({self.M.c}x + {self.M.d}), {self.u} * y^{self.k})"


def is_automorphism(c: SuperellipticCurve, m: CurveMap) -> bool:
    if math.gcd(m.k, c.n) != 1:
        return False
    if c.is_split:
        lhs = m.u ** c.n * c.f_factored ** m.k
        rhs = c.f_factored.substitute(m.M)
        return lhs == rhs
    f = RationalFunctionC(c.f_poly)
    lhs = m.u.to_rf() ** c.n * f ** m.k
    return lhs == f.compose(m.M.to_rf())


def compose(c: SuperellipticCurve, m1: CurveMap, m2: CurveMap, *, check: bool = False) -> CurveMap:
    """``m1`` after ``m2``, with the y-exponent reduced below ``n``."""
    if check:
        for m in (m1, m2):
            if not is_automorphism(c, m):
                raise NotAutomorphism(str(m))
    q, r = divmod(m1.k * m2.k, c.n)
    u = m1.u.substitute(m2.M) * m2.u ** m1.k
    if q:
        u = u * c.f_factored ** q
    return CurveMap(m1.M.compose(m2.M), u, r)


def map_order(c: SuperellipticCurve, m: CurveMap, cap: int = DEFAULT_MAP_CAP) -> int:
    if not is_automorphism(c, m):
        raise NotAutomorphism(str(m))
    ident = CurveMap.identity()
    cur, k = m, 1
    while cur != ident:
        cur = compose(c, cur, m)
        k += 1
        if k > cap:
            raise ClosureBoundExceeded(f"map order exceeds {cap}")
    return k


def closure(c: SuperellipticCurve, maps: Sequence[CurveMap], cap: int = DEFAULT_MAP_CAP,
            ) -> tuple[list[CurveMap], FiniteGroup]:
    """All maps generated by ``maps`` and the abstract group they form.

    Element ``i`` of the returned group is the ``i``-th map; products follow
    composition, ``g * h`` meaning ``g`` after ``h``.
    """
    for m in maps:
        if not is_automorphism(c, m):
            raise NotAutomorphism(str(m))
    elems = [CurveMap.identity()]
    pos = {elems[0]: 0}
    right: list[list[int]] = [[] for _ in maps]
    parent, via = [-1], [-1]
    i = 0
    while i < len(elems):
        for k, g in enumerate(maps):
            y = compose(c, elems[i], g)
            j = pos.get(y)
            if j is None:
                j = len(elems)
                if j >= cap:
                    raise ClosureBoundExceeded(f"map closure exceeds {cap}")
                pos[y] = j
                elems.append(y)
                parent.append(i)
                via.append(k)
            right[k].append(j)
        i += 1
    mul = table_from_right_multiplication(right, parent, via)
    gens = [pos[compose(c, elems[0], g)] for g in maps]
    return elems, FiniteGroup(mul, gens, name=f"Aut<{len(maps)} maps>")


def closure_order(c: SuperellipticCurve, maps: Sequence[CurveMap], cap: int = DEFAULT_MAP_CAP) -> int:
    return len(closure(c, maps, cap)[0])


# -- covers ---------------------------------------------------------------------


@dataclass(frozen=True)
class CoverMap:
    """``(x, y) -> (z, w) = (z(x), u(x) * y^k)``."""
    z: RationalFunctionC
    u: RationalFunctionC
    k: int


def verify_cover(src: SuperellipticCurve, dst: SuperellipticCurve, subst: CoverMap) -> bool:
    """Whether ``w^n' - f'(z)`` vanishes on ``src`` after substitution.

    ``w^n' = u^n' * y^(k n')``; writing ``k n' = q n + r`` gives
    ``u^n' * f^q * y^r``, which can only equal a function of ``x`` when
    ``r = 0``.
    """
    q, r = divmod(subst.k * dst.n, src.n)
    if r:
        return False
    lhs = subst.u ** dst.n * RationalFunctionC(src.f_poly) ** q
    rhs = RationalFunctionC(dst.f_poly).compose(subst.z)
    return lhs == rhs


# -- the curves of the classification -------------------------------------------


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def gimpar_exponents(p: int) -> tuple[int, int, int]:
    """``(e, s, l)`` for the curve ``y^(3p) = (x^2 - 1)(x^2 + 1)^s``.

    ``e`` solves ``e = -1 mod p`` and ``e = 1 mod 3`` in ``[2, 3p - 1]``;
    ``s`` is the inverse of ``e`` mod ``3p`` and ``l = (1 - s^2) / (3p)`` is
    the exponent of ``x^2 + 1`` in the y-part of the order-4 map.
    """
    if not _is_prime(p) or p % 4 != 3 or p < 7:
        raise InvalidParams(f"p={p} must be a prime >= 7 with p = 3 mod 4")
    n = 3 * p
    e = next(x for x in range(2, n) if x % p == p - 1 and x % 3 == 1)
    s = pow(e, -1, n)
    num = 1 - s * s
    if num % n:  # pragma: no cover - s^2 = 1 mod 3p since e = +-1 mod 3 and mod p
        raise ArithmeticError("1 - s^2 is not divisible by 3p")
    return e, s, num // n


def _eta(eta) -> Fraction:
    eta = Fraction(eta)
    if eta in (0, 1):
        raise InvalidParams("eta must differ from 0 and 1")
    return eta


def named_curve(tag: str, **params) -> SuperellipticCurve:
    """Curves by tag: ``C1(g)``, ``C2(g)``, ``C3(g)``, ``C4(g)``, ``C24(g)``,
    ``E``, ``F1(p, eta)``, ``F2(p, eta, eps)`` and ``gimpar(p)``."""
    try:
        if tag in ("C1", "C2", "C3", "C4", "C24"):
            g = int(params.pop("g"))
            if g < 2:
                raise InvalidParams("g must be at least 2")
            spec = {
                "C1": (2, g + 1),   # y^3 = x^2 (x^(g+1) - 1)
                "C2": (1, g),       # y^3 = x (x^g - 1)
                "C3": (1, g + 1),   # y^3 = x (x^(g+1) - 1)
                "C4": (2, g),       # y^3 = x^2 (x^g - 1)
                "C24": (g, g),      # y^3 = x^(2g) - x^g = x^g (x^g - 1)
            }[tag]
            curve = superelliptic(3, [(0, spec[0]), ((spec[1], 1), 1)], label=f"{tag}({g})")
        elif tag in ("E", "E_ct33g"):
            curve = superelliptic(3, [(0, 1), (1, 1)], label="E")  # w^3 = z^2 - z
        elif tag == "F1":
            p = int(params.pop("p"))
            eta = _eta(params.pop("eta"))
            curve = superelliptic(3, [(0, 1), ((p, 1), 1), ((p, eta), 2)], label=f"F1({p},{eta})")
        elif tag == "F2":
            p = int(params.pop("p"))
            eta = _eta(params.pop("eta"))
            eps = params.pop("eps", None)
            eps = (1 if p % 3 == 2 else 2) if eps is None else int(eps)
            if eps not in (1, 2):
                raise InvalidParams("eps must be 1 or 2")
            curve = superelliptic(3, [(0, eps), ((p, 1), 1), ((p, eta), 1)], label=f"F2({p},{eta},{eps})")
        elif tag == "gimpar":
            p = int(params.pop("p"))
            _, s, _ = gimpar_exponents(p)
            curve = superelliptic(3 * p, [(1, 1), (-1, 1), (I, s), (-I, s)], label=f"gimpar({p})")
        else:
            raise InvalidParams(f"unknown curve tag {tag!r}")
    except KeyError as exc:
        raise InvalidParams(f"{tag} needs parameter {exc.args[0]!r}") from None
    if params:
        raise InvalidParams(f"unexpected parameters {sorted(params)}")
    return curve


def c24_maps(g: int) -> dict[str, CurveMap]:
    """The maps ``t``, ``r`` and ``s`` of ``y^3 = x^(2g) - x^g``."""
    return {
        "t": CurveMap(Mobius.identity(), FactoredRF(omega(3)), 1),
        "r": CurveMap(Mobius.scaling(omega(g)), FactoredRF(1), 1),
        "s": CurveMap(Mobius.reciprocal(), FactoredRF(-1, {cyc(0): -g}), 1),
    }


def gimpar_maps(p: int) -> dict[str, CurveMap]:
    """The maps ``a = (x, w y)`` and ``b = (i x, (-1)^(s+1) (x^2+1)^l y^s)``."""
    _, s, ell = gimpar_exponents(p)
    sign = -1 if s % 2 == 0 else 1
    return {
        "a": CurveMap(Mobius.identity(), FactoredRF(omega(3 * p)), 1),
        "b": CurveMap(Mobius.scaling(I), FactoredRF(sign, {I: ell, -I: ell}), s),
    }


def c24_quotient_cover(g: int) -> CoverMap:
    """``(x, y) -> (z, w) = (x^g, y)`` onto ``w^3 = z^2 - z``."""
    x = Poly.x()
    return CoverMap(RationalFunctionC(x ** g), RationalFunctionC(Poly([1])), 1)
