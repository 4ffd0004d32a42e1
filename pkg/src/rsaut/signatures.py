"""Signatures of group actions and Riemann-Hurwitz arithmetic.

A signature ``(gamma; m_1, ..., m_s)`` records the genus of the quotient
orbifold and its cone orders. For a group of order ``N`` acting with that
signature the covering surface has genus ``g`` where

    2g - 2 = N * (2*gamma - 2 + sum(1 - 1/m_j)).

Everything here is exact rational arithmetic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class Signature:
    gamma: int
    periods: tuple[int, ...] = ()

    def __post_init__(self):
        periods = tuple(sorted(int(m) for m in self.periods))
        if self.gamma < 0:
            raise ValueError("gamma must be non-negative")
        if any(m < 2 for m in periods):
            raise ValueError(f"periods must be >= 2, got {periods}")
        object.__setattr__(self, "periods", periods)
        object.__setattr__(self, "gamma", int(self.gamma))

    @classmethod
    def parse(cls, text: str) -> Signature:
        """Parse ``"(0; 3, 15, 15)"`` or ``"0;3,15,15"``."""
        body = text.strip().strip("()")
        head, _, tail = body.partition(";")
        periods = [int(tok) for tok in re.split(r"[,\s]+", tail.strip()) if tok]
        return cls(int(head), tuple(periods))

    @property
    def s(self) -> int:
        return len(self.periods)

    @property
    def branch_sum(self) -> Fraction:
        """``B = sum(1 - 1/m_j)``."""
        return sum((1 - Fraction(1, m) for m in self.periods), Fraction(0))

    @property
    def orbifold_euler(self) -> Fraction:
        """``2*gamma - 2 + B``; positive exactly for hyperbolic signatures."""
        return 2 * self.gamma - 2 + self.branch_sum

    @property
    def family_dimension(self) -> int:
        """Complex dimension ``3*gamma - 3 + s`` of the equisymmetric family."""
        return 3 * self.gamma - 3 + self.s

    def with_period(self, m: int) -> Signature:
        return Signature(self.gamma, self.periods + (m,))

    def __str__(self) -> str:
        if not self.periods:
            return f"({self.gamma}; -)"
        return f"({self.gamma}; {','.join(map(str, self.periods))})"


@dataclass(frozen=True)
class NonIntegral:
    """Riemann-Hurwitz gives a non-integral genus."""
    value: Fraction

    def __bool__(self):
        return False


@dataclass(frozen=True)
class OutOfRange:
    """Riemann-Hurwitz gives an integral but negative genus."""
    value: int

    def __bool__(self):
        return False


def rh_euler(order: int, sig: Signature) -> Fraction:
    """``2g - 2`` as an exact rational."""
    if order < 1:
        raise ValueError("order must be positive")
    return order * sig.orbifold_euler


def rh_genus(order: int, sig: Signature) -> int | NonIntegral | OutOfRange:
    """Genus of a surface with a group of ``order`` acting with ``sig``.

    Returns a falsy marker instead of raising when the arithmetic does not
    produce a non-negative integer genus.
    """
    val = (rh_euler(order, sig) + 2) / 2
    if val.denominator != 1:
        return NonIntegral(val)
    if val < 0:
        return OutOfRange(int(val))
    return int(val)


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def enumerate_signatures(order: int, g: int, gamma_max: int = 2) -> list[Signature]:
    """All signatures with ``gamma <= gamma_max`` and periods dividing
    ``order`` that give genus ``g`` by Riemann-Hurwitz."""
    if g < 2:
        raise ValueError("g must be at least 2")
    cands = [d for d in divisors(order) if d >= 2]
    out = []
    target_euler = Fraction(2 * g - 2, order)
    for gamma in range(gamma_max + 1):
        need = target_euler - (2 * gamma - 2)
        if need < 0:
            continue
        for periods in _period_multisets(need, cands):
            out.append(Signature(gamma, periods))
    return sorted(out)


def _period_multisets(need: Fraction, cands: Sequence[int]):
    """Non-decreasing tuples from ``cands`` with ``sum(1 - 1/m) == need``."""
    def rec(rest: Fraction, start: int, acc: list[int]):
        if rest == 0:
            yield tuple(acc)
            return
        # every further term is at least 1 - 1/cands[start] >= 1/2
        for i in range(start, len(cands)):
            m = cands[i]
            term = 1 - Fraction(1, m)
            if term > rest:
                break
            acc.append(m)
            yield from rec(rest - term, i, acc)
            acc.pop()
    yield from rec(need, 0, [])


def solve_triple_period(rhs: Fraction, allowed: Iterable[int] | None = None) -> list[tuple[int, int, int]]:
    """All ``m1 <= m2 <= m3`` with ``1/m1 + 1/m2 + 1/m3 == rhs``.

    With ``allowed=None`` every integer ``>= 2`` is admissible; the search is
    finite because ``m1 <= 3/rhs`` and ``m2 <= 2/(rhs - 1/m1)``, and ``m3`` is
    then determined.
    """
    rhs = Fraction(rhs)
    if rhs <= 0:
        raise ValueError("rhs must be positive")
    allowed_set = None if allowed is None else {int(a) for a in allowed}
    ok = (lambda m: m >= 2) if allowed_set is None else (lambda m: m >= 2 and m in allowed_set)
    out = []
    m1 = max(2, int(1 / rhs))
    while Fraction(3, m1) >= rhs:
        r1 = rhs - Fraction(1, m1)
        if r1 > 0 and ok(m1):
            m2 = max(m1, int(1 / r1))
            while Fraction(2, m2) >= r1:
                r2 = r1 - Fraction(1, m2)
                if r2 > 0 and r2.numerator == 1:
                    m3 = r2.denominator
                    if m3 >= m2 and ok(m2) and ok(m3):
                        out.append((m1, m2, m3))
                m2 += 1
        m1 += 1
    return out


def parse_rhs(text: str) -> Fraction:
    """Evaluate a sum of fractions such as ``"1/3+2/45"``."""
    compact = text.replace(" ", "")
    if not re.fullmatch(r"[+-]?\d+(/\d+)?([+-]\d+(/\d+)?)*", compact):
        raise ValueError(f"not a sum of fractions: {text!r}")
    total = Fraction(0)
    for sign, term in re.findall(r"([+-]?)(\d+(?:/\d+)?)", compact):
        val = Fraction(term)
        total += -val if sign == "-" else val
    return total


NOT_TRIANGLE = None


def hypermap_type(sig: Signature) -> tuple[int, int, int] | None:
    """The sorted period triple of a triangle signature, else ``None``."""
    if sig.gamma == 0 and sig.s == 3:
        return sig.periods  # type: ignore[return-value]
    return NOT_TRIANGLE
