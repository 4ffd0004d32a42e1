"""Dimensions in the isogeny decomposition of a Jacobian with group action.

Three group families are supported, each with an explicit list of complex
irreducible representations: cyclic groups, ``Z3 x Z_n`` and ``Z3 x D_g``.
All of their irreducibles are monomial (one non-zero root of unity per
column), so a representation is stored as a permutation plus exponents of a
fixed root of unity ``w_M``, with ``M`` the exponent of the group. Characters
are exact integer vectors in the power basis of ``Q(w_M)``.

For a generating vector ``(x_1, ..., x_s)`` of signature ``(gamma; ...)`` the
factor attached to the rational irreducible containing ``V`` has dimension

    k_V * (deg V * (gamma - 1) + 1/2 * sum_j (deg V - dim V^<x_j>))

for non-trivial ``V``, where ``k_V`` is the degree of the character field;
the trivial representation contributes the quotient genus ``gamma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .actions import GeneratingVector, subgroup_quotient_genus
from .catalog import cyclic, named
from .cyclotomic import CyclotomicNumber, basis_to_number, cyc, euler_phi, omega, roots_to_basis
from .groups import FiniteGroup, Subgroup
from .signatures import Signature, divisors


class UnsupportedFamily(ValueError):
    pass


class NonIntegerDimension(ArithmeticError):
    pass


class InapplicableResidue(ValueError):
    pass


Monomial = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True, eq=False)
class ExplicitRep:
    """A monomial representation given on the labelled generators.

    ``gen_images[label] = (perm, exps)`` is the matrix whose column ``i`` is
    ``w_level^exps[i]`` times the basis vector ``perm[i]``.
    """

    group: FiniteGroup = field(repr=False)
    degree: int
    label: str
    level: int
    gen_images: dict[str, Monomial] = field(repr=False)
    params: tuple = ()

    @cached_property
    def element_images(self) -> tuple[np.ndarray, np.ndarray]:
        """Permutations and exponents for every element, checked to define a
        homomorphism: each edge of the Cayley graph is verified."""
        G, d, M = self.group, self.degree, self.level
        gens = [(G.labels[k], np.array(p), np.array(e)) for k, (p, e) in self.gen_images.items()]
        perms = np.full((G.order, d), -1, dtype=np.int64)
        exps = np.zeros((G.order, d), dtype=np.int64)
        perms[0] = np.arange(d)
        seen = np.zeros(G.order, dtype=bool)
        seen[0] = True
        queue = [0]
        for x in queue:
            for gi, gp, ge in gens:
                y = int(G.mul[x, gi])
                # (P1, e1)(P2, e2) = (P1 o P2, e2 + e1[P2])
                p = perms[x][gp]
                e = (ge + exps[x][gp]) % M
                if not seen[y]:
                    seen[y] = True
                    perms[y], exps[y] = p, e
                    queue.append(y)
                elif not (np.array_equal(perms[y], p) and np.array_equal(exps[y], e)):
                    raise ValueError(f"{self.label} does not respect the relations of {G.name}")
        if not seen.all():
            raise ValueError("generator labels do not generate the group")
        return perms, exps

    def matrices(self) -> dict[str, list[list[CyclotomicNumber]]]:
        out = {}
        for k, (p, e) in self.gen_images.items():
            mat = [[cyc(0)] * self.degree for _ in range(self.degree)]
            for i in range(self.degree):
                mat[p[i]][i] = omega(self.level, e[i])
            out[k] = mat
        return out

    @cached_property
    def character(self) -> np.ndarray:
        """Integer power-basis coefficients of the trace, one row per element."""
        perms, exps = self.element_images
        counts = np.zeros((self.group.order, self.level), dtype=np.int64)
        fixed = perms == np.arange(self.degree)
        rows, cols = np.nonzero(fixed)
        np.add.at(counts, (rows, exps[rows, cols]), 1)
        return roots_to_basis(self.level, counts)

    def character_value(self, x: int) -> CyclotomicNumber:
        return basis_to_number(self.level, self.character[x].tolist())

    @property
    def is_trivial(self) -> bool:
        return self.degree == 1 and not self.character[:, 1:].any() and (self.character[:, 0] == 1).all()


def _mono1(k: int) -> Monomial:
    return ((0,), (k,))


def _family(G: FiniteGroup) -> tuple:
    fam = getattr(G, "family", None)
    if not fam or fam[0] not in ("cyclic", "z3_x_cyclic", "z3_x_dihedral"):
        raise UnsupportedFamily(f"no explicit irreducibles for {G.name or 'this group'}")
    if fam[0] == "z3_x_dihedral" and fam[1] % 2 == 0:
        raise UnsupportedFamily("Z3 x D_g needs g odd")
    return fam


def irreps(G: FiniteGroup) -> list[ExplicitRep]:
    """All complex irreducibles of a supported family group."""
    kind, n = _family(G)
    M = int(G.exponent)
    reps = []
    if kind == "cyclic":
        for d in range(n):
            reps.append(ExplicitRep(G, 1, f"chi_{d}", M, {"a": _mono1(d * M // n)}, (d,)))
    elif kind == "z3_x_cyclic":
        for j in range(3):
            for d in range(n):
                reps.append(ExplicitRep(G, 1, f"rho_{j},{d}", M,
                                        {"a": _mono1(j * M // 3), "b": _mono1(d * M // n)}, (j, d)))
    else:
        g = n
        half = M // 2
        for j in range(3):
            for e in range(2):
                label = "V_0" if (j, e) == (1, 1) else f"L_{j},{e}"
                reps.append(ExplicitRep(G, 1, label, M,
                                        {"t": _mono1(j * M // 3), "r": _mono1(0), "s": _mono1(e * half)},
                                        ("L", j, e)))
        for j in range(3):
            for k in range(1, (g - 1) // 2 + 1):
                label = f"V_{k}" if j == 1 else f"V_{k}'{j}"
                w = k * M // g
                tj = j * M // 3
                reps.append(ExplicitRep(G, 2, label, M, {
                    "t": ((0, 1), (tj, tj)),
                    "r": ((0, 1), (w, (M - w) % M)),
                    "s": ((1, 0), (0, 0)),
                }, ("V", j, k)))
    return reps


def fixed_dim(rep: ExplicitRep, h: int) -> int:
    """``dim V^<h>`` as the average of the character over ``<h>``."""
    G = rep.group
    cyc_h = G.powers(h)
    total = rep.character[cyc_h].sum(axis=0)
    o = len(cyc_h)
    if total[1:].any() or total[0] % o:
        raise NonIntegerDimension(f"{rep.label}: average over <{h}> is not an integer")
    val = int(total[0]) // o
    if not 0 <= val <= rep.degree:
        raise NonIntegerDimension(f"{rep.label}: fixed dimension {val} out of range")
    return val


@dataclass(frozen=True)
class GaloisOrbit:
    members: tuple[str, ...]
    field_degree: int
    representative: ExplicitRep = field(compare=False, repr=False)


def _power_maps(G: FiniteGroup, level: int) -> dict[int, np.ndarray]:
    out = {}
    for a in range(1, level + 1):
        if math.gcd(a, level) == 1:
            out[a] = np.array([G.power(x, a) for x in range(G.order)], dtype=np.int64)
    return out


def galois_orbits(reps: list[ExplicitRep]) -> list[GaloisOrbit]:
    """Partition by Galois conjugacy, using ``sigma_a chi(g) = chi(g^a)``."""
    if not reps:
        return []
    G, M = reps[0].group, reps[0].level
    maps = _power_maps(G, M)
    by_key = {r.character.tobytes(): r for r in reps}
    if len(by_key) != len(reps):
        raise ValueError("irreducibles with equal characters")
    done: set[str] = set()
    out = []
    for r in reps:
        if r.label in done:
            continue
        conj = {r.character[pm].tobytes() for pm in maps.values()}
        members = [by_key[k] for k in conj]
        members.sort(key=reps.index)
        done.update(m.label for m in members)
        out.append(GaloisOrbit(tuple(m.label for m in members), len(conj), r))
    return out


@dataclass(frozen=True)
class DecompositionRow:
    name: str
    orbit: GaloisOrbit
    factor_dim: int
    multiplicity: int


def _row_name(G: FiniteGroup, rep: ExplicitRep) -> str:
    kind, n = G.family
    p = rep.params
    if kind == "cyclic":
        return f"B_{math.gcd(p[0], n)}"
    if kind == "z3_x_cyclic":
        j, d = p
        return f"{'T' if j == 0 else 'B'}_{math.gcd(d, n)}"
    if p[0] == "L":
        return "E" if p[1] != 0 and p[2] == 1 else f"L_{p[1]},{p[2]}"
    return f"{'A' if p[1] else 'C'}_{math.gcd(p[2], n)}"


def orbit_dimension(orbit: GaloisOrbit, sig: Signature, v: GeneratingVector) -> int:
    rep = orbit.representative
    if rep.is_trivial:
        return sig.gamma
    deg = rep.degree
    twice = 2 * deg * (sig.gamma - 1) + sum(deg - fixed_dim(rep, x) for x in v.elliptic)
    twice *= orbit.field_degree
    if twice % 2:
        raise NonIntegerDimension(f"odd doubled dimension for {rep.label}")
    return twice // 2


def all_orbit_dimensions(G: FiniteGroup, sig: Signature, v: GeneratingVector) -> list[DecompositionRow]:
    """One row per Galois orbit, including those of dimension zero."""
    reps = irreps(G)
    return [DecompositionRow(_row_name(G, o.representative), o, orbit_dimension(o, sig, v),
                             o.representative.degree)
            for o in galois_orbits(reps)]


def factor_dimensions(G: FiniteGroup, sig: Signature, v: GeneratingVector) -> list[DecompositionRow]:
    return [r for r in all_orbit_dimensions(G, sig, v) if r.factor_dim]


def quotient_dimension_check(G: FiniteGroup, sig: Signature, v: GeneratingVector,
                             H: Subgroup) -> list[DecompositionRow]:
    """Rows of ``J_{X/H}``: each factor appears ``dim V^H`` times.

    ``H`` must be cyclic; the sum of ``factor_dim * multiplicity`` is the
    genus of ``X/H``.
    """
    members = sorted(H.members)
    h = next((x for x in members if int(G.orders[x]) == H.order), None)
    if h is None:
        raise ValueError("H is not cyclic")
    out = []
    for row in all_orbit_dimensions(G, sig, v):
        k = fixed_dim(row.orbit.representative, h)
        if row.factor_dim and k:
            out.append(DecompositionRow(row.name, row.orbit, row.factor_dim, k))
    return out


def quotient_total(G: FiniteGroup, sig: Signature, v: GeneratingVector, H: Subgroup) -> tuple[int, int]:
    """``(sum from the decomposition, genus of X/H by Riemann-Hurwitz)``."""
    rows = quotient_dimension_check(G, sig, v, H)
    return sum(r.factor_dim * r.multiplicity for r in rows), subgroup_quotient_genus(G, sig, v, H)


# -- the three families of the decomposition theorem ----------------------------


def divisor_sets(g: int) -> tuple[str, tuple[int, ...]]:
    """``("P", ...)`` for odd ``g`` prime to 3, ``("Q", ...)`` for odd ``g``
    divisible by 3, ``("R", ...)`` for even ``g`` not congruent to 2 mod 3."""
    if g < 3:
        raise ValueError("g must be at least 3")
    if g % 2:
        if g % 3:
            return "P", tuple(d for d in divisors(g) if d <= (g - 1) // 2)
        return "Q", tuple(d for d in divisors(g) if d % 3 and d <= 3 * g - 1)
    if g % 3 == 2:
        raise InapplicableResidue(f"g={g} is even and congruent to 2 mod 3")
    return "R", tuple(d for d in divisors(g + 1) if d <= g)


def expected_dimensions(g: int) -> list[tuple[str, int, int]]:
    """``(name, dim, multiplicity)`` from the closed formulas in ``phi``."""
    tag, ds = divisor_sets(g)
    if tag == "P":
        return [("E", 1, 1)] + [(f"A_{d}", euler_phi(g // d) // 2, 2) for d in ds]
    if tag == "Q":
        return [(f"B_{d}", euler_phi(3 * g // d) // 2, 1) for d in ds]
    return [(f"B_{d}", euler_phi((g + 1) // d), 1) for d in ds]


def theorem_action(g: int) -> tuple[FiniteGroup, Signature, GeneratingVector]:
    """The group, signature and generating vector used for genus ``g``."""
    tag, _ = divisor_sets(g)
    if tag == "P":
        G = named("z3_x_dihedral", g)
        sig = Signature(0, (2, 6, 3 * g))
        ell = (G.word("s"), G.word("t s r"), G.word("r^-1 t^-1"))
    elif tag == "Q":
        G = cyclic(3 * g)
        sig = Signature(0, (3, 3 * g, 3 * g))
        ell = (G.word(f"a^{g}"), G.word("a"), G.word(f"a^{2 * g - 1}"))
    else:
        G = named("z3_x_cyclic", g + 1)
        sig = Signature(0, (3, g + 1, 3 * g + 3))
        ell = (G.word("a"), G.word("b"), G.word("b^-1 a^-1"))
    v = GeneratingVector(G, sig, (), ell)
    if not v.is_valid():  # pragma: no cover - the vectors are fixed
        raise ArithmeticError(f"theorem vector for g={g} is invalid")
    return G, sig, v


@dataclass(frozen=True)
class JacobianTable:
    genus: int
    divisor_tag: str
    divisor_set: tuple[int, ...]
    group: str
    signature: Signature
    rows: tuple[DecompositionRow, ...]

    @property
    def total(self) -> int:
        return sum(r.factor_dim * r.multiplicity for r in self.rows)


def decomposition(g: int) -> JacobianTable:
    tag, ds = divisor_sets(g)
    G, sig, v = theorem_action(g)
    rows = factor_dimensions(G, sig, v)
    return JacobianTable(g, tag, ds, G.name, sig, tuple(rows))
