"""Constructors for the groups the classification needs, a per-order census,
and a plain-text group file format.

Every constructed group is embedded by its left-regular representation and
carries labelled generators (``G.labels``) so relations can be checked by
name.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .groups import (DEFAULT_CLOSURE_CAP, FiniteGroup, GroupHom, Permutation,
                     are_isomorphic, automorphisms, closure_from_generators,
                     hom_from_images, invariants, parse_cycles,
                     small_generating_set)


class InvalidTwist(ValueError):
    """The action data of a semidirect product is not a homomorphism."""


class InvalidParams(ValueError):
    pass


class UnsupportedOrder(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, msg: str, line: int):
        super().__init__(f"line {line}: {msg}")
        self.line = line


class DegreeMismatch(ValueError):
    pass


# -- basic constructors -------------------------------------------------------


def cyclic(n: int, label: str = "a") -> FiniteGroup:
    if n < 1:
        raise InvalidParams("n must be positive")
    ar = np.arange(n)
    table = (ar[:, None] + ar[None, :]) % n
    gens = [1 % n] if n > 1 else []
    labels = {label: 1 % n}
    return FiniteGroup.from_table(table, gens, name=f"Z{n}", labels=labels,
                                  family=("cyclic", n))


def _product_table(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    na, nb = A.shape[0], B.shape[0]
    ia = np.repeat(np.arange(na), nb)
    ib = np.tile(np.arange(nb), na)
    return A[np.ix_(ia, ia)] * nb + B[np.ix_(ib, ib)]


def direct_product(G: FiniteGroup, H: FiniteGroup, *, name: str | None = None) -> FiniteGroup:
    nb = H.order
    table = _product_table(G.mul, H.mul)
    gens = [g * nb for g in G.generators] + [h for h in H.generators]
    labels = {k: v * nb for k, v in G.labels.items()}
    for k, v in H.labels.items():
        labels[k if k not in labels else k + "'"] = v
    return FiniteGroup.from_table(table, gens, name=name or f"{G.name}x{H.name}",
                                  labels=labels)


def abelian(factors: Sequence[int]) -> FiniteGroup:
    """Direct product of cyclic groups of the given orders."""
    factors = [int(f) for f in factors]
    if not factors:
        raise InvalidParams("factors must be nonempty")
    G = cyclic(factors[0])
    for f in factors[1:]:
        G = direct_product(G, cyclic(f))
    G.name = "x".join(f"Z{f}" for f in factors)
    G.family = ("abelian", tuple(factors))
    return G


def semidirect_product(N: FiniteGroup, K: FiniteGroup, action: Sequence[np.ndarray],
                       *, name: str = "", labels: dict[str, int] | None = None,
                       ) -> FiniteGroup:
    """``N ⋊ K`` where ``action[i]`` is the index map of the automorphism of
    ``N`` induced by the i-th generator of ``K``.

    Raw elements are pairs ``(n, k)`` at index ``n*|K| + k`` with product
    ``(n1, k1)(n2, k2) = (n1 * k1(n2), k1 k2)``. ``labels`` uses raw indices.
    """
    nN, nK = N.order, K.order
    acts = [np.asarray(a, dtype=np.int64) for a in action]
    if len(acts) != len(K.generators):
        raise InvalidTwist("one automorphism per generator of K is required")
    for a in acts:
        if sorted(a.tolist()) != list(range(nN)) or not _respects(N, a):
            raise InvalidTwist("action image is not an automorphism of N")
    # induced map on every element of K, via its BFS words
    Phi = np.full((nK, nN), -1, dtype=np.int64)
    Phi[0] = np.arange(nN)
    frontier = [0]
    while frontier:
        nxt = []
        for k in frontier:
            for g, a in zip(K.generators, acts):
                kg = int(K.mul[k, g])
                img = Phi[k][a]
                if Phi[kg, 0] < 0:
                    Phi[kg] = img
                    nxt.append(kg)
                elif not (Phi[kg] == img).all():
                    raise InvalidTwist("action does not respect the relations of K")
        frontier = nxt
    if (Phi < 0).any():
        raise InvalidTwist("K generators do not generate K")
    n_idx = np.repeat(np.arange(nN), nK)
    k_idx = np.tile(np.arange(nK), nN)
    twisted = Phi[k_idx[:, None], n_idx[None, :]]
    table = N.mul[n_idx[:, None], twisted] * nK + K.mul[k_idx[:, None], k_idx[None, :]]
    gens = [g * nK for g in N.generators] + [k for k in K.generators]
    return FiniteGroup.from_table(table, gens, name=name, labels=labels)


def _respects(N: FiniteGroup, a: np.ndarray) -> bool:
    return all((a[N.mul[:, g]] == N.mul[a, a[g]]).all() for g in N.generators)


def _twist_order(a: np.ndarray) -> int:
    ident = np.arange(a.size)
    cur, k = a, 1
    while not (cur == ident).all():
        cur = a[cur]
        k += 1
    return k


def semidirect_abelian_cyclic(A: FiniteGroup, k: int, phi, *, name: str = "",
                              labels: dict[str, int] | None = None) -> FiniteGroup:
    """``A ⋊ Z_k`` with the generator of ``Z_k`` acting by ``phi``.

    ``phi`` is a :class:`GroupHom` or an index map; ``phi^k`` must be the
    identity. Labels of ``A`` are kept and the new generator is labelled
    ``"b"`` unless it collides.
    """
    if not A.is_abelian:
        raise InvalidTwist("A must be abelian")
    a = np.asarray(phi.mapping if isinstance(phi, GroupHom) else phi, dtype=np.int64)
    if sorted(a.tolist()) != list(range(A.order)) or not _respects(A, a):
        raise InvalidTwist("phi is not an automorphism of A")
    if k % _twist_order(a):
        raise InvalidTwist(f"phi has order {_twist_order(a)}, not dividing {k}")
    Zk = cyclic(k)
    raw_labels = {key: v * k for key, v in A.labels.items()}
    bl = "b" if "b" not in raw_labels else "c"
    raw_labels[bl] = 1 % k
    return semidirect_product(A, Zk, [a] if k > 1 else [], name=name,
                              labels=labels if labels is not None else raw_labels)


def semidirect_cyclic(m: int, k: int, r: int, *, labels=("a", "b")) -> FiniteGroup:
    """``<a, b | a^m = b^k = 1, b a b^-1 = a^r>``."""
    if m < 1 or k < 1:
        raise InvalidParams("m and k must be positive")
    r %= m
    if math.gcd(r, m) != 1 and m > 1:
        raise InvalidTwist(f"r={r} is not a unit mod {m}")
    if pow(r, k, m) != 1 % m:
        raise InvalidTwist(f"r^k = {pow(r, k, m)} is not 1 mod {m}")
    A = cyclic(m)
    # index i of cyclic(m) is a^i
    phi = (np.arange(m) * r) % m
    la, lb = labels
    G = semidirect_abelian_cyclic(A, k, phi, labels={la: 1 * k if m > 1 else 0, lb: 1 % k})
    G.name = f"Z{m}:Z{k}(r={r})" if r != 1 % m else f"Z{m}xZ{k}"
    G.family = ("semidirect_cyclic", m, k, r)
    return G


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n`` with generators ``r`` (rotation) and
    ``s`` (reflection)."""
    G = semidirect_cyclic(n, 2, n - 1, labels=("r", "s"))
    G.name = f"D{n}"
    G.family = ("dihedral", n)
    return G


# -- named groups ---------------------------------------------------------------

RELATIONS = {
    "z3_x_dihedral": lambda g: ["t^3", f"r^{g}", "s^2", "s r s r", "t r t^-1 r^-1",
                                "t s t^-1 s^-1"],
    "dp_x_z6": lambda p: [f"R^{p}", "S^2", "T^6", "S R S R", "R T R^-1 T^-1",
                          "S T S^-1 T^-1"],
    "zp_rtimes_z12": lambda p: [f"x^{p}", "y^12", ("y x y^-1", "x^-1")],
    "z7_rtimes_z9": lambda: ["a^7", "b^9", ("b a b^-1", "a^4")],
    "a4": lambda: ["a^2", "b^2", "a b a b", "t^3", ("t a t^-1", "b"), ("t b t^-1", "a b")],
    "z3_x_cyclic": lambda n: ["a^3", f"b^{n}", "a b a^-1 b^-1"],
}


def _units_order(r: int, p: int) -> int:
    k, x = 1, r % p
    while x != 1:
        x = x * r % p
        k += 1
    return k


def named(tag: str, *params) -> FiniteGroup:
    """Groups with the presentations used in the classification.

    Tags: ``z3_x_dihedral(g)``, ``dp_x_z6(p)``, ``zp_rtimes_z12(p)``,
    ``z7_rtimes_z9()``, ``a4()``, ``zp_rtimes_a4(p, (ea, eb, n))`` and
    ``z3_x_cyclic(n)``.
    """
    try:
        if tag == "z3_x_dihedral":
            (g,) = params
            G = direct_product(cyclic(3, "t"), dihedral(g), name=f"Z3xD{g}")
            G.family = ("z3_x_dihedral", g)
        elif tag == "z3_x_cyclic":
            (n,) = params
            G = direct_product(cyclic(3, "a"), cyclic(n, "b"), name=f"Z3xZ{n}")
            G.family = ("z3_x_cyclic", n)
        elif tag == "dp_x_z6":
            (p,) = params
            D = semidirect_cyclic(p, 2, p - 1, labels=("R", "S"))
            G = direct_product(D, cyclic(6, "T"), name=f"D{p}xZ6")
        elif tag == "zp_rtimes_z12":
            (p,) = params
            G = semidirect_cyclic(p, 12, p - 1, labels=("x", "y"))
            G.name = f"Z{p}:2Z12"
        elif tag == "z7_rtimes_z9":
            if params:
                raise InvalidParams("z7_rtimes_z9 takes no parameters")
            G = semidirect_cyclic(7, 9, 4)
            G.name = "Z7:Z9"
        elif tag == "a4":
            if params:
                raise InvalidParams("a4 takes no parameters")
            G = _a4()
        elif tag == "zp_rtimes_a4":
            p, (ea, eb, n) = params
            G = _zp_rtimes_a4(p, ea, eb, n)
        else:
            raise InvalidParams(f"unknown group tag {tag!r}")
    except (TypeError, ValueError) as exc:
        if isinstance(exc, (InvalidParams, InvalidTwist)):
            raise
        raise InvalidParams(f"{tag}{params}: {exc}") from exc
    if G.family is None:
        G.family = (tag, *params)
    return G


def _a4() -> FiniteGroup:
    V = direct_product(cyclic(2, "a"), cyclic(2, "b"), name="Z2xZ2")
    a, b = V.labels["a"], V.labels["b"]
    ab = int(V.mul[a, b])
    images = {a: b, b: ab}
    phi = hom_from_images(V, V, (a, b), (images[a], images[b]))
    G = semidirect_abelian_cyclic(V, 3, phi.mapping,
                                  labels={"a": a * 3, "b": b * 3, "t": 1})
    G.name = "A4"
    G.family = ("a4",)
    return G


def _zp_rtimes_a4(p: int, ea: int, eb: int, n: int) -> FiniteGroup:
    """``Z_p ⋊ A4`` with ``a z a = z^ea``, ``b z b = z^eb``, ``t z t^-1 = z^n``."""
    A4 = _a4()
    Zp = cyclic(p, "z")
    acts = []
    for gen in A4.generators:
        lab = next(k for k, v in A4.labels.items() if v == gen)
        u = {"a": ea, "b": eb, "t": n}[lab] % p
        if math.gcd(u, p) != 1:
            raise InvalidTwist(f"{u} is not a unit mod {p}")
        acts.append((np.arange(p) * u) % p)
    nK = A4.order
    labels = {"z": Zp.labels["z"] * nK}
    for k, v in A4.labels.items():
        labels[k] = v
    G = semidirect_product(Zp, A4, acts, name=f"Z{p}:A4(n={n % p})", labels=labels)
    G.family = ("zp_rtimes_a4", p, (ea % p, eb % p, n % p))
    return G


def check_relations(G: FiniteGroup, relations) -> bool:
    """Each relation is a word equal to the identity or a pair of equal words."""
    for rel in relations:
        if isinstance(rel, tuple):
            if G.word(rel[0]) != G.word(rel[1]):
                return False
        elif G.word(rel) != 0:
            return False
    return True


# -- census -----------------------------------------------------------------------

# Number of groups of each order, independent of the construction below.
# Squarefree orders use Hölder's formula instead (see holder_count).
EXPECTED_COUNTS = {
    9: 2, 25: 2, 49: 2,
    18: 5,     # Z18, Z3xZ6, D9, S3xZ3, (Z3xZ3):Z2
    27: 5,     # three abelian, Heisenberg, Z9:Z3
    45: 2,     # both abelian (Sylow subgroups normal)
    63: 4,     # Z63, Z3xZ21, Z7:Z9, (Z7:Z3)xZ3
    75: 3,     # Z75, Z5xZ15, (Z5xZ5):Z3
    99: 2,
    117: 4,    # Z117, Z3xZ39, Z13:Z9, (Z13:Z3)xZ3
    126: 16,
    147: 6,
    225: 6,
    315: 4,    # Z315, Z3xZ105, (Z7:Z9)xZ5, (Z7:Z3)xZ15
    495: 4,    # Z495, Z3xZ165, (Z11:Z5)xZ9, (Z11:Z5)xZ3xZ3
    1845: 4,   # as 495 with 41 in place of 11
}

CATALOG_VERSION = 1


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


def holder_count(n: int) -> int:
    """Number of groups of squarefree order ``n`` (Hölder)."""
    primes = sorted(factorize(n))
    total = 0
    for r in range(len(primes) + 1):
        for sub in itertools.combinations(primes, r):
            term = 1
            for p in primes:
                if p in sub:
                    continue
                c = sum(1 for q in sub if q % p == 1)
                term *= (p ** c - 1) // (p - 1)
            total += term
    return total


def expected_count(n: int) -> int | None:
    if n in EXPECTED_COUNTS:
        return EXPECTED_COUNTS[n]
    if is_squarefree(n):
        return holder_count(n)
    return None


def _partitions(e: int, maxpart: int | None = None):
    if e == 0:
        yield ()
        return
    maxpart = e if maxpart is None else maxpart
    for first in range(min(e, maxpart), 0, -1):
        for rest in _partitions(e - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class GroupRecipe:
    """Serializable description of how a catalog group was built.

    ``kind`` is one of ``cyclic``, ``abelian``, ``dihedral``, ``semidirect``,
    ``direct``, ``named`` or ``external``; ``params`` holds JSON-compatible
    data for that kind.
    """

    kind: str
    params: tuple

    def to_json(self):
        return {"kind": self.kind, "params": _jsonable(self.params)}

    @classmethod
    def from_json(cls, data) -> GroupRecipe:
        return cls(data["kind"], _tupled(data["params"]))

    def realize(self) -> FiniteGroup:
        k, p = self.kind, self.params
        if k == "cyclic":
            return cyclic(*p)
        if k == "abelian":
            return abelian(p[0])
        if k == "dihedral":
            return dihedral(*p)
        if k == "named":
            return named(p[0], *p[1:])
        if k == "direct":
            G = p[0].realize()
            for q in p[1:]:
                G = direct_product(G, q.realize())
            return G
        if k == "external":
            return parse_group_file(p[0])
        if k == "semidirect":
            primary, kk, images = p
            return _build_semidirect(primary, kk, images)
        raise ValueError(f"unknown recipe kind {k!r}")


def _jsonable(x):
    if isinstance(x, GroupRecipe):
        return x.to_json()
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    return x


def _tupled(x):
    if isinstance(x, dict) and "kind" in x:
        return GroupRecipe.from_json(x)
    if isinstance(x, list):
        return tuple(_tupled(v) for v in x)
    return x


@dataclass
class CatalogEntry:
    recipe: GroupRecipe
    group: FiniteGroup = field(repr=False)
    iso_class_id: int


def _primary_group(p: int, parts: Sequence[int]) -> FiniteGroup:
    return abelian([p ** e for e in parts])


def _abelian_from_primary(primary) -> list[FiniteGroup]:
    return [_primary_group(p, parts) for p, parts in primary]


def _combine_maps(maps: Sequence[np.ndarray], sizes: Sequence[int]) -> np.ndarray:
    out = np.zeros(1, dtype=np.int64)
    for m, s in zip(maps, sizes):
        out = (out[:, None] * s + m[None, :]).ravel()
    return out


def _raw_product(groups: Sequence[FiniteGroup]) -> np.ndarray:
    table = np.zeros((1, 1), dtype=np.int64)
    for G in groups:
        table = _product_table(table, G.mul)
    return table


def _build_semidirect(primary, k: int, images) -> FiniteGroup:
    """Realize ``A ⋊_phi Z_k`` where ``A`` is the product of primary parts and
    ``phi`` acts on part ``i`` by sending ``small_generating_set`` of that
    part to ``images[i]``."""
    parts = _abelian_from_primary(primary)
    sizes = [P.order for P in parts]
    maps = [hom_from_images(P, P, small_generating_set(P), img).mapping for P, img in zip(parts, images)]
    raw_A = _raw_product(parts)
    phi = _combine_maps(maps, sizes)
    nA = raw_A.shape[0]
    # raw generators of A: each part's generators embedded
    gens = []
    stride = nA
    for P, s in zip(parts, sizes):
        stride //= s
        gens += [g * stride for g in P.generators]
    A = FiniteGroup(raw_A, gens)  # raw layout, not canonicalized
    Zk = cyclic(k)
    act = [phi] if k > 1 else []
    name = _semidirect_name(tuple(primary), k, parts, maps)
    return semidirect_product(A, Zk, act, name=name)


def _invariant_factor_name(primary) -> str:
    """``Z{d1}xZ{d2}...`` with ``d1 | d2 | ...`` for a list of primary parts."""
    if not primary:
        return "1"
    width = max(len(parts) for _, parts in primary)
    factors = [1] * width
    for p, parts in primary:
        for i, e in enumerate(sorted(parts, reverse=True)):
            factors[width - 1 - i] *= p ** e
    return "x".join(f"Z{d}" for d in factors)


def _semidirect_name(primary, k: int, parts, maps) -> str:
    """Readable name for ``A ⋊ Z_k``: the parts acted on trivially split off
    as a direct factor and a dihedral action is recognized."""
    moved, fixed = [], []
    inverted = True
    for (p, exps), P, m in zip(primary, parts, maps):
        if (m == np.arange(P.order)).all():
            fixed.append((p, exps))
        else:
            moved.append((p, exps))
            inverted &= len(exps) == 1 and bool((m == P.inv).all())
    if not moved:
        merged = {p: list(exps) for p, exps in primary}
        for p, e in factorize(k).items():
            merged.setdefault(p, []).append(e)
        return _invariant_factor_name(tuple((p, tuple(v)) for p, v in sorted(merged.items())))
    a_name = _invariant_factor_name(tuple(moved))
    if k == 2 and inverted:
        core = f"D{math.prod(p ** e[0] for p, e in moved)}"
    elif len(_invariant_factor_name(tuple(moved)).split("x")) == 1:
        core = f"{a_name}:Z{k}"
    else:
        core = f"({a_name}):Z{k}"
    if not fixed:
        return core
    if ":" in core:
        core = f"({core})"
    return f"{core}x{_invariant_factor_name(tuple(fixed))}"


def _primary_types(n: int):
    fac = sorted(factorize(n).items())
    for combo in itertools.product(*[list(_partitions(e)) for _, e in fac]):
        yield tuple((p, parts) for (p, _), parts in zip(fac, combo))


def _twists(P: FiniteGroup, k: int) -> list[tuple[int, ...]]:
    """Automorphisms of ``P`` with order dividing ``k``, one per conjugacy
    class in Aut(P), as images of ``small_generating_set(P)``."""
    auts = automorphisms(P)
    maps = [a.mapping for a in auts]
    keys = {m.tobytes(): i for i, m in enumerate(maps)}
    inv = [None] * len(maps)
    for i, m in enumerate(maps):
        im = np.empty_like(m)
        im[m] = np.arange(m.size)
        inv[i] = keys[im.tobytes()]
    good = [i for i, m in enumerate(maps) if k % _twist_order(m) == 0]
    seen = set()
    reps = []
    for i in good:
        if i in seen:
            continue
        reps.append(auts[i].generator_images)
        for j, c in enumerate(maps):
            seen.add(keys[c[maps[i][maps[inv[j]]]].tobytes()])
    return reps


def census_candidates(n: int):
    """Recipes covering ``A ⋊ Z_k`` for all abelian ``A`` with ``|A| k = n``,
    in a canonical order (largest ``A`` first)."""
    out = []
    divisors = sorted((d for d in range(1, n + 1) if n % d == 0), reverse=True)
    for a in divisors:
        k = n // a
        for primary in _primary_types(a) if a > 1 else [()]:
            parts = _abelian_from_primary(primary)
            if k == 1:
                out.append(GroupRecipe("semidirect", (primary, 1, tuple(small_generating_set(P) for P in parts))))
                continue
            options = [_twists(P, k) for P in parts]
            for combo in itertools.product(*options):
                out.append(GroupRecipe("semidirect", (primary, k, tuple(combo))))
    return out


def groups_of_order(n: int, *, extra: Sequence[tuple[str, FiniteGroup]] = ()) -> list[CatalogEntry]:
    """All groups of order ``n`` up to isomorphism, for supported ``n``.

    The list is built from abelian-by-cyclic candidates deduplicated by
    isomorphism and checked against an independent expected count; a
    mismatch raises rather than returning an incomplete census.

    ``extra`` holds ``(path, group)`` pairs read from group files. For an
    order without a validated census they form the whole list, which is then
    only as complete as the files supplied.
    """
    expected = expected_count(n)
    extra = [(path, G) for path, G in extra if G.order == n]
    if expected is None and not extra:
        raise UnsupportedOrder(f"no validated census for order {n}")
    entries: list[CatalogEntry] = []
    fingerprints: list[tuple] = []
    if expected is not None:
        for recipe in census_candidates(n):
            if len(entries) == expected:
                break
            _add_unique(entries, fingerprints, recipe, recipe.realize())
    for path, G in extra:
        _add_unique(entries, fingerprints, GroupRecipe("external", (str(path),)), G)
    if expected is not None and len(entries) != expected:
        raise UnsupportedOrder(
            f"census for order {n} found {len(entries)} groups, expected {expected}")
    return entries


def load_group_dir(directory) -> list[tuple[str, FiniteGroup]]:
    """Every ``*.grp`` or ``*.txt`` group file in ``directory``, sorted by name."""
    files = sorted(p for p in Path(directory).iterdir() if p.suffix in (".grp", ".txt"))
    return [(str(p), parse_group_file(p)) for p in files]


def _add_unique(entries, fingerprints, recipe, G) -> bool:
    fp = invariants(G)
    for e, f in zip(entries, fingerprints):
        if f == fp and are_isomorphic(e.group, G):
            return False
    entries.append(CatalogEntry(recipe, G, len(entries)))
    fingerprints.append(fp)
    return True


# -- group files --------------------------------------------------------------------


def parse_group_text(text: str, *, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    degree = None
    name = ""
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            head = line.split()
            if len(head) != 2 or head[0] != "degree" or not head[1].isdigit():
                raise ParseError("expected 'degree N'", lineno)
            degree = int(head[1])
            continue
        if line.startswith("name"):
            name = line[4:].strip()
            continue
        try:
            cycles = parse_cycles(line)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        for cyc in cycles:
            for pt in cyc:
                if pt >= degree:
                    raise DegreeMismatch(f"line {lineno}: point {pt} >= degree {degree}")
        try:
            gens.append(Permutation.from_cycles(degree, cycles))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    if degree is None:
        raise ParseError("missing 'degree N' header", 1)
    return closure_from_generators(degree, gens, name=name, cap=cap)


def parse_group_file(path) -> FiniteGroup:
    return parse_group_text(Path(path).read_text())


def format_group(G: FiniteGroup) -> str:
    lines = [f"degree {G.degree}"]
    if G.name:
        lines.append(f"name {G.name}")
    for g in G.generators:
        lines.append(str(G.elements[g]))
    return "\n".join(lines) + "\n"


def write_group_file(G: FiniteGroup, path) -> None:
    Path(path).write_text(format_group(G))
