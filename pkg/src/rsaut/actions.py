"""Surface-kernel generating vectors and their classification.

A group ``G`` acts on a surface with signature ``(gamma; m_1, ..., m_s)``
exactly when there are elements ``a_1, b_1, ..., a_gamma, b_gamma`` and
``x_1, ..., x_s`` of ``G`` that generate it, with ``x_j`` of order exactly
``m_j`` and

    [a_1, b_1] ... [a_gamma, b_gamma] x_1 ... x_s = 1,   [a, b] = a b a^-1 b^-1.

Two genus-zero vectors give topologically equivalent actions when they are
related by automorphisms of ``G`` and braid moves
``(x_i, x_{i+1}) -> (x_i x_{i+1} x_i^-1, x_i)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .catalog import CatalogEntry, groups_of_order, semidirect_cyclic
from .groups import (FiniteGroup, Subgroup, automorphism_generators,
                     automorphisms, is_conjugate_to_power, normalizer_of_cyclic,
                     subgroup_generated)
from .signatures import Signature, enumerate_signatures, rh_genus

DEFAULT_NODE_CAP = 10**8


class SearchBoundExceeded(RuntimeError):
    pass


class NotNormal(ValueError):
    pass


@dataclass(frozen=True)
class GeneratingVector:
    group: FiniteGroup = field(compare=False, repr=False)
    sig: Signature
    hyperbolic: tuple[int, ...]
    elliptic: tuple[int, ...]

    @property
    def entries(self) -> tuple[int, ...]:
        return self.hyperbolic + self.elliptic

    def long_relation(self) -> int:
        return long_relation(self.group, self.hyperbolic, self.elliptic)

    def is_valid(self) -> bool:
        return is_generating_vector(self.group, self.sig, self.hyperbolic, self.elliptic)


def long_relation(G: FiniteGroup, hyperbolic: Sequence[int], elliptic: Sequence[int]) -> int:
    out = 0
    for a, b in zip(hyperbolic[0::2], hyperbolic[1::2]):
        out = int(G.mul[out, G.commutator(a, b)])
    for x in elliptic:
        out = int(G.mul[out, x])
    return out


def is_generating_vector(G: FiniteGroup, sig: Signature, hyperbolic: Sequence[int],
                         elliptic: Sequence[int], *, ordered_periods: Sequence[int] | None = None) -> bool:
    """Check all three conditions directly, independent of any search."""
    periods = list(sig.periods) if ordered_periods is None else list(ordered_periods)
    if len(hyperbolic) != 2 * sig.gamma or len(elliptic) != len(periods):
        return False
    if sorted(periods) != list(sig.periods):
        return False
    if any(int(G.orders[x]) != m for x, m in zip(elliptic, periods)):
        return False
    if long_relation(G, hyperbolic, elliptic) != 0:
        return False
    return subgroup_generated(G, list(hyperbolic) + list(elliptic)).order == G.order


# -- search -----------------------------------------------------------------


class _Search:
    def __init__(self, G: FiniteGroup, gamma: int, periods: Sequence[int], *,
                 node_cap: int, reverse: bool, limit: int | None):
        self.G = G
        self.gamma = gamma
        self.periods = list(periods)
        self.node_cap = node_cap
        self.nodes = 0
        self.limit = limit
        self.found: list[tuple[int, ...]] = []
        step = -1 if reverse else 1
        orders = G.orders
        self.by_order = {m: np.flatnonzero(orders == m)[::step] for m in set(self.periods)}
        self.all_elems = np.arange(G.order)[::step]
        cid = G.class_ids
        first = np.unique(cid, return_index=True)[1]
        self.class_reps = np.sort(first)[::step]
        m = G.mul
        ar = np.arange(G.order)
        self.comm = m[m[m[ar[:, None], ar[None, :]], G.inv[:, None]], G.inv[None, :]] \
            if gamma else None

    def _tick(self, k: int = 1):
        self.nodes += k
        if self.nodes > self.node_cap:
            raise SearchBoundExceeded(f"search exceeded {self.node_cap} nodes")

    def _done(self) -> bool:
        return self.limit is not None and len(self.found) >= self.limit

    def candidates(self, pos: int) -> np.ndarray:
        """Candidates for entry ``pos`` of the flattened tuple."""
        h = 2 * self.gamma
        cands = self.all_elems if pos < h else self.by_order[self.periods[pos - h]]
        if pos == 0:
            cands = cands[np.isin(cands, self.class_reps)]
        return cands

    def run(self):
        h = 2 * self.gamma
        total = h + len(self.periods)
        if total == 0:
            if self.G.order == 1:
                self.found.append(())
            return
        if any(m not in self.by_order or self.by_order[m].size == 0 for m in self.periods):
            return
        self._rec([], 0, total)

    def _prefix(self, chosen: list[int]) -> int:
        G = self.G
        out = 0
        h = 2 * self.gamma
        for i in range(0, min(len(chosen), h) - 1, 2):
            out = int(G.mul[out, self.comm[chosen[i], chosen[i + 1]]])
        for x in chosen[h:]:
            out = int(G.mul[out, x])
        return out

    def _rec(self, chosen: list[int], pos: int, total: int):
        if self._done():
            return
        G = self.G
        h = 2 * self.gamma
        if pos == total - 1 and pos >= h:
            # last elliptic entry is forced by the long relation
            prefix = self._prefix(chosen)
            last = int(G.inv[prefix])
            self._tick()
            if G.orders[last] == self.periods[-1] and (pos > 0 or last in self.class_reps):
                self._accept(chosen + [last])
            return
        if pos == total - 2 and pos >= h:
            # vectorize the final free entry
            prefix = self._prefix(chosen)
            cands = self.candidates(pos)
            self._tick(len(cands))
            last = G.inv[G.mul[prefix, cands]]
            ok = G.orders[last] == self.periods[-1]
            for c, l in zip(cands[ok].tolist(), last[ok].tolist()):
                self._accept(chosen + [c, l])
                if self._done():
                    return
            return
        if pos == total - 1 and pos < h:  # pragma: no cover - hyperbolic entries come in pairs
            raise AssertionError
        if pos == total - 2 and total == h:
            # no elliptic entries; final commutator: need [a, b] == prefix^-1
            prefix = self._prefix(chosen)
            target = int(G.inv[prefix])
            cands = self.candidates(pos)
            for a in cands.tolist():
                bs = np.flatnonzero(self.comm[a] == target)
                self._tick(1 + bs.size)
                for b in bs.tolist():
                    self._accept(chosen + [a, b])
                    if self._done():
                        return
            return
        for c in self.candidates(pos).tolist():
            self._tick()
            chosen.append(c)
            self._rec(chosen, pos + 1, total)
            chosen.pop()
            if self._done():
                return

    def _accept(self, entries: list[int]):
        if subgroup_generated(self.G, entries).order == self.G.order:
            self.found.append(tuple(entries))


def _conjugation_table(G: FiniteGroup) -> np.ndarray:
    """``C[h, x] = h x h^-1``."""
    ar = np.arange(G.order)
    return G.mul[G.mul[ar[:, None], ar[None, :]], G.inv[:, None]]


def _expand_conjugates(G: FiniteGroup, seeds: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    if not seeds:
        return []
    C = _conjugation_table(G)
    out = set()
    for v in seeds:
        rows = C[:, list(v)]
        out.update(map(tuple, np.unique(rows, axis=0).tolist()))
    return sorted(out)


def _raw_vectors(G: FiniteGroup, gamma: int, periods: Sequence[int], *, node_cap: int,
                 reverse: bool = False, limit: int | None = None) -> list[tuple[int, ...]]:
    search = _Search(G, gamma, periods, node_cap=node_cap, reverse=reverse, limit=limit)
    search.run()
    if limit is not None:
        return search.found
    return _expand_conjugates(G, search.found)


def find_vectors(G: FiniteGroup, sig: Signature, *, node_cap: int = DEFAULT_NODE_CAP,
                 reverse: bool = False, ordered_periods: Sequence[int] | None = None,
                 ) -> list[GeneratingVector]:
    """Every generating vector of ``G`` for ``sig``, sorted lexicographically.

    The elliptic periods follow ``sig.periods`` unless ``ordered_periods``
    (a permutation of them) is given. ``reverse`` flips the candidate order
    of the search, which must not change the result.
    """
    periods = list(sig.periods) if ordered_periods is None else list(ordered_periods)
    if sorted(periods) != list(sig.periods):
        raise ValueError("ordered_periods must be a permutation of the signature periods")
    h = 2 * sig.gamma
    raw = _raw_vectors(G, sig.gamma, periods, node_cap=node_cap, reverse=reverse)
    return [GeneratingVector(G, sig, v[:h], v[h:]) for v in raw]


def is_realized(G: FiniteGroup, sig: Signature, *, node_cap: int = DEFAULT_NODE_CAP) -> bool:
    return bool(_raw_vectors(G, sig.gamma, sig.periods, node_cap=node_cap, limit=1))


def find_vector(G: FiniteGroup, sig: Signature, *, node_cap: int = DEFAULT_NODE_CAP,
                ) -> GeneratingVector | None:
    """One generating vector (the first found) or ``None``."""
    raw = _raw_vectors(G, sig.gamma, sig.periods, node_cap=node_cap, limit=1)
    if not raw:
        return None
    h = 2 * sig.gamma
    return GeneratingVector(G, sig, raw[0][:h], raw[0][h:])


# -- classification ------------------------------------------------------------


@dataclass(frozen=True)
class EquivalenceClass:
    """One topological class of actions.

    ``orbit_size`` counts the vectors of the class whose periods appear in
    sorted order; ``representative`` is the lexicographically smallest.
    """
    representative: GeneratingVector
    orbit_size: int


@dataclass(frozen=True)
class NotClassified:
    """Positive-genus quotient: only the raw number of vectors is known."""
    raw_count: int

    def __bool__(self):
        return False


def braid_move(G: FiniteGroup, v: Sequence[int], i: int) -> tuple[int, ...]:
    """``(..., x_i, x_{i+1}, ...) -> (..., x_i x_{i+1} x_i^-1, x_i, ...)``."""
    v = list(v)
    a, b = v[i], v[i + 1]
    v[i] = int(G.mul[G.mul[a, b], G.inv[a]])
    v[i + 1] = a
    return tuple(v)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def classify(G: FiniteGroup, sig: Signature, *, node_cap: int = DEFAULT_NODE_CAP,
             reverse: bool = False, auts=None) -> list[EquivalenceClass] | NotClassified:
    """Classes of generating vectors under Aut(G) and braid moves.

    Braid moves permute the periods, so vectors for every ordering of the
    periods are collected and joined; each class is reported by its
    smallest member with sorted periods.
    """
    if sig.gamma > 0:
        return NotClassified(len(find_vectors(G, sig, node_cap=node_cap, reverse=reverse)))
    orderings = sorted(set(itertools.permutations(sig.periods)))
    vectors: list[tuple[int, ...]] = []
    for order in orderings:
        vectors += _raw_vectors(G, 0, order, node_cap=node_cap, reverse=reverse)
    if not vectors:
        return []
    index = {v: i for i, v in enumerate(vectors)}
    uf = _UnionFind(len(vectors))
    gens = automorphism_generators(G, auts if auts is not None else automorphisms(G))
    s = sig.s
    for i, v in enumerate(vectors):
        for phi in gens:
            uf.union(i, index[tuple(int(phi[x]) for x in v)])
        for j in range(s - 1):
            uf.union(i, index[braid_move(G, v, j)])
    sorted_periods = sig.periods
    members: dict[int, list[tuple[int, ...]]] = {}
    for i, v in enumerate(vectors):
        if tuple(int(G.orders[x]) for x in v) == sorted_periods:
            members.setdefault(uf.find(i), []).append(v)
    out = []
    for root in sorted(members, key=lambda r: min(members[r])):
        rep = min(members[root])
        out.append(EquivalenceClass(GeneratingVector(G, sig, (), rep), len(members[root])))
    return out


# -- fixed points and restrictions ------------------------------------------------


def macbeath_fixed_points(G: FiniteGroup, sig: Signature, v: GeneratingVector, tau: int) -> int:
    """``|N_G(<tau>)| * sum_j eps_j / m_j`` with ``eps_j = 1`` iff ``tau`` is
    conjugate to a power of ``x_j``."""
    if tau == 0:
        raise ValueError("tau must be non-trivial")
    total = Fraction(0)
    for x, m in zip(v.elliptic, (int(G.orders[x]) for x in v.elliptic)):
        if is_conjugate_to_power(G, tau, x):
            total += Fraction(1, m)
    count = normalizer_of_cyclic(G, tau).order * total
    if count.denominator != 1:  # pragma: no cover - the formula is integral
        raise ArithmeticError(f"non-integral fixed-point count {count}")
    return int(count)


def coset_fixed_points(G: FiniteGroup, v: GeneratingVector, tau: int) -> int:
    """Fixed points of ``tau`` counted on the cone-point fibres directly.

    Above the j-th cone point lie the cosets ``g<x_j>``; ``tau`` fixes the
    point ``g<x_j>`` iff ``g^-1 tau g`` lies in ``<x_j>``.
    """
    ar = np.arange(G.order)
    conj = G.mul[G.mul[G.inv, tau], ar]  # g^-1 tau g
    total = 0
    for x in v.elliptic:
        cyc = np.zeros(G.order, dtype=bool)
        cyc[G.powers(x)] = True
        hits = int(cyc[conj].sum())
        m = int(G.orders[x])
        total += hits // m
    return total


def _coset_ids(G: FiniteGroup, H: Subgroup) -> np.ndarray:
    """Right coset ``Hg`` of every ``g``, labelled by its smallest element."""
    mem = np.array(H.members)
    return G.mul[mem[:, None], np.arange(G.order)[None, :]].min(axis=0)


def induced_signature(G: FiniteGroup, sig: Signature, v: GeneratingVector, H: Subgroup) -> Signature:
    """Signature of the restricted action of ``H``.

    ``<x_j>`` acts on the right cosets ``H\\G``; an orbit of length ``l``
    contributes the period ``m_j / l`` (periods equal to 1 are dropped).
    The quotient genus then follows from Riemann-Hurwitz.
    """
    cid = _coset_ids(G, H)
    reps = np.unique(cid)
    periods = []
    for x in v.elliptic:
        m = int(G.orders[x])
        perm = cid[G.mul[reps, x]]
        seen = set()
        for c in reps.tolist():
            if c in seen:
                continue
            length = 0
            y = c
            while y not in seen:
                seen.add(y)
                length += 1
                y = int(perm[np.searchsorted(reps, y)])
            if m // length > 1:
                periods.append(m // length)
    g = rh_genus(G.order, sig)
    if not isinstance(g, int):
        raise ValueError(f"signature {sig} gives no genus for order {G.order}")
    branch = sum((1 - Fraction(1, p) for p in periods), Fraction(0))
    two_gamma = Fraction(2 * g - 2, H.order) - branch + 2
    if two_gamma.denominator != 1 or two_gamma % 2 or two_gamma < 0:
        raise ArithmeticError(f"inconsistent restriction: 2*gamma = {two_gamma}")
    return Signature(int(two_gamma) // 2, tuple(periods))


def subgroup_quotient_genus(G: FiniteGroup, sig: Signature, v: GeneratingVector, H: Subgroup) -> int:
    """Genus of ``X/H`` for any subgroup ``H``."""
    return induced_signature(G, sig, v, H).gamma


def quotient_genus(G: FiniteGroup, sig: Signature, v: GeneratingVector, N: Subgroup) -> int:
    """Genus of ``X/N`` for a normal subgroup ``N``."""
    if not N.is_normal():
        raise NotNormal("subgroup is not normal")
    return subgroup_quotient_genus(G, sig, v, N)


# -- genus/order classification ---------------------------------------------------


@dataclass(frozen=True)
class ClassificationRow:
    group: str
    iso_class_id: int
    signature: Signature
    class_count: int | None
    raw_count: int
    family_dimension: int
    hypermap_type: tuple[int, int, int] | None = None


@dataclass(frozen=True)
class ClassificationReport:
    genus: int
    order: int
    rows: tuple[ClassificationRow, ...]


def classify_genus_order(g: int, order: int,
                         catalog: Callable[[int], list[CatalogEntry]] | list[CatalogEntry] | None = None,
                         *, gamma_max: int = 2, node_cap: int = DEFAULT_NODE_CAP) -> ClassificationReport:
    """Every realized (group, signature) pair for genus ``g`` and ``|G| = order``.

    ``catalog`` is a list of entries or a callable returning them for an
    order; the default is :func:`groups_of_order`.
    """
    from .signatures import hypermap_type

    if catalog is None:
        entries = groups_of_order(order)
    elif callable(catalog):
        entries = catalog(order)
    else:
        entries = list(catalog)
    sigs = enumerate_signatures(order, g, gamma_max)
    rows = []
    for entry in entries:
        G = entry.group
        present = set(G.orders.tolist())
        auts = None
        for sig in sigs:
            if not set(sig.periods) <= present:
                continue
            if not is_realized(G, sig, node_cap=node_cap):
                continue
            if sig.gamma == 0:
                if auts is None:
                    auts = automorphisms(G)
                classes = classify(G, sig, node_cap=node_cap, auts=auts)
                count = len(classes)
                raw = sum(c.orbit_size for c in classes)
            else:
                count = None
                raw = classify(G, sig, node_cap=node_cap).raw_count
            rows.append(ClassificationRow(G.name, entry.iso_class_id, sig, count, raw,
                                          sig.family_dimension, hypermap_type(sig)))
    return ClassificationReport(g, order, tuple(rows))


def extension_nonexistence_18n(n: int, *, node_cap: int = DEFAULT_NODE_CAP) -> bool:
    """True iff no ``Z_{9n} ⋊ Z_2`` admits a vector of signature ``(0; 2, 6, 9n)``."""
    if n % 2 == 0:
        raise ValueError("n must be odd")
    m = 9 * n
    sig = Signature(0, (2, 6, m))
    for r in range(1, m):
        if r * r % m != 1:
            continue
        if is_realized(semidirect_cyclic(m, 2, r), sig, node_cap=node_cap):
            return False
    return True
