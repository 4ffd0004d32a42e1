"""Finite groups as permutation groups with a materialized Cayley table.

Elements are addressed by integer index; index 0 is always the identity and
the remaining indices follow breadth-first order from the generators, so a
group built twice from the same generators is laid out identically.

Products compose right to left: ``(p * q)[x] == p[q[x]]``.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

DEFAULT_CLOSURE_CAP = 20000


class ClosureBoundExceeded(RuntimeError):
    """A closure grew past its configured cap."""


class NotDividing(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0, ..., degree - 1}`` given by its image list."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles) -> Permutation:
        """Build from cycle notation, either a string ``"(0 1 2)(3 4)"`` or a
        list of point tuples. Fixed points may be omitted."""
        if isinstance(cycles, str):
            cycles = parse_cycles(cycles)
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if not (0 <= a < degree and 0 <= b < degree):
                    raise ValueError(f"point out of range for degree {degree}: {a}")
                if a in seen:
                    raise ValueError(f"point {a} repeated in cycles")
                seen.add(a)
                images[a] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.images[x] for x in other.images))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[tuple[int, ...]]:
    text = text.strip()
    leftover = _CYCLE_RE.sub("", text).strip()
    if leftover:
        raise ValueError(f"unparsable cycle text: {leftover!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        pts = tuple(int(tok) for tok in body.replace(",", " ").split())
        if pts:
            cycles.append(pts)
    return cycles


def _bfs_layout(n: int, right_mult, gens: Sequence[int], identity: int):
    """Breadth-first enumeration from ``identity`` under right multiplication
    by ``gens``. Returns ``(order, parent, via)`` in discovery order."""
    pos = {identity: 0}
    order = [identity]
    parent = [-1]
    via = [-1]
    i = 0
    while i < len(order):
        x = order[i]
        for k, g in enumerate(gens):
            y = right_mult(x, g)
            if y not in pos:
                pos[y] = len(order)
                order.append(y)
                parent.append(i)
                via.append(k)
        i += 1
    return order, parent, via


class FiniteGroup:
    """A finite group with a total multiplication table.

    Use :func:`closure_from_generators` for permutation input or
    :meth:`from_table` for an abstract table. Instances are treated as
    immutable; derived tables are cached on first use.
    """

    def __init__(self, mul: np.ndarray, generators: Sequence[int], *,
                 perms: np.ndarray | None = None, name: str = "",
                 labels: dict[str, int] | None = None, family: tuple | None = None):
        mul = np.ascontiguousarray(mul, dtype=np.int32)
        mul.setflags(write=False)
        self.mul = mul
        self.order = mul.shape[0]
        self.generators = tuple(int(g) for g in generators)
        self._perms = perms
        self.name = name
        self.labels = dict(labels or {})
        self.family = family

    @classmethod
    def from_table(cls, table: np.ndarray, generators: Sequence[int], *,
                   name: str = "", labels: dict[str, int] | None = None,
                   family: tuple | None = None,
                   cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
        """Canonicalize an abstract Cayley table.

        ``table[a, b]`` is the index of ``a*b``; ``generators`` and ``labels``
        refer to the raw indices. The result is the subgroup generated by
        ``generators``, relabelled in breadth-first order, embedded by its
        left-regular representation.
        """
        table = np.asarray(table)
        n = table.shape[0]
        ident = np.flatnonzero((table == np.arange(n)).all(axis=1))
        if ident.size != 1:
            raise ValueError("table has no unique identity")
        order, _, _ = _bfs_layout(n, lambda x, g: int(table[x, g]),
                                  [int(g) for g in generators], int(ident[0]))
        m = len(order)
        if m > cap:
            raise ClosureBoundExceeded(f"group order {m} exceeds cap {cap}")
        old = np.array(order, dtype=np.int64)
        new_of = np.full(n, -1, dtype=np.int64)
        new_of[old] = np.arange(m)
        sub = table[np.ix_(old, old)]
        mul = new_of[sub]
        if (mul < 0).any():
            raise ValueError("generators do not close under the table")
        gens = [int(new_of[g]) for g in generators]
        lab = {k: int(new_of[v]) for k, v in (labels or {}).items()}
        return cls(mul, gens, name=name, labels=lab, family=family)

    # -- basic structure -------------------------------------------------

    @property
    def degree(self) -> int:
        return self.order if self._perms is None else self._perms.shape[1]

    @cached_property
    def perm_array(self) -> np.ndarray:
        """Element permutations as rows (left-regular when none were given)."""
        return self.mul if self._perms is None else self._perms

    @cached_property
    def elements(self) -> list[Permutation]:
        return [Permutation(tuple(row)) for row in self.perm_array.tolist()]

    @cached_property
    def inv(self) -> np.ndarray:
        inv = np.argmin(self.mul, axis=1).astype(np.int32)
        inv.setflags(write=False)
        return inv

    @cached_property
    def orders(self) -> np.ndarray:
        n = self.order
        ar = np.arange(n)
        out = np.zeros(n, dtype=np.int64)
        out[0] = 1
        cur = ar.copy()
        k = 1
        while (out == 0).any():
            k += 1
            cur = self.mul[cur, ar]
            hit = (cur == 0) & (out == 0)
            out[hit] = k
        out.setflags(write=False)
        return out

    @cached_property
    def class_ids(self) -> np.ndarray:
        """Conjugacy class index per element; classes numbered by their
        smallest member."""
        n = self.order
        ar = np.arange(n)
        cid = np.full(n, -1, dtype=np.int64)
        c = 0
        for x in range(n):
            if cid[x] >= 0:
                continue
            conj = self.mul[self.mul[ar, x], self.inv]
            cid[conj] = c
            c += 1
        cid.setflags(write=False)
        return cid

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*map(int, set(self.orders.tolist())))

    def power(self, e: int, k: int) -> int:
        k %= int(self.orders[e])
        out, base = 0, e
        while k:
            if k & 1:
                out = int(self.mul[out, base])
            base = int(self.mul[base, base])
            k >>= 1
        return out

    def powers(self, e: int) -> list[int]:
        """``[e^0, e^1, ..., e^(o-1)]``."""
        out = [0]
        x = e
        while x != 0:
            out.append(x)
            x = int(self.mul[x, e])
        return out

    def word(self, text: str) -> int:
        """Evaluate a word in the labelled generators, e.g. ``"s r^-1 t^2"``."""
        out = 0
        for tok in text.split():
            name, _, exp = tok.partition("^")
            if name not in self.labels:
                raise KeyError(f"unknown generator label {name!r}")
            x = self.power(self.labels[name], int(exp) if exp else 1)
            out = int(self.mul[out, x])
        return out

    def commutator(self, a: int, b: int) -> int:
        m = self.mul
        return int(m[m[m[a, b], self.inv[a]], self.inv[b]])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"


def table_from_right_multiplication(right: Sequence[Sequence[int]], parent: Sequence[int],
                                    via: Sequence[int]) -> np.ndarray:
    """Full Cayley table from a breadth-first enumeration.

    ``right[k][i]`` is the index of ``e_i * g_k`` and element ``b > 0`` was
    discovered as ``e_parent[b] * g_via[b]``, so column ``b`` of the table
    follows from column ``parent[b]``.
    """
    n = len(parent)
    R = np.array(right, dtype=np.int64).reshape(len(right), n)
    mul = np.empty((n, n), dtype=np.int64)
    mul[:, 0] = np.arange(n)
    for b in range(1, n):
        mul[:, b] = R[via[b]][mul[:, parent[b]]]
    return mul


def closure_from_generators(degree: int, gens: Sequence[Permutation], *,
                            name: str = "", cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """Close a set of permutations of ``degree`` points into a group."""
    arrs = []
    for g in gens:
        if g.degree != degree:
            raise ValueError(f"generator {g} has degree {g.degree}, expected {degree}")
        arrs.append(np.array(g.images, dtype=np.int64))
    ident = np.arange(degree, dtype=np.int64)
    elems = [ident]
    pos = {ident.tobytes(): 0}
    right = [[] for _ in arrs]
    parent = [-1]
    via = [-1]
    i = 0
    while i < len(elems):
        x = elems[i]
        for k, g in enumerate(arrs):
            y = x[g]
            key = y.tobytes()
            j = pos.get(key)
            if j is None:
                j = len(elems)
                if j >= cap:
                    raise ClosureBoundExceeded(f"group order exceeds cap {cap}")
                pos[key] = j
                elems.append(y)
                parent.append(i)
                via.append(k)
            right[k].append(j)
        i += 1
    n = len(elems)
    mul = table_from_right_multiplication(right, parent, via)
    perms = np.array(elems, dtype=np.int64).reshape(n, degree)
    gen_idx = [int(pos[a.tobytes()]) for a in arrs]
    return FiniteGroup(mul, gen_idx, perms=perms, name=name)


# -- subgroups and homomorphisms --------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(compare=False, repr=False)
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.members)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.members)] = True
        return m

    def is_normal(self) -> bool:
        G = self.parent
        mem = np.array(self.members)
        for h in G.generators:
            conj = G.mul[G.mul[h, mem], G.inv[h]]
            if not self.mask[conj].all():
                return False
        return True


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism determined by the images of ``gens`` (source indices)."""

    source: FiniteGroup = field(compare=False, repr=False)
    target: FiniteGroup = field(compare=False, repr=False)
    gens: tuple[int, ...]
    generator_images: tuple[int, ...]
    mapping: np.ndarray = field(compare=False, repr=False)

    def __call__(self, x: int) -> int:
        return int(self.mapping[x])

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and \
            np.unique(self.mapping).size == self.source.order


def subgroup_generated(G: FiniteGroup, elems: Iterable[int]) -> Subgroup:
    gens = np.unique(np.array(list(elems), dtype=np.int64))
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    frontier = np.array([0])
    while frontier.size and gens.size:
        fresh = np.zeros(G.order, dtype=bool)
        fresh[G.mul[frontier[:, None], gens[None, :]].ravel()] = True
        fresh &= ~mask
        mask |= fresh
        frontier = np.flatnonzero(fresh)
    return Subgroup(G, tuple(np.flatnonzero(mask).tolist()))


def generated_order(G: FiniteGroup, elems: Iterable[int]) -> int:
    return subgroup_generated(G, elems).order


def element_order(G: FiniteGroup, e: int) -> int:
    return int(G.orders[e])


def conjugacy_classes(G: FiniteGroup) -> list[list[int]]:
    cid = G.class_ids
    classes = [[] for _ in range(int(cid.max()) + 1)]
    for x, c in enumerate(cid.tolist()):
        classes[c].append(x)
    return classes


def is_conjugate_to_power(G: FiniteGroup, tau: int, x: int) -> bool:
    """True iff ``h x^k h^-1 == tau`` for some ``h`` and ``k``."""
    cid = G.class_ids
    target = cid[tau]
    return any(cid[p] == target for p in G.powers(x))


def normalizer_of_cyclic(G: FiniteGroup, tau: int) -> Subgroup:
    cyc = np.zeros(G.order, dtype=bool)
    cyc[G.powers(tau)] = True
    ar = np.arange(G.order)
    conj = G.mul[G.mul[ar, tau], G.inv]
    return Subgroup(G, tuple(np.flatnonzero(cyc[conj]).tolist()))


def centralizer(G: FiniteGroup, x: int) -> Subgroup:
    return Subgroup(G, tuple(np.flatnonzero(G.mul[:, x] == G.mul[x, :]).tolist()))


def center(G: FiniteGroup) -> Subgroup:
    comm = (G.mul == G.mul.T).all(axis=1)
    return Subgroup(G, tuple(np.flatnonzero(comm).tolist()))


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    m = G.mul
    ab = m[:, :]
    comms = m[m[ab, G.inv[:, None]], G.inv[None, :]]
    return subgroup_generated(G, np.unique(comms).tolist())


def _p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def sylow(G: FiniteGroup, p: int) -> Subgroup:
    """A Sylow ``p``-subgroup, grown one ``p``-element at a time inside
    successive normalizers."""
    if G.order % p:
        raise NotDividing(f"{p} does not divide |G| = {G.order}")
    target = _p_part(G.order, p)
    orders = G.orders
    pelems = [x for x in range(1, G.order) if _p_part(int(orders[x]), p) == orders[x]]
    P = subgroup_generated(G, [])
    while P.order < target:
        for x in pelems:
            if x in P:
                continue
            conj = G.mul[G.mul[x, np.array(P.members)], G.inv[x]]
            if not P.mask[conj].all():
                continue
            Q = subgroup_generated(G, list(P.members[1:]) + [x])
            if _p_part(Q.order, p) == Q.order:
                P = Q
                break
        else:  # pragma: no cover - Sylow's theorem
            raise AssertionError("no p-element extends the current p-subgroup")
    return P


def small_generating_set(G: FiniteGroup) -> tuple[int, ...]:
    """Greedy generating set: repeatedly add the highest-order element not
    yet generated."""
    cand = sorted(range(1, G.order), key=lambda x: (-int(G.orders[x]), x))
    gens: list[int] = []
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    size = 1
    for x in cand:
        if size == G.order:
            break
        if mask[x]:
            continue
        gens.append(x)
        S = subgroup_generated(G, gens)
        mask = S.mask
        size = S.order
    return tuple(gens)


@dataclass
class _WordPlan:
    """BFS tree of a group over a generating tuple, grouped in layers.

    ``relators`` are a few short words that evaluate to the identity in the
    group; checking them on candidate images is a cheap filter before the
    full extension.
    """
    layers: list[tuple[np.ndarray, np.ndarray, np.ndarray]]
    relators: list[list[tuple[int, int]]]

    @classmethod
    def build(cls, G: FiniteGroup, gens: Sequence[int], n_relators: int = 8) -> _WordPlan:
        order, parent, via = _bfs_layout(G.order, lambda x, g: int(G.mul[x, g]), list(gens), 0)
        if len(order) != G.order:
            raise ValueError("elements do not generate the group")
        depth = [0] * len(order)
        for i in range(1, len(order)):
            depth[i] = depth[parent[i]] + 1
        layers = []
        order_a = np.array(order)
        parent_a = order_a[np.maximum(np.array(parent), 0)]
        via_a = np.array(via)
        depth_a = np.array(depth)
        for d in range(1, max(depth) + 1 if depth else 1):
            sel = depth_a == d
            layers.append((order_a[sel], parent_a[sel], via_a[sel]))
        return cls(layers, _short_relators(G, gens, order, parent, via, depth, n_relators))

    def extend(self, G: FiniteGroup, H: FiniteGroup, images: Sequence[int]) -> np.ndarray:
        f = np.zeros(G.order, dtype=np.int64)
        img = np.asarray(images, dtype=np.int64)
        for elems, parents, via in self.layers:
            f[elems] = H.mul[f[parents], img[via]]
        return f

    def relators_hold(self, H: FiniteGroup, images: Sequence[int]) -> bool:
        mul, inv = H.mul, H.inv
        for word in self.relators:
            x = 0
            for k, e in word:
                x = int(mul[x, images[k] if e > 0 else inv[images[k]]])
            if x != 0:
                return False
        return True


def _short_relators(G, gens, order, parent, via, depth, count):
    """Words ``path(x) g path(xg)^-1`` for the shortest non-tree edges."""
    pos = {x: i for i, x in enumerate(order)}

    def path(i):
        out = []
        while i > 0:
            out.append(via[i])
            i = parent[i]
        return out[::-1]

    edges = []
    for i, x in enumerate(order):
        for k, g in enumerate(gens):
            j = pos[int(G.mul[x, g])]
            if not (parent[j] == i and via[j] == k):
                edges.append((depth[i] + 1 + depth[j], i, k, j))
    edges.sort()
    out = []
    for _, i, k, j in edges[:count]:
        word = [(a, 1) for a in path(i)] + [(k, 1)] + [(a, -1) for a in reversed(path(j))]
        out.append(word)
    return out


def _is_hom(G: FiniteGroup, H: FiniteGroup, gens, images, f: np.ndarray) -> bool:
    for g, h in zip(gens, images):
        if not (f[G.mul[:, g]] == H.mul[f, h]).all():
            return False
    return True


def _hom_search(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int],
                candidates: Sequence[Sequence[int]], *, bijective: bool,
                first_only: bool) -> list[GroupHom]:
    plan = _WordPlan.build(G, gens)
    go, ho = G.orders, H.orders
    out = []
    k = len(gens)
    # orders of short words in each pair of generators must match
    def pair_words(M, x, y):
        xy, xyi = M.mul[x, y], M.mul[x, M.inv[y]]
        return (M.mul[xy, y], M.mul[x, xy], xy, xyi)

    pair_orders = {(i, j): tuple(int(go[w]) for w in pair_words(G, gens[i], gens[j]))
                   for i in range(k) for j in range(i)}
    # an injective map sends <g_0..g_i> onto a subgroup of the same order
    prefix_orders = [generated_order(G, gens[:i + 1]) for i in range(k)] if bijective else None

    def rec(i, chosen):
        if i == k:
            if not plan.relators_hold(H, chosen):
                return False
            f = plan.extend(G, H, chosen)
            if bijective:
                hit = np.zeros(H.order, dtype=bool)
                hit[f] = True
                if not hit.all():
                    return False
            if not _is_hom(G, H, gens, chosen, f):
                return False
            out.append(GroupHom(G, H, tuple(gens), tuple(chosen), f))
            return first_only
        for c in candidates[i]:
            if any(tuple(int(ho[w]) for w in pair_words(H, c, chosen[j])) != pair_orders[(i, j)]
                   for j in range(i)):
                continue
            chosen.append(c)
            if prefix_orders and 0 < i < k - 1 and generated_order(H, chosen) != prefix_orders[i]:
                chosen.pop()
                continue
            stop = rec(i + 1, chosen)
            chosen.pop()
            if stop:
                return True
        return False

    rec(0, [])
    return out


def automorphisms(G: FiniteGroup, cap: int = DEFAULT_CLOSURE_CAP) -> list[GroupHom]:
    """All automorphisms, ordered lexicographically by generator images."""
    if G.order > cap:
        raise ClosureBoundExceeded(f"group order {G.order} exceeds cap {cap}")
    gens = small_generating_set(G)
    cid_sizes = Counter(G.class_ids.tolist())
    def profile(x):
        return (int(G.orders[x]), cid_sizes[int(G.class_ids[x])])
    cands = [[y for y in range(G.order) if profile(y) == profile(g)] for g in gens]
    return _hom_search(G, G, gens, cands, bijective=True, first_only=False)


def invariants(G: FiniteGroup) -> tuple:
    """Isomorphism invariants used as a quick pre-filter."""
    hist = tuple(sorted(Counter(G.orders.tolist()).items()))
    csizes = tuple(sorted(Counter(Counter(G.class_ids.tolist()).values()).items()))
    return (G.order, hist, center(G).order, derived_subgroup(G).order, csizes)


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> GroupHom | None:
    if G.order != H.order:
        return None
    if invariants(G) != invariants(H):
        return None
    gens = small_generating_set(G)
    gsz = Counter(G.class_ids.tolist())
    hsz = Counter(H.class_ids.tolist())
    cands = []
    for g in gens:
        prof = (int(G.orders[g]), gsz[int(G.class_ids[g])])
        cands.append([y for y in range(H.order)
                      if (int(H.orders[y]), hsz[int(H.class_ids[y])]) == prof])
    found = _hom_search(G, H, gens, cands, bijective=True, first_only=True)
    return found[0] if found else None


def are_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    if G.order != H.order:
        return False
    if G.is_abelian != H.is_abelian:
        return False
    if G.is_abelian:
        # finite abelian groups are determined by their order statistics
        return Counter(G.orders.tolist()) == Counter(H.orders.tolist())
    return find_isomorphism(G, H) is not None


def hom_from_images(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int],
                    images: Sequence[int]) -> GroupHom:
    """Extend generator images to a homomorphism, checking well-definedness."""
    plan = _WordPlan.build(G, gens)
    f = plan.extend(G, H, images)
    if not _is_hom(G, H, gens, images, f):
        raise ValueError("generator images do not define a homomorphism")
    return GroupHom(G, H, tuple(gens), tuple(images), f)


def compose_maps(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Index map of ``f after g``."""
    return f[g]


def automorphism_generators(G: FiniteGroup, auts: Sequence[GroupHom] | None = None) -> list[np.ndarray]:
    """A subset of Aut(G) (as index maps) that generates it."""
    if auts is None:
        auts = automorphisms(G)
    chosen: list[np.ndarray] = []
    seen = {np.arange(G.order).tobytes()}
    closure = [np.arange(G.order)]
    for a in auts:
        key = a.mapping.tobytes()
        if key in seen:
            continue
        chosen.append(a.mapping)
        # re-close
        i = 0
        closure = [np.arange(G.order)]
        seen = {closure[0].tobytes()}
        while i < len(closure):
            x = closure[i]
            for c in chosen:
                y = c[x]
                k = y.tobytes()
                if k not in seen:
                    seen.add(k)
                    closure.append(y)
            i += 1
        if len(closure) == len(auts):
            break
    return chosen
