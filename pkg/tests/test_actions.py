"""Generating vectors, braid classification, fixed points and restrictions."""

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rsaut.actions import (GeneratingVector, NotClassified, NotNormal, SearchBoundExceeded,
                           braid_move, classify, classify_genus_order, coset_fixed_points,
                           extension_nonexistence_18n, find_vector, find_vectors,
                           induced_signature, is_generating_vector, is_realized, long_relation,
                           macbeath_fixed_points, quotient_genus, subgroup_quotient_genus)
from rsaut.catalog import cyclic, dihedral, groups_of_order, named
from rsaut.groups import automorphisms, subgroup_generated
from rsaut.jacobian import theorem_action
from rsaut.signatures import Signature, rh_genus


# -- oracles ----------------------------------------------------------------------


def generates(G, elems):
    """Naive closure by repeated multiplication, no search machinery."""
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for x in elems:
                b = int(G.mul[a, x])
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return len(seen) == G.order


def brute_vectors(G, periods):
    """Every tuple with the given ordered periods that multiplies to 1 and generates."""
    pools = [[x for x in range(G.order) if int(G.orders[x]) == m] for m in periods]
    out = []
    for tup in itertools.product(*pools):
        prod = 0
        for x in tup:
            prod = int(G.mul[prod, x])
        if prod == 0 and generates(G, tup):
            out.append(tup)
    return sorted(out)


def brute_class_count(G, sig):
    """Orbits of vectors (all period orderings) under every automorphism and
    every braid move, found by flood fill."""
    vecs = set()
    for order in set(itertools.permutations(sig.periods)):
        vecs.update(brute_vectors(G, order))
    auts = [f.mapping for f in automorphisms(G)]
    seen = set()
    count = 0
    for start in sorted(vecs):
        if start in seen:
            continue
        count += 1
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            nbrs = [tuple(int(a[x]) for x in v) for a in auts]
            nbrs += [braid_move(G, v, i) for i in range(len(v) - 1)]
            for w in nbrs:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return count


def fix_count_by_definition(G, v, tau):
    """Fixed points of ``tau`` on the branch fibres, by listing the cosets."""
    total = 0
    for x in v.elliptic:
        cyc = set(G.powers(x))
        cosets = {frozenset(int(G.mul[g, c]) for c in cyc) for g in range(G.order)}
        for coset in cosets:
            if {int(G.mul[tau, y]) for y in coset} == coset:
                total += 1
    return total


# -- vectors -------------------------------------------------------------------------


def test_direct_vector_check():
    G = cyclic(15)
    a = G.labels["a"]
    sig = Signature(0, (3, 15, 15))
    ell = (G.power(a, 5), G.power(a, 2), G.power(a, 8))
    assert is_generating_vector(G, sig, (), ell)
    assert not is_generating_vector(G, sig, (), (G.power(a, 5), a, G.power(a, 9)))
    assert long_relation(G, (), ell) == 0


@pytest.mark.parametrize("G,periods", [
    (dihedral(5), (2, 2, 5)),
    (dihedral(5), (2, 5, 2)),
    (cyclic(15), (3, 15, 15)),
    (cyclic(15), (15, 3, 15)),
    (named("a4"), (2, 3, 3)),
    (named("z3_x_dihedral", 5), (2, 6, 15)),
])
def test_find_vectors_matches_brute_force(G, periods):
    sig = Signature(0, periods)
    found = find_vectors(G, sig, ordered_periods=periods)
    assert [v.elliptic for v in found] == brute_vectors(G, periods)
    assert all(is_generating_vector(G, sig, (), v.elliptic, ordered_periods=periods) for v in found)


def test_search_order_does_not_change_result():
    G = named("z7_rtimes_z9")
    sig = Signature(0, (7, 9, 9))
    fwd = find_vectors(G, sig)
    assert fwd and fwd == find_vectors(G, sig, reverse=True)


def test_positive_genus_vectors():
    G = named("a4")
    sig = Signature(1, (2,))
    assert rh_genus(12, sig) == 4
    v = find_vector(G, sig)
    assert v is not None and v.is_valid()
    res = classify(G, sig)
    assert isinstance(res, NotClassified) and not res and res.raw_count > 0


def test_positive_genus_vectors_match_brute_force():
    G = named("a4")
    sig = Signature(1, (2,))
    brute = []
    for a, b, x in itertools.product(range(12), range(12), range(12)):
        if int(G.orders[x]) == 2 and int(G.mul[G.commutator(a, b), x]) == 0 and generates(G, (a, b, x)):
            brute.append((a, b, x))
    assert [v.entries for v in find_vectors(G, sig)] == brute
    assert classify(G, sig).raw_count == len(brute)


def test_unrealizable_signature():
    assert not is_realized(cyclic(15), Signature(0, (5, 5, 15)))
    assert find_vector(cyclic(9), Signature(0, (3, 3, 3))) is None


def test_node_cap():
    with pytest.raises(SearchBoundExceeded):
        find_vectors(named("z7_rtimes_z9"), Signature(0, (7, 9, 9)), node_cap=5)


def test_ordered_periods_must_be_permutation():
    with pytest.raises(ValueError):
        find_vectors(cyclic(15), Signature(0, (3, 15, 15)), ordered_periods=(3, 3, 15))


# -- classification -------------------------------------------------------------------


@pytest.mark.parametrize("G,periods", [
    (cyclic(15), (3, 15, 15)),
    (cyclic(63), (3, 63, 63)),
    (named("z7_rtimes_z9"), (7, 9, 9)),
    (named("z3_x_dihedral", 5), (2, 6, 15)),
    (dihedral(5), (2, 2, 5)),
    (dihedral(6), (2, 2, 2, 3)),
    (named("a4"), (2, 3, 3)),
])
def test_class_count_matches_flood_fill(G, periods):
    sig = Signature(0, periods)
    classes = classify(G, sig)
    assert len(classes) == brute_class_count(G, sig)
    for c in classes:
        assert c.representative.is_valid()


def test_classify_is_search_order_independent():
    G = dihedral(21)
    sig = Signature(0, (2, 2, 3, 21))
    a, b = classify(G, sig), classify(G, sig, reverse=True)
    assert [c.representative.elliptic for c in a] == [c.representative.elliptic for c in b]
    assert len(a) == 1


def test_braid_move_preserves_product_and_orders():
    G = named("z3_x_dihedral", 5)
    v = find_vector(G, Signature(0, (2, 6, 15))).elliptic
    w = braid_move(G, v, 0)
    assert long_relation(G, (), w) == 0
    assert sorted(int(G.orders[x]) for x in w) == [2, 6, 15]


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_moves_map_vectors_to_vectors(data):
    G = named("z7_rtimes_z9")
    sig = Signature(0, (7, 9, 9))
    vecs = find_vectors(G, sig)
    v = data.draw(st.sampled_from(vecs))
    auts = automorphisms(G)
    phi = data.draw(st.sampled_from(auts)).mapping
    img = tuple(int(phi[x]) for x in v.elliptic)
    assert is_generating_vector(G, sig, (), img)
    i = data.draw(st.integers(0, 1))
    moved = braid_move(G, v.elliptic, i)
    orders = [int(G.orders[x]) for x in moved]
    assert is_generating_vector(G, sig, (), moved, ordered_periods=orders)


# -- fixed points ------------------------------------------------------------------------


@pytest.mark.parametrize("G,periods", [
    (named("z3_x_dihedral", 5), (2, 6, 15)),
    (named("z7_rtimes_z9"), (7, 9, 9)),
    (dihedral(21), (2, 2, 3, 21)),
    (named("a4"), (2, 3, 3)),
])
def test_macbeath_matches_coset_count(G, periods):
    sig = Signature(0, periods)
    v = find_vector(G, sig)
    for tau in range(1, G.order):
        m = macbeath_fixed_points(G, sig, v, tau)
        assert m == coset_fixed_points(G, v, tau)
    for tau in range(1, min(G.order, 12)):
        assert coset_fixed_points(G, v, tau) == fix_count_by_definition(G, v, tau)


def test_macbeath_rejects_identity():
    G = cyclic(15)
    v = find_vector(G, Signature(0, (3, 15, 15)))
    with pytest.raises(ValueError):
        macbeath_fixed_points(G, v.sig, v, 0)


# -- restrictions ------------------------------------------------------------------------


def fixed_point_quotient_genus(G, sig, v, H):
    """Genus of X/H from Riemann-Hurwitz, counting the fixed points of every
    non-trivial element of H on the cone-point fibres."""
    g = rh_genus(G.order, sig)
    fix = sum(coset_fixed_points(G, v, h) for h in H.members if h != 0)
    # 2g - 2 = |H| (2h - 2) + sum over fixed points of (stabilizer size - 1)
    two_h = Fraction(2 * g - 2 - fix, H.order) + 2
    assert two_h.denominator == 1 and two_h % 2 == 0
    return int(two_h) // 2


@pytest.mark.parametrize("g", [5, 7, 11, 13])
def test_restriction_to_index_two_subgroup(g):
    G, sig, v = theorem_action(g)
    H = subgroup_generated(G, [G.labels["t"], G.labels["r"]])
    assert H.order == 3 * g
    assert induced_signature(G, sig, v, H) == Signature(0, (3, 3 * g, 3 * g))


def test_restricted_genus_agrees_with_fixed_point_route():
    G, sig, v = theorem_action(5)
    for gens in (["s"], ["r"], ["t"], ["t", "r"], ["s", "r"]):
        H = subgroup_generated(G, [G.labels[x] for x in gens])
        assert subgroup_quotient_genus(G, sig, v, H) == fixed_point_quotient_genus(G, sig, v, H)


def test_quotient_genus_requires_normal():
    G, sig, v = theorem_action(5)
    H = subgroup_generated(G, [G.labels["s"]])
    with pytest.raises(NotNormal):
        quotient_genus(G, sig, v, H)
    N = subgroup_generated(G, [G.labels["r"]])
    assert quotient_genus(G, sig, v, N) == 1


def test_induced_signature_of_whole_group_and_trivial():
    G, sig, v = theorem_action(7)
    assert induced_signature(G, sig, v, subgroup_generated(G, list(G.generators))) == sig
    assert induced_signature(G, sig, v, subgroup_generated(G, [])) == Signature(7)


# -- genus/order classification ------------------------------------------------------------


def test_classify_genus_21_order_63():
    report = classify_genus_order(21, 63)
    rows = [(r.group, str(r.signature), r.class_count) for r in report.rows]
    assert rows == [("Z63", "(0; 3,63,63)", 1), ("Z7:Z9", "(0; 7,9,9)", 1)]


def test_classify_accepts_explicit_catalog():
    entries = groups_of_order(15)
    report = classify_genus_order(5, 15, entries)
    assert len(report.rows) == 1 and report.rows[0].hypermap_type == (3, 15, 15)
    assert classify_genus_order(5, 15, groups_of_order).rows == report.rows


def test_classify_genus_14_order_42_cases():
    rows = {(r.group, str(r.signature)): r.class_count for r in classify_genus_order(14, 42).rows}
    assert rows == {
        ("Z42", "(0; 3,42,42)"): 1,
        ("D7xZ3", "(0; 2,2,3,21)"): 1,
        ("D7xZ3", "(0; 6,6,21)"): 1,
        ("D21", "(0; 2,2,3,21)"): 1,
    }


@pytest.mark.parametrize("n", [1, 9, 15])
def test_extension_nonexistence(n):
    assert extension_nonexistence_18n(n)


def test_extension_nonexistence_rejects_even():
    with pytest.raises(ValueError):
        extension_nonexistence_18n(4)


def test_generating_vector_equality_ignores_group_object():
    G = cyclic(15)
    sig = Signature(0, (3, 15, 15))
    a = GeneratingVector(G, sig, (), (5, 2, 8))
    b = GeneratingVector(cyclic(15), sig, (), (5, 2, 8))
    assert a == b
    assert np.array_equal(np.array(a.entries), np.array((5, 2, 8)))
