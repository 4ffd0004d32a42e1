"""Group catalog: constructors, named presentations, census, group files."""

import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rsaut.catalog import (EXPECTED_COUNTS, RELATIONS, DegreeMismatch, GroupRecipe, InvalidParams,
                           InvalidTwist, ParseError, UnsupportedOrder, abelian, check_relations,
                           cyclic, dihedral, direct_product, expected_count,
                           groups_of_order, holder_count, load_group_dir, named,
                           parse_group_file, parse_group_text, semidirect_cyclic,
                           semidirect_product, write_group_file)
from rsaut.groups import are_isomorphic, automorphisms, invariants, small_generating_set


# -- census oracle ----------------------------------------------------------------
#
# For the orders below a Sylow count forces a normal subgroup N whose order is
# prime to its index, so every group is N ⋊ K (Schur-Zassenhaus). The oracle
# tries every tuple of automorphisms of N as images of K's generators, keeps
# those that define an action, and deduplicates by isomorphism. It shares
# nothing with the census construction except the generic semidirect product
# and the isomorphism test.


def sylow_forced_normal(n, p):
    """True when n_p = 1 is the only option allowed by Sylow's theorems."""
    pk = 1
    while n % (pk * p) == 0:
        pk *= p
    m = n // pk
    return [d for d in range(1, m + 1) if m % d == 0 and d % p == 1] == [1]


def oracle_count(normals, complements):
    found = []
    for N in normals:
        auts = [f.mapping for f in automorphisms(N)]
        orders = {}
        for a in auts:
            k, cur = 1, a
            while not (cur == np.arange(N.order)).all():
                cur, k = a[cur], k + 1
            orders[a.tobytes()] = k
        for K in complements:
            gen_orders = [int(K.orders[g]) for g in K.generators]
            pools = [[a for a in auts if m % orders[a.tobytes()] == 0] for m in gen_orders]
            for acts in itertools.product(*pools):
                try:
                    G = semidirect_product(N, K, list(acts))
                except InvalidTwist:
                    continue
                inv = invariants(G)
                if not any(f == inv and are_isomorphic(H, G) for H, f in found):
                    found.append((G, inv))
    return len(found)


P2 = {p: [cyclic(p * p), abelian([p, p])] for p in (3, 5, 7)}
ORDER_18 = [e.group for e in groups_of_order(18)]

ORACLE_CASES = {
    # order: (prime with forced normal Sylow, normal subgroups, complements)
    18: (3, P2[3], [cyclic(2)]),
    45: (5, [cyclic(5)], P2[3]),
    63: (7, [cyclic(7)], P2[3]),
    75: (5, P2[5], [cyclic(3)]),
    99: (11, [cyclic(11)], P2[3]),
    117: (13, [cyclic(13)], P2[3]),
    126: (7, [cyclic(7)], ORDER_18),
    147: (7, P2[7], [cyclic(3)]),
    225: (5, P2[5], P2[3]),
    1845: (41, [cyclic(41)], [cyclic(45), abelian([3, 15])]),
}


@pytest.mark.parametrize("n", sorted(ORACLE_CASES))
def test_census_matches_semidirect_oracle(n):
    p, normals, complements = ORACLE_CASES[n]
    assert sylow_forced_normal(n, p)
    expected = oracle_count(normals, complements)
    assert expected == EXPECTED_COUNTS[n]
    assert len(groups_of_order(n)) == expected


def test_p_squared_orders_are_abelian():
    for p in (3, 5, 7):
        entries = groups_of_order(p * p)
        assert len(entries) == 2
        assert all(e.group.is_abelian for e in entries)


def test_order_495_count_matches_stated_value():
    assert len(groups_of_order(495)) == 4


def test_holder_formula_known_values():
    # S3, Z6 / four of order 30 / six of order 42 / two of order 105
    assert [holder_count(n) for n in (6, 30, 42, 105)] == [2, 4, 6, 2]
    assert holder_count(15) == 1


@pytest.mark.parametrize("n", [15, 21, 30, 42, 105])
def test_squarefree_census(n):
    entries = groups_of_order(n)
    assert len(entries) == holder_count(n)
    assert all(e.group.order == n for e in entries)


def test_census_entries_pairwise_non_isomorphic():
    entries = groups_of_order(42)
    for a, b in itertools.combinations(entries, 2):
        assert not are_isomorphic(a.group, b.group)
    assert [e.iso_class_id for e in entries] == list(range(len(entries)))


def test_census_names():
    assert [e.group.name for e in groups_of_order(63)] == ["Z63", "Z3xZ21", "(Z7:Z3)xZ3", "Z7:Z9"]
    names = {e.group.name for e in groups_of_order(42)}
    assert {"Z42", "D21", "D7xZ3"} <= names


def test_unsupported_order():
    assert expected_count(1000) is None
    with pytest.raises(UnsupportedOrder):
        groups_of_order(1000)


def test_recipe_json_roundtrip():
    for e in groups_of_order(63):
        data = json.loads(json.dumps(e.recipe.to_json()))
        G = GroupRecipe.from_json(data).realize()
        assert (G.mul == e.group.mul).all()


def test_constructor_orders():
    assert cyclic(12).order == 12
    assert abelian([3, 3, 5]).order == 45
    assert direct_product(cyclic(3), dihedral(5)).order == 30
    assert dihedral(7).order == 14
    assert semidirect_cyclic(7, 3, 2).order == 21


def test_semidirect_cyclic_rejects_bad_twist():
    with pytest.raises(InvalidTwist):
        semidirect_cyclic(7, 2, 2)  # 2^2 != 1 mod 7
    with pytest.raises(InvalidTwist):
        semidirect_cyclic(9, 2, 3)  # not a unit


def test_semidirect_product_validates_action():
    N, K = cyclic(7), cyclic(2)
    doubling = (np.arange(7) * 2) % 7  # order 3, not an action of Z2
    with pytest.raises(InvalidTwist):
        semidirect_product(N, K, [doubling])


@pytest.mark.parametrize("tag,params,order", [
    ("z3_x_dihedral", (5,), 30),
    ("dp_x_z6", (7,), 84),
    ("zp_rtimes_z12", (7,), 84),
    ("z7_rtimes_z9", (), 63),
    ("a4", (), 12),
    ("z3_x_cyclic", (5,), 15),
])
def test_named_relations(tag, params, order):
    G = named(tag, *params)
    assert G.order == order
    assert check_relations(G, RELATIONS[tag](*params))


def test_named_labels():
    G = named("dp_x_z6", 7)
    assert {"R", "S", "T"} <= set(G.labels)
    assert int(G.orders[G.labels["T"]]) == 6


def test_zp_rtimes_a4_twists():
    # a and b are conjugate under t, so they act alike and ab acts trivially
    with pytest.raises(InvalidTwist):
        named("zp_rtimes_a4", 19, (-1, -1, 1))
    for n in (1, 7, 11):
        G = named("zp_rtimes_a4", 19, (1, 1, n))
        assert G.order == 228
    with pytest.raises(InvalidTwist):
        named("zp_rtimes_a4", 19, (1, 1, 2))


def test_named_unknown_tag():
    with pytest.raises(InvalidParams):
        named("nope")


def test_group_file_roundtrip(tmp_path):
    G = named("z7_rtimes_z9")
    path = tmp_path / "g.grp"
    write_group_file(G, path)
    H = parse_group_file(path)
    assert H.order == 63
    assert {e.images for e in H.elements} == {e.images for e in G.elements}
    assert are_isomorphic(G, H)


def test_parse_group_text_examples():
    assert parse_group_text("degree 3\n(0 1 2)\n").order == 3
    S3 = parse_group_text("# S3\ndegree 3\nname S3\n(0 1 2)\n(0 1)\n")
    assert S3.order == 6 and S3.name == "S3"


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as exc:
        parse_group_text("degree 3\n(0 1 2\n")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        parse_group_text("(0 1)\n")
    with pytest.raises(DegreeMismatch):
        parse_group_text("degree 3\n(0 5)\n")


def test_extra_groups_fill_an_uncensused_order(tmp_path):
    write_group_file(named("a4"), tmp_path / "a4.grp")
    write_group_file(dihedral(6), tmp_path / "d6.grp")
    extra = load_group_dir(tmp_path)
    entries = groups_of_order(12, extra=extra)
    assert len(entries) == 2
    assert all(e.recipe.kind == "external" for e in entries)
    assert entries[0].recipe.realize().order == 12


def test_extra_groups_deduplicate_against_census(tmp_path):
    write_group_file(cyclic(15), tmp_path / "z15.grp")
    entries = groups_of_order(15, extra=load_group_dir(tmp_path))
    assert len(entries) == 1


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(2, 6), min_size=1, max_size=3))
def test_abelian_order_and_commutativity(factors):
    G = abelian(factors)
    assert G.order == int(np.prod(factors))
    assert G.is_abelian


@settings(max_examples=10, deadline=None)
@given(st.integers(3, 12))
def test_dihedral_relations(n):
    D = dihedral(n)
    assert check_relations(D, [f"r^{n}", "s^2", "s r s r"])
    assert len(small_generating_set(D)) == 2
