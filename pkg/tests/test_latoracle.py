import itertools
import math

import pytest

from couniserial.abtype import AbelianType, ZERO_TYPE, invariants, quotient_types, subtypes, type_from_orders
from couniserial.dimension import cudim, usdim
from couniserial.latoracle import (
    ExplicitGroup,
    OracleBudgetError,
    Subgroup,
    SubgroupLattice,
    chain_check,
    enumerate_subgroups,
    groups_up_to,
    lattice,
    oracle_cudim,
    oracle_usdim,
    subgroup_from_generators,
    subgroup_type,
)


def brute_force_subgroups(g: ExplicitGroup) -> set[frozenset]:
    """Every subset containing 0 that is closed under addition."""
    elems = [g.element(i) for i in range(g.order)]
    zero = tuple(0 for _ in g.moduli)
    rest = [e for e in elems if e != zero]
    found = set()
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            s = set(combo) | {zero}
            if all(tuple((a + b) % m for a, b, m in zip(x, y, g.moduli)) in s for x in s for y in s):
                found.add(frozenset(s))
    return found


@pytest.mark.parametrize("moduli", [(4, 2), (2, 4), (2, 2), (6,), (3, 3), (2, 2, 2), (8,), (12,), (6, 2)])
def test_enumeration_matches_brute_force(moduli):
    g = ExplicitGroup(moduli)
    lat = enumerate_subgroups(g)
    assert {frozenset(h.elements) for h in lat.nodes} == brute_force_subgroups(g)
    assert len({h.mask for h in lat.nodes}) == len(lat)


def test_subgroup_counts():
    assert len(enumerate_subgroups(ExplicitGroup((4, 2)))) == 8
    for p in (2, 3, 5):
        assert len(enumerate_subgroups(ExplicitGroup((p, p)))) == p + 3
        # Z_p^3: trivial, p^2+p+1 lines, p^2+p+1 planes, whole
        assert len(enumerate_subgroups(ExplicitGroup((p, p, p)))) == 2 * (p * p + p + 1) + 2
    assert len(enumerate_subgroups(ExplicitGroup((5,)))) == 2


def test_z4_z2_subgroup_orders():
    lat = enumerate_subgroups(ExplicitGroup((4, 2)))
    sizes = sorted(h.order for h in lat.nodes)
    assert sizes == [1, 2, 2, 2, 4, 4, 4, 8]


def test_lattice_sanity():
    for ms in [(4, 2), (9, 3), (2, 2, 2), (8, 4), (12, 2)]:
        g = ExplicitGroup(ms)
        lat = lattice(g)
        assert lat.nodes[lat.bottom].mask == 1
        assert lat.nodes[lat.top].order == g.order
        add = g.add_table
        for h in lat.nodes:
            idx = h.indices
            assert g.order % len(idx) == 0
            assert all(h.mask >> add[x][y] & 1 for x in idx for y in idx)
        # inclusion is a partial order
        for a in range(len(lat)):
            for b in lat.subgroups_of(a):
                assert lat.nodes[b] <= lat.nodes[a]
                if a in lat.subgroups_of(b):
                    assert a == b


def test_subgroup_type_examples():
    g = ExplicitGroup((4, 2))
    klein = subgroup_from_generators(g, [(2, 0), (0, 1)])
    assert set(klein.elements) == {(0, 0), (2, 0), (0, 1), (2, 1)}
    assert subgroup_type(klein) == AbelianType.from_map({2: (1, 1)})
    assert subgroup_type(subgroup_from_generators(g, [(1, 1)])) == AbelianType.from_map({2: (2,)})
    assert subgroup_type(subgroup_from_generators(g, [])) == ZERO_TYPE


@pytest.mark.parametrize("moduli", [(4, 2), (8, 4), (9, 3), (2, 2, 2), (6, 10), (16, 4), (3, 3, 3)])
def test_lattice_subgroup_types_match_rule(moduli):
    g = ExplicitGroup(moduli)
    lat = lattice(g)
    t = type_from_orders(moduli)
    assert lat.type_of(lat.top) == t
    assert {lat.type_of(k) for k in range(len(lat))} == subtypes(t)
    assert {lat.quotient_type(k) for k in range(len(lat))} == quotient_types(t)


def test_z6_subgroups_meet_trivially():
    lat = lattice(ExplicitGroup((6,)))
    assert not lat.is_uniform(lat.top)
    lat = lattice(ExplicitGroup((2, 3)))
    assert not lat.is_uniform(lat.top)


def test_uniformity_agrees_with_invariants():
    for ms in [(4, 2), (8,), (9, 3), (6,), (2, 2, 2), (27,)]:
        lat = lattice(ExplicitGroup(ms))
        for k in range(len(lat)):
            assert lat.is_uniform(k) == invariants(lat.type_of(k)).is_uniform


@pytest.mark.parametrize(
    "moduli, expected",
    [((4, 2), 3), ((2, 2), 2), ((3, 3), 2), ((5, 5), 2), ((8,), 1), ((), 0), ((9, 3), 3)],
)
def test_oracle_cudim_examples(moduli, expected):
    g = ExplicitGroup(moduli)
    assert int(oracle_cudim(g)) == expected
    assert int(oracle_usdim(g)) == expected


def test_oracle_isomorphism_invariant():
    assert oracle_cudim(ExplicitGroup((4, 2))) == oracle_cudim(ExplicitGroup((2, 4)))
    assert oracle_usdim(ExplicitGroup((4, 2))) == oracle_usdim(ExplicitGroup((2, 4)))
    assert oracle_cudim(ExplicitGroup((6,))) == oracle_cudim(ExplicitGroup((2, 3)))
    assert oracle_cudim(ExplicitGroup((12, 2))) == oracle_cudim(ExplicitGroup((4, 6)))


@pytest.mark.parametrize("moduli", [ms for ms in groups_up_to(32) if ms])
def test_oracle_matches_fast_path_small(moduli):
    g = ExplicitGroup(moduli)
    t = type_from_orders(moduli)
    assert oracle_cudim(g) == cudim(t)
    assert oracle_usdim(g) == usdim(t)


def test_oracle_memo_does_not_use_fast_path():
    # a fresh lattice computes its own values from element sets only
    lat = SubgroupLattice(ExplicitGroup((4, 4)))
    assert int(oracle_cudim(lat)) == 4
    assert set(lat.cudim_memo) == set(range(len(lat)))


def test_budget_errors():
    with pytest.raises(OracleBudgetError, match="1024"):
        ExplicitGroup((1024,))
    assert ExplicitGroup((1024,), budget=2048).order == 1024
    with pytest.raises(OracleBudgetError, match="node cap"):
        SubgroupLattice(ExplicitGroup((2, 2, 2, 2)), node_cap=20)


def test_groups_up_to():
    assert groups_up_to(4) == [(), (2,), (3,), (2, 2), (4,)]
    # one multiset per partition of 6
    assert sum(1 for ms in groups_up_to(64) if math.prod(ms) == 64) == 11


# --- chain_check ---------------------------------------------------------------------


def test_chain_uniform_witness():
    g = ExplicitGroup((4, 2))
    whole = subgroup_from_generators(g, [(1, 0), (0, 1)])
    klein = subgroup_from_generators(g, [(2, 0), (0, 1)])
    small = subgroup_from_generators(g, [(2, 0)])
    v = chain_check(g, [whole, klein, small])
    assert (v.index, v.reason) == (3, "uniform")


def test_constant_chain():
    g = ExplicitGroup((4, 2))
    whole = subgroup_from_generators(g, [(1, 0), (0, 1)])
    v = chain_check(g, [whole, whole, whole])
    assert (v.index, v.reason) == (1, "stabilized-isomorphic")


@pytest.mark.parametrize("p", [2, 3, 5])
def test_maximal_chains_in_elementary_group(p):
    g = ExplicitGroup((p, p))
    lat = lattice(g)
    for line in (k for k in range(len(lat)) if lat.nodes[k].order == p):
        chain = [lat.nodes[lat.top], lat.nodes[line], lat.nodes[0]]
        v = chain_check(g, chain)
        assert (v.index, v.reason) == (2, "uniform")


def test_chain_must_descend():
    g = ExplicitGroup((4, 2))
    small = subgroup_from_generators(g, [(2, 0)])
    whole = subgroup_from_generators(g, [(1, 0), (0, 1)])
    with pytest.raises(ValueError, match="descending"):
        chain_check(g, [small, whole])


def test_chain_rejects_foreign_subset():
    g = ExplicitGroup((4, 2))
    with pytest.raises(ValueError):
        chain_check(g, [Subgroup(g, 0b110)])
