import itertools
import math
import random

import pytest
from hypothesis import given, strategies as st

from couniserial.abtype import (
    ZERO_TYPE,
    AbelianType,
    FactorizationBudgetError,
    FreeRankError,
    GroupSpecError,
    factorize,
    format_type,
    invariant_factors,
    invariants,
    is_subtype,
    ordered_subtypes,
    parse_group_spec,
    partitions_of,
    quotient_types,
    smith_normal_form,
    subtypes,
    type_from_invariant_factors,
    type_from_matrix,
    type_from_orders,
    type_from_spec,
    types_up_to,
)

from .conftest import abelian_types


def T(mapping):
    return AbelianType.from_map(mapping)


# --- independent oracle: determinantal divisors --------------------------------


def det(m):
    n = len(m)
    if n == 0:
        return 1
    return sum(
        (-1) ** j * m[0][j] * det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(n)
    )


def determinantal_invariants(a):
    """Invariant factors via gcds of k x k minors; returns (nonunit factors, free rank)."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    ds = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in itertools.combinations(range(rows), k):
            for ci in itertools.combinations(range(cols), k):
                g = math.gcd(g, det([[a[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        ds.append(g)
    factors = [ds[i] // ds[i - 1] for i in range(1, len(ds))]
    return tuple(f for f in factors if f != 1), rows - (len(ds) - 1)


# --- construction ------------------------------------------------------------------


def test_type_from_orders_examples():
    assert type_from_orders([4, 2]) == T({2: (2, 1)})
    assert type_from_orders([6]) == T({2: (1,), 3: (1,)})
    assert type_from_orders([1]) == ZERO_TYPE


def test_type_from_orders_rejects_zero():
    with pytest.raises(ValueError, match="infinite cyclic summand"):
        type_from_orders([0])


def test_factorization_budget():
    assert factorize(2**61 - 1) == {2**61 - 1: 1}
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    with pytest.raises(FactorizationBudgetError):
        factorize(101 * 103, bound=50)
    with pytest.raises(FactorizationBudgetError):
        factorize(2**64)


@pytest.mark.parametrize(
    "matrix, diagonal, free",
    [
        ([[4, 0], [0, 2]], (2, 4), 0),
        ([[2, 4], [6, 8]], (2, 4), 0),
        ([[1, 0], [0, 1]], (), 0),
        ([[2, 0], [0, 0]], (2,), 1),
        ([[0, 0, 0]], (), 1),
        ([], (), 0),
    ],
)
def test_smith_normal_form_examples(matrix, diagonal, free):
    assert smith_normal_form(matrix) == (diagonal, free)


def test_snf_example_matches_determinantal_oracle():
    assert determinantal_invariants([[2, 4], [6, 8]]) == ((2, 4), 0)


@given(
    st.integers(1, 4).flatmap(
        lambda r: st.integers(1, 4).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-12, 12), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )
)
def test_snf_matches_determinantal_oracle(matrix):
    assert smith_normal_form(matrix) == determinantal_invariants(matrix)


def test_type_from_matrix():
    assert type_from_matrix([[4, 0], [0, 2]]) == T({2: (2, 1)})
    assert type_from_matrix([[2, 4], [6, 8]]) == T({2: (2, 1)})
    with pytest.raises(FreeRankError, match="free"):
        type_from_matrix([[2, 0], [0, 0]])


def _unimodular(n: int, rng: random.Random, steps: int = 8):
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            u[i] = [-x for x in u[i]]
            continue
        k = rng.randint(-3, 3)
        u[i] = [x + k * y for x, y in zip(u[i], u[j])]
    return u


def _matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def test_snf_invariant_under_unimodular_mixing(rng):
    for _ in range(200):
        orders = [rng.choice([1, 2, 3, 4, 6, 8, 9, 12, 25, 27]) for _ in range(rng.randint(1, 4))]
        n = len(orders)
        d = [[orders[i] if i == j else 0 for j in range(n)] for i in range(n)]
        mixed = _matmul(_matmul(_unimodular(n, rng), d), _unimodular(n, rng))
        assert type_from_matrix(d) == type_from_orders(orders)
        assert type_from_matrix(mixed) == type_from_orders(orders)


@given(abelian_types())
def test_invariant_factor_round_trip(t):
    fs = invariant_factors(t)
    assert all(b % a == 0 for a, b in zip(fs, fs[1:]))
    assert type_from_invariant_factors(fs) == t
    assert math.prod(fs) == t.order


# --- group spec grammar --------------------------------------------------------------


def test_parse_group_spec():
    assert parse_group_spec("Z8+Z2^3") == [8, 2, 2, 2]
    assert parse_group_spec(" Z4 + Z2 ") == [4, 2]
    assert type_from_spec("Z1") == ZERO_TYPE


@pytest.mark.parametrize("text, pos", [("Z4+", 3), ("Z4Z2", 2), ("4", 0), ("Z0", 0), ("", 0)])
def test_group_spec_errors(text, pos):
    with pytest.raises(GroupSpecError) as info:
        parse_group_spec(text)
    assert info.value.position == pos


@given(abelian_types())
def test_format_reparses(t):
    assert type_from_spec(format_type(t)) == t


# --- subtypes ------------------------------------------------------------------------


def test_subtypes_examples():
    p = 2
    assert subtypes(T({p: (2, 1)})) == {
        ZERO_TYPE, T({p: (1,)}), T({p: (2,)}), T({p: (1, 1)}), T({p: (2, 1)})
    }
    assert subtypes(T({p: (1,)})) == {ZERO_TYPE, T({p: (1,)})}
    assert subtypes(ZERO_TYPE) == {ZERO_TYPE}


def test_quotient_types_examples():
    assert quotient_types(T({3: (2, 1)})) == subtypes(T({3: (2, 1)}))
    assert quotient_types(T({3: (1, 1)})) == {ZERO_TYPE, T({3: (1,)}), T({3: (1, 1)})}
    assert quotient_types(ZERO_TYPE) == {ZERO_TYPE}


@given(abelian_types(), abelian_types())
def test_subtype_relation_antisymmetric(s, t):
    if s in subtypes(t) and t in subtypes(s):
        assert s == t


@given(abelian_types())
def test_subtypes_monotone_invariants(t):
    inv = invariants(t)
    for mu in subtypes(t):
        assert is_subtype(mu, t)
        assert invariants(mu).length <= inv.length
        assert invariants(mu).u_dim <= inv.u_dim


@given(abelian_types())
def test_ordered_subtypes_starts_with_self(t):
    subs = ordered_subtypes(t)
    assert subs[0] == t
    assert subs[-1] == ZERO_TYPE
    assert set(subs) == subtypes(t)


# --- invariants ----------------------------------------------------------------------


def test_invariants_z4_z2():
    inv = invariants(T({2: (2, 1)}))
    assert (inv.length, inv.u_dim) == (3, 2)
    assert inv.socle == T({2: (1, 1)})
    assert inv.radical == T({2: (1,)})
    assert not (inv.is_uniform or inv.is_semisimple or inv.is_homogeneous or inv.is_anti_cohopfian)
    assert inv.is_fully_cohopfian


def test_invariants_z6_not_uniform():
    inv = invariants(T({2: (1,), 3: (1,)}))
    assert inv.u_dim == 2
    assert not inv.is_uniform
    assert inv.is_semisimple and not inv.is_homogeneous


def test_invariants_simple():
    inv = invariants(T({7: (1,)}))
    assert inv.is_anti_cohopfian and inv.is_uniform and inv.length == 1


@given(abelian_types())
def test_socle_radical_laws(t):
    inv = invariants(t)
    assert invariants(inv.socle).is_semisimple
    assert inv.radical.length == inv.length - t.rank
    if inv.is_anti_cohopfian:
        assert inv.is_uniform


def test_partition_enumeration_counts():
    # partition numbers p(0..10)
    assert [sum(1 for _ in partitions_of(n)) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert list(partitions_of(3)) == [(3,), (2, 1), (1, 1, 1)]
    assert sum(1 for _ in types_up_to(10, [2])) == sum([1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42])
