"""Brute-force subgroup lattices of small explicit abelian groups.

Everything here works on actual element sets, independently of the
type-level rules in :mod:`couniserial.abtype`.  The one piece of theory used
is the classification of finite abelian groups: two subgroups (or quotients)
are treated as isomorphic exactly when their element-order statistics give
the same type.

Elements of ``Z_m1 x ... x Z_mk`` are indexed in mixed radix, and a subgroup
is stored as a Python int bitmask over those indices, so intersection is
``&`` and inclusion is ``a & b == a``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal, Sequence

from .abtype import AbelianType, factorize
from .ordinal import Ordinal

DEFAULT_ORDER_BUDGET = 512
DEFAULT_NODE_CAP = 10**6


class OracleBudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class ExplicitGroup:
    moduli: tuple[int, ...]
    budget: int = field(default=DEFAULT_ORDER_BUDGET, compare=False)

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        if any(m < 2 for m in moduli):
            raise ValueError(f"moduli must be >= 2, got {moduli}")
        object.__setattr__(self, "moduli", moduli)
        if self.order > self.budget:
            raise OracleBudgetError(
                f"group of order {self.order} exceeds oracle budget {self.budget}"
            )

    @classmethod
    def from_type(cls, t: AbelianType, budget: int = DEFAULT_ORDER_BUDGET) -> ExplicitGroup:
        return cls(tuple(t.cyclic_orders()), budget)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    def element(self, index: int) -> tuple[int, ...]:
        out = []
        for m in reversed(self.moduli):
            index, r = divmod(index, m)
            out.append(r)
        return tuple(reversed(out))

    def index(self, element: Sequence[int]) -> int:
        idx = 0
        for x, m in zip(element, self.moduli):
            idx = idx * m + (x % m)
        return idx

    @cached_property
    def _tables(self) -> tuple[list[list[int]], list[int]]:
        n = self.order
        elems = [self.element(i) for i in range(n)]
        add = [
            [self.index(tuple(a + b for a, b in zip(x, y))) for y in elems] for x in elems
        ]
        orders = [
            math.lcm(*(m // math.gcd(m, a) for a, m in zip(x, self.moduli))) if x else 1
            for x in elems
        ]
        return add, orders

    @property
    def add_table(self) -> list[list[int]]:
        return self._tables[0]

    @property
    def element_orders(self) -> list[int]:
        return self._tables[1]

    def __str__(self) -> str:
        return " x ".join(f"Z{m}" for m in self.moduli) or "Z1"


@dataclass(frozen=True)
class Subgroup:
    parent: ExplicitGroup
    mask: int
    generators: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    @property
    def indices(self) -> list[int]:
        return _bits(self.mask)

    @property
    def elements(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(self.parent.element(i) for i in self.indices))

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def __le__(self, other: Subgroup) -> bool:
        return self.mask & other.mask == self.mask

    def __lt__(self, other: Subgroup) -> bool:
        return self.mask != other.mask and self <= other


def _type_from_order_counts(counts: dict[int, list[int]]) -> AbelianType:
    """Recover a type from |H[p^i]| for i = 0, 1, 2, ... per prime p.

    For a p-group of type lam, log_p |H[p^i]| = sum_j min(lam_j, i); the
    first differences count parts >= i, i.e. give the conjugate partition.
    """
    items = []
    for p, seq in counts.items():
        logs = []
        for c in seq:
            e = 0
            while c % p == 0:
                c //= p
                e += 1
            if c != 1:
                raise AssertionError("element count is not a prime power")
            logs.append(e)
        conj = [logs[i] - logs[i - 1] for i in range(1, len(logs))]
        conj = [c for c in conj if c]
        if conj:
            lam = [sum(1 for c in conj if c > j) for j in range(conj[0])]
            items.append((p, tuple(lam)))
    return AbelianType(tuple(items))


def subgroup_type(h: Subgroup) -> AbelianType:
    g = h.parent
    orders = g.element_orders
    members = h.indices
    counts: dict[int, list[int]] = {}
    for p in factorize(len(members)) if len(members) > 1 else {}:
        seq = []
        i = 0
        while True:
            c = sum(1 for x in members if p**i % orders[x] == 0)
            seq.append(c)
            if i and c == seq[-2]:
                break
            i += 1
        counts[p] = seq
    return _type_from_order_counts(counts)


class SubgroupLattice:
    """All subgroups of an explicit group with the inclusion order."""

    def __init__(self, group: ExplicitGroup, node_cap: int = DEFAULT_NODE_CAP):
        self.group = group
        self.node_cap = node_cap
        self.nodes: list[Subgroup] = []
        self.index_of: dict[int, int] = {}
        self.children: list[set[int]] = []
        self._enumerate()
        self._types: dict[int, AbelianType] = {}
        self._down: list[int] | None = None
        self._up: list[int] | None = None
        # memo tables for the oracle dimensions, keyed by node (i.e. element set)
        self.cudim_memo: dict[int, int] = {}
        self.usdim_memo: dict[int, int] = {}
        self.quotient_types: dict[int, AbelianType] = {}

    def _enumerate(self) -> None:
        g = self.group
        add = g.add_table
        n = g.order
        self._add_node(1, ())  # index 0 is the identity
        layer = [0]
        while layer:
            next_layer = []
            for k in layer:
                base = self.nodes[k]
                base_elems = base.indices
                seen = base.mask
                for x in range(n):
                    if seen >> x & 1:
                        continue
                    # closure <K, x> = K + (K + x) + (K + 2x) + ...
                    mask = base.mask
                    coset = base_elems
                    while True:
                        coset = [add[y][x] for y in coset]
                        if mask >> coset[0] & 1:
                            break
                        for y in coset:
                            mask |= 1 << y
                    # every element of the coset x + K closes to the same subgroup
                    for y in base_elems:
                        seen |= 1 << add[y][x]
                    j = self.index_of.get(mask)
                    if j is None:
                        j = self._add_node(mask, base.generators + (g.element(x),))
                        next_layer.append(j)
                    self.children[j].add(k)
            layer = next_layer

    def _add_node(self, mask: int, gens: tuple) -> int:
        if len(self.nodes) >= self.node_cap:
            raise OracleBudgetError(
                f"subgroup lattice of {self.group} exceeds node cap {self.node_cap}"
            )
        j = len(self.nodes)
        self.nodes.append(Subgroup(self.group, mask, gens))
        self.index_of[mask] = j
        self.children.append(set())
        return j

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.index_of[(1 << self.group.order) - 1]

    def type_of(self, k: int) -> AbelianType:
        t = self._types.get(k)
        if t is None:
            t = self._types[k] = subgroup_type(self.nodes[k])
        return t

    def node(self, sub: Subgroup | int) -> int:
        mask = sub.mask if isinstance(sub, Subgroup) else sub
        try:
            return self.index_of[mask]
        except KeyError:
            raise ValueError("not a subgroup of this group") from None

    @property
    def down(self) -> list[int]:
        """down[k]: bitset over node indices of all subgroups of node k (incl. k)."""
        if self._down is None:
            order = sorted(range(len(self.nodes)), key=lambda k: self.nodes[k].order)
            down = [0] * len(self.nodes)
            for k in order:
                acc = 1 << k
                for c in self.children[k]:
                    acc |= down[c]
                down[k] = acc
            self._down = down
        return self._down

    @property
    def up(self) -> list[int]:
        """up[k]: bitset over node indices of all subgroups containing node k."""
        if self._up is None:
            up = [0] * len(self.nodes)
            for k, d in enumerate(self.down):
                for j in _bits(d):
                    up[j] |= 1 << k
            self._up = up
        return self._up

    def subgroups_of(self, k: int) -> list[int]:
        return list(_bits(self.down[k]))

    def is_uniform(self, k: int) -> bool:
        """Nonzero, and any two nonzero subgroups meet nontrivially (pairwise check)."""
        if k == 0:
            return False
        subs = sorted((j for j in self.subgroups_of(k) if j != 0), key=lambda j: self.nodes[j].order)
        masks = [self.nodes[j].mask for j in subs]
        for a, b in itertools.combinations(masks, 2):
            if a & b == 1:
                return False
        return True

    def is_chain(self, members: Iterable[int]) -> bool:
        masks = [self.nodes[j].mask for j in members]
        for a, b in itertools.combinations(masks, 2):
            if a & b != a and a & b != b:
                return False
        return True

    def quotient_type(self, k: int) -> AbelianType:
        """Type of G / N for the node N, from the order statistics of cosets."""
        g = self.group
        n_mask = self.nodes[k].mask
        n_size = n_mask.bit_count()
        q = g.order // n_size
        add = g.add_table
        counts: dict[int, list[int]] = {}
        for p in (factorize(q) if q > 1 else {}):
            seq = []
            i = 0
            while True:
                # cosets x + N with p^i x in N
                c = sum(1 for x in range(g.order) if n_mask >> _mul(add, x, p**i) & 1)
                seq.append(c // n_size)
                if i and seq[-1] == seq[-2]:
                    break
                i += 1
            counts[p] = seq
        return _type_from_order_counts(counts)


def _mul(add: list[list[int]], x: int, m: int) -> int:
    acc, base = 0, x
    while m:
        if m & 1:
            acc = add[acc][base]
        base = add[base][base]
        m >>= 1
    return acc


def _bits(x: int) -> list[int]:
    return [i for i, c in enumerate(reversed(bin(x)[2:])) if c == "1"]


def enumerate_subgroups(g: ExplicitGroup, node_cap: int = DEFAULT_NODE_CAP) -> SubgroupLattice:
    return SubgroupLattice(g, node_cap)


_LATTICES: dict[tuple[int, ...], SubgroupLattice] = {}


def lattice(g: ExplicitGroup, node_cap: int = DEFAULT_NODE_CAP) -> SubgroupLattice:
    lat = _LATTICES.get(g.moduli)
    if lat is None:
        lat = _LATTICES[g.moduli] = SubgroupLattice(g, node_cap)
    return lat


def oracle_cudim(g: ExplicitGroup | SubgroupLattice, node: int | None = None) -> Ordinal:
    """Couniserial dimension evaluated literally on the subgroup lattice.

    0 for the trivial group, 1 when uniform, otherwise one more than the
    largest dimension among nonzero subgroups not isomorphic to the group.
    Memoised per element set.
    """
    lat = g if isinstance(g, SubgroupLattice) else lattice(g)
    memo = lat.cudim_memo

    def dim(k: int) -> int:
        if k in memo:
            return memo[k]
        if k == 0:
            d = 0
        elif lat.is_uniform(k):
            d = 1
        else:
            own = lat.type_of(k)
            d = 1 + max(
                (dim(j) for j in lat.subgroups_of(k) if j not in (0, k) and lat.type_of(j) != own),
                default=0,
            )
        memo[k] = d
        return d

    order = sorted(range(len(lat)), key=lambda k: lat.nodes[k].order)
    for k in order:  # bottom-up keeps recursion shallow
        dim(k)
    return Ordinal.finite(dim(lat.top if node is None else node))


def oracle_usdim(g: ExplicitGroup | SubgroupLattice, node: int | None = None) -> Ordinal:
    """Uniserial dimension of G / N evaluated on the quotient lattice.

    Quotients of G / N correspond to subgroups K with N <= K <= G, and
    (G / N) / (K / N) = G / K.  Uniserial means that interval is a chain.
    """
    lat = g if isinstance(g, SubgroupLattice) else lattice(g)
    memo = lat.usdim_memo
    top = lat.top
    qtypes = lat.quotient_types

    def qtype(k: int) -> AbelianType:
        if k not in qtypes:
            qtypes[k] = lat.quotient_type(k)
        return qtypes[k]

    def dim(k: int) -> int:
        if k in memo:
            return memo[k]
        above = list(_bits(lat.up[k]))
        if k == top:
            d = 0
        elif lat.is_chain(above):
            d = 1
        else:
            own = qtype(k)
            d = 1 + max(
                (dim(j) for j in above if j not in (k, top) and qtype(j) != own),
                default=0,
            )
        memo[k] = d
        return d

    order = sorted(range(len(lat)), key=lambda k: -lat.nodes[k].order)
    for k in order:
        dim(k)
    return Ordinal.finite(dim(0 if node is None else node))


@dataclass(frozen=True)
class ChainVerdict:
    index: int  # 1-based position in the chain
    reason: Literal["uniform", "stabilized-isomorphic"]


def chain_check(g: ExplicitGroup, chain: Sequence[Subgroup]) -> ChainVerdict:
    """Least n such that M_n is uniform or M_n is isomorphic to every later M_k."""
    if not chain:
        raise ValueError("empty chain")
    lat = lattice(g)
    nodes = [lat.node(h) for h in chain]
    for a, b in zip(chain, chain[1:]):
        if not b <= a:
            raise ValueError("chain is not descending")
    types = [lat.type_of(k) for k in nodes]
    for n, k in enumerate(nodes):
        if lat.is_uniform(k):
            return ChainVerdict(n + 1, "uniform")
        if all(t == types[n] for t in types[n + 1:]):
            return ChainVerdict(n + 1, "stabilized-isomorphic")
    raise AssertionError("unreachable: the last member always stabilizes")


def subgroup_from_generators(g: ExplicitGroup, gens: Iterable[Sequence[int]]) -> Subgroup:
    add = g.add_table
    gens = [tuple(x) for x in gens]
    mask = 1
    elems = [0]
    for x in gens:
        xi = g.index(x)
        coset = list(elems)
        while True:
            coset = [add[y][xi] for y in coset]
            if mask >> coset[0] & 1:
                break
            for y in coset:
                mask |= 1 << y
            elems.extend(coset)
    return Subgroup(g, mask, tuple(gens))


def groups_up_to(max_order: int) -> list[tuple[int, ...]]:
    """Every multiset of moduli >= 2 (as a nonincreasing tuple) with product <= max_order."""
    out: list[tuple[int, ...]] = [()]

    def rec(prefix: tuple[int, ...], cap: int, remaining: int):
        for m in range(min(cap, remaining), 1, -1):
            cur = prefix + (m,)
            out.append(cur)
            rec(cur, m, remaining // m)

    rec((), max_order, max_order)
    return sorted(out, key=lambda ms: (math.prod(ms), ms))
