"""Isomorphism types of finite abelian groups.

A type is kept in primary form: a map from primes to partitions, where the
partition ``(a1, a2, ...)`` (weakly decreasing) stands for
``Z_{p^a1} + Z_{p^a2} + ...``.  Two finite abelian groups are isomorphic iff
their types compare equal.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

Partition = tuple[int, ...]

DEFAULT_FACTOR_BOUND = 10**7
MAX_ORDER = 2**64


class GroupSpecError(ValueError):
    def __init__(self, message: str, text: str = "", position: int | None = None):
        if position is not None:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)
        self.position = position


class FactorizationBudgetError(ValueError):
    pass


class FreeRankError(ValueError):
    pass


def normalize_partition(parts: Iterable[int]) -> Partition:
    parts = tuple(sorted((int(a) for a in parts if a), reverse=True))
    if any(a < 0 for a in parts):
        raise ValueError(f"negative part in {parts}")
    return parts


@dataclass(frozen=True, order=True)
class AbelianType:
    """Canonical primary decomposition, stored as sorted ``(prime, partition)`` items."""

    items: tuple[tuple[int, Partition], ...] = ()

    def __post_init__(self):
        merged: dict[int, list[int]] = {}
        for p, parts in self.items:
            merged.setdefault(int(p), []).extend(parts)
        items = []
        for p in sorted(merged):
            part = normalize_partition(merged[p])
            if not part:
                continue
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            items.append((p, part))
        object.__setattr__(self, "items", tuple(items))

    @classmethod
    def from_map(cls, primary: Mapping[int, Sequence[int]]) -> AbelianType:
        return cls(tuple((p, tuple(parts)) for p, parts in primary.items()))

    @property
    def primary(self) -> dict[int, Partition]:
        return dict(self.items)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.items)

    @property
    def is_zero(self) -> bool:
        return not self.items

    @property
    def length(self) -> int:
        return sum(sum(parts) for _, parts in self.items)

    @property
    def rank(self) -> int:
        return sum(len(parts) for _, parts in self.items)

    @property
    def order(self) -> int:
        return math.prod(p ** sum(parts) for p, parts in self.items)

    def partition(self, p: int) -> Partition:
        return self.primary.get(p, ())

    def cyclic_orders(self) -> list[int]:
        """Orders of the prime-power cyclic summands, largest first per prime."""
        return [p**a for p, parts in self.items for a in parts]

    def __add__(self, other: AbelianType) -> AbelianType:
        if not isinstance(other, AbelianType):
            return NotImplemented
        return direct_sum(self, other)

    def __str__(self) -> str:
        return format_type(self)

    def __repr__(self) -> str:
        return f"AbelianType({format_type(self)!r})"

    def to_json(self) -> dict:
        return {
            "spec": format_type(self),
            "primary": {str(p): list(parts) for p, parts in self.items},
        }


ZERO_TYPE = AbelianType()


def direct_sum(s: AbelianType, t: AbelianType) -> AbelianType:
    return AbelianType(s.items + t.items)


# --- primes and factorisation -------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> dict[int, int]:
    """Prime factorisation by trial division up to ``bound``.

    A cofactor left over after trial division is accepted only if it is
    provably prime; otherwise FactorizationBudgetError is raised.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    if n >= MAX_ORDER:
        raise FactorizationBudgetError(f"order {n} exceeds 2^64")
    out: dict[int, int] = {}
    for q in (2, 3):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    q, step = 5, 2
    while q * q <= n and q <= bound:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += step
        step = 6 - step
    if n > 1:
        if q * q > n or is_prime(n):
            out[n] = out.get(n, 0) + 1
        else:
            raise FactorizationBudgetError(
                f"composite cofactor {n} has no factor <= {bound}"
            )
    return out


# --- construction -------------------------------------------------------------


def type_from_orders(orders: Iterable[int], bound: int = DEFAULT_FACTOR_BOUND) -> AbelianType:
    """Type of the direct sum of cyclic groups of the given orders."""
    items = []
    for n in orders:
        n = int(n)
        if n == 0:
            raise ValueError("infinite cyclic summand unsupported here (use catalog)")
        if n < 0:
            raise ValueError(f"negative order {n}")
        for p, a in factorize(n, bound).items():
            items.append((p, (a,)))
    return AbelianType(tuple(items))


def invariant_factors(t: AbelianType) -> list[int]:
    """Invariant factors d1 | d2 | ... | dk (all > 1) of a type."""
    k = t.rank and max(len(parts) for _, parts in t.items)
    factors = [1] * k
    for p, parts in t.items:
        for i, a in enumerate(parts):
            factors[k - 1 - i] *= p**a
    return factors


def type_from_invariant_factors(factors: Iterable[int]) -> AbelianType:
    factors = list(factors)
    for x, y in zip(factors, factors[1:]):
        if y % x:
            raise ValueError(f"{factors} is not a divisibility chain")
    return type_from_orders(factors)


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], int]:
    """Smith normal form of an integer relation matrix.

    The matrix (r rows, c columns) presents ``Z^r / column span``.  Returns the
    nonunit diagonal entries d1 | d2 | ... and the free rank ``r - rank(a)``.
    """
    m = [list(map(int, row)) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if any(len(row) != cols for row in m):
        raise ValueError("ragged matrix")
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            # clear column t below the pivot
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    for j in range(t, cols):
                        m[i][j] -= q * m[t][j]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        done = False
            # clear row t right of the pivot
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    for i in range(t, rows):
                        m[i][j] -= q * m[i][t]
                    if m[t][j]:
                        for row in m:
                            row[t], row[j] = row[j], row[t]
                        done = False
            if not done:
                continue
            # pivot must divide the remaining block
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if m[i][j] % m[t][t]),
                None,
            )
            if bad is None:
                break
            for j in range(t, cols):
                m[t][j] += m[bad][j]
        diag.append(abs(m[t][t]))
        t += 1
    free_rank = rows - len(diag)
    return tuple(d for d in diag if d != 1), free_rank


def type_from_matrix(a: Sequence[Sequence[int]]) -> AbelianType:
    diagonal, free_rank = smith_normal_form(a)
    if free_rank:
        raise FreeRankError(
            f"mixed/free module (free rank {free_rank}): finite engine unsupported; see catalog"
        )
    return type_from_orders(diagonal)


# --- group-spec grammar -------------------------------------------------------

_SUMMAND = re.compile(r"Z(\d+)(?:\^(\d+))?")


def parse_group_spec(text: str) -> list[int]:
    """Parse ``Z8+Z2^3`` into cyclic orders ``[8, 2, 2, 2]``; whitespace is ignored."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise GroupSpecError("empty group spec", text, 0)
    orders: list[int] = []
    pos = 0
    while True:
        m = _SUMMAND.match(s, pos)
        if m is None:
            raise GroupSpecError("expected summand 'Z<n>'", s, pos)
        n = int(m.group(1))
        reps = int(m.group(2)) if m.group(2) is not None else 1
        if n == 0:
            raise GroupSpecError("infinite cyclic summand unsupported here (use catalog)", s, pos)
        orders.extend([n] * reps)
        pos = m.end()
        if pos == len(s):
            return orders
        if s[pos] != "+":
            raise GroupSpecError("expected '+'", s, pos)
        pos += 1


def type_from_spec(text: str, bound: int = DEFAULT_FACTOR_BOUND) -> AbelianType:
    return type_from_orders(parse_group_spec(text), bound)


def format_type(t: AbelianType) -> str:
    if t.is_zero:
        return "Z1"
    out = []
    for p, parts in t.items:
        for a, group in itertools.groupby(parts):
            k = len(list(group))
            out.append(f"Z{p**a}" + (f"^{k}" if k > 1 else ""))
    return "+".join(out)


# --- subtypes -----------------------------------------------------------------


def sub_partitions(lam: Partition) -> Iterator[Partition]:
    """Partitions mu with mu_i <= lam_i for all i (zero padding), mu a partition."""

    def rec(i: int, cap: int) -> Iterator[tuple[int, ...]]:
        if i == len(lam):
            yield ()
            return
        for a in range(min(cap, lam[i]), -1, -1):
            if a == 0:
                yield ()
                continue
            for rest in rec(i + 1, a):
                yield (a,) + rest

    yield from rec(0, lam[0] if lam else 0)


def subtypes(t: AbelianType) -> frozenset[AbelianType]:
    """Isomorphism types of all subgroups of a group of type ``t``."""
    per_prime = [[(p, mu) for mu in sub_partitions(lam)] for p, lam in t.items]
    return frozenset(AbelianType(combo) for combo in itertools.product(*per_prime))


def quotient_types(t: AbelianType) -> frozenset[AbelianType]:
    # Finite abelian groups are self-dual, so quotients and subgroups share types.
    return subtypes(t)


def ordered_subtypes(t: AbelianType) -> list[AbelianType]:
    """Subtypes in descending lexicographic order, so ``t`` itself comes first."""
    return sorted(subtypes(t), key=lambda mu: _lex_key(mu, t), reverse=True)


def _lex_key(mu: AbelianType, t: AbelianType) -> tuple:
    return tuple(
        mu.partition(p) + (0,) * (len(lam) - len(mu.partition(p))) for p, lam in t.items
    )


def is_subtype(mu: AbelianType, t: AbelianType) -> bool:
    for p, parts in mu.items:
        lam = t.partition(p)
        if len(parts) > len(lam) or any(a > b for a, b in zip(parts, lam)):
            return False
    return True


# --- invariants ---------------------------------------------------------------


@dataclass(frozen=True)
class Invariants:
    length: int
    u_dim: int
    socle: AbelianType
    radical: AbelianType
    is_uniform: bool
    is_semisimple: bool
    is_homogeneous: bool
    is_anti_cohopfian: bool
    is_fully_cohopfian: bool

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "u_dim": self.u_dim,
            "socle": self.socle.to_json(),
            "radical": self.radical.to_json(),
            "is_uniform": self.is_uniform,
            "is_semisimple": self.is_semisimple,
            "is_homogeneous": self.is_homogeneous,
            "is_anti_cohopfian": self.is_anti_cohopfian,
            "is_fully_cohopfian": self.is_fully_cohopfian,
        }


def invariants(t: AbelianType) -> Invariants:
    single = len(t.items) == 1 and len(t.items[0][1]) == 1
    semisimple = all(a == 1 for _, parts in t.items for a in parts)
    return Invariants(
        length=t.length,
        u_dim=t.rank,
        socle=AbelianType(tuple((p, (1,) * len(parts)) for p, parts in t.items)),
        radical=AbelianType(tuple((p, tuple(a - 1 for a in parts)) for p, parts in t.items)),
        is_uniform=single,
        is_semisimple=semisimple,
        is_homogeneous=semisimple and len(t.items) == 1,
        is_anti_cohopfian=single and t.items[0][1] == (1,),
        # finite modules are artinian, hence every submodule is coHopfian
        is_fully_cohopfian=True,
    )


# --- enumeration helpers ------------------------------------------------------


def partitions_of(n: int, cap: int | None = None) -> Iterator[Partition]:
    """Partitions of n in descending lexicographic order."""
    if n == 0:
        yield ()
        return
    cap = n if cap is None else cap
    for a in range(min(n, cap), 0, -1):
        for rest in partitions_of(n - a, a):
            yield (a,) + rest


def types_up_to(max_length: int, primes: Sequence[int], min_length: int = 0) -> Iterator[AbelianType]:
    """All types supported on ``primes`` with min_length <= length <= max_length."""
    by_weight = [list(partitions_of(w)) for w in range(max_length + 1)]

    def rec(i: int, budget: int) -> Iterator[tuple]:
        if i == len(primes):
            yield ()
            return
        for w in range(budget + 1):
            for lam in by_weight[w]:
                for rest in rec(i + 1, budget - w):
                    yield ((primes[i], lam),) + rest if lam else rest

    for items in rec(0, max_length):
        t = AbelianType(items)
        if t.length >= min_length:
            yield t
