"""Bounded verification campaigns for the couniserial-dimension theory.

Each property enumerates its cases deterministically (exhaustively below the
configured thresholds, seeded random sampling where the space is large),
checks them, and keeps the smallest failing case so it can be replayed with
:func:`replay`.
"""
from __future__ import annotations

import json
import random
import time
import zlib
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from . import dimension, ordinal
from .abtype import (
    AbelianType,
    format_type,
    invariants,
    is_subtype,
    quotient_types,
    subtypes,
    type_from_orders,
    type_from_spec,
    types_up_to,
)
from .latoracle import (
    ExplicitGroup,
    Subgroup,
    chain_check,
    groups_up_to,
    lattice,
    oracle_cudim,
    oracle_usdim,
)
from .ordinal import Ordinal, ord_cmp, ord_parse


class UnknownSuiteError(ValueError):
    pass


@dataclass
class SuiteConfig:
    max_ptype_size: int = 10
    max_multi_length: int = 6
    primes: Sequence[int] = (2, 3, 5)
    oracle_order_budget: int = 512
    oracle_max_order: int = 64
    pair_weight: int = 8
    realize_weight: int = 8
    ordinal_triples: int = 10_000
    ordinal_max_exponent: int = 4
    chain_samples: int = 1_000
    rng_seed: int = 0
    deadline_seconds: float = 240.0
    suites: Sequence[str] | None = None

    def __post_init__(self):
        for name in ("max_ptype_size", "oracle_order_budget", "oracle_max_order", "deadline_seconds"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not 0 <= self.rng_seed < 2**64:
            raise ValueError("rng_seed must be a 64-bit unsigned integer")
        if self.suites is not None:
            unknown = sorted(set(self.suites) - set(PROPERTIES))
            if unknown:
                raise UnknownSuiteError(
                    f"unknown suite(s) {', '.join(unknown)}; valid: {', '.join(sorted(PROPERTIES))}"
                )


@dataclass
class PropertyResult:
    name: str
    claim: str
    kind: str
    cases_run: int
    failures: int
    counterexample: dict | None
    elapsed: float
    timed_out: bool = False

    @property
    def passed(self) -> bool:
        return self.failures == 0 and not self.timed_out


@dataclass
class SuiteReport:
    seed: int
    results: list[PropertyResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def total_failures(self) -> int:
        return sum(r.failures for r in self.results)

    def to_json(self, include_timing: bool = False) -> dict:
        props = []
        for r in sorted(self.results, key=lambda r: r.name):
            d = asdict(r)
            d["passed"] = r.passed
            if not include_timing:
                d.pop("elapsed")
            props.append(d)
        return {"seed": self.seed, "passed": self.passed, "failures": self.total_failures,
                "properties": props}

    def dumps(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_json(include_timing), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = []
        for r in sorted(self.results, key=lambda r: r.name):
            status = "PASS" if r.passed else ("TIMEOUT" if r.timed_out else "FAIL")
            tag = " [derived]" if r.kind == "derived" else ""
            lines.append(f"{status:7} {r.name:24} cases={r.cases_run:<7} failures={r.failures}{tag}")
            if r.counterexample:
                lines.append(f"        minimal counterexample: {r.counterexample['case']}"
                             f" -> {r.counterexample['message']}")
        lines.append("all properties pass" if self.passed else f"{self.total_failures} failure(s)")
        return "\n".join(lines)


@dataclass(frozen=True)
class Property:
    name: str
    claim: str
    cases: Callable[[SuiteConfig, random.Random], Iterable[str]]
    check: Callable[[str], str | None]
    kind: str = "theorem"


# --- case generation helpers ---------------------------------------------------


def finite_types(cfg: SuiteConfig) -> list[AbelianType]:
    """Single-prime types of weight <= max_ptype_size and multi-prime types of
    length <= max_multi_length, over the configured primes."""
    out = set()
    for p in cfg.primes:
        out.update(types_up_to(cfg.max_ptype_size, [p]))
    for t in types_up_to(cfg.max_multi_length, list(cfg.primes)):
        out.add(t)
    return sorted(out, key=_type_size)


def _type_size(t: AbelianType) -> tuple:
    return (t.length, t.items)


def _spec_size(case: str) -> tuple:
    parts = [type_from_spec(s) for s in case.split("|") if s.startswith("Z")]
    return (sum(t.length for t in parts), case)


def random_ordinal(rng: random.Random, max_exp: int) -> Ordinal:
    if rng.random() < 0.1:
        return ordinal.ZERO
    exps = sorted(rng.sample(range(max_exp + 1), rng.randint(1, max_exp + 1)), reverse=True)
    return Ordinal(tuple((e, rng.randint(1, 5)) for e in exps))


def _lt(a: Ordinal, b: Ordinal) -> bool:
    return ord_cmp(a, b) == "less"


# --- individual properties -----------------------------------------------------


def _ordinal_cases(cfg: SuiteConfig, rng: random.Random) -> Iterator[str]:
    yield "1|w|0"  # non-commutativity witness
    for _ in range(cfg.ordinal_triples):
        a, b, c = (random_ordinal(rng, cfg.ordinal_max_exponent) for _ in range(3))
        yield f"{a}|{b}|{c}"


def _ordinal_check(case: str) -> str | None:
    add = ordinal.ord_add  # looked up at call time so a patched add is exercised
    a, b, c = (ord_parse(s) for s in case.split("|"))
    for x in (add(a, b), add(b, c), add(add(a, b), c)):
        try:
            Ordinal(x.terms)
        except ValueError as e:
            return f"non-canonical sum: {e}"
    if add(add(a, b), c) != add(a, add(b, c)):
        return "associativity fails"
    trio = (a, b, c)
    for x in trio:
        for y in trio:
            if not _lt(x, y):
                continue
            for z in trio:
                if not _lt(add(z, x), add(z, y)):
                    return f"left strict monotonicity fails for {z} + ({x} < {y})"
                if _lt(add(y, z), add(x, z)):
                    return f"right weak monotonicity fails for ({x} < {y}) + {z}"
    if case == "1|w|0":
        one, w = ordinal.ONE, ordinal.OMEGA
        if add(one, w) != w or add(w, one) == w:
            return "1 + w = w != w + 1 witness fails"
    return None


def _types_cases(cfg: SuiteConfig, rng: random.Random) -> Iterator[str]:
    for t in finite_types(cfg):
        yield format_type(t)


def _monotonicity_check(case: str) -> str | None:
    t = type_from_spec(case)
    d = dimension.cudim(t)
    uniform = invariants(t).is_uniform
    for mu in subtypes(t):
        dm = dimension.cudim(mu)
        if dm > d:
            return f"submodule {format_type(mu)} has larger cudim {dm} > {d}"
        if not uniform and dm == d and mu != t:
            return f"non-uniform module has proper non-isomorphic submodule {format_type(mu)} of equal cudim"
    return None


def _bounds_check(case: str) -> str | None:
    t = type_from_spec(case)
    inv = invariants(t)
    d = dimension.cudim(t)
    if not Ordinal.finite(inv.u_dim) <= d:
        return f"u_dim {inv.u_dim} > cudim {d}"
    if not d <= Ordinal.finite(inv.length):
        return f"cudim {d} > length {inv.length}"
    for mu in quotient_types(t):
        if dimension.cudim(mu) > d:
            return f"quotient {format_type(mu)} has cudim {dimension.cudim(mu)} > {d}"
    return None


def _structure_check(case: str) -> str | None:
    t = type_from_spec(case)
    inv = invariants(t)
    subs = subtypes(t)
    if not t.is_zero:
        if not any(invariants(mu).is_uniform for mu in subs):
            return "no uniform submodule"
        nonzero = {mu for mu in subs if not mu.is_zero}
        if nonzero == {t} and not (inv.is_uniform and inv.is_anti_cohopfian):
            return "all nonzero submodules isomorphic but module not uniform"
        if inv.is_anti_cohopfian and not inv.is_uniform:
            return "anti-coHopfian but not uniform"
    if inv.socle.rank != inv.u_dim or not invariants(inv.socle).is_semisimple:
        return "socle is not semisimple of rank u_dim"
    if inv.radical.length != inv.length - t.rank:
        return "radical length mismatch"
    for mu in subs:
        if is_subtype(t, mu) and mu != t:
            return f"subtype relation not antisymmetric at {format_type(mu)}"
        mi = invariants(mu)
        if mi.length > inv.length or mi.u_dim > inv.u_dim:
            return f"length/u_dim not monotone at {format_type(mu)}"
    return None


def _infinite_power_check(case: str) -> str | None:
    t = type_from_spec(case)
    if dimension.infinite_power_defined(t) != invariants(t).is_semisimple:
        return "infinite-power criterion disagrees with semisimplicity"
    if case == "Z4" and dimension.infinite_power_defined(t):
        return "countable sum of Z4 reported as having couniserial dimension"
    return None


def _duality_check(case: str) -> str | None:
    t = type_from_spec(case)
    if dimension.usdim(t) != dimension.cudim(t):
        return f"usdim {dimension.usdim(t)} != cudim {dimension.cudim(t)}"
    if invariants(t).is_semisimple and dimension.usdim(t) != dimension.cudim(t):
        return "semisimple module with usdim != cudim"
    return None


def _prime_independence_cases(cfg: SuiteConfig, rng: random.Random) -> Iterator[str]:
    for t in types_up_to(cfg.max_ptype_size, [2]):
        yield "|".join(format_type(AbelianType(((p, t.partition(2)),)) if not t.is_zero else t)
                       for p in cfg.primes)


def _prime_independence_check(case: str) -> str | None:
    ts = [type_from_spec(s) for s in case.split("|")]
    cu = {dimension.cudim(t) for t in ts}
    us = {dimension.usdim(t) for t in ts}
    if len(cu) != 1 or len(us) != 1:
        return f"dimensions vary with the prime: cudim {sorted(map(str, cu))}, usdim {sorted(map(str, us))}"
    return None


def _pair_cases(cfg: SuiteConfig, rng: random.Random) -> Iterator[str]:
    ts = list(types_up_to(cfg.pair_weight, list(cfg.primes), min_length=1))
    ts.sort(key=_type_size)
    for i, s in enumerate(ts):
        for t in ts[i:]:
            if s.length + t.length <= cfg.pair_weight:
                yield f"{format_type(s)}|{format_type(t)}"


def _superadditivity_check(case: str) -> str | None:
    s, t = (type_from_spec(x) for x in case.split("|"))
    total = dimension.cudim(s + t)
    for a, b in ((s, t), (t, s)):
        bound = dimension.cudim(a) + dimension.cudim(b)
        if total < bound:
            return f"cudim(sum) = {total} < {bound}"
    return None


def _realize_cases(cfg: SuiteConfig, rng: random.Random) -> Iterator[str]:
    for t in types_up_to(cfg.realize_weight, list(cfg.primes)):
        yield format_type(t)


_REALIZE_ORACLE_ORDER = 64


def _realize_check(case: str) -> str | None:
    t = type_from_spec(case)
    top = int(dimension.cudim(t))
    for beta in range(top + 1):
        try:
            mu = dimension.realize(t, beta)
        except dimension.UnrealizableError as e:
            return f"beta={beta}: {e}"
        if mu not in subtypes(t):
            return f"beta={beta}: {format_type(mu)} is not a subtype"
        if int(dimension.cudim(mu)) != beta:
            return f"beta={beta}: realized {format_type(mu)} has cudim {dimension.cudim(mu)}"
        if mu.order <= _REALIZE_ORACLE_ORDER:
            g = ExplicitGroup.from_type(mu)
            if int(oracle_cudim(g)) != beta:
                return f"beta={beta}: oracle cudim of {format_type(mu)} is {oracle_cudim(g)}"
    try:
        dimension.realize(t, top + 1)
    except dimension.UnrealizableError:
        pass
    else:
        return "realize accepted beta > cudim"
    return None


def _oracle_cases(cfg: SuiteConfig, rng: random.Random) -> Iterator[str]:
    for ms in groups_up_to(min(cfg.oracle_max_order, cfg.oracle_order_budget)):
        yield ",".join(map(str, ms)) or "1"


def _moduli(case: str) -> tuple[int, ...]:
    return () if case == "1" else tuple(int(x) for x in case.split(","))


def _oracle_check(case: str) -> str | None:
    g = ExplicitGroup(_moduli(case))
    lat = lattice(g)
    t = lat.type_of(lat.top)
    if t != type_from_orders(g.moduli):
        return f"lattice top type {format_type(t)} != {format_type(type_from_orders(g.moduli))}"
    sub_lat = {lat.type_of(k) for k in range(len(lat))}
    if sub_lat != set(subtypes(t)):
        return f"subgroup types differ: lattice {len(sub_lat)} vs rule {len(subtypes(t))}"
    quo_lat = {lat.quotient_type(k) for k in range(len(lat))}
    if quo_lat != set(quotient_types(t)):
        return "quotient types differ from the subtype rule"
    for k in range(len(lat)):
        if lat.is_uniform(k) != invariants(lat.type_of(k)).is_uniform:
            return f"uniformity mismatch at subgroup of type {format_type(lat.type_of(k))}"
        if g.order % lat.nodes[k].order:
            return "subgroup order does not divide group order"
    oc, ou = oracle_cudim(lat), oracle_usdim(lat)
    if oc != dimension.cudim(t):
        return f"oracle cudim {oc} != fast {dimension.cudim(t)}"
    if ou != dimension.usdim(t):
        return f"oracle usdim {ou} != fast {dimension.usdim(t)}"
    return None


def _chain_cases(cfg: SuiteConfig, rng: random.Random) -> Iterator[str]:
    groups = [ms for ms in groups_up_to(min(cfg.oracle_max_order, cfg.oracle_order_budget)) if ms]
    for _ in range(cfg.chain_samples):
        ms = rng.choice(groups)
        lat = lattice(ExplicitGroup(ms))
        k = lat.top
        chain = [k]
        for _ in range(rng.randint(1, 6)):
            below = lat.subgroups_of(k)
            # bias towards repeating a member so stabilised tails occur
            k = k if rng.random() < 0.25 else rng.choice(below)
            chain.append(k)
        yield ",".join(map(str, ms)) + ";" + ",".join(hex(lat.nodes[j].mask) for j in chain)


def _chain_check(case: str) -> str | None:
    ms, masks = case.split(";")
    g = ExplicitGroup(_moduli(ms))
    lat = lattice(g)
    chain = [Subgroup(g, int(m, 16)) for m in masks.split(",")]
    verdict = chain_check(g, chain)
    n = verdict.index - 1
    nodes = [lat.node(h) for h in chain]
    types = [lat.type_of(k) for k in nodes]

    def holds(i: int) -> bool:
        return lat.is_uniform(nodes[i]) or all(x == types[i] for x in types[i:])

    if not holds(n):
        return f"reported witness {verdict.index} does not satisfy the condition"
    if any(holds(i) for i in range(n)):
        return f"witness {verdict.index} is not the least"
    return None


PROPERTIES: dict[str, Property] = {
    p.name: p
    for p in [
        Property("ordinal-laws",
                 "z+x < z+y and x+z <= y+z whenever x < y; associativity; 1+w = w != w+1",
                 _ordinal_cases, _ordinal_check),
        Property("monotonicity",
                 "cudim(N) <= cudim(M) for N <= M; equality for non-uniform M forces N = M",
                 _types_cases, _monotonicity_check),
        Property("chain-characterization",
                 "every descending chain has an n with M_n uniform or M_n = M_k for all k >= n",
                 _chain_cases, _chain_check),
        Property("bounds",
                 "u_dim(M) <= cudim(M) <= length(M); cudim(M/N) <= cudim(M)",
                 _types_cases, _bounds_check),
        Property("superadditivity",
                 "cudim(M1 + M2) >= cudim(M1) + cudim(M2) for fully coHopfian sums",
                 _pair_cases, _superadditivity_check),
        Property("realization",
                 "every beta <= cudim(M) is the cudim of some submodule",
                 _realize_cases, _realize_check),
        Property("duality",
                 "usdim(M) = cudim(M) for finite abelian groups (computed regularity)",
                 _types_cases, _duality_check, kind="derived"),
        Property("oracle-equivalence",
                 "literal lattice evaluation agrees with the type-level recursion",
                 _oracle_cases, _oracle_check),
        Property("prime-independence",
                 "cudim and usdim of a p-group depend only on its partition",
                 _prime_independence_cases, _prime_independence_check, kind="derived"),
        Property("infinite-power",
                 "countable sums of M/N have cudim for all N iff M is semisimple",
                 _types_cases, _infinite_power_check),
        Property("uniform-submodule",
                 "nonzero modules contain a uniform submodule; anti-coHopfian implies uniform",
                 _types_cases, _structure_check),
    ]
}


def _size_key(name: str, case: str) -> tuple:
    if name == "ordinal-laws":
        ords = [ord_parse(s) for s in case.split("|")]
        return (sum(len(o.terms) for o in ords), [o.terms for o in ords])
    if name in ("oracle-equivalence", "chain-characterization"):
        ms = _moduli(case.split(";")[0])
        return (len(ms), ms, case)
    return _spec_size(case)


def _rng_for(cfg: SuiteConfig, name: str) -> random.Random:
    return random.Random((cfg.rng_seed << 32) ^ zlib.crc32(name.encode()))


def run_property(name: str, cfg: SuiteConfig) -> PropertyResult:
    prop = PROPERTIES[name]
    rng = _rng_for(cfg, name)
    start = time.monotonic()
    cases_run = failures = 0
    worst: tuple | None = None
    timed_out = False
    for case in prop.cases(cfg, rng):
        if time.monotonic() - start > cfg.deadline_seconds:
            timed_out = True
            break
        cases_run += 1
        try:
            msg = prop.check(case)
        except Exception as e:  # a crash is a failure of the property, not of the run
            msg = f"{type(e).__name__}: {e}"
        if msg is not None:
            failures += 1
            key = _size_key(name, case)
            if worst is None or key < worst[0]:
                worst = (key, case, msg)
    return PropertyResult(
        name=name,
        claim=prop.claim,
        kind=prop.kind,
        cases_run=cases_run,
        failures=failures,
        counterexample=None if worst is None else {"case": worst[1], "message": worst[2]},
        elapsed=round(time.monotonic() - start, 3),
        timed_out=timed_out,
    )


def run_suite(cfg: SuiteConfig | None = None) -> SuiteReport:
    cfg = cfg or SuiteConfig()
    names = sorted(PROPERTIES) if cfg.suites is None else sorted(set(cfg.suites))
    rep = SuiteReport(seed=cfg.rng_seed)
    for name in names:
        rep.results.append(run_property(name, cfg))
    return rep


def replay(name: str, case: str) -> str | None:
    """Re-run one recorded case; returns the failure message or None."""
    if name not in PROPERTIES:
        raise UnknownSuiteError(f"unknown suite {name!r}; valid: {', '.join(sorted(PROPERTIES))}")
    return PROPERTIES[name].check(case)
