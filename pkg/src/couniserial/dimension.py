"""Couniserial and uniserial dimension by recursion over isomorphism types.

For a finite abelian group the set of subgroup types is finite, so the least
ordinal exceeding the dimensions of all nonzero, non-isomorphic subgroups is
simply their maximum plus one.  Subgroups isomorphic to the group itself are
skipped, which at type level means skipping ``t`` in its own subtype set.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal, Union

from .abtype import (
    AbelianType,
    Invariants,
    format_type,
    invariants,
    is_prime,
    ordered_subtypes,
    quotient_types,
    subtypes,
)
from .ordinal import OMEGA, Ordinal, ord_format

Provenance = Literal["fast", "oracle", "catalog"]


def _is_cyclic_primary(t: AbelianType) -> bool:
    return len(t.items) == 1 and len(t.items[0][1]) == 1


@lru_cache(maxsize=None)
def _cudim(t: AbelianType) -> int:
    if t.is_zero:
        return 0
    if _is_cyclic_primary(t):
        # Z_{p^k}: subgroups form a chain, so any two nonzero ones meet
        return 1
    return 1 + max(_cudim(mu) for mu in subtypes(t) if not mu.is_zero and mu != t)


@lru_cache(maxsize=None)
def _usdim(t: AbelianType) -> int:
    if t.is_zero:
        return 0
    if _is_cyclic_primary(t):
        return 1
    return 1 + max(_usdim(mu) for mu in quotient_types(t) if not mu.is_zero and mu != t)


def cudim(t: AbelianType) -> Ordinal:
    return Ordinal.finite(_cudim(t))


def usdim(t: AbelianType) -> Ordinal:
    return Ordinal.finite(_usdim(t))


def cache_clear() -> None:
    _cudim.cache_clear()
    _usdim.cache_clear()


class UnrealizableError(ValueError):
    pass


def realize(t: AbelianType, beta: Ordinal | int) -> AbelianType:
    """First subtype of ``t`` (descending lexicographic order) with cudim ``beta``."""
    beta = Ordinal.finite(beta) if isinstance(beta, int) else beta
    if not beta.is_finite or beta > cudim(t):
        raise UnrealizableError(f"unrealizable: {beta} > c.u.dim({format_type(t)}) = {cudim(t)}")
    target = int(beta)
    for mu in ordered_subtypes(t):
        if _cudim(mu) == target:
            return mu
    raise UnrealizableError(f"no subtype of {format_type(t)} has c.u.dim {beta}")


def infinite_power_defined(t: AbelianType) -> bool:
    """Whether the countable direct sum of copies of ``t`` has couniserial dimension.

    A finite-length module has this for every factor module exactly when it
    is semisimple; a finite semisimple abelian group is a finite sum of
    homogeneous components, each of which is fine.
    """
    return invariants(t).is_semisimple


# --- infinite catalog -----------------------------------------------------------


@dataclass(frozen=True)
class Free:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("Free(n) needs n >= 1")

    def __str__(self) -> str:
        return f"Z^{self.n}"


@dataclass(frozen=True)
class Prufer:
    p: int
    m: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.m < 1:
            raise ValueError("Prufer multiplicity must be >= 1")

    def __str__(self) -> str:
        return f"Prufer({self.p})" + (f"^{self.m}" if self.m != 1 else "")


@dataclass(frozen=True)
class InfHomogeneousSemisimple:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __str__(self) -> str:
        return f"SS_inf({self.p})"


InfiniteDescriptor = Union[Free, Prufer, InfHomogeneousSemisimple]


@dataclass(frozen=True)
class DimensionReport:
    defined: bool
    value: Ordinal | None
    lower_bound: Ordinal | None = None
    u_dim: int | Literal["infinite"] | None = None
    provenance: Provenance = "fast"
    subject: str = ""
    usdim: Ordinal | None = None
    length: int | None = None
    invariants: Invariants | None = None
    note: str = ""
    oracle: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.defined and self.value is not None:
            raise ValueError("undefined dimension cannot carry a value")
        if self.value is not None and self.lower_bound is not None and self.lower_bound > self.value:
            raise ValueError("lower bound exceeds value")

    def to_json(self) -> dict:
        def o(x):
            return None if x is None else x.to_json()

        out = {
            "subject": self.subject,
            "provenance": self.provenance,
            "defined": self.defined,
            "cudim": o(self.value),
            "lower_bound": o(self.lower_bound),
            "usdim": o(self.usdim),
            "u_dim": self.u_dim,
            "length": self.length,
        }
        if self.invariants is not None:
            inv = self.invariants.to_json()
            out["flags"] = {k: v for k, v in inv.items() if k.startswith("is_")}
            out["socle"] = inv["socle"]
            out["radical"] = inv["radical"]
        if self.note:
            out["note"] = self.note
        if self.oracle is not None:
            out["oracle"] = self.oracle
        return out

    def to_text(self) -> str:
        def o(x):
            return "-" if x is None else ord_format(x)

        lines = [f"module: {self.subject}", f"provenance: {self.provenance}"]
        if not self.defined:
            lines.append("cudim: undefined")
        elif self.value is not None:
            lines.append(f"cudim: {o(self.value)}")
        else:
            lines.append(f"cudim: >= {o(self.lower_bound)} (exact value not determined)")
        if self.usdim is not None:
            lines.append(f"usdim: {o(self.usdim)}")
        lines.append(f"u_dim: {self.u_dim}")
        if self.length is not None:
            lines.append(f"length: {self.length}")
        if self.invariants is not None:
            flags = [k for k, v in self.invariants.to_json().items() if k.startswith("is_") and v]
            lines.append(f"socle: {format_type(self.invariants.socle)}")
            lines.append(f"radical: {format_type(self.invariants.radical)}")
            lines.append("flags: " + (", ".join(flags) if flags else "none"))
        if self.note:
            lines.append(f"note: {self.note}")
        if self.oracle is not None:
            agree = self.oracle["agrees"]
            lines.append(
                f"oracle: cudim {self.oracle['cudim']['str']}, usdim {self.oracle['usdim']['str']}"
                f" -> {'agrees' if agree else 'DISAGREES'} with fast path"
            )
        return "\n".join(lines)


_CITATIONS = {
    Free: "c.u.dim(Z^n) = n; for n = 2 also c.u.dim = u.dim = 2 without semisimplicity",
    Prufer: "Z_{p^inf} is uniform (its subgroups form a chain); Z_{p^inf}^m, m >= 2, is "
    "artinian of infinite couniserial dimension with u.dim m",
    InfHomogeneousSemisimple: "countable direct sum of Z_p has c.u.dim = w",
}


def catalog(d: InfiniteDescriptor) -> DimensionReport:
    note = _CITATIONS[type(d)]
    if isinstance(d, Free):
        return DimensionReport(True, Ordinal.finite(d.n), u_dim=d.n, provenance="catalog",
                               subject=str(d), note=note)
    if isinstance(d, Prufer):
        if d.m == 1:
            return DimensionReport(True, Ordinal.finite(1), u_dim=1, provenance="catalog",
                                   subject=str(d), note=note)
        # artinian, so defined; only the bound w is known
        return DimensionReport(True, None, lower_bound=OMEGA, u_dim=d.m, provenance="catalog",
                               subject=str(d), note=note)
    if isinstance(d, InfHomogeneousSemisimple):
        return DimensionReport(True, OMEGA, u_dim="infinite", provenance="catalog",
                               subject=str(d), note=note)
    raise TypeError(f"unknown descriptor {d!r}")


def report(t: AbelianType) -> DimensionReport:
    inv = invariants(t)
    return DimensionReport(
        defined=True,
        value=cudim(t),
        u_dim=inv.u_dim,
        provenance="fast",
        subject=format_type(t),
        usdim=usdim(t),
        length=inv.length,
        invariants=inv,
    )
