"""Ordinals below omega^omega in Cantor normal form.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` pairs with
strictly decreasing exponents and positive coefficients, so that
``((2, 1), (1, 4), (0, 1))`` is ``w^2 + w*4 + 1``.  The empty tuple is zero.
Because the representation is canonical, equality and hashing are plain
tuple equality, and the natural order is the lexicographic order on terms.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Literal


class OrdinalParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        terms = tuple((int(e), int(c)) for e, c in self.terms)
        prev = None
        for e, c in terms:
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            if c < 1:
                raise ValueError(f"coefficient must be >= 1, got {c}")
            if prev is not None and e >= prev:
                raise ValueError(f"exponents not strictly decreasing: {terms}")
            prev = e
        object.__setattr__(self, "terms", terms)

    @classmethod
    def finite(cls, n: int) -> Ordinal:
        if n < 0:
            raise ValueError("ordinals are non-negative")
        return cls(((0, n),)) if n else cls()

    @classmethod
    def omega_power(cls, exponent: int, coefficient: int = 1) -> Ordinal:
        return cls(((exponent, coefficient),)) if coefficient else cls()

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == 0)

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] > 0

    def __int__(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def __add__(self, other) -> Ordinal:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ord_add(self, other)

    def __radd__(self, other) -> Ordinal:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ord_add(other, self)

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ord_cmp(self, other) == "less"

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __str__(self) -> str:
        return ord_format(self)

    def __repr__(self) -> str:
        return f"Ordinal({ord_format(self)!r})"

    def to_json(self) -> dict:
        return {"cnf": [list(t) for t in self.terms], "str": ord_format(self)}

    @classmethod
    def from_json(cls, obj: dict) -> Ordinal:
        return cls(tuple((e, c) for e, c in obj["cnf"]))


def _coerce(x):
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool) and x >= 0:
        return Ordinal.finite(x)
    return NotImplemented


ZERO = Ordinal()
ONE = Ordinal.finite(1)
OMEGA = Ordinal.omega_power(1)


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum ``a + b``.

    The leading term ``w^e * c`` of ``b`` swallows every term of ``a`` with a
    smaller exponent; a term of ``a`` with exponent exactly ``e`` merges its
    coefficient.
    """
    if not b.terms:
        return a
    lead_exp, lead_coef = b.terms[0]
    kept = [t for t in a.terms if t[0] > lead_exp]
    same = [c for e, c in a.terms if e == lead_exp]
    head = (lead_exp, lead_coef + (same[0] if same else 0))
    return Ordinal(tuple(kept) + (head,) + b.terms[1:])


def ord_cmp(a: Ordinal, b: Ordinal) -> Literal["less", "equal", "greater"]:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        if (ea, ca) != (eb, cb):
            if ea != eb:
                return "less" if ea < eb else "greater"
            return "less" if ca < cb else "greater"
    if len(a.terms) == len(b.terms):
        return "equal"
    return "less" if len(a.terms) < len(b.terms) else "greater"


def ord_sup(values: Iterable[Ordinal]) -> Ordinal:
    """Supremum of a finite nonempty collection, i.e. its maximum."""
    values = list(values)
    if not values:
        raise ValueError("empty supremum")
    best = values[0]
    for v in values[1:]:
        if ord_cmp(v, best) == "greater":
            best = v
    return best


def ord_format(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    parts = []
    for e, c in a.terms:
        if e == 0:
            parts.append(str(c))
            continue
        s = "w" if e == 1 else f"w^{e}"
        if c != 1:
            s += f"*{c}"
        parts.append(s)
    return "+".join(parts)


_TOKEN = re.compile(r"w(?:\^(\d+))?(?:\*(\d+))?|(\d+)")


def ord_parse(text: str) -> Ordinal:
    """Parse ``0 | term ("+" term)*`` with ``term := w[^NAT][*NAT] | NAT``.

    Terms must already be in Cantor normal form order; ``w+w`` or ``1+w``
    are rejected rather than silently normalised.
    """
    if text == "0":
        return ZERO
    pos = 0
    terms: list[tuple[int, int]] = []
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise OrdinalParseError("expected a term", text, pos)
        if m.group(3) is not None:
            exp, coef = 0, int(m.group(3))
        else:
            exp = int(m.group(1)) if m.group(1) is not None else 1
            coef = int(m.group(2)) if m.group(2) is not None else 1
        if coef == 0:
            raise OrdinalParseError("zero coefficient", text, m.start())
        if terms and exp >= terms[-1][0]:
            raise OrdinalParseError("exponents must strictly decrease", text, m.start())
        terms.append((exp, coef))
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != "+":
            raise OrdinalParseError("expected '+'", text, pos)
        pos += 1
    return Ordinal(tuple(terms))
