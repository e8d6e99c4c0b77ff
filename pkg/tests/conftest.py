import random

import pytest
from hypothesis import settings, strategies as st

from couniserial.abtype import AbelianType
from couniserial.ordinal import Ordinal

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@st.composite
def ordinals(draw, max_exp: int = 4, max_coef: int = 6):
    exps = draw(st.lists(st.integers(0, max_exp), unique=True, max_size=max_exp + 1))
    exps.sort(reverse=True)
    return Ordinal(tuple((e, draw(st.integers(1, max_coef))) for e in exps))


@st.composite
def partitions(draw, max_weight: int = 6):
    parts = []
    budget = draw(st.integers(0, max_weight))
    cap = budget
    while budget:
        a = draw(st.integers(1, min(cap, budget)))
        parts.append(a)
        budget -= a
        cap = a
    return tuple(parts)


@st.composite
def abelian_types(draw, primes=(2, 3, 5), max_weight: int = 6):
    items = []
    remaining = max_weight
    for p in primes:
        lam = draw(partitions(max_weight=remaining))
        remaining -= sum(lam)
        if lam:
            items.append((p, lam))
    return AbelianType(tuple(items))


@pytest.fixture
def rng():
    return random.Random(20240613)


_ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = _ACCEPTANCE_MARKS.get(report.nodeid)
    if marker is not None:
        number, title = marker
        _ACCEPTANCE[number] = (title, "PASS" if report.passed else "FAIL")


_ACCEPTANCE_MARKS: dict[str, tuple[str, str]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m is not None:
            _ACCEPTANCE_MARKS[item.nodeid] = (str(m.args[0]), m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE, key=int):
        title, status = _ACCEPTANCE[number]
        terminalreporter.write_line(f"{status}  criterion {number:>2}: {title}")
