import os
import sys

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from polyjoin.complex import GroundSet, SimplicialComplex, SimplicialPair

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def as_sets(K: SimplicialComplex) -> set:
    return {frozenset(f) for f in K.face_vertices()}


@st.composite
def complexes(draw, min_n=0, max_n=5, allow_void=True):
    n = draw(st.integers(min_n, max_n))
    g = GroundSet.range(n)
    if allow_void and draw(st.integers(0, 19)) == 0:
        return SimplicialComplex(g, [], check=False)
    gens = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=6))
    return SimplicialComplex.from_facet_masks(g, [0] + gens)


@st.composite
def complexes_on(draw, n, allow_void=True):
    return draw(complexes(min_n=n, max_n=n, allow_void=allow_void))


@st.composite
def pairs(draw, min_n=1, max_n=3, allow_void=True):
    X = draw(complexes(min_n=min_n, max_n=max_n, allow_void=False))
    keep = draw(st.lists(st.sampled_from(sorted(X.faces)), max_size=4))
    if allow_void and not keep and draw(st.booleans()):
        A = SimplicialComplex(X.ground, [], check=False)
    else:
        A = SimplicialComplex.from_facet_masks(X.ground, [0] + keep)
    return SimplicialPair(X, A)


@pytest.fixture
def acceptance_report():
    def report(number: int, title: str, passed: bool, seconds: float, limit: float, note: str = ""):
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] criterion {number:>2}: {title} ({seconds:.1f}s / limit {limit:.0f}s)"
        if note:
            line += f" {note}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
