import random

import pytest
from hypothesis import strategies as st

from ringcheck.lang import parse_program
from ringcheck.poly import GF, PolyRing, monomials_up_to


def load(src: str):
    return parse_program(src)


def ring(text: str):
    """Parse the right-hand side of a ring declaration, e.g. 'QQ[x,y]/(x*y)'."""
    return parse_program(f"ring R = {text};").rings["R"]


@pytest.fixture
def rng():
    return random.Random(20261016)


def polys(R: PolyRing, max_deg: int = 3, max_terms: int = 4, coeffs=(-3, 3)):
    monos = monomials_up_to(R.nvars, max_deg)
    lo, hi = coeffs
    term = st.tuples(st.sampled_from(monos), st.integers(lo, hi))
    return st.lists(term, max_size=max_terms).map(
        lambda ts: R.from_dict({m: c for m, c in ts}))


R3 = PolyRing(["x", "y", "z"])
R3_F5 = PolyRing(["x", "y", "z"], GF(5))


_ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion(capsys):
    """Record and print one pass/fail line for an acceptance criterion."""

    def emit(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE.append(line)
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return emit


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
