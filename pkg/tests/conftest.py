from __future__ import annotations

import pytest

from d2gen.butterfly import MinorClosure
from d2gen.digraph import CanonicalForm, Digraph
from d2gen.generate import generate_closure, oracle_enumerate
from d2gen.splitter import SequenceFinder, SweepReport, _sweep_one

# acceptance lines, printed in the terminal summary
CRITERIA: dict[int, str] = {}


def record(number: int, ok: bool, text: str) -> None:
    CRITERIA[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}"


def pytest_terminal_summary(terminalreporter) -> None:
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[k])


@pytest.fixture(scope="session")
def oracle5() -> list[CanonicalForm]:
    return sorted(oracle_enumerate(5))


@pytest.fixture(scope="session")
def reps5(oracle5) -> dict[CanonicalForm, Digraph]:
    return {f: f.to_digraph() for f in oracle5}


@pytest.fixture(scope="session")
def closure5():
    return generate_closure(5)


@pytest.fixture(scope="session")
def finder() -> SequenceFinder:
    return SequenceFinder()


@pytest.fixture(scope="session")
def minor_closure(finder) -> MinorClosure:
    return finder.closure


@pytest.fixture(scope="session")
def sweep5(oracle5, finder) -> SweepReport:
    """find_sequence on every minor pair of the order <= 5 oracle."""
    return SweepReport([o for fd in oracle5 for o in _sweep_one(finder, fd, oracle5)])
