import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from frevival.catalog import build_catalog, scan
from frevival.characters import character_table
from frevival.groups import build_group, conjugacy_classes
from frevival.report import load_problem
from frevival.spectrum import CayleyGraph, spectrum_by_character

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ROOT = Path(__file__).resolve().parent.parent
SAMPLES = ROOT / "samples"

Z6XD3 = {"kind": "direct-product", "factors": [{"kind": "cyclic", "n": 6}, {"kind": "dihedral", "n": 3}]}
Z6XD3_S = [
    [1, "a"], [5, "a"], [1, "a^2"], [5, "a^2"], [1, "b"],
    [5, "b"], [1, "ba"], [5, "ba"], [1, "ba^2"], [5, "ba^2"],
]


def sample(name: str) -> dict:
    return json.loads((SAMPLES / name).read_text())


class Problem:
    """Everything derived from one (G, S) pair."""

    def __init__(self, doc):
        _, self.G, self.S = load_problem(doc)
        self.classes = conjugacy_classes(self.G)
        self.table = character_table(self.G)
        self.spec = spectrum_by_character(self.S, self.table)
        self.graph = CayleyGraph.build(self.G, self.S)


@pytest.fixture(scope="session")
def z6xd3():
    return Problem({"group": Z6XD3, "connection_set": {"elements": Z6XD3_S}})


@pytest.fixture(scope="session")
def z4():
    return Problem(sample("z4_cycle.json"))


@pytest.fixture(scope="session")
def k2():
    return Problem(sample("k2.json"))


@pytest.fixture(scope="session")
def catalog():
    return build_catalog()


@pytest.fixture(scope="session")
def catalog_groups(catalog):
    return [(e, build_group(e.spec)) for e in catalog]


@pytest.fixture(scope="session")
def catalog_scan(catalog):
    """The full seed-pinned scan, shared by every test that needs it."""
    import time

    start = time.perf_counter()
    results = scan(catalog, seed=7)
    return results, time.perf_counter() - start


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion."""

    def record(number: int, title: str, ok: bool, detail: str = "") -> bool:
        line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}" + (f": {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
