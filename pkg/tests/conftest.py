import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hexnav.mapmodel import load_bundled_map

from oracles import build_map


@pytest.fixture(scope="session")
def clinic():
    return load_bundled_map("clinic")


@pytest.fixture
def single_node_map():
    return build_map([(1, "A", 0.5, 0.5)], [])


@pytest.fixture
def two_node_map():
    # 2 sits due north of 1
    return build_map([(1, "A", 0.5, 0.5), (2, "B", 0.5, 1.14)], [(1, 2, 1)])


@pytest.fixture
def triangle_map():
    # direct 1-3 hop costs 2; the 1-2-3 detour costs 1+1
    s = 0.64
    h = s * 0.8660254038
    return build_map(
        [(1, "A", 0.5, 0.5), (2, "B", 0.5, 0.5 + s), (3, "C", 0.5 + h, 0.5 + s / 2)],
        [(1, 2, 1), (2, 3, 1), (1, 3, 2)],
    )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" in nodeid and "criterion" in nodeid:
                name = nodeid.split("::")[-1]
                rows.append((name, "PASS" if outcome == "passed" else "FAIL"))
    if rows:
        terminalreporter.section("acceptance criteria")
        for name, status in sorted(set(rows)):
            terminalreporter.write_line(f"{status}  {name}")
