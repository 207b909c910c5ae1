import sys
from pathlib import Path

import pytest

from ndverify.proofgraph import ProofGraph, load

FIXTURES = Path(__file__).parent / "fixtures"
sys.path.insert(0, str(Path(__file__).parent))


def load_fixture(name: str) -> ProofGraph:
    return load((FIXTURES / f"{name}.json").read_bytes())


@pytest.fixture
def by_cases() -> ProofGraph:
    """{A | B, ~A} |- B, nodes numbered 1..9."""
    return load_fixture("by_cases")


@pytest.fixture
def not_intro() -> ProofGraph:
    """{~(p | q)} |- ~p."""
    return load_fixture("not_intro")


@pytest.fixture
def distrib() -> ProofGraph:
    """Distributivity of | over &, both directions, 26 nodes."""
    return load_fixture("distrib")


# ---------------------------------------------------------------------------
# one PASS/FAIL/SKIP line per acceptance criterion
# ---------------------------------------------------------------------------

_CRITERIA: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA.setdefault(marker.args[0], []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        outcomes = _CRITERIA[n]
        if "failed" in outcomes:
            status = "FAIL"
        elif all(o == "skipped" for o in outcomes):
            status = "SKIP"
        else:
            status = "PASS" + (" (part skipped)" if "skipped" in outcomes else "")
        terminalreporter.write_line(f"criterion {n}: {status}")
