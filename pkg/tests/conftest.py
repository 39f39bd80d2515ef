from __future__ import annotations

from pathlib import Path

import pytest

HERE = Path(__file__).parent
MINI = HERE / "fixtures" / "mini"

CRITERIA = {
    1: "metrics equal brute-force oracles on exhaustive ranked lists",
    2: "rank-sum p and Cliff's delta equal enumeration oracles",
    3: "VSM, LSI and JS numerics on random corpora",
    4: "Porter stemmer agrees with the reference vocabulary",
    5: "weight and multiplier invariants on random cases",
    6: "motivating example: consensual set, counts and rank gain",
    7: "ablation identity and arms from config toggles",
    8: "external iTrust run (needs TRACE_ITRUST_DIR)",
}
_SEVERITY = {"PASS": 0, "SKIP": 1, "FAIL": 2}
_results: dict[int, str] = {}


def pytest_configure(config: pytest.Config) -> None:
    config.addinivalue_line("markers", "acceptance(n): test backs acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item: pytest.Item, call: pytest.CallInfo):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when != "call" and rep.passed:
        return
    status = "PASS" if rep.passed else "SKIP" if rep.skipped else "FAIL"
    n = marker.args[0]
    prev = _results.get(n, "PASS")
    _results[n] = max(prev, status, key=_SEVERITY.__getitem__)


def pytest_terminal_summary(terminalreporter) -> None:
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        status = _results.get(n, "NOT RUN")
        terminalreporter.write_line(f"AC{n} {status:<7} {title}")


@pytest.fixture
def mini() -> Path:
    return MINI
