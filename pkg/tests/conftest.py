import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

ACCEPTANCE_TITLES = {
    1: "fusion oracle equivalence (rank 1)",
    2: "two-formula agreement",
    3: "structural checks (Ω-equivariance, nonvanishing, ring axioms)",
    4: "A2 ell=5 regular-part reproduction",
    5: "alcove arithmetic",
    6: "A2 reduced-word checks",
    7: "gfd additivity and Ω-twist coherence",
    8: "character sanity",
    9: "fusion table performance and cache",
}
_results = {}
_collected = set()


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("acceptance")
        if marker is not None:
            _collected.add(marker.args[0])


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n): test implementing acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when not in ("setup", "call"):
        return
    n = marker.args[0]
    if report.when == "setup" and report.passed:
        return
    detail = "" if report.passed else str(report.longrepr).strip().splitlines()[-1][:200]
    prev_passed, prev_detail = _results.get(n, (True, ""))
    _results[n] = (prev_passed and report.passed, prev_detail or detail)


def pytest_terminal_summary(terminalreporter):
    if not _collected:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in ACCEPTANCE_TITLES.items():
        if n not in _results:
            terminalreporter.write_line(f"AC{n} FAIL {title} (not run)")
            continue
        passed, detail = _results[n]
        line = f"AC{n} {'PASS' if passed else 'FAIL'} {title}"
        if not passed and detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
