import sys
from pathlib import Path

import mpmath
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from distinctpairs.model import GeomParams  # noqa: E402

_acceptance_results = []


@pytest.fixture
def half():
    return GeomParams.from_q("1/2")


@pytest.fixture(autouse=True)
def _mp_precision():
    # comparisons in tests happen outside the library's local precision blocks
    with mpmath.workprec(256):
        yield


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    props = dict(report.user_properties)
    if props.get("acceptance"):
        _acceptance_results.append((props["acceptance"], report.outcome, props.get("detail")))


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark:
            number, title = mark.args
            item.user_properties.append(("acceptance", f"criterion {number:>2}: {title}"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome, detail in sorted(_acceptance_results, key=lambda r: r[0]):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {label}" + (f"  ({detail})" if detail else ""))
