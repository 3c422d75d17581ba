from fractions import Fraction

import pytest

from erwmem.walk import WalkParams

GRID_P = tuple(Fraction(i, 4) for i in range(5))
GRID_Q = (Fraction(1, 2), Fraction(1))

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    number, title = crit
    passed, titles = _criteria.get(number, (True, title))
    _criteria[number] = (passed and report.outcome == "passed", titles)


@pytest.fixture(autouse=True)
def _tag_criterion(request):
    mark = request.node.get_closest_marker("criterion")
    if mark is not None:
        request.node.user_properties.append(("criterion", tuple(mark.args)))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        passed, title = _criteria[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {number}: {title}")


@pytest.fixture(params=[(p, q) for p in GRID_P for q in GRID_Q],
                ids=lambda pq: f"p={pq[0]},q={pq[1]}")
def grid_params(request):
    return WalkParams(*request.param)
