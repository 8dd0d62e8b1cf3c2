import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


def pytest_addoption(parser):
    parser.addoption(
        "--grdb4",
        default=os.environ.get("WPKSTAB_GRDB4"),
        help="CSV/JSON export of the 11618 index-1 Fano fourfold families "
             "(also read from $WPKSTAB_GRDB4)",
    )


@pytest.fixture
def grdb4_path(request):
    path = request.config.getoption("--grdb4")
    if not path or not Path(path).is_file():
        pytest.skip("fourfold family list not supplied (--grdb4 PATH)")
    return path


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config._acceptance = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    results = item.config._acceptance
    key = mark.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[rep.outcome]
        results[key] = (mark.args[1], status)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results):
        title, status = results[key]
        terminalreporter.write_line(f"[{status}] criterion {key}: {title}")
