from __future__ import annotations

import os
import sys
import tempfile
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# keep every test run away from the user's real cache directory
_CACHE = tempfile.mkdtemp(prefix="tensorgf-test-cache-")
os.environ["TENSORGF_CACHE_DIR"] = _CACHE

_RESULTS: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, tolerance): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title, tolerance = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = "PASS" if rep.outcome == "passed" else "FAIL"
        _RESULTS[number] = (status, title, tolerance)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        status, title, tolerance = _RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d} {status}  {title}  [tolerance: {tolerance}]")
