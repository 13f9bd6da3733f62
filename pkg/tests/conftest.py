"""Shared fixtures and the one-line-per-criterion acceptance report."""

from __future__ import annotations

from collections import defaultdict

import pytest

from mfkit.fusion import make_color_set

_results: dict[int, dict] = defaultdict(lambda: {"title": "", "passed": True, "seconds": 0.0, "tests": 0})


@pytest.fixture
def cs5():
    return make_color_set(5, "su2")


@pytest.fixture
def cs5ev():
    return make_color_set(5, "so3")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    rec = _results[number]
    rec["title"] = title
    rec["tests"] += 1
    rec["seconds"] += call.duration
    if call.excinfo is not None:
        rec["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        rec = _results[number]
        status = "PASS" if rec["passed"] else "FAIL"
        terminalreporter.write_line(
            f"criterion {number:2d}: {status}  {rec['title']}  ({rec['tests']} test(s), {rec['seconds']:.2f} s)"
        )
