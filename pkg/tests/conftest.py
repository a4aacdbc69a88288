import time

import pytest

from nilclean.construct import build_ring

_RESULTS_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion check")
    config.stash[_RESULTS_KEY] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        number, title = marker.args
        results = item.config.stash[_RESULTS_KEY]
        entry = results.setdefault(number, {"title": title, "ok": True, "seconds": 0.0, "tests": 0})
        entry["ok"] &= report.passed
        entry["seconds"] += report.duration
        entry["tests"] += 1


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_RESULTS_KEY, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        r = results[number]
        status = "PASS" if r["ok"] else "FAIL"
        terminalreporter.write_line(
            f"[{status}] criterion {number:>2}: {r['title']}  "
            f"({r['tests']} checks, {r['seconds']:.2f} s)"
        )


_RINGS: dict = {}


@pytest.fixture(scope="session")
def ring():
    """Session-wide memo of built rings, keyed by expression text."""
    def get(expr: str):
        if expr not in _RINGS:
            _RINGS[expr] = build_ring(expr)
        return _RINGS[expr]
    return get


@pytest.fixture
def stopwatch():
    class Watch:
        def __enter__(self):
            self.t0 = time.perf_counter()
            return self

        def __exit__(self, *exc):
            self.seconds = time.perf_counter() - self.t0

    return Watch
