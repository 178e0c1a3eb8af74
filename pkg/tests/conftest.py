import pytest

_results: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(key, title): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    key, title = marker
    if report.when == "call" or report.failed:
        prev = _results.get(key, (None, title))[0]
        outcome = "FAIL" if report.failed or prev == "FAIL" else "PASS"
        _results[key] = (outcome, title)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = tuple(m.args)


def _sort_key(key):
    digits = "".join(ch for ch in key if ch.isdigit())
    return int(digits), key


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_results, key=_sort_key):
        outcome, title = _results[key]
        terminalreporter.write_line(f"[{outcome}] criterion {key}: {title}")
