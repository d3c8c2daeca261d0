import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20260401)


# One summary line per acceptance criterion, whatever the verbosity.
_criteria = {}


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None or (report.when != "call" and not report.failed):
        return
    rec = _criteria.setdefault(marker, {"failed": [], "xfailed": [], "passed": 0})
    if hasattr(report, "wasxfail"):
        if report.skipped:
            rec["xfailed"].append(report.head_line)
        else:
            rec["failed"].append(report.head_line)  # strict xfail that passed
    elif report.failed:
        rec["failed"].append(report.head_line)
    elif report.passed and report.when == "call":
        rec["passed"] += 1


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = m.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        rec = _criteria[n]
        status = "FAIL" if rec["failed"] else "PARTIAL" if rec["xfailed"] else "PASS"
        line = f"criterion {n:2d}: {status} ({rec['passed']} checks passed"
        if rec["xfailed"]:
            line += f"; strict xfail on a literal clause: {', '.join(rec['xfailed'])}"
        if rec["failed"]:
            line += f"; failed: {', '.join(rec['failed'])}"
        terminalreporter.write_line(line + ")")
