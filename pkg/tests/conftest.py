import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_ACCEPTANCE: dict = {}
_REPORTS: dict = {}


@pytest.fixture(scope="session")
def axiom_report():
    """Cached ``check_axioms`` runs; the sampled phase checks take seconds."""
    from tropcram.axioms import check_axioms

    def get(S, seed=7):
        key = (S.name, seed)
        if key not in _REPORTS:
            _REPORTS[key] = check_axioms(S, seed=seed)
        return _REPORTS[key]

    return get


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(number, title): test belongs to a numbered acceptance criterion"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    entry = _ACCEPTANCE.setdefault(number, {"title": title, "passed": True, "failed": [], "ran": False})
    if rep.when == "call":
        entry["ran"] = True
    if rep.failed:
        entry["passed"] = False
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        e = _ACCEPTANCE[number]
        status = "PASS" if e["passed"] and e["ran"] else "FAIL"
        line = f"criterion {number}: {status}  {e['title']}"
        if e["failed"]:
            line += f"  (failing: {', '.join(e['failed'])})"
        tr.write_line(line)
