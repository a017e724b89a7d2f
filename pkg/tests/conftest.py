import os
from pathlib import Path

import pytest

# One cache for the whole run (and across runs) so the large levels are built once.
os.environ.setdefault("MODFERMAT_CACHE", str(Path(__file__).resolve().parent.parent / ".modfermat-cache"))

from modfermat.config import Config  # noqa: E402


@pytest.fixture(scope="session")
def cfg():
    return Config()


@pytest.fixture
def tmp_cfg(tmp_path):
    return Config(cache_dir=tmp_path / "cache")


# --- acceptance summary ---------------------------------------------------------
# Tests marked ``acceptance(n, title)`` get one PASS/FAIL line each in the
# terminal summary, followed by any notes they recorded.

_criteria = {}
_outcomes = {}
_notes = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m is not None:
            _criteria[item.nodeid] = m.args


def pytest_runtest_logreport(report):
    if report.nodeid not in _criteria:
        return
    if report.when == "call" or report.failed or report.skipped:
        prev = _outcomes.get(report.nodeid)
        if prev is None or prev[0] == "PASS":
            status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
            _outcomes[report.nodeid] = (status, report.duration)


@pytest.fixture
def note(request):
    """Record a line for the acceptance summary of the current test."""
    lines = _notes.setdefault(request.node.nodeid, [])
    return lines.append


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for nodeid, (n, title) in sorted(_criteria.items(), key=lambda kv: kv[1][0]):
        if nodeid not in _outcomes:
            continue
        status, secs = _outcomes[nodeid]
        tr.write_line(f"criterion {n:>2}: {status}  {title}  ({secs:.1f} s)")
        for ln in _notes.get(nodeid, []):
            tr.write_line(f"              {ln}")
