import shutil
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from gkinduct.smtlib import DEFAULT_SOLVERS, SolverConfig

FAKE = Path(__file__).parent / "fakes" / "fake_solver.py"
GOLDEN = Path(__file__).parent / "golden"


def fake_solver(mode: str, *extra: str, name: str | None = None) -> SolverConfig:
    return SolverConfig(name or f"fake-{mode}", (sys.executable, str(FAKE), mode, *extra, "{file}"), models=True)


def installed_solvers() -> list[SolverConfig]:
    return [cfg for cfg in DEFAULT_SOLVERS.values() if shutil.which(cfg.cmd[0])]


@pytest.fixture
def z3():
    if not shutil.which("z3"):
        pytest.skip("z3 executable not installed")
    return DEFAULT_SOLVERS["z3"]


def is_dead(pid: int) -> bool:
    status = Path(f"/proc/{pid}/status")
    try:
        text = status.read_text()
    except OSError:
        return True
    return "\nState:\tZ" in text


F = Fraction


# acceptance criteria report: one line per criterion in the terminal summary

_ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number and description")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    n, text = marker
    ok = report.passed if report.when == "call" else not report.failed
    prev = _ACCEPTANCE.get(n, (text, True))[1]
    _ACCEPTANCE[n] = (text, prev and ok and not report.skipped)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    m = item.get_closest_marker("criterion")
    if m is not None:
        outcome.get_result().criterion = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        text, ok = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}")
