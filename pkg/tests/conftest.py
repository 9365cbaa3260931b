from __future__ import annotations

import pytest

from coquartic.exactalg import MultiPoly
from coquartic.tritensor import QuarticSurface, random_tritensor

ACCEPTANCE_LINES: list[str] = []


def record_criterion(number, name: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {number:<3} {'PASS' if ok else 'FAIL'}  {name}"
    if detail:
        line += f"  ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def tensor1():
    return random_tritensor(1, 9)


@pytest.fixture(scope="session")
def fermat():
    F = MultiPoly({(4, 0, 0, 0): 1, (0, 4, 0, 0): 1, (0, 0, 4, 0): 1, (0, 0, 0, 4): -1})
    return QuarticSurface(F, "fermat-type")


def strip_timings(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timings"}


@pytest.fixture(scope="session")
def suite_seed1():
    from coquartic.harness import RunConfig, run_full_suite

    return run_full_suite(RunConfig(seed=1)).to_json()
