import numpy as np
import pytest

from ptvarfima import defaults
from ptvarfima.simulate import simulate_ensemble

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def fig1():
    return defaults.FIG1


@pytest.fixture
def fig2():
    return defaults.FIG2


@pytest.fixture(scope="session")
def fig1_ensemble():
    """R = 500 paths, n = 4096, M = 5000 of the first figure's model."""
    return simulate_ensemble(defaults.FIG1, 4096, 5000, None, 500, master_seed=20240601)


@pytest.fixture(scope="session")
def fig1_paths(fig1_ensemble):
    return fig1_ensemble.values()


@pytest.fixture
def report_criterion():
    def record(number: int, name: str, passed: bool, detail: str) -> None:
        line = f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  {name}: {detail}"
        print(line)
        _ACCEPTANCE_LINES.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
