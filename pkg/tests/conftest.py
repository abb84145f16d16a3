import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qnnfourier.arch import ArchitectureSpec, Family  # noqa: E402
from qnnfourier.train import TrainConfig, top_hat_dataset, train  # noqa: E402

ACCEPTANCE_SEEDS = (0, 1, 2, 3, 4)
ACCEPTANCE_EPOCHS = 200

_criteria_lines: list[str] = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line per acceptance criterion; printed in the terminal summary."""

    def _report(label: str, ok: bool, detail: str = "") -> bool:
        _criteria_lines.append(f"[{'PASS' if ok else 'FAIL'}] {label}" + (f" -- {detail}" if detail else ""))
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if _criteria_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criteria_lines:
            terminalreporter.write_line(line)


class TrainedRuns(dict):
    elapsed: float = 0.0


@pytest.fixture(scope="session")
def trained_runs():
    """All four families at n=2, family-default var_depth, 200 epochs, seeds 0-4."""
    data = top_hat_dataset(100)
    runs = TrainedRuns()
    start = time.perf_counter()
    for family in Family:
        spec = ArchitectureSpec(family, 2)
        runs[family] = [
            train(spec, TrainConfig(epochs=ACCEPTANCE_EPOCHS, seed=s), data) for s in ACCEPTANCE_SEEDS
        ]
    runs.elapsed = time.perf_counter() - start
    return runs
