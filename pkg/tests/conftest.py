import numpy as np
import pytest

from mapvlsn.linkage import delta_tensor
from mapvlsn.tensor import CostTensor, InstanceSeedSpec, generate_instance

# Pairwise similarities of the three-partite toy example (sources A, B, C).
TOY_AB = [[0.4, 0.6, 0.6], [0.6, 0.6, 0.6], [0.6, 0.6, 1.0]]
TOY_BC = [[1.0, 0.1, 0.1], [0.1, 1.0, 0.1], [0.1, 0.1, 1.0]]
TOY_AC = [[1.0, 0.1, 0.1], [0.1, 1.0, 0.1], [0.1, 0.1, 1.0]]


def toy_tensor() -> CostTensor:
    sims = {(0, 1): np.array(TOY_AB), (1, 2): np.array(TOY_BC), (0, 2): np.array(TOY_AC)}
    return delta_tensor(sims, 3)


@pytest.fixture
def toy():
    return toy_tensor()


@pytest.fixture
def seed42():
    return generate_instance(InstanceSeedSpec(3, 3, 42))


def instance(dims, card, seed, dist="uniform01"):
    return generate_instance(InstanceSeedSpec(dims, card, seed, dist))


ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
