import functools

import pytest

from pi_prover.numcore import Precision
from pi_prover.prover import prove

DEGREES = (5, 7, 11, 17, 41)


@functools.lru_cache(maxsize=None)
def cached_proof(d: int, digits: int = 200):
    return prove(d, Precision(digits))


@pytest.fixture(scope="session")
def proofs():
    return {d: cached_proof(d) for d in DEGREES}


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
