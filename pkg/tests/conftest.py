import random

import pytest

from fleetmatch import paillier

ACCEPTANCE_LINES = []


def record_criterion(num, name, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] AC{num:02d} {name}" + (f" -- {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def keys35():
    return paillier.keys_from_primes(5, 7)


@pytest.fixture(scope="session")
def keys15():
    return paillier.keys_from_primes(3, 5)


@pytest.fixture(scope="session")
def keys128():
    return paillier.generate_keys(128, random.Random(128))


@pytest.fixture(scope="session")
def keys64():
    return paillier.generate_keys(64, random.Random(64))
