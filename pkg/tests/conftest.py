import os
import random
from fractions import Fraction

import pytest

from symjac import config
from symjac.elements import add

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session", autouse=True)
def _cache_dir(tmp_path_factory):
    # one private cache per run, shared by all tests
    path = tmp_path_factory.mktemp("symjac-cache")
    old = os.environ.get("SYMJAC_CACHE_DIR")
    os.environ["SYMJAC_CACHE_DIR"] = str(path)
    config.reset()
    yield path
    if old is None:
        os.environ.pop("SYMJAC_CACHE_DIR", None)
    else:
        os.environ["SYMJAC_CACHE_DIR"] = old
    config.reset()


@pytest.fixture(autouse=True)
def _fresh_config():
    config.reset()
    yield
    config.reset()


@pytest.fixture
def rng():
    return random.Random(20240)


def random_element(rng, pool, terms=2, scale=3):
    x: dict = {}
    for _ in range(terms):
        add(x, {rng.choice(pool): Fraction(rng.randint(-scale, scale) or 1, rng.randint(1, 2))})
    return x


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
