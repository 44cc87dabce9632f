import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from idiomkit.corpus import CorpusSpec, acceptance_corpus, enumerate_corpus, load_fixture  # noqa: E402
from idiomkit.nuclei import enumerate_nuclei  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def corpus():
    return tuple(acceptance_corpus(0))


@lru_cache(maxsize=None)
def small_modular(max_n=6):
    return tuple(enumerate_corpus(CorpusSpec(max_n, "modular")))


@lru_cache(maxsize=None)
def nuclei_of(L):
    return tuple(enumerate_nuclei(L))


@pytest.fixture
def m3():
    return load_fixture("m3")


@pytest.fixture
def p6():
    return load_fixture("p6")


@pytest.fixture
def b2():
    return load_fixture("b2")


@pytest.fixture
def chain3():
    return load_fixture("chain3")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
