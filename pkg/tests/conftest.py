import pytest

from vietphon.reverse import default_lexicon
from vietphon.syllable import parse_word

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def lexicon():
    return default_lexicon()


@pytest.fixture(scope="session")
def parsed(lexicon):
    return {w: parse_word(w) for w in lexicon}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
