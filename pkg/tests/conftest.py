from pathlib import Path

import pytest
from hypothesis import strategies as st

from masseyfp.magnus import ConjugatedGenerator
from masseyfp.words import Word

FIXTURES = Path(__file__).parent / "fixtures"


def letters(n):
    return st.integers(1, n).flatmap(lambda g: st.sampled_from([g, -g]))


def words(n=6, max_len=10):
    return st.lists(letters(n), max_size=max_len).map(Word)


def conj_gens(n=6, max_len=5):
    return st.builds(ConjugatedGenerator, st.integers(1, n), words(n, max_len))


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[name])
