import random

import pytest
from hypothesis import settings, strategies as st

from thompsonf.words import Letter, Word, eval_word

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

STEPS = [("x0", 1), ("x0", -1), ("x1", 1), ("x1", -1)]

ACCEPTANCE_LINES = []


def word_from_steps(steps):
    return Word(tuple(Letter(b, e) for b, e in steps))


def words(max_size=10):
    return st.lists(st.sampled_from(STEPS), max_size=max_size).map(word_from_steps)


def maps(max_size=10):
    return words(max_size).map(eval_word)


def random_word(rng: random.Random, max_len=12):
    n = rng.randint(0, max_len)
    return word_from_steps(rng.choice(STEPS) for _ in range(n))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(20240601)
