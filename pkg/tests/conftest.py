import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from braidrep.field import RatFunc
from braidrep.linalg import Matrix


def rand_fraction(rng, lo=-9, hi=9, maxden=6):
    return Fraction(rng.randint(lo, hi), rng.randint(1, maxden))


def rand_ratfunc(rng, max_num=3, max_den=2):
    num = [rand_fraction(rng) for _ in range(rng.randint(0, max_num + 1))]
    while True:
        den = [rand_fraction(rng) for _ in range(rng.randint(1, max_den + 1))]
        if any(den):
            break
    return RatFunc(num, den)


def rand_matrix(rng, r, c=None, field="Q", density=0.7):
    c = r if c is None else c
    make = (lambda: rand_fraction(rng, -3, 3, 2)) if field == "Q" else (lambda: rand_ratfunc(rng, 1, 1))
    zero = Fraction(0) if field == "Q" else RatFunc.const(0)
    rows = [[make() if rng.random() < density else zero for _ in range(c)] for _ in range(r)]
    return Matrix(rows, field)


def rand_invertible(rng, r):
    while True:
        m = rand_matrix(rng, r, density=0.9)
        if m.is_invertible():
            return m


small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def ratfuncs(draw, max_num=3, max_den=2):
    num = draw(st.lists(small_fractions, max_size=max_num + 1))
    den = draw(st.lists(small_fractions, min_size=1, max_size=max_den + 1).filter(any))
    return RatFunc(num, den)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
