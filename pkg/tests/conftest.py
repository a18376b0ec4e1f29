from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from walker.polynomial import Polynomial, walker_variables

settings.register_profile(
    "walker", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("walker")

V2 = walker_variables(2)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, variables=V2, max_terms=4, max_exp=3, allow=None):
    allow = variables if allow is None else allow
    idx = [variables.index(v) for v in allow]
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = [0] * len(variables)
        for i in idx:
            e[i] = draw(st.integers(0, max_exp))
        terms[tuple(e)] = draw(rationals)
    return Polynomial(terms, variables)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: end-to-end acceptance criteria")


@pytest.fixture
def frac():
    return Fraction


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
