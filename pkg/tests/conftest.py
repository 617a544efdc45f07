import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from maxmult.ring import PolyRing

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

P = 32003


@pytest.fixture
def R3():
    return PolyRing(["x", "y", "z"])


@pytest.fixture
def R4():
    return PolyRing(["x", "y", "z", "w"])


def exponents(n, max_exp=3):
    return st.tuples(*[st.integers(0, max_exp)] * n)


def polynomials(ring, max_terms=4, max_exp=3):
    term = st.tuples(st.integers(0, ring.p - 1), exponents(ring.n, max_exp))
    return st.lists(term, max_size=max_terms).map(ring.from_terms)


def forms(ring, degree, max_terms=4):
    """Homogeneous polynomials of a fixed degree (possibly zero)."""
    @st.composite
    def one(draw):
        terms = []
        for _ in range(draw(st.integers(1, max_terms))):
            exps = [0] * ring.n
            for _ in range(degree):
                exps[draw(st.integers(0, ring.n - 1))] += 1
            terms.append((draw(st.integers(1, ring.p - 1)), tuple(exps)))
        return ring.from_terms(terms)
    return one()


def pytest_collection_modifyitems(config, items):
    if os.environ.get("MAXMULT_LONG") == "1":
        return
    skip = pytest.mark.skip(reason="long-running; set MAXMULT_LONG=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    lines = [value for key in ("passed", "failed")
             for rep in terminalreporter.stats.get(key, [])
             if rep.when == "call"
             for name, value in rep.user_properties if name == "criterion"]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split("]")[1].split(".")[0])):
            terminalreporter.write_line(line)
