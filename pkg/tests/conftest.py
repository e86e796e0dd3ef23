import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from treefree.generators import (
    random_integer_metric,
    random_molecule,
    random_tree,
    random_tree_metric,
)

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def rationals(lo=-10, hi=10, max_den=6):
    return st.fractions(min_value=lo, max_value=hi, max_denominator=max_den)


def positive_rationals(hi=10, max_den=6):
    return st.fractions(min_value=Fraction(1, max_den), max_value=hi, max_denominator=max_den)


@st.composite
def tree_metrics(draw, min_points=2, max_points=8):
    n = draw(st.integers(min_points, max_points))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_tree_metric(random.Random(seed), n)


@st.composite
def integer_metrics(draw, min_points=2, max_points=7):
    n = draw(st.integers(min_points, max_points))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_integer_metric(random.Random(seed), n)


@st.composite
def trees(draw, min_vertices=2, max_vertices=12, marked_fraction=1.0):
    n = draw(st.integers(min_vertices, max_vertices))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_tree(random.Random(seed), n, marked_fraction=marked_fraction)


@st.composite
def metric_and_molecule(draw, metrics):
    M = draw(metrics)
    seed = draw(st.integers(0, 2**32 - 1))
    return M, random_molecule(random.Random(seed), M)


@pytest.fixture
def rng():
    return random.Random(20240611)


# one PASS/FAIL line per acceptance criterion at the end of the run

_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.outcome != "passed":
        prev = _acceptance.get(name, "PASS")
        _acceptance[name] = "FAIL" if report.outcome == "failed" or prev == "FAIL" else (
            "SKIP" if report.outcome == "skipped" else "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        terminalreporter.write_line(f"{_acceptance[name]}  {name}")
