"""Shared fixtures and helpers for the test suite."""

import random
from fractions import Fraction

import pytest

from equik import complexes, groups


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", default=False,
                     help="run the long opt-in checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip = pytest.mark.skip(reason="slow; opt in with --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def random_cochain(spec, p, q, rnd, denom=12):
    c = complexes.Cochain(spec, p, q)
    for i in range(len(c.values)):
        c.values[i] = Fraction(rnd.randrange(denom), denom)
    return c


def small_groups():
    return [groups.cyclic(2), groups.cyclic(3), groups.cyclic(4),
            groups.symmetric(3)]


@pytest.fixture
def rnd():
    return random.Random(20240824)
