import math
import random

import pytest

from rayvoronoi.io import generate_sites
from rayvoronoi.world import World

# filled by test_acceptance, printed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def unit_square():
    return World.box(0.0, 0.0, 1.0, 1.0)


def uniform(n, seed, world=None):
    world = world or unit_square()
    return generate_sites(f"uniform:{n}:{seed}", world), world


def brute_nearest(x, sites):
    return min(range(len(sites)), key=lambda j: math.hypot(x[0] - sites[j][0], x[1] - sites[j][1]))


def random_unit(rng):
    a = rng.uniform(-math.pi, math.pi)
    return (math.cos(a), math.sin(a))


@pytest.fixture
def rng():
    return random.Random(1234)
