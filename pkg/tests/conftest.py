import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from roadmatch import Address, MatchingInstance, Road, Roadmap
from roadmatch.io import GeneratorConfig, generate_instance

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def make_instance(vertices, roads, S, T):
    """``roads`` as (id, tail, head, length); points as (road id, y)."""
    rm = Roadmap(tuple(vertices), tuple(Road(*r) for r in roads))
    return MatchingInstance.from_addresses(
        rm, [Address(*p) for p in S], [Address(*p) for p in T]
    )


@pytest.fixture
def path_instance():
    # u -r1-> v -r2-> w, one S on r1 and one T on r2
    return make_instance(
        ["u", "v", "w"],
        [("r1", "u", "v", 1.0), ("r2", "v", "w", 1.0)],
        [("r1", 0.5)],
        [("r2", 0.5)],
    )


@pytest.fixture
def parallel_instance():
    return make_instance(
        ["u", "v"],
        [("r1", "u", "v", 1.0), ("r2", "u", "v", 3.0)],
        [("r1", 0.5)],
        [("r2", 0.5)],
    )


@pytest.fixture
def line_instance():
    # S@2, T@7 on a road of length 10
    return make_instance(["u", "v"], [("r", "u", "v", 10.0)], [("r", 2.0)], [("r", 7.0)])


@st.composite
def small_instances(draw, max_vertices=6, max_roads=10, max_points=10):
    n = draw(st.integers(1, max_vertices))
    E = draw(st.integers(max(1, n - 1), max_roads))
    M = draw(st.integers(0, max_points))
    seed = draw(st.integers(0, 2**32 - 1))
    return generate_instance(GeneratorConfig(seed, n, E, M))


def random_small_instance(seed, max_vertices=6, max_roads=10, max_points=10):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, max_vertices + 1))
    E = int(rng.integers(max(1, n - 1), max_roads + 1))
    M = int(rng.integers(0, max_points + 1))
    return generate_instance(GeneratorConfig(seed, n, E, M))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
