import functools

import pytest
from hypothesis import HealthCheck, settings

from isodirac import builders, dimer, homology

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.load_profile("default")

ACCEPTANCE_LINES = []


@functools.lru_cache(maxsize=None)
def surface(name):
    return {
        "honeycomb": lambda: builders.honeycomb_torus(3, 3),
        "honeycomb11": lambda: builders.honeycomb_torus(1, 1),
        "honeycomb24": lambda: builders.honeycomb_torus(2, 4),
        "k33": builders.k33_torus,
        "rtorus": lambda: builders.rhombi_torus(6, 6),
        "rtorus_small": lambda: builders.rhombi_torus(6, 2),
        "rtorus_shifted": lambda: builders.rhombi_torus(6, 6, shift=1),
        "genus2": builders.genus2_octagon,
        "slit": builders.slit_double_torus,
    }[name]()


@functools.lru_cache(maxsize=None)
def basis(name):
    return homology.cycle_basis(surface(name))


@functools.lru_cache(maxsize=None)
def census(name):
    return dimer.enumerate_matchings(surface(name), basis(name))


ALL_BUILDERS = ["honeycomb", "honeycomb11", "honeycomb24", "k33", "rtorus", "rtorus_small",
                "rtorus_shifted", "genus2", "slit"]
# surfaces on which the two cone-angle conditions hold
GOOD = ["honeycomb", "k33", "rtorus", "genus2"]


@pytest.fixture(params=ALL_BUILDERS)
def any_surface(request):
    return surface(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
