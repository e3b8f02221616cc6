import functools

import pytest
from hypothesis import HealthCheck, settings

from reltilt import Workbench, linear_a
from reltilt.atlas import knit_atlas

settings.register_profile("reltilt", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("reltilt")

SHAPES = {"A1": (1, None), "A2": (2, None), "A3": (3, None), "A4r3": (4, 3)}


@functools.lru_cache(maxsize=None)
def algebra(name):
    n, k = SHAPES[name]
    return linear_a(n, k)


@functools.lru_cache(maxsize=None)
def workbench(name):
    alg = algebra(name)
    return Workbench(alg, knit_atlas(alg))


@pytest.fixture(params=["A1", "A2", "A3", "A4r3"])
def named_workbench(request):
    return request.param, workbench(request.param)


def pytest_terminal_summary(terminalreporter):
    acceptance = __import__("sys").modules.get("test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance.RESULTS:
            terminalreporter.write_line(line)
