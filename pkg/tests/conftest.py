import pytest

from hypdomain import generators
from hypdomain.combinatorial_map import build
from hypdomain.pipeline import PipelineConfig, run_pipeline


@pytest.fixture(scope='session')
def octagon_raw():
    return generators.regular_polygon(2)


@pytest.fixture(scope='session')
def octagon(octagon_raw):
    return build(octagon_raw)


@pytest.fixture(scope='session')
def subdivided_raw(octagon_raw):
    return generators.subdivide_pair(octagon_raw, 0)


@pytest.fixture(scope='session')
def subdivided(subdivided_raw):
    return build(subdivided_raw)


@pytest.fixture(scope='session')
def quick_config():
    return PipelineConfig(samples=2000)


@pytest.fixture(scope='session')
def octagon_result(octagon_raw, quick_config):
    return run_pipeline(octagon_raw, quick_config)


@pytest.fixture(scope='session')
def symmetric_result(quick_config):
    return run_pipeline(generators.symmetric_polygon(2, seed=1), quick_config)


@pytest.fixture(scope='session')
def subdivided_result(subdivided_raw, quick_config):
    return run_pipeline(subdivided_raw, quick_config)


SURFACES = [(kind, genus) for genus in range(2, 6) for kind in ('regular', 'symmetric')]


@pytest.fixture(scope='session', params=SURFACES, ids=lambda p: f"{p[0]}-g{p[1]}")
def surface_result(request, quick_config):
    kind, genus = request.param
    if kind == 'regular':
        raw = generators.regular_polygon(genus)
    else:
        raw = generators.symmetric_polygon(genus, seed=3)
    return run_pipeline(raw, quick_config)
