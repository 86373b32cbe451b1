from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from touchconics.cli import random_planes
from touchconics.plane_quartic import PlaneSpec, bitangents, enumerate_families, section
from touchconics.quartic13 import QuarticSpec, build

settings.register_profile("ci", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")

SMOOTH_PLANE = "3 -2 5 7"
NODE_PLANE = "1 2 3 0"  # passes through the real node (0:0:0:1) only
PLANE_SEED = 2026


@pytest.fixture(scope="session")
def spec():
    return QuarticSpec.diagonal_half()


@pytest.fixture(scope="session")
def surface(spec):
    return build(spec)


@pytest.fixture(scope="session")
def smooth_pq(surface):
    return section(surface, PlaneSpec.parse(SMOOTH_PLANE))


@pytest.fixture(scope="session")
def smooth_bts(smooth_pq):
    return bitangents(smooth_pq, 64)


@pytest.fixture(scope="session")
def smooth_census(smooth_pq, smooth_bts):
    return enumerate_families(smooth_pq, smooth_bts, 64)


@pytest.fixture(scope="session")
def node_pq(surface):
    return section(surface, PlaneSpec.parse(NODE_PLANE))


@pytest.fixture(scope="session")
def node_bts(node_pq):
    return bitangents(node_pq, 64)


@pytest.fixture(scope="session")
def seeded_planes(surface):
    return random_planes(surface, PLANE_SEED, 5)


# --- acceptance summary ---------------------------------------------------------------

ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {title}")
