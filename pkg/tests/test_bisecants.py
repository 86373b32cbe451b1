from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from touchconics.bisecants import (
    COMPONENT_L,
    COMPONENT_PLANE,
    P1,
    build_cubic,
    bitangent_param,
    component_histogram,
    family_components,
    lift_bitangent,
    qprime_and_S,
    tangent_cone_at,
    y0_component_of,
)
from touchconics.cubic_lines import yf2_component_census
from touchconics.exactpoly import MultiPoly
from touchconics.exactpoly.intervals import precision
from touchconics.plane_quartic.bitangents import working_bits
from touchconics.quartic13 import kernel_basis, linear_coeffs

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=10)


@pytest.fixture(scope="module")
def cubic(surface):
    return build_cubic(surface)


@pytest.fixture(scope="module")
def config(surface, cubic):
    return qprime_and_S(surface, cubic)


@pytest.fixture(scope="module")
def smooth_labels(smooth_pq, smooth_bts, cubic, config):
    return [y0_component_of(smooth_pq, b, 64, cubic, config) for b in smooth_bts]


def test_cubic_model(surface, cubic):
    assert cubic.g2 * cubic.g2 - cubic.g1 * cubic.g3 == 4 * surface.F
    assert cubic.K.total_degree() == 3 and cubic.K.is_homogeneous()
    assert cubic.K.evaluate(P1) == 0
    assert all(g.evaluate(P1) == 0 for g in cubic.K.gradient())


def test_tangent_cone_of_a_cone_is_itself():
    vars5 = ("x0", "x1", "x2", "x3", "x4")
    x0, x1, x2, x3, x4 = MultiPoly.gens(vars5)
    K = x4 * (x0 * x1 - x2 * x2) + x3**3  # node at (0:0:0:0:1) with cone x0 x1 - x2^2
    assert tangent_cone_at(K, (0, 0, 0, 0, 1)) == x0 * x1 - x2 * x2


def test_space_curve_checks(config):
    assert config.passed, {k: v for k, v in config.checks.items() if not v}
    assert sorted(config.components) == [1, 2, 3]


@given(rationals, rationals, st.sampled_from(sorted(COMPONENT_PLANE)))
@settings(max_examples=100)
def test_qprime_on_component_planes(surface, config, s, t, k):
    # on the plane E_i the cone Q' restricts to -4 (f2 - L^2)
    i = COMPONENT_PLANE[k]
    b = kernel_basis([linear_coeffs(surface.E[i])], 4)
    pt = [s * b[0][m] + t * b[1][m] + b[2][m] for m in range(4)]
    L = surface.L[COMPONENT_L[k]].evaluate(pt)
    assert config.qprime.evaluate(pt) == -4 * (surface.f2.evaluate(pt) - L * L)


@given(rationals, rationals, st.sampled_from([(2, 3), (2, 4), (3, 4)]))
@settings(max_examples=100)
def test_qprime_is_minus_two_q_on_node_lines(surface, config, s, t, ij):
    b = kernel_basis([linear_coeffs(surface.E[ij[0]]), linear_coeffs(surface.E[ij[1]])], 4)
    pt = [s * b[0][m] + t * b[1][m] for m in range(4)]
    assert config.qprime.evaluate(pt) == -2 * surface.Q.evaluate(pt)


def test_bitangents_lift_to_one_line(smooth_pq, smooth_bts, cubic, smooth_labels):
    with precision(working_bits(64)):
        for bt, lab in zip(smooth_bts, smooth_labels):
            if lab.label.startswith("PlaneE"):
                continue
            # over the plane, K cuts a cubic surface; its 27 lines lie over the 27 bitangents other than E1
            res = lift_bitangent(cubic, bitangent_param(smooth_pq, bt))
            assert res.count == 1
            assert all(l.residual < 2.0**-32 for l in res.lifts)


def test_smooth_plane_histogram(smooth_labels):
    hist = component_histogram(smooth_labels)
    assert hist == {"PlaneE1": 1, "PlaneE2": 1, "PlaneE3": 1, "PlaneE4": 1, "B12": 8, "B13": 8, "B23": 8}


def test_family_components(smooth_census, smooth_labels):
    comp = family_components(smooth_census.families, smooth_labels)
    assert comp.passed, {k: v for k, v in comp.checks.items() if not v}
    assert comp.shape == [1, 1, 1] + [8] * 6 + [12]
    assert comp.shape == yf2_component_census().family_orbit_sizes
    assert sorted(comp.dictionary.values()) == ["A", "B", "C"]


def test_node_lines_are_boundary(node_pq, node_bts, cubic, config):
    labels = [y0_component_of(node_pq, b, 64, cubic, config).label for b in node_bts]
    through = Counter(l for l, b in zip(labels, node_bts) if b.through_node)
    assert through == {"Boundary": 6}
    assert all(l != "Unresolved" for l in labels)
