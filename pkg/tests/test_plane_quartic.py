from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from touchconics.exactpoly import ConicForm, restrict_to_line, square_decomposition
from touchconics.exactpoly.intervals import precision
from touchconics.plane_quartic import (
    PlaneError,
    PlaneSpec,
    fiber_multiplicity,
    obvious_families,
    plane_through,
    reducible_members,
    section,
    touches_evenly,
)
from touchconics.plane_quartic.families import conic_poly

rationals = st.fractions(min_value=-30, max_value=30, max_denominator=20)


# --- sections ----------------------------------------------------------------------------

def test_section_kinds(surface, smooth_pq, node_pq):
    assert smooth_pq.kind == "Smooth"
    assert node_pq.kind == "OneNode"
    assert list(node_pq.node) == [0, 0, 1]
    for i in range(1, 5):
        pq = section(surface, PlaneSpec.make(surface.plane_coeffs(i)))
        assert pq.kind == "Degenerate"


def test_section_is_restriction(surface, smooth_pq):
    pl = smooth_pq.plane
    for w in ((1, 2, 3), (-1, 0, 5), (2, 7, -3)):
        w = [Fraction(x) for x in w]
        assert smooth_pq.q.evaluate(w) == surface.F.evaluate(pl.point(w))
        assert sum(c * x for c, x in zip(pl.coeffs, pl.point(w))) == 0


def test_plane_parsing():
    assert PlaneSpec.parse("1, 2, 3/2, 0").coeffs == (1, 2, Fraction(3, 2), 0)
    for bad in ("1 2 3", "0 0 0 0", "1 a 2 3"):
        with pytest.raises(PlaneError):
            PlaneSpec.parse(bad)


def test_plane_through_points():
    pl = plane_through([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
    assert pl.coeffs[:3] == (0, 0, 0) and pl.coeffs[3] != 0
    with pytest.raises(PlaneError):
        plane_through([(1, 0, 0, 0), (2, 0, 0, 0), (0, 0, 1, 0)])


# --- bitangents ----------------------------------------------------------------------------

def _is_bitangent(pq, bt):
    with precision(192):
        b = restrict_to_line(pq.q, list(bt.param))
        big = max(abs(c) for c in b.coeffs)
        return square_decomposition(b, lambda c: abs(c) <= mp.mpf(2) ** -40 * big) is not None


def test_smooth_plane_has_28_bitangents(smooth_pq, smooth_bts):
    assert len(smooth_bts) == 28
    assert not any(b.through_node for b in smooth_bts)
    assert all(_is_bitangent(smooth_pq, b) for b in smooth_bts)
    assert all(fiber_multiplicity(smooth_pq, b) == 1 for b in smooth_bts)


def test_bitangents_are_distinct(smooth_bts):
    lines = [b.line for b in smooth_bts]
    for i in range(len(lines)):
        for j in range(i):
            assert max(abs(x - y) for x, y in zip(lines[i], lines[j])) > 1e-6


def test_node_plane_bitangents(node_pq, node_bts):
    assert len(node_bts) == 22
    through = [b for b in node_bts if b.through_node]
    assert len(through) == 6
    mult = [fiber_multiplicity(node_pq, b) for b in node_bts]
    assert sum(mult) == 28
    assert Counter(m for m, b in zip(mult, node_bts) if b.through_node) == {2: 6}
    assert all(_is_bitangent(node_pq, b) for b in node_bts)


# --- families ----------------------------------------------------------------------------------

def test_obvious_families_are_exact(smooth_pq):
    fams = obvious_families(smooth_pq)
    assert len(fams) == 3
    for f in fams:
        assert f.exact and f.kappa != 0
        assert f.identity_residual(smooth_pq.q) == 0
        assert len(reducible_members(f)) == 6


@given(rationals, st.integers(0, 2))
@settings(max_examples=60)
def test_obvious_family_members_touch_evenly(smooth_pq, lam, k):
    fam = obvious_families(smooth_pq)[k]
    conic = fam.member(lam)
    if conic.det() == 0:
        return
    cert = touches_evenly(smooth_pq, conic)
    assert cert.touches and cert.exact


@given(st.lists(st.integers(-5, 5), min_size=6, max_size=6))
@settings(max_examples=60)
def test_random_conics_do_not_touch(smooth_pq, cs):
    conic = ConicForm(cs)
    if conic.det() == 0:
        return
    # every touching conic lies in one of the 63 families; a random integer conic does not
    assert not touches_evenly(smooth_pq, conic).touches


def test_numeric_family_members_touch_evenly(smooth_pq, smooth_census):
    rng = random.Random(5)
    numeric = [f for f in smooth_census.families if not f.exact]
    assert numeric
    for fam in numeric[:4]:
        for _ in range(5):
            lam = mp.mpc(rng.uniform(-2, 2), rng.uniform(-2, 2))
            cert = touches_evenly(smooth_pq, fam.member(lam))
            assert cert.touches and not cert.exact


def test_smooth_census(smooth_census, smooth_bts):
    assert smooth_census.passed
    fams = smooth_census.families
    assert len(fams) == 63
    assert all(len(f.members) == 6 for f in fams)
    pairs = [p for f in fams for p in f.pair_set()]
    assert len(pairs) == len(set(pairs)) == 378


def test_node_census(node_pq, node_bts):
    from touchconics.plane_quartic import enumerate_families

    census = enumerate_families(node_pq, node_bts)
    assert census.passed
    assert census.pair_types == {"a": 15, "b": 96, "c": 120}


def test_conic_poly_matches_form():
    c = ConicForm([1, 2, 3, 4, 5, 6])
    p = conic_poly(c)
    for pt in ((1, 0, 0), (1, 2, 3), (-2, 1, 5)):
        assert p.evaluate([Fraction(x) for x in pt]) == c(*pt)
