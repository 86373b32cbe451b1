"""Acceptance criteria 1-10, one test each.

Each test prints a PASS/FAIL line as it finishes, and the outcomes are
repeated in the "acceptance criteria" section of the pytest summary.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from contextlib import contextmanager
from fractions import Fraction
from math import comb

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ACCEPTANCE
from touchconics import cubic_lines as cl
from touchconics.bisecants import build_cubic, component_histogram, family_components, qprime_and_S, y0_component_of
from touchconics.exactpoly import BinaryForm, ConicForm, MultiPoly, perfect_square_witness
from touchconics.groebner import verify_square_basis
from touchconics.plane_quartic import (
    bitangents,
    enumerate_families,
    fiber_multiplicity,
    obvious_families,
    reducible_members,
    section,
    touches_evenly,
)
from touchconics.quartic13 import nodes, validate


@contextmanager
def criterion(n: int, title: str):
    ok = False
    try:
        yield
        ok = True
    finally:
        ACCEPTANCE[n] = (title, ok)
        print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture(scope="module")
def component_planes(surface, seeded_planes):
    """Labels and family censuses for three seeded generic planes."""
    cubic = build_cubic(surface)
    config = qprime_and_S(surface, cubic)
    out = []
    for plane in seeded_planes[:3]:
        pq = section(surface, plane)
        bts = bitangents(pq, 64)
        labels = [y0_component_of(pq, b, 64, cubic, config) for b in bts]
        census = enumerate_families(pq, bts, 64)
        out.append((pq, bts, labels, census))
    return out


def test_criterion_01_groebner_verification():
    with criterion(1, "verify-gb: S-pairs reduce to zero, 7 eliminants regenerate"):
        t = time.perf_counter()
        rep = verify_square_basis(regenerate=True)
        elapsed = time.perf_counter() - t
        assert rep.passed
        assert rep.basis_size == 27 and rep.s_pairs_checked == 351
        assert rep.regenerated["eliminants_listed"] == rep.regenerated["eliminants_computed"] == 7
        assert rep.regenerated["match"]
        assert elapsed < 10


def test_criterion_02_quartic_family(spec, surface):
    with criterion(2, "13 ordinary nodes: 1 real + 6 conjugate pairs on E_i=E_j=0"):
        assert validate(spec).passed
        ns = nodes(surface)
        assert ns.count() == 13
        assert ns.real_hessian_rank == 3
        assert len(ns.pairs) == 6
        assert len({p.planes for p in ns.pairs}) == 6
        assert all(p.discriminant != 0 for p in ns.pairs)
        assert all(p.discriminant < 0 for p in ns.pairs)  # conjugate pairs


def test_criterion_03_bitangent_counts(surface, seeded_planes, node_pq):
    with criterion(3, "28 bitangents on 5 seeded smooth planes; 22/6/28 through one node"):
        assert len(seeded_planes) >= 5
        for plane in seeded_planes:
            pq = section(surface, plane)
            assert pq.kind == "Smooth"
            t = time.perf_counter()
            bts = bitangents(pq, 64)
            assert time.perf_counter() - t < 60
            assert len(bts) == 28
            # the four plane lines E_i are exact, the rest carry interval certificates
            assert sorted(Counter(b.certificate for b in bts).items()) == [("exact", 4), ("krawczyk", 24)]
        assert node_pq.kind == "OneNode"
        bts = bitangents(node_pq, 64)
        assert len(bts) == 22
        assert sum(b.through_node for b in bts) == 6
        assert sum(fiber_multiplicity(node_pq, b) for b in bts) == 28


def test_criterion_04_family_census(smooth_census, node_pq, node_bts):
    with criterion(4, "63 disjoint families of 6; node plane 16 + 15 pairs, 15/96/120"):
        fams = smooth_census.families
        assert smooth_census.passed
        assert len(fams) == 63
        assert all(len(f.members) == 6 for f in fams)
        sets = [f.pair_set() for f in fams]
        assert all(not (a & b) for i, a in enumerate(sets) for b in sets[:i])
        assert 63 * 6 == len(frozenset().union(*sets)) == comb(28, 2) == 378
        node = enumerate_families(node_pq, node_bts, 64)
        assert node.passed
        assert node.pair_types == {"a": 15, "b": 96, "c": 120}
        assert node.checks["disjoint_families_16"] and node.checks["intersecting_pairs_15"]


def test_criterion_05_obvious_families(component_planes, smooth_pq):
    with criterion(5, "three obvious families on every tested plane; distribution rules hold"):
        for pq, _, labels, census in component_planes:
            obv = obvious_families(pq)
            assert len(obv) == 3
            assert all(f.exact and len(reducible_members(f)) == 6 for f in obv)
            comp = family_components(census.families, labels)
            assert comp.checks.get("obvious_families_well_formed", True)
            assert comp.checks["obvious_rule"]
            assert comp.checks["mixed_rule"]
            assert comp.checks["same_letter_rule"]
            kinds = [k[0] for k in comp.family_keys]
            assert kinds.count("obvious") == 3
        assert len(obvious_families(smooth_pq)) == 3


def test_criterion_06_lattice_suite():
    with criterion(6, "27 lines, 72 roots, 36 double sixes, |W(E6)| = 51840, listed roots, D4 star"):
        assert all(len(a) == 10 for a in cl.incidence27()) and len(cl.LINE_CLASSES) == 27
        roots = cl.roots_e6()
        assert len(roots) == 72
        assert sorted(Counter(cl.root_type(x) for x in roots).values()) == [2, 30, 40]
        ds = cl.double_sixes()
        assert len(ds) == 36 and all(cl.double_six_element(d).fixed() == 15 for d in ds)
        assert cl.weyl_group().order == 51840
        assert cl.matches_listed_roots()
        assert all(cl.action_table_matches().values())
        dyn = cl.dynkin()
        assert dyn.is_d4_star() and cl.base_is_valid()


def test_criterion_07_group_and_orbits():
    with criterion(7, "order-192 group, line orbits 1,1,1,8,8,8, pair census 351 and 378"):
        G = cl.monodromy_group()
        census = cl.orbit_census(G)
        assert G.order == 192
        assert all(census.checks.values()), census.checks
        t = census.table
        assert all(t[k] == [4, 24] for k in ("AA", "BB", "CC"))
        assert all(t[k] == [32, 32] for k in ("AB", "AC", "BC"))
        assert all(t[k] == [8, 8, 8] for k in ("AG", "BG", "CG"))
        assert t["GG"] == [1, 1, 1]
        bt = cl.yf2_component_census()
        assert all(bt.checks.values())
        assert sum(sum(v) for v in bt.pair_table.values()) == 378


def test_criterion_08_component_pipeline(component_planes):
    with criterion(8, "8/8/8 across B12/B13/B23 and families 3x1 + 6x8 + 1x12 on 3 seeded planes"):
        assert len(component_planes) >= 3
        for _, _, labels, census in component_planes:
            hist = component_histogram(labels)
            assert [hist.get(k, 0) for k in ("B12", "B13", "B23")] == [8, 8, 8]
            assert all(hist.get(f"PlaneE{i}") == 1 for i in range(1, 5))
            comp = family_components(census.families, labels)
            assert comp.shape == [1, 1, 1] + [8] * 6 + [12]
            assert sum(comp.shape) == 63
            assert comp.shape == cl.yf2_component_census().family_orbit_sizes


def test_criterion_09_even_contact(smooth_pq, smooth_census):
    with criterion(9, "touches_evenly on 10 members of each of 5 families; control conic fails"):
        rng = random.Random(9)
        fams = obvious_families(smooth_pq) + [f for f in smooth_census.families if not f.exact][:2]
        assert len(fams) == 5
        for fam in fams:
            for _ in range(10):
                if fam.exact:
                    lam = Fraction(rng.randint(-60, 60), rng.randint(1, 25))
                else:
                    lam = mp.mpc(rng.uniform(-3, 3), rng.uniform(-3, 3))
                assert touches_evenly(smooth_pq, fam.member(lam)).touches
        control = ConicForm([1, 0, 1, 0, 0, -3])
        assert not touches_evenly(smooth_pq, control).touches
        # a tiny perturbation of a numeric member no longer touches
        member = fams[-1].member(mp.mpc("0.7", "0.2"))
        bumped = member + ConicForm([mp.mpf("1e-6"), 0, 0, 0, 0, 0])
        assert not touches_evenly(smooth_pq, bumped).touches


VARS = ("x", "y", "z")
_fr = st.fractions(min_value=-20, max_value=20, max_denominator=12)
_polys = st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3), _fr, max_size=5).map(lambda t: MultiPoly(VARS, t))


@given(_polys, _polys, _polys)
@settings(max_examples=100)
def _ring_axioms(p, q, r):
    assert p + q == q + p and p * q == q * p
    assert (p + q) + r == p + (q + r) and (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero() and p * 1 == p


@given(st.lists(_fr, min_size=1, max_size=5).filter(lambda cs: any(cs)))
@settings(max_examples=1000)
def _square_round_trip(cs):
    g = BinaryForm(cs)
    w = perfect_square_witness(g * g)
    assert w is not None and w * w == g * g


def test_criterion_10_property_suites():
    with criterion(10, "ring axioms, 1000 perfect-square round trips, 72 x 27 reflections"):
        _ring_axioms()
        _square_round_trip()
        lines = cl.LINE_CLASSES
        for x in cl.roots_e6():
            for c in lines:
                r = cl.reflect(x, c)
                assert cl.reflect(x, r) == c
                for d in lines:
                    assert cl.pairing(r, cl.reflect(x, d)) == cl.pairing(c, d)
