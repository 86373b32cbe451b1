from __future__ import annotations

from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from touchconics import cubic_lines as cl

ROOTS = cl.roots_e6()
lattice_vectors = st.tuples(*[st.integers(-4, 4)] * 7)


def test_27_lines_each_meet_10():
    assert len(cl.LINE_CLASSES) == 27
    assert all(cl.is_exceptional_class(c) for c in cl.LINE_CLASSES)
    adj = cl.incidence27()
    assert all(len(a) == 10 for a in adj)
    # meeting is symmetric and means pairing 1
    for i, a in enumerate(adj):
        for j in a:
            assert i in adj[j]
            assert cl.pairing(cl.LINE_CLASSES[i], cl.LINE_CLASSES[j]) == 1


def test_56_curves_and_partners():
    assert len(cl.CURVE_CLASSES) == 56
    K7 = cl.canonical(7)
    partner = cl.partner56()
    for lab, c in cl.curves56():
        p = cl.CURVE_CLASSES[cl.CURVE_INDEX[partner[lab]]]
        assert tuple(x + y for x, y in zip(c, p)) == tuple(-x for x in K7)


def test_root_census():
    assert len(ROOTS) == 72
    assert Counter(cl.root_type(x) for x in ROOTS) == {"Ei-Ej": 30, "±(1;eijk)": 40, "±(2;1^6)": 2}
    assert len(cl.roots(7)) == 126


@pytest.mark.parametrize("root", ROOTS, ids=lambda r: "".join(map(str, r)))
def test_reflection_involutive_and_isometric_on_lines(root):
    for c in cl.LINE_CLASSES:
        r = cl.reflect(root, c)
        assert cl.reflect(root, r) == c
        for d in cl.LINE_CLASSES:
            assert cl.pairing(r, cl.reflect(root, d)) == cl.pairing(c, d)
    w = cl.reflection(root)
    assert w.order() == 2
    assert sorted(w.perm) == list(range(27))


@given(st.sampled_from(ROOTS), lattice_vectors, lattice_vectors)
@settings(max_examples=300)
def test_reflection_preserves_pairing(root, u, v):
    assert cl.pairing(cl.reflect(root, u), cl.reflect(root, v)) == cl.pairing(u, v)
    assert cl.reflect(root, cl.reflect(root, u)) == u
    assert cl.pairing(cl.reflect(root, u), cl.canonical(6)) == cl.pairing(u, cl.canonical(6))


def test_reflection_rejects_non_roots():
    with pytest.raises(cl.LatticeError):
        cl.reflection((1, 0, 0, 0, 0, 0, 0))


def test_double_sixes():
    ds = cl.double_sixes()
    assert len(ds) == 36
    for a, b in ds:
        w = cl.double_six_element((a, b))
        assert w.fixed() == 15
        assert w.order() == 2


def test_weyl_group_order_and_c16():
    W = cl.weyl_group()
    assert W.order == 51840
    assert cl.c16_count(W) == 36


def test_group_closure_cap():
    with pytest.raises(cl.GroupTooLarge):
        cl.PermGroup.generate([cl.double_six_element(d).perm for d in cl.double_sixes()], cap=1000)


def test_listed_roots_and_action_table():
    assert cl.matches_listed_roots()
    assert all(cl.action_table_matches().values())
    assert len(cl.stabilizer_roots()) == 12


def test_dynkin_base():
    dyn = cl.dynkin()
    assert dyn.is_d4_star() and dyn.center == 12
    assert cl.base_is_valid()


def test_monodromy_group_census():
    G = cl.monodromy_group()
    assert G.order == 192
    census = cl.orbit_census(G)
    assert all(census.checks.values()), census.checks
    assert sorted(len(o) for o in census.line_orbits) == [1, 1, 1, 8, 8, 8]
    assert sum(len(o) for o in census.pair_orbits) == len(list(combinations(range(27), 2)))


def test_semidirect_structure_and_generators():
    assert all(cl.semidirect_structure().values())
    assert all(cl.generator_sanity().values())


def test_d_assignment():
    _, checks = cl.d_assignments()
    assert all(checks.values())


def test_bitangent_census():
    bt = cl.yf2_component_census()
    assert all(bt.checks.values()), bt.checks
    assert bt.family_orbit_sizes == [1, 1, 1] + [8] * 6 + [12]
    # the extended census on all 378 pairs of the 28 bitangents
    assert sum(sum(v) for v in bt.pair_table.values()) == 378
    assert bt.pair_table["ee"] == [1] * 6
