from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from touchconics.exactpoly import QuadraticNumber
from touchconics.quartic13 import (
    QuarticSpec,
    SpecParseError,
    branch_sextic,
    build,
    discriminant_identity,
    hessian_at,
    nodes,
    rank,
    validate,
)

small = st.fractions(min_value=-3, max_value=3, max_denominator=4)
matrices = st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3)


def test_diagonal_half_validates(spec):
    rep = validate(spec)
    assert rep.passed
    assert rep.independent and rep.pairwise_independent
    assert all(rep.positive_definite)
    assert rep.warnings == []


def test_thirteen_nodes(surface):
    ns = nodes(surface)
    assert ns.count() == 13
    assert ns.real_hessian_rank == 3
    assert sorted(p.planes for p in ns.pairs) == list(combinations(range(1, 5), 2))
    for p in ns.pairs:
        assert p.discriminant < 0  # a conjugate pair, simple roots


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    return sum(((-1) ** j) * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(n) if m[0][j] != 0)


def test_conjugate_nodes_are_ordinary(surface):
    # exact check over Q(sqrt(disc)): the gradient vanishes and the Hessian has rank 3
    F = surface.F
    grads = F.gradient()
    hess = [[g.diff(v) for v in F.variables] for g in grads]
    for pair in nodes(surface).pairs:
        a, b, c = pair.quadratic.coeffs
        D = pair.discriminant
        r = QuadraticNumber(-b / (2 * a), Fraction(1, 2) / a, D)  # a root of a s^2 + b s t + c t^2 at t = 1
        u, v = pair.basis
        pt = [r * u[k] + v[k] for k in range(4)]
        assert F.evaluate(pt) == 0
        assert all(g.evaluate(pt) == 0 for g in grads)
        H = [[h.evaluate(pt) for h in row] for row in hess]
        assert _det(H) == 0
        minors = [_det([[H[i][j] for j in cols] for i in rows]) for rows in combinations(range(4), 3) for cols in combinations(range(4), 3)]
        assert any(m != 0 for m in minors)


def test_real_node_hessian_rank(surface):
    P = (0, 0, 0, 1)
    assert rank(hessian_at(surface.F, [Fraction(x) for x in P])) == 3


def test_branch_sextic_touches_f2(surface):
    bs = branch_sextic(surface)
    assert bs.conic_restriction_is_square
    assert discriminant_identity(surface)


@given(matrices)
@settings(max_examples=40)
def test_quartic_identity_for_any_spec(rows):
    # 4F = Q^2 - E1 E2 E3 E4 is checked inside build
    s = build(QuarticSpec.from_rows(rows))
    assert s.F.is_homogeneous() and s.F.total_degree() == 4


@given(matrices)
@settings(max_examples=15)
def test_valid_specs_have_thirteen_nodes(rows):
    spec = QuarticSpec.from_rows(rows)
    rep = validate(spec)
    if not rep.passed:
        return
    try:
        ns = nodes(build(spec))
    except ValueError:
        return  # a line E_i = E_j = 0 tangent to Q: outside the 13-nodal family
    assert ns.count() == 13


def test_spec_parse_errors():
    with pytest.raises(SpecParseError):
        QuarticSpec.parse("1 2 3")
    with pytest.raises(SpecParseError):
        QuarticSpec.parse("1 0 0\n0 1 0\n0 0 x")
    with pytest.raises(SpecParseError):
        QuarticSpec.from_rows([[1, 0], [0, 1]])


def test_spec_text_round_trip(spec):
    assert QuarticSpec.parse(spec.to_text()) == spec
    assert len(spec.digest()) == 16


def test_dependent_columns_fail_validation():
    spec = QuarticSpec.from_rows([[1, 1, 0], [0, 0, 1], [0, 0, 1]])
    rep = validate(spec)
    assert not rep.passed
    assert not rep.pairwise_independent
