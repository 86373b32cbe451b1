from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from touchconics.exactpoly import BinaryForm, MultiPoly, square_decomposition
from touchconics.groebner import (
    COEFFICIENT_VARIABLES,
    SQUARE_VARIABLES,
    IdealBasis,
    MonomialOrder,
    buchberger,
    is_groebner,
    load_basis_file,
    reduce,
    same_up_to_scalar,
    square_eliminants,
    square_generators,
    verify_square_basis,
)

fractions = st.fractions(min_value=-10, max_value=10, max_denominator=6)


def test_bundled_basis_verifies():
    rep = verify_square_basis()
    assert rep.passed
    assert rep.basis_size == 27
    assert rep.s_pairs_checked == 27 * 26 // 2
    assert rep.failing_pair is None


def test_regeneration_matches_bundled_eliminants():
    rep = verify_square_basis(regenerate=True)
    assert rep.passed
    assert rep.regenerated["eliminants_computed"] == 7
    assert rep.regenerated["match"]


def test_dropping_a_polynomial_breaks_the_basis(tmp_path):
    lines = [l for l in load_basis_file()]
    path = tmp_path / "short.txt"
    path.write_text("\n".join(p.to_text() for p in lines[1:]) + "\n")
    assert not verify_square_basis(path).passed


def test_buchberger_small_example():
    order = MonomialOrder(("x", "y"))
    x, y = MultiPoly.gens(("x", "y"))
    basis = buchberger([x * x - y, x * y - 1], order)
    ok, _ = is_groebner(basis.generators, order)
    assert ok
    # y^3 - 1 lies in the ideal, so it reduces to zero
    assert reduce(y**3 - 1, basis.generators, order).is_zero()


def test_same_up_to_scalar():
    a, b = MultiPoly.gens(("a", "b"))
    assert same_up_to_scalar(a * b - b, -3 * (a * b - b))
    assert not same_up_to_scalar(a * b - b, a * b + b)


@given(fractions, fractions, fractions)
@settings(max_examples=200)
def test_eliminants_vanish_on_squares(xi, eta, zeta):
    q = BinaryForm([xi, eta, zeta]) * BinaryForm([xi, eta, zeta])
    point = dict(zip(COEFFICIENT_VARIABLES, q.coeffs))
    for p in square_eliminants():
        assert p.evaluate(point) == 0


@given(fractions, fractions, fractions, st.lists(st.integers(-1, 1), min_size=5, max_size=5))
@settings(max_examples=300)
def test_eliminants_cut_out_the_square_locus(xi, eta, zeta, bump):
    # over C a quartic is a square iff it is a constant times a square
    q = BinaryForm([xi, eta, zeta]) * BinaryForm([xi, eta, zeta]) + BinaryForm(bump)
    point = dict(zip(COEFFICIENT_VARIABLES, q.coeffs))
    vanish = all(p.evaluate(point) == 0 for p in square_eliminants())
    assert vanish == (square_decomposition(q) is not None)


@given(st.lists(fractions, min_size=8, max_size=8), st.integers(0, 4))
@settings(max_examples=60)
def test_ideal_members_reduce_to_zero(cs, k):
    order = MonomialOrder(SQUARE_VARIABLES)
    basis = load_basis_file()
    gens = MultiPoly.gens(SQUARE_VARIABLES)
    mult = sum((c * g for c, g in zip(cs, gens)), MultiPoly.constant(SQUARE_VARIABLES, Fraction(1)))
    member = mult * square_generators()[k]
    assert reduce(member, basis, order).is_zero()
    assert IdealBasis(basis, order, is_groebner=True) is not None
