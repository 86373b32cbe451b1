from __future__ import annotations

from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from touchconics.exactpoly import (
    BinaryForm,
    ConicForm,
    MultiPoly,
    PolyParseError,
    QuadraticNumber,
    is_square_by_gcd,
    perfect_square_witness,
    restrict_to_line,
    square_decomposition,
)
from touchconics.exactpoly import univariate as uv
from touchconics.exactpoly.intervals import certified_polynomial_roots, centered_derivative, precision

VARS = ("x", "y", "z")

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
exps = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(exps, fractions, max_size=6).map(lambda t: MultiPoly(VARS, t))
points = st.tuples(fractions, fractions, fractions)


# --- ring axioms ---------------------------------------------------------------------

@given(polys, polys)
def test_addition_commutes(p, q):
    assert p + q == q + p


@given(polys, polys, polys)
def test_addition_associates(p, q, r):
    assert (p + q) + r == p + (q + r)


@given(polys)
def test_additive_identity_and_inverse(p):
    zero = MultiPoly.zero(VARS)
    assert p + zero == p
    assert (p - p).is_zero()
    assert p + (-p) == zero


@given(polys, polys)
def test_multiplication_commutes(p, q):
    assert p * q == q * p


@given(polys, polys, polys)
@settings(max_examples=60)
def test_multiplication_associates(p, q, r):
    assert (p * q) * r == p * (q * r)


@given(polys, polys, polys)
@settings(max_examples=60)
def test_distributive(p, q, r):
    assert p * (q + r) == p * q + p * r


@given(polys)
def test_multiplicative_identity(p):
    assert p * MultiPoly.constant(VARS, 1) == p
    assert p * 1 == p


@given(polys, polys, points)
def test_evaluation_is_a_ring_map(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@given(polys, polys)
def test_derivative_leibniz(p, q):
    assert (p * q).diff("x") == p.diff("x") * q + p * q.diff("x")


@given(polys)
def test_text_round_trip(p):
    assert MultiPoly.parse(p.to_text(), VARS) == p


def test_parse_rejects_garbage():
    with pytest.raises(PolyParseError):
        MultiPoly.parse("x + * y", VARS)


def test_parse_and_degree():
    p = MultiPoly.parse("x^2*y - 3/2*z^3 + 1", VARS)
    assert p.total_degree() == 3
    assert not p.is_homogeneous()
    assert p.evaluate((Fraction(1), Fraction(2), Fraction(0))) == 3


# --- perfect squares --------------------------------------------------------------------

binary_coeffs = st.lists(fractions, min_size=1, max_size=5).filter(lambda cs: any(c != 0 for c in cs))


@given(binary_coeffs)
@settings(max_examples=1000)
def test_perfect_square_round_trip(cs):
    g = BinaryForm(cs)
    w = perfect_square_witness(g * g)
    assert w is not None
    assert w * w == g * g
    assert w == g or w == -g
    assert is_square_by_gcd(g * g)


@given(binary_coeffs, st.sampled_from([2, 3, 5, -1, 7]))
@settings(max_examples=200)
def test_non_square_multiples_rejected(cs, k):
    g = BinaryForm(cs)
    assert perfect_square_witness(g * g * k) is None
    # still a constant times a square
    assert square_decomposition(g * g * k) is not None


@given(st.lists(fractions, min_size=3, max_size=7).filter(lambda cs: len(cs) % 2 == 1))
@settings(max_examples=300)
def test_square_tests_agree(cs):
    q = BinaryForm(cs)
    assert (square_decomposition(q) is not None) == is_square_by_gcd(q)


def test_odd_degree_square_test_raises():
    with pytest.raises(ValueError):
        perfect_square_witness(BinaryForm([1, 2]))


def test_restriction_to_line():
    # q = x y - z^2 on the line z = 0 parameterized by (s, t, 0)
    q = MultiPoly.parse("x*y - z^2", VARS)
    b = restrict_to_line(q, [(1, 0), (0, 1), (0, 0)])
    assert b == BinaryForm([0, 1, 0])


# --- quadratic fields, univariate tools ---------------------------------------------------

@given(fractions, fractions, fractions, fractions)
def test_quadratic_number_field_ops(a, b, c, d):
    x = QuadraticNumber(a, b, 3)
    y = QuadraticNumber(c, d, 3)
    assert (x + y) - y == x
    assert x * y == y * x
    if y != 0:
        assert (x * y) / y == x


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=6))
def test_squarefree_decomposition_multiplies_back(roots):
    p = [Fraction(1)]
    for r in roots:
        p = uv.mul(p, [Fraction(-r), Fraction(1)])
    prod = [Fraction(1)]
    for f, m in uv.squarefree_decomposition(p):
        prod = uv.mul(prod, uv.power(f, m))
    assert uv.monic(prod) == uv.monic(p)
    assert uv.degree(uv.squarefree_part(p)) == len(set(roots))


@given(st.sets(st.integers(-20, 20), min_size=1, max_size=6))
def test_real_root_isolation(roots):
    p = [Fraction(1)]
    for r in roots:
        p = uv.mul(p, [Fraction(-r), Fraction(1)])
    boxes = uv.isolate_real_roots(p)
    assert len(boxes) == len(roots)
    for (a, b, _), r in zip(sorted(boxes), sorted(roots)):
        assert a <= r <= b


def test_conic_determinant_and_evaluation():
    c = ConicForm.from_multipoly(MultiPoly.parse("x^2 + y^2 - z^2", VARS))
    assert c.det() == -1
    assert c(3, 4, 5) == 0


# --- certified roots ----------------------------------------------------------------------

def test_centered_derivative_encloses():
    p = [Fraction(-1, 2), Fraction(3), Fraction(0), Fraction(2)]  # 2x^3 + 3x - 1/2
    with precision(128):
        z = mp.mpf("0.3")
        enc = centered_derivative(p, z, mp.mpf(2) ** -40)
        true = 6 * z * z + 3
        assert enc.real.a <= true <= enc.real.b
        assert enc.real.delta < mp.mpf(2) ** -30


def test_certified_roots_on_rational_root_with_large_coefficients():
    # (x - 1/2) times a product with big coefficients; Horner boxes alone are too wide here
    p = [Fraction(-1, 2), Fraction(1)]
    for k in range(1, 12):
        p = uv.mul(p, [Fraction(3**k + 7), Fraction(-(2**k)), Fraction(5**k)])
    with precision(192):
        roots = certified_polynomial_roots(p, 64)
        assert len(roots) == uv.degree(p)
        assert any(abs(z - mp.mpf(0.5)) < r for z, r in roots)
