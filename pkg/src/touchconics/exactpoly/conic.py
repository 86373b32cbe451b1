"""Ternary quadratic forms (conics) and their symmetric matrices."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .multipoly import MultiPoly

# coefficient order: x^2, y^2, z^2, xy, xz, yz
_MONOMIALS = ((2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1))


class ConicForm:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        if len(coeffs) != 6:
            raise ValueError("a conic has six coefficients")
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_multipoly(cls, p: MultiPoly) -> ConicForm:
        if len(p.variables) != 3:
            raise ValueError("conic needs a ternary form")
        if p.terms and (not p.is_homogeneous() or p.total_degree() != 2):
            raise ValueError("conic needs a homogeneous quadratic")
        return cls([p.terms.get(m, Fraction(0)) for m in _MONOMIALS])

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence]) -> ConicForm:
        for i in range(3):
            for j in range(3):
                if m[i][j] != m[j][i]:
                    raise ValueError("conic matrix must be symmetric")
        return cls([m[0][0], m[1][1], m[2][2], 2 * m[0][1], 2 * m[0][2], 2 * m[1][2]])

    def to_multipoly(self, variables: Sequence[str] = ("x", "y", "z")) -> MultiPoly:
        return MultiPoly(variables, dict(zip(_MONOMIALS, self.coeffs)))

    def matrix(self) -> list[list]:
        a, b, c, d, e, f = self.coeffs
        if all(isinstance(x, (int, Fraction)) for x in self.coeffs):
            d2, e2, f2 = (Fraction(x, 2) if isinstance(x, int) else x / 2 for x in (d, e, f))
        else:
            d2, e2, f2 = d / 2, e / 2, f / 2
        return [[a, d2, e2], [d2, b, f2], [e2, f2, c]]

    def det(self):
        return det3(self.matrix())

    def __call__(self, x, y, z):
        a, b, c, d, e, f = self.coeffs
        return a * x * x + b * y * y + c * z * z + d * x * y + e * x * z + f * y * z

    def polar(self, p: Sequence, q: Sequence):
        """Symmetric bilinear form B(p, q) with B(p, p) = C(p)."""
        m = self.matrix()
        return sum(p[i] * m[i][j] * q[j] for i in range(3) for j in range(3))

    def __add__(self, other: ConicForm) -> ConicForm:
        return ConicForm([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, k) -> ConicForm:
        return ConicForm([k * c for c in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, ConicForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"ConicForm({list(self.coeffs)!r})"


def det3(m: Sequence[Sequence]):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def det_conic(c: ConicForm):
    return c.det()
