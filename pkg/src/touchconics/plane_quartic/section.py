"""Plane sections of the quartic surface and their certified classification."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..exactpoly import BinaryForm, MultiPoly
from ..exactpoly import univariate as uv
from ..quartic13 import (
    QuarticSurface,
    _apply_linear,
    hessian_at,
    kernel_basis,
    linear_coeffs,
    projected_resultant,
    rank,
)

log = logging.getLogger(__name__)

PLANE_VARS = ("w0", "w1", "w2")
NODE = (Fraction(0), Fraction(0), Fraction(0), Fraction(1))


class PlaneError(ValueError):
    pass


@dataclass(frozen=True)
class PlaneSpec:
    """A plane y0 x0 + y1 x1 + y2 x2 + y3 x3 = 0 with a rational basis.

    ``basis`` holds three points of P^3 spanning the plane; plane coordinates
    (w0 : w1 : w2) stand for the point w0 b0 + w1 b1 + w2 b2.  For planes
    through the real node (0:0:0:1) that node is always the last basis vector,
    so it sits at (0:0:1) in plane coordinates.  ``chart`` is the index of the
    coordinate solved for (first nonzero coefficient).
    """

    coeffs: tuple[Fraction, ...]
    basis: tuple[tuple[Fraction, ...], ...]
    chart: int

    @classmethod
    def make(cls, coeffs: Sequence) -> PlaneSpec:
        y = tuple(Fraction(c) for c in coeffs)
        if len(y) != 4:
            raise PlaneError("a plane needs four coefficients")
        if all(c == 0 for c in y):
            raise PlaneError("zero plane")
        basis = kernel_basis([list(y)], 4)
        if y[3] == 0:
            node = [b for b in basis if list(b) == list(NODE)]
            rest = [b for b in basis if list(b) != list(NODE)]
            basis = rest + node
        chart = next(i for i, c in enumerate(y) if c != 0)
        return cls(y, tuple(tuple(b) for b in basis), chart)

    @classmethod
    def parse(cls, text: str) -> PlaneSpec:
        toks = text.replace(",", " ").split()
        try:
            vals = [Fraction(t) for t in toks]
        except (ValueError, ZeroDivisionError) as exc:
            raise PlaneError(f"bad plane {text!r}") from exc
        return cls.make(vals)

    @property
    def through_real_node(self) -> bool:
        return self.coeffs[3] == 0

    def point(self, w: Sequence) -> list:
        """The point of P^3 with plane coordinates w."""
        return [sum(w[k] * self.basis[k][i] for k in range(3)) for i in range(4)]

    def pullback(self, f: MultiPoly) -> MultiPoly:
        """f restricted to the plane, as a form in w0, w1, w2."""
        gens = MultiPoly.gens(PLANE_VARS)
        images = {
            v: sum((self.basis[k][i] * gens[k] for k in range(3)), MultiPoly.zero(PLANE_VARS))
            for i, v in enumerate(f.variables)
        }
        return f.substitute(images, PLANE_VARS)

    def as_dict(self) -> dict:
        return {
            "coefficients": [str(c) for c in self.coeffs],
            "basis": [[str(c) for c in b] for b in self.basis],
            "chart": self.chart,
        }


@dataclass
class Classification:
    kind: str  # "Smooth" | "OneNode" | "Degenerate"
    node: tuple[Fraction, ...] | None = None
    reason: str | None = None

    def as_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.node is not None:
            out["node"] = [str(c) for c in self.node]
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass
class PlaneQuartic:
    surface: QuarticSurface
    plane: PlaneSpec
    q: MultiPoly
    classification: Classification
    details: dict = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return self.classification.kind

    @property
    def node(self):
        return self.classification.node


# unipotent lower-triangular changes of plane coordinates; they fix the
# direction (0:0:1), so a node placed there stays there
TRANSFORMS = (
    ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((1, 0, 0), (2, 1, 0), (3, 5, 1)),
    ((1, 0, 0), (-3, 1, 0), (1, -2, 1)),
    ((1, 0, 0), (5, 1, 0), (-4, 7, 1)),
    ((1, 0, 0), (1, 1, 0), (-7, 3, 1)),
)

_PROJECTION_SHEARS = (
    ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((1, 2, 3), (0, 1, 5), (0, 0, 1)),
    ((1, 0, 0), (3, 1, 0), (7, 2, 1)),
    ((2, 1, 1), (1, 3, 1), (1, 1, 4)),
    ((1, -1, 2), (4, 1, -3), (2, 5, 1)),
)


def _proportional(u: Sequence, v: Sequence) -> bool:
    return all(u[i] * v[j] == u[j] * v[i] for i in range(len(u)) for j in range(len(u)))


def singular_points(q: MultiPoly) -> tuple[str, list[tuple[Fraction, ...]]]:
    """Certified description of the singular locus of a ternary quartic.

    Returns ("none", []), ("points", [rational points]) or ("unknown", []).
    A singular point is a common zero of the three partials, so it projects
    to a common root of the three pairwise resultants; when those have no
    common root the curve is smooth.  When the common part is a single
    rational point in the projection, the fiber over it is solved exactly.
    """
    grads = q.gradient()
    for shear in _PROJECTION_SHEARS:
        g = [_apply_linear(p, shear) for p in grads]
        if any(p.degree(p.variables[2]) != 3 for p in g):
            continue  # projection center on a polar curve; formal degrees would drop
        res = [projected_resultant(g[i], g[j], 2) for i, j in ((0, 1), (0, 2), (1, 2))]
        if any(r.is_zero() for r in res):
            continue
        common = _binary_gcd(res)
        if common.degree == 0:
            return "none", []
        sqf = _binary_squarefree_part(common)
        if sqf.degree != 1:
            continue
        # the projection of a singular point is the root (x0 : x1) = (b : -a)
        a, b = sqf.coeffs
        fiber = [(Fraction(b), Fraction(-a), Fraction(0)), (Fraction(0), Fraction(0), Fraction(1))]
        restricted = [_restrict(p, fiber) for p in g]
        nonzero = [r for r in restricted if not r.is_zero()]
        if not nonzero:
            continue
        fg = _binary_gcd(nonzero)
        fg_sqf = _binary_squarefree_part(fg) if fg.degree else fg
        if fg_sqf.degree != 1:
            continue
        c0, c1 = fg_sqf.coeffs  # root (s:t) = (-c1 : c0)
        s, t = -c1, c0
        pt_sheared = [fiber[0][k] * s + fiber[1][k] * t for k in range(3)]
        # undo the shear: sheared coords y = M^{-1} x  where x = M y
        M = [[Fraction(c) for c in row] for row in shear]
        pt = [sum(M[r][c] * pt_sheared[c] for c in range(3)) for r in range(3)]
        if any(p.evaluate(pt) != 0 for p in grads):
            continue
        return "points", [tuple(_normalize_point(pt))]
    return "unknown", []


def _normalize_point(p):
    k = next(i for i, c in enumerate(p) if c != 0)
    return [Fraction(c) / p[k] for c in p]


def _restrict(p: MultiPoly, fiber) -> BinaryForm:
    images = [BinaryForm([fiber[0][k], fiber[1][k]]) for k in range(3)]
    from ..exactpoly.binary import compose

    return compose(p, images)


def _binary_gcd(forms: Sequence[BinaryForm]) -> BinaryForm:
    """gcd of nonzero binary forms (exact), up to a constant."""
    def ends(b):
        nz = [i for i, c in enumerate(b.coeffs) if c != 0]
        return nz[0], b.degree - nz[-1]

    lead = min(ends(b)[0] for b in forms)
    trail = min(ends(b)[1] for b in forms)
    g = None
    for b in forms:
        lo, hi = ends(b)
        core = [Fraction(c) for c in b.coeffs[lo: b.degree + 1 - hi]]
        poly = list(reversed(core))  # low-first in s/t, no roots at 0 or infinity
        g = poly if g is None else uv.gcd_poly(g, poly)
    g = uv.trim(g)
    deg = max(uv.degree(g), 0)
    coeffs = [Fraction(0)] * lead + [g[deg - i] for i in range(deg + 1)] + [Fraction(0)] * trail
    return BinaryForm(coeffs)


def _binary_squarefree_part(b: BinaryForm) -> BinaryForm:
    poly = uv.trim(b.dehomogenized())
    tp = b.degree - uv.degree(poly)
    sq = uv.squarefree_part(poly) if uv.degree(poly) > 0 else [Fraction(1)]
    deg = uv.degree(sq)
    coeffs = ([Fraction(0)] if tp > 0 else []) + [sq[deg - i] for i in range(deg + 1)]
    return BinaryForm(coeffs)


def section(surface: QuarticSurface, plane: PlaneSpec) -> PlaneQuartic:
    """Restrict F to the plane and certify its singularities."""
    q = plane.pullback(surface.F)
    for i in range(1, 5):
        if _proportional(plane.coeffs, linear_coeffs(surface.E[i])):
            return PlaneQuartic(surface, plane, q, Classification("Degenerate", reason=f"non-reduced section (plane E{i} = 0)"))
    if q.is_zero():
        return PlaneQuartic(surface, plane, q, Classification("Degenerate", reason="plane contained in the surface"))
    status, pts = singular_points(q)
    if status == "none":
        cls = Classification("Smooth")
    elif status == "points" and len(pts) == 1:
        node = pts[0]
        hr = rank(hessian_at(q, node))
        if hr == 2:
            cls = Classification("OneNode", node=node)
        else:
            cls = Classification("Degenerate", node=node, reason=f"singular point with Hessian rank {hr}")
    else:
        cls = Classification("Degenerate", reason="singular locus is not a single ordinary node")
    log.debug("section %s: %s", [str(c) for c in plane.coeffs], cls.kind)
    return PlaneQuartic(surface, plane, q, cls)


def plane_through(points: Sequence[Sequence[Fraction]]) -> PlaneSpec:
    """The plane through three points of P^3."""
    ker = kernel_basis([list(p) for p in points], 4)
    if len(ker) != 1:
        raise PlaneError("points do not span a plane")
    return PlaneSpec.make(ker[0])
