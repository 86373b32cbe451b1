"""The real quartic surfaces with 13 nodes, their nodes and branch sextic.

    F = x3^2 f2 + 2 x3 L0 L1 L2 + f2^2 - f2 (L0^2 + L1^2 + L2^2)
        + L0^2 L1^2 + L0^2 L2^2 + L1^2 L2^2

with f2 = x0^2 + x1^2 + x2^2 and L_j = sum_i a_ij x_i.  Equivalently
4F = Q^2 - E1 E2 E3 E4 for the quadric Q and the four planes E_i below.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import combinations
from typing import Sequence

from .exactpoly import BinaryForm, MultiPoly, QuadraticNumber, det3
from .exactpoly import univariate as uv
from .exactpoly.binary import compose, divides, discriminant_quadratic, square_decomposition

log = logging.getLogger(__name__)

VARS = ("x0", "x1", "x2", "x3")
PLANE_VARS = ("x0", "x1", "x2")

# sign patterns (coefficient of L0, L1, L2) of E1..E4 = x3 + ...
E_SIGNS = {1: (-1, -1, -1), 2: (1, 1, -1), 3: (1, -1, 1), 4: (-1, 1, 1)}


class SpecParseError(ValueError):
    pass


@dataclass(frozen=True)
class QuarticSpec:
    """a[i][j]: coefficient of x_i in L_j (columns define the L_j)."""

    a: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> QuarticSpec:
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise SpecParseError("a spec is a 3x3 matrix")
        return cls(tuple(tuple(Fraction(x) for x in r) for r in rows))

    @classmethod
    def parse(cls, text: str) -> QuarticSpec:
        values = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0]
            for tok in line.split():
                try:
                    values.append(Fraction(tok))
                except (ValueError, ZeroDivisionError) as exc:
                    raise SpecParseError(f"not a rational number: {tok!r}") from exc
        if len(values) != 9:
            raise SpecParseError(f"expected 9 rationals, found {len(values)}")
        return cls.from_rows([values[0:3], values[3:6], values[6:9]])

    @classmethod
    def load(cls, path) -> QuarticSpec:
        with open(path) as fh:
            return cls.parse(fh.read())

    @classmethod
    def diagonal_half(cls) -> QuarticSpec:
        text = resources.files("touchconics.data").joinpath("diagonal-half.qspec").read_text()
        return cls.parse(text)

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.a) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()[:16]

    def column(self, j: int) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(self.a[i][j] for i in range(3))


@dataclass
class QuarticSurface:
    spec: QuarticSpec
    F: MultiPoly
    Q: MultiPoly
    f2: MultiPoly
    E: dict[int, MultiPoly]
    L: list[MultiPoly]

    def plane_coeffs(self, i: int) -> tuple[Fraction, ...]:
        """Coefficients (y0, y1, y2, y3) of the plane E_i."""
        p = self.E[i]
        return tuple(p.terms.get(tuple(1 if k == m else 0 for k in range(4)), Fraction(0)) for m in range(4))


def build(spec: QuarticSpec) -> QuarticSurface:
    x0, x1, x2, x3 = MultiPoly.gens(VARS)
    L = [sum((spec.a[i][j] * [x0, x1, x2][i] for i in range(3)), MultiPoly.zero(VARS)) for j in range(3)]
    f2 = x0**2 + x1**2 + x2**2
    sumsq = L[0] ** 2 + L[1] ** 2 + L[2] ** 2
    F = (
        x3**2 * f2
        + 2 * x3 * L[0] * L[1] * L[2]
        + f2**2
        - f2 * sumsq
        + L[0] ** 2 * L[1] ** 2
        + L[0] ** 2 * L[2] ** 2
        + L[1] ** 2 * L[2] ** 2
    )
    Q = 2 * f2 + x3**2 - sumsq
    E = {i: x3 + sum((sg * Lj for sg, Lj in zip(signs, L)), MultiPoly.zero(VARS)) for i, signs in E_SIGNS.items()}
    if 4 * F != Q**2 - E[1] * E[2] * E[3] * E[4]:
        raise ArithmeticError("internal identity 4F = Q^2 - E1E2E3E4 failed")
    return QuarticSurface(spec, F, Q, f2, E, L)


# --- validation -------------------------------------------------------------------

@dataclass
class ValidationReport:
    independent: bool
    pairwise_independent: bool
    conics_smooth: list[bool]
    conic_determinants: list[Fraction]
    pair_intersections_simple: dict[str, bool]
    no_triple_points: bool
    positive_definite: list[bool]
    warnings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.independent
            and all(self.conics_smooth)
            and all(self.pair_intersections_simple.values())
            and self.no_triple_points
        )

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "independent": self.independent,
            "pairwise_independent": self.pairwise_independent,
            "conics_smooth": self.conics_smooth,
            "conic_determinants": [str(d) for d in self.conic_determinants],
            "pair_intersections_simple": self.pair_intersections_simple,
            "no_triple_points": self.no_triple_points,
            "positive_definite": self.positive_definite,
            "warnings": self.warnings,
        }


def _conic_matrix(spec: QuarticSpec, j: int) -> list[list[Fraction]]:
    col = spec.column(j)
    return [[(1 if r == c else 0) - col[r] * col[c] for c in range(3)] for r in range(3)]


def branch_conics(surface: QuarticSurface) -> list[MultiPoly]:
    """f2 - L_j^2 in the variables x0, x1, x2."""
    return [_drop_x3(surface.f2 - Lj**2) for Lj in surface.L]


def _drop_x3(p: MultiPoly) -> MultiPoly:
    if not p.free_of(["x3"]):
        raise ValueError("form involves x3")
    return MultiPoly(PLANE_VARS, {e[:3]: c for e, c in p.terms.items()})


def projected_resultant(f: MultiPoly, g: MultiPoly, eliminate: int) -> BinaryForm:
    """Res_{x_k}(f, g) for ternary forms, as a binary form in the other two variables.

    Computed by evaluation at integer points and interpolation, with the
    formal x_k-degrees fixed so specialization commutes with the determinant.
    """
    keep = [i for i in range(3) if i != eliminate]
    df, dg = f.total_degree(), g.total_degree()
    deg = df * dg
    mf, mg = f.degree(f.variables[eliminate]), g.degree(g.variables[eliminate])

    def coeff_list(p, m, point):
        out = [Fraction(0)] * (m + 1)
        for e, c in p.terms.items():
            val = c * point[0] ** e[keep[0]] * point[1] ** e[keep[1]]
            out[m - e[eliminate]] += val
        return out

    xs = list(range(deg + 1))
    ys = []
    for x in xs:
        pt = (Fraction(x), Fraction(1))
        ys.append(uv.det(uv.sylvester_matrix(coeff_list(f, mf, pt), coeff_list(g, mg, pt))))
    poly = uv.interpolate(xs, ys)
    # homogenize: r(u, 1) = poly(u); degree deg in (u, w) with u = x_keep0
    coeffs = [poly[deg - i] if deg - i < len(poly) else Fraction(0) for i in range(deg + 1)]
    return BinaryForm(coeffs)


def validate(spec: QuarticSpec) -> ValidationReport:
    cols = [spec.column(j) for j in range(3)]
    independent = det3([[spec.a[i][j] for j in range(3)] for i in range(3)]) != 0

    def rank2(u, v):
        return any(u[i] * v[k] - u[k] * v[i] != 0 for i in range(3) for k in range(3))

    pairwise = all(rank2(cols[j], cols[k]) for j, k in combinations(range(3), 2))
    mats = [_conic_matrix(spec, j) for j in range(3)]
    dets = [det3(m) for m in mats]
    smooth = [d != 0 for d in dets]
    posdef = [m[0][0] > 0 and m[0][0] * m[1][1] - m[0][1] * m[1][0] > 0 and d > 0 for m, d in zip(mats, dets)]
    warnings = []
    for j, ok in enumerate(posdef):
        if not ok:
            warnings.append(f"f2 - L{j}^2 is not positive definite; real-geometric hypotheses fail")
    surface = build(spec)
    conics = branch_conics(surface)
    simple = {}
    for j, k in combinations(range(3), 2):
        ok = False
        if smooth[j] and smooth[k]:
            for shear in _SHEARS:
                cj, ck = _apply_linear(conics[j], shear), _apply_linear(conics[k], shear)
                if any(_binary_squarefree(projected_resultant(cj, ck, elim)) for elim in range(3)):
                    ok = True
                    break
        simple[f"{j}{k}"] = ok
    triple = _no_triple_points(spec, conics)
    return ValidationReport(independent, pairwise, smooth, dets, simple, triple, posdef, warnings)


# coordinate changes tried in turn; projections from symmetric configurations
# can glue distinct intersection points, a shear separates them
_SHEARS = (
    ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((1, 2, 3), (0, 1, 5), (0, 0, 1)),
    ((1, 0, 0), (3, 1, 0), (7, 2, 1)),
    ((2, 1, 1), (1, 3, 1), (1, 1, 4)),
)


def _apply_linear(p: MultiPoly, m) -> MultiPoly:
    gens = MultiPoly.gens(p.variables)
    images = {v: sum((Fraction(m[r][c]) * gens[c] for c in range(3)), MultiPoly.zero(p.variables)) for r, v in enumerate(p.variables)}
    return p.substitute(images, p.variables)


def _binary_squarefree(b: BinaryForm) -> bool:
    if b.is_zero():
        return False
    poly = uv.trim(b.dehomogenized())
    if b.degree - uv.degree(poly) > 1:
        return False
    return uv.degree(uv.gcd_poly(poly, uv.derivative(poly))) <= 0


def _no_triple_points(spec: QuarticSpec, conics: list[MultiPoly]) -> bool:
    """A common point of all three conics has L0^2 = L1^2 = L2^2; check those points."""
    cols = [spec.column(j) for j in range(3)]
    for s1 in (1, -1):
        for s2 in (1, -1):
            r1 = [cols[0][i] - s1 * cols[1][i] for i in range(3)]
            r2 = [cols[0][i] - s2 * cols[2][i] for i in range(3)]
            p = _cross(r1, r2)
            if all(x == 0 for x in p):
                # the two lines coincide; the triple locus is a whole line, test a pencil
                return False
            if all(c.evaluate(p) == 0 for c in conics):
                return False
    return True


def _cross(u, v):
    return [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]


# --- nodes -------------------------------------------------------------------------

@dataclass
class NodePair:
    planes: tuple[int, int]
    basis: tuple[tuple[Fraction, ...], tuple[Fraction, ...]]
    quadratic: BinaryForm

    @property
    def discriminant(self) -> Fraction:
        return discriminant_quadratic(self.quadratic)

    def as_dict(self) -> dict:
        return {
            "line": f"E{self.planes[0]}=E{self.planes[1]}=0",
            "basis": [[str(x) for x in v] for v in self.basis],
            "quadratic": [str(c) for c in self.quadratic.coeffs],
            "discriminant": str(self.discriminant),
        }


@dataclass
class NodeSet:
    real_node: tuple[Fraction, ...]
    real_hessian_rank: int
    pairs: list[NodePair]

    def count(self) -> int:
        return 1 + 2 * len(self.pairs)

    def as_dict(self) -> dict:
        return {
            "real_node": [str(x) for x in self.real_node],
            "real_hessian_rank": self.real_hessian_rank,
            "conjugate_pairs": [p.as_dict() for p in self.pairs],
            "count": self.count(),
        }


def kernel_basis(rows: Sequence[Sequence[Fraction]], n: int) -> list[list[Fraction]]:
    """Exact basis of the null space of a rational matrix with n columns."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * n
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fcol]
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    n = len(rows[0]) if rows else 0
    return n - len(kernel_basis(rows, n))


def linear_coeffs(p: MultiPoly) -> list[Fraction]:
    n = len(p.variables)
    return [p.terms.get(tuple(1 if k == m else 0 for k in range(n)), Fraction(0)) for m in range(n)]


def restrict_param(p: MultiPoly, basis: Sequence[Sequence[Fraction]]) -> BinaryForm:
    """p composed with (s, t) -> s*basis[0] + t*basis[1]."""
    images = [BinaryForm([basis[0][k], basis[1][k]]) for k in range(len(p.variables))]
    return compose(p, images)


def hessian_at(p: MultiPoly, point: Sequence[Fraction]) -> list[list[Fraction]]:
    grads = p.gradient()
    return [[g.diff(v).evaluate(point) for v in p.variables] for g in grads]


def nodes(surface: QuarticSurface) -> NodeSet:
    P = (Fraction(0), Fraction(0), Fraction(0), Fraction(1))
    F = surface.F
    if F.evaluate(P) != 0 or any(g.evaluate(P) != 0 for g in F.gradient()):
        raise ArithmeticError("(0:0:0:1) is not a singular point")
    hrank = rank(hessian_at(F, P))
    pairs = []
    grads = F.gradient()
    for i, j in combinations(range(1, 5), 2):
        basis = kernel_basis([linear_coeffs(surface.E[i]), linear_coeffs(surface.E[j])], 4)
        if len(basis) != 2:
            raise ValueError(f"planes E{i}, E{j} are not independent")
        quad = restrict_param(surface.Q, basis)
        if discriminant_quadratic(quad) == 0:
            raise ValueError(f"line E{i}=E{j}=0 meets Q in a double point; spec is outside the family")
        for g in grads:
            if not divides(quad, restrict_param(g, basis)):
                raise ArithmeticError(f"gradient does not vanish at the nodes on E{i}=E{j}=0")
        if not divides(quad, restrict_param(F, basis)):
            raise ArithmeticError("F does not vanish at the node pair")
        pairs.append(NodePair((i, j), (tuple(basis[0]), tuple(basis[1])), quad))
    return NodeSet(P, hrank, pairs)


# --- branch sextic ------------------------------------------------------------------

@dataclass
class BranchSextic:
    sextic: MultiPoly
    conic_restriction_is_square: bool
    conic_determinant_product: Fraction
    value_at_sample: Fraction

    def as_dict(self) -> dict:
        return {
            "sextic": self.sextic.to_text(),
            "conic_restriction_is_square": self.conic_restriction_is_square,
            "conic_determinant_product": str(self.conic_determinant_product),
            "value_at_sample": str(self.value_at_sample),
        }


def branch_sextic(surface: QuarticSurface) -> BranchSextic:
    conics = branch_conics(surface)
    sextic = conics[0] * conics[1] * conics[2]
    # f2 = 0 is parameterized over Q(i) by (s^2 - t^2, 2st, i(s^2 + t^2))
    I = QuadraticNumber(0, 1, -1)
    one = QuadraticNumber(1, 0, -1)
    zero = QuadraticNumber(0, 0, -1)
    images = [BinaryForm([one, zero, -one]), BinaryForm([zero, 2 * one, zero]), BinaryForm([I, zero, I])]
    if not compose(_drop_x3(surface.f2), images).is_zero():
        raise ArithmeticError("bad parameterization of f2 = 0")
    restricted = compose(sextic, images)
    square = square_decomposition(restricted) is not None and not restricted.is_zero()
    if not square:
        raise ArithmeticError("branch sextic does not touch f2 = 0 evenly")
    dets = Fraction(1)
    for j in range(3):
        dets *= det3(_conic_matrix(surface.spec, j))
    value = sextic.evaluate((Fraction(1), Fraction(0), Fraction(0)))
    return BranchSextic(sextic, square, dets, value)


def discriminant_identity(surface: QuarticSurface) -> bool:
    """The branch sextic equals -disc_{x3}(F)/4 (the double cover from the real node)."""
    parts = surface.F.coefficients_in("x3")
    a2 = parts.get(2, MultiPoly.zero(VARS))
    a1 = parts.get(1, MultiPoly.zero(VARS))
    a0 = parts.get(0, MultiPoly.zero(VARS))
    disc = a1 * a1 - 4 * a2 * a0
    conics = branch_conics(surface)
    sextic = (conics[0] * conics[1] * conics[2]).embed(VARS)
    return -disc == 4 * sextic
