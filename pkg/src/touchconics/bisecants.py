"""The cubic threefold K over the quartic and the bisecant labelling of bitangents.

With g1 = E1, g2 = Q, g3 = E2 E3 E4 the quartic is g2^2 - g1 g3 = 4F and
K = x4^2 g1 + 2 x4 g2 + g3 in P^4.  Lines of K not through P = (0:0:0:0:1)
project onto bitangents of the quartic.  Projecting K instead from its node
P1 = (0:0:0:1:-1) to the hyperplane x4 = 0 turns lines of K into bisecants
of the curve S = K ∩ Q', which splits into three conics S1, S2, S3 lying in
the planes E2, E3, E4.  Which two conics the image bisecant joins is the
component of the space of bitangents the original line belongs to.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from mpmath import mp

from .exactpoly import BinaryForm, MultiPoly, line_parameterization, restrict_to_line
from .exactpoly.conic import ConicForm
from .plane_quartic.bitangents import Bitangent, CertificationError, working_bits
from .plane_quartic.numeric import CompiledPoly, line_distance, norm
from .plane_quartic.section import PlaneQuartic
from .quartic13 import VARS, QuarticSurface, kernel_basis, linear_coeffs

K_VARS = ("x0", "x1", "x2", "x3", "x4")
P = (0, 0, 0, 0, 1)
P1 = (0, 0, 0, 1, -1)
# component index of S -> plane E_i containing it, and the L_j in its equation
COMPONENT_PLANE = {1: 2, 2: 3, 3: 4}
COMPONENT_L = {1: 2, 2: 1, 3: 0}
LABELS = ("PlaneE1", "PlaneE2", "PlaneE3", "PlaneE4", "B12", "B13", "B23")


class BisecantError(ArithmeticError):
    pass


@dataclass
class CubicModel:
    g1: MultiPoly
    g2: MultiPoly
    g3: MultiPoly
    K: MultiPoly

    def as_dict(self) -> dict:
        return {
            "g1": self.g1.to_text(),
            "g2": self.g2.to_text(),
            "g3": self.g3.to_text(),
            "K": self.K.to_text(),
            "projection_node": list(P1),
        }


def build_cubic(surface: QuarticSurface) -> CubicModel:
    g1, g2 = surface.E[1], surface.Q
    g3 = surface.E[2] * surface.E[3] * surface.E[4]
    if g2 * g2 - g1 * g3 != 4 * surface.F:
        raise BisecantError("g2^2 - g1 g3 != 4F")
    x4 = MultiPoly.var(K_VARS, "x4")
    e1, e2, e3 = (g.embed(K_VARS) for g in (g1, g2, g3))
    K = x4 * x4 * e1 + 2 * x4 * e2 + e3
    return CubicModel(g1, g2, g3, K)


def tangent_cone_at(K: MultiPoly, point: Sequence) -> MultiPoly:
    """Quadratic part of K at a point where K and its gradient vanish."""
    eps = MultiPoly.var(K_VARS + ("e",), "e")
    shifted = {v: MultiPoly.constant(K_VARS + ("e",), point[i]) + eps * MultiPoly.var(K_VARS + ("e",), v)
               for i, v in enumerate(K_VARS)}
    expanded = K.embed(K_VARS + ("e",)).substitute(shifted, K_VARS + ("e",))
    part = expanded.coefficients_in("e").get(2)
    if part is None:
        return MultiPoly.zero(K_VARS)
    return part.substitute({v: MultiPoly.var(K_VARS, v) for v in K_VARS} | {"e": MultiPoly.zero(K_VARS)}, K_VARS)


@dataclass
class SpaceCurveConfig:
    qprime: MultiPoly
    components: dict[int, tuple[int, MultiPoly]]  # index -> (plane E_i, conic in x0..x2)
    pairwise_intersections: dict[tuple[int, int], BinaryForm]
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {
            "qprime": self.qprime.to_text(),
            "components": {f"S{k}": {"plane": f"E{p}", "conic": c.to_text()} for k, (p, c) in sorted(self.components.items())},
            "pairwise_intersections": {f"S{i}S{j}": b.to_text() for (i, j), b in sorted(self.pairwise_intersections.items())},
            "checks": dict(self.checks),
        }


def _line_basis(surface: QuarticSurface, i: int, j: int) -> list:
    return kernel_basis([linear_coeffs(surface.E[i]), linear_coeffs(surface.E[j])], 4)


def _restrict_exact(p: MultiPoly, basis) -> BinaryForm:
    return restrict_to_line(p, [(basis[0][k], basis[1][k]) for k in range(4)])


def qprime_and_S(surface: QuarticSurface, cubic: CubicModel | None = None) -> SpaceCurveConfig:
    x0, x1, x2, x3 = MultiPoly.gens(VARS)
    L = surface.L
    s = x3 + L[0] + L[1] + L[2]
    qprime = s * s - 4 * surface.f2
    checks: dict[str, bool] = {}

    # Q' is the tangent cone of K at P1 seen from the hyperplane x4 = 0
    cubic = cubic or build_cubic(surface)
    cone = tangent_cone_at(cubic.K, P1)
    # the cone contains the vertex direction; substitute x4 = 0 for the section
    cone_h = cone.substitute({v: MultiPoly.var(VARS, v) for v in VARS} | {"x4": MultiPoly.zero(VARS)}, VARS)
    checks["P1_is_singular"] = cubic.K.evaluate(P1) == 0 and all(g.evaluate(P1) == 0 for g in cubic.K.gradient())
    checks["qprime_is_tangent_cone"] = _proportional_polys(cone_h, qprime)

    components = {}
    for k, i in COMPONENT_PLANE.items():
        conic = surface.f2 - L[COMPONENT_L[k]] ** 2
        conic3 = conic.substitute({v: MultiPoly.var(("x0", "x1", "x2"), v) for v in ("x0", "x1", "x2")} | {"x3": MultiPoly.zero(("x0", "x1", "x2"))}, ("x0", "x1", "x2"))
        components[k] = (i, conic3)
        # Q' on the plane E_i is -4 (f2 - L^2)
        basis = kernel_basis([linear_coeffs(surface.E[i])], 4)
        gens = MultiPoly.gens(("w0", "w1", "w2"))
        images = {v: sum((basis[m][n] * gens[m] for m in range(3)), MultiPoly.zero(("w0", "w1", "w2"))) for n, v in enumerate(VARS)}
        lhs = qprime.substitute(images, ("w0", "w1", "w2"))
        rhs = -4 * conic.substitute(images, ("w0", "w1", "w2"))
        checks[f"S{k}_equation"] = lhs == rhs
        checks[f"S{k}_smooth"] = ConicForm.from_multipoly(conic3).det() != 0

    pairs = {}
    for a, b in ((1, 2), (1, 3), (2, 3)):
        i, j = COMPONENT_PLANE[a], COMPONENT_PLANE[b]
        basis = _line_basis(surface, i, j)
        quad = _restrict_exact(qprime, basis)
        # equal up to the constant -2, so the two quadrics meet the line in the same points
        checks[f"Q_equals_Qprime_on_E{i}E{j}"] = quad == _restrict_exact(surface.Q, basis) * Fraction(-2)
        c0, c1, c2 = quad.coeffs
        checks[f"S{a}S{b}_two_points"] = c1 * c1 - 4 * c0 * c2 != 0
        pairs[(a, b)] = quad
    return SpaceCurveConfig(qprime, components, pairs, checks)


def _proportional_polys(p: MultiPoly, q: MultiPoly) -> bool:
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    e, c = next(iter(sorted(q.terms.items())))
    if e not in p.terms:
        return False
    return p * c == q * p.terms[e]


# --- lifting ----------------------------------------------------------------------

def _tol():
    return mp.mpf(2) ** (-mp.prec // 2)


def _binary_sqrt(f: BinaryForm) -> BinaryForm | None:
    """Square root of a numeric binary quartic, expanded from its larger end."""
    c = list(f.coeffs)
    rev = abs(c[-1]) > abs(c[0])
    if rev:
        c = c[::-1]
    if c[0] == 0:
        return None
    g0 = mp.sqrt(c[0])
    g1 = c[1] / (2 * g0)
    g2 = (c[2] - g1 * g1) / (2 * g0)
    g = [g0, g1, g2][::-1] if rev else [g0, g1, g2]
    return BinaryForm(g)


@dataclass
class Lift:
    """A line of K over a bitangent: x4 = l4(s, t) on the parameterized line."""

    l4: BinaryForm
    residual: object  # max |K| coefficient on the lifted line, relative


@dataclass
class LiftResult:
    param: list  # four pairs: x_i = alpha_i s + beta_i t
    lifts: list[Lift]
    square_check: object  # |g1 g3 - g2^2 + (l4 g1 + g2)^2| relative

    @property
    def count(self) -> int:
        return len(self.lifts)


def bitangent_param(pq: PlaneQuartic, bt: Bitangent) -> list:
    """Parameterization of a bitangent line as a line of P^3."""
    w = line_parameterization([mp.mpmathify(c) for c in bt.line])
    basis = pq.plane.basis
    return [
        (sum(w[k][0] * basis[k][i] for k in range(3)), sum(w[k][1] * basis[k][i] for k in range(3)))
        for i in range(4)
    ]


def _scale(*forms: BinaryForm):
    return max(abs(c) for f in forms for c in f.coeffs) or mp.mpf(1)


def lift_bitangent(cubic: CubicModel, param: list) -> LiftResult:
    """Lines of K projecting from P onto the given line of P^3 (numeric, certified by residual)."""
    g1 = restrict_to_line(cubic.g1, param)
    pscale = _coeff_norm(cubic.g1) * norm([a for a, _ in param] + [b for _, b in param])
    if all(abs(c) < _tol() * pscale for c in g1.coeffs):
        raise BisecantError("line lies in the plane g1 = 0; it has no lift")
    g2 = restrict_to_line(cubic.g2, param)
    g3 = restrict_to_line(cubic.g3, param)
    four_f = g2 * g2 - g1 * g3
    g = _binary_sqrt(four_f * (mp.mpf(1) / 4))
    if g is None:
        raise BisecantError("restriction is not a square at this precision")
    scale = _scale(g2, g1 * g3)
    lifts = []
    best = None
    for sign in (1, -1):
        num = -(g2 + g * (2 * sign))
        quo, rem = num.divide_linear(g1)
        rel = abs(rem) / _scale(num)
        kval = quo * quo * g1 + quo * g2 * 2 + g3
        res = _scale(kval) / scale
        cand = Lift(quo, res)
        if rel < _tol() and res < _tol():
            lifts.append(cand)
        if best is None or res < best.residual:
            best = cand
    if not lifts:
        raise CertificationError(f"no lift certified (best residual {mp.nstr(best.residual, 5)})")
    l4 = lifts[0].l4
    sq = g1 * g3 - g2 * g2 + (l4 * g1 + g2) * (l4 * g1 + g2)
    return LiftResult(param, lifts, _scale(sq) / scale)


# --- classification of bisecants -------------------------------------------------

@dataclass(frozen=True)
class CaseLabel:
    case: str  # SecantTwoPoints | TangentSmoothPoint | TangentQprimeAtNode | InQprime | NoContact | InPlane
    components: tuple[int, ...] = ()

    def __str__(self):
        return f"{self.case}({','.join(map(str, self.components))})" if self.components else self.case


def _classify_tol(bits: int):
    return mp.mpf(2) ** (-bits // 2), mp.mpf(2) ** (-bits // 4)


def classify_bisecant(config: SpaceCurveConfig, surface: QuarticSurface, points: Sequence[Sequence], bits: int = 64) -> CaseLabel:
    """Case of a line of x4 = 0 (spanned by two points) with respect to Q' and S.

    A point of the line lies on S_k when it is the meet with the plane of S_k
    and Q' vanishes there.  Values are accepted as zero below 2^(-bits/2)
    and as nonzero above 2^(-bits/4); anything between is unresolved.
    """
    small, large = _classify_tol(bits)
    p, q = ([mp.mpmathify(c) for c in pt] for pt in points)
    param = [(p[i], q[i]) for i in range(4)]
    qr = restrict_to_line(config.qprime, param)
    qscale = _coeff_norm(config.qprime) * max(norm(p), norm(q)) ** 2

    def zero(x, scale):
        r = abs(x) / scale
        if r < small:
            return True
        if r > large:
            return False
        raise CertificationError("bisecant classification unresolved at this precision")

    if all(zero(c, qscale) for c in qr.coeffs):
        return CaseLabel("InQprime")
    hits = []
    for k, i in COMPONENT_PLANE.items():
        e = restrict_to_line(surface.E[i], param)
        escale = _coeff_norm(surface.E[i]) * max(norm(p), norm(q))
        if all(zero(c, escale) for c in e.coeffs):
            return CaseLabel("InPlane", (k,))
        a, b = e.coeffs
        s, t = b, -a  # root of a s + b t
        pt = [s * p[m] + t * q[m] for m in range(4)]
        if zero(CompiledPoly(config.qprime)(pt), _coeff_norm(config.qprime) * norm(pt) ** 2):
            hits.append((k, (s, t)))
    disc = qr.coeffs[1] ** 2 - 4 * qr.coeffs[0] * qr.coeffs[2]
    # relative to the restricted quadratic itself, not to Q'
    tangent = zero(disc, max(abs(c) for c in qr.coeffs) ** 2)
    comps = tuple(k for k, _ in hits)
    if len(comps) >= 3:
        return CaseLabel("InQprime")
    if len(comps) == 2:
        (k1, r1), (k2, r2) = hits
        same = line_distance([r1[0], r1[1], 0], [r2[0], r2[1], 0]) < small
        if same:
            return CaseLabel("TangentQprimeAtNode", comps)
        return CaseLabel("SecantTwoPoints", comps)
    if len(comps) == 1:
        return CaseLabel("TangentSmoothPoint" if tangent else "OnePoint", comps)
    return CaseLabel("NoContact")


def _coeff_norm(p: MultiPoly):
    return max(abs(mp.mpf(c.numerator) / c.denominator) for c in p.terms.values())


# --- labelling bitangents --------------------------------------------------------

@dataclass
class ComponentAssignment:
    label: str
    case: CaseLabel | None = None
    lifts: int = 0
    lift_residual: object = None

    def as_dict(self) -> dict:
        out = {"label": self.label, "lifts": self.lifts}
        if self.case is not None:
            out["case"] = str(self.case)
        if self.lift_residual is not None:
            out["lift_residual"] = mp.nstr(self.lift_residual, 3)
        return out


def _plane_label(pq: PlaneQuartic, bt: Bitangent, tol) -> int | None:
    for i in range(1, 5):
        e = pq.plane.pullback(pq.surface.E[i])
        coeffs = [e.terms.get(tuple(1 if k == m else 0 for k in range(3)), Fraction(0)) for m in range(3)]
        if all(c == 0 for c in coeffs):
            continue
        if bt.exact_line is not None:
            u = bt.exact_line
            if all(u[a] * coeffs[b] == u[b] * coeffs[a] for a in range(3) for b in range(3)):
                return i
        elif line_distance([mp.mpf(c.numerator) / c.denominator for c in coeffs], bt.line) < tol:
            return i
    return None


def y0_component_of(pq: PlaneQuartic, bt: Bitangent, bits: int = 64, cubic: CubicModel | None = None,
                    config: SpaceCurveConfig | None = None) -> ComponentAssignment:
    with mp.workprec(working_bits(bits)):
        cubic = cubic or build_cubic(pq.surface)
        config = config or qprime_and_S(pq.surface, cubic)
        i = _plane_label(pq, bt, mp.mpf(2) ** (-bits // 2))
        if i is not None:
            return ComponentAssignment(f"PlaneE{i}")
        param = bitangent_param(pq, bt)
        lifted = lift_bitangent(cubic, param)
        l4 = lifted.lifts[0].l4
        # images of two points of the lifted line under the projection from P1
        pts = []
        for s, t in ((1, 0), (0, 1)):
            x = [a * s + b * t for a, b in param]
            x4 = l4(s, t)
            pts.append([x[0], x[1], x[2], x[3] + x4])
        case = classify_bisecant(config, pq.surface, pts, bits)
        if case.case in ("SecantTwoPoints", "TangentQprimeAtNode"):
            a, b = case.components
            label = f"B{a}{b}"
        elif case.case == "InQprime":
            label = "Boundary"  # lies in every B_ij with i != j
        else:
            label = "Unresolved"
        return ComponentAssignment(label, case, lifted.count, lifted.lifts[0].residual)


def component_histogram(assignments: Sequence[ComponentAssignment]) -> dict[str, int]:
    c = Counter(a.label for a in assignments)
    return {k: c.get(k, 0) for k in LABELS if c.get(k, 0)} | {k: v for k, v in c.items() if k not in LABELS}


# --- from bitangent labels to components of the family space ----------------------

# the obvious family whose e-pairs are given holds the four pairs of one letter
OBVIOUS_LETTER = {((1, 2), (3, 4)): "A", ((1, 3), (2, 4)): "B", ((1, 4), (2, 3)): "C"}


@dataclass
class ComponentCensus:
    dictionary: dict[str, str]  # B_ij -> letter
    letters: list[str]  # per bitangent: e1..e4 or A/B/C
    family_keys: list[tuple]
    groups: dict[tuple, list[int]]
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    @property
    def shape(self) -> list[int]:
        return sorted(len(v) for v in self.groups.values())

    def as_dict(self) -> dict:
        return {
            "dictionary": dict(sorted(self.dictionary.items())),
            "components": [
                {"key": _key_text(k), "families": len(v)} for k, v in sorted(self.groups.items(), key=lambda kv: _key_text(kv[0]))
            ],
            "shape": self.shape,
            "checks": dict(self.checks),
        }


def _key_text(key: tuple) -> str:
    if key[0] == "obvious":
        return "obvious " + "|".join(f"e{a}e{b}" for a, b in key[1])
    if key[0] == "mixed":
        return f"e{key[2][0]}{key[1]}+e{key[2][1]}{key[1]}"
    return "same-letter"


def family_components(families, assignments: Sequence[ComponentAssignment]) -> ComponentCensus:
    """Group the 63 families of a smooth section into monodromy-invariant classes.

    Each class is fixed by invariant data: the e-pairs of an obvious family,
    or the letter x and the pair {i, k} of a family with couples e_i x, e_k x,
    or else the single class of families made of same-letter couples only.
    """
    raw = [a.label for a in assignments]
    e_index = {k: int(lab[-1]) for k, lab in enumerate(raw) if lab.startswith("PlaneE")}
    checks: dict[str, bool] = {"four_plane_lines": sorted(e_index.values()) == [1, 2, 3, 4]}
    by_e = {v: k for k, v in e_index.items()}

    # dictionary from the obvious families
    dictionary: dict[str, str] = {}
    for fam in families:
        pairs = sorted(fam.pair_set())
        ee = sorted(tuple(sorted((e_index[a], e_index[b]))) for a, b in pairs if a in e_index and b in e_index)
        if len(ee) != 2:
            continue
        letter = OBVIOUS_LETTER.get(tuple(ee))
        rest = {raw[i] for p in pairs if p[0] not in e_index for i in p}
        if letter is None or len(rest) != 1:
            checks["obvious_families_well_formed"] = False
            continue
        dictionary[rest.pop()] = letter
    checks["dictionary_bijective"] = sorted(dictionary) == ["B12", "B13", "B23"] and sorted(dictionary.values()) == ["A", "B", "C"]
    letters = [f"e{e_index[k]}" if k in e_index else dictionary.get(lab, "?") for k, lab in enumerate(raw)]

    keys = []
    rules = {"obvious": True, "mixed": True, "same": True}
    for fam in families:
        pairs = sorted(fam.pair_set())
        kinds = [(letters[a], letters[b]) for a, b in pairs]
        ee = sorted(tuple(sorted((int(x[1]), int(y[1])))) for x, y in kinds if x[0] == "e" and y[0] == "e")
        ex = [(x, y) if x[0] == "e" else (y, x) for x, y in kinds if (x[0] == "e") != (y[0] == "e")]
        if ee:
            key = ("obvious", tuple(ee))
            others = [k for k in kinds if k[0][0] != "e"]
            letter = OBVIOUS_LETTER.get(tuple(ee))
            rules["obvious"] &= len(ee) == 2 and len(others) == 4 and all(x == y == letter for x, y in others)
        elif ex:
            xs = {y for _, y in ex}
            idx = tuple(sorted(int(e[1]) for e, _ in ex))
            key = ("mixed", next(iter(xs)), idx)
            others = [k for k in kinds if k[0][0] != "e" and k[1][0] != "e"]
            yz = set("ABC") - xs
            rules["mixed"] &= (
                len(ex) == 2 and len(xs) == 1 and idx[0] != idx[1]
                and len(others) == 4 and all({x, y} == yz for x, y in others)
            )
        else:
            key = ("same",)
            rules["same"] &= all(x == y for x, y in kinds)
        keys.append(key)
    checks["obvious_rule"] = rules["obvious"]
    checks["mixed_rule"] = rules["mixed"]
    checks["same_letter_rule"] = rules["same"]
    groups: dict[tuple, list[int]] = {}
    for k, key in enumerate(keys):
        groups.setdefault(key, []).append(k)
    census = ComponentCensus(dictionary, letters, keys, groups, checks)
    checks["shape_3x1_6x8_1x12"] = census.shape == [1, 1, 1] + [8] * 6 + [12]
    # an e_i x couple of one letter occurs in one class only
    owner: dict = {}
    ok = True
    for key, members in groups.items():
        if key[0] != "mixed":
            continue
        for i in key[2]:
            ok &= owner.setdefault((key[1], i), key) == key
    checks["e_letter_orbits_closed"] = ok
    return census
