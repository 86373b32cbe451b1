"""Certified bitangents of a plane quartic through the square-locus eliminants.

A line of the dual plane is written in one of three charts: in chart k the
line is  w_k = u w_i + v w_j  ({i, j} the other two indices), parameterized by
w_i = s, w_j = t.  The restricted quartic a s^4 + b s^3 t + ... + e t^4 has
coefficients polynomial in (u, v); the line is a bitangent exactly when
(a, ..., e) lies on the square locus, i.e. annihilates the seven eliminants.

Pipeline per chart: resultant of two pulled-back eliminants in v gives R(u);
factors shared with a(u) are spurious (a = b = 0 solves both) and removed;
roots of the square-free rest are certified, v is recovered from the
eliminants, and the full square system

    A_m(u, v) = S_m(xi, eta, zeta),   S = (xi^2, 2 xi eta, 2 xi zeta + eta^2, 2 eta zeta, zeta^2)

is certified by a Krawczyk test on a box around (u, v, xi, eta, zeta).
The unique solution in that box is a line with q|line = g^2 exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from mpmath import iv, mp

from ..exactpoly import BinaryForm, MultiPoly
from ..exactpoly import univariate as uv
from ..exactpoly.binary import compose, square_decomposition
from ..exactpoly.intervals import certified_polynomial_roots, krawczyk, newton, precision, to_iv, to_mp
from ..groebner import square_eliminants
from .numeric import CompiledPoly, as_fraction, canonical_key, line_distance, normalize_projective
from .section import PLANE_VARS, TRANSFORMS, PlaneQuartic

log = logging.getLogger(__name__)

UV = ("u", "v")
EXPECTED = {"Smooth": 28, "OneNode": 22}


class CertificationError(ArithmeticError):
    """Raised when the certified pipeline cannot complete at the requested precision."""


def working_bits(bits: int) -> int:
    return 2 * bits + 64


@dataclass
class Bitangent:
    line: tuple  # (l0, l1, l2) in plane coordinates, largest entry 1
    param: tuple  # three pairs (alpha_k, beta_k): w_k = alpha_k s + beta_k t
    witness: tuple  # (xi, eta, zeta): q(param) = (xi s^2 + eta s t + zeta t^2)^2
    radius: object
    through_node: bool
    transform: int
    chart: int
    uv: tuple
    certificate: str
    multiplicity_in_fiber: int | None = None
    exact_line: tuple | None = None
    exact_witness: BinaryForm | None = None
    exact_scale: Fraction | None = None

    def key(self):
        return canonical_key(self.line)

    def as_dict(self, digits: int = 20) -> dict:
        def c(z):
            z = mp.mpmathify(z)
            return [mp.nstr(mp.re(z), digits), mp.nstr(mp.im(z), digits)]

        out = {
            "line": [c(z) for z in self.line],
            "witness": [c(z) for z in self.witness],
            "radius": mp.nstr(self.radius, 5),
            "through_node": self.through_node,
            "multiplicity_in_fiber": self.multiplicity_in_fiber,
            "certificate": self.certificate,
            "solver_chart": [self.transform, self.chart],
        }
        if self.exact_line is not None:
            out["exact_line"] = [str(x) for x in self.exact_line]
            out["exact_witness"] = [str(x) for x in self.exact_witness.coeffs]
            out["exact_scale"] = str(self.exact_scale)
        return out


# --- per-chart polynomial systems -------------------------------------------------

def chart_indices(chart: int) -> tuple[int, int]:
    others = [i for i in range(3) if i != chart]
    return others[0], others[1]


def chart_line(chart: int, u, v) -> list:
    i, j = chart_indices(chart)
    line = [None, None, None]
    line[chart] = u * 0 + 1
    line[i] = -u
    line[j] = -v
    return line


def chart_param(chart: int, u, v) -> list:
    i, j = chart_indices(chart)
    one, zero = u * 0 + 1, u * 0
    p = [None, None, None]
    p[i] = (one, zero)
    p[j] = (zero, one)
    p[chart] = (u, v)
    return p


@dataclass
class ChartSystem:
    q: MultiPoly
    chart: int
    A: list  # five MultiPolys in (u, v)
    P: list  # seven pulled-back eliminants
    cA: list = field(default_factory=list)
    cAd: list = field(default_factory=list)
    cP: list = field(default_factory=list)
    cPd: list = field(default_factory=list)

    @classmethod
    def build(cls, q: MultiPoly, chart: int) -> ChartSystem:
        u, v = MultiPoly.gens(UV)
        one, zero = MultiPoly.constant(UV, 1), MultiPoly.zero(UV)
        i, j = chart_indices(chart)
        images = [None, None, None]
        images[i] = BinaryForm([one, zero])
        images[j] = BinaryForm([zero, one])
        images[chart] = BinaryForm([u, v])
        A = list(compose(q, images).coeffs)
        elim = square_eliminants()
        mapping = dict(zip(("a", "b", "c", "d", "e"), A))
        P = [p.substitute(mapping, UV) for p in elim]
        sysm = cls(q, chart, A, P)
        sysm.cA = [CompiledPoly(a) for a in A]
        sysm.cAd = [(CompiledPoly(a.diff("u")), CompiledPoly(a.diff("v"))) for a in A]
        sysm.cP = [CompiledPoly(p) for p in P]
        sysm.cPd = [(CompiledPoly(p.diff("u")), CompiledPoly(p.diff("v"))) for p in P]
        return sysm

    # the square system in z = (u, v, xi, eta, zeta)
    def F(self, z, kind="mp"):
        u, v, x, y, w = z
        S = [x * x, 2 * x * y, 2 * x * w + y * y, 2 * y * w, w * w]
        return [self.cA[m]((u, v), kind) - S[m] for m in range(5)]

    def J(self, z, kind="mp"):
        u, v, x, y, w = z
        zero = mp.mpc(0) if kind == "mp" else iv.mpc(0, 0)
        dS = [
            [2 * x, zero, zero],
            [2 * y, 2 * x, zero],
            [2 * w, 2 * y, 2 * x],
            [zero, 2 * w, 2 * y],
            [zero, zero, 2 * w],
        ]
        rows = []
        for m in range(5):
            du, dv = self.cAd[m]
            rows.append([du((u, v), kind), dv((u, v), kind)] + [-d for d in dS[m]])
        return rows


def _specialize(p: MultiPoly, u0: Fraction) -> list:
    """p(u0, v) as a low-first coefficient list in v."""
    deg = p.degree("v")
    out = [Fraction(0)] * (deg + 1)
    for (a, b), c in p.terms.items():
        out[b] += c * u0**a
    return out


def resultant_in_u(P1: MultiPoly, P2: MultiPoly) -> list:
    """Res_v(P1, P2) as an exact low-first polynomial in u (formal v-degrees)."""
    m1, m2 = P1.degree("v"), P2.degree("v")
    if m1 < 1 or m2 < 1:
        return []
    bound = m2 * max(P1.degree("u"), 0) + m1 * max(P2.degree("u"), 0)
    xs, ys = [], []
    for x in range(bound + 1):
        u0 = Fraction(x)
        p1 = _specialize(P1, u0)
        p2 = _specialize(P2, u0)
        ys.append(uv.det(uv.sylvester_matrix(list(reversed(p1)), list(reversed(p2)))))
        xs.append(u0)
    return uv.trim(uv.interpolate(xs, ys))


def _univariate_in_u(p: MultiPoly) -> list:
    if p.degree("v") > 0:
        raise ValueError("polynomial depends on v")
    deg = max(p.degree("u"), 0)
    out = [Fraction(0)] * (deg + 1)
    for (a, _), c in p.terms.items():
        out[a] += c
    return uv.trim(out)


def _at_v0(p: MultiPoly) -> list:
    deg = max(p.degree("u"), 0)
    out = [Fraction(0)] * (deg + 1)
    for (a, b), c in p.terms.items():
        if b == 0:
            out[a] += c
    return uv.trim(out)


def _strip_common(r: list, g: list) -> list:
    r = uv.squarefree_part(r)
    while True:
        h = uv.gcd_poly(r, g)
        if uv.degree(h) <= 0:
            return r
        r = uv.exact_div(r, h)


# --- candidates -----------------------------------------------------------------------

def _v_candidates(sysm: ChartSystem, u0) -> list:
    """Numerical v with all seven eliminants small at (u0, v)."""
    cands = []
    used = 0
    for p in sysm.P:
        coeffs = _numeric_v_coeffs(p, u0)
        while coeffs and abs(coeffs[-1]) <= mp.mpf(2) ** (-mp.prec // 2) * max(abs(c) for c in coeffs):
            coeffs.pop()
        if len(coeffs) < 2:
            continue
        try:
            roots = mp.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=mp.prec)
        except mp.NoConvergence:
            continue
        cands.extend(roots)
        used += 1
        if used == 2:
            break
    scored = []
    for v in cands:
        scored.append((_residual(sysm, u0, v), v))
    scored.sort(key=lambda t: t[0])
    out = []
    for s, v in scored:
        if s > mp.mpf(2) ** (-mp.prec // 4):
            break
        if all(abs(v - w) > mp.mpf(2) ** (-mp.prec // 4) * max(1, abs(v)) for w in out):
            out.append(v)
    return out


def _numeric_v_coeffs(p: MultiPoly, u0) -> list:
    deg = p.degree("v")
    out = [mp.mpc(0)] * (deg + 1)
    for (a, b), c in p.terms.items():
        out[b] += to_mp(c) * u0**a
    return out


def _residual(sysm: ChartSystem, u0, v0):
    worst = mp.mpf(0)
    for cp in sysm.cP:
        val = abs(cp((u0, v0)))
        scale = sum(abs(to_mp(c)) * max(1, abs(u0)) ** a * max(1, abs(v0)) ** b for (a, b), c in cp.poly.terms.items())
        if scale:
            worst = max(worst, val / scale)
    return worst


def _square_root_guess(abcde) -> list:
    a, b, c, d, e = abcde
    out = []
    if abs(a) > 0:
        x = mp.sqrt(a)
        y = b / (2 * x)
        out.append((x, y, (c - y * y) / (2 * x)))
    if abs(e) > 0:
        w = mp.sqrt(e)
        y = d / (2 * w)
        out.append(((c - y * y) / (2 * w), y, w))
    if abs(c) > 0:
        y = mp.sqrt(c)
        out.append((b / (2 * y), y, d / (2 * y)))

    def res(g):
        x, y, w = g
        S = [x * x, 2 * x * y, 2 * x * w + y * y, 2 * y * w, w * w]
        return max(abs(S[m] - abcde[m]) for m in range(5))

    out.sort(key=res)
    return out


def _certify(sysm: ChartSystem, z0: Sequence, bits: int):
    """Newton-refine and Krawczyk-certify the square system; returns (z, r) or None."""
    z = newton(lambda z: sysm.F(z), lambda z: sysm.J(z), z0, steps=80)
    scale = max(1, max(abs(c) for c in z))
    r = mp.mpf(2) ** (-bits) * scale
    ok = krawczyk(
        lambda Z: sysm.F(Z, "iv"),
        lambda Z: sysm.J(Z, "iv"),
        lambda Z: sysm.J(Z),
        z,
        r,
    )
    return (z, r) if ok else None


# --- the solver -----------------------------------------------------------------------

def _transform_matrix(pq: PlaneQuartic, index: int):
    """Change of plane coordinates w = M w' putting the node (if any) at (0:0:1)."""
    T = [[Fraction(c) for c in row] for row in TRANSFORMS[index]]
    base = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    if pq.kind == "OneNode" and list(pq.node) != [0, 0, 1]:
        n = [Fraction(c) for c in pq.node]
        cols = [[Fraction(int(i == j)) for i in range(3)] for j in range(3)]
        # complete the node to a basis with two unit vectors
        from ..exactpoly.conic import det3

        for a in range(3):
            for b in range(a + 1, 3):
                m = [[cols[a][r], cols[b][r], n[r]] for r in range(3)]
                if det3(m) != 0:
                    base = m
                    break
            else:
                continue
            break
    return [[sum(base[r][k] * T[k][c] for k in range(3)) for c in range(3)] for r in range(3)]


def _inverse_transpose(M):
    from ..exactpoly.conic import det3

    d = det3(M)
    cof = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cs = [c for c in range(3) if c != j]
            minor = M[rows[0]][cs[0]] * M[rows[1]][cs[1]] - M[rows[0]][cs[1]] * M[rows[1]][cs[0]]
            cof[i][j] = (-1) ** (i + j) * minor / d
    return cof  # inverse transpose = cofactor matrix / det


def _apply(M, q: MultiPoly) -> MultiPoly:
    gens = MultiPoly.gens(PLANE_VARS)
    images = {v: sum((M[r][c] * gens[c] for c in range(3)), MultiPoly.zero(PLANE_VARS)) for r, v in enumerate(PLANE_VARS)}
    return q.substitute(images, PLANE_VARS)


@dataclass
class ChartResult:
    regular: list
    node_lines: list
    degree_R: int
    degree_D: int


def solve_chart(pq: PlaneQuartic, transform: int, chart: int, bits: int) -> ChartResult:
    M = _transform_matrix(pq, transform)
    q = _apply(M, pq.q)
    sysm = _chart_system(pq, transform, chart, q)
    node_case = pq.kind == "OneNode" and chart in (0, 1)
    a_u = _univariate_in_u(sysm.A[0])
    R: list = []
    for i, j in ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3)):
        R = resultant_in_u(sysm.P[i], sysm.P[j])
        if R:
            break
    if not R:
        raise CertificationError("all tried resultants vanish identically")
    Rc = _strip_common(R, a_u) if uv.degree(a_u) > 0 else uv.squarefree_part(R)
    D = []
    if node_case:
        a0, b0, c0 = (_at_v0(sysm.A[m]) for m in range(3))
        D = uv.trim(uv.sub(uv.mul(b0, b0), uv.scale(uv.mul(a0, c0), 4)))
        if D:
            D = uv.squarefree_part(D)
            Rc = _strip_common(Rc, D)
    Minv_t = _inverse_transpose(M)
    regular = []
    for u0, _ in certified_polynomial_roots(Rc, bits):
        for v0 in _v_candidates(sysm, u0):
            A = [sysm.cA[m]((u0, v0)) for m in range(5)]
            for guess in _square_root_guess(A)[:1]:
                cert = _certify(sysm, [u0, v0, *guess], bits)
                if cert is None:
                    continue
                z, r = cert
                regular.append(_make_bitangent(sysm, M, Minv_t, transform, chart, z, r, False, "krawczyk"))
    node_lines = []
    if node_case and uv.degree(D) > 0:
        for u0, r in certified_polynomial_roots(D, bits):
            node_lines.append(_node_bitangent(sysm, M, Minv_t, transform, chart, u0, r))
    return ChartResult(regular, node_lines, uv.degree(Rc), uv.degree(D) if D else 0)


def _chart_system(pq: PlaneQuartic, transform: int, chart: int, q: MultiPoly) -> ChartSystem:
    cache = pq.details.setdefault("chart_systems", {})
    key = (transform, chart)
    if key not in cache:
        cache[key] = ChartSystem.build(q, chart)
    return cache[key]


def _make_bitangent(sysm, M, Minv_t, transform, chart, z, r, through_node, how) -> Bitangent:
    u0, v0, x, y, w = z
    lp = chart_line(chart, u0, v0)
    pp = chart_param(chart, u0, v0)
    line = [sum(to_mp(Minv_t[a][b]) * lp[b] for b in range(3)) for a in range(3)]
    param = tuple(
        (sum(to_mp(M[a][b]) * pp[b][0] for b in range(3)), sum(to_mp(M[a][b]) * pp[b][1] for b in range(3))) for a in range(3)
    )
    return Bitangent(
        line=tuple(normalize_projective(line)),
        param=param,
        witness=(x, y, w),
        radius=r,
        through_node=through_node,
        transform=transform,
        chart=chart,
        uv=(u0, v0),
        certificate=how,
    )


def _node_bitangent(sysm, M, Minv_t, transform, chart, u0, r) -> Bitangent:
    # on v = 0 the restriction is s^2 (alpha s^2 + beta s t + gamma t^2) with a square factor
    alpha, beta, gamma = (sysm.cA[m]((u0, mp.mpc(0))) for m in range(3))
    if abs(alpha) >= abs(gamma):
        x = mp.sqrt(alpha)
        wit = (x, beta / (2 * x), mp.mpc(0))
    else:
        # alpha ~ 0: restriction ~ s^2 t (beta s + gamma t); use the t^2 coefficient
        y = mp.sqrt(gamma)
        wit = (beta / (2 * y), y, mp.mpc(0))
    return _make_bitangent(sysm, M, Minv_t, transform, chart, (u0, mp.mpc(0), *wit), r, True, "node-discriminant")


def bitangents(pq: PlaneQuartic, bits: int = 64) -> list[Bitangent]:
    """All bitangents of a Smooth or OneNode section, certified, in canonical order."""
    if pq.kind not in EXPECTED:
        raise ValueError(f"bitangents need a Smooth or OneNode section, not {pq.kind}")
    expected = EXPECTED[pq.kind]
    expected_node = 6 if pq.kind == "OneNode" else 0
    with precision(working_bits(bits)):
        sep = mp.mpf(2) ** (-bits // 2)
        found: list[Bitangent] = []
        for transform in range(len(TRANSFORMS)):
            for chart in range(3):
                res = solve_chart(pq, transform, chart, bits)
                for bt in res.node_lines + res.regular:
                    _merge(found, bt, sep)
                nn = sum(b.through_node for b in found)
                log.debug("transform %d chart %d: R degree %d, %d found (%d through node)", transform, chart, res.degree_R, len(found), nn)
                if len(found) > expected or nn > expected_node:
                    raise CertificationError(f"found {len(found)} bitangents, more than {expected}: separation failed")
                if len(found) == expected and nn == expected_node:
                    break
            if len(found) == expected and sum(b.through_node for b in found) == expected_node:
                break
        if len(found) != expected:
            raise CertificationError(f"only {len(found)} of {expected} bitangents certified at {bits} bits")
        for a in range(len(found)):
            for b in range(a):
                if line_distance(found[a].line, found[b].line) <= sep:
                    raise CertificationError("bitangent enclosures not separated")
        for bt in found:
            _exact_upgrade(pq, bt)
            bt.multiplicity_in_fiber = fiber_multiplicity(pq, bt, bits)
        found.sort(key=lambda b: b.key())
    return found


def _merge(found: list, bt: Bitangent, sep) -> None:
    for other in found:
        if line_distance(other.line, bt.line) <= sep:
            if bt.through_node != other.through_node:
                raise CertificationError("a node line coincides with a regular bitangent")
            return
    found.append(bt)


def _exact_upgrade(pq: PlaneQuartic, bt: Bitangent) -> None:
    """Recognize rational bitangents and give them an exact certificate."""
    fr = [as_fraction(c, 10**6) for c in bt.line]
    if any(f is None for f in fr):
        return
    from ..exactpoly.binary import restrict_to_line

    if all(f == 0 for f in fr):
        return
    restricted = restrict_to_line(pq.q, fr)
    dec = square_decomposition(restricted)
    if dec is None or restricted.is_zero():
        return
    lead, g = dec
    bt.exact_line = tuple(fr)
    bt.exact_witness = g
    bt.exact_scale = lead
    bt.certificate = "exact"


# --- ramification in the fiber ------------------------------------------------------------

def fiber_multiplicity(pq: PlaneQuartic, bt: Bitangent, bits: int = 64) -> int:
    """Length of the fiber of the square locus over the bitangent: 1 or 2.

    The Jacobian of the seven pulled-back eliminants in (u, v) has rank 2 at
    a reduced point.  For lines through the node it is checked to vanish
    identically along the node pencil (all 2x2 minors divisible by the node
    discriminant), and the node is checked not to be a cusp.
    """
    M = _transform_matrix(pq, bt.transform)
    sysm = _chart_system(pq, bt.transform, bt.chart, _apply(M, pq.q))
    if bt.through_node:
        a0, b0, c0 = (_at_v0(sysm.A[m]) for m in range(3))
        D = uv.squarefree_part(uv.trim(uv.sub(uv.mul(b0, b0), uv.scale(uv.mul(a0, c0), 4))))
        grads = [(_at_v0(p.diff("u")), _at_v0(p.diff("v"))) for p in sysm.P]
        for i in range(7):
            for j in range(i + 1, 7):
                minor = uv.sub(uv.mul(grads[i][0], grads[j][1]), uv.mul(grads[j][0], grads[i][1]))
                if uv.trim(minor) and uv.divmod_poly(uv.trim(minor), D)[1]:
                    raise CertificationError("Jacobian has full rank at a node line")
        if cusp_discriminant(pq) == 0:
            raise CertificationError("the singular point is a cusp")
        return 2
    with precision(working_bits(bits)):
        u0, v0 = bt.uv
        box = [to_iv(_box(u0, bt.radius)), to_iv(_box(v0, bt.radius))]
        J = [(du(box, "iv"), dv(box, "iv")) for du, dv in sysm.cPd]
        for i in range(7):
            for j in range(i + 1, 7):
                minor = J[i][0] * J[j][1] - J[j][0] * J[i][1]
                if _excludes_zero(minor):
                    return 1
    raise CertificationError("Jacobian rank could not be certified")


def _box(c, r):
    from ..exactpoly.intervals import box

    return box(c, r)


def _excludes_zero(z) -> bool:
    from ..exactpoly.intervals import excludes_zero

    return excludes_zero(z)


def cusp_discriminant(pq: PlaneQuartic) -> Fraction:
    """Discriminant of the tangent cone at the node (nonzero for an ordinary node)."""
    from ..quartic13 import hessian_at

    H = hessian_at(pq.q, pq.node)
    # the tangent cone is the Hessian quadric restricted to a complement of the node
    M = _transform_matrix(pq, 0)
    Ht = [[sum(M[k][a] * H[k][l] * M[l][b] for k in range(3) for l in range(3)) for b in range(3)] for a in range(3)]
    return Ht[0][1] ** 2 - Ht[0][0] * Ht[1][1]
