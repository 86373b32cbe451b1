"""One-parameter families of touching conics  lambda^2 U + 2 lambda mu V + mu^2 W.

A family is stored as a triple (U, V, W) of conics with UW - V^2 = kappa * q
for a recorded nonzero scalar kappa (kappa = -4 for the families read off
4F = Q^2 - E1E2E3E4, kappa = -1 for families built from a bitangent pair).
Triples related by (U, V, W) ~ (l^2 U + 2 l V + W, l U + V, U) describe the
same pencil; families are compared through the set of bitangent pairs making
up their reducible members.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from mpmath import mp

from ..exactpoly import ConicForm, MultiPoly
from ..exactpoly import univariate as uv
from ..exactpoly.intervals import certified_polynomial_roots, precision, to_mp
from ..quartic13 import linear_coeffs
from .bitangents import Bitangent, CertificationError, working_bits
from .numeric import kernel_vector, line_distance, solve_least_squares
from .section import PLANE_VARS, PlaneQuartic

log = logging.getLogger(__name__)

# ConicForm coefficient order: x^2, y^2, z^2, xy, xz, yz
_MONOS = ((2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1))


class FamilyError(ArithmeticError):
    pass


def _is_exact(values) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in values)


def line_product(l: Sequence, m: Sequence) -> ConicForm:
    return ConicForm([
        l[0] * m[0], l[1] * m[1], l[2] * m[2],
        l[0] * m[1] + l[1] * m[0], l[0] * m[2] + l[2] * m[0], l[1] * m[2] + l[2] * m[1],
    ])


def conic_poly(c: ConicForm) -> MultiPoly:
    return c.to_multipoly(PLANE_VARS)


def _quartic_coeff_list(q: MultiPoly) -> list[tuple[tuple[int, ...], object]]:
    monos = [(a, b, 4 - a - b) for a in range(4, -1, -1) for b in range(4 - a, -1, -1)]
    return [(m, q.terms.get(m, Fraction(0))) for m in monos]


@dataclass
class ReducibleMember:
    lam: tuple  # (lambda, mu) of the original triple
    multiplicity: int
    lines: tuple  # two lines (complex triples)
    bitangents: tuple | None = None  # indices into the bitangent list

    def as_dict(self, digits: int = 15) -> dict:
        def c(z):
            z = mp.mpmathify(z)
            return [mp.nstr(mp.re(z), digits), mp.nstr(mp.im(z), digits)]

        return {
            "parameter": [c(self.lam[0]), c(self.lam[1])],
            "multiplicity": self.multiplicity,
            "bitangents": list(self.bitangents) if self.bitangents is not None else None,
        }


@dataclass
class TouchingFamily:
    U: ConicForm
    V: ConicForm
    W: ConicForm
    kappa: object
    exact: bool
    origin: str = ""
    members: list[ReducibleMember] | None = None
    det_sextic: list | None = None  # low-first in the rotated parameter
    rotation: object = 0

    def member(self, lam, mu=1) -> ConicForm:
        return self.U * (lam * lam) + self.V * (2 * lam * mu) + self.W * (mu * mu)

    def identity_residual(self, q: MultiPoly):
        """max |coefficient| of UW - V^2 - kappa q (zero for exact families)."""
        U, V, W = (conic_poly(c) if self.exact else None for c in (self.U, self.V, self.W))
        if self.exact:
            diff = U * W - V * V - self.kappa * q
            return Fraction(0) if diff.is_zero() else max(abs(c) for c in diff.terms.values())
        lhs = _numeric_product(self.U, self.W)
        vv = _numeric_product(self.V, self.V)
        worst = mp.mpf(0)
        for m, c in _quartic_coeff_list(q):
            worst = max(worst, abs(lhs.get(m, 0) - vv.get(m, 0) - self.kappa * to_mp(c)))
        return worst

    def pair_set(self) -> frozenset:
        if self.members is None or any(m.bitangents is None for m in self.members):
            raise FamilyError("members not matched to bitangents")
        return frozenset(tuple(sorted(m.bitangents)) for m in self.members)

    def as_dict(self) -> dict:
        return {
            "origin": self.origin,
            "exact": self.exact,
            "kappa": str(self.kappa) if self.exact else mp.nstr(self.kappa, 15),
            "reducible_members": [m.as_dict() for m in (self.members or [])],
        }


def _numeric_product(a: ConicForm, b: ConicForm) -> dict:
    out: dict = {}
    for ea, ca in zip(_MONOS, a.coeffs):
        for eb, cb in zip(_MONOS, b.coeffs):
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + to_mp(ca) * to_mp(cb)
    return out


# --- construction ---------------------------------------------------------------------

def family_from_decomposition(pq: PlaneQuartic, U, V, W) -> TouchingFamily:
    """Normalize a decomposition UW - V^2 = kappa q (kappa found and checked)."""
    U, V, W = (c if isinstance(c, ConicForm) else ConicForm.from_multipoly(c) for c in (U, V, W))
    exact = _is_exact(U.coeffs + V.coeffs + W.coeffs)
    if exact:
        lhs = conic_poly(U) * conic_poly(W) - conic_poly(V) * conic_poly(V)
        e, c = next(iter(sorted(pq.q.terms.items())))
        kappa = lhs.terms.get(e, Fraction(0)) / c
        if kappa == 0 or lhs != kappa * pq.q:
            raise FamilyError("UW - V^2 is not a multiple of the quartic")
        return TouchingFamily(U, V, W, kappa, True, origin="decomposition")
    lhs = _numeric_product(U, W)
    vv = _numeric_product(V, V)
    coeffs = _quartic_coeff_list(pq.q)
    m0, c0 = max(coeffs, key=lambda mc: abs(mc[1]))
    kappa = (lhs.get(m0, 0) - vv.get(m0, 0)) / to_mp(c0)
    fam = TouchingFamily(U, V, W, kappa, False, origin="decomposition")
    if abs(kappa) == 0 or fam.identity_residual(pq.q) > _tol() * max(1, abs(kappa)):
        raise FamilyError("UW - V^2 is not a multiple of the quartic")
    return fam


def family_member(fam: TouchingFamily, lam, mu=1) -> ConicForm:
    if lam == 0 and mu == 0:
        raise ValueError("(0:0) is not a parameter")
    return fam.member(lam, mu)


def _tol():
    return mp.mpf(2) ** (-mp.prec // 3)


def _line_monomial_rows(param) -> list[list]:
    """For each of s^2, st, t^2: the coefficient vector of V(param(s,t)) in V's six coefficients."""
    (a0, b0), (a1, b1), (a2, b2) = param
    lin = [(a0, b0), (a1, b1), (a2, b2)]
    rows = [[], [], []]
    for e in _MONOS:
        idx = [k for k in range(3) for _ in range(e[k])]
        (p, q), (r, s) = lin[idx[0]], lin[idx[1]]
        # (p s + q t)(r s + s' t) = pr s^2 + (ps' + qr) st + qs' t^2
        rows[0].append(p * r)
        rows[1].append(p * s + q * r)
        rows[2].append(q * s)
    return rows


def family_from_bitangent_pair(pq: PlaneQuartic, bt1: Bitangent, bt2: Bitangent, bits: int = 64) -> list[TouchingFamily]:
    """The families containing the reducible conic bt1 * bt2 (one, or two through the node)."""
    with precision(working_bits(bits)):
        U = line_product([mp.mpmathify(c) for c in bt1.line], [mp.mpmathify(c) for c in bt2.line])
        rows1 = _line_monomial_rows(bt1.param)
        rows2 = _line_monomial_rows(bt2.param)
        g1 = list(bt1.witness)
        g2 = list(bt2.witness)
        norm_row = [mp.conj(c) for c in U.coeffs]
        out = []
        for sigma in (1, -1):
            rows = rows1 + rows2 + [norm_row]
            rhs = g1 + [sigma * x for x in g2] + [mp.mpc(0)]
            Vc, res = solve_least_squares(rows, rhs)
            if res > _tol():
                continue
            V = ConicForm(Vc)
            W = _solve_W(pq, U, V)
            if W is None:
                continue
            fam = TouchingFamily(U, V, W, mp.mpf(-1), False, origin="bitangent-pair")
            if fam.identity_residual(pq.q) > _tol():
                continue
            out.append(fam)
        if not out:
            raise FamilyError("no consistent family through the bitangent pair")
        return out


def _solve_W(pq: PlaneQuartic, U: ConicForm, V: ConicForm):
    """W with U W = V^2 + kappa q for kappa = -1, i.e. UW - V^2 = -q."""
    vv = _numeric_product(V, V)
    rows, rhs = [], []
    for m, c in _quartic_coeff_list(pq.q):
        row = []
        for ew in _MONOS:
            acc = mp.mpc(0)
            for eu, cu in zip(_MONOS, U.coeffs):
                if tuple(x + y for x, y in zip(eu, ew)) == m:
                    acc += cu
            row.append(acc)
        rows.append(row)
        rhs.append(vv.get(m, 0) - to_mp(c))
    Wc, res = solve_least_squares(rows, rhs)
    if res > _tol():
        return None
    return ConicForm(Wc)


def obvious_families(pq: PlaneQuartic) -> list[TouchingFamily]:
    """The three families U = E1 Ej, V = Q, W = Ek El restricted to the plane (UW - V^2 = -4q)."""
    surf, plane = pq.surface, pq.plane
    E = {i: plane.pullback(surf.E[i]) for i in range(1, 5)}
    lin = {i: linear_coeffs(E[i]) for i in E}
    Q = ConicForm.from_multipoly(plane.pullback(surf.Q))
    out = []
    for j, (k, l) in ((2, (3, 4)), (3, (2, 4)), (4, (2, 3))):
        U = line_product(lin[1], lin[j])
        W = line_product(lin[k], lin[l])
        fam = family_from_decomposition(pq, U, Q, W)
        if fam.kappa != -4:
            raise FamilyError("unexpected scale in the obvious decomposition")
        fam.origin = f"obvious E1E{j}|E{k}E{l}"
        out.append(fam)
    return out


# --- reducible members ------------------------------------------------------------------

def _matrix(c: ConicForm):
    a, b, cc, d, e, f = c.coeffs
    h = Fraction(1, 2) if _is_exact(c.coeffs) else mp.mpf(0.5)
    return [[a, d * h, e * h], [d * h, b, f * h], [e * h, f * h, cc]]


def _poly_det3(M) -> list:
    """Determinant of a 3x3 matrix of low-first polynomials."""
    def m(p, q):
        return uv.mul(p, q) if _is_exact(p + q) else _nmul(p, q)

    def a(p, q):
        n = max(len(p), len(q))
        return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]

    def neg(p):
        return [-x for x in p]

    t1 = m(M[0][0], a(m(M[1][1], M[2][2]), neg(m(M[1][2], M[2][1]))))
    t2 = m(M[0][1], a(m(M[1][0], M[2][2]), neg(m(M[1][2], M[2][0]))))
    t3 = m(M[0][2], a(m(M[1][0], M[2][1]), neg(m(M[1][1], M[2][0]))))
    return a(a(t1, neg(t2)), t3)


def _nmul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] = out[i + j] + x * y
    return out


def det_sextic(fam: TouchingFamily, rotation=0) -> list:
    """det(l^2 A + 2 l B + C) for the rotated triple (A, B, C) = (M(rot), rot U + V, U), low-first."""
    r = rotation
    A = fam.member(r, 1)
    B = fam.U * r + fam.V
    C = fam.U
    MA, MB, MC = _matrix(A), _matrix(B), _matrix(C)
    P = [[[MC[i][j], 2 * MB[i][j], MA[i][j]] for j in range(3)] for i in range(3)]
    return _poly_det3(P)


def _choose_rotation(fam: TouchingFamily):
    from ..exactpoly.conic import det3

    best = None
    for r in (0, 1, -1, 2, -2, 3, -3, 5, 7):
        d = det3(_matrix(fam.member(r, 1)))
        if fam.exact:
            if d != 0:
                return r
        else:
            scale = max(abs(to_mp(x)) for x in fam.member(r, 1).coeffs) ** 3
            val = abs(d) / scale
            if best is None or val > best[0]:
                best = (val, r)
            if val > mp.mpf(1) / 1000:
                return r
    if best is None or best[0] < _tol():
        raise FamilyError("det sextic vanishes identically")
    return best[1]


def _factor_line_pair(C: ConicForm):
    """Two lines whose product is proportional to the rank-2 conic C."""
    M = [[to_mp(x) for x in row] for row in _matrix(C)]
    p, sv = kernel_vector(M)
    k = max(range(3), key=lambda i: abs(p[i]))
    i, j = [x for x in range(3) if x != k]
    a = [mp.mpc(0)] * 3
    b = [mp.mpc(0)] * 3
    a[i] = mp.mpc(1)
    b[j] = mp.mpc(1)

    def bil(x, y):
        return sum(x[r] * M[r][c] * y[c] for r in range(3) for c in range(3))

    A2, B1, C0 = bil(b, b), bil(a, b), bil(a, a)
    pts = []
    if abs(A2) <= _tol() * max(abs(B1), abs(C0), 1):
        pts.append(b)
        tau = -C0 / (2 * B1)
        pts.append([a[r] + tau * b[r] for r in range(3)])
    else:
        disc = mp.sqrt(B1 * B1 - A2 * C0)
        for sg in (1, -1):
            tau = (-B1 + sg * disc) / A2
            pts.append([a[r] + tau * b[r] for r in range(3)])
    from .numeric import cross, normalize_projective

    return tuple(normalize_projective(cross(p, x)) for x in pts)


def reducible_members(fam: TouchingFamily, bits: int = 64) -> list[ReducibleMember]:
    """Roots of the det sextic (after rotation) with multiplicities and line-pair factorizations."""
    with precision(working_bits(bits)):
        r = _choose_rotation(fam)
        sext = det_sextic(fam, r)
        fam.det_sextic = sext
        fam.rotation = r
        roots: list[tuple[object, int]] = []
        if fam.exact:
            sext = uv.trim(sext)
            if uv.degree(sext) != 6:
                raise FamilyError(f"det sextic has degree {uv.degree(sext)}")
            for factor, mult in uv.squarefree_decomposition(sext):
                if uv.degree(factor) <= 0:
                    continue
                for z, _ in certified_polynomial_roots(factor, bits):
                    roots.append((z, mult))
        else:
            coeffs = [mp.mpmathify(c) for c in sext]
            scale = max(abs(c) for c in coeffs)
            if abs(coeffs[-1]) < _tol() * scale:
                raise FamilyError("det sextic lost its degree after rotation")
            approx = mp.polyroots(list(reversed(coeffs)), maxsteps=300, extraprec=2 * mp.prec)
            roots = _cluster(approx)
        if any(m >= 3 for _, m in roots):
            raise FamilyError("root of multiplicity >= 3 in the det sextic (cusp)")
        members = []
        for lam_rot, mult in roots:
            conic = fam.member(lam_rot * r + 1, lam_rot) if not fam.exact else _member_num(fam, lam_rot * r + 1, lam_rot)
            lines = _factor_line_pair(conic)
            members.append(ReducibleMember((lam_rot * r + 1, lam_rot), mult, lines))
        fam.members = members
        return members


def _member_num(fam: TouchingFamily, lam, mu) -> ConicForm:
    conv = [ConicForm([to_mp(x) for x in c.coeffs]) for c in (fam.U, fam.V, fam.W)]
    return conv[0] * (lam * lam) + conv[1] * (2 * lam * mu) + conv[2] * (mu * mu)


def _cluster(approx) -> list[tuple[object, int]]:
    tol = mp.mpf(2) ** (-mp.prec // 5)
    out: list[list] = []
    for z in approx:
        for grp in out:
            if abs(grp[0] - z) <= tol * max(1, abs(z)):
                grp.append(z)
                break
        else:
            out.append([z])
    return [(sum(g) / len(g), len(g)) for g in out]


def match_members(fam: TouchingFamily, bts: Sequence[Bitangent], bits: int = 64) -> None:
    """Attach bitangent indices to each reducible member's two lines (certified by separation)."""
    with precision(working_bits(bits)):
        tol = mp.mpf(2) ** (-bits // 4)
        for m in fam.members:
            idx = []
            for line in m.lines:
                dists = sorted((line_distance(line, bt.line), k) for k, bt in enumerate(bts))
                if dists[0][0] > tol or (len(dists) > 1 and dists[1][0] <= tol):
                    raise FamilyError("a member line does not match a unique bitangent")
                idx.append(dists[0][1])
            if idx[0] == idx[1]:
                raise FamilyError("member splits into a double line")
            m.bitangents = tuple(sorted(idx))


# --- census -----------------------------------------------------------------------------

@dataclass
class FamilyCensus:
    kind: str
    families: list[TouchingFamily]
    pair_types: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        sizes = Counter(len(f.members) for f in self.families)
        return {
            "kind": self.kind,
            "family_count": len(self.families),
            "member_count_histogram": {str(k): v for k, v in sorted(sizes.items())},
            "pair_types": self.pair_types,
            "checks": self.checks,
        }


def pair_type(bts: Sequence[Bitangent], pair: tuple[int, int]) -> str:
    """a: both lines through the node; b: exactly one; c: neither."""
    n = sum(bts[i].through_node for i in pair)
    return {2: "a", 1: "b", 0: "c"}[n]


def enumerate_families(pq: PlaneQuartic, bts: Sequence[Bitangent], bits: int = 64) -> FamilyCensus:
    """Partition all bitangent pairs into families of touching conics."""
    n = len(bts)
    coverage: Counter = Counter()
    families: list[TouchingFamily] = []
    seen: set = set()
    node = pq.kind == "OneNode"
    for pair in combinations(range(n), 2):
        need = 2 if node and pair_type(bts, pair) == "a" else 1
        if coverage[pair] >= need:
            continue
        for fam in family_from_bitangent_pair(pq, bts[pair[0]], bts[pair[1]], bits):
            reducible_members(fam, bits)
            match_members(fam, bts, bits)
            key = fam.pair_set()
            if key in seen:
                continue
            seen.add(key)
            families.append(fam)
            for p in key:
                coverage[p] += 1
    families.sort(key=lambda f: sorted(f.pair_set()))
    census = FamilyCensus(pq.kind, families)
    all_pairs = list(combinations(range(n), 2))
    census.checks["every_pair_covered"] = all(coverage[p] >= 1 for p in all_pairs)
    census.checks["distinct_lines_in_members"] = all(_lines_distinct(f) for f in families)
    if not node:
        census.checks["family_count_63"] = len(families) == 63
        census.checks["six_members_each"] = all(len(f.members) == 6 and all(m.multiplicity == 1 for m in f.members) for f in families)
        census.checks["pairwise_disjoint"] = all(coverage[p] == 1 for p in all_pairs)
        census.checks["pairs_378"] = sum(len(f.members) for f in families) == 378 == len(all_pairs)
        census.checks["exclusion_rule"] = _exclusion_rule(families)
    else:
        types = Counter(pair_type(bts, p) for p in all_pairs)
        census.pair_types = {k: types.get(k, 0) for k in "abc"}
        disjoint = [f for f in families if all(pair_type(bts, p) == "b" for p in f.pair_set())]
        through = [f for f in families if any(pair_type(bts, p) == "a" for p in f.pair_set())]
        census.checks["pair_types_15_96_120"] = census.pair_types == {"a": 15, "b": 96, "c": 120}
        census.checks["disjoint_families_16"] = len(disjoint) == 16 and all(len(f.members) == 6 for f in disjoint)
        census.checks["node_families_30"] = len(through) == 30 and all(
            len(f.members) == 5 and sorted(m.multiplicity for m in f.members) == [1, 1, 1, 1, 2]
            and sum(pair_type(bts, p) == "c" for p in f.pair_set()) == 4
            for f in through
        )
        shared = Counter(p for f in through for p in f.pair_set() if pair_type(bts, p) == "a")
        census.checks["intersecting_pairs_15"] = len(shared) == 15 and all(v == 2 for v in shared.values())
        census.checks["double_root_is_node_pair"] = all(
            (m.multiplicity == 2) == (pair_type(bts, m.bitangents) == "a") for f in families for m in f.members
        )
        census.checks["total_families_46"] = len(families) == 46
        census.checks["b_and_c_pairs_once"] = all(coverage[p] == 1 for p in all_pairs if pair_type(bts, p) != "a")
    return census


def _lines_distinct(fam: TouchingFamily) -> bool:
    lines = [i for p in fam.pair_set() for i in p]
    return len(lines) == len(set(lines))


def _exclusion_rule(families: Sequence[TouchingFamily], limit: int | None = None) -> bool:
    """For members ab, cd, eh of one family, the family of ac (which contains bd) avoids e."""
    owner = {}
    for k, f in enumerate(families):
        for p in f.pair_set():
            owner[p] = k
    checked = 0
    for f in families:
        pairs = sorted(f.pair_set())
        for (p1, p2, p3) in combinations(pairs, 3):
            for ab, cd, eh in ((p1, p2, p3), (p2, p3, p1), (p1, p3, p2)):
                for a, b in (ab, ab[::-1]):
                    c, d = cd
                    ac = tuple(sorted((a, c)))
                    bd = tuple(sorted((b, d)))
                    k = owner[ac]
                    if owner[bd] != k:
                        return False
                    lines = {i for p in families[k].pair_set() for i in p}
                    if eh[0] in lines or eh[1] in lines:
                        return False
                    checked += 1
                    if limit and checked >= limit:
                        return True
    return True


# --- even contact -----------------------------------------------------------------------

@dataclass
class ContactCertificate:
    touches: bool
    exact: bool
    field: str
    residual: object = None
    witness: object = None

    def as_dict(self) -> dict:
        return {
            "touches": self.touches,
            "exact": self.exact,
            "field": self.field,
            "residual": None if self.residual is None else (str(self.residual) if self.exact else mp.nstr(self.residual, 5)),
        }


def touches_evenly(pq: PlaneQuartic, conic: ConicForm, bits: int = 64) -> ContactCertificate:
    """Whether q restricted to the smooth conic is a constant times a square.

    Rational conics are parameterized over Q(sqrt D) from a point on a
    coordinate line, and the test is exact; complex conics use the same
    construction in floating point with a residual bound.
    """
    from ..exactpoly.binary import BinaryForm, compose, square_decomposition
    from ..exactpoly.conic import det3
    from ..exactpoly.fields import QuadraticNumber

    M = _matrix(conic)
    exact = _is_exact(conic.coeffs)
    if exact:
        if det3(M) == 0:
            raise ValueError("touches_evenly needs a smooth conic; use reducible_members for line pairs")
        p0, D = _rational_conic_point(conic)
        if D is None:
            lift = lambda x: QuadraticNumber(x, 0, 2)  # noqa: E731  (plain rationals)
        else:
            lift = lambda x: QuadraticNumber(x, 0, D)  # noqa: E731
        p0 = [x if isinstance(x, QuadraticNumber) else lift(x) for x in p0]
        Mq = [[lift(x) for x in row] for row in M]
        images = _conic_parameterization(Mq, p0, lift)
        restricted = compose(pq.q, images)
        dec = square_decomposition(restricted)
        fld = "Q" if D is None else f"Q(sqrt({D}))"
        return ContactCertificate(dec is not None, True, fld, Fraction(0) if dec is not None else None, dec[1] if dec else None)
    with precision(working_bits(bits)):
        Mn = [[to_mp(x) for x in row] for row in M]
        scale = max(abs(x) for row in Mn for x in row)
        if abs(mp.det(mp.matrix(Mn))) <= _tol() * scale**3:
            raise ValueError("touches_evenly needs a smooth conic; use reducible_members for line pairs")
        p0 = _numeric_conic_point(Mn)
        images = _conic_parameterization(Mn, p0, lambda x: mp.mpmathify(x))
        restricted = compose(pq.q, images)
        big = max(abs(c) for c in restricted.coeffs)
        tol = mp.mpf(2) ** (-bits // 2) * big
        dec = square_decomposition(restricted, lambda c: abs(c) <= tol)
        resid = None
        if dec is not None:
            lead, g = dec
            resid = max(abs(x) for x in ((g * g) * lead - restricted).coeffs) / big
        return ContactCertificate(dec is not None, False, "C", resid, dec[1] if dec else None)


def _rational_conic_point(c: ConicForm):
    """A point of the conic over Q or Q(sqrt D): returns (point, D or None)."""
    from ..exactpoly.binary import _rational_sqrt
    from ..exactpoly.fields import QuadraticNumber

    M = _matrix(c)
    for k in range(3):
        i, j = [x for x in range(3) if x != k]
        # restrict to x_k = 0: M_ii x^2 + 2 M_ij x y + M_jj y^2
        A, B, C = M[i][i], 2 * M[i][j], M[j][j]
        pt = [Fraction(0)] * 3
        if A == 0:
            pt[i] = Fraction(1)
            return pt, None
        disc = B * B - 4 * A * C
        if disc == 0:
            continue  # tangent coordinate line; try another
        root = _rational_sqrt(disc)
        pt[j] = Fraction(1)
        if root is not None:
            pt[i] = (-B + root) / (2 * A)
            return pt, None
        pt = [QuadraticNumber(0, 0, disc)] * 3
        pt[j] = QuadraticNumber(1, 0, disc)
        pt[i] = QuadraticNumber(-B / (2 * A), Fraction(1) / (2 * A), disc)
        return pt, disc
    raise ValueError("no point found on coordinate lines")


def _numeric_conic_point(M):
    for k in range(3):
        i, j = [x for x in range(3) if x != k]
        A, B, C = M[i][i], 2 * M[i][j], M[j][j]
        pt = [mp.mpc(0)] * 3
        scale = max(abs(A), abs(B), abs(C))
        if abs(A) <= _tol() * scale:
            pt[i] = mp.mpc(1)
            return pt
        disc = B * B - 4 * A * C
        if abs(disc) <= _tol() * scale**2:
            continue
        pt[j] = mp.mpc(1)
        pt[i] = (-B + mp.sqrt(disc)) / (2 * A)
        return pt
    raise ValueError("no point found on coordinate lines")


def _conic_parameterization(M, p0, lift):
    """Degree-2 parameterization x(s,t) = C(d,d) p0 - 2 B(p0,d) d with d = s e_i + t e_j."""
    from ..exactpoly.binary import BinaryForm

    k = max(range(3), key=lambda r: abs(complex(p0[r])))
    i, j = [x for x in range(3) if x != k]
    zero = lift(0)
    # d = s e_i + t e_j; C(d,d) = M_ii s^2 + 2 M_ij s t + M_jj t^2; B(p0,d) = (M p0)_i s + (M p0)_j t
    Cdd = [M[i][i], 2 * M[i][j], M[j][j]]
    Mp = [sum((M[r][c] * p0[c] for c in range(3)), zero) for r in range(3)]
    images = []
    for r in range(3):
        # C(d,d) p0_r - 2 (Mp_i s + Mp_j t) d_r
        coeffs = [Cdd[0] * p0[r], Cdd[1] * p0[r], Cdd[2] * p0[r]]
        if r == i:
            coeffs[0] = coeffs[0] - 2 * Mp[i]
            coeffs[1] = coeffs[1] - 2 * Mp[j]
        if r == j:
            coeffs[1] = coeffs[1] - 2 * Mp[i]
            coeffs[2] = coeffs[2] - 2 * Mp[j]
        images.append(BinaryForm([zero + x for x in coeffs]))
    return images
