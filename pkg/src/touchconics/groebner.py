"""Buchberger's algorithm in lexicographic order, elimination, and basis checks.

Polynomials are ``MultiPoly`` objects; the variable tuple of the polynomials is
the variable ranking (first variable largest), so exponent tuples compare
lexicographically exactly as Python tuples do.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Iterable, Sequence

from .exactpoly import MultiPoly

log = logging.getLogger(__name__)

SQUARE_VARIABLES = ("xi", "eta", "zeta", "a", "b", "c", "d", "e")
COEFFICIENT_VARIABLES = ("a", "b", "c", "d", "e")


@dataclass(frozen=True)
class MonomialOrder:
    """Lexicographic order given by a variable ranking (largest first)."""

    ranking: tuple[str, ...]
    kind: str = "lex"

    def key(self, exps: tuple[int, ...]):
        return exps


@dataclass
class IdealBasis:
    generators: list[MultiPoly]
    order: MonomialOrder
    is_groebner: bool = False
    stats: dict = field(default_factory=dict)


def _check(polys: Iterable[MultiPoly], order: MonomialOrder) -> list[MultiPoly]:
    out = []
    for p in polys:
        if p.variables != order.ranking:
            p = p.embed(order.ranking)
        out.append(p)
    return out


def leading_exp(p: MultiPoly) -> tuple[int, ...]:
    return max(p.terms)


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def s_polynomial(f: MultiPoly, g: MultiPoly, order: MonomialOrder | None = None) -> MultiPoly:
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    ef, eg = leading_exp(f), leading_exp(g)
    cf, cg = f.terms[ef], g.terms[eg]
    m = _lcm(ef, eg)
    tf = {tuple(x - y for x, y in zip(m, ef)): Fraction(1) / cf}
    tg = {tuple(x - y for x, y in zip(m, eg)): Fraction(1) / cg}
    return f * MultiPoly(f.variables, tf) - g * MultiPoly(g.variables, tg)


def reduce(f: MultiPoly, basis: Sequence[MultiPoly], order: MonomialOrder | None = None, selection: Sequence[int] | None = None) -> MultiPoly:
    """Full normal form of ``f`` modulo ``basis``.

    ``selection`` fixes the order in which basis elements are tried as
    reducers (used to test independence of the reduction path).
    """
    leads = [(leading_exp(g), g.terms[leading_exp(g)], g) for g in basis if not g.is_zero()]
    if selection is not None:
        leads = [leads[i] for i in selection]
    p = dict(f.terms)
    rem: dict = {}
    while p:
        e = max(p)
        c = p[e]
        for le, lc, g in leads:
            if _divides(le, e):
                shift = tuple(x - y for x, y in zip(e, le))
                factor = c / lc
                for ge, gc in g.terms.items():
                    te = tuple(x + y for x, y in zip(ge, shift))
                    v = p.get(te, 0) - factor * gc
                    if v == 0:
                        p.pop(te, None)
                    else:
                        p[te] = v
                break
        else:
            rem[e] = c
            del p[e]
    return MultiPoly(f.variables, rem)


def buchberger(gens: Sequence[MultiPoly], order: MonomialOrder) -> IdealBasis:
    """Reduced Groebner basis, content-normalized with positive leading coefficients.

    Pairs are processed by the normal strategy (smallest lcm of leading
    monomials first, ties broken by generator index); pairs with coprime
    leading monomials are skipped.
    """
    G = [p.normalized() for p in _check(gens, order) if not p.is_zero()]
    if not G:
        raise ValueError("no nonzero generators")
    pairs = {(i, j) for j in range(len(G)) for i in range(j)}
    reductions = 0
    while pairs:
        i, j = min(pairs, key=lambda ij: (_lcm(leading_exp(G[ij[0]]), leading_exp(G[ij[1]])), ij[1], ij[0]))
        pairs.remove((i, j))
        ei, ej = leading_exp(G[i]), leading_exp(G[j])
        if all(x == 0 or y == 0 for x, y in zip(ei, ej)):
            continue
        r = reduce(s_polynomial(G[i], G[j]), G)
        reductions += 1
        if not r.is_zero():
            G.append(r.normalized())
            k = len(G) - 1
            pairs |= {(m, k) for m in range(k)}
    basis = _reduce_basis(G)
    log.debug("buchberger: %d generators -> %d basis elements after %d reductions", len(gens), len(basis), reductions)
    return IdealBasis(basis, order, is_groebner=True, stats={"s_reductions": reductions})


def _reduce_basis(G: list[MultiPoly]) -> list[MultiPoly]:
    # drop elements whose leading monomial is divisible by another one
    minimal: list[MultiPoly] = []
    for idx, g in enumerate(G):
        lg = leading_exp(g)
        redundant = False
        for jdx, h in enumerate(G):
            if jdx == idx:
                continue
            lh = leading_exp(h)
            if _divides(lh, lg) and (lh != lg or jdx < idx):
                redundant = True
                break
        if not redundant:
            minimal.append(g)
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        lg = leading_exp(g)
        tail = MultiPoly(g.variables, {e: c for e, c in g.terms.items() if e != lg})
        r = reduce(tail, others)
        reduced.append((MultiPoly(g.variables, {lg: g.terms[lg]}) + r).normalized())
    reduced.sort(key=leading_exp, reverse=True)
    return reduced


def is_groebner(polys: Sequence[MultiPoly], order: MonomialOrder) -> tuple[bool, list[tuple[int, int, MultiPoly]]]:
    """Check that every S-polynomial reduces to zero; return failures as (i, j, remainder)."""
    P = _check(polys, order)
    failures = []
    for j in range(len(P)):
        for i in range(j):
            r = reduce(s_polynomial(P[i], P[j]), P)
            if not r.is_zero():
                failures.append((i, j, r))
    return not failures, failures


def elimination_ideal(basis: IdealBasis, drop: Iterable[str]) -> list[MultiPoly]:
    drop = list(drop)
    ranking = basis.order.ranking
    if set(drop) - set(ranking):
        raise ValueError(f"unknown variables {sorted(set(drop) - set(ranking))}")
    if set(ranking[: len(drop)]) != set(drop):
        raise ValueError("dropped variables must be ranked highest in the lex order")
    if not basis.is_groebner:
        raise ValueError("elimination needs a verified Groebner basis")
    return [g for g in basis.generators if g.free_of(drop)]


def same_up_to_scalar(p: MultiPoly, q: MultiPoly) -> bool:
    return p.normalized() == q.normalized()


def not_in_ideal(basis: IdealBasis, polys: Iterable[MultiPoly]) -> list[MultiPoly]:
    """Return the members of ``polys`` that do NOT reduce to zero modulo the basis."""
    out = []
    for p in _check(polys, basis.order):
        if not reduce(p, basis.generators).is_zero():
            out.append(p)
    return out


# --- the square-locus data ------------------------------------------------------

def square_generators() -> list[MultiPoly]:
    """a - xi^2, b - 2 xi eta, c - (2 xi zeta + eta^2), d - 2 eta zeta, e - zeta^2."""
    xi, eta, zeta, a, b, c, d, e = MultiPoly.gens(SQUARE_VARIABLES)
    return [a - xi**2, b - 2 * xi * eta, c - (2 * xi * zeta + eta**2), d - 2 * eta * zeta, e - zeta**2]


def load_basis_file(path=None) -> list[MultiPoly]:
    if path is None:
        text = resources.files("touchconics.data").joinpath("square_basis.txt").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    polys = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            polys.append(MultiPoly.parse(line, SQUARE_VARIABLES))
    return polys


def square_eliminants(path=None) -> list[MultiPoly]:
    """The polynomials of the bundled basis free of xi, eta, zeta (in a..e only)."""
    out = []
    for p in load_basis_file(path):
        if p.free_of(("xi", "eta", "zeta")):
            out.append(_restrict_vars(p))
    return out


def _restrict_vars(p: MultiPoly) -> MultiPoly:
    idx = [p.variables.index(v) for v in COEFFICIENT_VARIABLES]
    return MultiPoly(COEFFICIENT_VARIABLES, {tuple(e[i] for i in idx): c for e, c in p.terms.items()})


@dataclass
class VerificationReport:
    passed: bool
    basis_size: int
    s_pairs_checked: int
    failing_pair: tuple[int, int] | None = None
    failing_remainder: str | None = None
    generators_in_basis_ideal: bool = True
    basis_in_generator_ideal: bool = True
    regenerated: dict | None = None

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "basis_size": self.basis_size,
            "s_pairs_checked": self.s_pairs_checked,
            "failing_pair": list(self.failing_pair) if self.failing_pair else None,
            "failing_remainder": self.failing_remainder,
            "generators_in_basis_ideal": self.generators_in_basis_ideal,
            "basis_in_generator_ideal": self.basis_in_generator_ideal,
            "regenerated": self.regenerated,
        }


def verify_square_basis(path=None, regenerate: bool = False) -> VerificationReport:
    """Check the bundled basis: S-pairs, ideal equality with the generators, optional regeneration."""
    order = MonomialOrder(SQUARE_VARIABLES)
    listed = load_basis_file(path)
    ok, failures = is_groebner(listed, order)
    n = len(listed)
    report = VerificationReport(passed=ok, basis_size=n, s_pairs_checked=n * (n - 1) // 2)
    if failures:
        i, j, r = failures[0]
        report.failing_pair = (i + 1, j + 1)
        report.failing_remainder = r.to_text()
    gens = square_generators()
    listed_basis = IdealBasis(listed, order, is_groebner=ok)
    report.generators_in_basis_ideal = not not_in_ideal(listed_basis, gens)
    computed = buchberger(gens, order)
    report.basis_in_generator_ideal = not not_in_ideal(computed, listed)
    report.passed = ok and report.generators_in_basis_ideal and report.basis_in_generator_ideal
    if regenerate:
        mine = elimination_ideal(computed, ("xi", "eta", "zeta"))
        theirs = [p for p in listed if p.free_of(("xi", "eta", "zeta"))]
        mine_n = {p.normalized() for p in mine}
        theirs_n = {p.normalized() for p in theirs}
        report.regenerated = {
            "eliminants_computed": len(mine),
            "eliminants_listed": len(theirs),
            "full_basis_computed": len(computed.generators),
            "only_computed": sorted(p.to_text() for p in mine_n - theirs_n),
            "only_listed": sorted(p.to_text() for p in theirs_n - mine_n),
            "match": mine_n == theirs_n,
            "full_basis_match": {p.normalized() for p in computed.generators} == {p.normalized() for p in listed},
        }
        report.passed = report.passed and report.regenerated["match"]
    return report
