"""Small numeric helpers shared by the plane-quartic modules (mpmath based)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from mpmath import iv, mp

from ..exactpoly import MultiPoly
from ..exactpoly.intervals import to_iv, to_mp


class CompiledPoly:
    """A MultiPoly prepared for repeated floating / interval evaluation."""

    def __init__(self, p: MultiPoly):
        self.poly = p
        self.terms = sorted(p.terms.items())
        self._cache: dict = {}

    def _coeffs(self, kind: str):
        key = (kind, mp.prec, iv.prec)
        c = self._cache.get(key)
        if c is None:
            conv = to_mp if kind == "mp" else to_iv
            c = [(conv(v), e) for e, v in self.terms]
            self._cache[key] = c
        return c

    def __call__(self, point: Sequence, kind: str = "mp"):
        zero = mp.mpc(0) if kind == "mp" else iv.mpc(0, 0)
        powers = [[1, x] for x in point]
        total = zero
        for c, e in self._coeffs(kind):
            term = c
            for i, k in enumerate(e):
                if k:
                    pw = powers[i]
                    while len(pw) <= k:
                        pw.append(pw[-1] * point[i])
                    term = term * pw[k]
            total = total + term
        return total


def solve_least_squares(rows: Sequence[Sequence], rhs: Sequence):
    """Least-squares solution and relative residual of a complex linear system."""
    A = mp.matrix([[mp.mpmathify(x) for x in r] for r in rows])
    b = mp.matrix([mp.mpmathify(x) for x in rhs])
    m, n = A.rows, A.cols
    # normal equations with conjugate transpose; sizes here are tiny
    AH = A.transpose_conj()
    x = mp.lu_solve(AH * A, AH * b)
    r = A * x - b
    scale = max(mp.norm(b), max(abs(A[i, j]) for i in range(m) for j in range(n)) * max(1, mp.norm(x)))
    return list(x), (mp.norm(r) / scale if scale else mp.norm(r))


def kernel_vector(rows: Sequence[Sequence]):
    """Unit vector spanning the numerical kernel of a (rank n-1) complex matrix, via SVD."""
    A = mp.matrix([[mp.mpmathify(x) for x in r] for r in rows])
    U, S, V = mp.svd_c(A)
    n = A.cols
    v = [V[n - 1, j].conjugate() for j in range(n)]
    return v, S


def cross(u: Sequence, v: Sequence) -> list:
    return [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]


def norm(v: Sequence):
    return mp.sqrt(sum(abs(x) ** 2 for x in v))


def line_distance(l1: Sequence, l2: Sequence):
    """Projective distance |l1 x l2| / (|l1| |l2|) between two lines (or points)."""
    return norm(cross(l1, l2)) / (norm(l1) * norm(l2))


def normalize_projective(v: Sequence) -> list:
    """Scale so the entry of largest modulus is 1 (ties: lowest index)."""
    k = max(range(len(v)), key=lambda i: (abs(v[i]), -i))
    return [x / v[k] for x in v]


def canonical_key(v: Sequence, digits: int = 12):
    """Deterministic sort key for a projective vector."""
    w = _first_significant(v)
    return tuple((round(float(x.real), digits), round(float(x.imag), digits)) for x in (mp.mpmathify(y) for y in w))


def _first_significant(v: Sequence) -> list:
    big = max(abs(x) for x in v)
    tol = big * mp.mpf(2) ** (-mp.prec // 3)
    k = next(i for i, x in enumerate(v) if abs(x) > tol)
    return [x / v[k] for x in v]


def as_fraction(x, max_den: int = 10**12) -> Fraction | None:
    """Rational guess for a numerically real value (None when clearly complex)."""
    x = mp.mpmathify(x)
    if abs(mp.im(x)) > mp.mpf(2) ** (-mp.prec // 2) * max(1, abs(x)):
        return None
    return Fraction(str(mp.nstr(mp.re(x), mp.dps, min_fixed=-mp.inf, max_fixed=mp.inf))).limit_denominator(max_den)
