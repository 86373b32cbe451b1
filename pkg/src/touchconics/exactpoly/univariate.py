"""Dense univariate polynomials over the rationals.

A polynomial is a list of coefficients, lowest degree first.  The empty list
is the zero polynomial.  Helpers here are exact; they back the resultant,
square-free and Sturm machinery used across the package.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

Poly = list


def trim(p: Sequence) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def add(p: Sequence, q: Sequence) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p: Sequence, q: Sequence) -> Poly:
    return add(p, [-c for c in q])


def scale(p: Sequence, c) -> Poly:
    return trim([c * x for x in p])


def mul(p: Sequence, q: Sequence) -> Poly:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def power(p: Sequence, n: int) -> Poly:
    out: Poly = [Fraction(1)]
    for _ in range(n):
        out = mul(out, p)
    return out


def derivative(p: Sequence) -> Poly:
    return trim([i * p[i] for i in range(1, len(p))])


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def divmod_poly(p: Sequence, q: Sequence) -> tuple[Poly, Poly]:
    p = [Fraction(c) for c in trim(p)]
    q = [Fraction(c) for c in trim(q)]
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(q):
        return [], p
    quot = [Fraction(0)] * (len(p) - len(q) + 1)
    lead = q[-1]
    rem = p[:]
    for k in range(len(p) - len(q), -1, -1):
        c = rem[k + len(q) - 1] / lead
        quot[k] = c
        if c:
            for j, b in enumerate(q):
                rem[k + j] -= c * b
    return trim(quot), trim(rem[: len(q) - 1])


def exact_div(p: Sequence, q: Sequence) -> Poly:
    quot, rem = divmod_poly(p, q)
    if rem:
        raise ArithmeticError("polynomial division is not exact")
    return quot


def monic(p: Sequence) -> Poly:
    p = trim(p)
    if not p:
        return []
    lead = Fraction(p[-1])
    return [Fraction(c) / lead for c in p]


def primitive(p: Sequence) -> Poly:
    """Integer polynomial with coprime coefficients and positive leading term."""
    p = [Fraction(c) for c in trim(p)]
    if not p:
        return []
    den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in p), 1)
    ints = [int(c * den) for c in p]
    g = reduce(gcd, (abs(c) for c in ints))
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _prem(p: list[int], q: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials."""
    r = list(p)
    dq = len(q) - 1
    lq = q[-1]
    while len(r) - 1 >= dq and r:
        lr = r[-1]
        shift = len(r) - 1 - dq
        r = [c * lq for c in r]
        for j, b in enumerate(q):
            r[shift + j] -= lr * b
        r = trim(r)
    return r


def gcd_poly(p: Sequence, q: Sequence) -> Poly:
    """Monic gcd via the primitive pseudo-remainder sequence."""
    a, b = primitive(p), primitive(q)
    if not a:
        return monic(b)
    if not b:
        return monic(a)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, primitive(r) if r else []
    return monic(a)


def squarefree_part(p: Sequence) -> Poly:
    p = trim(p)
    if len(p) <= 1:
        return monic(p) if p else []
    return monic(exact_div(p, gcd_poly(p, derivative(p))))


def squarefree_decomposition(p: Sequence) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic square-free factors with multiplicities."""
    p = monic(p)
    if len(p) <= 1:
        return []
    out = []
    dp = derivative(p)
    a = gcd_poly(p, dp)
    b = exact_div(p, a)
    c = exact_div(dp, a)
    d = sub(c, derivative(b))
    i = 1
    while len(b) > 1:
        a = gcd_poly(b, d)
        b = exact_div(b, a)
        if len(a) > 1:
            out.append((a, i))
        if len(b) <= 1:
            break
        c = exact_div(d, a)
        d = sub(c, derivative(b))
        i += 1
    return out


def interpolate(xs: Sequence, ys: Sequence) -> Poly:
    """Newton interpolation through (xs[i], ys[i]) with distinct xs."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly: Poly = [coef[-1]]
    for i in range(n - 2, -1, -1):
        poly = add(mul(poly, [-Fraction(xs[i]), Fraction(1)]), [coef[i]])
    return trim(poly)


def det(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        pv = m[col][col]
        result *= pv
        for r in range(col + 1, n):
            f = m[r][col] / pv
            if f:
                row, prow = m[r], m[col]
                for k in range(col + 1, n):
                    row[k] -= f * prow[k]
    return sign * result


def sylvester_matrix(p_high: Sequence, q_high: Sequence) -> list[list]:
    """Sylvester matrix for coefficient lists given highest degree first.

    The formal degrees are len-1; leading zeros are kept, which makes the
    determinant commute with specialization of coefficients.
    """
    m, n = len(p_high) - 1, len(q_high) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(p_high) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(q_high) + [0] * (size - n - 1 - i))
    return rows


def resultant(p: Sequence, q: Sequence) -> Fraction:
    """Resultant of two univariate polynomials (low-first lists, true degrees)."""
    p, q = trim(p), trim(q)
    if not p or not q:
        return Fraction(0)
    if len(p) == 1 and len(q) == 1:
        return Fraction(1)
    return det(sylvester_matrix(list(reversed(p)), list(reversed(q))))


# --- real roots ---------------------------------------------------------------

def sturm_sequence(p: Sequence) -> list[Poly]:
    p = [Fraction(c) for c in trim(p)]
    seq = [p, derivative(p)]
    while seq[-1] and len(seq[-1]) > 1:
        _, r = divmod_poly(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(seq: list[Poly], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in (a, b] of a square-free polynomial."""
    va = _sign_changes(evaluate(s, a) for s in seq)
    vb = _sign_changes(evaluate(s, b) for s in seq)
    return va - vb


def root_bound(p: Sequence) -> Fraction:
    p = [Fraction(c) for c in trim(p)]
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def count_real_roots(p: Sequence) -> int:
    """Distinct real roots, by Sturm's theorem."""
    sf = squarefree_part(p)
    if len(sf) <= 1:
        return 0
    bound = root_bound(sf)
    return sturm_count(sturm_sequence(sf), -bound, bound)


def isolate_real_roots(p: Sequence, width: Fraction = Fraction(1, 2**64)) -> list[tuple[Fraction, Fraction, int]]:
    """Disjoint rational intervals (lo, hi], one per distinct real root, with multiplicity.

    Intervals are bisected until narrower than ``width``; exact rational roots
    come back as degenerate intervals (lo == hi).
    """
    p = trim(p)
    if not p:
        raise ValueError("cannot isolate roots of the zero polynomial")
    out = []
    for factor, mult in squarefree_decomposition(p):
        for lo, hi in _isolate_squarefree(factor, width):
            out.append((lo, hi, mult))
    out.sort(key=lambda r: (r[0], r[1]))
    return out


def _isolate_squarefree(f: Poly, width: Fraction) -> list[tuple[Fraction, Fraction]]:
    seq = sturm_sequence(f)
    bound = root_bound(f)
    stack = [(-bound, bound)]
    found = []
    while stack:
        a, b = stack.pop()
        n = sturm_count(seq, a, b)
        if n == 0:
            continue
        if n == 1:
            found.append(_refine(f, a, b, width))
            continue
        mid = (a + b) / 2
        stack.append((a, mid))
        stack.append((mid, b))
    return found


def _refine(f: Poly, a: Fraction, b: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect (a, b] holding one simple root down to the requested width."""
    fb = evaluate(f, b)
    if fb == 0:
        return b, b
    # the root is simple and unique in (a, b], so the sign at b decides sides
    while b - a > width:
        mid = (a + b) / 2
        fm = evaluate(f, mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == (fb > 0):
            b, fb = mid, fm
        else:
            a = mid
    return a, b


def rational_root_candidates_from_numeric(p: Sequence, approx_roots, max_den: int = 10**6) -> list[Fraction]:
    """Exact rational roots recovered from numerical approximations."""
    found = []
    for z in approx_roots:
        re = float(getattr(z, "real", z))
        im = float(getattr(z, "imag", 0))
        if abs(im) > 1e-8 * max(1.0, abs(re)):
            continue
        cand = Fraction(re).limit_denominator(max_den)
        if evaluate(p, cand) == 0 and cand not in found:
            found.append(cand)
    return found
