"""Binary forms in (s, t) and the perfect-square test."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Callable, Sequence

from . import univariate as uv
from .multipoly import MultiPoly


class BinaryForm:
    """c[0] s^d + c[1] s^(d-1) t + ... + c[d] t^d.

    Coefficients may be exact rationals or any field-like values.  Zero
    coefficients at either end are allowed; the formal degree is kept.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        if len(coeffs) == 0:
            raise ValueError("a binary form needs at least one coefficient")
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, degree: int) -> BinaryForm:
        return cls([Fraction(0)] * (degree + 1))

    @classmethod
    def from_multipoly(cls, p: MultiPoly, s: str = "s", t: str = "t", degree: int | None = None) -> BinaryForm:
        if set(p.variables) - {s, t}:
            extra = [v for v in p.variables if v not in (s, t)]
            if not p.free_of(extra):
                raise ValueError("polynomial involves variables other than s, t")
        if not p.is_homogeneous():
            raise ValueError("binary forms must be homogeneous")
        d = p.total_degree() if degree is None else degree
        if d < 0:
            d = 0
        si, ti = p.variables.index(s), p.variables.index(t)
        coeffs = [Fraction(0)] * (d + 1)
        for e, c in p.terms.items():
            coeffs[e[ti]] = c
        return cls(coeffs)

    def to_multipoly(self, variables: Sequence[str] = ("s", "t")) -> MultiPoly:
        d = self.degree
        return MultiPoly(variables, {(d - i, i): c for i, c in enumerate(self.coeffs)})

    def is_zero(self, is_zero: Callable | None = None) -> bool:
        test = is_zero or (lambda c: c == 0)
        return all(test(c) for c in self.coeffs)

    def __add__(self, other: BinaryForm) -> BinaryForm:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return BinaryForm([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> BinaryForm:
        return BinaryForm([-c for c in self.coeffs])

    def __sub__(self, other: BinaryForm) -> BinaryForm:
        return self + (-other)

    def __mul__(self, other) -> BinaryForm:
        if not isinstance(other, BinaryForm):
            return BinaryForm([c * other for c in self.coeffs])
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return BinaryForm(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, BinaryForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, s, t):
        d = self.degree
        total = 0
        for i, c in enumerate(self.coeffs):
            total = total + c * s ** (d - i) * t ** i
        return total

    def map(self, fn: Callable) -> BinaryForm:
        return BinaryForm([fn(c) for c in self.coeffs])

    def dehomogenized(self) -> list:
        """Univariate polynomial in s at t = 1, lowest degree first."""
        return list(reversed(self.coeffs))

    def divide_linear(self, lin: BinaryForm) -> tuple[BinaryForm, object]:
        """Divide by a linear form; return (quotient, remainder value).

        The remainder is the form evaluated at the root of ``lin`` scaled so it
        vanishes exactly when ``lin`` divides ``self``.
        """
        if lin.degree != 1:
            raise ValueError("divisor must be linear")
        a, b = lin.coeffs
        c = self.coeffs
        d = self.degree
        if d == 0:
            return BinaryForm([0 * c[0]]), c[0]
        # synthetic division in whichever chart has the larger coefficient
        if _magnitude(a) >= _magnitude(b):
            q = [c[0] / a]
            for k in range(1, d):
                q.append((c[k] - b * q[-1]) / a)
            rem = c[d] - b * q[-1]
        else:
            q_rev = [c[d] / b]
            for k in range(d - 1, 0, -1):
                q_rev.append((c[k] - a * q_rev[-1]) / b)
            q = list(reversed(q_rev))
            rem = c[0] - a * q[0]
        return BinaryForm(q), rem

    def __repr__(self):
        return f"BinaryForm({list(self.coeffs)!r})"

    def to_text(self) -> str:
        return self.to_multipoly().to_text()


def _magnitude(x):
    try:
        return abs(x)
    except TypeError:
        return abs(complex(x))


def _rational_sqrt(c: Fraction) -> Fraction | None:
    c = Fraction(c)
    if c < 0:
        return None
    n, d = isqrt(c.numerator), isqrt(c.denominator)
    if n * n == c.numerator and d * d == c.denominator:
        return Fraction(n, d)
    return None


def square_root_series(coeffs: Sequence, lead_root=None) -> tuple[int, list, object]:
    """Formal square root of a coefficient sequence.

    Returns (shift, g, leading_value) where the first nonzero coefficient sits
    at index 2*shift and g is the unique candidate with g[0] == 1 such that
    leading_value * (g shifted)^2 matches the first half of the coefficients.
    No verification happens here.
    """
    first = next(i for i, c in enumerate(coeffs) if c != 0)
    if first % 2:
        raise ValueError("odd vanishing order")
    lead = coeffs[first]
    q = [c / lead for c in coeffs[first:]]
    k = (len(coeffs) - 1 - first) // 2
    g = [q[0] / q[0]]
    for j in range(1, k + 1):
        acc = q[j]
        for a in range(1, j):
            acc = acc - g[a] * g[j - a]
        g.append(acc / 2)
    return first // 2, g, lead


def square_decomposition(q: BinaryForm, is_zero: Callable | None = None):
    """Write q = c * g^2 with g's first nonzero coefficient equal to 1.

    Returns (c, g) or None.  ``is_zero`` decides whether residual coefficients
    vanish; by default this is exact comparison, so the test is exact for
    rational or algebraic coefficients.  The zero form returns (0, zero form).
    """
    test = is_zero or (lambda c: c == 0)
    d = q.degree
    if d % 2:
        raise ValueError("perfect-square test needs even degree")
    k = d // 2
    if all(test(c) for c in q.coeffs):
        return q.coeffs[0] * 0, BinaryForm.zero(k)
    coeffs = list(q.coeffs)
    first = next(i for i, c in enumerate(coeffs) if not test(c))
    if first % 2:
        return None
    coeffs = [0 * coeffs[first] if i < first else c for i, c in enumerate(coeffs)]
    shift, g_tail, lead = square_root_series(coeffs)
    g = [0 * lead] * shift + g_tail
    g = g + [0 * lead] * (k + 1 - len(g))
    gform = BinaryForm(g[: k + 1])
    residual = (gform * gform) * lead - BinaryForm(coeffs)
    if not all(test(c) for c in residual.coeffs):
        return None
    for i in range(first):
        if not test(q.coeffs[i]):
            return None
    return lead, gform


def perfect_square_witness(q: BinaryForm) -> BinaryForm | None:
    """Exact rational g with g^2 = q, first nonzero coefficient positive."""
    if q.degree % 2:
        raise ValueError("perfect-square test needs even degree")
    dec = square_decomposition(BinaryForm([Fraction(c) for c in q.coeffs]))
    if dec is None:
        return None
    lead, g = dec
    if lead == 0:
        return g
    root = _rational_sqrt(lead)
    if root is None:
        return None
    return g * root


def is_square_by_gcd(q: BinaryForm) -> bool:
    """Cross-check: q is a square up to a constant iff every root has even multiplicity."""
    if all(c == 0 for c in q.coeffs):
        return True
    d = q.degree
    poly = q.dehomogenized()
    deg = uv.degree(poly)
    if (d - deg) % 2:
        return False  # odd multiplicity at infinity
    if deg <= 0:
        return True
    return all(m % 2 == 0 for _, m in uv.squarefree_decomposition(poly))


def resultant(p: BinaryForm, q: BinaryForm):
    """Sylvester resultant of two binary forms using their formal degrees."""
    if p.degree == 0 and q.degree == 0:
        return Fraction(1)
    if all(c == 0 for c in p.coeffs) and all(c == 0 for c in q.coeffs):
        raise ValueError("resultant of two zero forms")
    return uv.det(uv.sylvester_matrix(p.coeffs, q.coeffs))


def discriminant_quadratic(q: BinaryForm):
    a, b, c = q.coeffs
    return b * b - 4 * a * c


def t_order(b: BinaryForm, is_zero: Callable | None = None) -> int:
    """Multiplicity of the root (1:0), i.e. the power of t dividing b."""
    test = is_zero or (lambda c: c == 0)
    k = 0
    for c in reversed(b.coeffs):
        if not test(c):
            break
        k += 1
    return k


def divides(q: BinaryForm, p: BinaryForm) -> bool:
    """Exact test whether the binary form q divides p."""
    if q.is_zero():
        return p.is_zero()
    if p.is_zero():
        return True
    if t_order(q) > t_order(p):
        return False
    _, rem = uv.divmod_poly(uv.trim(p.dehomogenized()), uv.trim(q.dehomogenized()))
    return not rem


def compose(f: MultiPoly, images: Sequence[BinaryForm]) -> BinaryForm:
    """Substitute binary forms (all of one degree) for the variables of a homogeneous f."""
    if not f.is_homogeneous():
        raise ValueError("composition requires a homogeneous form")
    if len(images) != len(f.variables):
        raise ValueError("one image per variable is required")
    d = max(f.total_degree(), 0)
    k = images[0].degree
    zero = 0 * images[0].coeffs[0]
    out = [zero] * (d * k + 1)
    one = BinaryForm([zero + 1])
    cache: list[dict[int, BinaryForm]] = [{0: one} for _ in images]
    for e, c in f.terms.items():
        term = one
        for i, m in enumerate(e):
            if m:
                p = cache[i].get(m)
                if p is None:
                    p = cache[i].get(m - 1, None)
                    p = (p if p is not None else _bpow(images[i], m - 1)) * images[i]
                    cache[i][m] = p
                term = term * p
        for j, v in enumerate(term.coeffs):
            out[j] = out[j] + c * v
    return BinaryForm(out)


def restrict_to_line(f: MultiPoly, line) -> BinaryForm:
    """Compose a homogeneous ternary (or any n-ary) form with a linear map of (s, t).

    ``line`` is either three coefficients (l0, l1, l2) of a line in P^2 or a
    parameterization: a sequence of pairs (alpha_i, beta_i) meaning
    x_i = alpha_i s + beta_i t.
    """
    if not f.is_homogeneous():
        raise ValueError("restriction requires a homogeneous form")
    param = _as_parameterization(f, line)
    return compose(f, [BinaryForm([a, b]) for a, b in param])


def _bpow(b: BinaryForm, k: int) -> BinaryForm:
    out = BinaryForm([Fraction(1)])
    for _ in range(k):
        out = out * b
    return out


def _as_parameterization(f: MultiPoly, line):
    items = list(line)
    if items and isinstance(items[0], (tuple, list)):
        if len(items) != len(f.variables):
            raise ValueError("parameterization length must match the number of variables")
        return [tuple(p) for p in items]
    if len(f.variables) != 3 or len(items) != 3:
        raise ValueError("line coefficients require a ternary form")
    return line_parameterization(items)


def line_parameterization(line: Sequence) -> list[tuple]:
    """Degree-1 parameterization (s, t) -> point of the line l0 x0 + l1 x1 + l2 x2 = 0.

    Solves for the coordinate with the first nonzero coefficient (largest in
    magnitude for inexact input), the remaining two coordinates being s and t.
    """
    l = [Fraction(c) if isinstance(c, int) else c for c in line]
    if all(c == 0 for c in l):
        raise ValueError("zero line")
    exact = all(isinstance(c, (int, Fraction)) for c in l)
    if exact:
        k = next(i for i, c in enumerate(l) if c != 0)
    else:
        k = max(range(3), key=lambda i: _magnitude(l[i]))
    others = [i for i in range(3) if i != k]
    one, zero = (Fraction(1), Fraction(0)) if exact else (l[k] / l[k], 0 * l[k])
    param: list = [None, None, None]
    param[others[0]] = (one, zero)
    param[others[1]] = (zero, one)
    param[k] = (-l[others[0]] / l[k], -l[others[1]] / l[k])
    return param
