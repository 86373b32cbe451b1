"""Sparse multivariate polynomials with exact (or duck-typed) coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Callable, Iterable, Mapping, Sequence


class PolyParseError(ValueError):
    """Raised for text that does not follow the polynomial grammar."""


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class MultiPoly:
    """A polynomial in a fixed, ordered list of variables.

    ``terms`` maps exponent tuples to nonzero coefficients.  Coefficients are
    normally ``Fraction`` or ``int`` but any field-like type works (the
    numerical parts of the package evaluate the same objects over ``mpc``).
    Instances are treated as immutable.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple[int, ...], object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != n:
                    raise ValueError(f"exponent {exps} does not match {n} variables")
                if c != 0:
                    clean[tuple(exps)] = c
        self.terms = clean

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, variables: Sequence[str]) -> MultiPoly:
        return cls(variables)

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> MultiPoly:
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> MultiPoly:
        i = list(variables).index(name)
        exps = [0] * len(variables)
        exps[i] = 1
        return cls(variables, {tuple(exps): Fraction(1)})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> list[MultiPoly]:
        return [cls.var(variables, v) for v in variables]

    @classmethod
    def parse(cls, text: str, variables: Sequence[str] | None = None) -> MultiPoly:
        return _Parser(text, variables).parse()

    # basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.variables), 0)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var: str) -> int:
        i = self.variables.index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def free_of(self, names: Iterable[str]) -> bool:
        idx = [self.variables.index(v) for v in names]
        return all(e[i] == 0 for e in self.terms for i in idx)

    def sorted_terms(self):
        """Terms in the canonical (graded lexicographic, descending) order."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        return MultiPoly.constant(self.variables, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if other == 0:
                return MultiPoly(self.variables)
            return MultiPoly(self.variables, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.variables, out)

    def __rmul__(self, other):
        if isinstance(other, MultiPoly):
            return other.__mul__(self)
        return MultiPoly(self.variables, {e: other * c for e, c in self.terms.items()})

    def __truediv__(self, scalar):
        if isinstance(scalar, MultiPoly):
            raise TypeError("use divide_exact for polynomial division")
        if isinstance(scalar, int):
            scalar = Fraction(scalar)
        return MultiPoly(self.variables, {e: c / scalar for e, c in self.terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.constant(self.variables, Fraction(1))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        return self == MultiPoly.constant(self.variables, other)

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # calculus and substitution ------------------------------------------
    def diff(self, var: str) -> MultiPoly:
        i = self.variables.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPoly(self.variables, out)

    def gradient(self) -> list[MultiPoly]:
        return [self.diff(v) for v in self.variables]

    def evaluate(self, point: Mapping[str, object] | Sequence[object]):
        """Evaluate at a point; values may be of any ring type."""
        if isinstance(point, Mapping):
            vals = [point[v] for v in self.variables]
        else:
            vals = list(point)
        if len(vals) != len(self.variables):
            raise ValueError("point has wrong length")
        powers: list[dict[int, object]] = [{0: 1} for _ in vals]
        total = 0
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    p = powers[i].get(k)
                    if p is None:
                        p = vals[i] ** k
                        powers[i][k] = p
                    term = term * p
            total = total + term
        return total

    def substitute(self, mapping: Mapping[str, MultiPoly], target_vars: Sequence[str] | None = None) -> MultiPoly:
        """Replace variables by polynomials (all in ``target_vars``).

        Variables absent from ``mapping`` must themselves belong to the target
        variable list and are kept.
        """
        if target_vars is None:
            target_vars = next(iter(mapping.values())).variables if mapping else self.variables
        target_vars = tuple(target_vars)
        images = []
        for v in self.variables:
            if v in mapping:
                img = mapping[v]
                if not isinstance(img, MultiPoly):
                    img = MultiPoly.constant(target_vars, img)
                images.append(img)
            else:
                images.append(MultiPoly.var(target_vars, v))
        cache: list[dict[int, MultiPoly]] = [{} for _ in images]
        one = MultiPoly.constant(target_vars, Fraction(1))
        result = MultiPoly(target_vars)
        for e, c in self.terms.items():
            term = one * c
            for i, k in enumerate(e):
                if k:
                    p = cache[i].get(k)
                    if p is None:
                        p = images[i] ** k
                        cache[i][k] = p
                    term = term * p
            result = result + term
        return result

    def embed(self, variables: Sequence[str]) -> MultiPoly:
        """Re-express in a larger (or reordered) variable list."""
        variables = tuple(variables)
        pos = [variables.index(v) if v in variables else None for v in self.variables]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for v, i, k in zip(self.variables, pos, e):
                if k and i is None:
                    raise ValueError(f"variable {v} missing from target")
                if i is not None:
                    ne[i] = k
            out[tuple(ne)] = c
        return MultiPoly(variables, out)

    def coefficients_in(self, var: str) -> dict[int, MultiPoly]:
        """Split as sum_k var^k * c_k; the c_k keep the full variable list."""
        i = self.variables.index(var)
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            parts.setdefault(k, {})[tuple(ne)] = c
        return {k: MultiPoly(self.variables, t) for k, t in parts.items()}

    def map_coefficients(self, fn: Callable[[object], object]) -> MultiPoly:
        return MultiPoly(self.variables, {e: fn(c) for e, c in self.terms.items()})

    # normalization --------------------------------------------------------
    def leading(self, key=None):
        """(exponent, coefficient) of the largest term under ``key``."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = key or _grlex_key
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def normalized(self) -> MultiPoly:
        """Clear denominators, divide by content, make the leading coefficient positive."""
        if not self.terms:
            return self
        coeffs = [Fraction(c) for c in self.terms.values()]
        den = reduce(_lcm, (c.denominator for c in coeffs), 1)
        nums = [int(c * den) for c in coeffs]
        cont = reduce(gcd, (abs(n) for n in nums))
        scale = Fraction(den, cont)
        _, lc = self.leading()
        if lc < 0:
            scale = -scale
        return MultiPoly(self.variables, {e: Fraction(c) * scale for e, c in self.terms.items()})

    def integer_scaled(self) -> tuple[MultiPoly, Fraction]:
        """Return (p, k) with p = k*self having coprime integer coefficients."""
        coeffs = [Fraction(c) for c in self.terms.values()]
        den = reduce(_lcm, (c.denominator for c in coeffs), 1)
        nums = [int(c * den) for c in coeffs] or [1]
        cont = reduce(gcd, (abs(n) for n in nums)) or 1
        k = Fraction(den, cont)
        return MultiPoly(self.variables, {e: int(Fraction(c) * k) for e, c in self.terms.items()}), k

    # text ---------------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            c = Fraction(c) if isinstance(c, int) else c
            neg = c < 0
            mag = -c if neg else c
            if mono:
                body = mono if mag == 1 else f"{_fmt_coeff(mag)}*{mono}"
            else:
                body = _fmt_coeff(mag)
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __str__(self):
        try:
            return self.to_text()
        except TypeError:
            return repr(self)

    def __repr__(self):
        return f"MultiPoly({list(self.variables)!r}, {self.terms!r})"


def _fmt_coeff(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class _Parser:
    def __init__(self, text: str, variables: Sequence[str] | None):
        self.text = text
        self.tokens: list[tuple[str, str]] = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                break
            num, ident, sym = m.groups()
            if num is not None:
                self.tokens.append(("num", num))
            elif ident is not None:
                self.tokens.append(("id", ident))
            else:
                if sym not in "+-*/^()":
                    raise PolyParseError(f"unexpected character {sym!r} in {self.text!r}")
                self.tokens.append(("op", sym))
            pos = m.end()
        if variables is None:
            names = sorted({v for k, v in self.tokens if k == "id"}, key=_natural_key)
            variables = names
        self.variables = tuple(variables)
        unknown = {v for k, v in self.tokens if k == "id"} - set(self.variables)
        if unknown:
            raise PolyParseError(f"unknown variables {sorted(unknown)} in {self.text!r}")
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> MultiPoly:
        if not self.tokens:
            raise PolyParseError("empty polynomial text")
        p = self.expr()
        if self.i != len(self.tokens):
            raise PolyParseError(f"trailing input at token {self.peek()[1]!r} in {self.text!r}")
        return p

    def expr(self) -> MultiPoly:
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> MultiPoly:
        p = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise PolyParseError(f"division by non-constant or zero in {self.text!r}")
                p = p / Fraction(q.constant_term())
        return p

    def unary(self) -> MultiPoly:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise PolyParseError(f"exponent must be a non-negative integer in {self.text!r}")
            return base ** int(val)
        return base

    def atom(self) -> MultiPoly:
        kind, val = self.take()
        if kind == "num":
            return MultiPoly.constant(self.variables, Fraction(int(val)))
        if kind == "id":
            return MultiPoly.var(self.variables, val)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise PolyParseError(f"unbalanced parenthesis in {self.text!r}")
            return p
        raise PolyParseError(f"unexpected token {val!r} in {self.text!r}")


def _natural_key(name: str):
    return [int(tok) if tok.isdigit() else tok for tok in re.split(r"(\d+)", name)]
