"""Arithmetic in a quadratic extension Q(sqrt(D))."""

from __future__ import annotations

from fractions import Fraction


class QuadraticNumber:
    """a + b*sqrt(D) with rational a, b and a fixed rational non-square D."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a, b, D):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.D = Fraction(D)

    def _lift(self, other) -> QuadraticNumber:
        if isinstance(other, QuadraticNumber):
            if other.D != self.D and other.b != 0 and self.b != 0:
                raise ValueError("mixing different quadratic fields")
            return other
        return QuadraticNumber(other, 0, self.D)

    def __add__(self, other):
        o = self._lift(other)
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.D)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return QuadraticNumber(self.a * o.a + self.D * self.b * o.b, self.a * o.b + self.b * o.a, self.D)

    __rmul__ = __mul__

    def conjugate(self) -> QuadraticNumber:
        return QuadraticNumber(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def __truediv__(self, other):
        o = self._lift(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        num = self * o.conjugate()
        return QuadraticNumber(num.a / n, num.b / n, self.D)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k: int):
        out = QuadraticNumber(1, 0, self.D)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return self.a == other.a and self.b == other.b
        return self.b == 0 and self.a == other

    def __hash__(self):
        return hash((self.a, self.b, self.D))

    def __complex__(self):
        import cmath

        return complex(self.a) + complex(self.b) * cmath.sqrt(float(self.D))

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.D}))"
