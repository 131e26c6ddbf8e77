"""Exact scalars a + b*sqrt(q) with rational a, b (q a prime)."""

from __future__ import annotations

from fractions import Fraction


class QSqrt:
    """Element a + b*sqrt(q) of the field Q(sqrt(q))."""

    __slots__ = ("a", "b", "q")

    def __init__(self, a=0, b=0, q: int = 2):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.q = q

    @classmethod
    def sqrt_power(cls, k: int, q: int) -> "QSqrt":
        """(sqrt q)^k for any integer k."""
        half, odd = divmod(k, 2)
        scale = Fraction(q) ** half
        return cls(0, scale, q) if odd else cls(scale, 0, q)

    def _coerce(self, other) -> "QSqrt":
        if isinstance(other, QSqrt):
            if other.q != self.q:
                raise ValueError(f"mixing sqrt({self.q}) and sqrt({other.q})")
            return other
        return QSqrt(other, 0, self.q)

    def __add__(self, other):
        o = self._coerce(other)
        return QSqrt(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt(-self.a, -self.b, self.q)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QSqrt(self.a * o.a + self.q * self.b * o.b,
                     self.a * o.b + self.b * o.a, self.q)

    __rmul__ = __mul__

    def inverse(self) -> "QSqrt":
        norm = self.a * self.a - self.q * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt q)")
        return QSqrt(self.a / norm, -self.b / norm, self.q)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QSqrt(1, 0, self.q)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QSqrt):
            return (self.a, self.b, self.q) == (other.a, other.b, other.q)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.q))

    def __repr__(self) -> str:
        return f"QSqrt({self.a}, {self.b}, q={self.q})"

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        rad = f"sqrt({self.q})" if self.b == 1 else f"{self.b}*sqrt({self.q})"
        if not self.a:
            return rad
        return f"{self.a} + {rad}"

    def to_json(self) -> list[str]:
        return [str(self.a), str(self.b)]
