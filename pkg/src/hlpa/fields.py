"""Exact coefficient fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

from .errors import AlgebraError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@total_ordering
class Residue:
    """Element of GF(p). Immutable; mixed arithmetic with ints is allowed."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int) -> None:
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", value % p)

    def __setattr__(self, name, value):
        raise AttributeError("Residue is immutable")

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.p != self.p:
                raise AlgebraError(f"field mismatch: GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Residue(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Residue(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Residue(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Residue(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.p)

    def inverse(self) -> "Residue":
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.p)
        return Residue(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Residue(o, self.p).inverse()

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __lt__(self, other) -> bool:
        if isinstance(other, Residue):
            return (self.p, self.value) < (other.p, other.value)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __repr__(self) -> str:
        return f"Residue({self.value}, {self.p})"

    def __str__(self) -> str:
        return str(self.value)


class Field:
    """A coefficient field. ``Field.rationals()`` or ``Field.prime(p)``."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0) -> None:
        if p and not _is_prime(p):
            raise AlgebraError(f"{p} is not prime")
        self.p = p

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def from_spec(cls, text: str) -> "Field":
        """Parse ``q`` or ``fp:<p>``."""
        text = text.strip().lower()
        if text in ("q", "qq", "rationals"):
            return cls.rationals()
        if text.startswith("fp:"):
            try:
                return cls.prime(int(text[3:]))
            except ValueError:
                raise AlgebraError(f"bad prime in field spec {text!r}") from None
        raise AlgebraError(f"unknown field {text!r} (expected 'q' or 'fp:<p>')")

    @property
    def name(self) -> str:
        return "q" if self.p == 0 else f"fp:{self.p}"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Field", self.p))

    def __repr__(self) -> str:
        return "Field.rationals()" if self.p == 0 else f"Field.prime({self.p})"

    def __call__(self, value) -> Fraction | Residue:
        """Coerce an int, Fraction or Residue into this field."""
        if self.p == 0:
            if isinstance(value, Residue):
                raise AlgebraError("cannot coerce a residue into the rationals")
            return Fraction(value)
        if isinstance(value, Residue):
            if value.p != self.p:
                raise AlgebraError(f"field mismatch: GF({value.p}) vs GF({self.p})")
            return value
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise AlgebraError(f"{value} is not defined in GF({self.p})")
            return Residue(value.numerator, self.p) / value.denominator
        return Residue(int(value), self.p)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def fraction(self, num: int, den: int):
        if den == 0:
            raise AlgebraError("zero denominator")
        if self.p and den % self.p == 0:
            raise AlgebraError(f"{num}/{den} is not defined in GF({self.p})")
        return self(Fraction(num, den))

    def format(self, c) -> str:
        return str(c)


QQ = Field.rationals()
