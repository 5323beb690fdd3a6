"""Rational functions in t, kept in canonical form.

Canonical form: denominator monic and coprime to the numerator; the zero
function is 0/1.  Equality is therefore syntactic.
"""

from __future__ import annotations

from .fields import FieldError
from .poly import Poly


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly.one(num.field)
        if den.is_zero():
            raise FieldError("zero denominator")
        g = num.gcd(den)
        if g.deg > 0:
            num = num // g
            den = den // g
        if num.is_zero():
            den = Poly.one(num.field)
        else:
            c = den.lc()
            if not den.field.eq(c, den.field.one()):
                inv = den.field.inv(c)
                num = num.scale(inv)
                den = den.scale(inv)
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @classmethod
    def zero(cls, field):
        return cls(Poly.zero(field))

    @classmethod
    def one(cls, field):
        return cls(Poly.one(field))

    @classmethod
    def const(cls, field, c):
        return cls(Poly.const(field, c))

    @classmethod
    def of(cls, field, num, den=(1,)):
        return cls(Poly.of(field, num), Poly.of(field, den))

    @classmethod
    def t(cls, field):
        return cls(Poly.x(field))

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.deg == 0

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return RatFunc(self.num * other.num, self.den * other.den)

    def inv(self):
        if self.is_zero():
            raise FieldError("division by zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * other.inv()

    def scale(self, c):
        return RatFunc(self.num.scale(c), self.den)

    def deg_t(self):
        """Degree as a rational function (deg num - deg den); zero -> None."""
        if self.is_zero():
            return None
        return self.num.deg - self.den.deg

    def valuation_at(self, a):
        """Order of vanishing at t = a (negative for poles; zero fn -> None)."""
        if self.is_zero():
            return None
        return self.num.valuation_at(a) - self.den.valuation_at(a)

    def valuation_at_infinity(self):
        """Order of vanishing at infinity in s = 1/t (zero fn -> None)."""
        d = self.deg_t()
        return None if d is None else -d

    def eval(self, a):
        d = self.den.eval(a)
        if self.field.is_zero(d):
            raise FieldError("pole at evaluation point")
        return self.field.div(self.num.eval(a), d)

    def subst_reciprocal(self):
        """Return f(1/u) as a rational function in the new variable u."""
        n = max(self.num.deg, self.den.deg, 0)
        return RatFunc(self.num.reversed_to(n), self.den.reversed_to(n))

    def fmt(self, var="t"):
        if self.is_polynomial():
            return self.num.fmt(var)
        return f"({self.num.fmt(var)})/({self.den.fmt(var)})"

    def __repr__(self):
        return f"RatFunc({self.fmt()})"
