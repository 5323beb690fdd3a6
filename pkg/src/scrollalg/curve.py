"""Rational points of the projective line backend.

A point is either a finite value a (local uniformiser z = t - a) or the
point at infinity (uniformiser s = 1/t).
"""

from __future__ import annotations


class CurvePoint:
    __slots__ = ("field", "value", "at_infinity")

    def __init__(self, field, value=None, at_infinity=False):
        if at_infinity:
            value = None
        elif value is None:
            raise ValueError("finite point needs a value")
        self.field = field
        self.value = value
        self.at_infinity = at_infinity

    @classmethod
    def finite(cls, field, value):
        return cls(field, field.of(value))

    @classmethod
    def infinity(cls, field):
        return cls(field, at_infinity=True)

    def is_zero_point(self):
        return not self.at_infinity and self.field.is_zero(self.value)

    def uniformiser_name(self):
        return "s" if self.at_infinity else "z"

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.field != other.field:
            return False
        if self.at_infinity or other.at_infinity:
            return self.at_infinity and other.at_infinity
        return self.field.eq(self.value, other.value)

    def __hash__(self):
        if self.at_infinity:
            return hash((self.field, "inf"))
        return hash((self.field, self.value))

    def __repr__(self):
        if self.at_infinity:
            return "CurvePoint(inf)"
        return f"CurvePoint({self.field.fmt(self.value)})"
