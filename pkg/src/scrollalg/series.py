"""Truncated Laurent expansions of rational functions at curve points.

A LaurentJet holds exact coefficients for exponents in [start, prec) in the
local uniformiser of its anchor point (z = t - a at a finite point, s = 1/t
at infinity).
"""

from __future__ import annotations

from .curve import CurvePoint
from .fields import FieldError
from .poly import Poly
from .ratfunc import RatFunc


class LaurentJet:
    __slots__ = ("field", "point", "start", "coeffs", "prec")

    def __init__(self, field, point, start, coeffs, prec):
        coeffs = list(coeffs)
        # drop anything at or above the stated precision
        if start + len(coeffs) > prec:
            coeffs = coeffs[: max(prec - start, 0)]
        while coeffs and field.is_zero(coeffs[0]):
            coeffs.pop(0)
            start += 1
        while coeffs and field.is_zero(coeffs[-1]):
            coeffs.pop()
        if not coeffs:
            start = prec
        self.field = field
        self.point = point
        self.start = start
        self.coeffs = tuple(coeffs)
        self.prec = prec

    @classmethod
    def zero(cls, field, point, prec=0):
        return cls(field, point, prec, (), prec)

    def is_zero(self):
        return not self.coeffs

    def coeff(self, i):
        if self.start <= i < self.start + len(self.coeffs):
            return self.coeffs[i - self.start]
        return self.field.zero()

    def pole_order(self):
        """Largest k with a nonzero coefficient of z^-k (0 if regular)."""
        if self.is_zero() or self.start >= 0:
            return 0
        return -self.start

    def _same_point(self, other):
        if self.point != other.point:
            raise FieldError("jets anchored at different points")

    def __add__(self, other):
        self._same_point(other)
        F = self.field
        prec = min(self.prec, other.prec)
        start = min(self.start, other.start, prec)
        out = [
            F.add(self.coeff(i), other.coeff(i)) for i in range(start, prec)
        ]
        return LaurentJet(F, self.point, start, out, prec)

    def __neg__(self):
        F = self.field
        return LaurentJet(
            F, self.point, self.start, [F.neg(c) for c in self.coeffs], self.prec
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._same_point(other)
        F = self.field
        if self.is_zero() or other.is_zero():
            return LaurentJet.zero(F, self.point, min(self.prec, other.prec))
        # precision of a product of truncated series
        prec = min(self.prec + other.start, other.prec + self.start)
        start = self.start + other.start
        n = prec - start
        out = [F.zero()] * max(n, 0)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                if i + j < n:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return LaurentJet(F, self.point, start, out, prec)

    def scale(self, c):
        F = self.field
        return LaurentJet(
            F, self.point, self.start, [F.mul(c, a) for a in self.coeffs], self.prec
        )

    def shift(self, n):
        """Multiply by z^n."""
        return LaurentJet(
            self.field, self.point, self.start + n, self.coeffs, self.prec + n
        )

    def truncate(self, prec):
        if prec > self.prec:
            raise FieldError("cannot raise jet precision")
        return LaurentJet(self.field, self.point, self.start, self.coeffs, prec)

    def negative_part(self):
        """The principal part: coefficients of strictly negative exponents."""
        F = self.field
        out = [self.coeff(i) for i in range(min(self.start, 0), 0)]
        return LaurentJet(F, self.point, min(self.start, 0), out, 0)

    def tail_as_ratfunc(self):
        """Exact rational function equal to the negative-exponent part, in t.

        At a finite point a this is sum c_i (t-a)^i over i < 0; at infinity
        it is sum c_i t^-i.
        """
        F = self.field
        neg = self.negative_part()
        total = RatFunc.zero(F)
        if neg.is_zero():
            return total
        if self.point.at_infinity:
            # the uniformiser at infinity is s = 1/t, so s^-1 = t
            zpow = RatFunc(Poly.x(F))
        else:
            lin = Poly(F, (F.neg(self.point.value), F.one()))
            zpow = RatFunc(Poly.one(F), lin)
        for i in range(-1, neg.start - 1, -1):
            c = neg.coeff(i)
            acc = RatFunc.one(F)
            for _ in range(-i):
                acc = acc * zpow
            total = total + acc.scale(c)
        return total

    def fmt(self):
        var = self.point.uniformiser_name() if self.point else "z"
        if self.is_zero():
            return f"0 + O({var}^{self.prec})"
        F = self.field
        parts = []
        for i in range(self.start, self.start + len(self.coeffs)):
            c = self.coeff(i)
            if F.is_zero(c):
                continue
            cs = F.fmt(c)
            if i == 0:
                parts.append(cs)
            else:
                xs = var if i == 1 else f"{var}^{i}"
                parts.append(xs if cs == "1" else f"{cs}*{xs}")
        return " + ".join(parts) + f" + O({var}^{self.prec})"

    def __repr__(self):
        return f"LaurentJet({self.fmt()})"


def _series_inverse(field, coeffs, n):
    """Invert a unit power series (coeffs[0] != 0) to n terms."""
    inv0 = field.inv(coeffs[0])
    out = [inv0]
    for k in range(1, n):
        acc = field.zero()
        for j in range(1, min(k, len(coeffs) - 1) + 1):
            acc = field.add(acc, field.mul(coeffs[j], out[k - j]))
        out.append(field.neg(field.mul(inv0, acc)))
    return out


def laurent_expand(f, x, precision):
    """Laurent expansion of a rational function at x, truncated below
    `precision` in the local uniformiser."""
    F = f.field
    if x.at_infinity:
        g = f.subst_reciprocal()
        x0 = CurvePoint.finite(F, 0)
        jet = laurent_expand(g, x0, precision)
        return LaurentJet(F, x, jet.start, jet.coeffs, jet.prec)
    if f.is_zero():
        return LaurentJet.zero(F, x, precision)
    num = f.num.taylor_shift(x.value)
    den = f.den.taylor_shift(x.value)
    vn = num.t_valuation()
    vd = den.t_valuation()
    start = vn - vd
    n = precision - start
    if n <= 0:
        return LaurentJet.zero(F, x, precision)
    ncoeffs = list(num.coeffs[vn:])
    dcoeffs = list(den.coeffs[vd:])
    dinv = _series_inverse(F, dcoeffs, n)
    out = [F.zero()] * n
    for i, a in enumerate(ncoeffs):
        if i >= n:
            break
        if F.is_zero(a):
            continue
        for j, b in enumerate(dinv):
            if i + j < n:
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return LaurentJet(F, x, start, out, precision)


def finite_residue_sum(f):
    """Sum over all finite poles of f of the residue of f dt.

    By the residue theorem on the projective line this equals minus the
    residue at infinity, which is read off from one expansion in s = 1/t.
    """
    F = f.field
    jet = laurent_expand(f, CurvePoint.infinity(F), 2)
    return jet.coeff(1)
