"""Dense univariate polynomials over an exact field.

Coefficients are stored ascending with trailing zeros stripped; the zero
polynomial has degree -1 (the distinguished sentinel).
"""

from __future__ import annotations

from .fields import FieldError


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        k = len(coeffs)
        while k > 0 and field.is_zero(coeffs[k - 1]):
            k -= 1
        self.field = field
        self.coeffs = tuple(coeffs[:k])

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (field.one(),))

    @classmethod
    def const(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero(), field.one()))

    @classmethod
    def monomial(cls, field, n, c=None):
        if c is None:
            c = field.one()
        return cls(field, (field.zero(),) * n + (c,))

    @classmethod
    def of(cls, field, ints):
        """Build from a list of ints/strings, ascending."""
        return cls(field, [field.of(c) for c in ints])

    # -- basic structure ---------------------------------------------------

    @property
    def deg(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def lc(self):
        if not self.coeffs:
            raise FieldError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(F)
        out = [F.zero()] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if F.is_zero(ca):
                continue
            for j, cb in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(ca, cb))
        return Poly(F, out)

    def scale(self, c):
        F = self.field
        return Poly(F, [F.mul(c, a) for a in self.coeffs])

    def shift_up(self, n):
        """Multiply by t^n (n >= 0)."""
        if not self.coeffs:
            return self
        return Poly(self.field, (self.field.zero(),) * n + self.coeffs)

    def __divmod__(self, other):
        F = self.field
        if other.is_zero():
            raise FieldError("polynomial division by zero")
        if self.deg < other.deg:
            return Poly.zero(F), self
        rem = list(self.coeffs)
        dlc = F.inv(other.lc())
        dd = other.deg
        quo = [F.zero()] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if F.is_zero(c):
                continue
            q = F.mul(c, dlc)
            quo[i - dd] = q
            for j, oc in enumerate(other.coeffs):
                rem[i - dd + j] = F.sub(rem[i - dd + j], F.mul(q, oc))
        return Poly(F, quo), Poly(F, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lc()))

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def lcm(self, other):
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field)
        return ((self * other) // self.gcd(other)).monic()

    def derivative(self):
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(F.mul(F.of(i), self.coeffs[i]))
        return Poly(F, out)

    # -- evaluation and rearrangement -------------------------------------

    def eval(self, a):
        F = self.field
        acc = F.zero()
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def taylor_shift(self, a):
        """Return p(t + a) (Horner in t + a)."""
        F = self.field
        acc = Poly.zero(F)
        xa = Poly(F, (a, F.one()))
        for c in reversed(self.coeffs):
            acc = acc * xa + Poly.const(F, c)
        return acc

    def reversed_to(self, n):
        """Return t^n * p(1/t); requires n >= deg."""
        if n < self.deg:
            raise FieldError("reversal bound below degree")
        F = self.field
        out = [F.zero()] * (n + 1)
        for i, c in enumerate(self.coeffs):
            out[n - i] = c
        return Poly(F, out)

    def t_valuation(self):
        """Order of vanishing at t = 0 (for zero polynomial: None)."""
        if not self.coeffs:
            return None
        F = self.field
        for i, c in enumerate(self.coeffs):
            if not F.is_zero(c):
                return i
        raise AssertionError

    def valuation_at(self, a):
        """Multiplicity of the root t = a (0 if not a root; None for zero)."""
        if self.is_zero():
            return None
        F = self.field
        lin = Poly(F, (F.neg(a), F.one()))
        m = 0
        p = self
        while not p.is_zero():
            q, r = divmod(p, lin)
            if not r.is_zero():
                break
            m += 1
            p = q
        return m

    def is_squarefree(self):
        if self.deg <= 0:
            return not self.is_zero()
        return self.gcd(self.derivative()).deg == 0

    def rational_roots(self):
        """Roots in the base field with multiplicities, as a dict.

        Over a finite field this is exhaustive; over Q it uses the rational
        root theorem (exhaustive for rational roots).
        """
        F = self.field
        if self.is_zero():
            raise FieldError("zero polynomial")
        roots = {}
        p = self
        if F.finite:
            candidates = [F.of(a) for a in F.elements()]
        else:
            from fractions import Fraction

            # integer-scale and apply the rational root theorem
            dens = [c.denominator for c in p.coeffs]
            scale = 1
            for d in dens:
                scale = scale * d // __import__("math").gcd(scale, d)
            ints = [int(c * scale) for c in p.coeffs]
            lo = next(i for i, c in enumerate(ints) if c != 0)
            a0 = abs(ints[lo])
            an = abs(ints[-1])
            candidates = {Fraction(0)}
            for num in _divisors(a0):
                for den in _divisors(an):
                    candidates.add(Fraction(num, den))
                    candidates.add(Fraction(-num, den))
            candidates = sorted(candidates)
        for a in candidates:
            if not F.is_zero(p.eval(a)):
                continue
            m = p.valuation_at(a)
            if m:
                roots[a] = m
                lin = Poly(F, (F.neg(a), F.one()))
                for _ in range(m):
                    p = p // lin
        return roots

    def fmt(self, var="t"):
        if self.is_zero():
            return "0"
        F = self.field
        parts = []
        for i, c in enumerate(self.coeffs):
            if F.is_zero(c):
                continue
            cs = F.fmt(c)
            if i == 0:
                parts.append(cs)
            else:
                xs = var if i == 1 else f"{var}^{i}"
                parts.append(xs if cs == "1" else f"{cs}*{xs}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self.fmt()})"


def _divisors(n):
    n = abs(n)
    if n == 0:
        return [1]
    out = []
    f = 1
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            if f != n // f:
                out.append(n // f)
        f += 1
    return sorted(out)
