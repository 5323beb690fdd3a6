"""Exact base fields: the rationals and prime fields F_p (p > 2).

Field elements are plain Python objects (Fraction for Q, int in [0, p) for
F_p); a Field instance supplies the arithmetic.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    """Raised on invalid field construction or arithmetic (e.g. 1/0)."""


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface; see Rationals and PrimeField."""

    char = 0
    finite = False

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def of(self, value):
        """Coerce an int, Fraction or decimal/fraction string to an element."""
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero()

    def eq(self, a, b):
        return a == b

    def fmt(self, a):
        return str(a)

    def parse(self, text):
        """Inverse of fmt; accepts "3", "-3/4" style strings."""
        return self.of(text)

    def random(self, rng):
        raise NotImplementedError

    def random_nonzero(self, rng):
        while True:
            a = self.random(rng)
            if not self.is_zero(a):
                return a

    def elements(self):
        """All field elements; only available for finite fields."""
        raise FieldError("field is not finite")

    def descriptor(self):
        raise NotImplementedError


class Rationals(Field):
    """The field Q with Fraction elements."""

    char = 0
    finite = False

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def of(self, value):
        if isinstance(value, float):
            raise FieldError("no floating point values allowed")
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"cannot parse rational: {value!r}") from exc

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise FieldError("division by zero")
        return 1 / a

    def random(self, rng):
        return Fraction(rng.randint(-6, 6), rng.randint(1, 4))

    def descriptor(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    """F_p with canonical representatives in [0, p)."""

    finite = True

    def __init__(self, p):
        if not _is_prime(p):
            raise FieldError(f"modulus must be prime, got {p}")
        self.p = p
        self.char = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def of(self, value):
        if isinstance(value, float):
            raise FieldError("no floating point values allowed")
        if isinstance(value, str):
            if "/" in value:
                num, _, den = value.partition("/")
                return self.div(self.of(num), self.of(den))
            try:
                value = int(value)
            except ValueError as exc:
                raise FieldError(f"cannot parse F_{self.p} element: {value!r}") from exc
        if isinstance(value, Fraction):
            return self.div(self.of(value.numerator), self.of(value.denominator))
        return value % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise FieldError("division by zero")
        return pow(a, self.p - 2, self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def elements(self):
        return range(self.p)

    def descriptor(self):
        return f"Fp:{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()

_gf_cache = {}


def GF(p):
    """Cached prime field constructor."""
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def field_from_descriptor(text):
    """Parse "Q" or "Fp:<p>" into a Field."""
    if text == "Q":
        return QQ
    if text.startswith("Fp:"):
        try:
            return GF(int(text[3:]))
        except ValueError as exc:
            raise FieldError(f"bad field descriptor {text!r}") from exc
    raise FieldError(f"bad field descriptor {text!r}")
