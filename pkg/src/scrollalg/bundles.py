"""Vector bundles on the projective line as lattice pairs.

A rank-r bundle is a pair of free modules inside k(t)^r: a k[t]-lattice L0
(basis = columns of A0) governing all finite points and a k[1/t]-lattice
Linf (columns of Ainf) governing infinity.  The gluing is consistent iff the
transition matrix A0^-1 * Ainf is invertible over the Laurent polynomials,
i.e. has Laurent entries and monomial determinant.

All cohomology is evaluated through the Grothendieck splitting computed by
Birkhoff factorization of the transition matrix; first cohomology carries
the fixed monomial coordinate system of the split model, and Serre duality
is implemented as a literal residue pairing against sections of the
canonical twist of the dual.
"""

from __future__ import annotations

from .curve import CurvePoint
from .fields import FieldError
from .linalg import MatrixK
from .poly import Poly
from .polymat import (
    DegenerateLatticeError,
    MatrixR,
    birkhoff_factorize,
    lattice_canonical,
    lattice_canonical_inf,
)
from .ratfunc import RatFunc
from .series import finite_residue_sum, laurent_expand


def t_power(field, e):
    """The rational function t^e (e may be negative)."""
    if e >= 0:
        return RatFunc(Poly.monomial(field, e))
    return RatFunc(Poly.one(field), Poly.monomial(field, -e))


class SplittingData:
    """Result of Birkhoff factorization of the transition matrix.

    B0 = A0*U and Binf = Ainf*W^-1 are bases of the two lattices with
    B0^-1 * Binf = diag(t^a_i), a_1 >= ... >= a_r.
    """

    __slots__ = ("exponents", "B0", "Binf", "B0inv")

    def __init__(self, exponents, B0, Binf, B0inv):
        self.exponents = exponents
        self.B0 = B0
        self.Binf = Binf
        self.B0inv = B0inv


class H1Space:
    """First cohomology with its monomial basis in split coordinates.

    Basis tags are pairs (i, j): the class of B0_column_i * t^j for each
    split exponent a_i <= -2 and a_i + 1 <= j <= -1.
    """

    __slots__ = ("bundle", "tags", "dim")

    def __init__(self, bundle, tags):
        self.bundle = bundle
        self.tags = tags
        self.dim = len(tags)


class Bundle:
    """A locally free sheaf on the projective line as a lattice pair."""

    __slots__ = ("field", "rank", "A0", "Ainf", "_cache")

    def __init__(self, field, A0, Ainf):
        if A0.nrows != A0.ncols or Ainf.nrows != Ainf.ncols:
            raise DegenerateLatticeError("degenerate lattice")
        if A0.nrows != Ainf.nrows:
            raise FieldError("lattice rank mismatch")
        self.field = field
        self.rank = A0.nrows
        self.A0 = A0
        self.Ainf = Ainf
        self._cache = {}
        self._validate()

    def _validate(self):
        try:
            T = self.A0.inv() * self.Ainf
        except DegenerateLatticeError:
            raise DegenerateLatticeError("degenerate lattice") from None
        det = T.det()
        if det.is_zero():
            raise DegenerateLatticeError("degenerate lattice")
        for row in T.rows:
            for v in row:
                if v.is_zero():
                    continue
                if v.den.t_valuation() != v.den.deg:
                    raise FieldError(
                        "inconsistent lattice pair: transition is not Laurent"
                    )
        if det.num.t_valuation() != det.num.deg:
            raise FieldError(
                "inconsistent lattice pair: transition determinant "
                "is not a monomial"
            )
        self._cache["transition"] = T
        self._cache["degree"] = det.deg_t()

    # -- constructors ------------------------------------------------------

    @classmethod
    def split(cls, field, exponents):
        """Direct sum of line bundles O(a_1) + ... + O(a_r)."""
        r = len(exponents)
        A0 = MatrixR.identity(field, r)
        Ainf = MatrixR.diagonal(field, [t_power(field, a) for a in exponents])
        return cls(field, A0, Ainf)

    @classmethod
    def trivial(cls, field, r):
        return cls.split(field, [0] * r)

    @classmethod
    def line(cls, field, degree):
        return cls.split(field, [degree])

    # -- invariants --------------------------------------------------------

    @property
    def degree(self):
        return self._cache["degree"]

    def transition(self):
        return self._cache["transition"]

    def splitting(self):
        if "split" not in self._cache:
            U, exps, W = birkhoff_factorize(self.transition())
            B0 = self.A0 * U
            Binf = self.Ainf * W.inv()
            self._cache["split"] = SplittingData(exps, B0, Binf, B0.inv())
        return self._cache["split"]

    def h0(self):
        return sum(max(a + 1, 0) for a in self.splitting().exponents)

    def h1(self):
        return sum(max(-a - 1, 0) for a in self.splitting().exponents)

    def __eq__(self, other):
        return (
            isinstance(other, Bundle)
            and self.field == other.field
            and self.A0 == other.A0
            and self.Ainf == other.Ainf
        )

    def __hash__(self):
        return hash((self.field, self.A0, self.Ainf))

    def __repr__(self):
        return f"Bundle(rank {self.rank}, degree {self.degree})"

    # -- sheaf operations --------------------------------------------------

    def dual(self):
        return Bundle(
            self.field,
            self.A0.inv().transpose(),
            self.Ainf.inv().transpose(),
        )

    def tensor(self, other):
        """Tensor product; index convention (i, j) -> i*rank(other) + j."""
        return Bundle(
            self.field,
            self.A0.kron(other.A0),
            self.Ainf.kron(other.Ainf),
        )

    def end(self):
        """End(V) = V* tensor V; index (i, j) = f_i tensor e_j."""
        return self.dual().tensor(self)

    def twist(self, x, m):
        """Tensor with the line bundle O(m*x)."""
        return self.tensor(line_at(self.field, x, m))

    def canonical_twist(self):
        """Tensor with the canonical bundle (dt-trivialized O(-2))."""
        return self.tensor(canonical_bundle(self.field))

    # -- cohomology --------------------------------------------------------

    def section_basis(self):
        """Basis of global sections as vectors in k(t)^r."""
        sp = self.splitting()
        out = []
        for i, a in enumerate(sp.exponents):
            col = sp.B0.col(i)
            for j in range(a + 1):
                tj = t_power(self.field, j)
                out.append([v * tj for v in col])
        return out

    def h1_space(self):
        if "h1space" not in self._cache:
            tags = []
            for i, a in enumerate(self.splitting().exponents):
                for j in range(-1, a, -1):
                    tags.append((i, j))
            self._cache["h1space"] = H1Space(self, tags)
        return self._cache["h1space"]

    def cohomology_basis(self):
        """(h0, h1, section basis, H1Space)."""
        return self.h0(), self.h1(), self.section_basis(), self.h1_space()

    def h1_class(self, g):
        """Coordinates in h1_space of the class of the finite principal
        parts of the rational section g (vector of RatFunc).

        The coefficient of the class [B0_i * t^j] is the total finite
        residue of u_i * t^(-j-1) dt where u = B0^-1 g; this is linear,
        vanishes on sections regular on either chart, and restricts to the
        identity on the monomial basis.
        """
        sp = self.splitting()
        u = sp.B0inv.apply(g)
        F = self.field
        out = []
        for (i, j) in self.h1_space().tags:
            out.append(finite_residue_sum(u[i] * t_power(F, -j - 1)))
        return out

    def serre_pairing(self):
        """Residue pairing matrix of h1_space against sections of the
        canonical twist of the dual (rows: H1 tags, columns: sections)."""
        if "serre" not in self._cache:
            F = self.field
            KVdual = self.dual().canonical_twist()
            sections = KVdual.section_basis()
            sp = self.splitting()
            rows = []
            for (i, j) in self.h1_space().tags:
                col = sp.B0.col(i)
                tj = t_power(F, j)
                rep = [v * tj for v in col]
                row = []
                for eta in sections:
                    acc = RatFunc.zero(F)
                    for a, b in zip(rep, eta):
                        if a and b:
                            acc = acc + a * b
                    row.append(finite_residue_sum(acc))
                rows.append(row)
            self._cache["serre"] = (
                MatrixK(F, rows)
                if rows
                else MatrixK.zero(F, 0, len(sections))
            )
        return self._cache["serre"]

    # -- membership --------------------------------------------------------

    def in_lattice0(self, g):
        """True if the rational vector g lies in the finite-chart lattice."""
        u = self.A0.inv().apply(g)
        return all(v.is_polynomial() for v in u)

    def in_lattice_inf(self, g):
        u = self.Ainf.inv().apply(g)
        return all(
            v.is_zero() or v.deg_t() <= 0 and _denominator_is_monomial(v)
            for v in u
        )


def _denominator_is_monomial(v):
    return v.den.t_valuation() == v.den.deg


def canonical_bundle(field):
    """O(-2) trivialized by dt on the finite chart and ds at infinity
    (transition factor -t^2)."""
    A0 = MatrixR.identity(field, 1)
    neg = RatFunc.const(field, field.neg(field.one()))
    Ainf = MatrixR(field, [[neg * t_power(field, -2)]])
    return Bundle(field, A0, Ainf)


def line_at(field, x, m):
    """The line bundle O(m*x) with its canonical lattice pair."""
    if x.at_infinity:
        A0 = MatrixR.identity(field, 1)
        Ainf = MatrixR(field, [[t_power(field, m)]])
    elif field.is_zero(x.value):
        A0 = MatrixR(field, [[t_power(field, -m)]])
        Ainf = MatrixR.identity(field, 1)
    else:
        lin = Poly(field, (field.neg(x.value), field.one()))
        f = RatFunc(Poly.one(field), lin) if m > 0 else RatFunc(lin)
        g = RatFunc.one(field)
        for _ in range(abs(m)):
            g = g * f
        A0 = MatrixR(field, [[g]])
        Ainf = MatrixR(field, [[g * t_power(field, m)]])
    return Bundle(field, A0, Ainf)


def line_at_place(field, q, m):
    """O(m*P) for the degree-2 place P given by a monic irreducible
    quadratic q(t); degree of the result is 2m."""
    if q.deg != 2:
        raise FieldError("place polynomial must be quadratic")
    f = RatFunc(Poly.one(field), q) if m > 0 else RatFunc(q)
    g = RatFunc.one(field)
    for _ in range(abs(m)):
        g = g * f
    A0 = MatrixR(field, [[g]])
    Ainf = MatrixR(field, [[g * t_power(field, 2 * m)]])
    return Bundle(field, A0, Ainf)


def oracle_h0(V, bound):
    """Brute-force h0 without Birkhoff: dimension of the space of lattice
    coordinates u in k[t]^r of degree <= bound with A0*u also in the
    infinity lattice, by direct linear algebra."""
    F = V.field
    r = V.rank
    C = V.Ainf.inv() * V.A0  # inverse transition; Laurent entries
    conditions = []
    nvars = r * (bound + 1)
    for i in range(r):
        # row i of C*u, over common monomial denominator t^E
        E = max(
            (C.get(i, j).den.deg for j in range(r) if C.get(i, j)), default=0
        )
        # numerator polynomial must have degree <= E
        maxdeg = 0
        numer = []
        for j in range(r):
            v = C.get(i, j)
            if v.is_zero():
                numer.append(Poly.zero(F))
                continue
            p = v.num.shift_up(E - v.den.deg)
            numer.append(p)
            maxdeg = max(maxdeg, p.deg)
        for m in range(E + 1, maxdeg + bound + 1):
            row = [F.zero()] * nvars
            touched = False
            for j in range(r):
                p = numer[j]
                for d in range(bound + 1):
                    c = p.coeff(m - d)
                    if not F.is_zero(c):
                        row[j * (bound + 1) + d] = F.add(
                            row[j * (bound + 1) + d], c
                        )
                        touched = True
            if touched:
                conditions.append(row)
    if not conditions:
        return nvars
    M = MatrixK(F, conditions)
    return nvars - M.rank()


def psi_embedding_check(V, samples=None):
    """True iff twisting down by every effective degree-2 divisor kills
    exactly 2r sections of the canonical twist of the dual.

    Over a finite field the check is exhaustive over rational point pairs
    and degree-2 places; over the rationals it samples a fixed finite set of
    divisors and is heuristic.
    """
    F = V.field
    r = V.rank
    W = V.dual().canonical_twist()
    base = W.h0()
    points = []
    quadratics = []
    if F.finite:
        points = [CurvePoint.finite(F, a) for a in F.elements()]
        points.append(CurvePoint.infinity(F))
        for b in F.elements():
            for c in F.elements():
                q = Poly(F, (c, b, F.one()))
                if not any(
                    F.is_zero(q.eval(F.of(a))) for a in F.elements()
                ):
                    quadratics.append(q)
    else:
        vals = samples if samples is not None else [0, 1, -1, 2, -2, 3]
        points = [CurvePoint.finite(F, v) for v in vals]
        points.append(CurvePoint.infinity(F))
        quadratics = [
            Poly.of(F, (1, 0, 1)),
            Poly.of(F, (-2, 0, 1)),
            Poly.of(F, (1, 1, 1)),
        ]
    for ix, x in enumerate(points):
        for y in points[ix:]:
            Wt = W.twist(x, -1).twist(y, -1)
            if Wt.h0() != base - 2 * r:
                return False
    for q in quadratics:
        Wt = W.tensor(line_at_place(F, q, -1))
        if Wt.h0() != base - 2 * r:
            return False
    return True
