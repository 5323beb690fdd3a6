"""Matrices of rational functions: Hermite normal form over k[t] and
Birkhoff factorization of transition matrices.

The Hermite form is column-style: H = M*U with U unimodular over k[t], H
upper triangular with monic diagonal and off-diagonal degrees reduced below
the diagonal degree, the unique canonical basis of the column lattice.

Birkhoff factorization G = U * diag(t^a_1, ..., t^a_r) * W (U unimodular
over k[t], W unimodular over k[1/t]) is computed by a single left row
reduction: when det G is a monomial, a row-reduced form R = E*G with row
degrees d_i satisfies R = diag(t^d_i) * W with W(infinity) equal to the
nonsingular leading-row-coefficient matrix, so no alternating iteration is
needed.
"""

from __future__ import annotations

from .fields import FieldError
from .linalg import MatrixK
from .poly import Poly
from .ratfunc import RatFunc


class DegenerateLatticeError(FieldError):
    """Raised when a lattice basis is singular."""


class MatrixR:
    """Immutable rectangular matrix of RatFunc entries."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows):
        rows = [tuple(r) for r in rows]
        if rows:
            w = len(rows[0])
            if any(len(r) != w for r in rows):
                raise FieldError("ragged matrix")
        else:
            w = 0
        self.field = field
        self.rows = tuple(rows)
        self.nrows = len(rows)
        self.ncols = w

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, field, n):
        z, o = RatFunc.zero(field), RatFunc.one(field)
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, field, m, n):
        z = RatFunc.zero(field)
        return cls(field, [[z] * n for _ in range(m)])

    @classmethod
    def diagonal(cls, field, entries):
        z = RatFunc.zero(field)
        n = len(entries)
        return cls(
            field, [[entries[i] if i == j else z for j in range(n)] for i in range(n)]
        )

    @classmethod
    def from_cols(cls, field, cols, nrows=None):
        if not cols:
            return cls.zero(field, nrows or 0, 0)
        m = len(cols[0])
        return cls(field, [[c[i] for c in cols] for i in range(m)])

    @classmethod
    def of(cls, field, rows):
        """Build from nested lists of ints / coefficient pairs, see RatFunc.of."""
        out = []
        for r in rows:
            row = []
            for v in r:
                if isinstance(v, RatFunc):
                    row.append(v)
                elif isinstance(v, tuple):
                    row.append(RatFunc.of(field, *v))
                else:
                    row.append(RatFunc.of(field, (v,)))
            out.append(row)
        return cls(field, out)

    def get(self, i, j):
        return self.rows[i][j]

    def col(self, j):
        return [r[j] for r in self.rows]

    def cols(self):
        return [self.col(j) for j in range(self.ncols)]

    def __eq__(self, other):
        return (
            isinstance(other, MatrixR)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.rows))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise FieldError("shape mismatch")
        return MatrixR(
            self.field,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __neg__(self):
        return MatrixR(self.field, [[-a for a in r] for r in self.rows])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.ncols != other.nrows:
            raise FieldError("shape mismatch")
        z = RatFunc.zero(self.field)
        bt = list(zip(*other.rows)) if other.rows else []
        out = []
        for r in self.rows:
            row = []
            for c in bt:
                acc = z
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        if not out:
            return MatrixR.zero(self.field, 0, other.ncols)
        return MatrixR(self.field, out)

    def scale(self, f):
        return MatrixR(self.field, [[f * a for a in r] for r in self.rows])

    def apply(self, vec):
        z = RatFunc.zero(self.field)
        out = []
        for r in self.rows:
            acc = z
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def transpose(self):
        return MatrixR(self.field, list(zip(*self.rows)) if self.rows else [])

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise FieldError("shape mismatch")
        return MatrixR(self.field, [ra + rb for ra, rb in zip(self.rows, other.rows)])

    def kron(self, other):
        out = []
        for ra in self.rows:
            for rb in other.rows:
                out.append([a * b for a in ra for b in rb])
        return MatrixR(self.field, out)

    def is_polynomial(self):
        return all(v.is_polynomial() for r in self.rows for v in r)

    def subst_reciprocal(self):
        """Entrywise substitution t -> 1/u (variable renamed implicitly)."""
        return MatrixR(
            self.field, [[v.subst_reciprocal() for v in r] for r in self.rows]
        )

    def eval(self, a):
        return MatrixK(self.field, [[v.eval(a) for v in r] for r in self.rows])

    def det(self):
        if self.nrows != self.ncols:
            raise FieldError("determinant of non-square matrix")
        rows = [list(r) for r in self.rows]
        n = self.nrows
        d = RatFunc.one(self.field)
        for c in range(n):
            pivot = None
            for i in range(c, n):
                if rows[i][c]:
                    pivot = i
                    break
            if pivot is None:
                return RatFunc.zero(self.field)
            if pivot != c:
                rows[c], rows[pivot] = rows[pivot], rows[c]
                d = -d
            d = d * rows[c][c]
            pinv = rows[c][c].inv()
            for i in range(c + 1, n):
                if rows[i][c]:
                    f = rows[i][c] * pinv
                    rows[i] = [v - f * w for v, w in zip(rows[i], rows[c])]
        return d

    def rank(self):
        """Rank over the rational function field."""
        rows = [list(r) for r in self.rows]
        rk = 0
        for c in range(self.ncols):
            pivot = None
            for i in range(rk, len(rows)):
                if rows[i][c]:
                    pivot = i
                    break
            if pivot is None:
                continue
            rows[rk], rows[pivot] = rows[pivot], rows[rk]
            pinv = rows[rk][c].inv()
            for i in range(rk + 1, len(rows)):
                if rows[i][c]:
                    f = rows[i][c] * pinv
                    rows[i] = [v - f * w for v, w in zip(rows[i], rows[rk])]
            rk += 1
            if rk == len(rows):
                break
        return rk

    def inv(self):
        if self.nrows != self.ncols:
            raise FieldError("inverse of non-square matrix")
        n = self.nrows
        rows = [list(r) + list(MatrixR.identity(self.field, n).rows[i])
                for i, r in enumerate(self.rows)]
        for c in range(n):
            pivot = None
            for i in range(c, n):
                if rows[i][c]:
                    pivot = i
                    break
            if pivot is None:
                raise DegenerateLatticeError("degenerate lattice")
            rows[c], rows[pivot] = rows[pivot], rows[c]
            pinv = rows[c][c].inv()
            rows[c] = [pinv * v for v in rows[c]]
            for i in range(n):
                if i != c and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [v - f * w for v, w in zip(rows[i], rows[c])]
        return MatrixR(self.field, [r[n:] for r in rows])

    def __repr__(self):
        body = "; ".join(
            "[" + ", ".join(v.fmt() for v in r) + "]" for r in self.rows
        )
        return f"MatrixR({self.nrows}x{self.ncols}: {body})"


# -- Hermite normal form over k[t] ----------------------------------------


def _hnf_poly_cols(field, cols, nrows, track=None):
    """Column-style Hermite reduction of a list of Poly columns.

    Returns the list of assigned columns (upper triangular, position i has
    support in rows 0..i); `track` is an optional parallel list of columns
    subjected to the same operations.
    """
    cols = [list(c) for c in cols]
    active = list(range(len(cols)))
    assigned = [None] * nrows

    def combine(j, k, q):
        # col_j <- col_j - q * col_k
        cols[j] = [a - q * b for a, b in zip(cols[j], cols[k])]
        if track is not None:
            track[j] = [a - q * b for a, b in zip(track[j], track[k])]

    def swap(j, k):
        cols[j], cols[k] = cols[k], cols[j]
        if track is not None:
            track[j], track[k] = track[k], track[j]

    for i in range(nrows - 1, -1, -1):
        live = [j for j in active if not cols[j][i].is_zero()]
        # gcd-eliminate row i among live columns, leaving one survivor
        while len(live) > 1:
            live.sort(key=lambda j: cols[j][i].deg)
            j0 = live[0]
            for j in live[1:]:
                q = cols[j][i] // cols[j0][i]
                combine(j, j0, q)
            live = [j for j in live if not cols[j][i].is_zero()]
        if live:
            j = live[0]
            assigned[i] = j
            active.remove(j)
    if any(a is None for a in assigned):
        raise DegenerateLatticeError("degenerate lattice")
    # reorder so assigned column i sits at position i
    order = list(assigned) + [j for j in active]
    perm_cols = [cols[j] for j in order]
    perm_track = [track[j] for j in order] if track is not None else None
    cols = perm_cols
    if track is not None:
        track[:] = perm_track
    # make diagonals monic
    for i in range(nrows):
        lc = cols[i][i].lc()
        if not field.eq(lc, field.one()):
            inv = field.inv(lc)
            cols[i] = [p.scale(inv) for p in cols[i]]
            if track is not None:
                track[i] = [p.scale(inv) for p in track[i]]

    def reduce_col(j, upto):
        for i in range(upto - 1, -1, -1):
            q = cols[j][i] // cols[i][i]
            if not q.is_zero():
                combine(j, i, q)

    # degree-reduce off-diagonal entries
    for j in range(1, nrows):
        reduce_col(j, j)
    return cols


def hermite_normal_form(M):
    """Canonical column Hermite form of a square polynomial matrix.

    Returns (H, U) with H = M * U, U unimodular over k[t].
    """
    if M.nrows != M.ncols:
        raise FieldError("Hermite form needs a square matrix")
    if not M.is_polynomial():
        raise FieldError("entries must be polynomials")
    F = M.field
    n = M.nrows
    cols = [[M.get(i, j).num for i in range(n)] for j in range(n)]
    track = [
        [Poly.one(F) if i == j else Poly.zero(F) for i in range(n)]
        for j in range(n)
    ]
    hcols = _hnf_poly_cols(F, cols, n, track=track)
    H = MatrixR.from_cols(F, [[RatFunc(p) for p in c] for c in hcols])
    U = MatrixR.from_cols(F, [[RatFunc(p) for p in c] for c in track])
    return H, U


def lattice_canonical(field, cols, nrows):
    """Canonical square basis of the k[t]-lattice spanned by rational
    columns (at least nrows of them, full rank)."""
    den = Poly.one(field)
    for c in cols:
        for v in c:
            den = den.lcm(v.den)
    pcols = [[(v * RatFunc(den)).num for v in c] for c in cols]
    hcols = _hnf_poly_cols(field, pcols, nrows)[:nrows]
    dinv = RatFunc(Poly.one(field), den)
    return MatrixR.from_cols(
        field, [[RatFunc(p) * dinv for p in c] for c in hcols]
    )


def lattice_canonical_inf(field, cols, nrows):
    """Canonical basis of the k[1/t]-lattice spanned by rational columns,
    computed through the substitution t -> 1/u."""
    ucols = [[v.subst_reciprocal() for v in c] for c in cols]
    H = lattice_canonical(field, ucols, nrows)
    return H.subst_reciprocal()


# -- Birkhoff factorization ------------------------------------------------


def _laurent_check(M):
    """Max pole order at t = 0 over entries; errors on non-Laurent entries."""
    worst = 0
    for r in M.rows:
        for v in r:
            if v.is_zero():
                continue
            d = v.den
            if d.t_valuation() != d.deg:
                raise FieldError("transition matrix entry is not Laurent in t")
            worst = max(worst, d.deg)
    return worst


def birkhoff_factorize(G):
    """Factor G = U * diag(t^a_1, ..., t^a_r) * W with U unimodular over
    k[t], W unimodular over k[1/t], a_1 >= ... >= a_r.

    Requires det G to be a nonzero monomial in t (G invertible over the ring
    of Laurent polynomials).
    """
    if G.nrows != G.ncols:
        raise FieldError("factorization needs a square matrix")
    F = G.field
    n = G.nrows
    N = _laurent_check(G)
    tN = Poly.monomial(F, N)
    # P = t^N * G is polynomial
    prows = [[(v * RatFunc(tN)).num for v in r] for r in G.rows]
    d = _poly_rows_det(F, prows)
    if d.is_zero():
        raise DegenerateLatticeError("degenerate lattice")
    if d.t_valuation() != d.deg:
        raise FieldError("transition determinant is not a monomial")

    einv_cols = [
        [Poly.one(F) if i == j else Poly.zero(F) for i in range(n)]
        for j in range(n)
    ]

    def row_deg(i):
        return max(p.deg for p in prows[i])

    while True:
        degs = [row_deg(i) for i in range(n)]
        L = MatrixK(
            F, [[prows[i][j].coeff(degs[i]) for j in range(n)] for i in range(n)]
        )
        kern = L.transpose().kernel_basis()
        if not kern:
            break
        v = kern[0]
        support = [i for i in range(n) if not F.is_zero(v[i])]
        i0 = max(support, key=lambda i: (degs[i], i))
        # row_i0 <- sum_i v_i * t^(d_i0 - d_i) * row_i  (unimodular since the
        # coefficient of row_i0 is the nonzero constant v_i0)
        newrow = [Poly.zero(F)] * n
        for i in support:
            mono = Poly.monomial(F, degs[i0] - degs[i], v[i])
            newrow = [a + mono * b for a, b in zip(newrow, prows[i])]
        prows[i0] = newrow
        # inverse op on E^-1: col_i0 of Einv gets redistributed
        # A^-1 differs from I only in row i0; Einv <- Einv * A^-1 updates
        # every column j != i0 by subtracting (v_j/v_i0) t^(d_i0-d_j) col_i0,
        # and scales col_i0 by 1/v_i0.
        c0 = F.inv(v[i0])
        base = [p.scale(c0) for p in einv_cols[i0]]
        for j in support:
            if j == i0:
                continue
            mono = Poly.monomial(F, degs[i0] - degs[j], v[j])
            einv_cols[j] = [a - mono * b for a, b in zip(einv_cols[j], base)]
        einv_cols[i0] = base

    degs = [row_deg(i) for i in range(n)]
    exps = [dg - N for dg in degs]
    # W = diag(t^-d_i) * R, entries in k[1/t], value at infinity = leading
    # row coefficient matrix (nonsingular), det constant
    wrows = []
    for i in range(n):
        td = RatFunc(Poly.one(F), Poly.monomial(F, degs[i]))
        wrows.append([RatFunc(p) * td for p in prows[i]])
    U = MatrixR.from_cols(F, [[RatFunc(p) for p in c] for c in einv_cols])
    # sort exponents descending, stably
    order = sorted(range(n), key=lambda i: (-exps[i], i))
    exps_sorted = [exps[i] for i in order]
    U_sorted = MatrixR.from_cols(F, [U.col(i) for i in order])
    W_sorted = MatrixR(F, [wrows[i] for i in order])
    return U_sorted, exps_sorted, W_sorted


def _poly_rows_det(field, prows):
    # the determinant of a polynomial matrix is a polynomial (den = 1)
    M = MatrixR(field, [[RatFunc(p) for p in r] for r in prows])
    return M.det().num
