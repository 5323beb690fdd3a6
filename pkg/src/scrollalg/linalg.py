"""Exact dense linear algebra over a base field.

MatrixK is a small immutable matrix of field elements with the rank/kernel
and subspace-comparison routines every span and defect computation reduces
to.
"""

from __future__ import annotations

from .fields import FieldError


class MatrixK:
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
    def zero(cls, field, m, n):
        z = field.zero()
        return cls(field, [[z] * n for _ in range(m)])

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero(), field.one()
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_cols(cls, field, cols, nrows=None):
        if not cols:
            return cls.zero(field, nrows or 0, 0)
        m = len(cols[0])
        return cls(field, [[c[i] for c in cols] for i in range(m)])

    @classmethod
    def of(cls, field, rows):
        return cls(field, [[field.of(v) for v in r] for r in rows])

    def get(self, i, j):
        return self.rows[i][j]

    def col(self, j):
        return [r[j] for r in self.rows]

    def cols(self):
        return [self.col(j) for j in range(self.ncols)]

    def __eq__(self, other):
        return (
            isinstance(other, MatrixK)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.rows))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        F = self.field
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise FieldError("shape mismatch")
        return MatrixK(
            F,
            [
                [F.add(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __neg__(self):
        F = self.field
        return MatrixK(F, [[F.neg(a) for a in r] for r in self.rows])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if self.ncols != other.nrows:
            raise FieldError("shape mismatch")
        bt = list(zip(*other.rows)) if other.rows else []
        out = []
        for r in self.rows:
            row = []
            for c in bt:
                acc = F.zero()
                for a, b in zip(r, c):
                    acc = F.add(acc, F.mul(a, b))
                row.append(acc)
            if not bt:
                row = []
            out.append(row)
        return MatrixK(F, out) if out else MatrixK.zero(F, 0, other.ncols)

    def apply(self, vec):
        F = self.field
        out = []
        for r in self.rows:
            acc = F.zero()
            for a, b in zip(r, vec):
                acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return out

    def scale(self, c):
        F = self.field
        return MatrixK(F, [[F.mul(c, a) for a in r] for r in self.rows])

    def transpose(self):
        return MatrixK(self.field, list(zip(*self.rows)) if self.rows else [])

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise FieldError("shape mismatch")
        return MatrixK(
            self.field, [ra + rb for ra, rb in zip(self.rows, other.rows)]
        )

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise FieldError("shape mismatch")
        return MatrixK(self.field, list(self.rows) + list(other.rows))

    def kron(self, other):
        F = self.field
        out = []
        for ra in self.rows:
            for rb in other.rows:
                out.append([F.mul(a, b) for a in ra for b in rb])
        return MatrixK(F, out)

    # -- elimination -------------------------------------------------------

    def rref(self):
        """Reduced row echelon form; returns (R, pivot columns)."""
        F = self.field
        rows = [list(r) for r in self.rows]
        pivots = []
        pr = 0
        for pc in range(self.ncols):
            pivot = None
            for i in range(pr, len(rows)):
                if not F.is_zero(rows[i][pc]):
                    pivot = i
                    break
            if pivot is None:
                continue
            rows[pr], rows[pivot] = rows[pivot], rows[pr]
            inv = F.inv(rows[pr][pc])
            rows[pr] = [F.mul(inv, v) for v in rows[pr]]
            for i in range(len(rows)):
                if i != pr and not F.is_zero(rows[i][pc]):
                    c = rows[i][pc]
                    rows[i] = [
                        F.sub(v, F.mul(c, w)) for v, w in zip(rows[i], rows[pr])
                    ]
            pivots.append(pc)
            pr += 1
            if pr == len(rows):
                break
        return MatrixK(F, rows), pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        """Basis vectors of the right kernel."""
        F = self.field
        R, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for fc in free:
            v = [F.zero()] * self.ncols
            v[fc] = F.one()
            for i, pc in enumerate(pivots):
                v[pc] = F.neg(R.get(i, fc))
            basis.append(v)
        return basis

    def solve(self, rhs):
        """One exact solution of M x = rhs, or None if inconsistent."""
        F = self.field
        aug = MatrixK(F, [list(r) + [b] for r, b in zip(self.rows, rhs)])
        R, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [F.zero()] * self.ncols
        for i, pc in enumerate(pivots):
            x[pc] = R.get(i, self.ncols)
        return x

    def det(self):
        F = self.field
        if self.nrows != self.ncols:
            raise FieldError("determinant of non-square matrix")
        rows = [list(r) for r in self.rows]
        n = self.nrows
        d = F.one()
        for c in range(n):
            pivot = None
            for i in range(c, n):
                if not F.is_zero(rows[i][c]):
                    pivot = i
                    break
            if pivot is None:
                return F.zero()
            if pivot != c:
                rows[c], rows[pivot] = rows[pivot], rows[c]
                d = F.neg(d)
            d = F.mul(d, rows[c][c])
            inv = F.inv(rows[c][c])
            for i in range(c + 1, n):
                if not F.is_zero(rows[i][c]):
                    f = F.mul(inv, rows[i][c])
                    rows[i] = [
                        F.sub(v, F.mul(f, w)) for v, w in zip(rows[i], rows[c])
                    ]
        return d

    def inv(self):
        F = self.field
        if self.nrows != self.ncols:
            raise FieldError("inverse of non-square matrix")
        n = self.nrows
        aug = self.hstack(MatrixK.identity(F, n))
        R, pivots = aug.rref()
        if pivots != list(range(n)):
            raise FieldError("singular matrix")
        return MatrixK(F, [r[n:] for r in R.rows])

    # -- subspace comparison ----------------------------------------------

    def column_space_canonical(self):
        """Canonical basis matrix of the column space (as columns)."""
        R, pivots = self.transpose().rref()
        rows = [R.rows[i] for i in range(len(pivots))]
        return MatrixK(self.field, rows).transpose()

    def same_column_space(self, other):
        return (
            self.column_space_canonical() == other.column_space_canonical()
        )

    def contains_columns_of(self, other):
        """True if every column of `other` lies in this column space."""
        if other.ncols == 0:
            return True
        joint = self.hstack(other)
        return joint.rank() == self.rank()

    def __repr__(self):
        body = "; ".join(
            "[" + ", ".join(self.field.fmt(v) for v in r) + "]" for r in self.rows
        )
        return f"MatrixK({self.nrows}x{self.ncols}: {body})"
