"""Principal parts, torsion modules, and elementary transformations.

A PrincipalPart stores vector-valued Laurent tails in the chart-local
coordinates of its base bundle at the support point (finite points use the
A0 basis, infinity the Ainf basis).  A TorsionModule is a finite family of
such generators; summing its generators into the lattice pair produces the
enlarged bundle, and dualizing yields the canonical Quot point.
"""

from __future__ import annotations

from .bundles import Bundle, t_power
from .fields import FieldError
from .linalg import MatrixK
from .poly import Poly
from .polymat import MatrixR, lattice_canonical, lattice_canonical_inf
from .ratfunc import RatFunc
from .series import LaurentJet, _series_inverse, laurent_expand


class PrincipalPart:
    """A vector of Laurent tails at one point, modulo regular germs, in
    chart-local lattice coordinates."""

    __slots__ = ("field", "point", "tails")

    def __init__(self, field, point, tails):
        tails = tuple(j.negative_part() for j in tails)
        self.field = field
        self.point = point
        self.tails = tails

    @classmethod
    def from_tail_coeffs(cls, field, point, rows):
        """rows[i] = list of tail coefficients of component i, ascending
        from the deepest pole: [c_{-k}, ..., c_{-1}]."""
        tails = []
        for coeffs in rows:
            k = len(coeffs)
            tails.append(LaurentJet(field, point, -k, coeffs, 0))
        return cls(field, point, tails)

    @property
    def rank(self):
        return len(self.tails)

    def is_zero(self):
        return all(j.is_zero() for j in self.tails)

    def pole_order(self):
        return max((j.pole_order() for j in self.tails), default=0)

    def leading_vector(self):
        """Coefficient vector of z^-k, k = pole order."""
        k = self.pole_order()
        return [j.coeff(-k) for j in self.tails]

    def tails_as_rational(self):
        """Each tail as an exact rational function of t."""
        return [j.tail_as_ratfunc() for j in self.tails]

    def as_rational(self, V):
        """Ambient representative: chart basis applied to the tails."""
        A = V.Ainf if self.point.at_infinity else V.A0
        return A.apply(self.tails_as_rational())

    def __eq__(self, other):
        return (
            isinstance(other, PrincipalPart)
            and self.point == other.point
            and all(
                a.start == b.start and a.coeffs == b.coeffs
                for a, b in zip(self.tails, other.tails)
            )
            and self.rank == other.rank
        )

    def __repr__(self):
        body = ", ".join(j.fmt() for j in self.tails)
        return f"PrincipalPart({self.point!r}: [{body}])"


def principal_part_of_rational(V, g, x):
    """Principal part of the ambient rational vector g at x, in the
    chart-local coordinates of V."""
    A = V.Ainf if x.at_infinity else V.A0
    u = A.inv().apply(g)
    prec = 0
    tails = [laurent_expand(v, x, prec).negative_part() for v in u]
    return PrincipalPart(V.field, x, tails)


class TorsionModule:
    """A skyscraper sheaf presented by generators per support point."""

    __slots__ = ("bundle", "items")

    def __init__(self, bundle, items):
        """items: list of (CurvePoint, list of PrincipalPart)."""
        seen = []
        clean = []
        for x, gens in items:
            if x in seen:
                raise FieldError("duplicate support point")
            seen.append(x)
            gens = [g for g in gens if not g.is_zero()]
            for g in gens:
                if g.point != x or g.rank != bundle.rank:
                    raise FieldError("generator does not match support point")
            if gens:
                clean.append((x, tuple(gens)))
        self.bundle = bundle
        self.items = tuple(clean)

    def support(self):
        return [x for x, _ in self.items]

    def generators_at(self, x):
        for y, gens in self.items:
            if y == x:
                return list(gens)
        return []

    def __repr__(self):
        return f"TorsionModule({len(self.items)} support points)"


def pairing_principal(V, p, f):
    """Pair a principal part with a global section f of the dual bundle;
    the result is a principal part of the trivial line bundle.

    In chart-local coordinates the pairing is tails . (A^T f); requires the
    covector to be regular at the support point.
    """
    A = V.Ainf if p.point.at_infinity else V.A0
    phi = A.transpose().apply(f)
    k = p.pole_order()
    F = V.field
    acc = LaurentJet.zero(F, p.point, 0)
    for tail, comp in zip(p.tails, phi):
        jet = laurent_expand(comp, p.point, k + 1)
        if jet.start < 0:
            raise FieldError("not a regular covector")
        if tail.is_zero() or jet.is_zero():
            continue
        acc = acc + (tail * jet).negative_part()
    return PrincipalPart(F, p.point, [acc])


def coboundary_class(V, p):
    """Coordinates in h1_space(V) of the image of a torsion class under the
    connecting map to first cohomology.

    A finite-point class maps to the class of its rational representative's
    finite adele; at infinity the full adele of the representative is a
    coboundary, so the class is the negative of the finite-residue value.
    """
    rep = p.as_rational(V)
    coords = V.h1_class(rep)
    if p.point.at_infinity:
        coords = [V.field.neg(c) for c in coords]
    return coords


class NormalForm:
    """Canonical local generator system of a torsion module at one point.

    items: list of (k_j, w_j) with k_1 >= ... >= k_s; w_j is the jet vector
    z^k_j * p_j as a list of polynomials in the local uniformiser, each
    taken mod z^k_j, with the first coordinate not vanishing at 0 scaled to
    the constant 1.  frame completes the leading vectors w_j(0) to a basis.
    """

    __slots__ = ("field", "point", "items", "frame", "frame_inv", "s", "rank")

    def __init__(self, field, point, items, frame, frame_inv, rank):
        self.field = field
        self.point = point
        self.items = items
        self.frame = frame
        self.frame_inv = frame_inv
        self.s = len(items)
        self.rank = rank

    def local_degree(self):
        return sum(k for k, _ in self.items)

    def principal_parts(self):
        """The canonical generators as PrincipalParts."""
        out = []
        for k, w in self.items:
            rows = []
            for p in w:
                rows.append([p.coeff(m) for m in range(k)])
            out.append(PrincipalPart.from_tail_coeffs(self.field, self.point, rows))
        return out


def _jet_scale_unit(field, polys, k):
    """Scale a jet vector (polys mod z^k) by the inverse of its first
    component that is a unit at 0, making that component 1."""
    idx = None
    for i, p in enumerate(polys):
        if not field.is_zero(p.coeff(0)):
            idx = i
            break
    if idx is None:
        raise FieldError("jet vanishes at the point")
    unit = [polys[idx].coeff(m) for m in range(k)]
    inv = _series_inverse(field, unit, k)
    invp = Poly(field, inv)
    out = []
    for p in polys:
        q = p * invp
        out.append(Poly(field, [q.coeff(m) for m in range(k)]))
    return out


def _sort_key(field, k, lead):
    return (-k, tuple(lead))


def normal_form(tau, x):
    """Reduce the generators of tau at x to the canonical system with
    independent leading vectors, by the pole-lowering elimination."""
    gens = tau.generators_at(x)
    if not gens:
        raise FieldError("no torsion at the requested point")
    F = tau.bundle.field
    r = tau.bundle.rank
    work = [g for g in gens if not g.is_zero()]
    if not work:
        raise FieldError("no torsion at the requested point")

    while True:
        work.sort(key=lambda g: _sort_key(F, g.pole_order(), g.leading_vector()))
        leads = [g.leading_vector() for g in work]
        # find the first leading vector dependent on its predecessors
        dep = None
        for l in range(len(work)):
            if l == 0:
                if all(F.is_zero(c) for c in leads[0]):
                    dep = (0, [])
                    break
                continue
            M = MatrixK.from_cols(F, leads[:l])
            sol = M.solve(leads[l])
            if sol is not None:
                dep = (l, sol)
                break
        if dep is None:
            break
        l, sol = dep
        kl = work[l].pole_order()
        new_tails = list(work[l].tails)
        for j, c in enumerate(sol):
            if F.is_zero(c):
                continue
            kj = work[j].pole_order()
            shifted = [
                jt.shift(kj - kl).scale(F.neg(c)) for jt in work[j].tails
            ]
            new_tails = [
                (a + b).negative_part() for a, b in zip(new_tails, shifted)
            ]
        p_new = PrincipalPart(F, x, new_tails)
        work.pop(l)
        if not p_new.is_zero():
            work.append(p_new)
        if not work:
            raise FieldError("torsion module is trivial at the point")

    # canonical scaling and final ordering
    items = []
    for g in work:
        k = g.pole_order()
        polys = [
            Poly(F, [jt.coeff(m - k) for m in range(k)]) for jt in g.tails
        ]
        polys = _jet_scale_unit(F, polys, k)
        items.append((k, polys))
    items.sort(key=lambda kw: (-kw[0], tuple(tuple(p.coeffs) for p in kw[1])))

    # adapted frame: jet columns completed by standard vectors
    lead_cols = [[p.coeff(0) for p in w] for _, w in items]
    Ml = MatrixK.from_cols(F, lead_cols, nrows=r)
    chosen = list(lead_cols)
    frame_cols = [
        [RatFunc(p) for p in w] for _, w in items
    ]
    for i in range(r):
        e = [F.one() if m == i else F.zero() for m in range(r)]
        trial = MatrixK.from_cols(F, chosen + [e], nrows=r)
        if trial.rank() == len(chosen) + 1:
            chosen.append(e)
            frame_cols.append(
                [RatFunc.const(F, c) for c in e]
            )
        if len(chosen) == r:
            break
    frame = MatrixR.from_cols(F, frame_cols)
    frame_inv = frame.inv()
    return NormalForm(F, x, items, frame, frame_inv, r)


class QuotPoint:
    """The subsheaf dual to an elementary transformation, as a canonical
    Hermite-reduced sublattice pair of the dual bundle."""

    __slots__ = ("base", "L0", "Linf", "colength")

    def __init__(self, base, L0, Linf, colength):
        self.base = base
        self.L0 = L0
        self.Linf = Linf
        self.colength = colength

    def __repr__(self):
        return f"QuotPoint(colength {self.colength})"


def quot_equal(q1, q2):
    """Sheaf-level equality of Quot points (syntactic on canonical forms)."""
    if q1.base != q2.base:
        raise FieldError("Quot points over different base bundles")
    return q1.L0 == q2.L0 and q1.Linf == q2.Linf


def quot_from_bundle(V, Vtilde):
    """Canonical QuotPoint for the inclusion dual(Vtilde) inside dual(V)."""
    F = V.field
    r = V.rank
    D = Vtilde.dual()
    L0 = lattice_canonical(F, D.A0.cols(), r)
    Linf = lattice_canonical_inf(F, D.Ainf.cols(), r)
    return QuotPoint(V, L0, Linf, Vtilde.degree - V.degree)


def vtilde_from_tau(V, tau):
    """Enlarge V along the torsion module: the finite lattice absorbs the
    generators supported on the finite chart, the infinity lattice those on
    the punctured chart, re-expanded so each added column is regular away
    from its support point.

    Returns (Vtilde, QuotPoint of dual(Vtilde) in dual(V), degree d).
    """
    F = V.field
    r = V.rank
    cols0 = V.A0.cols()
    colsinf = V.Ainf.cols()
    for x, gens in tau.items:
        for p in gens:
            rep = p.as_rational(V)
            if x.at_infinity:
                colsinf.append(rep)
                continue
            cols0.append(rep)
            if not x.is_zero_point():
                # the point also lies on the punctured chart: add the
                # infinity-chart principal part of the same class
                u = V.Ainf.inv().apply(rep)
                prec = 0
                tails = [
                    laurent_expand(v, x, prec).negative_part().tail_as_ratfunc()
                    for v in u
                ]
                colsinf.append(V.Ainf.apply(tails))
    A0 = lattice_canonical(F, cols0, r)
    Ainf = lattice_canonical_inf(F, colsinf, r)
    Vt = Bundle(F, A0, Ainf)
    q = quot_from_bundle(V, Vt)
    return Vt, q, Vt.degree - V.degree


# -- independent dual description through adapted frames -------------------


def _dual_lattice_sum(field, lattices, r, infinity=False):
    """Intersection of full-rank lattices via duals: the dual of the sum of
    the dual lattices."""
    duals = []
    for L in lattices:
        duals.extend(L.inv().transpose().cols())
    if infinity:
        S = lattice_canonical_inf(field, duals, r)
    else:
        S = lattice_canonical(field, duals, r)
    Sd = S.inv().transpose()
    if infinity:
        return lattice_canonical_inf(field, Sd.cols(), r)
    return lattice_canonical(field, Sd.cols(), r)


def quot_from_frames(V, tau):
    """The Quot point computed from the adapted-frame description: near
    each support point the dual of the enlarged bundle is spanned by
    z^k_j f_j for the first s dual-frame covectors and by f_j beyond, where
    the frame completes the normal-form jets.

    This is an independent route used to cross-check vtilde_from_tau.
    Each support point contributes a lattice that agrees with the local
    description at the point and contains the dual lattice elsewhere; the
    result is the intersection of all of them with the ambient dual.
    """
    F = V.field
    r = V.rank
    Vd = V.dual()
    lattices0 = [Vd.A0]
    lattices_inf = [Vd.Ainf]
    for x, _gens in tau.items:
        nf = normal_form(tau, x)
        K = nf.items[0][0]
        Msub = _frame_in_t(F, nf, x)
        dualframe = Msub.inv().transpose()
        base = Vd.Ainf if x.at_infinity else Vd.A0
        ambient_frame = [base.apply(dualframe.col(j)) for j in range(r)]

        def local_lattice(vanish, extra_base):
            # vanish: a function of t with a simple zero at x, unit on the
            # rest of the relevant chart
            cols = []
            for j in range(r):
                col = ambient_frame[j]
                if j < nf.s:
                    fac = _power(F, vanish, nf.items[j][0])
                    col = [v * fac for v in col]
                cols.append(list(col))
            vK = _power(F, vanish, K)
            for j in range(r):
                cols.append([v * vK for v in extra_base.col(j)])
            return MatrixR.from_cols(F, cols)

        if x.at_infinity:
            lattices_inf.append(local_lattice(t_power(F, -1), Vd.Ainf))
        elif x.is_zero_point():
            lattices0.append(local_lattice(t_power(F, 1), Vd.A0))
        else:
            lin = RatFunc(Poly(F, (F.neg(x.value), F.one())))
            lattices0.append(local_lattice(lin, Vd.A0))
            # on the punctured chart the vanishing function (t-x)/t is a
            # unit at infinity
            zeta = lin * t_power(F, -1)
            lattices_inf.append(local_lattice(zeta, Vd.Ainf))
    L0 = _intersect_lattices(F, lattices0, r, infinity=False)
    Linf = _intersect_lattices(F, lattices_inf, r, infinity=True)
    d = -(Bundle(F, L0, Linf).degree - Vd.degree)
    return QuotPoint(V, L0, Linf, d)


def _power(field, f, n):
    acc = RatFunc.one(field)
    for _ in range(n):
        acc = acc * f
    return acc


def _frame_in_t(field, nf, x):
    """The adapted frame with its uniformiser substituted by the rational
    function of t it denotes."""
    if x.at_infinity:
        sub = RatFunc(Poly.one(field), Poly.x(field))
    elif x.is_zero_point():
        sub = RatFunc(Poly.x(field))
    else:
        sub = RatFunc(Poly(field, (field.neg(x.value), field.one())))
    rows = []
    for i in range(nf.rank):
        row = []
        for j in range(nf.rank):
            p = nf.frame.get(i, j).num  # frame entries are polynomials in z
            acc = RatFunc.zero(field)
            power = RatFunc.one(field)
            for m in range(p.deg + 1):
                acc = acc + power.scale(p.coeff(m))
                power = power * sub
            row.append(acc)
        rows.append(row)
    return MatrixR(field, rows)


def _intersect_lattices(field, lattices, r, infinity):
    """Intersection of full-rank lattices (dual of the sum of duals)."""
    canon = []
    for L in lattices:
        if L.ncols > r:
            if infinity:
                canon.append(lattice_canonical_inf(field, L.cols(), r))
            else:
                canon.append(lattice_canonical(field, L.cols(), r))
        else:
            canon.append(L)
    return _dual_lattice_sum(field, canon, r, infinity=infinity)
