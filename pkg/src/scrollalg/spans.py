"""Spans and defects of subschemes of the scroll in first cohomology.

Every span is computed by two independent routes and compared: evaluation
of a basis of sections of the canonical twist of the dual against the jet
functionals of the subscheme (transported to first-cohomology coordinates
through the residue pairing), and coboundary classes of the canonical
torsion generators.  The defect identities relate these dimensions to
differences of section counts.
"""

from __future__ import annotations

from .bundles import Bundle
from .eltrans import PrincipalPart, TorsionModule, coboundary_class, vtilde_from_tau
from .fields import FieldError
from .hilb import ZScheme, alpha, quot_to_hilb
from .linalg import MatrixK
from .poly import Poly
from .ratfunc import RatFunc
from .series import laurent_expand


class H1Subspace:
    """A subspace of the first-cohomology coordinate space of a bundle."""

    __slots__ = ("space", "basis", "dim")

    def __init__(self, space, vectors):
        F = space.bundle.field
        M = MatrixK.from_cols(F, vectors, nrows=space.dim)
        self.space = space
        self.basis = M.column_space_canonical()
        self.dim = self.basis.ncols

    def projective_dim(self):
        return self.dim - 1

    def __eq__(self, other):
        return (
            isinstance(other, H1Subspace)
            and self.space.bundle == other.space.bundle
            and self.basis == other.basis
        )

    def contains(self, other):
        return self.basis.contains_columns_of(other.basis)

    def __repr__(self):
        return f"H1Subspace(dim {self.dim} of {self.space.dim})"


class DeltaPoint:
    """A decomposable direction over a curve point: a fiber direction of V
    and one of F, in chart-local coordinates at the point."""

    __slots__ = ("x", "v", "w")

    def __init__(self, x, v, w, field):
        if all(field.is_zero(c) for c in v) or all(field.is_zero(c) for c in w):
            raise FieldError("decomposable directions must be nonzero")
        self.x = x
        self.v = tuple(v)
        self.w = tuple(w)


def _cluster_pairing_rows(V, W, c, sections, fdirs=None, Fbdl=None):
    """Evaluation rows of sections of K tensor dual(V tensor F) against the
    jet functionals of cluster c (optionally crossed with fiber directions
    of F given in chart-local coordinates)."""
    F = V.field
    AV = V.Ainf if c.x.at_infinity else V.A0
    v_amb = AV.apply([_jet_in_t(F, p, c.x) for p in c.jet])
    directions = []
    if fdirs is None:
        directions.append(None)
    else:
        AF = Fbdl.Ainf if c.x.at_infinity else Fbdl.A0
        for beta in fdirs:
            directions.append(AF.col(beta))
    rows = []
    for d in directions:
        if d is None:
            target = v_amb
        else:
            target = [vm * dm for vm in v_amb for dm in d]
        for i in range(c.k):
            row = []
            for eta in sections:
                acc = RatFunc.zero(F)
                for a, b in zip(eta, target):
                    if a and b:
                        acc = acc + a * b
                if c.x.at_infinity:
                    # read the canonical-bundle value in its ds chart
                    acc = acc * _neg_t2(F)
                jet = laurent_expand(acc, c.x, c.k)
                if jet.start < 0:
                    raise AssertionError("pairing value not regular")
                row.append(jet.coeff(i))
            rows.append(row)
    return rows


def _neg_t2(F):
    return RatFunc(Poly(F, (F.zero(), F.zero(), F.neg(F.one()))))


def _jet_in_t(F, p, x):
    """A jet polynomial in the local uniformiser of x as a rational
    function of t (z = t - a at a finite point, z = 1/t at infinity)."""
    if x.at_infinity:
        sub = RatFunc(Poly.one(F), Poly.x(F))
    else:
        sub = RatFunc(Poly(F, (F.neg(x.value), F.one())))
    acc = RatFunc.zero(F)
    power = RatFunc.one(F)
    for m in range(p.deg + 1):
        c = p.coeff(m)
        if not F.is_zero(c):
            acc = acc + power.scale(c)
        power = power * sub
    return acc


def _transport_rows(V, rows):
    """Convert functionals on sections of the canonical twist of the dual
    into first-cohomology coordinate vectors through the residue pairing."""
    S = V.serre_pairing()
    St = S.transpose()
    out = []
    for row in rows:
        c = St.solve(list(row))
        if c is None:
            raise AssertionError("residue pairing failed to invert")
        out.append(c)
    return out


def _cluster_coboundary_classes(V, c, Fbdl=None):
    """Coboundary classes of the canonical torsion generators of cluster c
    (optionally tensored with the local frame of F)."""
    F = V.field
    amb = V if Fbdl is None else V.tensor(Fbdl)
    rF = 1 if Fbdl is None else Fbdl.rank
    out = []
    for beta in range(rF):
        for i in range(c.k):
            rows = []
            for m in range(V.rank):
                # tails of z^(i-k) * jet_m
                tail = [c.jet[m].coeff(j) for j in range(c.k - i)]
                rows.append(tail)
            if Fbdl is None:
                kron_rows = rows
            else:
                kron_rows = []
                for m in range(V.rank):
                    for b2 in range(rF):
                        kron_rows.append(rows[m] if b2 == beta else [])
            p = PrincipalPart.from_tail_coeffs(F, c.x, kron_rows)
            out.append(coboundary_class(amb, p))
    return out


def span_of(V, Z):
    """(H1Subspace, defect) of a subscheme of the scroll of V.

    Both the evaluation route and the coboundary route are computed; they
    must produce the same subspace.
    """
    sub, defect = _span_generic(V, None, Z)
    return sub, defect


def rel_span(V, Fbdl, Z):
    """(H1Subspace in H1(V tensor F), relative defect) of Z; the relative
    defect counts rk(F) * length(Z) - 1 - projective dimension."""
    return _span_generic(V, Fbdl, Z)


def _span_generic(V, Fbdl, Z):
    amb = V if Fbdl is None else V.tensor(Fbdl)
    if amb.h1() == 0:
        raise FieldError("empty ambient")
    rF = 1 if Fbdl is None else Fbdl.rank
    space = amb.h1_space()
    if not Z.clusters:
        sub = H1Subspace(space, [])
        return sub, 0
    sections = amb.dual().canonical_twist().section_basis()
    rows = []
    cls_classes = []
    for c in Z.clusters:
        fdirs = None if Fbdl is None else list(range(rF))
        rows.extend(
            _cluster_pairing_rows(V, amb, c, sections, fdirs=fdirs, Fbdl=Fbdl)
        )
        cls_classes.extend(_cluster_coboundary_classes(V, c, Fbdl=Fbdl))
    routeA = H1Subspace(space, _transport_rows(amb, rows))
    routeB = H1Subspace(space, cls_classes)
    if routeA != routeB:
        raise AssertionError("span routes disagree")
    defect = rF * Z.length() - routeA.dim
    return routeA, defect


def ggrr_check(V, tau):
    """Section-count identity for the canonical subscheme of tau: the gain
    in global sections equals the span defect."""
    if V.h1() == 0:
        raise FieldError("empty ambient")
    Z = quot_to_hilb(V, tau)
    Vt, _q, _d = vtilde_from_tau(V, tau)
    lhs = Vt.h0() - V.h0()
    _sub, defect = span_of(V, Z)
    return lhs == defect


def relggrr_check(V, Fbdl, tau):
    """Relative section-count identity: gain of sections of the twisted
    enlargement equals the relative span defect."""
    amb = V.tensor(Fbdl)
    if amb.h1() == 0:
        raise FieldError("empty ambient")
    Z = quot_to_hilb(V, tau)
    Vt, _q, _d = vtilde_from_tau(V, tau)
    lhs = Vt.tensor(Fbdl).h0() - amb.h0()
    _sub, defect = rel_span(V, Fbdl, Z)
    return lhs == defect


def same_span_check(V, Z1, Z2):
    """Spans agree whenever the subschemes induce the same Quot point."""
    from .eltrans import quot_equal

    _V1, _t1, q1 = alpha(V, Z1)
    _V2, _t2, q2 = alpha(V, Z2)
    if not quot_equal(q1, q2):
        raise FieldError("different Quot points")
    s1, _ = span_of(V, Z1)
    s2, _ = span_of(V, Z2)
    return s1 == s2


def psi_point(V, c):
    """Image of a reduced point of the scroll in first cohomology: the
    class of (fiber direction)/z; the zero vector signals a base point."""
    if V.h1() == 0:
        raise FieldError("empty ambient")
    if c.k != 1:
        raise FieldError("psi takes a reduced point")
    F = V.field
    rows = [[c.jet[m].coeff(0)] for m in range(V.rank)]
    p = PrincipalPart.from_tail_coeffs(F, c.x, rows)
    return coboundary_class(V, p)


def psi_delta(V, Fbdl, delta):
    """Image of a decomposable direction in the first cohomology of the
    tensor product."""
    amb = V.tensor(Fbdl)
    if amb.h1() == 0:
        raise FieldError("empty ambient")
    F = V.field
    rows = []
    for a in delta.v:
        for b in delta.w:
            rows.append([F.mul(a, b)])
    p = PrincipalPart.from_tail_coeffs(F, delta.x, rows)
    return coboundary_class(amb, p)
