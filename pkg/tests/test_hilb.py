"""Subschemes of the scroll, the correspondence with torsion modules, and
the exhaustive small-field census."""

import pytest

from scrollalg.bundles import Bundle, oracle_h0
from scrollalg.curve import CurvePoint
from scrollalg.eltrans import (
    PrincipalPart,
    TorsionModule,
    quot_equal,
    vtilde_from_tau,
)
from scrollalg.fields import GF, QQ, FieldError
from scrollalg.hilb import (
    Cluster,
    ZScheme,
    alpha,
    enumerate_reduced,
    pi_defect,
    quot_to_hilb,
    roundtrip_check,
)
from scrollalg.poly import Poly
from scrollalg.suites import make_rng, random_bundle, random_torsion


def _x(v, field=QQ):
    return CurvePoint.finite(field, v)


def _cl(field, x, k, ints):
    return Cluster(field, x, k, [Poly.of(field, c) for c in ints])


def test_cluster_normalization():
    # jet (2, 2z) normalizes to (1, z)
    c = _cl(QQ, _x(0), 2, [(2,), (0, 2)])
    assert c.jet[0] == Poly.one(QQ)
    assert c.jet[1] == Poly.x(QQ)
    with pytest.raises(FieldError):
        _cl(QQ, _x(0), 1, [(0,), (0,)])
    with pytest.raises(FieldError):
        _cl(QQ, _x(0), 0, [(1,)])


def test_zscheme_sorting_and_branch_points():
    c1 = _cl(QQ, _x(1), 1, [(1,), (0,)])
    c2 = _cl(QQ, _x(0), 1, [(1,), (0,)])
    Z = ZScheme(QQ, [c1, c2])
    assert Z.clusters == (c2, c1)
    assert Z.length() == 2
    # same branch point (same x, same direction) is rejected
    c3 = _cl(QQ, _x(1), 2, [(1,), (0, 1)])
    with pytest.raises(FieldError):
        ZScheme(QQ, [c1, c3])
    # same x, different directions is fine
    c4 = _cl(QQ, _x(1), 1, [(0,), (1,)])
    assert ZScheme(QQ, [c1, c4]).length() == 2


def test_alpha_single_point():
    V = Bundle.trivial(QQ, 2)
    Z = ZScheme(QQ, [_cl(QQ, _x(0), 1, [(1,), (0,)])])
    VZ, tauZ, q = alpha(V, Z)
    assert VZ.degree == 1
    assert sorted(VZ.splitting().exponents) == [0, 1]
    assert q.colength == 1
    # the transformation recovered as a torsion module has degree 1
    _, q2, d = vtilde_from_tau(V, tauZ)
    assert d == 1 and quot_equal(q, q2)


def test_alpha_fiber_example_defect_one():
    """Three distinct directions in one rank-2 fiber: the conditions only
    cut the full fiber, so V_Z = V(x) and the defect is 1."""
    V = Bundle.trivial(QQ, 2)
    x = _x(0)
    Z = ZScheme(
        QQ,
        [
            _cl(QQ, x, 1, [(1,), (0,)]),
            _cl(QQ, x, 1, [(0,), (1,)]),
            _cl(QQ, x, 1, [(1,), (1,)]),
        ],
    )
    VZ, _tau, q = alpha(V, Z)
    assert VZ.degree == V.degree + 2  # not +3
    assert pi_defect(V, Z) == 1
    W = V.twist(x, 1)
    # V_Z equals V tensor O(x) as a Quot point of V*
    x0 = CurvePoint.finite(QQ, 0)
    full = TorsionModule(
        V,
        [
            (
                x0,
                [
                    PrincipalPart.from_tail_coeffs(
                        QQ, x0, [[QQ.one()], []]
                    ),
                    PrincipalPart.from_tail_coeffs(
                        QQ, x0, [[], [QQ.one()]]
                    ),
                ],
            )
        ],
    )
    _, q_full, _ = vtilde_from_tau(V, full)
    assert quot_equal(q, q_full)
    assert sorted(VZ.splitting().exponents) == sorted(
        W.splitting().exponents
    )


def test_alpha_order_two_cluster():
    V = Bundle.trivial(QQ, 2)
    Z = ZScheme(QQ, [_cl(QQ, _x(0), 2, [(1,), (0, 1)])])
    VZ, _tau, _q = alpha(V, Z)
    assert VZ.degree == 2
    assert VZ.h0() == 4
    assert VZ.h0() == oracle_h0(VZ, 8)
    assert pi_defect(V, Z) == 0


def test_pi_defect_generic_zero():
    rng = make_rng(3, "pi-generic")
    F = GF(101)
    for n in range(10):
        V = random_bundle(F, rng, 2, -1, 2)
        Z = ZScheme(
            F,
            [
                _cl(F, _x(n, F), 1, [(1,), (3,)]),
                _cl(F, _x(n + 1, F), 1, [(1,), (5,)]),
            ],
        )
        assert pi_defect(V, Z) == 0


def test_quot_to_hilb_reduced_and_order_two():
    V = Bundle.trivial(QQ, 2)
    x = _x(0)
    p = PrincipalPart.from_tail_coeffs(
        QQ, x, [[QQ.one(), QQ.zero()], [QQ.one()]]
    )
    tau = TorsionModule(V, [(x, [p])])
    Z = quot_to_hilb(V, tau)
    assert len(Z.clusters) == 1
    c = Z.clusters[0]
    assert c.k == 2
    assert c.jet[0] == Poly.one(QQ)
    assert c.jet[1] == Poly.x(QQ)


def test_roundtrip_examples():
    V = Bundle.trivial(QQ, 2)
    x = _x(0)
    reduced = TorsionModule(
        V,
        [
            (
                x,
                [PrincipalPart.from_tail_coeffs(QQ, x, [[QQ.one()], []])],
            )
        ],
    )
    assert roundtrip_check(V, reduced)
    order2 = TorsionModule(
        V,
        [
            (
                x,
                [
                    PrincipalPart.from_tail_coeffs(
                        QQ, x, [[QQ.one(), QQ.zero()], [QQ.one()]]
                    )
                ],
            )
        ],
    )
    assert roundtrip_check(V, order2)


def test_roundtrip_random():
    for F in (GF(101), QQ):
        for n in range(15):
            rng = make_rng(4, "roundtrip-unit", n)
            V = random_bundle(F, rng, rng.randint(1, 3), -2, 2)
            tau = random_torsion(V, rng, 3)
            assert roundtrip_check(V, tau)


def test_census_small():
    rep = enumerate_reduced(2, 2, 1)
    assert rep["torsion_count"] == rep["zscheme_count"] == 9
    assert rep["closed_form"] == 9
    assert rep["bijection"]


def test_census_budget():
    with pytest.raises(FieldError):
        enumerate_reduced(101, 2, 2)
