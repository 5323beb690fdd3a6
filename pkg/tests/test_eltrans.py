"""Principal parts, torsion normal forms, and elementary transformations."""

import random

import pytest

from scrollalg.bundles import Bundle
from scrollalg.curve import CurvePoint
from scrollalg.eltrans import (
    PrincipalPart,
    TorsionModule,
    normal_form,
    pairing_principal,
    quot_equal,
    quot_from_frames,
    vtilde_from_tau,
)
from scrollalg.fields import GF, QQ, FieldError
from scrollalg.poly import Poly
from scrollalg.ratfunc import RatFunc
from scrollalg.suites import make_rng, random_bundle, random_torsion


def _pp(field, x, rows):
    return PrincipalPart.from_tail_coeffs(field, x, rows)


def _x0(field=QQ):
    return CurvePoint.finite(field, 0)


def test_pairing_principal():
    V = Bundle.trivial(QQ, 2)
    # p = e1/t^2
    p = _pp(QQ, _x0(), [[QQ.one(), QQ.zero()], []])
    f_t = [RatFunc(Poly.x(QQ)), RatFunc.zero(QQ)]
    out = pairing_principal(V, p, f_t)
    assert out.tails[0].coeff(-1) == QQ.one()
    assert out.pole_order() == 1
    f_t2 = [RatFunc(Poly.monomial(QQ, 2)), RatFunc.zero(QQ)]
    assert pairing_principal(V, p, f_t2).is_zero()
    f_e2 = [RatFunc.zero(QQ), RatFunc.one(QQ)]
    assert pairing_principal(V, p, f_e2).is_zero()


def test_pairing_requires_regular_covector():
    V = Bundle.trivial(QQ, 1)
    p = _pp(QQ, _x0(), [[QQ.one()]])
    f = [RatFunc(Poly.one(QQ), Poly.x(QQ))]
    with pytest.raises(FieldError):
        pairing_principal(V, p, f)


def test_normal_form_full_fiber():
    V = Bundle.trivial(QQ, 2)
    x = _x0()
    gens = [
        _pp(QQ, x, [[QQ.one()], []]),
        _pp(QQ, x, [[], [QQ.one()]]),
    ]
    tau = TorsionModule(V, [(x, gens)])
    nf = normal_form(tau, x)
    assert nf.s == 2
    assert [k for k, _ in nf.items] == [1, 1]
    leads = [[w[0].coeff(0), w[1].coeff(0)] for _, w in nf.items]
    from scrollalg.linalg import MatrixK

    assert MatrixK.from_cols(QQ, leads).rank() == 2


def test_normal_form_single_order_two():
    # generator (1/t^2, 1/t) -> s = 1, k = 2, jet (1, z)
    V = Bundle.trivial(QQ, 2)
    x = _x0()
    p = _pp(QQ, x, [[QQ.one(), QQ.zero()], [QQ.one()]])
    tau = TorsionModule(V, [(x, [p])])
    nf = normal_form(tau, x)
    assert nf.s == 1
    k, w = nf.items[0]
    assert k == 2
    assert w[0] == Poly.one(QQ)
    assert w[1] == Poly.x(QQ)
    assert nf.local_degree() == 2


def test_normal_form_pole_lowering():
    # {e1/t^2, (e1 + t e2)/t}: leading vectors proportional; the second
    # generator reduces away entirely and only k = (2) survives
    V = Bundle.trivial(QQ, 2)
    x = _x0()
    g1 = _pp(QQ, x, [[QQ.one(), QQ.zero()], []])
    g2 = _pp(QQ, x, [[QQ.one()], []])
    tau = TorsionModule(V, [(x, [g1, g2])])
    nf = normal_form(tau, x)
    assert [k for k, _ in nf.items] == [2]
    # the two generator systems span the same local module
    tau1 = TorsionModule(V, [(x, [g1])])
    _, q_two, _ = vtilde_from_tau(V, tau)
    _, q_one, _ = vtilde_from_tau(V, tau1)
    assert quot_equal(q_two, q_one)


def test_vtilde_single_generator():
    V = Bundle.trivial(QQ, 2)
    x = _x0()
    tau = TorsionModule(V, [(x, [_pp(QQ, x, [[QQ.one()], []])])])
    Vt, q, d = vtilde_from_tau(V, tau)
    assert d == 1
    assert sorted(Vt.splitting().exponents) == [0, 1]
    assert q.colength == 1


def test_vtilde_full_fiber_is_point_twist():
    V = Bundle.trivial(QQ, 2)
    x = CurvePoint.finite(QQ, 2)
    gens = [
        _pp(QQ, x, [[QQ.one()], []]),
        _pp(QQ, x, [[], [QQ.one()]]),
    ]
    tau = TorsionModule(V, [(x, gens)])
    Vt, _q, d = vtilde_from_tau(V, tau)
    W = V.twist(x, 1)
    assert d == 2
    assert Vt.degree == W.degree
    assert sorted(Vt.splitting().exponents) == sorted(
        W.splitting().exponents
    )


def test_vtilde_order_two():
    V = Bundle.trivial(QQ, 2)
    x = _x0()
    p = _pp(QQ, x, [[QQ.one(), QQ.zero()], [QQ.one()]])
    tau = TorsionModule(V, [(x, [p])])
    Vt, _q, d = vtilde_from_tau(V, tau)
    assert d == 2
    assert sorted(Vt.splitting().exponents) == [1, 1]
    assert Vt.h0() == 4


def test_vtilde_support_at_infinity():
    V = Bundle.trivial(QQ, 2)
    x = CurvePoint.infinity(QQ)
    tau = TorsionModule(V, [(x, [_pp(QQ, x, [[QQ.one()], []])])])
    Vt, _q, d = vtilde_from_tau(V, tau)
    assert d == 1
    assert Vt.degree == 1


def test_quot_equal_requires_same_base():
    V = Bundle.trivial(QQ, 2)
    W = Bundle.split(QQ, [1, 0])
    x = _x0()
    tau = TorsionModule(V, [(x, [_pp(QQ, x, [[QQ.one()], []])])])
    tw = TorsionModule(W, [(x, [_pp(QQ, x, [[QQ.one()], []])])])
    _, q1, _ = vtilde_from_tau(V, tau)
    _, q2, _ = vtilde_from_tau(W, tw)
    with pytest.raises(FieldError):
        quot_equal(q1, q2)


def test_distinct_hyperplanes_distinct_quots():
    V = Bundle.trivial(QQ, 2)
    x = _x0()
    t1 = TorsionModule(V, [(x, [_pp(QQ, x, [[QQ.one()], []])])])
    t2 = TorsionModule(V, [(x, [_pp(QQ, x, [[], [QQ.one()]])])])
    _, q1, _ = vtilde_from_tau(V, t1)
    _, q2, _ = vtilde_from_tau(V, t2)
    assert not quot_equal(q1, q2)


def test_quot_from_frames_agrees():
    """The adapted-frame route and the lattice-sum route produce the same
    Quot point on random instances."""
    for F in (GF(7), QQ):
        for n in range(12):
            rng = make_rng(2, "frames", n)
            V = random_bundle(F, rng, rng.randint(1, 2), -2, 2)
            tau = random_torsion(V, rng, 3)
            _, q1, _ = vtilde_from_tau(V, tau)
            q2 = quot_from_frames(V, tau)
            assert quot_equal(q1, q2)
            assert q1.colength == q2.colength


def test_degree_equals_sum_of_local_degrees():
    rng = random.Random(12)
    F = GF(11)
    for _ in range(10):
        V = random_bundle(F, rng, 2, -2, 2)
        tau = random_torsion(V, rng, 4)
        total = sum(
            normal_form(tau, x).local_degree() for x in tau.support()
        )
        _, _, d = vtilde_from_tau(V, tau)
        assert d == total
