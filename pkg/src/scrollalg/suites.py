"""Seeded verification suites with deterministic, replayable reports.

Every suite draws its instances from a seeded generator (sub-seeds are
derived from the master seed by label, so suites are independent of each
other and of execution order), checks an exact identity on each instance,
and reports pass/fail counts.  Failures carry the full serialized instance
so they can be replayed in isolation.  Reports contain no timing data and
are byte-identical across runs with the same configuration.
"""

from __future__ import annotations

import json
import random

from .bundles import Bundle, oracle_h0, t_power
from .curve import CurvePoint
from .eltrans import (
    PrincipalPart,
    TorsionModule,
    quot_equal,
    quot_from_frames,
    vtilde_from_tau,
)
from .fields import FieldError, field_from_descriptor
from .hilb import (
    Cluster,
    ZScheme,
    alpha,
    enumerate_reduced,
    pi_defect,
    quot_to_hilb,
    roundtrip_check,
)
from .linalg import MatrixK
from .poly import Poly
from .polymat import MatrixR
from .ratfunc import RatFunc
from .serialize import bundle_to_json, torsion_to_json, zscheme_to_json
from .spans import (
    DeltaPoint,
    ggrr_check,
    rel_span,
    relggrr_check,
    same_span_check,
    span_of,
)
from . import brillnoether as bn

SCHEMA_VERSION = "scrollalg-report/1"


class SuiteConfig:
    """Configuration for a suite run."""

    def __init__(self, field_desc="Q", seed=0, samples=None, suites=None):
        self.field_desc = field_desc
        self.field = field_from_descriptor(field_desc)
        self.seed = seed
        self.samples = samples
        self.suites = list(suites) if suites else []

    def as_json(self):
        return {
            "field": self.field_desc,
            "seed": self.seed,
            "samples": self.samples,
            "suites": list(self.suites),
        }


def make_rng(seed, label, index=None):
    """Deterministic sub-generator; string seeding avoids hash salting."""
    tag = f"{seed}:{label}" if index is None else f"{seed}:{label}:{index}"
    return random.Random(tag)


# -- random instance generators --------------------------------------------


def random_unimodular(field, rng, r, ops=2, inf=False):
    """A unimodular matrix over k[t] (or k[1/t] when inf=True), built from
    elementary column operations on the identity."""
    M = [[RatFunc.one(field) if i == j else RatFunc.zero(field) for j in range(r)] for i in range(r)]
    var = t_power(field, -1 if inf else 1)
    for _ in range(ops):
        i = rng.randrange(r)
        j = rng.randrange(r)
        if i == j:
            continue
        c = field.random(rng)
        e = rng.randrange(2)
        fac = RatFunc.const(field, c)
        for _k in range(e):
            fac = fac * var
        for m in range(r):
            M[m][i] = M[m][i] + M[m][j] * fac
    return MatrixR(field, M)


def random_constant_invertible(field, rng, r):
    while True:
        rows = [[field.random(rng) for _ in range(r)] for _ in range(r)]
        K = MatrixK(field, rows)
        if not field.is_zero(K.det()):
            return MatrixR(
                field, [[RatFunc.const(field, v) for v in row] for row in rows]
            )


def random_bundle(field, rng, rank, lo, hi, scrambled=True):
    """A random bundle with splitting exponents drawn from [lo, hi]; when
    scrambled, the lattice presentation hides the splitting."""
    exps = sorted((rng.randint(lo, hi) for _ in range(rank)), reverse=True)
    V = Bundle.split(field, exps)
    if not scrambled:
        return V
    C = random_constant_invertible(field, rng, rank)
    P = random_unimodular(field, rng, rank, ops=2)
    Q = random_unimodular(field, rng, rank, ops=2, inf=True)
    return Bundle(field, C * P, C * P * V.Ainf * Q)


def _random_point(field, rng, allow_inf=True):
    if allow_inf and rng.randrange(4) == 0:
        return CurvePoint.infinity(field)
    if field.finite:
        return CurvePoint.finite(field, field.of(rng.randrange(field.char)))
    return CurvePoint.finite(field, field.of(rng.randint(-4, 4)))


def random_torsion(V, rng, max_degree, allow_inf=True):
    """A random nonzero torsion module over V of nominal degree at most
    max_degree, mixing reduced and nonreduced local structure."""
    F = V.field
    r = V.rank
    budget = rng.randint(1, max_degree)
    items = []
    used = []
    while budget > 0:
        x = _random_point(F, rng, allow_inf)
        if x in used:
            break
        used.append(x)
        gens = []
        ngen = 1 + (rng.randrange(2) if budget > 1 else 0)
        for _ in range(ngen):
            order = 1 + (rng.randrange(2) if budget > 1 else 0)
            budget -= order
            rows = []
            for _m in range(r):
                rows.append([F.random(rng) for _ in range(order)])
            p = PrincipalPart.from_tail_coeffs(F, x, rows)
            if not p.is_zero():
                gens.append(p)
            if budget <= 0:
                break
        if gens:
            items.append((x, gens))
    if not items:
        rows = [[F.one()]] + [[F.zero()]] * (r - 1)
        x = CurvePoint.finite(F, F.zero())
        items = [(x, [PrincipalPart.from_tail_coeffs(F, x, rows)])]
    return TorsionModule(V, items)


def _random_direction(field, rng, r):
    while True:
        v = [field.random(rng) for _ in range(r)]
        if not all(field.is_zero(c) for c in v):
            return v


def _instance_payload(V=None, tau=None, Z=None, extra=None):
    out = {}
    if V is not None:
        out["bundle"] = bundle_to_json(V)
    if tau is not None:
        out["torsion"] = torsion_to_json(tau)
    if Z is not None:
        out["zscheme"] = zscheme_to_json(Z)
    if extra:
        out.update(extra)
    return out


def _suite(name, samples):
    return {"name": name, "samples": samples, "passes": 0, "failures": []}


def _record(result, ok, payload):
    if ok:
        result["passes"] += 1
    else:
        result["failures"].append(payload)


# -- individual suites -----------------------------------------------------


def suite_ggrr(field, samples, seed):
    """Section-count gain equals the span defect (plain form)."""
    result = _suite("ggrr", samples)
    for n in range(samples):
        rng = make_rng(seed, "ggrr", n)
        rank = rng.randint(1, 3)
        V = random_bundle(field, rng, rank, -6, -2)
        tau = random_torsion(V, rng, 6 // max(1, rank))
        try:
            ok = ggrr_check(V, tau)
        except AssertionError:
            ok = False
        _record(result, ok, _instance_payload(V, tau, extra={"index": n}))
    return result


def suite_relggrr(field, samples, seed):
    """Relative section-count identity, including the worked instance
    V = E*, F = E with E = O(3) + O (both sides equal 4)."""
    result = _suite("relggrr", samples)
    E = Bundle.split(field, [3, 0])
    V = E.dual()
    rows = [[field.one()], [field.zero()]]
    x = CurvePoint.finite(field, field.zero())
    base_tau = TorsionModule(
        V, [(x, [PrincipalPart.from_tail_coeffs(field, x, rows)])]
    )
    # worked instance first: defect and section gain both equal 4
    lam = bn.SectionSubspace(
        E,
        [
            [RatFunc(Poly.of(field, (0, 0, 0, 1))), RatFunc(Poly.one(field))],
            [
                RatFunc(Poly.of(field, (0, -2, 3))),
                RatFunc(Poly.one(field)),
            ],
        ],
    )
    tau0, Z0 = bn.zlambda(E, lam)
    _sub, defect = rel_span(V, E, Z0)
    Vt, _q, _d = vtilde_from_tau(V, tau0)
    gain = Vt.tensor(E).h0() - V.tensor(E).h0()
    ok = defect == 4 and gain == 4
    _record(
        result,
        ok,
        _instance_payload(V, tau0, extra={"worked": True, "defect": defect}),
    )
    for n in range(samples - 1):
        rng = make_rng(seed, "relggrr", n)
        rV = rng.randint(1, 2)
        rF = rng.randint(1, 2)
        V = random_bundle(field, rng, rV, -6, -3)
        Fb = random_bundle(field, rng, rF, 0, 1)
        if V.tensor(Fb).h1() == 0:
            _record(result, True, {"index": n, "skipped": "empty ambient"})
            continue
        tau = random_torsion(V, rng, 3)
        try:
            ok = relggrr_check(V, Fb, tau)
        except AssertionError:
            ok = False
        _record(result, ok, _instance_payload(V, tau, extra={"index": n}))
    return result


def suite_roundtrip(field, samples, seed):
    """alpha inverts the Quot-to-Hilb direction on the Quot point."""
    result = _suite("roundtrip", samples)
    for n in range(samples):
        rng = make_rng(seed, "roundtrip", n)
        rank = rng.randint(1, 3)
        V = random_bundle(field, rng, rank, -2, 2)
        tau = random_torsion(V, rng, 4 // max(1, rank) + 1)
        try:
            ok = roundtrip_check(V, tau)
        except (AssertionError, FieldError):
            ok = False
        _record(result, ok, _instance_payload(V, tau, extra={"index": n}))
    return result


def suite_spans(field, samples, seed):
    """Evaluation route and coboundary route give the same subspace (the
    comparison is asserted inside the span computation)."""
    result = _suite("spans", samples)
    for n in range(samples):
        rng = make_rng(seed, "spans", n)
        relative = rng.randrange(2) == 1
        rank = rng.randint(1, 2)
        V = random_bundle(field, rng, rank, -5, -2)
        tau = random_torsion(V, rng, 3)
        Z = quot_to_hilb(V, tau)
        try:
            if relative:
                Fb = random_bundle(field, rng, rng.randint(1, 2), 0, 1)
                if V.tensor(Fb).h1() == 0:
                    _record(result, True, {"index": n, "skipped": "empty ambient"})
                    continue
                rel_span(V, Fb, Z)
            else:
                span_of(V, Z)
            ok = True
        except AssertionError:
            ok = False
        _record(result, ok, _instance_payload(V, tau, Z, extra={"index": n}))
    return result


def suite_pi(field, samples, seed):
    """Degree-bookkeeping and jet-rank routes of the defect agree; the
    agreement is asserted inside pi_defect.  Engineered defective
    instances (several points in one fiber) are mixed in."""
    result = _suite("pi", samples)
    for n in range(samples):
        rng = make_rng(seed, "pi", n)
        rank = rng.randint(2, 3)
        V = random_bundle(field, rng, rank, -1, 2)
        engineered = n % 5 == 0
        try:
            if engineered:
                # several reduced points in a single fiber: defective as
                # soon as their count exceeds the rank
                x = _random_point(field, rng)
                npts = rank + 1
                dirs = []
                while len(dirs) < npts:
                    v = _random_direction(field, rng, rank)
                    if not any(bn._proportional(field, v, w) for w in dirs):
                        dirs.append(v)
                clusters = [
                    Cluster(field, x, 1, [Poly.const(field, c) for c in v])
                    for v in dirs
                ]
            else:
                clusters = []
                used = []
                for _ in range(rng.randint(1, 3)):
                    x = _random_point(field, rng)
                    k = rng.randint(1, 2)
                    jet = [
                        Poly(field, [field.random(rng) for _ in range(k)])
                        for _ in range(rank)
                    ]
                    if all(field.is_zero(p.coeff(0)) for p in jet):
                        jet[0] = Poly.one(field)
                    key = (x, tuple(field.fmt(p.coeff(0)) for p in jet))
                    if key in used:
                        continue
                    used.append(key)
                    clusters.append(Cluster(field, x, k, jet))
            Z = ZScheme(field, clusters)
        except FieldError:
            _record(result, True, {"index": n, "skipped": "bad sample"})
            continue
        try:
            d = pi_defect(V, Z)
            ok = d >= 0 and (not engineered or d >= 1)
        except AssertionError:
            ok = False
        _record(result, ok, _instance_payload(V, Z=Z, extra={"index": n}))
    return result


def suite_samespan(field, samples, seed):
    """Distinct subschemes with the same Quot point span the same
    subspace; pairs are engineered from full-fiber transformations with
    permuted and re-based fiber frames."""
    result = _suite("samespan", samples)
    for n in range(samples):
        rng = make_rng(seed, "samespan", n)
        rank = 2
        V = random_bundle(field, rng, rank, -5, -2)
        x = _random_point(field, rng)
        # two different bases of the same fiber -> distinct Z, equal Quot
        one, zero = field.one(), field.zero()
        basis1 = [[one, zero], [zero, one]]
        c = field.random(rng)
        basis2 = [[one, c], [zero, one]]
        if rng.randrange(2):
            basis2 = [basis2[1], basis2[0]]

        def scheme(basis):
            return ZScheme(
                field,
                [
                    Cluster(field, x, 1, [Poly.const(field, v) for v in d])
                    for d in basis
                ],
            )

        try:
            Z1, Z2 = scheme(basis1), scheme(basis2)
            ok = same_span_check(V, Z1, Z2)
        except (AssertionError, FieldError):
            ok = False
        _record(result, ok, _instance_payload(V, Z=Z1, extra={"index": n}))
    return result


def suite_serre(field, samples, seed):
    """Residue pairing nondegenerate, h1 matches the dual section count,
    and classes of coboundaries vanish."""
    result = _suite("serre", samples)
    for n in range(samples):
        rng = make_rng(seed, "serre", n)
        rank = rng.randint(1, 3)
        V = random_bundle(field, rng, rank, -4, 1)
        S = V.serre_pairing()
        h1 = V.h1()
        dual_h0 = V.dual().canonical_twist().h0()
        ok = S.nrows == S.ncols == h1 == dual_h0
        if ok and h1 > 0:
            ok = not field.is_zero(S.det())
        # a random section regular on one chart has vanishing class
        g0 = V.A0.apply(
            [
                RatFunc(Poly(field, [field.random(rng) for _ in range(3)]))
                for _ in range(rank)
            ]
        )
        ginf = V.Ainf.apply(
            [
                RatFunc(
                    Poly(field, [field.random(rng) for _ in range(3)])
                ).subst_reciprocal()
                for _ in range(rank)
            ]
        )
        g = [a + b for a, b in zip(g0, ginf)]
        cls = V.h1_class(g)
        ok = ok and all(field.is_zero(c) for c in cls)
        _record(result, ok, _instance_payload(V, extra={"index": n}))
    return result


def suite_oracle(field, samples, seed):
    """Birkhoff-based section count equals the direct linear-algebra
    oracle."""
    result = _suite("oracle", samples)
    for n in range(samples):
        rng = make_rng(seed, "oracle", n)
        rank = rng.randint(1, 3)
        V = random_bundle(field, rng, rank, -5, 5)
        ok = V.h0() == oracle_h0(V, 12)
        _record(result, ok, _instance_payload(V, extra={"index": n}))
    return result


def suite_census(p, r, d):
    """Exhaustive reduced-subscheme census against the closed form."""
    result = _suite(f"census p={p} r={r} d={d}", 1)
    rep = enumerate_reduced(p, r, d)
    ok = (
        rep["bijection"]
        and rep["torsion_count"] == rep["zscheme_count"] == rep["closed_form"]
    )
    _record(result, ok, {"census": {k: rep[k] for k in ("torsion_count", "zscheme_count", "closed_form", "bijection")}})
    return result


def _sample_lambda(E, rng, attempts=25):
    """A random subspace of H0(E) of dimension rank(E) with nonzero,
    rationally supported evaluation determinant, or None."""
    F = E.field
    k = E.h0()
    r = E.rank
    if k < r:
        return None
    for _ in range(attempts):
        coords = [[F.random(rng) for _ in range(k)] for _ in range(r)]
        try:
            lam = bn.SectionSubspace.from_coords(E, coords)
            tau, Z = bn.zlambda(E, lam)
        except FieldError:
            continue
        return lam, tau, Z
    return None


def suite_bn(field, samples, seed):
    """Kernel/span identity, genus-robust defect identity, and cup/Petri
    transpose duality on sampled subspaces across a pool of bundles."""
    result = _suite("bn", samples)
    pool = [
        [1, 0],
        [2, 0],
        [3, 0],
        [2, 1],
        [3, 1],
        [4, 0],
        [2, 2],
        [3, 2],
        [1, 1],  # degenerate ambient: h1(End E) = 0
        [1, 0, 0],
        [2, 0, 0],
    ]
    for n in range(samples):
        rng = make_rng(seed, "bn", n)
        exps = pool[n % len(pool)]
        E = Bundle.split(field, exps)
        found = _sample_lambda(E, rng)
        if found is None:
            _record(result, True, {"index": n, "skipped": "no valid subspace"})
            continue
        lam, tau, Z = found
        payload = _instance_payload(
            E, tau, Z, extra={"index": n, "exponents": exps}
        )
        try:
            if E.end().h1() == 0:
                # both sides empty: trivially equal
                span_ok = True
            else:
                span_ok = bn.bn_span_identity_check(E, lam)
            rep = bn.genrks_defect_check(E, lam) if E.end().h1() > 0 else None
            defect_ok = rep is None or rep["identity_holds"]
            dual_ok = bn.petri_cup_duality_check(E, lam)
            ok = span_ok and defect_ok and dual_ok
        except AssertionError:
            ok = False
        _record(result, ok, payload)
    return result


def suite_secant(field, samples, seed):
    """Secant containment and span monotonicity, including the proper
    subspace instance V = O(-6) + O(-4), F = O + O(1)."""
    result = _suite("secant", samples)
    for n in range(samples):
        rng = make_rng(seed, "secant", n)
        if n % 2 == 0:
            V = Bundle.split(field, [-6, -4])
            Fb = Bundle.split(field, [0, 1])
        else:
            V = random_bundle(field, rng, 2, -5, -3)
            Fb = random_bundle(field, rng, rng.randint(1, 2), 0, 1)
        if V.tensor(Fb).h1() == 0:
            _record(result, True, {"index": n, "skipped": "empty ambient"})
            continue
        npts = rng.randint(1, 3)
        used = []
        clusters = []
        points = []
        for _ in range(npts):
            x = _random_point(field, rng)
            if x in used:
                continue
            used.append(x)
            v = _random_direction(field, rng, V.rank)
            w = _random_direction(field, rng, Fb.rank)
            clusters.append(
                Cluster(field, x, 1, [Poly.const(field, c) for c in v])
            )
            points.append(DeltaPoint(x, v, w, field))
        try:
            Z = ZScheme(field, clusters)
            ok = bn.secant_membership(V, Fb, points, Z)
            # monotonicity: a subscheme's span is contained in the span
            # of any enlargement
            if ok and len(clusters) > 1:
                Zsub = ZScheme(field, clusters[:1])
                s_small, _ = rel_span(V, Fb, Zsub)
                s_big, _ = rel_span(V, Fb, Z)
                ok = s_big.contains(s_small)
        except (AssertionError, FieldError):
            ok = False
        _record(result, ok, _instance_payload(V, Z=Z, extra={"index": n}))
    return result


# -- driver ----------------------------------------------------------------

_DEFAULT_SAMPLES = {
    "ggrr": 50,
    "relggrr": 25,
    "roundtrip": 50,
    "spans": 40,
    "pi": 50,
    "samespan": 25,
    "serre": 40,
    "oracle": 40,
    "bn": 20,
    "secant": 20,
}

_FIELD_SUITES = {
    "ggrr": suite_ggrr,
    "relggrr": suite_relggrr,
    "roundtrip": suite_roundtrip,
    "spans": suite_spans,
    "pi": suite_pi,
    "samespan": suite_samespan,
    "serre": suite_serre,
    "oracle": suite_oracle,
    "bn": suite_bn,
    "secant": suite_secant,
}

SUITE_NAMES = list(_FIELD_SUITES) + ["census"]


def run_suites(config):
    """Execute the selected suites and assemble a deterministic report."""
    if not config.suites:
        raise FieldError("no suites selected")
    results = []
    for name in config.suites:
        if name == "census":
            results.append(suite_census(2, 2, 1))
            results.append(suite_census(2, 2, 2))
            results.append(suite_census(3, 2, 2))
            continue
        if name not in _FIELD_SUITES:
            raise FieldError(f"unknown suite {name!r}")
        samples = config.samples or _DEFAULT_SAMPLES[name]
        results.append(_FIELD_SUITES[name](config.field, samples, config.seed))
    passed = all(not r["failures"] for r in results)
    return {
        "schema": SCHEMA_VERSION,
        "config": config.as_json(),
        "suites": results,
        "passed": passed,
    }


def report_text(report):
    """Canonical byte-stable serialization of a report."""
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
