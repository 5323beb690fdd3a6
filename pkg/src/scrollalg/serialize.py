"""Exact JSON serialization of all domain objects.

Conventions (the stable external contract):
  - field scalars are strings ("17", "-3/4");
  - polynomials are dense coefficient arrays, ascending degree;
  - rational functions are {"num": [...], "den": [...]};
  - matrices and lattices are arrays of columns;
  - bundles are {"field", "rank", "lattice0", "latticeInf"};
  - curve points are "inf" or a scalar string;
  - clusters are {"x", "k", "jet"} with jet an array of coefficient
    arrays (one per fiber component, ascending in the local uniformiser);
  - torsion modules are {"bundle", "support": [{"point", "generators"}]}
    with each generator an array of tail-coefficient arrays ascending
    from the deepest pole.

Parsing normalizes non-canonical input (and records a note when it does)
and reports malformed documents with their location.
"""

from __future__ import annotations

import json

from .bundles import Bundle
from .curve import CurvePoint
from .eltrans import PrincipalPart, QuotPoint, TorsionModule
from .fields import FieldError, field_from_descriptor
from .hilb import Cluster, ZScheme
from .poly import Poly
from .polymat import MatrixR
from .ratfunc import RatFunc


class ParseError(ValueError):
    """Malformed document; the message carries the JSON path or offset."""


def _fail(path, msg):
    raise ParseError(f"at {path}: {msg}")


def _expect(doc, path, typ, what):
    if not isinstance(doc, typ):
        _fail(path, f"expected {what}, got {type(doc).__name__}")
    return doc


# -- scalars, polynomials, rational functions ------------------------------


def scalar_to_json(field, a):
    return field.fmt(a)


def scalar_from_json(field, doc, path="$"):
    _expect(doc, path, str, "a scalar string")
    try:
        return field.parse(doc)
    except FieldError as exc:
        _fail(path, str(exc))


def poly_to_json(p):
    return [p.field.fmt(c) for c in p.coeffs]


def poly_from_json(field, doc, path="$"):
    _expect(doc, path, list, "a coefficient array")
    return Poly(
        field,
        [scalar_from_json(field, c, f"{path}[{i}]") for i, c in enumerate(doc)],
    )


def ratfunc_to_json(f):
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def ratfunc_from_json(field, doc, path="$"):
    _expect(doc, path, dict, "a {num, den} object")
    for key in ("num", "den"):
        if key not in doc:
            _fail(path, f"missing key {key!r}")
    num = poly_from_json(field, doc["num"], f"{path}.num")
    den = poly_from_json(field, doc["den"], f"{path}.den")
    if den.is_zero():
        _fail(f"{path}.den", "zero denominator")
    return RatFunc(num, den)


# -- matrices, bundles -----------------------------------------------------


def matrix_to_json(M):
    return [[ratfunc_to_json(v) for v in M.col(j)] for j in range(M.ncols)]


def matrix_from_json(field, doc, path="$"):
    _expect(doc, path, list, "an array of columns")
    cols = []
    for j, col in enumerate(doc):
        _expect(col, f"{path}[{j}]", list, "a column array")
        cols.append(
            [
                ratfunc_from_json(field, v, f"{path}[{j}][{i}]")
                for i, v in enumerate(col)
            ]
        )
    if not cols:
        _fail(path, "empty matrix")
    if any(len(c) != len(cols[0]) for c in cols):
        _fail(path, "ragged columns")
    return MatrixR.from_cols(field, cols)


def bundle_to_json(V):
    return {
        "field": V.field.descriptor(),
        "rank": V.rank,
        "lattice0": matrix_to_json(V.A0),
        "latticeInf": matrix_to_json(V.Ainf),
    }


def bundle_from_json(doc, path="$"):
    _expect(doc, path, dict, "a bundle object")
    for key in ("field", "rank", "lattice0", "latticeInf"):
        if key not in doc:
            _fail(path, f"missing key {key!r}")
    field = _field_of(doc["field"], f"{path}.field")
    A0 = matrix_from_json(field, doc["lattice0"], f"{path}.lattice0")
    Ainf = matrix_from_json(field, doc["latticeInf"], f"{path}.latticeInf")
    rank = _expect(doc["rank"], f"{path}.rank", int, "an integer")
    if A0.nrows != rank or Ainf.nrows != rank:
        _fail(path, "lattice size does not match the stated rank")
    try:
        return Bundle(field, A0, Ainf)
    except (FieldError, ValueError) as exc:
        _fail(path, str(exc))


def _field_of(desc, path):
    _expect(desc, path, str, "a field descriptor")
    try:
        return field_from_descriptor(desc)
    except FieldError as exc:
        _fail(path, str(exc))


# -- curve points, clusters, subschemes ------------------------------------


def point_to_json(x):
    return "inf" if x.at_infinity else x.field.fmt(x.value)


def point_from_json(field, doc, path="$"):
    _expect(doc, path, str, "a point string")
    if doc == "inf":
        return CurvePoint.infinity(field)
    return CurvePoint.finite(field, scalar_from_json(field, doc, path))


def cluster_to_json(c):
    return {
        "x": point_to_json(c.x),
        "k": c.k,
        "jet": [poly_to_json(p) for p in c.jet],
    }


def cluster_from_json(field, doc, path="$", notes=None):
    _expect(doc, path, dict, "a cluster object")
    for key in ("x", "k", "jet"):
        if key not in doc:
            _fail(path, f"missing key {key!r}")
    x = point_from_json(field, doc["x"], f"{path}.x")
    k = _expect(doc["k"], f"{path}.k", int, "an integer")
    if k < 1:
        _fail(f"{path}.k", "length must be positive")
    jets = _expect(doc["jet"], f"{path}.jet", list, "an array of jets")
    polys = [
        poly_from_json(field, p, f"{path}.jet[{i}]") for i, p in enumerate(jets)
    ]
    try:
        c = Cluster(field, x, k, polys)
    except (FieldError, ValueError) as exc:
        _fail(path, str(exc))
    if notes is not None and [poly_to_json(p) for p in c.jet] != [
        poly_to_json(Poly(field, q.coeffs[:k])) for q in polys
    ]:
        notes.append(f"{path}: jet was normalized")
    return c


def zscheme_to_json(Z):
    return {
        "field": Z.field.descriptor(),
        "clusters": [cluster_to_json(c) for c in Z.clusters],
    }


def zscheme_from_json(doc, path="$", notes=None):
    _expect(doc, path, dict, "a subscheme object")
    for key in ("field", "clusters"):
        if key not in doc:
            _fail(path, f"missing key {key!r}")
    field = _field_of(doc["field"], f"{path}.field")
    items = _expect(doc["clusters"], f"{path}.clusters", list, "an array")
    clusters = [
        cluster_from_json(field, c, f"{path}.clusters[{i}]", notes)
        for i, c in enumerate(items)
    ]
    try:
        return ZScheme(field, clusters)
    except (FieldError, ValueError) as exc:
        _fail(path, str(exc))


# -- principal parts, torsion modules, quot points -------------------------


def principal_part_to_json(p):
    rows = []
    for tail in p.tails:
        k = tail.pole_order()
        rows.append([p.field.fmt(tail.coeff(i)) for i in range(-k, 0)])
    return rows


def principal_part_from_json(field, x, doc, path="$"):
    _expect(doc, path, list, "an array of tail-coefficient arrays")
    rows = []
    for i, row in enumerate(doc):
        _expect(row, f"{path}[{i}]", list, "a coefficient array")
        rows.append(
            [
                scalar_from_json(field, c, f"{path}[{i}][{j}]")
                for j, c in enumerate(row)
            ]
        )
    return PrincipalPart.from_tail_coeffs(field, x, rows)


def torsion_to_json(tau):
    return {
        "bundle": bundle_to_json(tau.bundle),
        "support": [
            {
                "point": point_to_json(x),
                "generators": [principal_part_to_json(g) for g in gens],
            }
            for x, gens in tau.items
        ],
    }


def torsion_from_json(doc, path="$"):
    _expect(doc, path, dict, "a torsion module object")
    for key in ("bundle", "support"):
        if key not in doc:
            _fail(path, f"missing key {key!r}")
    V = bundle_from_json(doc["bundle"], f"{path}.bundle")
    field = V.field
    items = []
    entries = _expect(doc["support"], f"{path}.support", list, "an array")
    for i, entry in enumerate(entries):
        epath = f"{path}.support[{i}]"
        _expect(entry, epath, dict, "a support entry")
        for key in ("point", "generators"):
            if key not in entry:
                _fail(epath, f"missing key {key!r}")
        x = point_from_json(field, entry["point"], f"{epath}.point")
        gens = _expect(
            entry["generators"], f"{epath}.generators", list, "an array"
        )
        parts = [
            principal_part_from_json(
                field, x, g, f"{epath}.generators[{j}]"
            )
            for j, g in enumerate(gens)
        ]
        items.append((x, parts))
    try:
        return TorsionModule(V, items)
    except (FieldError, ValueError) as exc:
        _fail(path, str(exc))


def quot_to_json(q):
    return {
        "base": bundle_to_json(q.base),
        "lattice0": matrix_to_json(q.L0),
        "latticeInf": matrix_to_json(q.Linf),
        "colength": q.colength,
    }


def quot_from_json(doc, path="$"):
    _expect(doc, path, dict, "a Quot point object")
    for key in ("base", "lattice0", "latticeInf", "colength"):
        if key not in doc:
            _fail(path, f"missing key {key!r}")
    base = bundle_from_json(doc["base"], f"{path}.base")
    L0 = matrix_from_json(base.field, doc["lattice0"], f"{path}.lattice0")
    Linf = matrix_from_json(base.field, doc["latticeInf"], f"{path}.latticeInf")
    col = _expect(doc["colength"], f"{path}.colength", int, "an integer")
    return QuotPoint(base, L0, Linf, col)


# -- tagged top-level documents --------------------------------------------

_TO = {
    "bundle": bundle_to_json,
    "torsion": torsion_to_json,
    "zscheme": zscheme_to_json,
    "quot": quot_to_json,
}


def object_to_json(obj):
    """Tagged document for any serializable domain object."""
    if isinstance(obj, Bundle):
        kind = "bundle"
    elif isinstance(obj, TorsionModule):
        kind = "torsion"
    elif isinstance(obj, ZScheme):
        kind = "zscheme"
    elif isinstance(obj, QuotPoint):
        kind = "quot"
    else:
        raise FieldError(f"cannot serialize {type(obj).__name__}")
    return {"type": kind, "value": _TO[kind](obj)}


def object_from_json(doc, path="$", notes=None):
    _expect(doc, path, dict, "a tagged document")
    for key in ("type", "value"):
        if key not in doc:
            _fail(path, f"missing key {key!r}")
    kind = doc["type"]
    vpath = f"{path}.value"
    if kind == "bundle":
        return bundle_from_json(doc["value"], vpath)
    if kind == "torsion":
        return torsion_from_json(doc["value"], vpath)
    if kind == "zscheme":
        return zscheme_from_json(doc["value"], vpath, notes)
    if kind == "quot":
        return quot_from_json(doc["value"], vpath)
    _fail(f"{path}.type", f"unknown document type {kind!r}")


def dumps(obj):
    """Canonical text for a domain object."""
    return json.dumps(object_to_json(obj), indent=2, sort_keys=True) + "\n"


def loads(text, notes=None):
    """Parse a tagged document; malformed JSON reports its offset."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON at offset {exc.pos} "
            f"(line {exc.lineno}, column {exc.colno}): {exc.msg}"
        ) from None
    return object_from_json(doc, notes=notes)
