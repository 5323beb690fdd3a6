"""Command-line harness.

Subcommands:
  bundle   inspect a bundle (from a JSON document or --split exponents)
  eltrans  enlarge a bundle along a torsion module document
  verify   run seeded verification suites (--ggrr --relggrr --roundtrip
           --spans --bn --secant)
  census   exhaustive reduced-subscheme census over a small prime field
  report   run the full suite collection and emit a report

Global flags: --field {Q|Fp:<p>}, --seed, --samples, --json-out <path>.
Exit codes: 0 on success, 1 on verification failure, 2 on usage or input
errors.  Reports are deterministic for a fixed (field, seed, samples)
configuration; timing is printed to the console only, never serialized.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .eltrans import TorsionModule, vtilde_from_tau
from .fields import FieldError, field_from_descriptor
from .hilb import quot_to_hilb
from .serialize import (
    ParseError,
    bundle_to_json,
    loads,
    quot_to_json,
    zscheme_to_json,
)
from .suites import SuiteConfig, run_suites, report_text

# verify sub-flag -> suites it drives
_VERIFY_GROUPS = {
    "ggrr": ["ggrr", "oracle"],
    "relggrr": ["relggrr"],
    "roundtrip": ["roundtrip", "pi"],
    "spans": ["spans", "samespan", "serre"],
    "bn": ["bn"],
    "secant": ["secant"],
}

_ALL_SUITES = [
    "ggrr",
    "relggrr",
    "roundtrip",
    "spans",
    "pi",
    "samespan",
    "serre",
    "oracle",
    "bn",
    "secant",
    "census",
]


def _global_flags(parser, suppress):
    # when attached to a subcommand, a flag only overrides the top-level
    # value if it is actually present
    defaults = {
        "field": "Q",
        "seed": 0,
        "samples": None,
        "json_out": None,
    }
    for flag, typ in (
        ("--field", str),
        ("--seed", int),
        ("--samples", int),
        ("--json-out", str),
    ):
        dest = flag[2:].replace("-", "_")
        parser.add_argument(
            flag,
            type=typ,
            default=argparse.SUPPRESS if suppress else defaults[dest],
            help={
                "field": "base field: Q or Fp:<p>",
                "seed": "master seed",
                "samples": "samples per suite",
                "json_out": "write the JSON result here",
            }[dest],
        )


def _build_parser():
    p = argparse.ArgumentParser(
        prog="scrollalg",
        description="Exact verification toolkit for subschemes of scrolls "
        "and elementary transformations on the projective line.",
    )
    _global_flags(p, suppress=False)
    parent = argparse.ArgumentParser(add_help=False)
    _global_flags(parent, suppress=True)
    sub = p.add_subparsers(dest="command")

    b = sub.add_parser("bundle", help="inspect a bundle", parents=[parent])
    b.add_argument("path", nargs="?", help="bundle JSON document")
    b.add_argument(
        "--split",
        default=None,
        help="comma-separated splitting exponents instead of a document",
    )

    e = sub.add_parser(
        "eltrans", help="enlarge a bundle along torsion", parents=[parent]
    )
    e.add_argument("path", help="torsion module JSON document")

    v = sub.add_parser(
        "verify", help="run verification suites", parents=[parent]
    )
    for flag in _VERIFY_GROUPS:
        v.add_argument(f"--{flag}", action="store_true")

    c = sub.add_parser(
        "census", help="reduced-subscheme census", parents=[parent]
    )
    c.add_argument("--q", type=int, required=True, help="prime field size")
    c.add_argument("--r", type=int, required=True, help="bundle rank")
    c.add_argument("--d", type=int, required=True, help="subscheme length")

    sub.add_parser(
        "report",
        help="run every suite and emit a full report",
        parents=[parent],
    )
    return p


def _emit(doc, json_out):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if json_out:
        with open(json_out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)


def _cmd_bundle(args):
    if args.split is not None:
        field = field_from_descriptor(args.field)
        try:
            exps = [int(v) for v in args.split.split(",")]
        except ValueError:
            raise FieldError(f"bad exponent list {args.split!r}") from None
        from .bundles import Bundle

        V = Bundle.split(field, exps)
    elif args.path:
        with open(args.path, encoding="utf-8") as fh:
            V = loads(fh.read())
        from .bundles import Bundle

        if not isinstance(V, Bundle):
            raise FieldError("document does not contain a bundle")
    else:
        raise FieldError("either a document path or --split is required")
    _emit(
        {
            "bundle": bundle_to_json(V),
            "rank": V.rank,
            "degree": V.degree,
            "h0": V.h0(),
            "h1": V.h1(),
            "splitting": list(V.splitting().exponents),
        },
        args.json_out,
    )
    return 0


def _cmd_eltrans(args):
    with open(args.path, encoding="utf-8") as fh:
        tau = loads(fh.read())
    if not isinstance(tau, TorsionModule):
        raise FieldError("document does not contain a torsion module")
    V = tau.bundle
    Vt, q, d = vtilde_from_tau(V, tau)
    Z = quot_to_hilb(V, tau)
    _emit(
        {
            "degree": d,
            "enlarged": bundle_to_json(Vt),
            "splitting": list(Vt.splitting().exponents),
            "quot": quot_to_json(q),
            "zscheme": zscheme_to_json(Z),
        },
        args.json_out,
    )
    return 0


def _run_and_emit(args, suites):
    config = SuiteConfig(args.field, args.seed, args.samples, suites)
    start = time.monotonic()
    report = run_suites(config)
    elapsed = time.monotonic() - start
    text = report_text(report)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(text)
    for s in report["suites"]:
        status = "PASS" if not s["failures"] else "FAIL"
        sys.stdout.write(
            f"{status} {s['name']}: {s['passes']}/{s['samples']}\n"
        )
        for payload in s["failures"]:
            sys.stdout.write(
                "  counterexample: " + json.dumps(payload, sort_keys=True) + "\n"
            )
    sys.stdout.write(
        f"{'PASS' if report['passed'] else 'FAIL'} total "
        f"({elapsed:.1f}s; timing not part of the report)\n"
    )
    return 0 if report["passed"] else 1


def _cmd_verify(args):
    suites = []
    for flag, group in _VERIFY_GROUPS.items():
        if getattr(args, flag):
            suites.extend(s for s in group if s not in suites)
    if not suites:
        raise _Usage("verify requires at least one suite flag")
    return _run_and_emit(args, suites)


def _cmd_census(args):
    from .hilb import enumerate_reduced

    data = enumerate_reduced(args.q, args.r, args.d)
    passed = (
        data["bijection"]
        and data["torsion_count"]
        == data["zscheme_count"]
        == data["closed_form"]
    )
    doc = {
        "q": args.q,
        "r": args.r,
        "d": args.d,
        "counts": {
            "torsion": data["torsion_count"],
            "zschemes": data["zscheme_count"],
            "closed_form": data["closed_form"],
        },
        "bijection": data["bijection"],
        "passed": passed,
    }
    _emit(doc, args.json_out)
    return 0 if passed else 1


def _cmd_report(args):
    return _run_and_emit(args, _ALL_SUITES)


class _Usage(Exception):
    pass


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "bundle": _cmd_bundle,
        "eltrans": _cmd_eltrans,
        "verify": _cmd_verify,
        "census": _cmd_census,
        "report": _cmd_report,
    }
    if args.command not in handlers:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return handlers[args.command](args)
    except _Usage as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except (ParseError, FieldError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
