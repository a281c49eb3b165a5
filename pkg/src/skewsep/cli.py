"""Command-line front end.

Subcommands: validate a presented context, check one polynomial,
catalog a whole degree, and re-emit a saved document as JSON or CSV
(with summary figures next to a file target).  Canonical output goes
to --out or stdout; anything advisory (timings, figure paths) goes to
stderr so the canonical bytes stay reproducible.

Exit codes: 0 success, 1 validation or input failure, 2 usage error,
3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import run_catalog
from .errors import (
    AssumptionError,
    CapExceededError,
    ContextMismatchError,
    NotInvariantError,
    PresentationError,
)
from .linalg import DEFAULT_ENUM_CAP
from .report import (
    canonical_json,
    catalog_document,
    decision_document,
    document_entries,
    entries_to_csv,
)
from .rings import (
    map_from_config,
    maps_commute,
    ring_from_config,
    validate_automorphism,
    validate_derivation,
    validate_ring,
)
from .separability import decide
from .skewpoly import SkewPolyRing
from .version import __version__

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_CAP = 3


class UsageError(Exception):
    """Config shape problems the caller must fix."""


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(
            f"{path}: parse error at line {e.lineno} column {e.colno}: {e.msg}"
        ) from e


def _context_from_config(cfg):
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    if "ring" not in cfg:
        raise UsageError("config needs a 'ring' section")
    ring = ring_from_config(cfg["ring"])
    rho = map_from_config(ring, cfg.get("rho"), "automorphism")
    d = map_from_config(ring, cfg.get("d"), "derivation")
    return ring, rho, d


def _validation_document(ring, rho, d):
    checks = {
        "ring": validate_ring(ring),
        "automorphism": validate_automorphism(ring, rho),
        "derivation": validate_derivation(ring, rho, d),
    }
    ok = all(bool(rep) for rep in checks.values())
    doc = {
        "kind": "validation",
        "ok": ok,
        "rho_d_commute": maps_commute(rho, d),
        "checks": {
            name: {
                "ok": rep.ok,
                "issues": [
                    {"rule": i.rule, "where": i.where, "detail": i.detail}
                    for i in rep.issues
                ],
            }
            for name, rep in checks.items()
        },
    }
    return ok, doc


def _poly_from_config(skew, raw):
    if not isinstance(raw, list) or not raw:
        raise UsageError("'f' must be a nonempty list of coefficients")
    ring = skew.ring
    coeffs = []
    for i, item in enumerate(raw):
        if isinstance(item, int):
            item = [item] + [0] * (ring.rank - 1)
        if not isinstance(item, list) or len(item) != ring.rank:
            raise UsageError(
                f"coefficient {i} must be a coordinate vector of length {ring.rank}"
            )
        coeffs.append(ring.element(item))
    return skew.poly(coeffs)


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render(doc, fmt):
    if fmt == "csv":
        return entries_to_csv(document_entries(doc))
    return canonical_json(doc)


def cmd_validate(args):
    cfg = _load_json(args.config)
    ring, rho, d = _context_from_config(cfg)
    ok, doc = _validation_document(ring, rho, d)
    _emit(canonical_json(doc), args.out)
    return EXIT_OK if ok else EXIT_INVALID


def _validated_context(cfg, out_path):
    ring, rho, d = _context_from_config(cfg)
    ok, doc = _validation_document(ring, rho, d)
    if not ok:
        _emit(canonical_json(doc), out_path)
        return None
    return SkewPolyRing(ring, rho, d)


def cmd_check(args):
    cfg = _load_json(args.config)
    skew = _validated_context(cfg, args.out)
    if skew is None:
        return EXIT_INVALID
    if "f" not in cfg:
        raise UsageError("check needs an 'f' entry in the config")
    f = _poly_from_config(skew, cfg["f"])
    rep = decide(skew, f)
    doc = decision_document(skew, f, rep)
    _emit(_render(doc, args.format), args.out)
    if rep.timings:
        print(f"# timings {json.dumps(rep.timings, sort_keys=True)}", file=sys.stderr)
    return EXIT_OK


def cmd_catalog(args):
    cfg = _load_json(args.config)
    skew = _validated_context(cfg, args.out)
    if skew is None:
        return EXIT_INVALID
    degree = cfg.get("degree")
    if not isinstance(degree, int) or degree < 1:
        raise UsageError("catalog needs a positive integer 'degree' in the config")
    max_enum = args.max_enum
    if max_enum is None:
        max_enum = cfg.get("max_enum", DEFAULT_ENUM_CAP)
    jobs = args.jobs if args.jobs is not None else cfg.get("jobs", 1)
    entries, summary = run_catalog(
        skew,
        degree,
        max_enum=max_enum,
        jobs=jobs,
        cache_dir=cfg.get("cache_dir"),
    )
    doc = catalog_document(skew, degree, entries, summary)
    _emit(_render(doc, args.format), args.out)
    print(f"# summary {json.dumps(summary, sort_keys=True)}", file=sys.stderr)
    return EXIT_OK


def cmd_report(args):
    doc = _load_json(args.input)
    if not isinstance(doc, dict):
        raise UsageError("input must be a JSON document object")
    _emit(_render(doc, args.format), args.out)
    if args.out and not args.no_figures:
        from .figures import render_figures

        base = os.path.splitext(args.out)[0]
        for path in render_figures(doc, base):
            print(f"# figure {path}", file=sys.stderr)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="skewsep",
        description="Separability decisions for skew polynomial quotients "
        "over finite rings.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_config=True):
        if needs_config:
            p.add_argument("--config", required=True, help="job config JSON path")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument(
            "--format", choices=("json", "csv"), default="json",
            help="output format",
        )

    p = sub.add_parser("validate", help="check ring and twist-map axioms")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", help="decide one monic polynomial")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("catalog", help="classify every monic of one degree")
    common(p)
    p.add_argument("--max-enum", type=int, help="enumeration cap override")
    p.add_argument("--jobs", type=int, help="worker process count")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("report", help="re-emit a saved document, with figures")
    p.add_argument("--in", dest="input", required=True, help="saved JSON document")
    common(p, needs_config=False)
    p.add_argument(
        "--no-figures", action="store_true",
        help="skip PNG rendering next to --out",
    )
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceededError as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except (
        AssumptionError,
        ContextMismatchError,
        NotInvariantError,
        PresentationError,
    ) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
