"""Serialization of decisions and catalogs: canonical JSON, CSV, reload.

Output is meant to be byte-reproducible: keys are sorted, formatting is
fixed, and nothing time-dependent enters the document body.  Stage
timings stay on the report object and are printed to stderr by the
command layer, never into files.  Every document carries a digest of
the full context (ring table plus both twist matrices) so witnesses
cannot be replayed against a different ring.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json

from .errors import ContextMismatchError

CSV_COLUMNS = [
    "f",
    "invariant",
    "separable",
    "hirata",
    "witness_h",
    "witness_pairs",
    "rho_d_commute",
    "coeffs_in_B_rho",
    "sep_agree",
    "hirata_agree",
]


def canonical_json(obj):
    """Fixed-format JSON with a trailing newline; identical input,
    identical bytes."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def compact_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def context_digest(skew):
    payload = {
        "ring": skew.ring.digest(),
        "rho": [[int(v) for v in row] for row in skew.rho.matrix],
        "d": [[int(v) for v in row] for row in skew.d.matrix],
    }
    return hashlib.sha256(compact_json(payload).encode()).hexdigest()


# ---------------------------------------------------------------------------
# elements and witnesses


def poly_to_json(f):
    return [[int(v) for v in b.coords] for b in f.coeffs]


def element_to_json(u):
    return {"coeffs": [[int(v) for v in b.coords] for b in u.coeffs]}


def element_from_json(qr, obj):
    coeffs = obj["coeffs"]
    if len(coeffs) != qr.m:
        raise ContextMismatchError(
            f"witness has {len(coeffs)} components, quotient needs {qr.m}"
        )
    ring = qr.skew.ring
    return qr.element([ring.element(c) for c in coeffs])


def pairs_to_json(pairs):
    return [
        {"g": element_to_json(g), "h": element_to_json(h)} for g, h in pairs
    ]


def pairs_from_json(qr, arr):
    return tuple(
        (element_from_json(qr, it["g"]), element_from_json(qr, it["h"]))
        for it in arr
    )


def _verdict(v):
    return "unknown" if v is None else v


def report_to_json(rep):
    """The schema-shaped body of one decision.  No timings here."""
    return {
        "invariant": rep.invariant,
        "separable": _verdict(rep.separable),
        "hirata": _verdict(rep.hirata),
        "witness_h": None if rep.witness_h is None else element_to_json(rep.witness_h),
        "witness_pairs": None
        if rep.witness_pairs is None
        else pairs_to_json(rep.witness_pairs),
        "oracle_agreement": rep.oracle_agreement,
        "assumptions": rep.assumptions.to_json(),
        "note": rep.note,
    }


# ---------------------------------------------------------------------------
# documents


def decision_document(skew, f, rep):
    return {
        "kind": "decision",
        "context_digest": context_digest(skew),
        "f": poly_to_json(f),
        "report": report_to_json(rep),
    }


def catalog_document(skew, degree, entries, summary):
    """entries are already JSON-shaped {"f": ..., "report": ...} dicts."""
    return {
        "kind": "catalog",
        "context_digest": context_digest(skew),
        "degree": degree,
        "summary": summary,
        "entries": entries,
    }


def document_entries(doc):
    """The entry list of either document kind."""
    if doc.get("kind") == "decision":
        return [{"f": doc["f"], "report": doc["report"]}]
    return list(doc.get("entries", []))


# ---------------------------------------------------------------------------
# CSV


def _bool_cell(v):
    if v is None or v == "unknown":
        return "" if v is None else "unknown"
    return "true" if v else "false"


def entry_to_row(entry):
    rep = entry["report"]
    agree = rep.get("oracle_agreement") or {}
    return {
        "f": compact_json(entry["f"]),
        "invariant": _bool_cell(rep["invariant"]),
        "separable": _bool_cell(rep["separable"]),
        "hirata": _bool_cell(rep["hirata"]),
        "witness_h": ""
        if rep["witness_h"] is None
        else compact_json(rep["witness_h"]),
        "witness_pairs": ""
        if rep["witness_pairs"] is None
        else compact_json(rep["witness_pairs"]),
        "rho_d_commute": _bool_cell(rep["assumptions"]["rho_d_commute"]),
        "coeffs_in_B_rho": _bool_cell(rep["assumptions"]["coeffs_in_B_rho"]),
        "sep_agree": _bool_cell(agree.get("separable")),
        "hirata_agree": _bool_cell(agree.get("hirata")),
    }


def entries_to_csv(entries):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for entry in entries:
        w.writerow(entry_to_row(entry))
    return buf.getvalue()


def parse_document(text):
    return json.loads(text)
