"""Catalog sweeps, the command line surface, and serialized documents."""

import csv
import io
import json

import pytest

from skewsep import (
    CapExceededError,
    ContextMismatchError,
    QuotientRing,
    canonical_json,
    catalog_document,
    context_digest,
    decide,
    decision_document,
    document_entries,
    element_from_json,
    entries_to_csv,
    pairs_from_json,
    parse_document,
    run_catalog,
    verify_hirata_witness,
    verify_separability_witness,
)
from skewsep.cli import EXIT_CAP, EXIT_INVALID, EXIT_OK, EXIT_USAGE, main

from corpus import CORPUS, context, invariant_monics

Z2_CFG = {"ring": {"ring": "Zmod", "n": 2}}
F4_CFG = {"ring": {"ring": "GF", "p": 2, "r": 2}, "rho": "frobenius"}
TRUNC_CFG = {"ring": {"ring": "TruncatedPoly", "p": 2, "e": 2}, "d": [[0, 0], [1, 0]]}


def _write_cfg(tmp_path, name, extra, base=None):
    cfg = dict(base or Z2_CFG)
    cfg.update(extra)
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


# -- run_catalog ----------------------------------------------------------


def test_z2_degree_two_catalog():
    entries, summary = run_catalog(context("z2"), 2)
    assert summary == {"candidates": 4, "invariant": 4, "separable": 2, "hirata": 0}
    separable = [e["f"] for e in entries if e["report"]["separable"] is True]
    # X^2 + X and X^2 + X + 1 are the separable quadratics over Z/2
    assert separable == [[[0], [1], [1]], [[1], [1], [1]]]
    assert entries == sorted(entries, key=lambda e: e["f"])


def test_f4_twisted_degree_two_catalog():
    entries, summary = run_catalog(context("f4_frob"), 2)
    assert summary["candidates"] == 16
    assert summary["invariant"] == 2
    # invariant quadratics have prime-field coefficients
    for e in entries:
        assert all(c[1] == 0 for c in e["f"])
    by_f = {json.dumps(e["f"]): e["report"] for e in entries}
    sep = by_f['[[1, 0], [0, 0], [1, 0]]']  # X^2 + 1
    assert sep["separable"] is True and sep["hirata"] is True
    assert len(sep["witness_pairs"]) == 2


def test_degree_one_catalogs_are_all_separable():
    for name in CORPUS:
        entries, summary = run_catalog(context(name), 1)
        assert summary["invariant"] == len(entries)
        for e in entries:
            assert e["report"]["separable"] is True
            assert e["report"]["hirata"] is True


def test_catalog_parallel_matches_serial():
    for name in ("z2", "f4_frob"):
        sk = context(name)
        serial = run_catalog(sk, 2, jobs=1)
        parallel = run_catalog(sk, 2, jobs=2)
        assert serial == parallel
        doc_s = catalog_document(sk, 2, *serial)
        doc_p = catalog_document(sk, 2, *parallel)
        assert canonical_json(doc_s) == canonical_json(doc_p)


def test_catalog_cache_round_trip(tmp_path):
    sk = context("z2")
    first = run_catalog(sk, 2, cache_dir=str(tmp_path))
    cached_files = list(tmp_path.glob("*.json"))
    assert len(cached_files) == 1
    second = run_catalog(sk, 2, cache_dir=str(tmp_path))
    assert first == second


def test_catalog_enumeration_cap():
    with pytest.raises(CapExceededError):
        run_catalog(context("z4"), 2, max_enum=10)


# -- serialization --------------------------------------------------------


def test_decision_document_shape():
    sk = context("z2")
    f = sk.monic([sk.ring.identity(), sk.ring.identity()])
    rep = decide(sk, f)
    doc = decision_document(sk, f, rep)
    assert doc["kind"] == "decision"
    assert doc["context_digest"] == context_digest(sk)
    assert doc["f"] == [[1], [1], [1]]
    body = doc["report"]
    assert set(body) == {
        "invariant",
        "separable",
        "hirata",
        "witness_h",
        "witness_pairs",
        "oracle_agreement",
        "assumptions",
        "note",
    }
    assert body["separable"] is True and body["hirata"] is False
    assert body["witness_h"] == {"coeffs": [[1], [0]]}
    assert body["witness_pairs"] is None
    assert "timings" not in canonical_json(doc)


def test_non_invariant_decision_serializes_unknown():
    sk = context("trunc_ddt")
    f = sk.monic([sk.ring.zero(), sk.ring.basis(1)])
    doc = decision_document(sk, f, decide(sk, f))
    body = doc["report"]
    assert body["invariant"] is False
    assert body["separable"] == "unknown" and body["hirata"] == "unknown"
    row = next(csv.DictReader(io.StringIO(entries_to_csv(document_entries(doc)))))
    assert row["separable"] == "unknown"
    assert row["invariant"] == "false"
    assert row["witness_h"] == ""


def test_csv_round_trip_of_catalog():
    sk = context("f4_frob")
    entries, summary = run_catalog(sk, 2)
    text = entries_to_csv(entries)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == len(entries)
    for row, entry in zip(rows, entries):
        assert json.loads(row["f"]) == entry["f"]
        assert row["rho_d_commute"] == "true"
        assert (row["witness_h"] == "") == (entry["report"]["witness_h"] is None)


def test_witness_reload_from_document():
    sk = context("f4_frob")
    f = sk.monic([sk.ring.identity(), sk.ring.zero()])
    doc = parse_document(canonical_json(decision_document(sk, f, decide(sk, f))))
    assert doc["context_digest"] == context_digest(sk)
    qr = QuotientRing(sk, f)
    h = element_from_json(qr, doc["report"]["witness_h"])
    assert verify_separability_witness(qr, h)
    pairs = pairs_from_json(qr, doc["report"]["witness_pairs"])
    assert verify_hirata_witness(qr, pairs)


def test_witness_reload_rejects_wrong_shape():
    sk = context("z2")
    qr = QuotientRing(sk, sk.monic([sk.ring.identity(), sk.ring.identity()]))
    with pytest.raises(ContextMismatchError):
        element_from_json(qr, {"coeffs": [[1]]})


def test_context_digest_separates_contexts():
    digests = {context_digest(context(name)) for name in CORPUS}
    assert len(digests) == len(CORPUS)


# -- command line ---------------------------------------------------------


def test_cli_validate_ok(tmp_path, capsys):
    cfg = _write_cfg(tmp_path, "v.json", {}, base=F4_CFG)
    assert main(["validate", "--config", cfg]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "validation" and doc["ok"] is True
    assert doc["rho_d_commute"] is True


def test_cli_validate_rejects_non_bijective_twist(tmp_path, capsys):
    cfg = _write_cfg(
        tmp_path, "v.json", {"rho": [[1, 0], [0, 0]]},
        base={"ring": {"ring": "GF", "p": 2, "r": 2}},
    )
    assert main(["validate", "--config", cfg]) == EXIT_INVALID
    doc = json.loads(capsys.readouterr().out)
    assert doc["ok"] is False
    issues = doc["checks"]["automorphism"]["issues"]
    assert any(i["rule"] == "bijective" for i in issues)


def test_cli_check_golden(tmp_path, capsys):
    cfg = _write_cfg(tmp_path, "c.json", {"f": [[1, 0], [0, 0], [1, 0]]}, base=F4_CFG)
    assert main(["check", "--config", cfg]) == EXIT_OK
    captured = capsys.readouterr()
    doc = json.loads(captured.out)
    assert doc["kind"] == "decision"
    assert doc["report"]["separable"] is True
    assert doc["report"]["witness_h"] == {"coeffs": [[0, 0], [0, 1]]}
    assert "# timings" in captured.err


def test_cli_check_integer_coefficient_shorthand(tmp_path, capsys):
    cfg = _write_cfg(tmp_path, "c.json", {"f": [1, 1, 1]})
    assert main(["check", "--config", cfg]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["f"] == [[1], [1], [1]]
    assert doc["report"]["separable"] is True


def test_cli_check_csv_format(tmp_path, capsys):
    cfg = _write_cfg(tmp_path, "c.json", {"f": [1, 1, 1]})
    assert main(["check", "--config", cfg, "--format", "csv"]) == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 1
    assert rows[0]["separable"] == "true" and rows[0]["hirata"] == "false"


def test_cli_check_output_file_is_deterministic(tmp_path, capsys):
    cfg = _write_cfg(tmp_path, "c.json", {"f": [1, 1, 1]})
    out1, out2 = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    assert main(["check", "--config", cfg, "--out", out1]) == EXIT_OK
    assert main(["check", "--config", cfg, "--out", out2]) == EXIT_OK
    captured = capsys.readouterr()
    assert captured.out == ""  # document went to the file, stderr got timings
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_cli_catalog_summary_and_stderr(tmp_path, capsys):
    cfg = _write_cfg(tmp_path, "cat.json", {"degree": 2})
    assert main(["catalog", "--config", cfg]) == EXIT_OK
    captured = capsys.readouterr()
    doc = json.loads(captured.out)
    assert doc["kind"] == "catalog" and doc["degree"] == 2
    assert doc["summary"] == {
        "candidates": 4,
        "invariant": 4,
        "separable": 2,
        "hirata": 0,
    }
    assert "# summary" in captured.err


def test_cli_catalog_jobs_flag_is_byte_stable(tmp_path, capsys):
    cfg = _write_cfg(tmp_path, "cat.json", {"degree": 2}, base=F4_CFG)
    out1, out2 = str(tmp_path / "s.json"), str(tmp_path / "p.json")
    assert main(["catalog", "--config", cfg, "--out", out1]) == EXIT_OK
    assert main(["catalog", "--config", cfg, "--out", out2, "--jobs", "2"]) == EXIT_OK
    capsys.readouterr()
    assert (tmp_path / "s.json").read_bytes() == (tmp_path / "p.json").read_bytes()


def test_cli_catalog_empty_is_still_a_document(tmp_path, capsys):
    cfg = _write_cfg(tmp_path, "cat.json", {"degree": 1}, base=TRUNC_CFG)
    assert main(["catalog", "--config", cfg, "--format", "csv"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("f,invariant")
    assert len(out.splitlines()) == 1  # nothing invariant at degree one here


def test_cli_catalog_cap_exit(tmp_path, capsys):
    cfg = _write_cfg(tmp_path, "cat.json", {"degree": 12})
    assert main(["catalog", "--config", cfg]) == EXIT_CAP
    assert "cap exceeded" in capsys.readouterr().err
    cfg4 = _write_cfg(
        tmp_path, "cat4.json", {"degree": 2}, base={"ring": {"ring": "Zmod", "n": 4}}
    )
    assert main(["catalog", "--config", cfg4, "--max-enum", "10"]) == EXIT_CAP


def test_cli_report_reemits_and_renders_figures(tmp_path, capsys):
    cfg = _write_cfg(tmp_path, "cat.json", {"degree": 2}, base=F4_CFG)
    doc_path = str(tmp_path / "doc.json")
    assert main(["catalog", "--config", cfg, "--out", doc_path]) == EXIT_OK
    out_csv = str(tmp_path / "rep.csv")
    assert main(["report", "--in", doc_path, "--out", out_csv, "--format", "csv"]) == (
        EXIT_OK
    )
    captured = capsys.readouterr()
    assert (tmp_path / "rep.csv").exists()
    for suffix in ("_counts.png", "_witnesses.png"):
        png = tmp_path / f"rep{suffix}"
        assert png.exists() and png.stat().st_size > 0
    assert captured.err.count("# figure") == 2
    # JSON re-emission reproduces the saved document byte for byte
    out_json = str(tmp_path / "rep.json")
    assert main(
        ["report", "--in", doc_path, "--out", out_json, "--no-figures"]
    ) == EXIT_OK
    assert (tmp_path / "rep.json").read_bytes() == (tmp_path / "doc.json").read_bytes()


def test_cli_report_no_figures_without_out(tmp_path, capsys):
    cfg = _write_cfg(tmp_path, "c.json", {"f": [1, 1, 1]})
    doc_path = str(tmp_path / "doc.json")
    assert main(["check", "--config", cfg, "--out", doc_path]) == EXIT_OK
    assert main(["report", "--in", doc_path]) == EXIT_OK
    captured = capsys.readouterr()
    assert "# figure" not in captured.err
    assert json.loads(captured.out)["kind"] == "decision"


def test_cli_usage_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{ nope")
    assert main(["check", "--config", str(bad)]) == EXIT_USAGE
    assert "line 1" in capsys.readouterr().err
    missing = _write_cfg(tmp_path, "m.json", {})
    assert main(["check", "--config", missing]) == EXIT_USAGE  # no 'f'
    assert main(["catalog", "--config", missing]) == EXIT_USAGE  # no degree
    assert main(["check", "--config", str(tmp_path / "absent.json")]) == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["check", "--config", missing, "--format", "xml"])
    assert exc.value.code == 2


def test_cli_invalid_polynomial_inputs(tmp_path, capsys):
    cfg = _write_cfg(tmp_path, "c.json", {"f": [[1, 0], [1]]}, base=F4_CFG)
    assert main(["check", "--config", cfg]) == EXIT_USAGE
    constant = _write_cfg(tmp_path, "k.json", {"f": [1]})
    assert main(["check", "--config", constant]) == EXIT_INVALID
    capsys.readouterr()


def test_document_entries_for_both_kinds():
    sk = context("z2")
    f = sk.monic([sk.ring.identity(), sk.ring.identity()])
    ddoc = decision_document(sk, f, decide(sk, f))
    assert len(document_entries(ddoc)) == 1
    entries, summary = run_catalog(sk, 2)
    cdoc = catalog_document(sk, 2, entries, summary)
    assert document_entries(cdoc) == entries
