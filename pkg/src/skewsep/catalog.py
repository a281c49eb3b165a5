"""Exhaustive classification of monic polynomials of a fixed degree.

Candidates are the lower coefficient vectors in lexicographic order,
which doubles as the canonical entry order.  Each candidate runs the
full decision pipeline; only invariant survivors become entries.  The
candidate list splits into contiguous prefix blocks for worker
processes, and workers rebuild the context from its serialized
presentation, so results are identical to a serial run once merged and
re-sorted.  Finished sweeps can be cached under a hash of the whole
context and the code version.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent import futures

from .errors import CapExceededError
from .linalg import DEFAULT_ENUM_CAP
from .report import canonical_json, compact_json, context_digest, poly_to_json, report_to_json
from .rings import AdditiveMap, ring_from_config, ring_to_config
from .separability import decide
from .skewpoly import SkewPolyRing
from .version import __version__


def monic_coefficient_vectors(ring, degree):
    """All lower-coefficient tuples (a_0, ..., a_{degree-1}), ordered."""
    vectors = list(itertools.product(range(ring.characteristic), repeat=ring.rank))
    return itertools.product(vectors, repeat=degree)


def build_monic(skew, lower):
    ring = skew.ring
    coeffs = [ring.element(v) for v in lower]
    coeffs.append(ring.identity())
    return skew.poly(coeffs)


def _classify_block(skew, block):
    entries = []
    for lower in block:
        f = build_monic(skew, lower)
        rep = decide(skew, f)
        if rep.invariant:
            entries.append({"f": poly_to_json(f), "report": report_to_json(rep)})
    return entries


def _worker(job):
    ring_cfg, rho_rows, d_rows, block = job
    ring = ring_from_config(ring_cfg)
    rho = AdditiveMap(ring, rho_rows, "automorphism")
    d = AdditiveMap(ring, d_rows, "derivation")
    return _classify_block(SkewPolyRing(ring, rho, d), block)


def summarize(entries, candidates):
    return {
        "candidates": candidates,
        "invariant": len(entries),
        "separable": sum(1 for e in entries if e["report"]["separable"] is True),
        "hirata": sum(1 for e in entries if e["report"]["hirata"] is True),
    }


def catalog_cache_key(skew, degree):
    import hashlib

    payload = compact_json(
        {
            "context": context_digest(skew),
            "degree": degree,
            "version": __version__,
        }
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def run_catalog(skew, degree, max_enum=DEFAULT_ENUM_CAP, jobs=1, cache_dir=None):
    """Sweep all monic candidates of one degree.

    Returns (entries, summary) with entries JSON-shaped and sorted by
    coefficient vectors.  Refuses sweeps larger than max_enum.
    """
    total = skew.ring.size() ** degree
    if max_enum is not None and total > max_enum:
        raise CapExceededError("catalog enumeration", total, max_enum)
    cache_path = None
    if cache_dir:
        cache_path = os.path.join(cache_dir, catalog_cache_key(skew, degree) + ".json")
        if os.path.exists(cache_path):
            with open(cache_path, encoding="utf-8") as fh:
                doc = json.load(fh)
            return doc["entries"], doc["summary"]
    candidates = list(monic_coefficient_vectors(skew.ring, degree))
    jobs = max(1, int(jobs or 1))
    if jobs == 1 or len(candidates) < 2 * jobs:
        entries = _classify_block(skew, candidates)
    else:
        step = -(-len(candidates) // jobs)
        blocks = [candidates[i : i + step] for i in range(0, len(candidates), step)]
        ring_cfg = ring_to_config(skew.ring)
        rho_rows = skew.rho.matrix.tolist()
        d_rows = skew.d.matrix.tolist()
        with futures.ProcessPoolExecutor(max_workers=len(blocks)) as pool:
            parts = list(
                pool.map(_worker, [(ring_cfg, rho_rows, d_rows, b) for b in blocks])
            )
        entries = [e for part in parts for e in part]
    entries.sort(key=lambda e: e["f"])
    summary = summarize(entries, total)
    if cache_path:
        os.makedirs(cache_dir, exist_ok=True)
        tmp = cache_path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(canonical_json({"entries": entries, "summary": summary}))
        os.replace(tmp, cache_path)
    return entries, summary
