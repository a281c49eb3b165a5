"""Separability decisions with extracted, re-checkable witnesses.

Two independent routes per question.  The criterion route works inside
the quotient A alone: a single element h of the twisted centralizer
with sum_j y_j h x^j = 1 certifies separability, and a finite family
of pairs (g_i, h_i) from the plain and twisted centralizers with
sum_i g_i x^k h_i hitting (0, ..., 0, 1) certifies the stronger
direct-summand property.  The definition route works in the tensor
square and is only available when the tensor normal form is: it hunts
for a centralizing element mapping to 1 under multiplication, and for
a pair system reproducing 1 (x) 1 from both sides.

Both hunts are linear algebra over Z/c.  The candidate maps are
additive, so the reachable set of finite sums is the span of the
images of generator pairs; membership of the target in that span is
decided exactly, and a witness is rebuilt from the solving
combination.  Solutions are made canonical by returning the
lexicographically least coordinate vector, and pair witnesses are
condensed by grouping the combination along one side of the bilinear
map and then greedily dropping redundant pairs.  The pair count is
small but not claimed minimal.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .linalg import howell, reduce_against, solve
from .quotient import QuotientRing
from .skewpoly import coefficients_fixed_by_rho, is_invariant, is_invariant_by_coefficients
from .tensor import TensorSquare


# ---------------------------------------------------------------------------
# the single-element criterion


def separability_sum(qr, h):
    """sum_j y_j h x^j, the candidate image of 1 under a splitting."""
    acc = qr.zero()
    for j, y in enumerate(qr.partial_quotients()):
        acc = acc + y * h * qr.x_power(j)
    return acc


def in_base_centralizer(qr, g):
    ring = qr.skew.ring
    for i in range(ring.rank):
        al = qr.embed(ring.basis(i))
        if al * g != g * al:
            return False
    return True


def in_twisted_centralizer(qr, h):
    skew = qr.skew
    for i in range(skew.ring.rank):
        alpha = skew.ring.basis(i)
        lhs = qr.embed(skew.twist_apply(alpha, qr.m - 1)) * h
        if lhs != h * qr.embed(alpha):
            return False
    return True


def find_separability_witness(qr) -> Optional[object]:
    """Least h in the twisted centralizer with sum_j y_j h x^j = 1.

    The sum is additive in h, so solving over the centralizer's
    generators decides existence exactly.  The returned element is the
    lexicographically least solution in quotient coordinates: the
    homogeneous solutions are pushed forward to coordinate space and
    the particular solution is reduced against them.
    """
    c = qr.skew.ring.characteristic
    gen_rows = qr.twisted_centralizer().matrix
    if len(gen_rows) == 0:
        return None
    images = np.array(
        [
            separability_sum(qr, qr.from_vec(row)).vec()
            for row in gen_rows
        ],
        dtype=np.int64,
    )
    got = solve(images, qr.one().vec(), c)
    if got is None:
        return None
    t, ker_t = got
    h_vec = (t @ gen_rows) % c
    if len(ker_t):
        h_vec = reduce_against(h_vec, howell((ker_t @ gen_rows) % c, c), c)
    return qr.from_vec(h_vec)


def verify_separability_witness(qr, h) -> bool:
    """Re-check by direct arithmetic: membership and the unit sum."""
    if h.qr != qr:
        return False
    return in_twisted_centralizer(qr, h) and separability_sum(qr, h) == qr.one()


# ---------------------------------------------------------------------------
# the pair-family criterion


def hirata_pair_image(qr, g, h):
    """Concatenated coordinates of (g x^0 h, ..., g x^{m-1} h)."""
    return np.concatenate([(g * qr.x_power(k) * h).vec() for k in range(qr.m)])


def _hirata_target(qr):
    n = qr.coordinate_rank
    target = np.zeros(qr.m * n, dtype=np.int64)
    target[(qr.m - 1) * n :] = qr.one().vec()
    return target


def _combine(qr, weights, rows):
    c = qr.skew.ring.characteristic
    return qr.from_vec((np.asarray(weights, dtype=np.int64) @ rows) % c)


def _prune_pairs(qr, pairs):
    """Greedily drop pairs whose span contribution is redundant.

    Repeatedly re-solves the restricted system without each pair in
    turn, keeping the first removable one out, until no pair can go.
    The survivors absorb the final solving coefficients.
    """
    c = qr.skew.ring.characteristic
    target = _hirata_target(qr)
    keep = list(pairs)
    changed = True
    while changed and len(keep) > 1:
        changed = False
        for i in range(len(keep)):
            rest = keep[:i] + keep[i + 1 :]
            rows = np.array(
                [hirata_pair_image(qr, g, h) for g, h in rest], dtype=np.int64
            )
            if solve(rows, target, c) is not None:
                keep = rest
                changed = True
                break
    rows = np.array([hirata_pair_image(qr, g, h) for g, h in keep], dtype=np.int64)
    t, _ = solve(rows, target, c)
    return tuple((g.scale(int(w)), h) for (g, h), w in zip(keep, t) if w % c)


def find_hirata_witness(qr) -> Optional[tuple]:
    """Pair family (g_i, h_i) with sum_i g_i x^k h_i = (0, ..., 0, 1).

    The pair map is bilinear, so the reachable sums form the span of
    its values on generator pairs; membership of the target there is
    decided by one linear solve.  The solving combination is grouped
    along whichever side yields fewer pairs (each group collapses to a
    single pair by bilinearity), then pruned greedily.
    """
    c = qr.skew.ring.characteristic
    g_rows = qr.base_centralizer().matrix
    h_rows = qr.twisted_centralizer().matrix
    if len(g_rows) == 0 or len(h_rows) == 0:
        return None
    gs = [qr.from_vec(r) for r in g_rows]
    hs = [qr.from_vec(r) for r in h_rows]
    images = np.array(
        [hirata_pair_image(qr, g, h) for g in gs for h in hs], dtype=np.int64
    )
    got = solve(images, _hirata_target(qr), c)
    if got is None:
        return None
    t, _ = got
    weight = t.reshape(len(gs), len(hs))
    col_support = [b for b in range(len(hs)) if weight[:, b].any()]
    row_support = [a for a in range(len(gs)) if weight[a].any()]
    if len(row_support) < len(col_support):
        pairs = [(gs[a], _combine(qr, weight[a], h_rows)) for a in row_support]
    else:
        pairs = [(_combine(qr, weight[:, b], g_rows), hs[b]) for b in col_support]
    return _prune_pairs(qr, pairs)


def verify_hirata_witness(qr, pairs) -> bool:
    """Re-check memberships and all m power sums by direct arithmetic."""
    for g, h in pairs:
        if g.qr != qr or h.qr != qr:
            return False
        if not in_base_centralizer(qr, g):
            return False
        if not in_twisted_centralizer(qr, h):
            return False
    for k in range(qr.m):
        want = qr.one() if k == qr.m - 1 else qr.zero()
        acc = qr.zero()
        for g, h in pairs:
            acc = acc + g * qr.x_power(k) * h
        if acc != want:
            return False
    return True


def yx_conversion_check(qr, pairs) -> bool:
    """Equivalent conditions through the partial quotients.

    The change of basis between the power basis and the partial
    quotients is triangular with unit diagonal, so a verified pair
    family must also satisfy sum g_i y_0 h_i = 1 and
    sum g_i y_k h_i = 0 for k >= 1.
    """
    ys = qr.partial_quotients()
    for k in range(qr.m):
        want = qr.one() if k == 0 else qr.zero()
        acc = qr.zero()
        for g, h in pairs:
            acc = acc + g * ys[k] * h
        if acc != want:
            return False
    return True


# ---------------------------------------------------------------------------
# definition routes through the tensor square


def find_separability_element(ts) -> Optional[object]:
    """Centralizing tensor mapping to 1 under multiplication, least first."""
    qr = ts.qr
    c = qr.skew.ring.characteristic
    gen_rows = ts.centralizer().matrix
    if len(gen_rows) == 0:
        return None
    images = np.array(
        [ts.multiply_out(ts.from_vec(row)).vec() for row in gen_rows],
        dtype=np.int64,
    )
    got = solve(images, qr.one().vec(), c)
    if got is None:
        return None
    t, ker_t = got
    mu_vec = (t @ gen_rows) % c
    if len(ker_t):
        mu_vec = reduce_against(mu_vec, howell((ker_t @ gen_rows) % c, c), c)
    return ts.from_vec(mu_vec)


def verify_separability_element(ts, mu) -> bool:
    """Re-check centrality against all generators and the unit image."""
    qr = ts.qr
    ring = qr.skew.ring
    if mu.ts != ts:
        return False
    x = qr.x()
    if ts.left_mul(x, mu) != ts.right_mul_x(mu):
        return False
    for i in range(ring.rank):
        alpha = ring.basis(i)
        if ts.left_mul(qr.embed(alpha), mu) != ts.right_mul_ring(mu, alpha):
            return False
    return ts.multiply_out(mu) == qr.one()


def find_hirata_element_system(ts) -> Optional[tuple]:
    """Pairs (g_i, mu_i) with sum g_i mu_i = sum mu_i g_i = 1 (x) 1.

    g ranges over the base centralizer of the quotient, mu over the
    tensor centralizer; both product maps are bilinear, so existence is
    span membership of the doubled target over generator pairs.
    """
    qr = ts.qr
    c = qr.skew.ring.characteristic
    g_rows = qr.base_centralizer().matrix
    mu_rows = ts.centralizer().matrix
    if len(g_rows) == 0 or len(mu_rows) == 0:
        return None
    gs = [qr.from_vec(r) for r in g_rows]
    mus = [ts.from_vec(r) for r in mu_rows]
    images = np.array(
        [
            np.concatenate(
                [ts.left_mul(g, mu).vec(), ts.right_mul(mu, g).vec()]
            )
            for g in gs
            for mu in mus
        ],
        dtype=np.int64,
    )
    unit = ts.one_tensor_one().vec()
    got = solve(images, np.concatenate([unit, unit]), c)
    if got is None:
        return None
    t, _ = got
    weight = t.reshape(len(gs), len(mus))
    out = []
    for b in range(len(mus)):
        if weight[:, b].any():
            out.append((_combine(qr, weight[:, b], g_rows), mus[b]))
    return tuple(out)


def verify_hirata_element_system(ts, pairs) -> bool:
    left = ts.zero()
    right = ts.zero()
    for g, mu in pairs:
        if not in_base_centralizer(ts.qr, g):
            return False
        left = left + ts.left_mul(g, mu)
        right = right + ts.right_mul(mu, g)
    unit = ts.one_tensor_one()
    return left == unit and right == unit


# ---------------------------------------------------------------------------
# the full decision pipeline


@dataclass(frozen=True)
class AssumptionFlags:
    """What the context and polynomial satisfy, gating the oracles."""

    commuting: bool
    coefficients_fixed: bool

    @property
    def tensor_ready(self):
        return self.commuting and self.coefficients_fixed

    def to_json(self):
        return {
            "rho_d_commute": self.commuting,
            "coeffs_in_B_rho": self.coefficients_fixed,
        }


@dataclass
class DecisionReport:
    """Verdicts, witnesses, oracle agreement, and stage timings.

    separable and hirata are None when invariance already failed and
    the question does not arise.  oracle_agreement is None when the
    definition routes cannot run; the note says why.  Timings are
    advisory and never part of canonical serialized output.
    """

    invariant: bool
    separable: Optional[bool]
    hirata: Optional[bool]
    witness_h: Optional[object]
    witness_pairs: Optional[tuple]
    oracle_agreement: Optional[dict]
    assumptions: AssumptionFlags
    note: Optional[str] = None
    timings: Optional[dict] = None


def decide(skew, f) -> DecisionReport:
    """Run the whole pipeline on one monic polynomial.

    Invariance first, by the direct test and (when the twists commute)
    the coefficientwise test, which must agree.  For invariant f both
    criterion hunts run; the definition routes run when the tensor
    normal form exists and their agreement is recorded.  Every witness
    is re-verified before it is returned.
    """
    timings = {}
    flags = AssumptionFlags(skew.commuting, coefficients_fixed_by_rho(f))
    t0 = time.perf_counter()
    inv = bool(is_invariant(f))
    if skew.commuting and bool(is_invariant_by_coefficients(f)) != inv:
        raise RuntimeError("internal: the two invariance tests disagree")
    timings["invariance_s"] = time.perf_counter() - t0
    if not inv:
        return DecisionReport(
            invariant=False,
            separable=None,
            hirata=None,
            witness_h=None,
            witness_pairs=None,
            oracle_agreement=None,
            assumptions=flags,
            note="not invariant: the generated ideal is not two-sided, "
            "so the separability questions do not arise",
            timings=timings,
        )
    qr = QuotientRing(skew, f, check=False)
    t0 = time.perf_counter()
    h = find_separability_witness(qr)
    if h is not None and not verify_separability_witness(qr, h):
        raise RuntimeError("internal: separability witness failed re-check")
    timings["separable_s"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    pairs = find_hirata_witness(qr)
    if pairs is not None and not verify_hirata_witness(qr, pairs):
        raise RuntimeError("internal: pair witness failed re-check")
    timings["hirata_s"] = time.perf_counter() - t0
    if pairs is not None and h is None:
        raise RuntimeError("internal: pair family found but no single witness")
    note = None
    agreement = None
    if qr.supports_tensor_normal_form:
        t0 = time.perf_counter()
        ts = TensorSquare(qr)
        mu = find_separability_element(ts)
        if mu is not None and not verify_separability_element(ts, mu):
            raise RuntimeError("internal: tensor witness failed re-check")
        system = find_hirata_element_system(ts)
        if system is not None and not verify_hirata_element_system(ts, system):
            raise RuntimeError("internal: tensor pair system failed re-check")
        agreement = {
            "separable": (mu is not None) == (h is not None),
            "hirata": (system is not None) == (pairs is not None),
        }
        timings["oracle_s"] = time.perf_counter() - t0
    else:
        note = (
            "criterion-only verdicts: the definitional cross-check needs "
            "commuting twist maps and fixed coefficients"
        )
    return DecisionReport(
        invariant=True,
        separable=h is not None,
        hirata=pairs is not None,
        witness_h=h,
        witness_pairs=pairs,
        oracle_agreement=agreement,
        assumptions=flags,
        note=note,
        timings=timings,
    )
