"""Exact linear algebra over Z/n.

Vectors are rows, maps act on the right (``v @ M``), and submodules are
row spans.  Everything is integer arithmetic on numpy int64 arrays with
entries kept in ``[0, n)``.

The workhorse is the Howell form, the canonical echelon form for row
spans over Z/n.  Unlike Gaussian elimination over a field it stays
correct in the presence of zero divisors (composite n): pivots are
divisors of n in strictly increasing columns, entries above a pivot are
reduced modulo that pivot, and annihilator multiples of each pivot row
are folded back in so that the row list exposes every leading-column
pattern the span contains.  Two generating sets span the same submodule
iff their Howell forms are identical, which is what makes membership,
span equality and canonical witnesses cheap downstream.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceededError

DEFAULT_ENUM_CAP = 65536


def egcd(a, b):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def unit_for(a, n):
    """A unit u mod n with u*a == gcd(a, n) mod n.

    Standard stabilization trick: take the Bezout coefficient of a and
    bump it by multiples of n/gcd until it is coprime to n.  The loop is
    guaranteed to land on a unit within n steps.
    """
    a %= n
    g = math.gcd(a, n)
    if a == g:
        return 1
    _, s, _ = egcd(a, n)
    step = n // g
    u = s % n
    for _ in range(n):
        if math.gcd(u, n) == 1:
            assert (u * a) % n == g % n
            return u
        u = (u + step) % n
    raise AssertionError(f"no stabilizing unit for a={a}, n={n}")


_pascal_rows = [[1]]


def binom_mod(j, i, n):
    """Binomial coefficient C(j, i) reduced mod n.

    Computed over Z with the Pascal recurrence (no modular division, so
    composite n is safe) and cached.
    """
    if i < 0 or i > j:
        return 0
    while len(_pascal_rows) <= j:
        prev = _pascal_rows[-1]
        _pascal_rows.append(
            [1] + [prev[t] + prev[t + 1] for t in range(len(prev) - 1)] + [1]
        )
    return _pascal_rows[j][i] % n


def _leading(row):
    nz = np.nonzero(row)[0]
    return int(nz[0]) if len(nz) else -1


def howell(mat, n):
    """Canonical Howell form of the row span of mat over Z/n.

    Returns a 2-D int64 array without zero rows.  Pivot entries divide n
    and sit in strictly increasing columns; entries above each pivot are
    reduced modulo it; annihilator multiples are appended during
    elimination so the span-closure property holds.  The result depends
    only on the row span, not on the generating rows.
    """
    mat = np.atleast_2d(np.asarray(mat, dtype=np.int64)) % n
    ncols = mat.shape[1]
    work = [r.copy() for r in mat if r.any()]
    done = []
    for col in range(ncols):
        # every row in `work` is zero in all columns before `col`
        pivots = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not pivots:
            work = rest
            continue
        piv = pivots[0]
        for r in pivots[1:]:
            g, s, t = egcd(int(piv[col]), int(r[col]))
            qa, qb = int(piv[col]) // g, int(r[col]) // g
            piv, r = (s * piv + t * r) % n, ((-qb) * piv + qa * r) % n
            if r.any():
                rest.append(r)
        u = unit_for(int(piv[col]), n)
        piv = (u * piv) % n
        d = int(piv[col])  # divides n after unit normalization
        extra = ((n // d) * piv) % n
        if extra.any():
            rest.append(extra)
        done.append(piv)
        work = rest
    # reduce entries above each pivot into [0, pivot)
    for idx, row in enumerate(done):
        col = _leading(row)
        d = int(row[col])
        for above in done[:idx]:
            q = int(above[col]) // d
            if q:
                above -= q * row
                above %= n
    if not done:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.array(done, dtype=np.int64)


def kernel(mat, n):
    """Howell basis of the left kernel {x : x @ mat == 0 mod n}."""
    mat = np.atleast_2d(np.asarray(mat, dtype=np.int64)) % n
    rows, cols = mat.shape
    if rows == 0:
        return np.zeros((0, 0), dtype=np.int64)
    aug = np.hstack([mat, np.eye(rows, dtype=np.int64)])
    H = howell(aug, n)
    ker = [r[cols:] for r in H if not r[:cols].any()]
    if not ker:
        return np.zeros((0, rows), dtype=np.int64)
    # the extracted block inherits the Howell shape from the full form
    return np.array(ker, dtype=np.int64)


def reduce_against(vec, rows, n):
    """Reduce vec modulo the row span of a Howell-form matrix.

    Walking the pivots left to right and clearing each coordinate into
    [0, pivot) produces the lexicographically least member of the coset
    vec + span, so this doubles as the canonical coset representative.
    """
    v = np.asarray(vec, dtype=np.int64) % n
    for row in rows:
        col = _leading(row)
        if col < 0:
            continue
        q = int(v[col]) // int(row[col])
        if q:
            v = (v - q * row) % n
    return v


def solve(mat, b, n):
    """Solve x @ mat == b over Z/n.

    Returns (x, kernel_rows) with x the lexicographically least solution
    and kernel_rows a Howell basis of the homogeneous solutions, or None
    when the system is inconsistent.
    """
    mat = np.atleast_2d(np.asarray(mat, dtype=np.int64)) % n
    rows, cols = mat.shape
    b = np.asarray(b, dtype=np.int64) % n
    if rows == 0:
        if b.any():
            return None
        return np.zeros(0, dtype=np.int64), np.zeros((0, 0), dtype=np.int64)
    aug = np.hstack([mat, np.eye(rows, dtype=np.int64)])
    H = howell(aug, n)
    lead = [r for r in H if r[:cols].any()]
    ker = [r[cols:] for r in H if not r[:cols].any()]
    res = np.concatenate([b, np.zeros(rows, dtype=np.int64)])
    for row in lead:
        col = _leading(row)
        d = int(row[col])
        if col >= cols:  # pragma: no cover - lead rows have left support
            continue
        r = int(res[col])
        if r % d:
            return None
        res = (res - (r // d) * row) % n
    if res[:cols].any():
        return None
    x = (-res[cols:]) % n
    ker_mat = (
        np.array(ker, dtype=np.int64) if ker else np.zeros((0, rows), dtype=np.int64)
    )
    x = reduce_against(x, ker_mat, n)
    return x, ker_mat


@dataclass(frozen=True)
class Submodule:
    """A submodule of (Z/n)^ambient, held as canonical Howell rows."""

    modulus: int
    ambient: int
    rows: tuple = field(default=())  # tuple of row tuples, Howell form

    @classmethod
    def from_rows(cls, rows, modulus, ambient):
        H = howell(np.zeros((0, ambient)) if len(rows) == 0 else rows, modulus)
        return cls(modulus, ambient, tuple(tuple(int(x) for x in r) for r in H))

    @classmethod
    def zero(cls, modulus, ambient):
        return cls(modulus, ambient, ())

    @classmethod
    def full(cls, modulus, ambient):
        return cls.from_rows(np.eye(ambient, dtype=np.int64), modulus, ambient)

    @property
    def matrix(self):
        if not self.rows:
            return np.zeros((0, self.ambient), dtype=np.int64)
        return np.array(self.rows, dtype=np.int64)

    def order(self):
        total = 1
        for r in self.rows:
            head = next(x for x in r if x)
            total *= self.modulus // head
        return total

    def contains(self, vec):
        return not reduce_against(vec, self.matrix, self.modulus).any()

    def reduce(self, vec):
        return reduce_against(vec, self.matrix, self.modulus)

    def elements(self, cap=DEFAULT_ENUM_CAP):
        """Yield all member vectors; raises when the order exceeds cap."""
        size = self.order()
        if size > cap:
            raise CapExceededError("submodule enumeration", size, cap)
        mat = self.matrix
        heads = [self.modulus // next(x for x in r if x) for r in self.rows]
        for combo in itertools.product(*(range(h) for h in heads)):
            if mat.shape[0]:
                yield (np.array(combo, dtype=np.int64) @ mat) % self.modulus
            else:
                yield np.zeros(self.ambient, dtype=np.int64)

    def intersect(self, other):
        self._check_ambient(other)
        if not self.rows or not other.rows:
            return Submodule.zero(self.modulus, self.ambient)
        stacked = np.vstack([self.matrix, other.matrix])
        ker = kernel(stacked, self.modulus)
        left = ker[:, : len(self.rows)]
        vecs = (left @ self.matrix) % self.modulus
        return Submodule.from_rows(vecs, self.modulus, self.ambient)

    def add(self, other):
        self._check_ambient(other)
        if not self.rows:
            return other
        if not other.rows:
            return self
        return Submodule.from_rows(
            np.vstack([self.matrix, other.matrix]), self.modulus, self.ambient
        )

    def is_subset_of(self, other):
        return all(other.contains(np.array(r, dtype=np.int64)) for r in self.rows)

    def _check_ambient(self, other):
        if self.modulus != other.modulus or self.ambient != other.ambient:
            raise ValueError("submodules live in different ambient modules")
