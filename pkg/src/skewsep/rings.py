"""Finite rings presented by structure constants.

A ring B is given as a free Z/c-module of rank k together with a
multiplication table ``mul[a][b]`` (the coordinate vector of the product
of basis elements a and b) and the coordinates of the identity.  All
arithmetic is exact mod c.  Twist data comes as additive maps: a ring
automorphism rho and a rho-derivation d, both stored as k x k matrices
whose rows are the images of the basis (vectors are rows, maps act on
the right).

Validation is split in two: malformed shapes raise PresentationError,
while axiom failures come back in a ValidationReport listing the basis
indices where an axiom breaks.  Checking axioms on basis tuples is
enough because every axiom involved is multilinear in its arguments.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .errors import ContextMismatchError, PresentationError
from .linalg import Submodule, kernel, solve


@dataclass(frozen=True)
class ValidationIssue:
    rule: str
    where: tuple
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    issues: tuple

    def __bool__(self):
        return self.ok

    def describe(self):
        if self.ok:
            return "ok"
        return "; ".join(f"{i.rule}{list(i.where)}: {i.detail}" for i in self.issues)


def _report(issues):
    return ValidationReport(not issues, tuple(issues))


class FiniteRing:
    """Structure-constant presentation of a finite ring."""

    __slots__ = ("characteristic", "rank", "mul_table", "one", "labels", "_digest")

    def __init__(self, characteristic, mul_table, one, labels=None):
        c = int(characteristic)
        if c < 2:
            raise PresentationError("characteristic must be at least 2")
        table = np.asarray(mul_table, dtype=np.int64)
        if table.ndim != 3 or len(set(table.shape)) != 1:
            raise PresentationError(
                f"multiplication table must be k x k x k, got {table.shape}"
            )
        k = table.shape[0]
        if k < 1:
            raise PresentationError("rank must be at least 1")
        one_vec = np.asarray(one, dtype=np.int64)
        if one_vec.shape != (k,):
            raise PresentationError(
                f"identity vector must have length {k}, got {one_vec.shape}"
            )
        if labels is not None and len(labels) != k:
            raise PresentationError("labels must match the rank")
        self.characteristic = c
        self.rank = k
        self.mul_table = table % c
        self.mul_table.flags.writeable = False
        self.one = one_vec % c
        self.one.flags.writeable = False
        self.labels = tuple(labels) if labels else tuple(f"e{i}" for i in range(k))
        self._digest = None

    # -- raw coordinate arithmetic -------------------------------------

    def add_vec(self, u, v):
        return (u + v) % self.characteristic

    def mul_vec(self, u, v):
        return (
            np.einsum("a,b,abd->d", u, v, self.mul_table) % self.characteristic
        )

    # -- elements ------------------------------------------------------

    def element(self, coords):
        v = np.asarray(coords, dtype=np.int64)
        if v.shape != (self.rank,):
            raise PresentationError(
                f"coordinate vector must have length {self.rank}"
            )
        return RingElement(self, tuple(int(x) % self.characteristic for x in v))

    def zero(self):
        return RingElement(self, (0,) * self.rank)

    def identity(self):
        return RingElement(self, tuple(int(x) for x in self.one))

    def basis(self, i):
        coords = [0] * self.rank
        coords[i] = 1
        return RingElement(self, tuple(coords))

    def elements(self):
        """All |B| = c^k elements, lexicographic in coordinates."""
        import itertools

        for coords in itertools.product(range(self.characteristic), repeat=self.rank):
            yield RingElement(self, coords)

    def size(self):
        return self.characteristic**self.rank

    # -- identity / hashing --------------------------------------------

    def digest(self):
        if self._digest is None:
            payload = json.dumps(
                {
                    "c": self.characteristic,
                    "mul": self.mul_table.tolist(),
                    "one": self.one.tolist(),
                },
                sort_keys=True,
                separators=(",", ":"),
            )
            self._digest = hashlib.sha256(payload.encode()).hexdigest()
        return self._digest

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteRing):
            return NotImplemented
        return (
            self.characteristic == other.characteristic
            and self.rank == other.rank
            and np.array_equal(self.mul_table, other.mul_table)
            and np.array_equal(self.one, other.one)
        )

    def __hash__(self):
        return hash((self.characteristic, self.rank, self.digest()))

    def __repr__(self):
        return f"FiniteRing(c={self.characteristic}, rank={self.rank})"


class RingElement:
    """An element of a FiniteRing, held as a coordinate tuple."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring, coords):
        self.ring = ring
        self.coords = coords

    def vec(self):
        return np.array(self.coords, dtype=np.int64)

    def is_zero(self):
        return not any(self.coords)

    def _coerce(self, other):
        if not isinstance(other, RingElement):
            raise TypeError(f"cannot combine RingElement with {type(other).__name__}")
        if other.ring is not self.ring and other.ring != self.ring:
            raise ContextMismatchError("elements belong to different rings")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        c = self.ring.characteristic
        return RingElement(
            self.ring, tuple((a + b) % c for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        other = self._coerce(other)
        c = self.ring.characteristic
        return RingElement(
            self.ring, tuple((a - b) % c for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self):
        c = self.ring.characteristic
        return RingElement(self.ring, tuple((-a) % c for a in self.coords))

    def __mul__(self, other):
        other = self._coerce(other)
        out = self.ring.mul_vec(self.vec(), other.vec())
        return RingElement(self.ring, tuple(int(x) for x in out))

    def scale(self, n):
        """Z/c scalar multiple."""
        c = self.ring.characteristic
        return RingElement(self.ring, tuple((n * a) % c for a in self.coords))

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.coords == other.coords and self.ring == other.ring

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for c, lab in zip(self.coords, self.ring.labels):
            if c == 0:
                continue
            if lab == "e0" or (self.ring.one[0] == 1 and lab == self.ring.labels[0]
                               and not any(self.ring.one[1:])):
                parts.append(str(c) if c != 1 or len(self.coords) == 1 else "1")
            else:
                parts.append(lab if c == 1 else f"{c}{lab}")
        return "+".join(parts) if parts else "0"


class AdditiveMap:
    """Additive self-map of a ring, as a matrix of basis images."""

    __slots__ = ("ring", "matrix", "kind")

    def __init__(self, ring, matrix, kind="map"):
        m = np.asarray(matrix, dtype=np.int64)
        if m.shape != (ring.rank, ring.rank):
            raise PresentationError(
                f"map matrix must be {ring.rank} x {ring.rank}, got {m.shape}"
            )
        self.ring = ring
        self.matrix = m % ring.characteristic
        self.matrix.flags.writeable = False
        self.kind = kind

    @classmethod
    def identity(cls, ring, kind="automorphism"):
        return cls(ring, np.eye(ring.rank, dtype=np.int64), kind)

    @classmethod
    def zero(cls, ring, kind="derivation"):
        return cls(ring, np.zeros((ring.rank, ring.rank), dtype=np.int64), kind)

    def apply_vec(self, v):
        return (v @ self.matrix) % self.ring.characteristic

    def __call__(self, elt):
        if elt.ring is not self.ring and elt.ring != self.ring:
            raise ContextMismatchError("element belongs to a different ring")
        return RingElement(
            self.ring, tuple(int(x) for x in self.apply_vec(elt.vec()))
        )

    def compose(self, second):
        """The map 'apply self, then second'."""
        return AdditiveMap(
            self.ring,
            (self.matrix @ second.matrix) % self.ring.characteristic,
            self.kind,
        )

    def is_identity(self):
        return np.array_equal(self.matrix, np.eye(self.ring.rank, dtype=np.int64))

    def is_zero(self):
        return not self.matrix.any()

    def inverse(self):
        """Matrix inverse over Z/c, or None when not invertible."""
        c = self.ring.characteristic
        k = self.ring.rank
        rows = []
        eye = np.eye(k, dtype=np.int64)
        for i in range(k):
            sol = solve(self.matrix, eye[i], c)
            if sol is None:
                return None
            rows.append(sol[0])
        return AdditiveMap(self.ring, np.array(rows), self.kind)

    def __eq__(self, other):
        if not isinstance(other, AdditiveMap):
            return NotImplemented
        return self.ring == other.ring and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash((self.ring.digest(), self.matrix.tobytes()))

    def __repr__(self):
        return f"AdditiveMap(kind={self.kind}, matrix={self.matrix.tolist()})"


# ---------------------------------------------------------------------------
# validation


def validate_ring(ring):
    """Check associativity and the two-sided identity on all basis tuples."""
    issues = []
    k = ring.rank
    basis = [ring.basis(i) for i in range(k)]
    for a in range(k):
        for b in range(k):
            for d in range(k):
                left = (basis[a] * basis[b]) * basis[d]
                right = basis[a] * (basis[b] * basis[d])
                if left != right:
                    issues.append(
                        ValidationIssue(
                            "associativity",
                            (a, b, d),
                            f"(e{a}e{b})e{d} = {left} but e{a}(e{b}e{d}) = {right}",
                        )
                    )
    one = ring.identity()
    for a in range(k):
        if one * basis[a] != basis[a]:
            issues.append(
                ValidationIssue("identity", (a,), f"one*e{a} = {one * basis[a]}")
            )
        if basis[a] * one != basis[a]:
            issues.append(
                ValidationIssue("identity", (a,), f"e{a}*one = {basis[a] * one}")
            )
    return _report(issues)


def validate_automorphism(ring, rho):
    """Multiplicativity on basis pairs, rho(1) = 1, and invertibility."""
    issues = []
    k = ring.rank
    basis = [ring.basis(i) for i in range(k)]
    for a in range(k):
        for b in range(k):
            if rho(basis[a] * basis[b]) != rho(basis[a]) * rho(basis[b]):
                issues.append(
                    ValidationIssue(
                        "multiplicative",
                        (a, b),
                        f"rho(e{a}e{b}) != rho(e{a})rho(e{b})",
                    )
                )
    if rho(ring.identity()) != ring.identity():
        issues.append(ValidationIssue("fixes_one", (), "rho(1) != 1"))
    if rho.inverse() is None:
        issues.append(ValidationIssue("bijective", (), "matrix not invertible mod c"))
    return _report(issues)


def validate_derivation(ring, rho, d):
    """Twisted Leibniz rule d(ab) = d(a)b + rho(a)d(b) on basis pairs."""
    issues = []
    k = ring.rank
    basis = [ring.basis(i) for i in range(k)]
    for a in range(k):
        for b in range(k):
            lhs = d(basis[a] * basis[b])
            rhs = d(basis[a]) * basis[b] + rho(basis[a]) * d(basis[b])
            if lhs != rhs:
                issues.append(
                    ValidationIssue(
                        "leibniz", (a, b), f"d(e{a}e{b}) = {lhs} but rule gives {rhs}"
                    )
                )
    if not d(ring.identity()).is_zero():
        issues.append(ValidationIssue("derivation_at_one", (), "d(1) != 0"))
    return _report(issues)


def maps_commute(rho, d):
    c = rho.ring.characteristic
    return np.array_equal(
        (rho.matrix @ d.matrix) % c, (d.matrix @ rho.matrix) % c
    )


# ---------------------------------------------------------------------------
# submodules cut out by maps


def fixed_submodule(m):
    """Kernel of (m - id): the elements fixed by the map."""
    k = m.ring.rank
    return Submodule.from_rows(
        kernel(
            (m.matrix - np.eye(k, dtype=np.int64)) % m.ring.characteristic,
            m.ring.characteristic,
        ),
        m.ring.characteristic,
        k,
    )


def kernel_submodule(m):
    return Submodule.from_rows(
        kernel(m.matrix, m.ring.characteristic), m.ring.characteristic, m.ring.rank
    )


def center_of(ring, sub):
    """Members of sub that commute with every member of sub.

    Commutators are bilinear, so it is enough to impose commutation with
    a generating set.  The result is the center of the subring spanned
    by sub when sub is multiplicatively closed.
    """
    c = ring.characteristic
    gens = sub.matrix
    if gens.shape[0] == 0:
        return sub
    blocks = []
    for g in gens:
        # parametrize x = t @ gens; the constraint xg - gx = 0 is linear in t
        block = np.array(
            [
                (ring.mul_vec(row, g) - ring.mul_vec(g, row)) % c
                for row in gens
            ],
            dtype=np.int64,
        )
        blocks.append(block)
    stacked = np.hstack(blocks)
    ker = kernel(stacked, c)
    vecs = (ker @ gens) % c if ker.shape[0] else np.zeros((0, ring.rank))
    return Submodule.from_rows(vecs, c, ring.rank)


# ---------------------------------------------------------------------------
# constructors for the usual suspects


def zmod_ring(n):
    return FiniteRing(n, [[[1]]], [1], labels=("1",))


def _poly_mul_mod(p, q, modulus, prime):
    """Product of coefficient lists mod (prime, modulus), modulus monic."""
    r = len(modulus) - 1
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = (out[i + j] + a * b) % prime
    for deg in range(len(out) - 1, r - 1, -1):
        coef = out[deg]
        if coef:
            for t in range(r + 1):
                out[deg - r + t] = (out[deg - r + t] - coef * modulus[t]) % prime
    return [x % prime for x in out[:r]] + [0] * max(0, r - len(out))


def _is_irreducible(prime, modulus):
    """Brute-force irreducibility over F_p for small degrees."""
    import itertools

    r = len(modulus) - 1
    if r < 2:
        return True
    for deg in range(1, r // 2 + 1):
        for tail in itertools.product(range(prime), repeat=deg):
            divisor = list(tail) + [1]
            # long division of modulus by divisor over F_p
            rem = list(modulus)
            inv = pow(divisor[-1], -1, prime)
            for d in range(len(rem) - 1, deg - 1, -1):
                coef = (rem[d] * inv) % prime
                if coef:
                    for t in range(deg + 1):
                        rem[d - deg + t] = (rem[d - deg + t] - coef * divisor[t]) % prime
            if not any(rem[:deg]):
                return False
    return True


def first_irreducible(p, r):
    """Lexicographically first monic irreducible of degree r over F_p."""
    import itertools

    for tail in itertools.product(range(p), repeat=r):
        cand = list(tail) + [1]
        if _is_irreducible(p, cand):
            return cand
    raise PresentationError(f"no irreducible of degree {r} over F_{p}")


def galois_field(p, r, modulus):
    """GF(p^r) as F_p[w]/(modulus), modulus monic irreducible, low to high."""
    if r < 1:
        raise PresentationError("extension degree must be positive")
    modulus = [m % p for m in modulus]
    if len(modulus) != r + 1 or modulus[-1] != 1:
        raise PresentationError("modulus must be monic of degree r, low to high")
    if not _is_irreducible(p, modulus):
        raise PresentationError("modulus is reducible over F_p")
    table = np.zeros((r, r, r), dtype=np.int64)
    for a in range(r):
        for b in range(r):
            pa = [0] * a + [1]
            pb = [0] * b + [1]
            table[a][b] = _poly_mul_mod(pa, pb, modulus, p)
    labels = ["1"] + (["w"] if r > 1 else []) + [f"w{i}" for i in range(2, r)]
    return FiniteRing(p, table, [1] + [0] * (r - 1), labels=labels)


def truncated_poly_ring(p, e):
    """F_p[t] / (t^e), basis 1, t, ..., t^(e-1)."""
    if e < 1:
        raise PresentationError("truncation order must be positive")
    table = np.zeros((e, e, e), dtype=np.int64)
    for a in range(e):
        for b in range(e):
            if a + b < e:
                table[a][b][a + b] = 1
    labels = ["1"] + (["t"] if e > 1 else []) + [f"t{i}" for i in range(2, e)]
    return FiniteRing(p, table, [1] + [0] * (e - 1), labels=labels)


def matrix_ring(base, n):
    """n x n matrices over a presented base ring."""
    kb = base.rank
    k = n * n * kb
    c = base.characteristic

    def idx(i, j, a):
        return (i * n + j) * kb + a

    table = np.zeros((k, k, k), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            for a in range(kb):
                for j2 in range(n):
                    for l in range(n):
                        for b in range(kb):
                            if j != j2:
                                continue
                            prod = base.mul_table[a][b]
                            for dcoord in range(kb):
                                if prod[dcoord]:
                                    table[idx(i, j, a)][idx(j2, l, b)][
                                        idx(i, l, dcoord)
                                    ] = prod[dcoord]
    one = np.zeros(k, dtype=np.int64)
    for i in range(n):
        for a in range(kb):
            if base.one[a]:
                one[idx(i, i, a)] = base.one[a]
    labels = [
        f"E{i}{j}" if kb == 1 else f"E{i}{j}.{base.labels[a]}"
        for i in range(n)
        for j in range(n)
        for a in range(kb)
    ]
    return FiniteRing(c, table, one, labels=labels)


def direct_product(*factors):
    """Componentwise product of rings sharing one characteristic."""
    if not factors:
        raise PresentationError("need at least one factor")
    c = factors[0].characteristic
    if any(f.characteristic != c for f in factors):
        raise PresentationError("factors must share the characteristic")
    k = sum(f.rank for f in factors)
    table = np.zeros((k, k, k), dtype=np.int64)
    one = np.zeros(k, dtype=np.int64)
    labels = []
    off = 0
    for fi, f in enumerate(factors):
        r = f.rank
        table[off : off + r, off : off + r, off : off + r] = f.mul_table
        one[off : off + r] = f.one
        labels.extend(f"p{fi}.{lab}" for lab in f.labels)
        off += r
    return FiniteRing(c, table, one, labels=labels)


def frobenius_map(ring):
    """The p-th power map as a matrix; p must be the (prime) characteristic.

    Additive only in commutative rings of prime characteristic, which is
    where this shorthand makes sense; run validate_automorphism on the
    result before trusting it.
    """
    p = ring.characteristic
    rows = []
    for i in range(ring.rank):
        b = ring.basis(i)
        acc = ring.identity()
        for _ in range(p):
            acc = acc * b
        rows.append(acc.coords)
    return AdditiveMap(ring, np.array(rows), "automorphism")


def inner_derivation(ring, rho, elt):
    """The rho-derivation a -> elt*a - rho(a)*elt."""
    rows = []
    for i in range(ring.rank):
        b = ring.basis(i)
        rows.append((elt * b - rho(b) * elt).coords)
    return AdditiveMap(ring, np.array(rows), "derivation")


def formal_derivative_map(ring):
    """d/dt on a truncated polynomial ring built by truncated_poly_ring."""
    e = ring.rank
    m = np.zeros((e, e), dtype=np.int64)
    for i in range(1, e):
        m[i][i - 1] = i
    return AdditiveMap(ring, m, "derivation")


# ---------------------------------------------------------------------------
# JSON configuration


def ring_to_config(ring):
    return {
        "characteristic": ring.characteristic,
        "rank": ring.rank,
        "one": ring.one.tolist(),
        "mul": ring.mul_table.tolist(),
        "labels": list(ring.labels),
    }


def ring_from_config(cfg):
    """Building a ring from explicit constants or constructor shorthand."""
    if not isinstance(cfg, dict):
        raise PresentationError("ring config must be an object")
    if "ring" in cfg:
        kind = cfg["ring"]
        if kind == "Zmod":
            return zmod_ring(int(cfg["n"]))
        if kind == "GF":
            p, r = int(cfg["p"]), int(cfg["r"])
            modulus = cfg.get("modulus")
            if modulus is None:
                modulus = first_irreducible(p, r)
            return galois_field(p, r, list(modulus))
        if kind == "TruncatedPoly":
            return truncated_poly_ring(int(cfg["p"]), int(cfg["e"]))
        if kind == "MatrixRing":
            return matrix_ring(ring_from_config(cfg["base"]), int(cfg["n"]))
        if kind == "Product":
            return direct_product(*(ring_from_config(f) for f in cfg["factors"]))
        raise PresentationError(f"unknown ring constructor {kind!r}")
    missing = {"characteristic", "rank", "one", "mul"} - set(cfg)
    if missing:
        raise PresentationError(f"ring config missing keys {sorted(missing)}")
    return FiniteRing(
        cfg["characteristic"], cfg["mul"], cfg["one"], labels=cfg.get("labels")
    )


def map_from_config(ring, cfg, kind):
    if cfg is None:
        return (
            AdditiveMap.identity(ring)
            if kind == "automorphism"
            else AdditiveMap.zero(ring)
        )
    if cfg == "identity":
        return AdditiveMap.identity(ring, kind)
    if cfg == "zero":
        return AdditiveMap.zero(ring, kind)
    if cfg == "frobenius":
        return frobenius_map(ring)
    return AdditiveMap(ring, cfg, kind)
