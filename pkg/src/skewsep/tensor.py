"""The self-tensor of the quotient ring over its base, in normal form.

Every element of A (x) A (balanced over the base ring B) is written
uniquely as sum_j z_j (x) x^j with the z_j in A, because A is free over
B on both sides and base scalars slide across the tensor sign.  That
sliding is only well behaved when the twists commute and the modulus
has rho-fixed coefficients, so the layer refuses to build otherwise.

The centralizer of A inside the tensor square, the set of mu with
a mu = mu a for every a, is cut out by commutation with the generators
of A: the base scalars and x.  The right action by a base scalar folds
each x^j b back into left-coefficient form and absorbs it into z_j; the
right action by x shifts components and wraps the top one through the
modulus.  The centralizer is spanned by the canonical elements
sum_j y_j h (x) x^j for h ranging over the twisted centralizer of the
quotient, and verify_parametrization checks exactly that as an
equality of canonical row spans.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AssumptionError, ContextMismatchError, WitnessDomainError
from .linalg import Submodule, kernel
from .skewpoly import left_coefficients_of_monomial


class TensorSquare:
    """Context for A (x) A over the base, components indexed by x powers."""

    __slots__ = ("qr", "_centralizer")

    def __init__(self, qr):
        if not qr.supports_tensor_normal_form:
            missing = []
            if not qr.skew.commuting:
                missing.append("commuting twist maps")
            if not qr.coefficients_fixed:
                missing.append("rho-fixed modulus coefficients")
            raise AssumptionError(
                "tensor normal form requires " + " and ".join(missing)
            )
        self.qr = qr
        self._centralizer = None

    @property
    def m(self):
        return self.qr.m

    @property
    def coordinate_rank(self):
        return self.qr.coordinate_rank * self.m

    def element(self, parts):
        parts = tuple(parts)
        if len(parts) != self.m:
            raise ContextMismatchError(f"need exactly {self.m} components")
        for p in parts:
            if p.qr != self.qr:
                raise ContextMismatchError("component from a different quotient")
        return TensorElement(self, parts)

    def zero(self):
        return self.element([self.qr.zero()] * self.m)

    def one_tensor_one(self):
        parts = [self.qr.one()] + [self.qr.zero()] * (self.m - 1)
        return self.element(parts)

    def pure(self, a, b):
        """a (x) b in normal form.

        The right factor is expanded as sum_j x^j b_j, each x^j b_j is
        rewritten with left coefficients, and those base scalars cross
        the tensor sign onto a.
        """
        parts = [self.qr.zero() for _ in range(self.m)]
        for j, bj in enumerate(b.coeffs):
            if bj.is_zero():
                continue
            for i, beta in enumerate(
                left_coefficients_of_monomial(self.qr.skew, j, bj)
            ):
                if not beta.is_zero():
                    parts[i] = parts[i] + a.right_scalar(beta)
        return self.element(parts)

    def from_vec(self, v):
        n = self.qr.coordinate_rank
        return self.element(
            [self.qr.from_vec(v[j * n : (j + 1) * n]) for j in range(self.m)]
        )

    # -- module actions -------------------------------------------------

    def left_mul(self, a, t):
        """(a mu): multiply every component on the left."""
        return self.element([a * z for z in t.parts])

    def right_mul_ring(self, t, b):
        """(mu b) for a base scalar b, folded across the tensor sign."""
        parts = [self.qr.zero() for _ in range(self.m)]
        for j, z in enumerate(t.parts):
            if z.is_zero():
                continue
            for i, beta in enumerate(
                left_coefficients_of_monomial(self.qr.skew, j, b)
            ):
                if not beta.is_zero():
                    parts[i] = parts[i] + z.right_scalar(beta)
        return self.element(parts)

    def right_mul_x(self, t):
        """(mu x): shift components, wrapping the top through the modulus.

        x^m = -sum_j a_j x^j with the coefficients commuting past x, so
        the top component re-enters every slot scaled by -a_j.
        """
        top = t.parts[self.m - 1]
        parts = []
        for j in range(self.m):
            prev = t.parts[j - 1] if j > 0 else self.qr.zero()
            aj = self.qr.modulus.coefficient(j)
            parts.append(prev - top.right_scalar(aj))
        return self.element(parts)

    def right_mul(self, t, a):
        """(mu a) for any a in A, via its right-coefficient expansion."""
        acc = self.zero()
        cur = t
        for j, bj in enumerate(a.coeffs):
            if j > 0:
                cur = self.right_mul_x(cur)
            if not bj.is_zero():
                acc = acc + self.right_mul_ring(cur, bj)
        return acc

    def multiply_out(self, t):
        """Image under the multiplication map: sum_j z_j x^j in A."""
        acc = self.qr.zero()
        for j, z in enumerate(t.parts):
            if not z.is_zero():
                acc = acc + z * self.qr.x_power(j)
        return acc

    # -- the centralizer and its parametrization ------------------------

    def _basis_elements(self):
        zero = self.qr.zero()
        for j in range(self.m):
            for g in self.qr._basis_elements():
                parts = [zero] * self.m
                parts[j] = g
                yield self.element(parts)

    def centralizer(self):
        """Submodule of mu with a mu = mu a for all a in A.

        Commutation with the base scalars and with x suffices since
        those generate A.
        """
        if self._centralizer is not None:
            return self._centralizer
        ring = self.qr.skew.ring
        c = ring.characteristic
        n = self.coordinate_rank
        basis = list(self._basis_elements())
        blocks = []
        x = self.qr.x()
        rows = np.zeros((n, n), dtype=np.int64)
        for idx, mu in enumerate(basis):
            rows[idx] = (self.left_mul(x, mu) - self.right_mul_x(mu)).vec()
        blocks.append(rows)
        for bi in range(ring.rank):
            alpha = ring.basis(bi)
            em = self.qr.embed(alpha)
            rows = np.zeros((n, n), dtype=np.int64)
            for idx, mu in enumerate(basis):
                rows[idx] = (
                    self.left_mul(em, mu) - self.right_mul_ring(mu, alpha)
                ).vec()
            blocks.append(rows)
        self._centralizer = Submodule.from_rows(
            kernel(np.hstack(blocks), c), c, n
        )
        return self._centralizer

    def canonical_element(self, h):
        """sum_j y_j h (x) x^j for h in the twisted centralizer.

        Refuses elements outside the twisted centralizer, reporting the
        base basis element whose commutation fails.
        """
        skew = self.qr.skew
        for bi in range(skew.ring.rank):
            alpha = skew.ring.basis(bi)
            lhs = self.qr.embed(skew.twist_apply(alpha, self.m - 1)) * h
            if lhs != h * self.qr.embed(alpha):
                raise WitnessDomainError(
                    f"element fails twisted commutation at basis index {bi}"
                )
        ys = self.qr.partial_quotients()
        return self.element([y * h for y in ys])

    def verify_parametrization(self):
        """Check the centralizer equals the canonical image of the
        twisted centralizer, as canonical row spans, with matching
        orders (the parametrization is injective: the top component of
        a canonical element recovers h)."""
        cent = self.centralizer()
        twisted = self.qr.twisted_centralizer()
        img_rows = []
        for row in twisted.matrix:
            h = self.qr.from_vec(np.array(row, dtype=np.int64))
            img_rows.append(self.canonical_element(h).vec())
        image = Submodule.from_rows(
            np.array(img_rows) if img_rows else np.zeros((0, self.coordinate_rank)),
            self.qr.skew.ring.characteristic,
            self.coordinate_rank,
        )
        return ParametrizationReport(
            image == cent, cent.order(), twisted.order(), image.order()
        )

    def __eq__(self, other):
        if not isinstance(other, TensorSquare):
            return NotImplemented
        return self.qr == other.qr

    def __hash__(self):
        return hash(("tensor", self.qr))

    def __repr__(self):
        return f"TensorSquare({self.qr!r})"


@dataclass(frozen=True)
class ParametrizationReport:
    ok: bool
    centralizer_order: int
    twisted_order: int
    image_order: int

    def __bool__(self):
        return self.ok


class TensorElement:
    """Normal form sum_j z_j (x) x^j, one quotient element per power."""

    __slots__ = ("ts", "parts")

    def __init__(self, ts, parts):
        self.ts = ts
        self.parts = parts

    def vec(self):
        return np.concatenate([p.vec() for p in self.parts])

    def is_zero(self):
        return all(p.is_zero() for p in self.parts)

    def _coerce(self, other):
        if not isinstance(other, TensorElement):
            raise TypeError(
                f"cannot combine TensorElement with {type(other).__name__}"
            )
        if other.ts != self.ts:
            raise ContextMismatchError("tensor elements from different contexts")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return TensorElement(
            self.ts, tuple(a + b for a, b in zip(self.parts, other.parts))
        )

    def __sub__(self, other):
        other = self._coerce(other)
        return TensorElement(
            self.ts, tuple(a - b for a, b in zip(self.parts, other.parts))
        )

    def __neg__(self):
        return TensorElement(self.ts, tuple(-a for a in self.parts))

    def scale(self, n):
        return TensorElement(self.ts, tuple(p.scale(n) for p in self.parts))

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.ts == other.ts and self.parts == other.parts

    def __hash__(self):
        return hash(tuple(p.__hash__() for p in self.parts))

    def __repr__(self):
        terms = [f"({p!r})(x)x^{j}" for j, p in enumerate(self.parts) if not p.is_zero()]
        return " + ".join(terms) if terms else "0"
