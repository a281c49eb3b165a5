"""The quotient of a skew polynomial ring by a monic invariant polynomial.

For monic invariant f of degree m the residue ring A is a free right
module over the base with basis 1, x, ..., x^(m-1), so elements are
length-m vectors of right coefficients.  Reduction divides on the right
by f; because the ideal is two-sided the reduction is a ring map and
multiplication in A is lift, multiply, reduce.

Two submodules of A drive the separability decisions downstream: the
centralizer of the embedded base (elements commuting with every base
scalar) and its twisted variant, where the base scalar is pushed
through rho^(m-1) on one side.  Both are cut out by linear conditions,
one per base ring basis element.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    ContextMismatchError,
    NotInvariantError,
    PresentationError,
)
from .linalg import Submodule, kernel
from .rings import RingElement
from .skewpoly import SkewPolynomial, is_invariant


class QuotientRing:
    """A = skew polynomials modulo a monic invariant f."""

    __slots__ = ("skew", "modulus", "m", "_v0", "_vtop", "_ys")

    def __init__(self, skew, f, check=True):
        if f.ctx != skew:
            raise ContextMismatchError("modulus belongs to a different context")
        if f.degree < 1 or not f.is_monic():
            raise PresentationError("modulus must be monic of degree >= 1")
        if check:
            rep = is_invariant(f)
            if not rep.invariant:
                raise NotInvariantError(
                    "modulus does not generate a two-sided ideal"
                )
        self.skew = skew
        self.modulus = f
        self.m = f.degree
        self._v0 = None
        self._vtop = None
        self._ys = None

    # -- construction of elements --------------------------------------

    def element(self, coeffs):
        ring = self.skew.ring
        out = []
        for c in coeffs:
            if isinstance(c, RingElement):
                if c.ring != ring:
                    raise ContextMismatchError("coefficient from a different ring")
                out.append(c)
            else:
                out.append(ring.element(c))
        if len(out) != self.m:
            raise PresentationError(f"need exactly {self.m} coefficients")
        return QuotientElement(self, tuple(out))

    def zero(self):
        return self.element([self.skew.ring.zero()] * self.m)

    def one(self):
        ring = self.skew.ring
        return self.element([ring.identity()] + [ring.zero()] * (self.m - 1))

    def embed(self, b):
        """The base ring inside A as constants."""
        ring = self.skew.ring
        if isinstance(b, RingElement):
            if b.ring != ring:
                raise ContextMismatchError("element from a different ring")
        else:
            b = ring.element(b)
        return self.element([b] + [ring.zero()] * (self.m - 1))

    def x(self):
        return self.x_power(1)

    def x_power(self, j):
        return self.reduce(self.skew.x_power(j))

    def from_vec(self, v):
        ring = self.skew.ring
        k = ring.rank
        return self.element(
            [ring.element(v[i * k : (i + 1) * k]) for i in range(self.m)]
        )

    # -- reduction ------------------------------------------------------

    def reduce(self, p):
        """Residue of a polynomial: right division by the monic modulus."""
        if p.ctx != self.skew:
            raise ContextMismatchError("polynomial from a different context")
        ring = self.skew.ring
        coeffs = [p.coefficient(i) for i in range(max(len(p.coeffs), self.m))]
        fc = [self.modulus.coefficient(i) for i in range(self.m + 1)]
        for d in range(len(coeffs) - 1, self.m - 1, -1):
            b = coeffs[d]
            if b.is_zero():
                continue
            # subtract (X^(d-m) f) b, whose top term is X^d b
            for i in range(self.m + 1):
                coeffs[d - self.m + i] = coeffs[d - self.m + i] - fc[i] * b
        return QuotientElement(self, tuple(coeffs[: self.m]))

    def lift(self, u):
        return self.skew.poly(list(u.coeffs))

    # -- distinguished elements -----------------------------------------

    def partial_quotients(self):
        """Elements y_j with coefficients read off the tail of f.

        y_j collects the coefficients above slot j of the modulus:
        y_j = x^(m-j-1) + x^(m-j-2) a_{m-1} + ... + a_{j+1}, with
        y_{m-1} = 1.  They satisfy x y_j = y_{j-1} - a_j and
        x y_0 = -a_0, which is what makes them the natural dual family
        for the separability pairing.
        """
        if self._ys is None:
            ring = self.skew.ring
            a = [self.modulus.coefficient(i) for i in range(self.m + 1)]
            ys = []
            for j in range(self.m):
                coeffs = [ring.zero()] * self.m
                for s in range(self.m - j):
                    coeffs[s] = a[s + j + 1]
                ys.append(QuotientElement(self, tuple(coeffs)))
            self._ys = ys
        return list(self._ys)

    # -- centralizers ---------------------------------------------------

    @property
    def coordinate_rank(self):
        return self.skew.ring.rank * self.m

    def _basis_elements(self):
        ring = self.skew.ring
        for i in range(self.m):
            for b in range(ring.rank):
                coeffs = [ring.zero()] * self.m
                coeffs[i] = ring.basis(b)
                yield QuotientElement(self, tuple(coeffs))

    def _commutation_kernel(self, left_of):
        """Kernel of g -> (left_of(alpha) g - g alpha, alpha over basis)."""
        ring = self.skew.ring
        c = ring.characteristic
        n = self.coordinate_rank
        blocks = []
        for bi in range(ring.rank):
            alpha = ring.basis(bi)
            em_r = self.embed(alpha)
            em_l = self.embed(left_of(alpha))
            rows = np.zeros((n, n), dtype=np.int64)
            for idx, g in enumerate(self._basis_elements()):
                rows[idx] = (em_l * g - g * em_r).vec()
            blocks.append(rows)
        return Submodule.from_rows(kernel(np.hstack(blocks), c), c, n)

    def base_centralizer(self):
        """V_0: elements of A commuting with every base scalar."""
        if self._v0 is None:
            self._v0 = self._commutation_kernel(lambda a: a)
        return self._v0

    def twisted_centralizer(self):
        """Solutions of rho^(m-1)(alpha) h = h alpha for all base alpha.

        Coincides with the base centralizer when rho is trivial or when
        m = 1.
        """
        if self._vtop is None:
            if self.m == 1:
                self._vtop = self.base_centralizer()
            else:
                self._vtop = self._commutation_kernel(
                    lambda a: self.skew.twist_apply(a, self.m - 1)
                )
        return self._vtop

    def submodule_elements(self, sub, cap=None):
        """Members of a coordinate submodule as quotient elements."""
        kwargs = {} if cap is None else {"cap": cap}
        for v in sub.elements(**kwargs):
            yield self.from_vec(v)

    # -- assumption flags ----------------------------------------------

    @property
    def coefficients_fixed(self):
        rho = self.skew.rho
        return all(rho(c) == c for c in self.modulus.coeffs)

    @property
    def supports_tensor_normal_form(self):
        """True when the twists commute and the modulus coefficients are
        rho-fixed; the tensor square layer requires both."""
        return self.skew.commuting and self.coefficients_fixed

    def __eq__(self, other):
        if not isinstance(other, QuotientRing):
            return NotImplemented
        return self.skew == other.skew and self.modulus == other.modulus

    def __hash__(self):
        return hash((self.skew, self.modulus))

    def __repr__(self):
        return f"QuotientRing(m={self.m}, {self.skew!r})"


class QuotientElement:
    """Residue class, stored as m right coefficients over the base."""

    __slots__ = ("qr", "coeffs")

    def __init__(self, qr, coeffs):
        self.qr = qr
        self.coeffs = coeffs

    def vec(self):
        return np.concatenate([c.vec() for c in self.coeffs])

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def _coerce(self, other):
        if not isinstance(other, QuotientElement):
            raise TypeError(
                f"cannot combine QuotientElement with {type(other).__name__}"
            )
        if other.qr != self.qr:
            raise ContextMismatchError("elements from different quotient rings")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return QuotientElement(
            self.qr, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        other = self._coerce(other)
        return QuotientElement(
            self.qr, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        return QuotientElement(self.qr, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        return self.qr.reduce(self.qr.lift(self) * self.qr.lift(other))

    def right_scalar(self, b):
        """u * (embedded b): right coefficients multiply slotwise."""
        return QuotientElement(self.qr, tuple(c * b for c in self.coeffs))

    def scale(self, n):
        return QuotientElement(self.qr, tuple(c.scale(n) for c in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, QuotientElement):
            return NotImplemented
        return self.qr == other.qr and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(c.coords for c in self.coeffs))

    def __repr__(self):
        terms = []
        for i in range(self.qr.m - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            head = "x" if i == 1 else f"x^{i}" if i else ""
            body = "" if (i and c == self.qr.skew.ring.identity()) else f"({c!r})"
            terms.append(head + ("*" if head and body else "") + body)
        return " + ".join(terms) if terms else "0"
