"""The quotient A = B[X; rho, d] / (f) as a free right B-module."""

import itertools

import pytest

from skewsep import (
    ContextMismatchError,
    NotInvariantError,
    PresentationError,
    QuotientRing,
    binom_mod,
)

from corpus import CORPUS, context, elem, invariant_monics, poly_of


def _qr(name, *ints):
    sk = context(name)
    return QuotientRing(sk, poly_of(sk, *ints))


def test_reduction_examples():
    qr = _qr("z2", 1, 1, 1)  # X^2 + X + 1
    assert qr.x_power(2) == qr.element([[1], [1]])  # x^2 = 1 + x
    assert qr.x_power(3) == qr.one()  # x has order 3

    sk = context("f4_frob")
    f = sk.monic([sk.ring.identity(), sk.ring.zero()])  # X^2 + 1
    qr4 = QuotientRing(sk, f)
    assert qr4.x_power(2) == qr4.one()


def test_reduce_agrees_with_polynomial_arithmetic():
    qr = _qr("z2", 1, 1, 1)
    sk = qr.skew
    for p_bits in itertools.product(range(2), repeat=5):
        p = sk.poly([sk.ring.element([b]) for b in p_bits])
        u = qr.reduce(p)
        # the lift differs from p by a left multiple of f
        assert qr.reduce(qr.lift(u)) == u
        diff = p - qr.lift(u)
        # check divisibility: reducing the difference gives zero
        assert qr.reduce(diff).is_zero()


def test_embed_is_a_ring_map():
    for name in ("z4", "f4_frob", "trunc_ddt"):
        sk = context(name)
        for f in invariant_monics(sk, 2):
            qr = QuotientRing(sk, f)
            for a in sk.ring.elements():
                for b in sk.ring.elements():
                    assert qr.embed(a) * qr.embed(b) == qr.embed(a * b)
            assert qr.embed(sk.ring.identity()) == qr.one()
            break  # one modulus per context keeps this quick


def test_multiplication_matches_lifted_product():
    qr = _qr("z4", 2, 3, 1)
    for u_ints in itertools.product(range(4), repeat=2):
        u = qr.element([[v] for v in u_ints])
        for v_ints in ((1, 2), (3, 1), (0, 3)):
            v = qr.element([[s] for s in v_ints])
            assert u * v == qr.reduce(qr.lift(u) * qr.lift(v))


def test_partial_quotient_values():
    qr = _qr("z2", 1, 1, 1)  # X^2 + X + 1
    y0, y1 = qr.partial_quotients()
    assert y0 == qr.element([[1], [1]])  # 1 + x
    assert y1 == qr.one()

    sk = context("f4_frob")
    qr4 = QuotientRing(sk, sk.monic([sk.ring.identity(), sk.ring.zero()]))
    y0, y1 = qr4.partial_quotients()
    assert y0 == qr4.x()
    assert y1 == qr4.one()


def test_partial_quotient_recurrences_everywhere():
    for name in CORPUS:
        sk = context(name)
        for degree in (1, 2, 3):
            for f in invariant_monics(sk, degree):
                qr = QuotientRing(sk, f)
                ys = qr.partial_quotients()
                x = qr.x()
                a = [f.coefficient(i) for i in range(qr.m)]
                assert x * ys[0] == -qr.embed(a[0])
                for j in range(1, qr.m):
                    assert x * ys[j] == ys[j - 1] - qr.embed(a[j])
                assert ys[-1] == qr.one()


def test_scalars_pass_partial_quotients_by_the_alternating_rule():
    for name in CORPUS:
        sk = context(name)
        ring = sk.ring
        c = ring.characteristic
        for degree in (1, 2, 3):
            for f in invariant_monics(sk, degree):
                qr = QuotientRing(sk, f)
                if not qr.supports_tensor_normal_form:
                    continue
                ys = qr.partial_quotients()
                m = qr.m
                for bi in range(ring.rank):
                    alpha = ring.basis(bi)
                    for j in range(m):
                        lhs = qr.embed(alpha) * ys[j]
                        rhs = qr.zero()
                        for i in range(j, m):
                            w = binom_mod(i, j, c)
                            if not w:
                                continue
                            sign = 1 if (i - j) % 2 == 0 else -1
                            tw = sk.twist_apply(alpha, m - i - 1, i - j)
                            rhs = rhs + (ys[i] * qr.embed(tw)).scale(sign * w % c)
                        assert lhs == rhs, (name, f, j, bi)


def test_centralizer_golden_values():
    sk = context("f4_frob")
    qr = QuotientRing(sk, sk.monic([sk.ring.identity(), sk.ring.zero()]))
    v0 = qr.base_centralizer()
    v1 = qr.twisted_centralizer()
    assert v0.matrix.tolist() == [[1, 0, 0, 0], [0, 1, 0, 0]]  # the embedded field
    assert v1.matrix.tolist() == [[0, 0, 1, 0], [0, 0, 0, 1]]  # x times the field
    assert v0.order() == 4 and v1.order() == 4

    qrt = _qr("trunc_ddt", 0, 0, 1)  # X^2
    assert qrt.base_centralizer().matrix.tolist() == [[1, 0, 0, 0], [0, 1, 0, 0]]
    assert qrt.twisted_centralizer() == qrt.base_centralizer()

    qr2 = _qr("z2", 1, 1, 1)
    assert qr2.base_centralizer().order() == 4  # commutative: everything


def test_centralizers_match_brute_enumeration():
    for name in CORPUS:
        sk = context(name)
        ring = sk.ring
        for f in invariant_monics(sk, 2):
            qr = QuotientRing(sk, f)
            scalars = list(ring.elements())

            def commutes(g, twist):
                return all(
                    qr.embed(sk.twist_apply(a, twist)) * g == g * qr.embed(a)
                    for a in scalars
                )

            all_vecs = list(
                itertools.product(range(ring.characteristic), repeat=qr.coordinate_rank)
            )
            brute0 = {v for v in all_vecs if commutes(qr.from_vec(list(v)), 0)}
            brute1 = {v for v in all_vecs if commutes(qr.from_vec(list(v)), qr.m - 1)}
            got0 = {tuple(int(x) for x in v) for v in qr.base_centralizer().elements()}
            got1 = {
                tuple(int(x) for x in v) for v in qr.twisted_centralizer().elements()
            }
            assert got0 == brute0, (name, f)
            assert got1 == brute1, (name, f)


def test_twisted_centralizer_at_degree_one_is_base():
    for name in CORPUS:
        sk = context(name)
        for f in invariant_monics(sk, 1):
            qr = QuotientRing(sk, f)
            assert qr.twisted_centralizer() == qr.base_centralizer()


def test_fixed_coefficients_commute_with_x():
    for name in CORPUS:
        sk = context(name)
        for f in invariant_monics(sk, 2):
            qr = QuotientRing(sk, f)
            if not qr.supports_tensor_normal_form:
                continue
            for i in range(qr.m + 1):
                a = qr.embed(f.coefficient(i))
                assert a * qr.x() == qr.x() * a, (name, f, i)


def test_non_invariant_modulus_is_rejected():
    sk = context("trunc_ddt")
    t = elem(sk.ring, 0, 1)
    bad = sk.monic([sk.ring.zero(), t])  # X^2 + X t
    with pytest.raises(NotInvariantError):
        QuotientRing(sk, bad)
    qr = QuotientRing(sk, bad, check=False)  # flags still work unchecked
    assert qr.m == 2


def test_modulus_shape_validation():
    sk = context("z2")
    with pytest.raises(PresentationError):
        QuotientRing(sk, sk.one())
    other = context("z4")
    with pytest.raises(ContextMismatchError):
        QuotientRing(sk, poly_of(other, 1, 1))


def test_vec_round_trip_and_validation():
    qr = _qr("z2", 1, 1, 1)
    for ints in itertools.product(range(2), repeat=2):
        u = qr.element([[v] for v in ints])
        assert qr.from_vec(u.vec()) == u
    with pytest.raises(PresentationError):
        qr.element([[1]])
    with pytest.raises(ContextMismatchError):
        qr.element([elem(context("z4").ring, 1), elem(context("z4").ring, 0)])


def test_cross_quotient_arithmetic_is_refused():
    a = _qr("z2", 1, 1, 1).one()
    b = _qr("z2", 1, 0, 1).one()
    with pytest.raises(ContextMismatchError):
        _ = a + b


def test_element_algebra():
    qr = _qr("z4", 2, 3, 1)
    u = qr.element([[1], [2]])
    v = qr.element([[3], [1]])
    assert u + v == qr.element([[0], [3]])
    assert u - u == qr.zero()
    assert -u == qr.element([[3], [2]])
    assert u.scale(2) == qr.element([[2], [0]])
    assert u.right_scalar(elem(qr.skew.ring, 2)) == qr.element([[2], [0]])
