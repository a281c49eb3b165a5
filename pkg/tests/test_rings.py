"""Presented base rings, their validators, and the map toolkit."""

import numpy as np
import pytest

from skewsep import (
    AdditiveMap,
    ContextMismatchError,
    FiniteRing,
    PresentationError,
    Submodule,
    center_of,
    direct_product,
    fixed_submodule,
    first_irreducible,
    formal_derivative_map,
    frobenius_map,
    galois_field,
    inner_derivation,
    maps_commute,
    map_from_config,
    matrix_ring,
    ring_from_config,
    ring_to_config,
    truncated_poly_ring,
    validate_automorphism,
    validate_derivation,
    validate_ring,
    zmod_ring,
)

from corpus import gf4, gf9, trunc


def test_validate_ring_accepts_the_stock_constructions():
    for ring in (zmod_ring(6), gf4(), gf9(), trunc(), matrix_ring(zmod_ring(2), 2)):
        rep = validate_ring(ring)
        assert rep.ok and rep.describe() == "ok"


def test_validate_ring_flags_broken_identity():
    # e1*e0 = 0 breaks the two-sided identity while leaving e0*e1 = e1
    table = np.zeros((2, 2, 2), dtype=np.int64)
    table[0][0][0] = 1
    table[0][1][1] = 1
    table[1][1][1] = 1
    ring = FiniteRing(2, table, [1, 0])
    rep = validate_ring(ring)
    assert not rep.ok
    assert "identity" in {i.rule for i in rep.issues}


def test_validate_ring_flags_non_associativity():
    # e1e1 = e2, e1e2 = e0, e2e1 = 0: then (e1e1)e1 = 0 but e1(e1e1) = e0
    table = np.zeros((3, 3, 3), dtype=np.int64)
    for i in range(3):
        table[0][i][i] = 1
        table[i][0][i] = 1
    table[1][1][2] = 1
    table[1][2][0] = 1
    ring = FiniteRing(2, table, [1, 0, 0])
    rep = validate_ring(ring)
    assert not rep.ok
    assert "associativity" in {i.rule for i in rep.issues}


def test_gf4_arithmetic():
    ring = gf4()
    w = ring.basis(1)
    assert w * w == ring.element([1, 1])  # w^2 = 1 + w
    assert w * w * w == ring.identity()
    assert ring.size() == 4
    assert len(list(ring.elements())) == 4


def test_frobenius_is_squaring_on_gf4():
    ring = gf4()
    frob = frobenius_map(ring)
    assert validate_automorphism(ring, frob).ok
    for a in ring.elements():
        assert frob(a) == a * a
    # and it has order 2
    assert frob.compose(frob).is_identity()


def test_frobenius_fixed_points_on_gf4_are_the_prime_field():
    sub = fixed_submodule(frobenius_map(gf4()))
    assert sub.order() == 2
    assert np.array_equal(sub.matrix, np.array([[1, 0]], dtype=np.int64))


def test_non_bijective_map_rejected_as_automorphism():
    ring = gf4()
    squash = AdditiveMap(ring, [[1, 0], [0, 0]], "automorphism")
    rep = validate_automorphism(ring, squash)
    assert not rep.ok
    assert "bijective" in {i.rule for i in rep.issues}


def test_formal_derivative_is_a_derivation():
    ring = trunc()
    d = formal_derivative_map(ring)
    rho = AdditiveMap.identity(ring)
    assert validate_derivation(ring, rho, d).ok
    t = ring.basis(1)
    assert d(t) == ring.identity()
    assert d(ring.identity()).is_zero()


def test_map_sending_one_to_one_is_not_a_derivation():
    # d(1) = d(1*1) = 2 d(1) forces d(1) = 0, so 1 -> 1, t -> t must fail
    ring = trunc()
    bad = AdditiveMap(ring, [[1, 0], [0, 1]], "derivation")
    rep = validate_derivation(ring, AdditiveMap.identity(ring), bad)
    assert not rep.ok
    assert "derivation_at_one" in {i.rule for i in rep.issues}


def test_inner_derivation_satisfies_twisted_leibniz():
    ring = gf4()
    rho = frobenius_map(ring)
    d = inner_derivation(ring, rho, ring.basis(1))
    assert validate_derivation(ring, rho, d).ok
    assert not d.is_zero()
    assert not maps_commute(rho, d)


def test_maps_commute_examples():
    ring = gf9()
    rho = frobenius_map(ring)
    d = inner_derivation(ring, rho, ring.identity())
    assert maps_commute(rho, d)
    assert not d.is_zero()


def test_center_of_two_by_two_matrices():
    ring = matrix_ring(zmod_ring(2), 2)
    centre = center_of(ring, Submodule.full(2, ring.rank))
    assert centre.order() == 2
    assert centre.contains(ring.identity().vec())


def test_direct_product_componentwise():
    ring = direct_product(zmod_ring(2), gf4())
    assert validate_ring(ring).ok
    assert ring.size() == 8
    a = ring.element([1, 0, 1])
    b = ring.element([1, 1, 1])
    assert (a * b).coords == (1, 1, 0)  # (1, w) * (1, 1+w) = (1, 1)


def test_direct_product_rejects_mixed_characteristic():
    with pytest.raises(PresentationError):
        direct_product(zmod_ring(2), zmod_ring(3))


def test_first_irreducible_degree_two():
    assert first_irreducible(2, 2) == [1, 1, 1]
    assert first_irreducible(3, 2) == [1, 0, 1]


def test_galois_field_rejects_reducible_modulus():
    with pytest.raises(PresentationError):
        galois_field(2, 2, [1, 0, 1])  # w^2 + 1 = (w+1)^2


def test_ring_config_round_trip():
    for ring in (zmod_ring(4), gf4(), trunc()):
        again = ring_from_config(ring_to_config(ring))
        assert again == ring
        assert again.digest() == ring.digest()


def test_ring_from_config_shorthands():
    assert ring_from_config({"ring": "Zmod", "n": 5}) == zmod_ring(5)
    assert ring_from_config({"ring": "GF", "p": 2, "r": 2}) == gf4()
    assert ring_from_config({"ring": "TruncatedPoly", "p": 2, "e": 2}) == trunc()
    with pytest.raises(PresentationError):
        ring_from_config({"ring": "Wat"})
    with pytest.raises(PresentationError):
        ring_from_config({"characteristic": 2})


def test_map_from_config_variants():
    ring = gf4()
    assert map_from_config(ring, None, "automorphism").is_identity()
    assert map_from_config(ring, None, "derivation").is_zero()
    assert map_from_config(ring, "identity", "automorphism").is_identity()
    assert map_from_config(ring, "zero", "derivation").is_zero()
    assert map_from_config(ring, "frobenius", "automorphism") == frobenius_map(ring)
    explicit = map_from_config(ring, [[1, 0], [1, 1]], "automorphism")
    assert explicit(ring.basis(1)) == ring.element([1, 1])


def test_digest_depends_on_structure():
    assert zmod_ring(2).digest() != zmod_ring(4).digest()
    assert gf4().digest() != trunc().digest()
    assert gf4().digest() == galois_field(2, 2, [1, 1, 1]).digest()


def test_cross_ring_arithmetic_is_refused():
    a = zmod_ring(4).element([1])
    b = zmod_ring(2).element([1])
    with pytest.raises(ContextMismatchError):
        _ = a * b


def test_element_coord_validation():
    ring = gf4()
    with pytest.raises(PresentationError):
        ring.element([1, 0, 0])
    assert ring.element([5, -1]) == ring.element([1, 1])


def test_inverse_of_identity_and_frobenius():
    ring = gf9()
    frob = frobenius_map(ring)
    inv = frob.inverse()
    assert inv is not None
    assert inv.compose(frob).is_identity()
    assert frob.compose(inv).is_identity()
