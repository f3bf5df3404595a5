import pytest
from hypothesis import given, settings, strategies as st

from exodromy.fincat import CapExceeded
from exodromy.finring import (
    RingError, build_ring, canonical_hom, compose_homs, cusp_clause, field_coordinates, find_homs,
    frobenius, hom_from_json, hom_to_json, identity_hom, is_bijective, is_closed_immersion, is_etale,
    is_local, is_monomorphism, is_open_immersion, is_perfectly_reduced, is_radicial, is_reduced,
    is_spec_surjective, is_universal_homeomorphism, local_decomposition, nilradical, perfection,
    poly_quotient, prime_clause, product_ring, ring_from_json, ring_to_json, spec_map,
    validate_hom, validate_ring, zmod, RingHom,
)

F4 = {"kind": "gf", "p": 2, "modulus": [1, 1, 1]}
GR42 = {"kind": "poly", "n": 4, "moduli": [[-1, -1, 1]]}
DUAL2 = {"kind": "poly", "n": 2, "moduli": [[0, 0, 1]]}


def ring(pres):
    return build_ring(pres)


def test_zmod_tables():
    A = zmod(6)
    assert A.size == 6 and A.characteristic == 6
    assert not validate_ring(A)


def test_f4_from_irreducible():
    A = ring(F4)
    assert A.size == 4
    assert len(A.units) == 3


def test_reducible_modulus_rejected():
    with pytest.raises(RingError):
        build_ring({"kind": "gf", "p": 2, "modulus": [1, 0, 1]})


def test_non_monic_rejected():
    with pytest.raises(RingError, match="not be finite"):
        build_ring({"kind": "poly", "n": 2, "moduli": [[0, 0, 2]]})


def test_size_cap():
    with pytest.raises(CapExceeded):
        build_ring({"kind": "poly", "n": 2, "moduli": [[0] * 13 + [1]]})


def test_galois_ring_is_local():
    A = ring(GR42)
    assert A.size == 16
    assert is_local(A)
    f = A.decomposition.factors[0]
    assert f.residue.size == 4 and f.degree == 2
    assert len(f.maximal_ideal) == 4


def test_decompositions():
    dec = local_decomposition(zmod(6))
    assert sorted(f.residue.size for f in dec.factors) == [2, 3]
    assert len(local_decomposition(zmod(4)).factors) == 1
    P = product_ring([ring(DUAL2), ring(F4)])
    assert sorted(f.residue.size for f in P.decomposition.factors) == [2, 4]


def test_idempotents_orthogonal_and_complete():
    A = zmod(30)
    es = A.decomposition.idempotents
    total = 0
    for i, a in enumerate(es):
        for b in es[i + 1:]:
            assert A.mul[a, b] == 0
        total = int(A.add[total, a])
    assert total == A.one


def test_reduced():
    assert is_reduced(zmod(6))
    assert not is_reduced(zmod(4))
    assert is_reduced(ring(F4))
    assert nilradical(zmod(4)) == frozenset({0, 2})


def test_frobenius():
    assert is_bijective(frobenius(ring(F4)))
    assert not is_bijective(frobenius(ring(DUAL2)))
    with pytest.raises(RingError):
        frobenius(zmod(4))


def test_perfectly_reduced_examples():
    assert is_perfectly_reduced(zmod(6)).ok
    rep = is_perfectly_reduced(ring(DUAL2))
    assert not rep.ok and rep.certificate["clause"] == "f^2=g^3"
    rep = is_perfectly_reduced(zmod(4))
    assert not rep.ok
    assert "f^p=p^p*g (p=2)" in rep.certificate["failing_clauses"]


def test_perfection_examples():
    assert perfection(zmod(4)).target.size == 2
    assert perfection(ring(DUAL2)).target.size == 2
    f = perfection(ring(F4))
    assert f.target.size == 4 and is_bijective(f)


def test_perfection_idempotent():
    red = perfection(zmod(12)).target
    again = perfection(red)
    assert is_bijective(again)


def test_radicial_examples():
    assert is_radicial(canonical_hom(zmod(4), zmod(2)))
    assert not is_radicial(canonical_hom(zmod(2), ring(F4)))
    assert is_radicial(identity_hom(zmod(6)))


def test_spec_surjective_examples():
    F2 = zmod(2)
    diag = canonical_hom(F2, product_ring([F2, zmod(2)]))
    assert is_spec_surjective(diag)
    to_f2 = canonical_hom(zmod(6), F2)
    assert not is_spec_surjective(to_f2)
    assert is_spec_surjective(identity_hom(zmod(6)))


def test_universal_homeomorphism_examples():
    assert is_universal_homeomorphism(perfection(ring(DUAL2)))
    assert not is_universal_homeomorphism(canonical_hom(zmod(2), ring(F4)))


def test_etale_examples():
    assert is_etale(canonical_hom(zmod(4), ring(GR42)))
    assert not is_etale(canonical_hom(zmod(2), ring(DUAL2)))
    A = zmod(3)
    assert is_etale(canonical_hom(A, product_ring([A, zmod(3)])))


def test_immersions():
    P = product_ring([zmod(2), zmod(3)])
    to2 = canonical_hom(P, zmod(2)) if len(find_homs(P, zmod(2))) == 1 else None
    assert to2 is not None
    assert is_open_immersion(to2) and is_closed_immersion(to2) and is_monomorphism(to2)
    red = perfection(ring(DUAL2))
    assert is_closed_immersion(red) and not is_open_immersion(red)
    assert not is_monomorphism(canonical_hom(zmod(2), ring(F4)))


def test_spec_map_contracts_primes():
    P = product_ring([zmod(2), zmod(3)])
    f = canonical_hom(zmod(6), P)
    assert sorted(spec_map(f)) == [0, 1]


def test_hom_validation():
    A, B = zmod(4), zmod(2)
    bad = RingHom(A, B, (0, 1, 1, 0))
    assert validate_hom(bad)


def test_find_homs_counts():
    assert len(find_homs(ring(F4), ring(F4))) == 2
    assert len(find_homs(zmod(3), zmod(2))) == 0
    with pytest.raises(RingError):
        canonical_hom(ring(F4), ring(F4))


def test_field_coordinates():
    k = build_ring({"kind": "gf", "p": 2, "modulus": [1, 1, 0, 1]})
    fc = field_coordinates(k)
    assert len(fc.minpoly) == 4 and fc.minpoly[-1] == 1
    assert len(fc.coords) == 8


def test_json_round_trip():
    A = product_ring([zmod(2), ring(F4)])
    B = ring_from_json(ring_to_json(A))
    assert (B.add == A.add).all() and (B.mul == A.mul).all()
    f = canonical_hom(zmod(2), A)
    g = hom_from_json(hom_to_json(f))
    assert g.images == f.images
    assert ring_from_json({"presentation": {"kind": "zmod", "n": 5}}).size == 5
    with pytest.raises(RingError):
        ring_from_json({"nothing": 1})


@st.composite
def small_rings(draw):
    kinds = st.sampled_from(["zmod", "trunc", "gf", "prod"])
    k = draw(kinds)
    if k == "zmod":
        return zmod(draw(st.integers(2, 40)))
    if k == "trunc":
        p = draw(st.sampled_from([2, 3, 5]))
        e = draw(st.integers(1, 3))
        return poly_quotient(p, [[0] * e + [1]])
    if k == "gf":
        return build_ring(draw(st.sampled_from([F4, {"kind": "gf", "p": 3, "modulus": [1, 0, 1]}])))
    return product_ring([zmod(draw(st.integers(2, 6))), zmod(draw(st.integers(2, 6)))])


@settings(max_examples=60, deadline=None)
@given(small_rings())
def test_ring_axioms_and_decomposition(A):
    assert not validate_ring(A)
    dec = A.decomposition
    assert sum(f.ring.size for f in dec.factors) >= len(dec.factors)
    size = 1
    for f in dec.factors:
        size *= f.ring.size
        assert f.residue.size == f.char ** f.degree
    assert size == A.size


@settings(max_examples=60, deadline=None)
@given(small_rings(), st.sampled_from([2, 3, 5, 7, 11]))
def test_prime_clause_trivial_for_unit_primes(A, p):
    # a prime not dividing the characteristic is a unit, so the clause always holds
    if A.characteristic % p:
        assert prime_clause(A, p) is None


@settings(max_examples=60, deadline=None)
@given(small_rings())
def test_perfection_counit_is_universal_homeomorphism(A):
    f = perfection(A)
    assert is_universal_homeomorphism(f)
    assert is_reduced(f.target)
    assert is_perfectly_reduced(f.target).ok
    assert is_perfectly_reduced(A).ok == is_reduced(A)


@settings(max_examples=40, deadline=None)
@given(small_rings())
def test_etale_radicial_surjective_is_iso(A):
    for B in (perfection(A).target, A):
        for f in find_homs(A, B)[:4]:
            if is_etale(f) and is_radicial(f) and is_spec_surjective(f):
                assert is_bijective(f)
            if is_etale(f) and is_reduced(A):
                assert is_reduced(B)


def test_compose_homs():
    f = canonical_hom(zmod(4), zmod(2))
    g = identity_hom(zmod(2))
    assert compose_homs(g, f).images == f.images
    assert cusp_clause(zmod(2)) is None
