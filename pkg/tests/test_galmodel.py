import pytest
from hypothesis import given, settings, strategies as st

from exodromy.fibrations import (
    FullSubcategory, comma_fiber, is_cosieve, is_sieve, point_fibers,
)
from exodromy.fincat import (
    chain_poset, compose_functors, equivalence_certificate, has_finite_nonempty_joins,
    has_weakly_initial, has_weakly_terminal, identity_functor, iso_class_poset, slice_category,
    validate_functor,
)
from exodromy.finring import build_ring, canonical_hom, compose_homs, find_homs, identity_hom, product_ring, zmod
from exodromy.galmodel import (
    LevelError, PrimeData, SplittingDatum, SplittingError, axiom_battery, check_splitting,
    cyclotomic_splitting, cyclotomic_subgroups, gal_finite_ring, gal_functor, gal_number_ring,
    gal_poset_model, gal_relative_functor, gal_relative_model, level_projection, restrict,
    satisfies_axioms,
)

F4 = {"kind": "gf", "p": 2, "modulus": [1, 1, 1]}


def _hom_sizes(G, label):
    C = G.category
    x, eta = G.object_named(label), G.object_named("eta")
    return len(C.hom(x, x)), len(C.hom(x, eta))


def test_f2_level_four_is_bz4():
    G = gal_finite_ring(zmod(2), 4)
    assert G.category.n_objects == 1
    assert len(G.category.hom(0, 0)) == 4


def test_f4_level_four():
    G = gal_finite_ring(build_ring(F4), 4)
    C = G.category
    assert C.n_objects == 2
    assert all(len(C.hom(x, x)) == 2 for x in C.objects)
    assert len(C.hom(0, 1)) == 2


def test_level_must_be_divisible():
    with pytest.raises(LevelError, match="2"):
        gal_finite_ring(build_ring(F4), 3)


def test_reduction_is_equivalence():
    f = canonical_hom(zmod(4), zmod(2))
    assert equivalence_certificate(gal_functor(f, 4)).ok


def test_identity_gives_identity_functor():
    A = product_ring([zmod(2), build_ring(F4)])
    F = gal_functor(identity_hom(A), 4)
    I = identity_functor(F.source)
    assert F.on_objects == I.on_objects and F.on_morphisms == I.on_morphisms


def test_field_extension_comma_fibre():
    F = gal_functor(canonical_hom(zmod(2), build_ring(F4)), 4)
    assert comma_fiber(F, 0, "left").size() == 2
    assert comma_fiber(F, 0, "right").size() == 2


def test_components_and_automorphisms():
    A = product_ring([zmod(3), build_ring({"kind": "gf", "p": 3, "modulus": [1, 0, 1]})])
    G = gal_finite_ring(A, 6)
    cls = iso_class_poset(G.category)
    assert len(cls.elements) == len(A.decomposition.factors) == 2
    orders = sorted(len(G.category.hom(x, x)) for x in G.category.objects)
    assert set(orders) == {6, 3}
    assert not has_weakly_initial(G.category) and not has_weakly_terminal(G.category)


def test_local_ring_has_weakly_initial():
    assert has_weakly_initial(gal_finite_ring(zmod(8), 12).category)


def test_functoriality():
    B = build_ring(F4)
    f = canonical_hom(zmod(2), B)
    g = find_homs(B, B)[1]
    lhs = gal_functor(compose_homs(g, f), 4)
    rhs = compose_functors(gal_functor(f, 4), gal_functor(g, 4))
    assert lhs.on_objects == rhs.on_objects and lhs.on_morphisms == rhs.on_morphisms


def test_level_projection_full_and_essentially_surjective():
    for A in (zmod(2), build_ring(F4), zmod(6)):
        P = level_projection(A, 12, 4)
        assert not validate_functor(P)
        cert = equivalence_certificate(P)
        # faithfulness fails (Z/12 -> Z/4), fullness and essential surjectivity hold
        assert cert.ok or "not_faithful" in cert.witness
        C, D = P.source, P.target
        for x in C.objects:
            for y in C.objects:
                assert {P(f) for f in C.hom(x, y)} == set(D.hom(P.obj(x), P.obj(y)))
        assert {P.obj(x) for x in C.objects} == set(D.objects)


def test_cyclotomic_splitting_m4():
    S = cyclotomic_splitting(4, [2, 5])
    two, five = S.primes
    assert five.inertia == frozenset({S.elements.index("1")})
    assert five.decomposition == five.inertia
    assert two.inertia == two.decomposition == frozenset(range(len(S.elements)))


def test_trivial_splitting():
    S = cyclotomic_splitting(1, [2, 3])
    assert S.elements == ("1",)
    G = gal_number_ring(S)
    assert G.category.n_objects == 3
    assert all(len(G.category.hom(x, y)) <= 1 for x in G.category.objects for y in G.category.objects)


def test_number_ring_homs_m4():
    G = gal_number_ring(cyclotomic_splitting(4, [2, 3, 5]))
    assert _hom_sizes(G, "x_2") == (1, 1)
    assert _hom_sizes(G, "x_3") == (2, 2)
    assert _hom_sizes(G, "x_5") == (1, 2)
    eta = G.object_named("eta")
    assert len(G.category.hom(eta, eta)) == 2
    assert not G.category.hom(eta, G.object_named("x_3"))


def test_number_ring_sieves_and_slices():
    G = gal_number_ring(cyclotomic_splitting(8, [2, 3, 5, 7]))
    C = G.category
    for p in ("x_2", "x_3", "x_5", "x_7"):
        assert is_sieve(FullSubcategory(C, frozenset({G.object_named(p)}))).ok
    eta = G.object_named("eta")
    assert is_cosieve(FullSubcategory(C, frozenset({eta}))).ok
    assert has_finite_nonempty_joins(iso_class_poset(slice_category(C, eta)))
    assert has_weakly_terminal(C)


def test_bad_splitting_rejected():
    S = cyclotomic_splitting(4, [3])
    bad = SplittingDatum(S.table, S.elements, (PrimeData("3", frozenset({1}), frozenset({0}), 1),), "bad")
    with pytest.raises(SplittingError):
        check_splitting(bad)


def test_relative_model_subgroup_checked():
    with pytest.raises(SplittingError):
        gal_relative_model(8, [1, 3, 5], [3])


def test_relative_whole_group_is_equivalence():
    F = gal_relative_functor(8, [1, 3, 5, 7], [2, 3, 5, 7])
    assert equivalence_certificate(F).ok


def test_relative_trivial_subgroup_m4():
    F = gal_relative_functor(4, [1], [2, 3, 5])
    labels = [F.target.obj_label(d) for d in F.target.objects]
    sizes = {labels[d]: n for d, n in point_fibers(F).items()}
    assert sizes == {"x_2": 1, "x_3": 1, "x_5": 2, "eta": 1}


def test_restrict_and_poset_models():
    G = gal_number_ring(cyclotomic_splitting(3, [2, 3, 7]))
    sub, inc = restrict(G, ["3", "eta"])
    assert sub.category.n_objects == 2
    assert satisfies_axioms(sub).ok
    P = gal_poset_model(chain_poset(3), "chain")
    assert satisfies_axioms(P).ok


def test_axiom_battery_keys():
    G = gal_number_ring(cyclotomic_splitting(5, [2, 5, 11]))
    battery = axiom_battery(G)
    assert set(battery) == {"conservative", "endos_are_autos", "all_mono",
                            "iso_poset_matches_zariski", "slice_joins"}
    assert all(v.ok for v in battery.values())


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([1, 3, 4, 5, 7, 8, 9, 12, 15]),
       st.lists(st.sampled_from([2, 3, 5, 7, 11, 13]), min_size=1, max_size=4, unique=True))
def test_cyclotomic_models_satisfy_axioms(m, primes):
    G = gal_number_ring(cyclotomic_splitting(m, sorted(primes)))
    assert satisfies_axioms(G).ok


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([3, 4, 5, 8, 12]), st.data())
def test_relative_models_are_right_fibrations(m, data):
    from exodromy.fibrations import is_right_fibration, specialization_lifting
    H = data.draw(st.sampled_from(cyclotomic_subgroups(m)))
    R = gal_relative_model(m, sorted(H), [2, 3, 5, 7])
    assert satisfies_axioms(R.source).ok
    assert is_right_fibration(R.functor).ok
    assert specialization_lifting(R.functor).ok


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 30), st.sampled_from([4, 6, 12]))
def test_finite_ring_axioms(n, N):
    G = gal_finite_ring(zmod(n), N)
    assert satisfies_axioms(G).ok
    assert len(set(iso_class_poset(G.category).elements)) == len(zmod(n).decomposition.factors)
