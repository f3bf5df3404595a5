import pytest
from hypothesis import given, strategies as st

from exodromy.fincat import (
    CapExceeded, CategoryError, Caps, FinCategory, InvalidCategory, NotAPoset, build_category,
    chain_poset, check_category, components, compose_functors, coslice_category, current_caps,
    cyclic_category, disjoint_union, equivalence_certificate, group_hom_functor, has_weakly_initial,
    has_weakly_terminal, identity_functor, inflate, is_equivalence, iso_class_map, iso_class_poset,
    join_failure, non_invertible_endo, opposite, poset_category, poset_from_relations,
    product_category, slice_category, validate_category, validate_functor, Functor, all_mono,
)


@st.composite
def posets(draw, max_size=6):
    n = draw(st.integers(1, max_size))
    rel = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    return poset_from_relations(range(n), [(a, b) for a, b in rel if a < b])


def test_cyclic_category_composition():
    C = cyclic_category(4)
    assert C.n_objects == 1 and C.n_morphisms == 4
    assert C.compose(3, 2) == 1
    assert C.is_groupoid()
    assert not validate_category(C)


def test_bad_table_is_reported():
    C = cyclic_category(3)
    table = dict(C.table)
    table[1, 1] = 1
    bad = FinCategory(1, C.src, C.dst, C.identity, table)
    kinds = {v.kind for v in validate_category(bad)}
    assert kinds
    with pytest.raises(InvalidCategory):
        check_category(bad)


def test_undefined_composite():
    C = poset_category(chain_poset(3))
    f = C.hom(0, 1)[0]
    with pytest.raises(CategoryError):
        C.compose(f, f)


def test_build_category_rejects_duplicates():
    with pytest.raises(CategoryError):
        build_category(["a", "a"], [], {}, lambda g, f: None)


def test_walking_arrow_weak_initial_terminal():
    C = poset_category(chain_poset(2))
    assert has_weakly_initial(C) and has_weakly_terminal(C)
    D = disjoint_union(C, C)
    assert not has_weakly_initial(D) and not has_weakly_terminal(D)
    assert len(components(D)) == 2


def test_vee_has_terminal_not_initial():
    P = poset_from_relations("abc", [("a", "c"), ("b", "c")])
    C = poset_category(P)
    assert has_weakly_terminal(C)
    assert not has_weakly_initial(C)


def test_non_invertible_endo_detected():
    # the monoid {1, e} with e^2 = e
    C = FinCategory(1, (0, 0), (0, 0), (0,), {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1})
    assert not validate_category(C)
    assert non_invertible_endo(C) == 1
    assert not all_mono(C).ok


def test_subgroup_inclusion_not_equivalence():
    F = group_hom_functor(cyclic_category(2), cyclic_category(4), [0, 2])
    assert not validate_functor(F)
    v = equivalence_certificate(F)
    assert not v.ok and "not_full" in v.witness


def test_inflate_is_equivalence():
    C = poset_category(chain_poset(3))
    big, collapse, section = inflate(C, [2, 1, 3])
    assert big.n_objects == 6
    assert is_equivalence(collapse) and is_equivalence(section)


def test_caps(monkeypatch):
    monkeypatch.setenv("EXODROMY_CAPS", "objects=2")
    assert current_caps().objects == 2
    C = poset_category(chain_poset(3))
    with pytest.raises(CapExceeded):
        equivalence_certificate(identity_functor(C))
    monkeypatch.setenv("EXODROMY_CAPS", "widgets=3")
    with pytest.raises(CategoryError):
        current_caps()
    assert is_equivalence(identity_functor(C), Caps(objects=10))


def test_iso_class_poset_rejects_cycle():
    # two objects with morphisms both ways that are not inverse: a -> b -> a composes to the idempotent
    objs = ["a", "b"]
    mors = [("ia", "a", "a"), ("ib", "b", "b"), ("f", "a", "b"), ("g", "b", "a"),
            ("e", "a", "a"), ("k", "b", "b")]
    comp = {("f", "g"): "k", ("g", "f"): "e", ("f", "e"): "f", ("e", "g"): "g",
            ("e", "e"): "e", ("k", "k"): "k", ("k", "f"): "f", ("g", "k"): "g"}

    def compose(g, f):
        if g in ("ia", "ib"):
            return f
        if f in ("ia", "ib"):
            return g
        return comp[g, f]

    C = build_category(objs, mors, {"a": "ia", "b": "ib"}, compose)
    assert not validate_category(C)
    with pytest.raises(NotAPoset):
        iso_class_poset(C)


def test_slices_of_chain():
    C = poset_category(chain_poset(3))
    assert slice_category(C, 2).n_objects == 3
    assert coslice_category(C, 2).n_objects == 1


@given(posets())
def test_poset_category_is_valid_and_iso_poset_recovers(P):
    C = poset_category(P)
    assert not validate_category(C)
    Q = iso_class_poset(C)
    assert len(Q.elements) == len(P.elements)
    assert len(set(iso_class_map(C))) == C.n_objects


@given(posets(), posets(max_size=3))
def test_product_and_opposite_are_categories(P, Q):
    C = product_category(poset_category(P), poset_category(Q))
    assert not validate_category(C)
    assert not validate_category(opposite(C))


@given(posets())
def test_equivalence_closed_under_composition(P):
    C = poset_category(P)
    big, collapse, section = inflate(C, [1 + (x % 3) for x in C.objects])
    assert is_equivalence(compose_functors(collapse, section))
    assert is_equivalence(compose_functors(section, collapse))


@given(posets())
def test_chain_joins(P):
    # every chain has joins; an antichain of size >= 2 does not
    fail = join_failure(P)
    if len(P.elements) >= 2 and all(a == b for a, b in P.leq):
        assert fail is not None
    if all((a, b) in P.leq or (b, a) in P.leq for a in P.elements for b in P.elements):
        assert fail is None


def test_functor_violations():
    C = cyclic_category(2)
    D = cyclic_category(3)
    bad = Functor(C, D, (0,), (0, 1))
    assert validate_functor(bad)
