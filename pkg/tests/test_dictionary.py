import pytest

from exodromy.dictionary import (
    PROPOSITIONS, CorpusConfig, DictionaryCase, check_etale, check_finite, check_finite_etale,
    check_immersions, check_invariance_topologique, check_open_closed, check_perfectly_reduced,
    check_radicial, implication, inclusion_subject, relative_subject, ring_subject, run_corpus,
    run_suite,
)
from exodromy.finring import build_ring, canonical_hom, identity_hom, perfection, product_ring, ring_to_json, zmod
from exodromy.galmodel import cyclotomic_splitting, gal_number_ring

F4 = {"kind": "gf", "p": 2, "modulus": [1, 1, 1]}
GR42 = {"kind": "poly", "n": 4, "moduli": [[-1, -1, 1]]}
DUAL2 = {"kind": "poly", "n": 2, "moduli": [[0, 0, 1]]}


def statuses(case):
    return [d.status for d in case.directions]


def test_implication_statuses():
    assert implication("a", True, True).status == "pass"
    assert implication("a", True, False).status == "fail"
    assert implication("a", False, False).status == "vacuous"
    assert implication("a", True, False, gate="why").status == "skipped"


def test_verdict_aggregation():
    c = DictionaryCase("x", "p", "s")
    c.directions = [implication("a", False, True), implication("b", True, True, gate="g")]
    assert c.verdict == "skipped" and c.vacuous and c.reason == "g"
    c.directions.append(implication("c", True, True))
    assert c.verdict == "pass" and not c.vacuous


def test_invariance_topologique_examples():
    S = ring_subject(canonical_hom(zmod(4), zmod(2)), 4, "Z/4->Z/2")
    c = check_invariance_topologique(S)
    assert c.verdict == "pass" and not c.vacuous
    S = ring_subject(canonical_hom(zmod(2), build_ring(F4)), 4, "F_2->F_4")
    c = check_invariance_topologique(S)
    assert c.verdict == "pass"
    assert check_invariance_topologique(ring_subject(identity_hom(zmod(6)), 4, "id")).verdict == "pass"


def test_radicial_examples():
    S = ring_subject(canonical_hom(zmod(2), build_ring(F4)), 4, "F_2->F_4")
    assert check_radicial(S).verdict == "pass"
    S = ring_subject(canonical_hom(zmod(4), zmod(2)), 4, "Z/4->Z/2")
    assert check_radicial(S).verdict == "pass"


def test_etale_converse_gated():
    S = ring_subject(canonical_hom(zmod(4), build_ring(GR42)), 12, "Z/4->GR")
    c = check_etale(S)
    assert statuses(c) == ["pass", "skipped"]
    assert "not perfectly reduced" in c.reason
    c = check_etale(ring_subject(canonical_hom(zmod(2), build_ring(F4)), 4, "F_2->F_4"))
    assert c.verdict == "pass" and "skipped" not in statuses(c)


def test_finite_etale_examples():
    F2 = zmod(2)
    P = product_ring([F2, build_ring(F4)])
    c = check_finite_etale(ring_subject(canonical_hom(F2, P), 4, "F_2->F_2xF_4"))
    assert statuses(c) == ["pass", "pass"]
    c = check_finite_etale(ring_subject(canonical_hom(F2, build_ring(DUAL2)), 4, "F_2->dual"))
    assert statuses(c) == ["vacuous", "skipped"]


def test_finite_on_ring_maps_and_open_inclusion():
    assert check_finite(ring_subject(identity_hom(zmod(3)), 4, "id")).verdict == "pass"
    G = gal_number_ring(cyclotomic_splitting(1, [2, 3, 5]))
    S = inclusion_subject(G, ["eta"], "open")
    assert not S.right.ok
    assert check_finite(S).verdict == "pass"


def test_open_immersion_converse_needs_perfect_reduction():
    S = ring_subject(perfection(build_ring(DUAL2)), 4, "dual->red")
    rows = {c.proposition: c for c in check_immersions(S)}
    oc = rows["open_cosieve"]
    assert S.props["mono"] and not S.props["open_immersion"] and S.cosieve.ok
    assert oc.verdict == "skipped" and "perfectly reduced" in oc.reason


def test_open_closed_declarations():
    G = gal_number_ring(cyclotomic_splitting(4, [2, 3, 5]))
    for sub in (["eta"], ["2", "3"], list(G.zariski.elements)):
        assert all(c.verdict == "pass" for c in check_open_closed(G, sub))
    with pytest.raises(KeyError):
        check_open_closed(G, ["17"])


def test_perfectly_reduced_cases():
    cases = check_perfectly_reduced(zmod(4))
    assert [c.proposition for c in cases] == ["perfectly_reduced_criterion"]
    cases = check_perfectly_reduced(build_ring(DUAL2))
    assert {c.proposition for c in cases} == {"perfectly_reduced_criterion", "perfectly_reduced_frobenius"}
    assert all(c.verdict == "pass" for c in cases)


def test_relative_subject_truths():
    S = relative_subject(8, frozenset({1, 5}), [2, 3, 5, 7])
    assert not S.props["etale"] and not S.props["radicial"]
    assert check_etale(S).verdict == "pass"
    S = relative_subject(8, frozenset({1, 5}), [2, 3, 5, 7], drop=[2])
    c = check_etale(S)
    assert statuses(c) == ["pass", "pass"]


def test_small_suite_is_green():
    cfg = CorpusConfig(zmod_max=8, truncated=((2, 2),), galois_rings=((4, (-1, -1, 1)),),
                       cyclotomic=(1, 4), prime_bound=7, chains=(2,))
    sc = run_suite(cfg, level=12)
    s = sc.summary()
    assert s["fail"] == 0
    assert s["non_vacuous"] > 40
    doc = sc.to_json(timestamp=False)
    assert doc["schema"] == "scorecard.v1" and "timestamp" not in doc


def test_corpus_reports_invalid_items():
    doc = {
        "rings": [
            {"name": "Z/4", **ring_to_json(zmod(4))},
            {"name": "Z/2", "presentation": {"kind": "zmod", "n": 2}},
            {"name": "bad", "tables": {"add": [[0, 1], [1, 1]], "mul": [[0, 0], [0, 1]]}},
        ],
        "maps": [
            {"name": "red", "source": "Z/4", "target": "Z/2", "canonical": True},
            {"name": "junk", "source": "Z/4", "target": "Z/2", "map": [0, 0, 0, 0]},
            {"name": "nowhere", "source": "Z/4", "target": "Q"},
        ],
        "cyclotomic": [{"name": "gauss", "m": 8, "subgroup": [1, 5], "primes": [2, 3, 5]},
                       {"m": 8, "subgroup": [1, 3, 5], "primes": [3]}],
    }
    sc = run_corpus(doc, 4)
    bad = {c.subject for c in sc.all_cases if c.proposition == "validation"}
    assert bad == {"bad", "junk", "nowhere", "cyclotomic1"}
    assert not sc.ok
    good = [c for c in sc.all_cases if c.proposition != "validation"]
    assert good and all(c.verdict != "fail" for c in good)


def test_every_proposition_has_a_description():
    assert all(isinstance(v, str) and v for v in PROPOSITIONS.values())
