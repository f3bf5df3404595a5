"""Acceptance criteria 1-7, one printed pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in the
terminal summary under "acceptance criteria".
"""
import json
import time

import numpy as np
import pytest

from exodromy.cli import main
from exodromy.dictionary import _canonical_maps, default_rings
from exodromy.fibrations import (
    classify, grothendieck, grothendieck_straighten_equivalence, is_cosieve_inclusion,
    is_interval_inclusion, is_kan_fibration, is_left_fibration, is_right_fibration,
    is_sieve_inclusion, restrict_functor, specialization_lifting, straighten_grothendieck_iso,
)
from exodromy.fincat import (
    chain_poset, compose_functors, equivalence_certificate, full_subcategory, inflate,
    opposite_functor, poset_category, poset_from_relations,
)
from exodromy.finring import (
    build_ring, canonical_hom, frobenius, is_bijective, is_perfectly_reduced, is_reduced,
    is_universal_homeomorphism, perfection, zmod,
)
from exodromy.galmodel import (
    LevelError, cyclotomic_splitting, cyclotomic_subgroups, gal_finite_ring, gal_functor,
    gal_number_ring, gal_poset_model, gal_relative_model, restrict, satisfies_axioms,
)
from exodromy.generators import random_diagram

LEVEL = 12
WALL_CLOCK = 60.0
MIN_NON_VACUOUS = 40
MIN_CHAR_P_RINGS = 25
N_DIAGRAMS = 100
MIN_GALOIS = 30
KNOT_PRIMES = (2, 3, 5, 7, 11, 13)

IN_SCOPE = (
    "open_cosieve", "closed_sieve", "locally_closed_interval",
    "local_weakly_initial", "irreducible_weakly_terminal",
    "radicial_fibres", "radicial_surjective_fibres", "uh_equivalence",
    "finite_right_fibration", "etale_left_fibration", "finite_etale_kan",
)


def _report(log, n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    log.append(line)


@pytest.fixture(scope="module")
def rings():
    return default_rings()


@pytest.fixture(scope="module")
def scorecard(tmp_path_factory):
    out = tmp_path_factory.mktemp("check") / "scorecard.json"
    t0 = time.perf_counter()
    code = main(["check", "--suite", "default", "--level", str(LEVEL), "--out", str(out)])
    elapsed = time.perf_counter() - t0
    return code, json.loads(out.read_text()), elapsed


def test_criterion_1_dictionary_suite(scorecard, acceptance_log):
    code, doc, elapsed = scorecard
    s = doc["summary"]
    by = s["by_proposition"]
    uncovered = [p for p in IN_SCOPE if by.get(p, {}).get("non_vacuous", 0) == 0]
    ok = (code == 0 and s["non_vacuous"] >= MIN_NON_VACUOUS and s["fail"] == 0
          and not uncovered and elapsed <= WALL_CLOCK)
    _report(acceptance_log, 1, ok,
            f"exit={code} cases={s['total']} non_vacuous={s['non_vacuous']} fail={s['fail']} "
            f"uncovered={uncovered} wall={elapsed:.1f}s (<= {WALL_CLOCK:.0f}s)")
    assert ok


def test_criterion_2_perfectly_reduced_criteria(rings, acceptance_log):
    char_p = [A for A in rings.values() if A.size > 1 and _is_prime(A.characteristic)]
    mismatches = []
    for A in char_p:
        eq = is_perfectly_reduced(A).ok
        frob = is_reduced(A) and is_bijective(frobenius(A))
        if eq != frob:
            mismatches.append(A.name)
    ok = len(char_p) >= MIN_CHAR_P_RINGS and not mismatches
    _report(acceptance_log, 2, ok, f"rings={len(char_p)} (>= {MIN_CHAR_P_RINGS}) discrepancies={mismatches}")
    assert ok


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def test_criterion_3_invariance_topologique(rings, acceptance_log):
    not_equiv = [name for name, A in rings.items()
                 if not equivalence_certificate(gal_functor(perfection(A), LEVEL)).ok]
    equiv_instances, not_uh = 0, []
    for label, f in _canonical_maps(rings):
        try:
            F = gal_functor(f, LEVEL)
        except LevelError:
            continue
        if equivalence_certificate(F).ok:
            equiv_instances += 1
            if not is_universal_homeomorphism(f):
                not_uh.append(label)
    ok = not not_equiv and not not_uh and equiv_instances > 0
    _report(acceptance_log, 3, ok,
            f"reductions={len(rings)} non_equivalences={not_equiv} "
            f"equivalence_instances={equiv_instances} not_uh={not_uh}")
    assert ok


def test_criterion_4_knots_and_primes(acceptance_log):
    R = gal_relative_model(8, [1, 5], KNOT_PRIMES)
    rep = classify(R.functor).to_json()
    expected = {f"x_{p}": (2 if p % 4 == 1 else 1) for p in KNOT_PRIMES}
    expected["eta"] = 1
    profile = rep["right"] and not rep["left"] and not rep["kan"]
    sizes_ok = rep["point_fibers"] == expected

    T = R.functor.target
    keep = [d for d in T.objects if T.obj_label(d) != "x_2"]
    Fr, _, it = restrict_functor(R.functor, keep)
    cosieve = is_cosieve_inclusion(it).ok
    after = classify(Fr).to_json()
    flipped = after["left"] and after["kan"] and after["right"]
    ok = profile and sizes_ok and cosieve and flipped
    _report(acceptance_log, 4, ok,
            f"right={rep['right']} left={rep['left']} kan={rep['kan']} sizes={rep['point_fibers']} "
            f"| without x_2: cosieve={cosieve} left={after['left']} kan={after['kan']}")
    assert ok


def test_criterion_5_grothendieck_round_trip(acceptance_log):
    rng = np.random.default_rng(5)
    failures, max_objects = [], 0
    for i in range(N_DIAGRAMS):
        G = random_diagram(rng, max_objects=8)
        max_objects = max(max_objects, G.base.n_objects)
        P = grothendieck(G)
        # a non-strict presentation of the same fibration
        _, collapse, _ = inflate(P.source, [1 + (x % 2) for x in P.source.objects])
        checks = (straighten_grothendieck_iso(G).ok,
                  grothendieck_straighten_equivalence(P).ok,
                  grothendieck_straighten_equivalence(compose_functors(P, collapse)).ok)
        if not all(checks):
            failures.append(i)
    ok = not failures and max_objects <= 8
    _report(acceptance_log, 5, ok, f"diagrams={N_DIAGRAMS} max_objects={max_objects} failures={failures}")
    assert ok


def _galois_instances(rings):
    out = []
    for name, A in rings.items():
        out.append((f"Gal_{LEVEL}({name})", gal_finite_ring(A, LEVEL)))
    for m in (1, 3, 4, 5, 8, 12):
        G = gal_number_ring(cyclotomic_splitting(m, [p for p in (2, 3, 5, 7, 11, 13)]))
        out.append((G.name, G))
        out.append((G.name + "[eta,x_2]", restrict(G, ["2", "eta"])[0]))
    for H in cyclotomic_subgroups(8):
        R = gal_relative_model(8, H, KNOT_PRIMES)
        out.append((R.source.name, R.source))
    for n in (1, 2, 3, 4):
        out.append((f"chain{n}", gal_poset_model(chain_poset(n), f"chain{n}")))
    out.append(("vee", gal_poset_model(poset_from_relations("abc", [("a", "c"), ("b", "c")]), "vee")))
    return out


def test_criterion_6_axiom_battery(rings, acceptance_log):
    instances = _galois_instances(rings)
    failures = [(name, satisfies_axioms(G).witness) for name, G in instances if not satisfies_axioms(G)]
    ok = len(instances) >= MIN_GALOIS and not failures
    _report(acceptance_log, 6, ok, f"instances={len(instances)} (>= {MIN_GALOIS}) failures={failures}")
    assert ok


def _counterexamples():
    Z = gal_number_ring(cyclotomic_splitting(1, [2, 3, 5]))
    _, open_inc = restrict(Z, ["eta"])
    _, closed_inc = restrict(Z, ["2"])
    gap = full_subcategory(poset_category(chain_poset(3)), [0, 2])
    rel = gal_relative_model(8, [1, 5], KNOT_PRIMES).functor
    f24 = canonical_hom(zmod(2), build_ring({"kind": "gf", "p": 2, "modulus": [1, 1, 1]}))
    return {
        "sieve": is_sieve_inclusion(open_inc),
        "cosieve": is_cosieve_inclusion(closed_inc),
        "interval": is_interval_inclusion(gap),
        "left": is_left_fibration(rel),
        "right": is_right_fibration(opposite_functor(rel)),
        "kan": is_kan_fibration(rel),
        "equivalence": equivalence_certificate(gal_functor(f24, LEVEL)),
        "lifting": specialization_lifting(open_inc),
    }


def test_criterion_7_counterexamples(acceptance_log):
    verdicts = _counterexamples()
    missing = [k for k, v in verdicts.items() if v.ok or v.witness is None]
    ok = not missing
    _report(acceptance_log, 7, ok,
            f"false-with-witness: {sorted(k for k in verdicts if k not in missing)} missing={missing}")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v", "-s"]))
