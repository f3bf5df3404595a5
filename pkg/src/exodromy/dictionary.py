"""Dictionary between properties of morphisms of schemes and properties of
functors between their Galois categories, checked on finite corpora.

A *subject* is a functor ``Gal(X) -> Gal(Y)`` together with the truth values
of the scheme-side properties of ``X -> Y``.  For maps of finite rings those
truths come from :mod:`exodromy.finring`; for number-ring models they are read
off the splitting data (ramification, residue degrees) or the declared
Zariski topology.  Each check compares the two sides, direction by direction.
"""
from __future__ import annotations

import datetime as _dt
import itertools
import time
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Any, Callable, Iterable, Sequence

from sympy import isprime, primerange

from .fibrations import (
    FiberReport, is_cosieve, is_cosieve_inclusion, is_finite_fibers, is_interval,
    is_interval_inclusion, is_kan_fibration, is_left_fibration, is_right_fibration,
    is_sieve, is_sieve_inclusion, restrict_functor, specialization_lifting,
)
from .fincat import (
    CategoryError, FinPoset, FullSubcategory, Functor, Verdict, chain_poset,
    equivalence_certificate, has_weakly_initial, has_weakly_terminal,
)
from .finring import (
    FinCommRing, RingError, RingHom, build_ring, canonical_hom, find_homs, frobenius,
    is_bijective, is_closed_immersion, is_etale, is_irreducible, is_local, is_monomorphism,
    is_open_immersion, is_perfectly_reduced, is_radicial, is_reduced, is_spec_surjective,
    is_universal_homeomorphism, perfection, product_ring, validate_hom, validate_ring,
    zmod,
)
from .galmodel import (
    GaloisCategory, LevelError, SplittingError, cyclotomic_splitting, cyclotomic_subgroups, gal_finite_ring, gal_functor,
    gal_number_ring, gal_poset_model, gal_relative_model, restrict, axiom_battery,
)

PROPOSITIONS = {
    "open_cosieve": "open immersion = cosieve inclusion (monomorphisms)",
    "closed_sieve": "closed immersion = sieve inclusion (monomorphisms)",
    "locally_closed_interval": "locally closed immersion = interval inclusion (monomorphisms)",
    "local_weakly_initial": "local = weakly initial object",
    "irreducible_weakly_terminal": "irreducible = weakly terminal object",
    "radicial_fibres": "radicial = fibres empty or singletons",
    "radicial_surjective_fibres": "radicial and surjective = fibres singletons",
    "integral_right_fibration": "integral => right fibration => lifting, universally closed",
    "uh_equivalence": "universal homeomorphism = equivalence",
    "quasi_finite_fibres": "quasi-finite = finite fibres",
    "finite_right_fibration": "finite = right fibration with finite fibres",
    "etale_left_fibration": "etale = left fibration with finite fibres",
    "finite_etale_kan": "finite etale = Kan fibration with finite fibres",
    "perfectly_reduced_criterion": "equational criterion = no nontrivial universal homeomorphism",
    "perfectly_reduced_frobenius": "equational criterion = reduced with bijective Frobenius (char p)",
    "galois_axioms": "Galois-category axioms",
}

# propositions that must have a non-vacuous instance in the default corpus
REQUIRED = tuple(k for k in PROPOSITIONS)


@dataclass
class Direction:
    name: str
    status: str                     # pass | fail | vacuous | skipped
    reason: str | None = None


@dataclass
class DictionaryCase:
    name: str
    proposition: str
    subject: str
    ring_side: dict = field(default_factory=dict)
    category_side: dict = field(default_factory=dict)
    directions: list[Direction] = field(default_factory=list)
    witness: Any = None

    @property
    def verdict(self) -> str:
        st = [d.status for d in self.directions]
        if "fail" in st:
            return "fail"
        if "pass" in st:
            return "pass"
        if "skipped" in st:
            return "skipped"
        return "pass"

    @property
    def vacuous(self) -> bool:
        return not any(d.status in ("pass", "fail") for d in self.directions)

    @property
    def reason(self) -> str | None:
        for d in self.directions:
            if d.status == "skipped":
                return d.reason
        return None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "proposition": self.proposition,
            "subject": self.subject,
            "verdict": self.verdict,
            "vacuous": self.vacuous,
            "reason": self.reason,
            "ring_side": self.ring_side,
            "category_side": self.category_side,
            "directions": [asdict(d) for d in self.directions],
            "witness": self.witness,
        }


def implication(name: str, hypothesis: bool, conclusion: bool, gate: str | None = None) -> Direction:
    """``hypothesis ⇒ conclusion``; ``gate`` is the reason the direction is out of scope, if it is."""
    if gate:
        return Direction(name, "skipped", gate)
    if not hypothesis:
        return Direction(name, "vacuous")
    return Direction(name, "pass" if conclusion else "fail")


def _iff(case: DictionaryCase, lhs: str, rhs: str, a: bool, b: bool,
         converse_gate: str | None = None, forward_gate: str | None = None) -> DictionaryCase:
    case.directions.append(implication(f"{lhs} => {rhs}", a, b, forward_gate))
    case.directions.append(implication(f"{rhs} => {lhs}", b, a, converse_gate))
    return case


# --------------------------------------------------------------------------
# subjects


@dataclass(eq=False)
class Subject:
    """A functor ``Gal(X) -> Gal(Y)`` with scheme-side truths for ``X -> Y``.

    ``props`` keys: finite, integral, universally_closed, quasi_finite,
    radicial, surjective, uh, etale, mono, open_immersion, closed_immersion,
    locally_closed.  ``perfectly_reduced`` is (source, target).
    """

    name: str
    functor: Functor
    props: dict[str, bool]
    perfectly_reduced: tuple[bool, bool]
    finite_type: bool = True

    @cached_property
    def equivalence(self) -> Verdict:
        return equivalence_certificate(self.functor)

    @cached_property
    def right(self) -> Verdict:
        return is_right_fibration(self.functor)

    @cached_property
    def left(self) -> Verdict:
        return is_left_fibration(self.functor)

    @cached_property
    def kan(self) -> Verdict:
        return is_kan_fibration(self.functor)

    @cached_property
    def fibers(self) -> FiberReport:
        return is_finite_fibers(self.functor)

    @cached_property
    def lifting(self) -> Verdict:
        return specialization_lifting(self.functor)

    @cached_property
    def sieve(self) -> Verdict:
        return is_sieve_inclusion(self.functor)

    @cached_property
    def cosieve(self) -> Verdict:
        return is_cosieve_inclusion(self.functor)

    @cached_property
    def interval(self) -> Verdict:
        return is_interval_inclusion(self.functor)

    def fibre_sizes(self) -> dict[str, Any]:
        return {str(self.functor.target.obj_label(int(d))): v for d, v in self.fibers.to_json().items()}

    @property
    def both_perfectly_reduced(self) -> str | None:
        s, t = self.perfectly_reduced
        if s and t:
            return None
        which = " and ".join(n for n, ok in (("source", s), ("target", t)) if not ok)
        return f"{which} not perfectly reduced"


def _fibres_at_most_singletons(S: Subject) -> bool:
    return S.fibers.ok and all(v <= 1 for v in S.fibers.sizes.values())


def _fibres_singletons(S: Subject) -> bool:
    return S.fibers.ok and all(v == 1 for v in S.fibers.sizes.values())


def _witness(*verdicts: tuple[str, Verdict]) -> dict | None:
    out = {k: v.witness for k, v in verdicts if not v}
    return out or None


# --------------------------------------------------------------------------
# checks on morphisms


def check_invariance_topologique(S: Subject) -> DictionaryCase:
    c = DictionaryCase(f"uh_equivalence/{S.name}", "uh_equivalence", S.name,
                       {"uh": S.props["uh"]}, {"equivalence": S.equivalence.ok},
                       witness=_witness(("equivalence", S.equivalence)))
    gate = None if S.finite_type else "not of finite type"
    return _iff(c, "universal homeomorphism", "equivalence", S.props["uh"], S.equivalence.ok,
                converse_gate=gate)


def check_radicial(S: Subject) -> DictionaryCase:
    cat = _fibres_at_most_singletons(S)
    c = DictionaryCase(f"radicial_fibres/{S.name}", "radicial_fibres", S.name,
                       {"radicial": S.props["radicial"]},
                       {"fibres_empty_or_singleton": cat, "fibres": S.fibre_sizes()})
    gate = None if S.finite_type else "not of finite type"
    return _iff(c, "radicial", "fibres empty or singleton", S.props["radicial"], cat,
                converse_gate=gate)


def check_radicial_surjective(S: Subject) -> DictionaryCase:
    ring = S.props["radicial"] and S.props["surjective"]
    cat = _fibres_singletons(S)
    c = DictionaryCase(f"radicial_surjective_fibres/{S.name}", "radicial_surjective_fibres",
                       S.name, {"radicial": S.props["radicial"], "surjective": S.props["surjective"]},
                       {"fibres_singletons": cat, "fibres": S.fibre_sizes()})
    gate = None if S.finite_type else "not of finite type"
    return _iff(c, "radicial and surjective", "fibres singletons", ring, cat, converse_gate=gate)


def check_integral(S: Subject) -> DictionaryCase:
    c = DictionaryCase(f"integral_right_fibration/{S.name}", "integral_right_fibration", S.name,
                       {"integral": S.props["integral"],
                        "universally_closed": S.props["universally_closed"]},
                       {"right": S.right.ok, "lifting": S.lifting.ok},
                       witness=_witness(("right", S.right), ("lifting", S.lifting)))
    c.directions.append(implication("integral => right fibration", S.props["integral"], S.right.ok))
    c.directions.append(implication("right fibration => lifting", S.right.ok, S.lifting.ok))
    c.directions.append(implication("right fibration => universally closed", S.right.ok,
                                    S.props["universally_closed"]))
    return c


def check_quasi_finite(S: Subject) -> DictionaryCase:
    c = DictionaryCase(f"quasi_finite_fibres/{S.name}", "quasi_finite_fibres", S.name,
                       {"quasi_finite": S.props["quasi_finite"]},
                       {"finite_fibres": S.fibers.ok, "fibres": S.fibre_sizes()})
    gate = None if S.finite_type else "not of finite type"
    return _iff(c, "quasi-finite", "finite fibres", S.props["quasi_finite"], S.fibers.ok,
                converse_gate=gate, forward_gate=gate)


def check_finite(S: Subject) -> DictionaryCase:
    cat = S.right.ok and S.fibers.ok
    c = DictionaryCase(f"finite_right_fibration/{S.name}", "finite_right_fibration", S.name,
                       {"finite": S.props["finite"]},
                       {"right": S.right.ok, "finite_fibres": S.fibers.ok, "fibres": S.fibre_sizes()},
                       witness=_witness(("right", S.right)))
    gate = None if S.finite_type else "not of finite type"
    return _iff(c, "finite", "right fibration with finite fibres", S.props["finite"], cat,
                converse_gate=gate, forward_gate=gate)


def check_etale(S: Subject) -> DictionaryCase:
    cat = S.left.ok and S.fibers.ok
    c = DictionaryCase(f"etale_left_fibration/{S.name}", "etale_left_fibration", S.name,
                       {"etale": S.props["etale"]},
                       {"left": S.left.ok, "finite_fibres": S.fibers.ok, "fibres": S.fibre_sizes()},
                       witness=_witness(("left", S.left)))
    gate = S.both_perfectly_reduced or (None if S.finite_type else "not of finite presentation")
    return _iff(c, "etale", "left fibration with finite fibres", S.props["etale"], cat,
                converse_gate=gate)


def check_finite_etale(S: Subject) -> DictionaryCase:
    ring = S.props["etale"] and S.props["finite"]
    cat = S.kan.ok and S.fibers.ok
    c = DictionaryCase(f"finite_etale_kan/{S.name}", "finite_etale_kan", S.name,
                       {"etale": S.props["etale"], "finite": S.props["finite"]},
                       {"kan": S.kan.ok, "finite_fibres": S.fibers.ok, "fibres": S.fibre_sizes()},
                       witness=_witness(("kan", S.kan)))
    fp = None if S.finite_type else "not of finite presentation"
    return _iff(c, "finite etale", "Kan fibration with finite fibres", ring, cat,
                converse_gate=fp or S.both_perfectly_reduced, forward_gate=fp)


def check_immersions(S: Subject) -> list[DictionaryCase]:
    """The three immersion statements, each for monomorphisms only."""
    gate = None if S.props["mono"] else "not a monomorphism"
    rows = (
        ("open_cosieve", "open immersion", "cosieve inclusion", S.props["open_immersion"],
         S.cosieve, S.both_perfectly_reduced),
        ("closed_sieve", "closed immersion", "sieve inclusion", S.props["closed_immersion"],
         S.sieve, None),
        ("locally_closed_interval", "locally closed immersion", "interval inclusion",
         S.props["locally_closed"], S.interval, None),
    )
    out = []
    for prop, lhs, rhs, ring, cat, conv_gate in rows:
        c = DictionaryCase(f"{prop}/{S.name}", prop, S.name, {"mono": S.props["mono"], lhs: ring},
                           {rhs: cat.ok}, witness=_witness((rhs, cat)))
        _iff(c, lhs, rhs, ring, cat.ok, forward_gate=gate, converse_gate=gate or conv_gate)
        out.append(c)
    return out


MORPHISM_CHECKS: tuple[Callable[[Subject], Any], ...] = (
    check_invariance_topologique, check_radicial, check_radicial_surjective, check_integral,
    check_quasi_finite, check_finite, check_etale, check_finite_etale, check_immersions,
)


def check_subject(S: Subject) -> list[DictionaryCase]:
    out = []
    for chk in MORPHISM_CHECKS:
        r = chk(S)
        out.extend(r if isinstance(r, list) else [r])
    return out


# --------------------------------------------------------------------------
# checks on objects


def check_open_closed(G: GaloisCategory, points: Iterable, model_name: str | None = None) -> list[DictionaryCase]:
    """Declared topology of a Zariski subset against sieve / cosieve / interval.

    The declared side reads the subset in the specialization topology of the
    Zariski poset: open = closed under generization, closed = closed under
    specialization, locally closed = convex.
    """
    pts = set(points)
    unknown = pts - set(G.zariski.elements)
    if unknown:
        raise KeyError(f"unknown Zariski points {sorted(map(str, unknown))}")
    P = G.zariski
    up = all(b in pts for a, b in P.leq if a in pts)
    down = all(a in pts for a, b in P.leq if b in pts)
    convex = all(c in pts for a, b in P.leq if a in pts and b in pts
                 for c in P.elements if P.le(a, c) and P.le(c, b))
    objs = frozenset(x for x in G.category.objects if P.elements[G.projection.obj(x)] in pts)
    S = FullSubcategory(G.category, objs)
    name = model_name or G.name
    subject = f"{name}:{{{','.join(sorted(map(str, pts)))}}}"
    out = []
    for prop, lhs, rhs, declared, v in (
        ("open_cosieve", "open", "cosieve", up, is_cosieve(S)),
        ("closed_sieve", "closed", "sieve", down, is_sieve(S)),
        ("locally_closed_interval", "locally closed", "interval", convex, is_interval(S)),
    ):
        c = DictionaryCase(f"{prop}/{subject}", prop, subject, {lhs: declared}, {rhs: v.ok},
                           witness=v.witness if not v else None)
        out.append(_iff(c, lhs, rhs, declared, v.ok))
    return out


def check_local_irreducible(G: GaloisCategory, local: bool, irreducible: bool,
                            name: str | None = None) -> list[DictionaryCase]:
    name = name or G.name
    wi, wt = has_weakly_initial(G.category), has_weakly_terminal(G.category)
    a = DictionaryCase(f"local_weakly_initial/{name}", "local_weakly_initial", name,
                       {"local": local}, {"weakly_initial": wi})
    b = DictionaryCase(f"irreducible_weakly_terminal/{name}", "irreducible_weakly_terminal", name,
                       {"irreducible": irreducible}, {"weakly_terminal": wt})
    return [_iff(a, "local", "weakly initial object", local, wi),
            _iff(b, "irreducible", "weakly terminal object", irreducible, wt)]


def check_axioms(G: GaloisCategory, name: str | None = None) -> DictionaryCase:
    name = name or G.name
    battery = axiom_battery(G)
    c = DictionaryCase(f"galois_axioms/{name}", "galois_axioms", name, {},
                       {k: v.ok for k, v in battery.items()},
                       witness={k: v.witness for k, v in battery.items() if not v} or None)
    for k, v in battery.items():
        c.directions.append(Direction(k, "pass" if v else "fail"))
    return c


def check_perfectly_reduced(A: FinCommRing) -> list[DictionaryCase]:
    """The equational criterion against the universal-homeomorphism characterisation,
    and (in prime characteristic) against reducedness with bijective Frobenius."""
    pr = is_perfectly_reduced(A)
    red = perfection(A, check=False)
    counit_iso = is_bijective(red)
    c = DictionaryCase(f"perfectly_reduced_criterion/{A.name}", "perfectly_reduced_criterion",
                       A.name, {"perfection_is_iso": counit_iso}, {"equational": pr.ok},
                       witness=pr.certificate)
    out = [_iff(c, "equational criterion", "A_red -> A universal homeomorphism is an iso",
                pr.ok, counit_iso)]
    p = A.characteristic
    if isprime(p):
        frob = is_bijective(frobenius(A))
        reduced = is_reduced(A)
        d = DictionaryCase(f"perfectly_reduced_frobenius/{A.name}", "perfectly_reduced_frobenius",
                           A.name, {"reduced": reduced, "frobenius_bijective": frob},
                           {"equational": pr.ok}, witness=pr.certificate)
        out.append(_iff(d, "equational criterion", "reduced and Frobenius bijective",
                        pr.ok, reduced and frob))
    return out


# --------------------------------------------------------------------------
# subjects from ring maps and models


def ring_subject(f: RingHom, N: int, name: str) -> Subject:
    """``Spec f: Spec B -> Spec A``.  Every map of finite rings is finite,
    of finite presentation and separated."""
    A, B = f.source, f.target
    closed = is_closed_immersion(f)
    props = {
        "finite": True, "integral": True, "universally_closed": True, "quasi_finite": True,
        "radicial": is_radicial(f), "surjective": is_spec_surjective(f),
        "uh": is_universal_homeomorphism(f), "etale": is_etale(f), "mono": is_monomorphism(f),
        "open_immersion": is_open_immersion(f), "closed_immersion": closed,
        # Spec of a finite ring is finite discrete: opens are closed, so locally
        # closed immersions are closed immersions
        "locally_closed": closed,
    }
    return Subject(name, gal_functor(f, N), props,
                   (bool(is_perfectly_reduced(B)), bool(is_perfectly_reduced(A))))


def relative_subject(m: int, H: frozenset[int], primes: Sequence[int], drop: Iterable[int] = ()) -> Subject:
    """``Spec O_K -> Spec Z`` for ``K = Q(ζ_m)^H``, optionally over ``Z[1/d]`` for the dropped primes."""
    R = gal_relative_model(m, H, primes)
    S = R.splitting
    drop = {str(p) for p in drop}
    keep = [pd for pd in S.primes if pd.label not in drop]
    Hs = R.subgroup
    unramified = all(pd.inertia <= Hs for pd in keep)
    whole = len(Hs) == S.order
    F = R.functor
    name = f"O_K->Z[m={m},H={{{','.join(str(h) for h in sorted(H))}}}]"
    if drop:
        T = F.target
        F, _, _ = restrict_functor(F, [d for d in T.objects if T.obj_label(d) not in {f"x_{p}" for p in drop}])
        name += f"[1/{'*'.join(sorted(drop, key=int))}]"
    props = {
        "finite": True, "integral": True, "universally_closed": True, "quasi_finite": True,
        "radicial": whole, "surjective": True, "uh": whole, "etale": unramified,
        "mono": whole, "open_immersion": whole, "closed_immersion": whole, "locally_closed": whole,
    }
    return Subject(name, F, props, (True, True))


def inclusion_subject(G: GaloisCategory, points: Iterable, name: str) -> Subject:
    """The immersion of an open or closed subset of a number-ring model (rings of
    integers are normal, hence perfectly reduced; so are finite fields)."""
    pts = set(points)
    P = G.zariski
    up = all(b in pts for a, b in P.leq if a in pts)
    down = all(a in pts for a, b in P.leq if b in pts)
    if not (up or down):
        raise ValueError("only open or closed subsets define subschemes here")
    whole = pts == set(P.elements)
    _, inc = restrict(G, pts)
    props = {
        "finite": down, "integral": down, "universally_closed": down, "quasi_finite": True,
        "radicial": True, "surjective": whole, "uh": whole,
        "etale": up, "mono": True, "open_immersion": up, "closed_immersion": down,
        "locally_closed": True,
    }
    return Subject(name, inc, props, (True, True))


def _model_truths(P: FinPoset) -> tuple[bool, bool]:
    """Local / irreducible for the scheme with this Zariski poset (least / greatest point)."""
    els = P.elements
    local = any(all(P.le(a, b) for b in els) for a in els)
    irreducible = any(all(P.le(b, a) for b in els) for a in els)
    return local, irreducible


# --------------------------------------------------------------------------
# corpus


@dataclass(frozen=True)
class CorpusConfig:
    zmod_max: int = 30
    fields: tuple[tuple[int, tuple[int, ...]], ...] = (
        (2, (1, 1, 1)), (2, (1, 1, 0, 1)), (3, (1, 0, 1)),
    )
    truncated: tuple[tuple[int, int], ...] = ((2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (5, 3))
    galois_rings: tuple[tuple[int, tuple[int, ...]], ...] = ((4, (-1, -1, 1)), (9, (1, 0, 1)))
    cyclotomic: tuple[int, ...] = (1, 3, 4, 5, 8)
    prime_bound: int = 23
    chains: tuple[int, ...] = (1, 2, 3, 4)
    level: int = 12


_GF_NAMES = {(2, (1, 1, 1)): "F_4", (2, (1, 1, 0, 1)): "F_8", (3, (1, 0, 1)): "F_9"}


def _truncated(p: int, k: int) -> FinCommRing:
    return build_ring({"kind": "poly", "n": p, "moduli": [[0] * k + [1]]},
                      name=f"F_{p}[x]/(x^{k})")


def default_rings(cfg: CorpusConfig = CorpusConfig()) -> dict[str, FinCommRing]:
    R: dict[str, FinCommRing] = {}
    for n in range(1, cfg.zmod_max + 1):
        R[f"Z/{n}"] = zmod(n)
    for p, mod in cfg.fields:
        name = _GF_NAMES.get((p, tuple(mod)), None)
        R[name or f"F_{p}^{len(mod) - 1}"] = build_ring({"kind": "gf", "p": p, "modulus": list(mod)},
                                                        name=name)
    for p, k in cfg.truncated:
        A = _truncated(p, k)
        R[A.name] = A
    for n, mod in cfg.galois_rings:
        d = len(mod) - 1
        A = build_ring({"kind": "poly", "n": n, "moduli": [list(mod)]}, name=f"GR({n},{d})")
        R[A.name] = A
    R["F_2[x,y]/(x^2,y^2)"] = build_ring({"kind": "poly", "n": 2, "moduli": [[0, 0, 1], [0, 0, 1]]},
                                         name="F_2[x,y]/(x^2,y^2)")
    pairs = [("Z/2", "Z/2"), ("Z/3", "Z/3"), ("Z/2", "F_4"), ("Z/2", "F_2[x]/(x^2)"),
             ("Z/3", "F_9"), ("F_4", "F_8"), ("F_2[x]/(x^2)", "F_4"), ("F_4", "F_4"),
             ("Z/4", "Z/4"), ("Z/4", "Z/2"), ("Z/3", "F_3[x]/(x^2)"), ("Z/5", "F_5[x]/(x^2)")]
    for a, b in pairs:
        if a in R and b in R:
            P = product_ring([R[a], R[b]], name=f"{a} x {b}")
            R[P.name] = P
    return R


def _canonical_maps(R: dict[str, FinCommRing]) -> list[tuple[str, RingHom]]:
    maps: list[tuple[str, RingHom]] = []
    seen = set()

    def add(label: str, f: RingHom):
        key = (id(f.source), id(f.target), f.images)
        if key not in seen:
            seen.add(key)
            maps.append((label, f))

    for name, A in R.items():
        add(f"id[{name}]", RingHom(A, A, tuple(range(A.size))))
        red = perfection(A, check=False)
        red_name = f"{name}->({name})_red"
        add(red_name, red)
        dec = A.decomposition
        for k, fac in enumerate(dec.factors):
            add(f"{name}->residue{k}", RingHom(A, fac.residue, tuple(int(v) for v in fac.residue_map)))
            if len(dec.factors) > 1:
                pos = {g: i for i, g in enumerate(fac.elements)}
                add(f"{name}->factor{k}", RingHom(A, fac.ring, tuple(pos[int(A.mul[fac.idempotent, a])]
                                                                       for a in range(A.size))))
        c = A.characteristic
        if f"Z/{c}" in R and A.size > 1 and name != f"Z/{c}":
            add(f"Z/{c}->{name}", canonical_hom(R[f"Z/{c}"], A))
    for n in range(2, 31):
        for d in range(2, n):
            if n % d == 0 and f"Z/{n}" in R and f"Z/{d}" in R:
                add(f"Z/{n}->Z/{d}", canonical_hom(R[f"Z/{n}"], R[f"Z/{d}"]))
    families = [
        ["Z/2", "F_4", "F_8", "F_2[x]/(x^2)", "F_2[x]/(x^3)", "Z/2 x Z/2", "Z/2 x F_4",
         "Z/4", "GR(4,2)", "F_4 x F_4", "Z/4 x Z/4", "Z/4 x Z/2"],
        ["Z/3", "F_9", "F_3[x]/(x^2)", "Z/3 x Z/3", "Z/3 x F_9", "Z/9", "GR(9,2)"],
    ]
    for fam in families:
        fam = [x for x in fam if x in R]
        for a, b in itertools.product(fam, repeat=2):
            if a == b or R[a].characteristic != R[b].characteristic:
                continue
            if R[a].size * R[b].size > 1024:
                continue
            for k, f in enumerate(find_homs(R[a], R[b])):
                add(f"{a}->{b}#{k}", f)
    for name in ("F_4", "F_8", "F_9"):
        if name in R:
            add(f"frob[{name}]", frobenius(R[name]))
    return maps


@dataclass
class Scorecard:
    level: int
    cases: list[DictionaryCase]
    errors: list[DictionaryCase] = field(default_factory=list)
    elapsed: float = 0.0
    required: tuple[str, ...] = REQUIRED

    @property
    def all_cases(self) -> list[DictionaryCase]:
        return sorted(self.cases + self.errors, key=lambda c: c.name)

    def summary(self) -> dict:
        cases = self.all_cases
        by_prop: dict[str, dict[str, int]] = {}
        for c in cases:
            d = by_prop.setdefault(c.proposition, {"cases": 0, "non_vacuous": 0, "fail": 0, "skipped": 0})
            d["cases"] += 1
            d["non_vacuous"] += int(c.verdict == "pass" and not c.vacuous)
            d["fail"] += int(c.verdict == "fail")
            d["skipped"] += int(c.verdict == "skipped")
        missing = [p for p in self.required if by_prop.get(p, {}).get("non_vacuous", 0) == 0]
        counts = {v: sum(c.verdict == v for c in cases) for v in ("pass", "fail", "skipped")}
        return {
            "total": len(cases),
            **counts,
            "vacuous": sum(c.vacuous for c in cases),
            "non_vacuous": sum(c.verdict == "pass" and not c.vacuous for c in cases),
            "by_proposition": dict(sorted(by_prop.items())),
            "missing_propositions": missing,
        }

    @property
    def ok(self) -> bool:
        s = self.summary()
        return s["fail"] == 0 and not s["missing_propositions"]

    def to_json(self, timestamp: bool = True) -> dict:
        doc = {
            "schema": "scorecard.v1",
            "level": self.level,
            "ok": self.ok,
            "summary": self.summary(),
            "cases": [c.to_json() for c in self.all_cases],
        }
        if timestamp:
            doc["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        return doc


def _error_case(name: str, proposition: str, message: str) -> DictionaryCase:
    return DictionaryCase(f"{proposition}/{name}", proposition, name,
                          directions=[Direction("validation", "fail", message)],
                          witness={"error": message})


def _skip_case(name: str, proposition: str, message: str) -> DictionaryCase:
    return DictionaryCase(f"{proposition}/{name}", proposition, name,
                          directions=[Direction("level", "skipped", message)])


def _run_ring_maps(maps, N, cases, errors):
    for label, f in maps:
        try:
            S = ring_subject(f, N, label)
        except LevelError as exc:
            cases.append(_skip_case(label, "level", str(exc)))
            continue
        cases.extend(check_subject(S))


def _run_rings(R: dict[str, FinCommRing], N: int, cases, errors):
    for name, A in R.items():
        cases.extend(check_perfectly_reduced(A))
        try:
            G = gal_finite_ring(A, N)
        except LevelError as exc:
            cases.append(_skip_case(name, "level", str(exc)))
            continue
        cases.append(check_axioms(G, f"Gal_{N}({name})"))
        cases.extend(check_local_irreducible(G, is_local(A), is_irreducible(A), f"Gal_{N}({name})"))
        pts = list(G.zariski.elements)
        for r in range(1, len(pts)):
            for sub in itertools.combinations(pts, r):
                cases.extend(check_open_closed(G, sub, f"Gal_{N}({name})"))


def _subsets_for(points: Sequence) -> list[tuple]:
    if len(points) <= 6:
        return [s for r in range(1, len(points) + 1) for s in itertools.combinations(points, r)]
    out = [(p,) for p in points]
    out += [tuple(q for q in points if q != p) for p in points]
    out += [tuple(points[:2]), tuple(points[:3]), tuple(points[-2:]), tuple(points)]
    return list(dict.fromkeys(out))


def _run_models(cfg: CorpusConfig, cases):
    primes = list(primerange(2, cfg.prime_bound + 1))
    for m in cfg.cyclotomic:
        S = cyclotomic_splitting(m, primes)
        G = gal_number_ring(S)
        gname = f"Z-model[m={m}]"
        cases.append(check_axioms(G, gname))
        loc, irr = _model_truths(G.zariski)
        cases.extend(check_local_irreducible(G, loc, irr, gname))
        for sub in _subsets_for(list(G.zariski.elements)):
            cases.extend(check_open_closed(G, sub, gname))
            sub_model, _ = restrict(G, sub)
            l2, i2 = _model_truths(sub_model.zariski)
            rname = f"{gname}|{{{','.join(map(str, sub))}}}"
            cases.append(check_axioms(sub_model, rname))
            cases.extend(check_local_irreducible(sub_model, l2, i2, rname))
        # immersions: closed points, their union, open complements, the generic point
        labels = [str(p) for p in primes]
        subsets = [(p,) for p in labels[:4]] + [tuple(labels)] + \
                  [tuple(q for q in G.zariski.elements if q != p) for p in labels[:4]] + [("eta",)]
        for sub in subsets:
            sname = f"{gname}:incl{{{','.join(sub)}}}"
            cases.extend(check_subject(inclusion_subject(G, sub, sname)))
        for H in cyclotomic_subgroups(m):
            Sj = relative_subject(m, H, primes)
            cases.extend(check_subject(Sj))
            cases.append(check_axioms(gal_relative_model(m, H, primes).source,
                                      f"O_K-model[m={m},H={{{','.join(map(str, sorted(H)))}}}]"))
            ram = [p for p in primes if m % p == 0]
            if ram:
                cases.extend(check_subject(relative_subject(m, H, primes, drop=ram)))
    for n in cfg.chains:
        P = chain_poset(n)
        G = gal_poset_model(P, f"chain{n}")
        cases.append(check_axioms(G))
        loc, irr = _model_truths(P)
        cases.extend(check_local_irreducible(G, loc, irr))
        for sub in _subsets_for(list(P.elements)):
            cases.extend(check_open_closed(G, sub))
    # two disjoint chains: neither local nor irreducible
    from .fincat import poset_from_relations
    V = poset_from_relations(["a0", "a1", "b0", "b1"], [("a0", "a1"), ("b0", "b1")])
    G = gal_poset_model(V, "two-chains")
    cases.append(check_axioms(G))
    cases.extend(check_local_irreducible(G, *_model_truths(V)))
    for sub in _subsets_for(list(V.elements)):
        cases.extend(check_open_closed(G, sub))


def run_suite(cfg: CorpusConfig | None = None, level: int | None = None) -> Scorecard:
    """The default corpus: rings, maps among them, cyclotomic and poset models."""
    cfg = cfg or CorpusConfig()
    N = level if level is not None else cfg.level
    t0 = time.perf_counter()
    cases: list[DictionaryCase] = []
    errors: list[DictionaryCase] = []
    R = default_rings(cfg)
    _run_rings(R, N, cases, errors)
    _run_ring_maps(_canonical_maps(R), N, cases, errors)
    _run_models(cfg, cases)
    return Scorecard(N, cases, errors, time.perf_counter() - t0)


def run_corpus(doc: dict, level: int = 12) -> Scorecard:
    """A user corpus (``corpus.v1``): rings, maps between them, cyclotomic models.

    Items failing validation are reported as failed cases and not checked further.
    """
    from .finring import ring_from_json

    t0 = time.perf_counter()
    cases: list[DictionaryCase] = []
    errors: list[DictionaryCase] = []
    R: dict[str, FinCommRing] = {}
    for k, item in enumerate(doc.get("rings", [])):
        name = str(item.get("name", f"ring{k}"))
        try:
            A = ring_from_json(item)
            bad = validate_ring(A)
            if bad:
                raise RingError(f"{bad[0].kind} at {bad[0].witness}")
            R[name] = A
        except (RingError, CategoryError, KeyError, TypeError, ValueError) as exc:
            errors.append(_error_case(name, "validation", f"invalid ring: {exc}"))
    _run_rings(R, level, cases, errors)
    maps = []
    for k, item in enumerate(doc.get("maps", [])):
        label = str(item.get("name", f"map{k}"))
        try:
            A, B = R[item["source"]], R[item["target"]]
            if item.get("canonical"):
                f = canonical_hom(A, B)
            else:
                f = RingHom(A, B, tuple(int(v) for v in item["map"]))
                bad = validate_hom(f)
                if bad:
                    raise RingError(f"not a ring map: {bad[0].kind} at {bad[0].witness}")
            maps.append((label, f))
        except (RingError, KeyError, TypeError, ValueError) as exc:
            errors.append(_error_case(label, "validation", f"invalid map: {exc}"))
    _run_ring_maps(maps, level, cases, errors)
    for k, item in enumerate(doc.get("cyclotomic", [])):
        label = str(item.get("name", f"cyclotomic{k}"))
        try:
            m, primes = int(item["m"]), [int(p) for p in item["primes"]]
            H = frozenset(int(h) for h in item.get("subgroup", [])) or None
            if H is None:
                G = gal_number_ring(cyclotomic_splitting(m, primes))
                cases.append(check_axioms(G, label))
                cases.extend(check_local_irreducible(G, *_model_truths(G.zariski), label))
            else:
                cases.extend(check_subject(relative_subject(m, H, primes, drop=item.get("drop", ()))))
        except (SplittingError, CategoryError, KeyError, TypeError, ValueError) as exc:
            errors.append(_error_case(label, "validation", f"invalid model: {exc}"))
    for item in doc.get("functors", []):
        from .io import functor_from_json
        label = str(item.get("name", "functor"))
        try:
            functor_from_json(item)
        except (CategoryError, KeyError, TypeError, ValueError) as exc:
            errors.append(_error_case(label, "validation", f"invalid functor: {exc}"))
    for item in doc.get("categories", []):
        from .io import category_from_json
        label = str(item.get("name", "category"))
        try:
            category_from_json(item)
        except (CategoryError, KeyError, TypeError, ValueError) as exc:
            errors.append(_error_case(label, "validation", f"invalid category: {exc}"))
    sc = Scorecard(level, cases, errors, time.perf_counter() - t0, required=())
    return sc


def case_names(cfg: CorpusConfig | None = None, level: int | None = None) -> list[str]:
    return [c.name for c in run_suite(cfg, level).all_cases]
