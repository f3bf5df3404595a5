"""Equivalence-invariant classifiers for functors between finite categories.

All fibration notions use the slice criterion: ``F`` is a right fibration when
every induced ``C_{/x} -> D_{/F(x)}`` is an equivalence, a left fibration when
every ``C_{x/} -> D_{F(x)/}`` is, and a Kan fibration when both hold.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Hashable

from .fincat import (
    CategoryError, FinCategory, FullSubcategory, Functor, Verdict, Violation,
    build_category, check_functor, components, coslice_functor,
    equivalence_certificate, full_subcategory, iso_class_map, slice_functor,
    validate_functor,
)


class PreconditionError(CategoryError):
    pass


# --------------------------------------------------------------------------
# sieves, cosieves, intervals


def is_sieve(S: FullSubcategory) -> Verdict:
    """Closed under incoming morphisms; the witness is an offending morphism."""
    C = S.parent
    for f in C.morphisms:
        if C.dst[f] in S.objects and C.src[f] not in S.objects:
            return Verdict(False, {"morphism": f, "from": C.src[f], "into": C.dst[f]})
    return Verdict(True)


def is_cosieve(S: FullSubcategory) -> Verdict:
    C = S.parent
    for f in C.morphisms:
        if C.src[f] in S.objects and C.dst[f] not in S.objects:
            return Verdict(False, {"morphism": f, "from": C.src[f], "into": C.dst[f]})
    return Verdict(True)


def is_interval(S: FullSubcategory) -> Verdict:
    """No morphism between objects of ``S`` factors through an object outside ``S``."""
    C = S.parent
    for a in C.morphisms:
        x, r = C.src[a], C.dst[a]
        if x not in S.objects or r in S.objects:
            continue
        for b in C.homs_out(r):
            if C.dst[b] in S.objects:
                return Verdict(False, {"factorization": [a, b], "through": r})
    return Verdict(True)


def fully_faithful(F: Functor) -> Verdict:
    C, D = F.source, F.target
    for x in C.objects:
        for y in C.objects:
            images = [F(f) for f in C.hom(x, y)]
            if len(set(images)) != len(images) or len(images) != len(D.hom(F.obj(x), F.obj(y))):
                return Verdict(False, {"hom": [x, y]})
    return Verdict(True)


def essential_image(F: Functor) -> FullSubcategory:
    cls = iso_class_map(F.target)
    hit = {cls[F.obj(x)] for x in F.source.objects}
    return FullSubcategory(F.target, frozenset(d for d in F.target.objects if cls[d] in hit))


def _inclusion_up_to_equivalence(F: Functor, test) -> Verdict:
    ff = fully_faithful(F)
    if not ff:
        return Verdict(False, {"not_fully_faithful": ff.witness})
    v = test(essential_image(F))
    return Verdict(v.ok, v.witness)


def is_sieve_inclusion(F: Functor) -> Verdict:
    """``F`` is equivalent to the inclusion of a sieve."""
    return _inclusion_up_to_equivalence(F, is_sieve)


def is_cosieve_inclusion(F: Functor) -> Verdict:
    return _inclusion_up_to_equivalence(F, is_cosieve)


def is_interval_inclusion(F: Functor) -> Verdict:
    return _inclusion_up_to_equivalence(F, is_interval)


# --------------------------------------------------------------------------
# comma fibres


@dataclass(frozen=True, eq=False)
class CommaFiber:
    base: int
    orientation: str
    category: FinCategory
    pairs: tuple[tuple[int, int], ...]

    def contractible_components(self) -> Verdict:
        return contractible_components(self.category)

    def size(self) -> int:
        return len(components(self.category))


def _fiber(F: Functor, d: int, pairs: list[tuple[int, int]], orientation: str, connects) -> CommaFiber:
    C = F.source
    pos = {p: i for i, p in enumerate(pairs)}
    by_obj: dict[int, list[tuple[int, int]]] = {}
    for p in pairs:
        by_obj.setdefault(p[0], []).append(p)
    mors = []
    for p in pairs:
        for a in C.homs_out(p[0]):
            for q in by_obj.get(C.dst[a], ()):
                if connects(a, p[1], q[1]):
                    mors.append((a, p, q))
    mid = {(p, q, a): i for i, (a, p, q) in enumerate(mors)}
    out: dict[tuple, list[int]] = {}
    for i, (a, p, q) in enumerate(mors):
        out.setdefault(p, []).append(i)
    table = {}
    for i, (a, p, q) in enumerate(mors):
        for j in out.get(q, ()):
            b, _, r = mors[j]
            table[j, i] = mid[p, r, C.table[b, a]]
    cat = FinCategory(
        n_objects=len(pairs),
        src=tuple(pos[p] for _, p, _ in mors), dst=tuple(pos[q] for _, _, q in mors),
        identity=tuple(mid[p, p, C.identity[p[0]]] for p in pairs),
        table=table, obj_labels=tuple(pairs), mor_labels=tuple(a for a, _, _ in mors),
    )
    return CommaFiber(d, orientation, cat, tuple(pairs))


def comma_fiber(F: Functor, d: int, orientation: str = "right") -> CommaFiber:
    """``(F ↓ d)`` for ``orientation="right"``, ``(d ↓ F)`` for ``"left"``.

    Objects are pairs ``(x, u)`` with ``u: F(x) -> d`` (resp. ``u: d -> F(x)``).
    """
    C, D = F.source, F.target
    D.check_object(d)
    if orientation == "right":
        pairs = [(x, u) for x in C.objects for u in D.hom(F.obj(x), d)]
        return _fiber(F, d, pairs, orientation,
                      lambda a, u, u2: D.table[u2, F(a)] == u)
    if orientation == "left":
        pairs = [(x, u) for x in C.objects for u in D.hom(d, F.obj(x))]
        return _fiber(F, d, pairs, orientation,
                      lambda a, u, u2: D.table[F(a), u] == u2)
    raise ValueError(f"orientation must be 'right' or 'left', not {orientation!r}")


def essential_fiber(F: Functor, d: int) -> CommaFiber:
    """Pairs ``(x, α)`` with ``α: F(x) ≅ d`` an isomorphism.

    This is the comma ``(F ↓ d)`` restricted to isomorphisms, i.e. the fibre
    of ``F`` after replacing it by an isofibration; it is invariant under
    equivalences of source and target.
    """
    C, D = F.source, F.target
    D.check_object(d)
    pairs = [(x, u) for x in C.objects for u in D.hom(F.obj(x), d) if D.is_iso(u)]
    return _fiber(F, d, pairs, "essential",
                  lambda a, u, u2: D.table[u2, F(a)] == u)


def contractible_components(K: FinCategory) -> Verdict:
    """Every component is a contractible groupoid (a 'singleton')."""
    for f in K.morphisms:
        if not K.is_iso(f):
            return Verdict(False, {"non_invertible": f})
    for x in K.objects:
        for y in K.objects:
            if len(K.hom(x, y)) > 1:
                return Verdict(False, {"parallel_pair": list(K.hom(x, y)[:2]), "objects": [x, y]})
    return Verdict(True)


@dataclass(frozen=True)
class FiberReport:
    ok: bool
    sizes: dict
    witnesses: dict

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        out = {}
        for d in sorted(set(self.sizes) | set(self.witnesses)):
            out[str(d)] = self.sizes[d] if d in self.sizes else {"nonfinite": self.witnesses[d]}
        return out


def is_finite_fibers(F: Functor, orientation: str = "essential") -> FiberReport:
    """Each fibre is a finite disjoint union of contractible groupoids.

    Sizes are ``π0`` of the fibre per target object.  The default uses
    :func:`essential_fiber`; ``"right"``/``"left"`` use the full comma categories.
    """
    sizes, witnesses = {}, {}
    for d in F.target.objects:
        fib = essential_fiber(F, d) if orientation == "essential" else comma_fiber(F, d, orientation)
        v = fib.contractible_components()
        if v:
            sizes[d] = fib.size()
        else:
            witnesses[d] = v.witness
    return FiberReport(not witnesses, sizes, witnesses)


def point_fibers(F: Functor) -> dict[int, int]:
    """Number of isomorphism classes of the source lying over each target object."""
    cs, cd = iso_class_map(F.source), iso_class_map(F.target)
    over: dict[int, set] = {}
    for x in F.source.objects:
        over.setdefault(cd[F.obj(x)], set()).add(cs[x])
    return {d: len(over.get(cd[d], ())) for d in F.target.objects}


# --------------------------------------------------------------------------
# fibrations


def is_right_fibration(F: Functor) -> Verdict:
    for x in F.source.objects:
        cert = equivalence_certificate(slice_functor(F, x))
        if not cert:
            return Verdict(False, {"object": x, "slice": cert.witness})
    return Verdict(True)


def is_left_fibration(F: Functor) -> Verdict:
    for x in F.source.objects:
        cert = equivalence_certificate(coslice_functor(F, x))
        if not cert:
            return Verdict(False, {"object": x, "coslice": cert.witness})
    return Verdict(True)


def is_kan_fibration(F: Functor) -> Verdict:
    left = is_left_fibration(F)
    if not left:
        return Verdict(False, {"left": left.witness})
    right = is_right_fibration(F)
    if not right:
        return Verdict(False, {"right": right.witness})
    return Verdict(True)


def specialization_lifting(F: Functor) -> Verdict:
    """Every ``ψ: y -> F(ξ)`` lifts to some ``φ: x -> ξ`` with ``F(φ) ∘ i = ψ``, ``i: y ≅ F(x)``.

    ``detail`` lists all counterexamples ``(ξ, ψ)``; the witness is the first.
    """
    C, D = F.source, F.target
    bad = []
    for xi in C.objects:
        for psi in D.homs_into(F.obj(xi)):
            y = D.src[psi]
            if not _lifts(F, xi, psi, y):
                bad.append((xi, psi))
    if bad:
        return Verdict(False, {"object": bad[0][0], "morphism": bad[0][1]}, bad)
    return Verdict(True, None, [])


def _lifts(F: Functor, xi: int, psi: int, y: int) -> bool:
    C, D = F.source, F.target
    for phi in C.homs_into(xi):
        for i in D.hom(y, F.obj(C.src[phi])):
            if D.is_iso(i) and D.table[F(phi), i] == psi:
                return True
    return False


# --------------------------------------------------------------------------
# Grothendieck construction and straightening


@dataclass(frozen=True, eq=False)
class SetValuedDiagram:
    """A contravariant functor ``D^op -> FinSet``.

    ``sets[d]`` lists the elements over ``d``; ``action[u][k]`` is the index in
    ``sets[src u]`` of the image of ``sets[dst u][k]`` under ``G(u)``.
    """

    base: FinCategory
    sets: tuple[tuple[Hashable, ...], ...]
    action: tuple[tuple[int, ...], ...]


def validate_diagram(G: SetValuedDiagram) -> list[Violation]:
    D = G.base
    if len(G.sets) != D.n_objects or len(G.action) != D.n_morphisms:
        return [Violation("shape", (), "one set per object and one map per morphism")]
    report = []
    for u in D.morphisms:
        a = G.action[u]
        if len(a) != len(G.sets[D.dst[u]]) or any(not 0 <= k < len(G.sets[D.src[u]]) for k in a):
            report.append(Violation("map_shape", (u,), f"G({u}) is not a map G(dst) -> G(src)"))
    if report:
        return report
    for d in D.objects:
        if tuple(G.action[D.identity[d]]) != tuple(range(len(G.sets[d]))):
            report.append(Violation("identity", (d,), f"G(id_{d}) is not the identity"))
    for (g, f), gf in D.table.items():
        if tuple(G.action[gf]) != tuple(G.action[f][k] for k in G.action[g]):
            report.append(Violation("composition", (g, f), f"G({g}∘{f}) != G({f})∘G({g})"))
    return report


def grothendieck(G: SetValuedDiagram) -> Functor:
    """Projection ``∫G -> D`` from the category of elements.

    A morphism ``(d, s) -> (d', s')`` is ``u: d -> d'`` with ``G(u)(s') = s``.
    """
    report = validate_diagram(G)
    if report:
        raise PreconditionError(f"diagram is not functorial: {report[0].kind} at {report[0].witness}")
    D = G.base
    objs = [(d, k) for d in D.objects for k in range(len(G.sets[d]))]
    mors = [((u, k), (D.src[u], G.action[u][k]), (D.dst[u], k))
            for u in D.morphisms for k in range(len(G.sets[D.dst[u]]))]
    E = build_category(
        objs, mors, {(d, k): (D.identity[d], k) for d, k in objs},
        lambda g, f: (D.table[g[0], f[0]], g[1]),
        obj_labels=[(d, G.sets[d][k]) for d, k in objs],
    )
    return Functor(E, D, tuple(d for d, _ in objs), tuple(key[0] for key, _, _ in mors))


@dataclass(frozen=True)
class _Straightening:
    diagram: SetValuedDiagram
    class_of: dict   # (d, (x, α)) -> index in diagram.sets[d]


def _straighten(F: Functor) -> _Straightening:
    right = is_right_fibration(F)
    if not right:
        raise PreconditionError(f"not a right fibration: {right.witness}")
    fibers = is_finite_fibers(F)
    if not fibers:
        raise PreconditionError(f"fibres are not discrete: {fibers.witnesses}")
    C, D = F.source, F.target
    sets, class_of = [], {}
    for d in D.objects:
        fib = essential_fiber(F, d)
        reps = []
        for k, comp in enumerate(components(fib.category)):
            reps.append(fib.pairs[comp[0]])
            for i in comp:
                class_of[d, fib.pairs[i]] = k
        sets.append(tuple(reps))
    action = []
    for u in D.morphisms:
        d, d2 = D.src[u], D.dst[u]
        row = []
        for x2, a2 in sets[d2]:
            found = set()
            for phi in C.homs_into(x2):
                x = C.src[phi]
                lhs = D.table[a2, F(phi)]
                for a in D.hom(F.obj(x), d):
                    if D.is_iso(a) and D.table[u, a] == lhs:
                        found.add(class_of[d, (x, a)])
            if len(found) != 1:
                raise PreconditionError(f"transport along {u} is not well defined ({sorted(found)})")
            row.append(found.pop())
        action.append(tuple(row))
    return _Straightening(SetValuedDiagram(D, tuple(sets), tuple(action)), class_of)


def straighten(F: Functor) -> SetValuedDiagram:
    """The presheaf of fibres of a right fibration with discrete fibres.

    ``G(d)`` is ``π0`` of the essential fibre over ``d``, each element labelled
    by its least representative ``(x, α)``.
    """
    return _straighten(F).diagram


def straightening_comparison(F: Functor) -> tuple[Functor, Functor]:
    """``(Φ, P)`` with ``P: ∫ straighten(F) -> D`` and ``Φ: C -> ∫ straighten(F)`` over ``D``."""
    st = _straighten(F)
    P = grothendieck(st.diagram)
    C, D, E = F.source, F.target, P.source
    opos = {(P.obj(e), _index_of(E, e)): e for e in E.objects}
    mpos = {(P(m), E.dst[m]): m for m in E.morphisms}
    on_obj = []
    for x in C.objects:
        d = F.obj(x)
        on_obj.append(opos[d, st.class_of[d, (x, D.identity[d])]])
    on_mor = tuple(mpos[F(a), on_obj[C.dst[a]]] for a in C.morphisms)
    return Functor(C, E, tuple(on_obj), on_mor), P


def _index_of(E: FinCategory, e: int) -> int:
    # objects of ∫G are enumerated base-object-major, so the local index is a count
    d = E.obj_labels[e][0]
    return sum(1 for e2 in range(e) if E.obj_labels[e2][0] == d)


def grothendieck_straighten_equivalence(F: Functor) -> Verdict:
    """``∫ straighten(F) ≃ F`` over ``D``: the comparison is a functor over ``D`` and an equivalence."""
    Phi, P = straightening_comparison(F)
    report = validate_functor(Phi)
    if report:
        return Verdict(False, {"comparison_invalid": report[0].kind})
    if any(P.obj(Phi.obj(x)) != F.obj(x) for x in F.source.objects) or \
            any(P(Phi(a)) != F(a) for a in F.source.morphisms):
        return Verdict(False, {"not_over_base": True})
    cert = equivalence_certificate(Phi)
    return Verdict(cert.ok, cert.witness)


def straighten_grothendieck_iso(G: SetValuedDiagram) -> Verdict:
    """``straighten(∫G) ≅ G`` via ``s ↦ [((d, s), id_d)]``, checked for bijectivity and naturality."""
    P = grothendieck(G)
    st = _straighten(P)
    D, E = G.base, P.source
    opos = {}
    for e in E.objects:
        opos[P.obj(e), _index_of(E, e)] = e
    bij = []
    for d in D.objects:
        b = [st.class_of[d, (opos[d, k], D.identity[d])] for k in range(len(G.sets[d]))]
        if sorted(b) != list(range(len(st.diagram.sets[d]))):
            return Verdict(False, {"not_bijective_at": d})
        bij.append(b)
    H = st.diagram
    for u in D.morphisms:
        d, d2 = D.src[u], D.dst[u]
        for k in range(len(G.sets[d2])):
            if bij[d][G.action[u][k]] != H.action[u][bij[d2][k]]:
                return Verdict(False, {"not_natural_at": [u, k]})
    return Verdict(True, None, bij)


# --------------------------------------------------------------------------
# classification report


@dataclass
class ClassificationReport:
    functor: Any
    sieve: bool
    cosieve: bool
    interval: bool
    left: bool
    right: bool
    kan: bool
    equivalence: bool
    fibers: FiberReport
    point_fibers: dict
    lifting: bool
    witnesses: dict = field(default_factory=dict)
    target_labels: tuple = ()

    def _key(self, d) -> str:
        return str(self.target_labels[int(d)]) if self.target_labels else str(d)

    def to_json(self) -> dict:
        return {
            "schema": "report.v1",
            "functor": self.functor,
            "sieve": self.sieve, "cosieve": self.cosieve, "interval": self.interval,
            "left": self.left, "right": self.right, "kan": self.kan,
            "equivalence": self.equivalence,
            "fibers": {self._key(d): v for d, v in self.fibers.to_json().items()},
            "point_fibers": {self._key(d): n for d, n in sorted(self.point_fibers.items())},
            "lifting": self.lifting,
            "witnesses": self.witnesses,
        }


def classify(F: Functor, ref: Any = None) -> ClassificationReport:
    check_functor(F)
    verdicts = {
        "sieve": is_sieve_inclusion(F),
        "cosieve": is_cosieve_inclusion(F),
        "interval": is_interval_inclusion(F),
        "left": is_left_fibration(F),
        "right": is_right_fibration(F),
    }
    verdicts["kan"] = is_kan_fibration(F)
    eq = equivalence_certificate(F)
    verdicts["equivalence"] = Verdict(eq.ok, eq.witness)
    verdicts["lifting"] = specialization_lifting(F)
    witnesses = {k: v.witness for k, v in verdicts.items() if not v}
    return ClassificationReport(
        functor=ref, fibers=is_finite_fibers(F), point_fibers=point_fibers(F),
        witnesses=witnesses, target_labels=tuple(F.target.obj_label(d) for d in F.target.objects),
        **{k: v.ok for k, v in verdicts.items()},
    )


def restrict_functor(F: Functor, target_objects) -> tuple[Functor, Functor, Functor]:
    """Restrict ``F`` to the full subcategory on ``target_objects`` and its preimage.

    Returns ``(F', i_source, i_target)`` where the ``i`` are the two inclusions.
    """
    keep = set(target_objects)
    it = full_subcategory(F.target, keep)
    isrc = full_subcategory(F.source, [x for x in F.source.objects if F.obj(x) in keep])
    opos = {d: i for i, d in enumerate(it.on_objects)}
    mpos = {u: i for i, u in enumerate(it.on_morphisms)}
    Fr = Functor(isrc.source, it.source,
                 tuple(opos[F.obj(x)] for x in isrc.on_objects),
                 tuple(mpos[F(f)] for f in isrc.on_morphisms))
    return check_functor(Fr), isrc, it
