"""Finite 1-categories stored as explicit composition tables.

Objects and morphisms are dense integer ids ``0..n-1``.  Composition is a flat
mapping ``(g, f) -> g∘f`` defined exactly on composable pairs
(``dst(f) == src(g)``).  Hom-sets are derived from the morphism list.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence


class CategoryError(ValueError):
    """Malformed category or functor data, or an unknown id."""


class CapExceeded(CategoryError):
    pass


class NotAPoset(CategoryError):
    def __init__(self, witness: tuple[int, int]):
        super().__init__(f"objects {witness[0]} and {witness[1]} map to each other "
                         "but are not isomorphic")
        self.witness = witness


@dataclass(frozen=True)
class Caps:
    objects: int = 64
    morphisms: int = 4096
    ring: int = 4096


def current_caps() -> Caps:
    """Size caps, overridable by ``EXODROMY_CAPS="objects=128,morphisms=9000"``."""
    raw = os.environ.get("EXODROMY_CAPS", "").strip()
    if not raw:
        return Caps()
    values = {}
    for item in raw.split(","):
        key, _, val = item.partition("=")
        key = key.strip()
        if key not in ("objects", "morphisms", "ring"):
            raise CategoryError(f"unknown cap {key!r} in EXODROMY_CAPS")
        values[key] = int(val)
    return Caps(**values)


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome with an optional witness explaining a negative answer."""

    ok: bool
    witness: Any = None
    detail: Any = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple
    message: str = ""


# --------------------------------------------------------------------------
# categories


@dataclass(frozen=True, eq=False)
class FinCategory:
    n_objects: int
    src: tuple[int, ...]
    dst: tuple[int, ...]
    identity: tuple[int, ...]
    table: Mapping[tuple[int, int], int]
    obj_labels: tuple = ()
    mor_labels: tuple = ()

    @property
    def objects(self) -> range:
        return range(self.n_objects)

    @property
    def morphisms(self) -> range:
        return range(len(self.src))

    @property
    def n_morphisms(self) -> int:
        return len(self.src)

    def compose(self, g: int, f: int) -> int:
        """``g ∘ f``."""
        try:
            return self.table[g, f]
        except KeyError:
            raise CategoryError(f"composite of {g} after {f} is undefined") from None

    def obj_label(self, x: int):
        return self.obj_labels[x] if self.obj_labels else x

    def mor_label(self, f: int):
        return self.mor_labels[f] if self.mor_labels else f

    def check_object(self, x: int) -> None:
        if not (isinstance(x, int) and 0 <= x < self.n_objects):
            raise CategoryError(f"unknown object {x!r}")

    def check_morphism(self, f: int) -> None:
        if not (isinstance(f, int) and 0 <= f < len(self.src)):
            raise CategoryError(f"unknown morphism {f!r}")

    @cached_property
    def _hom_index(self) -> dict[tuple[int, int], tuple[int, ...]]:
        index: dict[tuple[int, int], list[int]] = {}
        for f in self.morphisms:
            index.setdefault((self.src[f], self.dst[f]), []).append(f)
        return {k: tuple(v) for k, v in index.items()}

    @cached_property
    def _into(self) -> tuple[tuple[int, ...], ...]:
        into: list[list[int]] = [[] for _ in self.objects]
        for f in self.morphisms:
            into[self.dst[f]].append(f)
        return tuple(tuple(v) for v in into)

    @cached_property
    def _out(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.objects]
        for f in self.morphisms:
            out[self.src[f]].append(f)
        return tuple(tuple(v) for v in out)

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        return self._hom_index.get((x, y), ())

    def homs_into(self, x: int) -> tuple[int, ...]:
        return self._into[x]

    def homs_out(self, x: int) -> tuple[int, ...]:
        return self._out[x]

    @cached_property
    def inverses(self) -> tuple[int | None, ...]:
        inv: list[int | None] = []
        for f in self.morphisms:
            x, y = self.src[f], self.dst[f]
            found = None
            for g in self.hom(y, x):
                if self.table.get((g, f)) == self.identity[x] and \
                        self.table.get((f, g)) == self.identity[y]:
                    found = g
                    break
            inv.append(found)
        return tuple(inv)

    def is_iso(self, f: int) -> bool:
        return self.inverses[f] is not None

    def is_groupoid(self) -> bool:
        return all(g is not None for g in self.inverses)

    def __repr__(self) -> str:
        return f"FinCategory({self.n_objects} objects, {self.n_morphisms} morphisms)"


def build_category(objects: Sequence[Hashable],
                   morphisms: Sequence[tuple[Hashable, Hashable, Hashable]],
                   identity: Mapping[Hashable, Hashable],
                   compose: Callable[[Hashable, Hashable], Hashable],
                   obj_labels: Sequence | None = None,
                   mor_labels: Sequence | None = None) -> FinCategory:
    """Assemble a table from keyed data.

    ``morphisms`` lists ``(key, source_key, target_key)``; ``compose(g, f)``
    returns the key of ``g∘f`` for composable keys.  Ids follow list order.
    """
    obj_id = {o: i for i, o in enumerate(objects)}
    if len(obj_id) != len(objects):
        raise CategoryError("duplicate object keys")
    mor_id = {}
    src, dst = [], []
    for key, s, t in morphisms:
        if key in mor_id:
            raise CategoryError(f"duplicate morphism key {key!r}")
        mor_id[key] = len(src)
        src.append(obj_id[s])
        dst.append(obj_id[t])
    keys = [m[0] for m in morphisms]
    out: dict[int, list[int]] = {}
    for f, s in enumerate(src):
        out.setdefault(s, []).append(f)
    table = {}
    for f in range(len(src)):
        for g in out.get(dst[f], ()):
            table[g, f] = mor_id[compose(keys[g], keys[f])]
    ident = tuple(mor_id[identity[o]] for o in objects)
    return FinCategory(
        n_objects=len(objects), src=tuple(src), dst=tuple(dst), identity=ident,
        table=table,
        obj_labels=tuple(obj_labels) if obj_labels is not None else tuple(objects),
        mor_labels=tuple(mor_labels) if mor_labels is not None else tuple(keys),
    )


def validate_category(C: FinCategory) -> list[Violation]:
    """Every violated category axiom, each with a witness; empty iff ``C`` is a category."""
    report: list[Violation] = []
    n, m = C.n_objects, C.n_morphisms
    if len(C.dst) != m:
        return [Violation("shape", (), "src and dst lists differ in length")]
    for f in C.morphisms:
        if not (0 <= C.src[f] < n and 0 <= C.dst[f] < n):
            report.append(Violation("endpoint_range", (f,), f"morphism {f} has unknown endpoints"))
    if len(C.identity) != n:
        report.append(Violation("shape", (), "identity must list one morphism per object"))
    if report:
        return report
    for x in C.objects:
        i = C.identity[x]
        if not (0 <= i < m) or C.src[i] != x or C.dst[i] != x:
            report.append(Violation("identity_endpoints", (x,), f"identity of {x} is not an endomorphism of {x}"))
    if report:
        return report

    for (g, f), gf in C.table.items():
        if not (0 <= g < m and 0 <= f < m) or C.dst[f] != C.src[g]:
            report.append(Violation("non_composable_entry", (g, f), f"table defines {g}∘{f} for a non-composable pair"))
        elif not (0 <= gf < m) or C.src[gf] != C.src[f] or C.dst[gf] != C.dst[g]:
            report.append(Violation("bad_endpoints", (g, f), f"{g}∘{f} = {gf} has wrong endpoints"))
    for f in C.morphisms:
        for g in C.homs_out(C.dst[f]):
            if (g, f) not in C.table:
                report.append(Violation("missing_composite", (g, f), f"{g}∘{f} is undefined"))
    if report:
        return report

    for f in C.morphisms:
        x, y = C.src[f], C.dst[f]
        if C.table[C.identity[y], f] != f:
            report.append(Violation("left_identity", (f,), f"id_{y}∘{f} != {f}"))
        if C.table[f, C.identity[x]] != f:
            report.append(Violation("right_identity", (f,), f"{f}∘id_{x} != {f}"))
    table = C.table
    for f in C.morphisms:
        for g in C.homs_out(C.dst[f]):
            gf = table[g, f]
            for h in C.homs_out(C.dst[g]):
                if table[h, gf] != table[table[h, g], f]:
                    report.append(Violation("associativity", (h, g, f), f"({h}∘{g})∘{f} != {h}∘({g}∘{f})"))
    return report


class InvalidCategory(CategoryError):
    def __init__(self, report: list[Violation]):
        first = report[0]
        super().__init__(f"{first.kind} at {first.witness}: {first.message}")
        self.report = report


def check_category(C: FinCategory) -> FinCategory:
    report = validate_category(C)
    if report:
        raise InvalidCategory(report)
    return C


# --------------------------------------------------------------------------
# elementary predicates


def is_mono(C: FinCategory, f: int) -> bool:
    return mono_witness(C, f) is None


def mono_witness(C: FinCategory, f: int) -> tuple[int, int] | None:
    """A pair ``g != h`` with ``f∘g == f∘h``, or None when ``f`` is mono."""
    C.check_morphism(f)
    a = C.src[f]
    for w in C.objects:
        seen: dict[int, int] = {}
        for g in C.hom(w, a):
            fg = C.table[f, g]
            if fg in seen:
                return seen[fg], g
            seen[fg] = g
    return None


def all_mono(C: FinCategory) -> Verdict:
    for f in C.morphisms:
        w = mono_witness(C, f)
        if w is not None:
            return Verdict(False, {"morphism": f, "pair": w})
    return Verdict(True)


def endos_are_autos(C: FinCategory) -> bool:
    return non_invertible_endo(C) is None


def non_invertible_endo(C: FinCategory) -> int | None:
    for f in C.morphisms:
        if C.src[f] == C.dst[f] and not C.is_iso(f):
            return f
    return None


def has_weakly_initial(C: FinCategory) -> bool:
    return bool(weakly_initial_objects(C))


def has_weakly_terminal(C: FinCategory) -> bool:
    return bool(weakly_terminal_objects(C))


def weakly_initial_objects(C: FinCategory) -> list[int]:
    return [x for x in C.objects if all(C.hom(x, y) for y in C.objects)]


def weakly_terminal_objects(C: FinCategory) -> list[int]:
    return [x for x in C.objects if all(C.hom(y, x) for y in C.objects)]


# --------------------------------------------------------------------------
# slices


def slice_category(C: FinCategory, x: int) -> FinCategory:
    """``C_{/x}``: objects are morphisms into ``x``; labels record the underlying morphisms of ``C``."""
    C.check_object(x)
    objs = list(C.homs_into(x))
    pos = {f: i for i, f in enumerate(objs)}
    mors: list[tuple[int, int, int]] = []
    for f in objs:
        for f2 in objs:
            for u in C.hom(C.src[f], C.src[f2]):
                if C.table[f2, u] == f:
                    mors.append((u, f, f2))
    return _comma_like(objs, pos, mors, C, lambda f: C.identity[C.src[f]])


def coslice_category(C: FinCategory, x: int) -> FinCategory:
    """``C_{x/}``: objects are morphisms out of ``x``."""
    C.check_object(x)
    objs = list(C.homs_out(x))
    pos = {f: i for i, f in enumerate(objs)}
    mors: list[tuple[int, int, int]] = []
    for f in objs:
        for f2 in objs:
            for u in C.hom(C.dst[f], C.dst[f2]):
                if C.table[u, f] == f2:
                    mors.append((u, f, f2))
    return _comma_like(objs, pos, mors, C, lambda f: C.identity[C.dst[f]])


def _comma_like(objs, pos, mors, C, ident_of) -> FinCategory:
    # morphism determined by (source object, target object, underlying u)
    mid = {(a, b, u): i for i, (u, a, b) in enumerate(mors)}
    out: dict[int, list[int]] = {}
    for i, (u, a, b) in enumerate(mors):
        out.setdefault(a, []).append(i)
    table = {}
    for i, (u, a, b) in enumerate(mors):
        for j in out.get(b, ()):
            v, _, c = mors[j]
            table[j, i] = mid[a, c, C.table[v, u]]
    identity = tuple(mid[f, f, ident_of(f)] for f in objs)
    return FinCategory(
        n_objects=len(objs),
        src=tuple(pos[a] for _, a, _ in mors),
        dst=tuple(pos[b] for _, _, b in mors),
        identity=identity, table=table,
        obj_labels=tuple(objs), mor_labels=tuple(u for u, _, _ in mors),
    )


# --------------------------------------------------------------------------
# functors


@dataclass(frozen=True, eq=False)
class Functor:
    source: FinCategory
    target: FinCategory
    on_objects: tuple[int, ...]
    on_morphisms: tuple[int, ...]

    def __call__(self, f: int) -> int:
        return self.on_morphisms[f]

    def obj(self, x: int) -> int:
        return self.on_objects[x]

    def __repr__(self) -> str:
        return f"Functor({self.source!r} -> {self.target!r})"


def validate_functor(F: Functor) -> list[Violation]:
    C, D = F.source, F.target
    report: list[Violation] = []
    if len(F.on_objects) != C.n_objects or len(F.on_morphisms) != C.n_morphisms:
        return [Violation("shape", (), "object/morphism maps must cover the source")]
    for x in C.objects:
        if not 0 <= F.on_objects[x] < D.n_objects:
            report.append(Violation("object_range", (x,), f"object {x} maps outside the target"))
    for f in C.morphisms:
        if not 0 <= F.on_morphisms[f] < D.n_morphisms:
            report.append(Violation("morphism_range", (f,), f"morphism {f} maps outside the target"))
    if report:
        return report
    for f in C.morphisms:
        Ff = F.on_morphisms[f]
        if D.src[Ff] != F.on_objects[C.src[f]] or D.dst[Ff] != F.on_objects[C.dst[f]]:
            report.append(Violation("endpoints", (f,), f"F({f}) does not connect F(src) to F(dst)"))
    for x in C.objects:
        if F.on_morphisms[C.identity[x]] != D.identity[F.on_objects[x]]:
            report.append(Violation("identity", (x,), f"F(id_{x}) is not an identity"))
    if report:
        return report
    for (g, f), gf in C.table.items():
        if F.on_morphisms[gf] != D.table.get((F.on_morphisms[g], F.on_morphisms[f])):
            report.append(Violation("composition", (g, f), f"F({g}∘{f}) != F({g})∘F({f})"))
    return report


class InvalidFunctor(CategoryError):
    def __init__(self, report: list[Violation]):
        first = report[0]
        super().__init__(f"{first.kind} at {first.witness}: {first.message}")
        self.report = report


def check_functor(F: Functor) -> Functor:
    report = validate_functor(F)
    if report:
        raise InvalidFunctor(report)
    return F


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, tuple(C.objects), tuple(C.morphisms))


def compose_functors(G: Functor, F: Functor) -> Functor:
    """``G ∘ F``."""
    if F.target is not G.source:
        raise CategoryError("functors are not composable")
    return Functor(F.source, G.target,
                   tuple(G.on_objects[y] for y in F.on_objects),
                   tuple(G.on_morphisms[g] for g in F.on_morphisms))


def slice_functor(F: Functor, x: int) -> Functor:
    """The induced ``C_{/x} -> D_{/F(x)}``."""
    return _induced(F, slice_category(F.source, x), slice_category(F.target, F.obj(x)))


def coslice_functor(F: Functor, x: int) -> Functor:
    return _induced(F, coslice_category(F.source, x), coslice_category(F.target, F.obj(x)))


def _induced(F: Functor, S: FinCategory, T: FinCategory) -> Functor:
    t_obj = {f: i for i, f in enumerate(T.obj_labels)}
    t_mor = {(T.src[j], T.dst[j], T.mor_labels[j]): j for j in T.morphisms}
    on_obj = tuple(t_obj[F(f)] for f in S.obj_labels)
    on_mor = tuple(t_mor[on_obj[S.src[i]], on_obj[S.dst[i]], F(S.mor_labels[i])]
                   for i in S.morphisms)
    return Functor(S, T, on_obj, on_mor)


# --------------------------------------------------------------------------
# isomorphism classes and equivalences


def iso_class_map(C: FinCategory) -> tuple[int, ...]:
    """Representative (least object id) of each object's isomorphism class."""
    parent = list(C.objects)

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for f in C.morphisms:
        if C.is_iso(f):
            a, b = find(C.src[f]), find(C.dst[f])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return tuple(find(x) for x in C.objects)


def components(C: FinCategory) -> list[list[int]]:
    """Connected components (ignoring direction), ordered by least member."""
    parent = list(C.objects)

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for f in C.morphisms:
        a, b = find(C.src[f]), find(C.dst[f])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for x in C.objects:
        groups.setdefault(find(x), []).append(x)
    return [groups[k] for k in sorted(groups)]


def equivalence_certificate(F: Functor, caps: Caps | None = None) -> Verdict:
    """Decide whether ``F`` is fully faithful and essentially surjective.

    On success ``detail`` maps every target object to the least source object
    whose image is isomorphic to it (a quasi-inverse on objects).
    """
    caps = caps or current_caps()
    for cat in (F.source, F.target):
        if cat.n_objects > caps.objects or cat.n_morphisms > caps.morphisms:
            raise CapExceeded(f"{cat!r} exceeds caps {caps}")
    C, D = F.source, F.target
    for x in C.objects:
        for y in C.objects:
            images = [F(f) for f in C.hom(x, y)]
            if len(set(images)) != len(images):
                return Verdict(False, {"not_faithful": [x, y]})
            if len(images) != len(D.hom(F.obj(x), F.obj(y))):
                return Verdict(False, {"not_full": [x, y]})
    cls = iso_class_map(D)
    hit: dict[int, int] = {}
    for x in C.objects:
        hit.setdefault(cls[F.obj(x)], x)
    correspondence = {}
    for d in D.objects:
        if cls[d] not in hit:
            return Verdict(False, {"not_essentially_surjective": d})
        correspondence[d] = hit[cls[d]]
    return Verdict(True, None, correspondence)


def is_equivalence(F: Functor, caps: Caps | None = None) -> bool:
    return equivalence_certificate(F, caps).ok


# --------------------------------------------------------------------------
# posets


@dataclass(frozen=True, eq=False)
class FinPoset:
    elements: tuple
    leq: frozenset

    def le(self, a, b) -> bool:
        return (a, b) in self.leq

    def upper_bounds(self, items: Iterable) -> list:
        items = list(items)
        return [u for u in self.elements if all((a, u) in self.leq for a in items)]


def validate_poset(P: FinPoset) -> list[Violation]:
    report = []
    elems = set(P.elements)
    for a, b in P.leq:
        if a not in elems or b not in elems:
            report.append(Violation("unknown_element", (a, b)))
    for a in P.elements:
        if (a, a) not in P.leq:
            report.append(Violation("reflexivity", (a,)))
    for a, b in P.leq:
        if a != b and (b, a) in P.leq:
            report.append(Violation("antisymmetry", (a, b)))
        for c in P.elements:
            if (b, c) in P.leq and (a, c) not in P.leq:
                report.append(Violation("transitivity", (a, b, c)))
    return report


def poset_from_relations(elements: Sequence, relations: Iterable[tuple]) -> FinPoset:
    """Reflexive-transitive closure of the given relations."""
    elements = tuple(elements)
    leq = {(a, a) for a in elements} | set(relations)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(leq), repeat=2):
            if b == c and (a, d) not in leq:
                leq.add((a, d))
                changed = True
    return FinPoset(elements, frozenset(leq))


def chain_poset(n: int) -> FinPoset:
    return poset_from_relations(range(n), [(i, i + 1) for i in range(n - 1)])


def has_finite_nonempty_joins(P: FinPoset) -> bool:
    return join_failure(P) is None


def join_failure(P: FinPoset) -> tuple | None:
    # pairwise joins plus associativity of join give all finite nonempty joins
    for a, b in itertools.combinations_with_replacement(P.elements, 2):
        ub = P.upper_bounds((a, b))
        least = [u for u in ub if all((u, v) in P.leq for v in ub)]
        if not least:
            return (a, b)
    return None


def poset_category(P: FinPoset) -> FinCategory:
    pairs = sorted(P.leq, key=lambda ab: (P.elements.index(ab[0]), P.elements.index(ab[1])))
    return build_category(
        list(P.elements), [((a, b), a, b) for a, b in pairs],
        {a: (a, a) for a in P.elements},
        lambda g, f: (f[0], g[1]),
    )


def iso_class_poset(C: FinCategory) -> FinPoset:
    """Poset of isomorphism classes, ``[x] <= [y]`` iff some ``x -> y`` exists.

    Elements are class representatives (least object id).  Raises
    :class:`NotAPoset` with a witness pair when the relation is not antisymmetric.
    """
    cls = iso_class_map(C)
    reps = tuple(sorted(set(cls)))
    rel = {(cls[C.src[f]], cls[C.dst[f]]) for f in C.morphisms}
    for a, b in sorted(rel):
        if a != b and (b, a) in rel:
            x = next(C.src[f] for f in C.morphisms if (cls[C.src[f]], cls[C.dst[f]]) == (a, b))
            y = next(C.src[f] for f in C.morphisms if (cls[C.src[f]], cls[C.dst[f]]) == (b, a))
            raise NotAPoset((x, y))
    P = poset_from_relations(reps, rel)
    if validate_poset(P):
        # closure created a cycle through several classes
        bad = validate_poset(P)[0].witness
        raise NotAPoset((bad[0], bad[1]))
    return P


# --------------------------------------------------------------------------
# constructions


def group_category(table: Sequence[Sequence[int]], labels: Sequence | None = None) -> FinCategory:
    """``B(G)`` for a group given by its multiplication table with identity at index 0."""
    n = len(table)
    return FinCategory(
        n_objects=1, src=(0,) * n, dst=(0,) * n, identity=(0,),
        table={(g, f): table[g][f] for g in range(n) for f in range(n)},
        obj_labels=("*",), mor_labels=tuple(labels) if labels else tuple(range(n)),
    )


def cyclic_category(n: int) -> FinCategory:
    """``B(Z/n)``; morphism ``k`` is the residue ``k``."""
    return group_category([[(a + b) % n for b in range(n)] for a in range(n)])


def group_hom_functor(C: FinCategory, D: FinCategory, images: Sequence[int]) -> Functor:
    return Functor(C, D, (0,), tuple(images))


def disjoint_union(*cats: FinCategory) -> FinCategory:
    src, dst, ident, table, olab, mlab = [], [], [], {}, [], []
    o_off = m_off = 0
    for k, C in enumerate(cats):
        src += [s + o_off for s in C.src]
        dst += [d + o_off for d in C.dst]
        ident += [i + m_off for i in C.identity]
        for (g, f), gf in C.table.items():
            table[g + m_off, f + m_off] = gf + m_off
        olab += [(k, C.obj_label(x)) for x in C.objects]
        mlab += [(k, C.mor_label(f)) for f in C.morphisms]
        o_off += C.n_objects
        m_off += C.n_morphisms
    return FinCategory(o_off, tuple(src), tuple(dst), tuple(ident), table,
                       tuple(olab), tuple(mlab))


def product_category(C: FinCategory, D: FinCategory) -> FinCategory:
    objs = [(x, y) for x in C.objects for y in D.objects]
    mors = [((f, g), (C.src[f], D.src[g]), (C.dst[f], D.dst[g]))
            for f in C.morphisms for g in D.morphisms]
    return build_category(
        objs, mors, {(x, y): (C.identity[x], D.identity[y]) for x, y in objs},
        lambda a, b: (C.table[a[0], b[0]], D.table[a[1], b[1]]),
    )


def opposite(C: FinCategory) -> FinCategory:
    return FinCategory(C.n_objects, C.dst, C.src, C.identity,
                       {(f, g): gf for (g, f), gf in C.table.items()},
                       C.obj_labels, C.mor_labels)


def opposite_functor(F: Functor) -> Functor:
    return Functor(opposite(F.source), opposite(F.target), F.on_objects, F.on_morphisms)


@dataclass(frozen=True, eq=False)
class FullSubcategory:
    parent: FinCategory
    objects: frozenset

    def __post_init__(self):
        for x in self.objects:
            self.parent.check_object(x)

    def category(self) -> FinCategory:
        return self.inclusion().source

    def inclusion(self) -> Functor:
        return full_subcategory(self.parent, self.objects)


def full_subcategory(C: FinCategory, objs: Iterable[int]) -> Functor:
    """Inclusion functor of the full subcategory on ``objs``."""
    keep = sorted(set(objs))
    pos = {x: i for i, x in enumerate(keep)}
    mors = [f for f in C.morphisms if C.src[f] in pos and C.dst[f] in pos]
    mpos = {f: i for i, f in enumerate(mors)}
    S = FinCategory(
        n_objects=len(keep),
        src=tuple(pos[C.src[f]] for f in mors), dst=tuple(pos[C.dst[f]] for f in mors),
        identity=tuple(mpos[C.identity[x]] for x in keep),
        table={(mpos[g], mpos[f]): mpos[gf] for (g, f), gf in C.table.items()
               if g in mpos and f in mpos},
        obj_labels=tuple(C.obj_label(x) for x in keep),
        mor_labels=tuple(C.mor_label(f) for f in mors),
    )
    return Functor(S, C, tuple(keep), tuple(mors))


def inflate(C: FinCategory, copies: Sequence[int]) -> tuple[FinCategory, Functor, Functor]:
    """Replace object ``x`` by ``copies[x]`` uniquely isomorphic copies.

    Returns the inflated category with the collapse functor onto ``C`` and a
    section ``C -> inflated`` (copy 0); both are equivalences.
    """
    objs = [(x, i) for x in C.objects for i in range(copies[x])]
    mors = [((f, i, j), (C.src[f], i), (C.dst[f], j))
            for f in C.morphisms
            for i in range(copies[C.src[f]]) for j in range(copies[C.dst[f]])]
    big = build_category(
        objs, mors, {(x, i): (C.identity[x], i, i) for x, i in objs},
        lambda g, f: (C.table[g[0], f[0]], f[1], g[2]),
    )
    collapse = Functor(big, C, tuple(x for x, _ in objs), tuple(k[0] for k, _, _ in mors))
    obj_pos = {o: i for i, o in enumerate(objs)}
    mor_pos = {k: i for i, (k, _, _) in enumerate(mors)}
    section = Functor(C, big, tuple(obj_pos[x, 0] for x in C.objects),
                      tuple(mor_pos[f, 0, 0] for f in C.morphisms))
    return big, collapse, section
