"""Truncated Galois categories.

Two families are built here:

* for a finite ring ``A`` and a level ``N``, the groupoid of homomorphisms
  ``A -> F_{p^N}`` acted on by the Frobenius powers ``σ^k``, ``k ∈ Z/N``;
* stratified models of number rings: one closed point ``x_p`` per listed prime
  and a generic point ``η``, with hom-sets cut out of a finite Galois group by
  inertia and decomposition subgroups.

Both come with the projection onto their Zariski poset.
"""
from __future__ import annotations

import math
import weakref
from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import isprime

from .fields import galois_field
from .fincat import (
    FinCategory, FinPoset, Functor, Verdict, all_mono, build_category, check_category,
    check_functor, full_subcategory, iso_class_map, iso_class_poset, join_failure,
    non_invertible_endo, poset_category, slice_category, NotAPoset,
)
from .finring import FinCommRing, RingHom, field_coordinates, spec_map


class LevelError(ValueError):
    """The level is not divisible by a residue degree."""


class SplittingError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GaloisCategory:
    category: FinCategory
    zariski: FinPoset
    projection: Functor          # category -> poset_category(zariski)
    level: int | None
    labels: tuple[str, ...]
    name: str = ""

    def __repr__(self) -> str:
        C = self.category
        return (f"GaloisCategory({self.name or '?'}, level={self.level}, "
                f"{C.n_objects} objects, {C.n_morphisms} morphisms)")

    def object_named(self, label: str) -> int:
        return self.labels.index(label)

    def over(self, point) -> list[int]:
        """Objects lying over a Zariski point."""
        k = self.zariski.elements.index(point)
        return [x for x in self.category.objects if self.projection.obj(x) == k]


def _projection(C: FinCategory, P: FinPoset, point_of: Sequence) -> Functor:
    Z = poset_category(P)
    idx = {a: i for i, a in enumerate(P.elements)}
    pair_id = {Z.mor_label(f): f for f in Z.morphisms}
    on_obj = tuple(idx[point_of[x]] for x in C.objects)
    on_mor = tuple(pair_id[point_of[C.src[f]], point_of[C.dst[f]]] for f in C.morphisms)
    return check_functor(Functor(C, Z, on_obj, on_mor))


# --------------------------------------------------------------------------
# finite rings at level N


@dataclass(frozen=True)
class _FactorPoints:
    p: int
    degree: int
    minpoly: tuple[int, ...]
    coords: dict
    lift: int                 # an element of A reducing to the residue generator
    roots: tuple              # β_j = β_0^(p^j), j < degree, in F_{p^N}


@dataclass(frozen=True, eq=False)
class _RingPoints:
    ring: FinCommRing
    level: int
    factors: tuple[_FactorPoints, ...]
    objects: tuple[tuple[int, int], ...]     # (factor, j)

    def value(self, x: int, a: int):
        """Image of ``a ∈ A`` under the geometric point ``x`` (an element of F_{p^N})."""
        i, j = self.objects[x]
        fp = self.factors[i]
        F = galois_field(fp.p, self.level)
        r = int(self.ring.decomposition.factors[i].residue_map[a])
        return F.evaluate(fp.coords[r], fp.roots[j])


_CACHE: "weakref.WeakKeyDictionary[FinCommRing, dict]" = weakref.WeakKeyDictionary()


def _points(A: FinCommRing, N: int) -> _RingPoints:
    if N < 1:
        raise LevelError("level must be a positive integer")
    factors = []
    for i, fac in enumerate(A.decomposition.factors):
        p, e = fac.char, fac.degree
        if N % e:
            raise LevelError(
                f"level {N} is not divisible by the residue degree {e} of factor {i} "
                f"(idempotent {A.label(fac.idempotent)}, residue field F_{p}^{e}); "
                f"use a multiple of {e}")
        fc = field_coordinates(fac.residue)
        F = galois_field(p, N)
        roots = F.roots_in_subfield(fc.minpoly, e)
        if len(roots) != e:
            raise LevelError(f"expected {e} roots of the residue minimal polynomial, found {len(roots)}")
        beta0 = min(roots)
        conj = tuple(F.frobenius(beta0, j) for j in range(e))
        lift = next(a for a in range(A.size) if int(fac.residue_map[a]) == fc.generator)
        factors.append(_FactorPoints(p, e, fc.minpoly, fc.coords, lift, conj))
    objects = tuple((i, j) for i, fp in enumerate(factors) for j in range(fp.degree))
    return _RingPoints(A, N, tuple(factors), objects)


def _ring_points(A: FinCommRing, N: int) -> _RingPoints:
    per = _CACHE.setdefault(A, {})
    if ("points", N) not in per:
        per["points", N] = _points(A, N)
    return per["points", N]


def gal_finite_ring(A: FinCommRing, N: int) -> GaloisCategory:
    """Geometric points ``A -> F_{p^N}`` with the Frobenius powers as morphisms.

    Object ``(i, j)`` is the point through the ``i``-th residue field sending
    its generator to ``β_{i,0}^{p^j}``; ``σ^k`` goes from ``(i, j)`` to
    ``(i, j + k mod e_i)``.  The result is ``⊔_i B(Z/(N/e_i))`` up to equivalence.
    """
    per = _CACHE.setdefault(A, {})
    if ("gal", N) in per:
        return per["gal", N]
    pts = _ring_points(A, N)
    objs = list(pts.objects)
    mors = []
    for x in objs:
        for y in objs:
            if x[0] != y[0]:
                continue
            e = pts.factors[x[0]].degree
            for k in range(N):
                if (x[1] + k) % e == y[1]:
                    mors.append(((x, y, k), x, y))
    C = build_category(
        objs, mors, {x: (x, x, 0) for x in objs},
        lambda g, f: (f[0], g[1], (f[2] + g[2]) % N),
        obj_labels=[f"P{i}.{j}" for i, j in objs],
        mor_labels=[f"s^{k}" for (_, _, k), _, _ in mors],
    )
    check_category(C)
    P = FinPoset(tuple(range(len(pts.factors))), frozenset((i, i) for i in range(len(pts.factors))))
    G = GaloisCategory(C, P, _projection(C, P, [i for i, _ in objs]), N,
                       tuple(C.obj_labels), f"Gal_{N}({A.name})")
    per["gal", N] = G
    return G


def point_values(A: FinCommRing, N: int, x: int) -> list:
    """The full element map of the geometric point ``x`` (for validation)."""
    pts = _ring_points(A, N)
    return [pts.value(x, a) for a in range(A.size)]


def gal_functor(f: RingHom, N: int) -> Functor:
    """``Gal_N(B) -> Gal_N(A)`` for ``f: A -> B``: precompose points with ``f``, keep exponents."""
    A, B = f.source, f.target
    try:
        src_pts, dst_pts = _ring_points(B, N), _ring_points(A, N)
    except LevelError as exc:
        raise LevelError(f"level mismatch for {A.name} -> {B.name}: {exc}") from exc
    S, T = gal_finite_ring(B, N), gal_finite_ring(A, N)
    contraction = spec_map(f)
    obj_pos = {o: k for k, o in enumerate(dst_pts.objects)}
    on_obj = []
    for y, (i2, _) in enumerate(src_pts.objects):
        i = contraction[i2]
        fp = dst_pts.factors[i]
        v = src_pts.value(y, f.images[fp.lift])
        j = fp.roots.index(v)
        on_obj.append(obj_pos[i, j])
    Tc = T.category
    mor_id = {(Tc.src[m], Tc.dst[m], _exp(Tc, m)): m for m in Tc.morphisms}
    on_mor = []
    Sc = S.category
    for m in Sc.morphisms:
        key = (on_obj[Sc.src[m]], on_obj[Sc.dst[m]], _exp(Sc, m))
        on_mor.append(mor_id[key])
    return check_functor(Functor(Sc, Tc, tuple(on_obj), tuple(on_mor)))


def _exp(C: FinCategory, m: int) -> int:
    return int(C.mor_label(m)[2:])


def level_projection(A: FinCommRing, N_big: int, N: int) -> Functor:
    """``Gal_{N'}(A) -> Gal_N(A)`` for ``N | N'``: reduce exponents mod ``N``."""
    if N_big % N:
        raise LevelError(f"{N} does not divide {N_big}")
    S, T = gal_finite_ring(A, N_big), gal_finite_ring(A, N)
    # both levels list objects as (factor, j) in the same order
    Tc, Sc = T.category, S.category
    mor_id = {(Tc.src[m], Tc.dst[m], _exp(Tc, m)): m for m in Tc.morphisms}
    on_mor = tuple(mor_id[Sc.src[m], Sc.dst[m], _exp(Sc, m) % N] for m in Sc.morphisms)
    return check_functor(Functor(Sc, Tc, tuple(Sc.objects), on_mor))


# --------------------------------------------------------------------------
# number-ring models


@dataclass(frozen=True)
class PrimeData:
    label: str
    inertia: frozenset[int]        # group element ids
    decomposition: frozenset[int]
    frobenius: int


@dataclass(frozen=True)
class SplittingDatum:
    """A finite group (identity at index 0) with inertia/decomposition data per prime."""

    table: tuple[tuple[int, ...], ...]
    elements: tuple[str, ...]
    primes: tuple[PrimeData, ...]
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.table[a].index(0)

    def prime(self, label) -> PrimeData:
        label = str(label)
        for pd in self.primes:
            if pd.label == label:
                return pd
        raise KeyError(f"no prime {label!r} in the splitting datum")

    def element(self, label) -> int:
        return self.elements.index(str(label))


def _generated(S: SplittingDatum, gens: Iterable[int]) -> frozenset[int]:
    out = {0}
    frontier = [0]
    gens = list(gens)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = S.mul(a, g)
                if b not in out:
                    out.add(b)
                    new.append(b)
        frontier = new
    return frozenset(out)


def is_subgroup(S: SplittingDatum, H: Iterable[int]) -> bool:
    H = frozenset(H)
    return 0 in H and all(S.mul(a, S.inverse(b)) in H for a in H for b in H)


def validate_splitting(S: SplittingDatum) -> list[str]:
    n = S.order
    problems = []
    if any(len(row) != n for row in S.table) or any(not 0 <= v < n for row in S.table for v in row):
        return ["group table must be square with entries in range"]
    if any(S.table[0][a] != a or S.table[a][0] != a for a in range(n)):
        problems.append("element 0 is not the identity")
    if any(sorted(row) != list(range(n)) for row in S.table):
        problems.append("group table rows are not permutations")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if S.mul(S.mul(a, b), c) != S.mul(a, S.mul(b, c)):
                    problems.append(f"associativity fails at {(a, b, c)}")
                    return problems
    for pd in S.primes:
        if not is_subgroup(S, pd.inertia):
            problems.append(f"inertia at {pd.label} is not a subgroup")
        if not is_subgroup(S, pd.decomposition):
            problems.append(f"decomposition at {pd.label} is not a subgroup")
        if not pd.inertia <= pd.decomposition:
            problems.append(f"inertia at {pd.label} is not inside decomposition")
        d_inv = {d: S.inverse(d) for d in pd.decomposition}
        if any(S.mul(S.mul(d, i), d_inv[d]) not in pd.inertia for d in pd.decomposition for i in pd.inertia):
            problems.append(f"inertia at {pd.label} is not normal in decomposition")
        if pd.frobenius not in pd.decomposition or \
                _generated(S, [pd.frobenius, *pd.inertia]) != pd.decomposition:
            problems.append(f"Frobenius at {pd.label} does not generate decomposition mod inertia")
    return problems


def check_splitting(S: SplittingDatum) -> SplittingDatum:
    problems = validate_splitting(S)
    if problems:
        raise SplittingError("; ".join(problems))
    return S


def unit_group(m: int) -> tuple[list[int], tuple[tuple[int, ...], ...]]:
    """``(Z/m)^×`` as sorted residues (1 first) with its multiplication table on positions."""
    units = [a for a in range(m) if math.gcd(a, m) == 1] if m > 1 else [0]
    pos = {a: i for i, a in enumerate(units)}
    table = tuple(tuple(pos[(a * b) % m] for b in units) for a in units)
    return units, table


def cyclotomic_splitting(m: int, primes: Sequence[int]) -> SplittingDatum:
    """Inertia, decomposition and Frobenius of ``Q(ζ_m)/Q`` at each listed prime."""
    if m < 1:
        raise SplittingError("m must be positive")
    units, table = unit_group(m)
    pos = {a: i for i, a in enumerate(units)}
    labels = tuple("1" if m == 1 else str(a) for a in units)
    S0 = SplittingDatum(table, labels, ())
    data = []
    for p in primes:
        if not isprime(p):
            raise SplittingError(f"{p} is not prime")
        if m % p:
            frob = pos[p % m] if m > 1 else 0
            inertia = frozenset({0})
        else:
            k, m2 = 0, m
            while m2 % p == 0:
                m2 //= p
                k += 1
            inertia = frozenset(pos[a] for a in units if (a - 1) % m2 == 0)
            frob = pos[next(a for a in units if (a - p) % m2 == 0)]
        decomposition = _generated(S0, [frob, *inertia])
        data.append(PrimeData(str(p), inertia, decomposition, frob))
    return check_splitting(SplittingDatum(table, labels, tuple(data), f"Q(zeta_{m})/Q"))


def _coset(S: SplittingDatum, g: int, sub: frozenset[int]) -> int:
    """Least element of the left coset ``g·sub``."""
    return min(S.mul(g, s) for s in sub)


@dataclass(frozen=True)
class _Stratum:
    label: str
    prime: PrimeData
    autos: tuple[int, ...]      # coset representatives of D_p/I_p (a subset)
    specs: tuple[int, ...]      # coset representatives of G/I_p (a subset)


def _stratified(S: SplittingDatum, strata: Sequence[_Stratum], generic: Sequence[int] | None,
                generic_label: str = "eta"):
    objs = [st.label for st in strata] + ([generic_label] if generic is not None else [])
    mors, ident = [], {}
    by_label = {st.label: st for st in strata}
    for st in strata:
        for c in st.autos:
            mors.append((("aut", st.label, c), st.label, st.label))
        ident[st.label] = ("aut", st.label, _coset(S, 0, st.prime.inertia))
        if generic is not None:
            for c in st.specs:
                mors.append((("sp", st.label, c), st.label, generic_label))
    if generic is not None:
        for g in generic:
            mors.append((("g", generic_label, g), generic_label, generic_label))
        ident[generic_label] = ("g", generic_label, 0)

    def compose(g, f):
        if f[0] == "aut":
            I = by_label[f[1]].prime.inertia
            return (g[0], g[1], _coset(S, S.mul(g[2], f[2]), I))
        if f[0] == "sp":
            I = by_label[f[1]].prime.inertia
            return ("sp", f[1], _coset(S, S.mul(g[2], f[2]), I))
        return ("g", generic_label, S.mul(g[2], f[2]))

    def mlabel(key):
        kind, where, c = key
        return f"{kind}:{where}:{S.elements[c]}"

    C = build_category(objs, mors, ident, compose, obj_labels=objs,
                       mor_labels=[mlabel(k) for k, _, _ in mors])
    return check_category(C), [k for k, _, _ in mors]


def gal_number_ring(S: SplittingDatum, primes: Sequence | None = None,
                    includes_generic: bool = True) -> GaloisCategory:
    """``x_p`` per prime and ``η``: Aut(x_p) = D_p/I_p, Hom(x_p, η) = G/I_p, Aut(η) = G."""
    check_splitting(S)
    chosen = [S.prime(p) for p in primes] if primes is not None else list(S.primes)
    G = range(S.order)
    strata = []
    for pd in chosen:
        autos = tuple(sorted({_coset(S, d, pd.inertia) for d in pd.decomposition}))
        specs = tuple(sorted({_coset(S, g, pd.inertia) for g in G}))
        strata.append(_Stratum(f"x_{pd.label}", pd, autos, specs))
    C, _ = _stratified(S, strata, list(G) if includes_generic else None)
    points = [pd.label for pd in chosen] + (["eta"] if includes_generic else [])
    rel = [(pd.label, "eta") for pd in chosen] if includes_generic else []
    P = _poset(points, rel)
    return GaloisCategory(C, P, _projection(C, P, points), None, tuple(C.obj_labels),
                          f"model[{S.name}]")


def _poset(points, rel) -> FinPoset:
    leq = {(a, a) for a in points} | set(rel)
    return FinPoset(tuple(points), frozenset(leq))


@dataclass(frozen=True, eq=False)
class RelativeModel:
    """The model of ``O_K`` for ``K`` fixed by ``H`` together with its functor to the model of ``Z``."""

    source: GaloisCategory
    target: GaloisCategory
    functor: Functor
    subgroup: frozenset[int]
    splitting: SplittingDatum


def gal_relative_model(m: int, H: Iterable[int], primes: Sequence[int]) -> RelativeModel:
    """Model of the ring of integers of the fixed field of ``H ⊆ (Z/m)^×`` over the model of ``Z``.

    ``H`` is given by residues mod ``m``.  Primes over ``p`` are indexed by a
    transversal ``t`` of ``G/(H·D_p)``; the point ``x_{p,t}`` has automorphisms
    ``(H∩D_p)/(H∩I_p)`` and specializes to ``η_K`` through the cosets
    ``h·t·I_p``.  The functor is the inclusion on hom-sets.
    """
    S = cyclotomic_splitting(m, primes)
    try:
        Hs = frozenset(S.element("1" if m == 1 else a % m) for a in H)
    except ValueError as exc:
        raise SplittingError(f"{sorted(H)} are not all units mod {m}") from exc
    if not is_subgroup(S, Hs):
        raise SplittingError(f"{sorted(H)} is not a subgroup of (Z/{m})^x")
    base = gal_number_ring(S)
    strata, point_of = [], []
    for pd in S.primes:
        HD = frozenset(S.mul(h, d) for h in Hs for d in pd.decomposition)
        transversal = sorted({_coset(S, g, HD) for g in range(S.order)})
        for t in transversal:
            label = f"x_{pd.label}.{S.elements[t]}"
            autos = tuple(sorted({_coset(S, d, pd.inertia) for d in pd.decomposition if d in Hs}))
            specs = tuple(sorted({_coset(S, S.mul(h, t), pd.inertia) for h in Hs}))
            strata.append(_Stratum(label, pd, autos, specs))
            point_of.append(label)
    C, keys = _stratified(S, strata, sorted(Hs), generic_label="eta_K")
    points = point_of + ["eta_K"]
    P = _poset(points, [(q, "eta_K") for q in point_of])
    source = GaloisCategory(C, P, _projection(C, P, points), None, tuple(C.obj_labels),
                            f"model[fixed field of H in {S.name}]")
    Bc = base.category
    base_key = {}
    for mm in Bc.morphisms:
        kind, where, c = Bc.mor_label(mm).split(":")
        base_key[kind, where, c] = mm
    prime_of = {st.label: st.prime.label for st in strata}
    on_obj = [base.object_named(f"x_{prime_of[o]}") if o != "eta_K" else base.object_named("eta")
              for o in C.obj_labels]
    on_mor = []
    for kind, where, c in keys:
        tgt_where = f"x_{prime_of[where]}" if where != "eta_K" else "eta"
        on_mor.append(base_key[kind, tgt_where, S.elements[c]])
    F = check_functor(Functor(C, Bc, tuple(on_obj), tuple(on_mor)))
    return RelativeModel(source, base, F, Hs, S)


def gal_relative_functor(m: int, H: Iterable[int], primes: Sequence[int]) -> Functor:
    return gal_relative_model(m, H, primes).functor


def cyclotomic_subgroups(m: int) -> list[frozenset[int]]:
    """All subgroups of ``(Z/m)^×`` as sets of residues."""
    units, table = unit_group(m)
    S = SplittingDatum(table, tuple(str(u) for u in units), ())
    subs = set()
    for a in range(len(units)):
        for b in range(len(units)):
            subs.add(_generated(S, [a, b]))
    # (Z/m)^x needs at most three generators for the m used here; close under joins
    changed = True
    while changed:
        changed = False
        for X in list(subs):
            for Y in list(subs):
                Z = _generated(S, X | Y)
                if Z not in subs:
                    subs.add(Z)
                    changed = True
    return sorted((frozenset(units[i] for i in s) for s in subs), key=lambda s: (len(s), sorted(s)))


def gal_poset_model(P: FinPoset, name: str = "") -> GaloisCategory:
    """A poset viewed as a Galois category with trivial automorphism groups."""
    C = poset_category(P)
    return GaloisCategory(C, P, _projection(C, P, list(P.elements)), None,
                          tuple(str(a) for a in P.elements), name or "poset")


def restrict(G: GaloisCategory, points: Iterable) -> tuple[GaloisCategory, Functor]:
    """The full subcategory over a set of Zariski points, with its inclusion."""
    keep_pts = [a for a in G.zariski.elements if a in set(points)]
    objs = [x for x in G.category.objects if G.zariski.elements[G.projection.obj(x)] in keep_pts]
    inc = full_subcategory(G.category, objs)
    P = FinPoset(tuple(keep_pts), frozenset((a, b) for a, b in G.zariski.leq
                                            if a in keep_pts and b in keep_pts))
    point_of = [G.zariski.elements[G.projection.obj(x)] for x in inc.on_objects]
    sub = GaloisCategory(inc.source, P, _projection(inc.source, P, point_of), G.level,
                         tuple(G.labels[x] for x in inc.on_objects), f"{G.name}|restricted")
    return sub, inc


# --------------------------------------------------------------------------
# axioms


def axiom_battery(G: GaloisCategory) -> dict[str, Verdict]:
    """Conservative projection, endos are autos, all mono, iso poset = Zariski, slice joins."""
    C, Pj = G.category, G.projection
    out: dict[str, Verdict] = {}

    bad = [f for f in C.morphisms
           if Pj.target.src[Pj(f)] == Pj.target.dst[Pj(f)] and not C.is_iso(f)]
    out["conservative"] = Verdict(not bad, {"morphism": bad[0]} if bad else None)

    e = non_invertible_endo(C)
    out["endos_are_autos"] = Verdict(e is None, {"morphism": e} if e is not None else None)
    out["all_mono"] = all_mono(C)

    try:
        Q = iso_class_poset(C)
        cls = iso_class_map(C)
        image = {r: Pj.obj(r) for r in Q.elements}
        ok = len(set(image.values())) == len(Q.elements) == len(G.zariski.elements)
        if ok:
            els = G.zariski.elements
            ok = all(Q.le(a, b) == ((els[image[a]], els[image[b]]) in G.zariski.leq)
                     for a in Q.elements for b in Q.elements)
        out["iso_poset_matches_zariski"] = Verdict(ok, None if ok else {"classes": sorted(set(cls))})
    except NotAPoset as exc:
        out["iso_poset_matches_zariski"] = Verdict(False, {"not_a_poset": exc.witness})

    witness = None
    for y in C.objects:
        try:
            jf = join_failure(iso_class_poset(slice_category(C, y)))
        except NotAPoset as exc:
            witness = {"object": y, "not_a_poset": exc.witness}
            break
        if jf is not None:
            witness = {"object": y, "no_join": list(jf)}
            break
    out["slice_joins"] = Verdict(witness is None, witness)
    return out


def satisfies_axioms(G: GaloisCategory) -> Verdict:
    for name, v in axiom_battery(G).items():
        if not v:
            return Verdict(False, {name: v.witness})
    return Verdict(True)
