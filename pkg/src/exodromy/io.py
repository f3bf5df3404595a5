"""JSON schemas and DOT export.

Every document carries a ``schema`` tag: ``category.v1``, ``functor.v1``,
``galmodel.v1`` and ``splitting.v1`` live here; rings and ring maps are
serialized in :mod:`exodromy.finring`.
"""
from __future__ import annotations

import json
from typing import Any

from .fincat import (
    FinCategory, FinPoset, Functor, InvalidCategory, InvalidFunctor, validate_category,
    validate_functor, validate_poset,
)
from .galmodel import GaloisCategory, PrimeData, SplittingDatum, check_splitting


class SchemaError(ValueError):
    pass


def _label(x: Any):
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def _expect(data: Any, schema: str) -> dict:
    if not isinstance(data, dict):
        raise SchemaError(f"expected a JSON object with schema {schema!r}")
    got = data.get("schema", schema)
    if got != schema:
        raise SchemaError(f"expected schema {schema!r}, got {got!r}")
    return data


def category_to_json(C: FinCategory) -> dict:
    comp = sorted([g, f, gf] for (g, f), gf in C.table.items())
    return {
        "schema": "category.v1",
        "objects": [_label(C.obj_label(x)) for x in C.objects],
        "morphisms": [{"label": _label(C.mor_label(f)), "src": C.src[f], "dst": C.dst[f]}
                      for f in C.morphisms],
        "identity": list(C.identity),
        "compose": comp,
    }


def category_from_json(data: Any, validate: bool = True) -> FinCategory:
    data = _expect(data, "category.v1")
    try:
        objs = list(data["objects"])
        mors = list(data["morphisms"])
        C = FinCategory(
            n_objects=len(objs),
            src=tuple(int(m["src"]) for m in mors), dst=tuple(int(m["dst"]) for m in mors),
            identity=tuple(int(i) for i in data["identity"]),
            table={(int(g), int(f)): int(gf) for g, f, gf in data["compose"]},
            obj_labels=tuple(objs), mor_labels=tuple(m.get("label", k) for k, m in enumerate(mors)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed category.v1: {exc}") from exc
    if validate:
        report = validate_category(C)
        if report:
            raise InvalidCategory(report)
    return C


def functor_to_json(F: Functor) -> dict:
    return {
        "schema": "functor.v1",
        "source": category_to_json(F.source),
        "target": category_to_json(F.target),
        "objects": list(F.on_objects),
        "morphisms": list(F.on_morphisms),
    }


def functor_from_json(data: Any) -> Functor:
    data = _expect(data, "functor.v1")
    try:
        S = category_from_json(data["source"])
        T = category_from_json(data["target"])
        F = Functor(S, T, tuple(int(x) for x in data["objects"]),
                    tuple(int(f) for f in data["morphisms"]))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed functor.v1: {exc}") from exc
    report = validate_functor(F)
    if report:
        raise InvalidFunctor(report)
    return F


def poset_to_json(P: FinPoset) -> dict:
    idx = {a: i for i, a in enumerate(P.elements)}
    return {"elements": [_label(a) for a in P.elements],
            "leq": sorted([idx[a], idx[b]] for a, b in P.leq)}


def poset_from_json(data: dict) -> FinPoset:
    els = tuple(data["elements"])
    P = FinPoset(els, frozenset((els[a], els[b]) for a, b in data["leq"]))
    if validate_poset(P):
        raise SchemaError(f"not a poset: {validate_poset(P)[0].kind}")
    return P


def galmodel_to_json(G: GaloisCategory) -> dict:
    return {
        "schema": "galmodel.v1",
        "name": G.name,
        "level": G.level,
        "labels": [_label(x) for x in G.labels],
        "category": category_to_json(G.category),
        "zariski": poset_to_json(G.zariski),
        "projection": {"objects": list(G.projection.on_objects),
                       "morphisms": list(G.projection.on_morphisms)},
    }


def galmodel_from_json(data: Any) -> GaloisCategory:
    from .fincat import poset_category

    data = _expect(data, "galmodel.v1")
    C = category_from_json(data["category"])
    P = poset_from_json(data["zariski"])
    Z = poset_category(P)
    proj = Functor(C, Z, tuple(data["projection"]["objects"]), tuple(data["projection"]["morphisms"]))
    report = validate_functor(proj)
    if report:
        raise InvalidFunctor(report)
    return GaloisCategory(C, P, proj, data.get("level"), tuple(data["labels"]), data.get("name", ""))


def splitting_to_json(S: SplittingDatum) -> dict:
    return {
        "schema": "splitting.v1",
        "name": S.name,
        "elements": list(S.elements),
        "table": [list(r) for r in S.table],
        "primes": [{"label": pd.label, "inertia": sorted(pd.inertia),
                    "decomposition": sorted(pd.decomposition), "frobenius": pd.frobenius}
                   for pd in S.primes],
    }


def splitting_from_json(data: Any) -> SplittingDatum:
    data = _expect(data, "splitting.v1")
    try:
        S = SplittingDatum(
            tuple(tuple(int(v) for v in row) for row in data["table"]),
            tuple(str(e) for e in data["elements"]),
            tuple(PrimeData(str(p["label"]), frozenset(p["inertia"]), frozenset(p["decomposition"]),
                            int(p["frobenius"])) for p in data["primes"]),
            data.get("name", ""),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed splitting.v1: {exc}") from exc
    return check_splitting(S)


def dumps(doc: dict) -> str:
    """Deterministic JSON text (sorted keys, two-space indent)."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# --------------------------------------------------------------------------
# DOT


def _quote(s: Any) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(C: FinCategory, name: str = "C", labels: tuple | None = None) -> str:
    """Objects as nodes (with automorphism counts); non-identity morphisms
    between distinct objects as edges, parallel ones merged with a count."""
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;"]
    for x in C.objects:
        lab = labels[x] if labels else C.obj_label(x)
        n_aut = len(C.hom(x, x))
        lines.append(f"  n{x} [label={_quote(f'{lab} |Aut|={n_aut}')}];")
    for x in C.objects:
        for y in C.objects:
            if x != y and C.hom(x, y):
                lines.append(f"  n{x} -> n{y} [label={_quote(len(C.hom(x, y)))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def galmodel_to_dot(G: GaloisCategory) -> str:
    return to_dot(G.category, G.name or "Gal", G.labels)
