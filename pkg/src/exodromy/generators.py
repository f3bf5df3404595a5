"""Seeded random inputs: posets, small categories and set-valued diagrams.

Diagrams are built so functoriality holds by construction.  Over a poset the
value at ``d`` is the set of restrictions of a random family of colourings to
the down-set of ``d``; over ``B(Z/n)`` it is a union of cycles whose lengths
divide ``n``; over a product the two are combined.
"""
from __future__ import annotations

import numpy as np

from .fibrations import SetValuedDiagram
from .fincat import FinCategory, FinPoset, cyclic_category, poset_category, poset_from_relations, product_category


def random_poset(rng: np.random.Generator, n: int, density: float = 0.35) -> FinPoset:
    rel = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < density]
    return poset_from_relations(range(n), rel)


def _down_sets(P: FinPoset) -> list[tuple]:
    return [tuple(e for e in P.elements if P.le(e, d)) for d in P.elements]


def _colourings(rng, n_points: int, count: int, colours: int) -> np.ndarray:
    return rng.integers(0, colours, size=(count, n_points))


def _cycle_permutation(rng, n: int, max_points: int) -> list[int]:
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    perm: list[int] = []
    while not perm or (len(perm) < max_points and rng.random() < 0.5):
        d = int(rng.choice([d for d in divisors if len(perm) + d <= max(max_points, 1)] or [1]))
        start = len(perm)
        perm += [start + (i + 1) % d for i in range(d)]
    return perm


def poset_diagram(rng: np.random.Generator, P: FinPoset, count: int = 3, colours: int = 2) -> SetValuedDiagram:
    D = poset_category(P)
    downs = _down_sets(P)
    H = _colourings(rng, len(P.elements), count, colours)
    sets = []
    for d in D.objects:
        vals = sorted({tuple(int(h[e]) for e in downs[d]) for h in H})
        sets.append(tuple(vals))
    action = []
    for u in D.morphisms:
        a, b = D.src[u], D.dst[u]
        keep = [downs[b].index(e) for e in downs[a]]
        pos = {v: i for i, v in enumerate(sets[a])}
        action.append(tuple(pos[tuple(v[i] for i in keep)] for v in sets[b]))
    return SetValuedDiagram(D, tuple(sets), tuple(action))


def cyclic_diagram(rng: np.random.Generator, n: int, max_points: int = 6) -> SetValuedDiagram:
    D = cyclic_category(n)
    perm = _cycle_permutation(rng, n, max_points)
    powers = [list(range(len(perm)))]
    for _ in range(n - 1):
        powers.append([perm[i] for i in powers[-1]])
    return SetValuedDiagram(D, (tuple(range(len(perm))),), tuple(tuple(powers[k]) for k in D.morphisms))


def product_diagram(rng: np.random.Generator, P: FinPoset, n: int) -> SetValuedDiagram:
    """``G(d, *) = G_P(d) x G_n(*)`` over ``P x B(Z/n)``."""
    A = poset_diagram(rng, P)
    B = cyclic_diagram(rng, n, max_points=3)
    C: FinCategory = product_category(A.base, B.base)
    m = len(B.sets[0])
    sets = [tuple((s, t) for s in A.sets[x] for t in B.sets[0]) for x, _ in C.obj_labels]
    action = []
    for (f, g) in C.mor_labels:
        af, bg = A.action[f], B.action[g]
        action.append(tuple(af[k // m] * m + bg[k % m] for k in range(len(af) * m)))
    return SetValuedDiagram(C, tuple(sets), tuple(action))


def random_diagram(rng: np.random.Generator, max_objects: int = 8) -> SetValuedDiagram:
    """One of the three shapes above, with at most ``max_objects`` objects."""
    kind = rng.integers(0, 4)
    if kind == 0:
        return cyclic_diagram(rng, int(rng.integers(1, 7)))
    if kind == 3:
        n = int(rng.integers(2, 4))
        return product_diagram(rng, random_poset(rng, int(rng.integers(1, max(2, max_objects // 2) + 1))), n)
    P = random_poset(rng, int(rng.integers(1, max_objects + 1)))
    return poset_diagram(rng, P, count=int(rng.integers(1, 5)), colours=int(rng.integers(1, 4)))
