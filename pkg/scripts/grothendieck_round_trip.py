"""Randomised straighten/unstraighten round trips.

    python scripts/grothendieck_round_trip.py --n 500 --seed 1
"""
import argparse
from collections import Counter

import numpy as np

from exodromy.fibrations import grothendieck, grothendieck_straighten_equivalence, straighten_grothendieck_iso
from exodromy.fincat import compose_functors, inflate
from exodromy.generators import random_diagram


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-objects", type=int, default=8)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    shapes, failures = Counter(), []
    for i in range(args.n):
        G = random_diagram(rng, args.max_objects)
        P = grothendieck(G)
        _, collapse, _ = inflate(P.source, [1 + x % 2 for x in P.source.objects])
        ok = (straighten_grothendieck_iso(G).ok and grothendieck_straighten_equivalence(P).ok
              and grothendieck_straighten_equivalence(compose_functors(P, collapse)).ok)
        shapes[(G.base.n_objects, P.source.n_objects)] += 1
        if not ok:
            failures.append(i)
    print(f"{args.n} diagrams, {len(failures)} failures {failures[:10]}")
    print("base objects -> total objects:", dict(sorted(shapes.items())))
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
