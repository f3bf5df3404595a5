"""Fibration profile of O_K -> Z for every subfield K of a cyclotomic field.

For each subgroup H of (Z/m)^x the script classifies the model functor, then
restricts away the ramified primes and classifies again.  Point counts over
each prime are compared with the splitting law read off the residue of p.

    python scripts/knots_and_primes.py --m 8 --primes 2,3,5,7,11,13
"""
import argparse

from exodromy.fibrations import classify, restrict_functor
from exodromy.galmodel import cyclotomic_splitting, cyclotomic_subgroups, gal_relative_model


def expected_points(m, H, primes):
    """Number of primes of the fixed field above p: [G : D_p H]."""
    S = cyclotomic_splitting(m, primes)
    Hs = frozenset(S.elements.index(str(h)) for h in H)
    out = {}
    for pd in S.primes:
        DH = {S.table[d][h] for d in pd.decomposition for h in Hs}
        out[f"x_{pd.label}"] = S.order // len(DH)
    out["eta"] = 1
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--m", type=int, default=8)
    ap.add_argument("--primes", default="2,3,5,7,11,13")
    args = ap.parse_args()
    primes = [int(p) for p in args.primes.split(",")]
    ramified = {f"x_{p}" for p in primes if args.m % p == 0}

    for H in cyclotomic_subgroups(args.m):
        H = sorted(H)
        R = gal_relative_model(args.m, H, primes)
        rep = classify(R.functor).to_json()
        T = R.functor.target
        Fr, _, _ = restrict_functor(R.functor, [d for d in T.objects if T.obj_label(d) not in ramified])
        away = classify(Fr).to_json()
        match = rep["point_fibers"] == expected_points(args.m, H, primes)
        print(f"H={H}")
        print(f"  right={rep['right']} left={rep['left']} kan={rep['kan']} lifting={rep['lifting']}")
        print(f"  points over p: {rep['point_fibers']}  (splitting law: {'ok' if match else 'MISMATCH'})")
        print(f"  geometric fibres: {rep['fibers']}")
        print(f"  away from ramification: left={away['left']} kan={away['kan']}")


if __name__ == "__main__":
    main()
