"""Run the default dictionary suite and print a per-proposition table.

    python scripts/run_suite.py --level 12 --out scorecard.json
"""
import argparse
from pathlib import Path

from exodromy.dictionary import CorpusConfig, run_suite
from exodromy.io import dumps


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--level", type=int, default=12)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    sc = run_suite(CorpusConfig(level=args.level))
    s = sc.summary()
    print(f"{'proposition':32s} {'cases':>6s} {'non-vac':>8s} {'skipped':>8s} {'fail':>5s}")
    for prop, row in s["by_proposition"].items():
        print(f"{prop:32s} {row['cases']:6d} {row['non_vacuous']:8d} {row['skipped']:8d} {row['fail']:5d}")
    print(f"\n{s['total']} cases, {s['fail']} failures, {sc.elapsed:.1f}s, ok={sc.ok}")
    if args.out:
        args.out.write_text(dumps(sc.to_json()))
    return 0 if sc.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
