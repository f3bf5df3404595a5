"""Command-line interface.

Exit codes: 0 success, 1 a property is false (with a certificate) or a suite
case failed, 2 malformed input or a usage/validation error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .fincat import CapExceeded, CategoryError
from .finring import RingError, hom_from_json, is_perfectly_reduced, ring_from_json, ring_to_json
from .galmodel import LevelError, SplittingError


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _ints(s: str | None) -> list[int]:
    if not s:
        return []
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected a comma-separated list of integers, got {s!r}") from exc


def _ring(path: str):
    data = _load(path)
    if not isinstance(data, dict):
        raise UsageError("ring.v1 must be a JSON object")
    return ring_from_json(data)


# --------------------------------------------------------------------------


def cmd_ring(args) -> int:
    from .io import dumps

    A = _ring(args.input)
    if args.action == "build":
        _emit(args, dumps(ring_to_json(A)))
        return 0
    if args.action == "decompose":
        _emit(args, dumps(A.decomposition.to_json()))
        return 0
    report = is_perfectly_reduced(A)
    _emit(args, dumps({"ring": A.name, "perfectly_reduced": report.ok,
                       "certificate": report.certificate}))
    return 0 if report.ok else 1


def cmd_gal(args) -> int:
    from .galmodel import (
        cyclotomic_splitting, gal_finite_ring, gal_functor, gal_number_ring, gal_relative_model,
    )
    from .io import dumps, functor_to_json, galmodel_to_dot, galmodel_to_json, to_dot, splitting_from_json

    if args.level is not None and args.level < 1:
        raise UsageError("--level must be at least 1")
    if args.action == "map":
        if not args.input:
            raise UsageError("gal map needs a ringhom.v1 file")
        f = hom_from_json(_load(args.input))
        F = gal_functor(f, args.level or 12)
        text = dumps(functor_to_json(F)) if args.format == "json" else to_dot(F.source, "source")
        _emit(args, text)
        return 0
    if args.cyclotomic is not None:
        primes = _ints(args.primes) or [2, 3, 5, 7]
        if args.subgroup:
            R = gal_relative_model(args.cyclotomic, _ints(args.subgroup), primes)
            text = dumps(functor_to_json(R.functor)) if args.format == "json" else galmodel_to_dot(R.source)
        else:
            G = gal_number_ring(cyclotomic_splitting(args.cyclotomic, primes))
            text = dumps(galmodel_to_json(G)) if args.format == "json" else galmodel_to_dot(G)
        _emit(args, text)
        return 0
    if not args.input:
        raise UsageError("gal build needs a ring.v1 or splitting.v1 file, or --cyclotomic m")
    data = _load(args.input)
    if isinstance(data, dict) and data.get("schema") == "splitting.v1":
        G = gal_number_ring(splitting_from_json(data))
    else:
        G = gal_finite_ring(ring_from_json(data), args.level or 12)
    _emit(args, dumps(galmodel_to_json(G)) if args.format == "json" else galmodel_to_dot(G))
    return 0


def cmd_classify(args) -> int:
    from .fibrations import classify
    from .io import dumps, functor_from_json

    F = functor_from_json(_load(args.input))
    report = classify(F, ref=args.input)
    _emit(args, dumps(report.to_json()))
    return 0


def cmd_check(args) -> int:
    from .dictionary import CorpusConfig, run_corpus, run_suite
    from .io import dumps

    level = args.level if args.level is not None else 12
    if level < 1:
        raise UsageError("--level must be at least 1")
    if args.corpus:
        doc = _load(args.corpus)
        if not isinstance(doc, dict):
            raise UsageError("corpus must be a JSON object")
        sc = run_corpus(doc, level)
    elif args.suite == "default":
        sc = run_suite(CorpusConfig(level=level))
    else:
        raise UsageError(f"unknown suite {args.suite!r}")
    if args.list:
        _emit(args, "".join(c.name + "\n" for c in sc.all_cases))
        return 0
    _emit(args, dumps(sc.to_json(timestamp=not args.no_timestamp)))
    s = sc.summary()
    print(f"{s['total']} cases: {s['pass']} pass ({s['non_vacuous']} non-vacuous), "
          f"{s['skipped']} skipped, {s['fail']} fail; {sc.elapsed:.1f}s", file=sys.stderr)
    if s["missing_propositions"]:
        print("propositions without a non-vacuous case: " + ", ".join(s["missing_propositions"]),
              file=sys.stderr)
    return 0 if sc.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="exodromy", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("ring", help="build, decompose or test a finite ring")
    r.add_argument("action", choices=["build", "decompose", "perfect"])
    r.add_argument("input", help="ring.v1 JSON file ('-' for stdin)")
    r.add_argument("--out")
    r.set_defaults(func=cmd_ring)

    g = sub.add_parser("gal", help="Galois categories of rings, ring maps and cyclotomic models")
    g.add_argument("action", choices=["build", "map"])
    g.add_argument("input", nargs="?", help="ring.v1, splitting.v1 or ringhom.v1 file")
    g.add_argument("--level", type=int)
    g.add_argument("--cyclotomic", type=int, metavar="M")
    g.add_argument("--primes", help="comma-separated primes")
    g.add_argument("--subgroup", help="comma-separated residues mod M fixing the subfield")
    g.add_argument("--format", choices=["json", "dot"], default="json")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gal)

    c = sub.add_parser("classify", help="classify a functor (report.v1)")
    c.add_argument("input", help="functor.v1 JSON file")
    c.add_argument("--out")
    c.set_defaults(func=cmd_classify)

    k = sub.add_parser("check", help="run the dictionary suite")
    k.add_argument("--suite", default="default")
    k.add_argument("--level", type=int)
    k.add_argument("--corpus", help="corpus.v1 JSON file instead of the default corpus")
    k.add_argument("--list", action="store_true", help="list case names only")
    k.add_argument("--no-timestamp", action="store_true")
    k.add_argument("--out")
    k.set_defaults(func=cmd_check)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        return args.func(args)
    except (UsageError, RingError, CategoryError, LevelError, SplittingError, CapExceeded,
            KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
