"""Command line front end.

    nilforms run MANIFEST [--out FILE]
    nilforms table {table1,table2_bracket,abstract_examples,cd_tower}
    nilforms inspect ALGEBRA [--param n=3]

Exit codes: 0 all certified or completed, 1 some claim refuted, 2 engine or
validation error, 3 resource cap hit (partial bundle written).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import __version__
from .manifest import (EXIT_ERROR, EXIT_OK, ManifestError, Settings, build_algebra, default_caps, dumps,
                       load, parse_mode, run)
from .tables import SUITES, table_suite


def _settings(args) -> Settings:
    caps = default_caps()
    if args.max_generators is not None:
        caps = replace(caps, max_generators=args.max_generators)
    mode = parse_mode({"kind": args.mode, "trials": args.trials, "seed": args.seed})
    return Settings(mode=mode, caps=caps, timing=args.timing, workers=args.workers)


def _emit(bundle, out):
    text = dumps(bundle)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_param(item: str):
    key, sep, value = item.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError("expected key=value, got %r" % item)
    try:
        return key, json.loads(value)
    except json.JSONDecodeError:
        return key, value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nilforms", description="Certify nilpotency of algebra-valued forms.")
    p.add_argument("--version", action="version", version="nilforms %s" % __version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("exact", "modular"), default="exact")
    common.add_argument("--trials", type=int, default=20)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-generators", type=int, default=None)
    common.add_argument("--out", default=None, help="write the JSON bundle here instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall-clock seconds in reports")
    common.add_argument("--workers", type=int, default=1)
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", parents=[common], help="run a manifest")
    r.add_argument("manifest")
    t = sub.add_parser("table", parents=[common], help="run a builtin suite")
    t.add_argument("suite", choices=SUITES)
    i = sub.add_parser("inspect", parents=[common], help="print an algebra's flags and grading")
    i.add_argument("algebra", help="zoo name (so, u, su, sp, iso, cd_tower, ...) or a JSON file")
    i.add_argument("--param", action="append", type=_parse_param, default=[],
                   help="constructor parameter, e.g. n=3")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = _settings(args)
        if args.command == "run":
            code, bundle = run(load(args.manifest, settings))
        elif args.command == "table":
            code, bundle = table_suite(args.suite, settings)
        else:
            if args.algebra.endswith(".json"):
                spec = {"file": args.algebra}
            else:
                spec = {"zoo": args.algebra, "params": dict(args.param)}
            A = build_algebra(spec)
            bundle = {"schema_version": 1, "engine": "nilforms %s" % __version__, "algebra": A.to_json(),
                      "flags": A.flags.to_json()}
            code = EXIT_OK
    except ManifestError as exc:
        print("nilforms: %s" % exc, file=sys.stderr)
        return EXIT_ERROR
    _emit(bundle, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
