"""Command line entry point: ``cadm run`` and ``cadm synth``."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import bench
from .data import DataError, SchemaError, write_dataset
from .metric import CAI_MODES, PRESETS
from .synthetic import SyntheticSpec, generate_synthetic

EXIT_OK, EXIT_INPUT, EXIT_RUNTIME = 0, 1, 2


def parse_seeds(text: str) -> tuple:
    """``"0..9"`` (inclusive range) or a comma list ``"1,4,7"``."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise argparse.ArgumentTypeError(f"empty seed range {text!r}")
        return tuple(range(lo, hi + 1))
    try:
        seeds = tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}") from None
    if not seeds:
        raise argparse.ArgumentTypeError("need at least one seed")
    return seeds


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cadm", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="cluster a CSV table with one or more metric variants")
    r.add_argument("--data", required=True, help="comma-separated data file")
    r.add_argument("--schema", required=True, help="schema sidecar file")
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--variant", action="append", choices=sorted(PRESETS),
                   help="metric variant; repeat for several (default: hdm and cadm)")
    r.add_argument("--cai", choices=CAI_MODES, default=None,
                   help="override the attribute-importance mode of non-Hamming variants")
    r.add_argument("--seeds", type=parse_seeds, default=bench.DEFAULT_SEEDS,
                   help="seed range like 0..9 or list like 1,2,3 (default 0..9)")
    r.add_argument("--max-iter", type=int, default=100)
    r.add_argument("--header", action="store_true", help="skip the first CSV row")
    r.add_argument("--out", help="write the JSON report here")

    s = sub.add_parser("synth", help="generate a planted-cluster dataset")
    s.add_argument("--spec", required=True, help="JSON synthetic spec")
    s.add_argument("--out", required=True, help="output CSV path")
    s.add_argument("--schema-out", help="schema sidecar path (default: CSV path with .schema)")
    return p


def _cmd_run(args) -> int:
    if args.k < 1 or args.max_iter < 1:
        print("error: --k and --max-iter must be positive", file=sys.stderr)
        return EXIT_INPUT
    config = bench.ExperimentConfig(
        data=args.data, schema=args.schema, k=args.k, seeds=args.seeds,
        variants=tuple(args.variant or ("hdm", "cadm")), max_iter=args.max_iter,
        header=args.header, out=args.out, cai=args.cai)
    try:
        report = bench.run_experiment(config)
    except (OSError, SchemaError, DataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(bench.format_table(report))
    for v in report["variants"]:
        for r in v["runs"]:
            if r["error"]:
                print(f"{v['name']} seed {r['seed']}: {r['error']}", file=sys.stderr)
    return EXIT_RUNTIME if bench.all_runs_failed(report) else EXIT_OK


def _cmd_synth(args) -> int:
    try:
        with open(args.spec) as fh:
            spec = SyntheticSpec.from_json(fh.read())
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: invalid synthetic spec: {exc}", file=sys.stderr)
        return EXIT_INPUT
    ds = generate_synthetic(spec)
    schema_out = args.schema_out or os.path.splitext(args.out)[0] + ".schema"
    write_dataset(ds, args.out, schema_out)
    print(json.dumps({"csv": args.out, "schema": schema_out, "n": ds.n, "k": spec.k}))
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    return _cmd_synth(args)


if __name__ == "__main__":
    sys.exit(main())
