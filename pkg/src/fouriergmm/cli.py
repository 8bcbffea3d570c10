"""Command-line entry point.

Subcommands:
  phase     order-selection success grid -> phase CSV/JSON + SVG heatmap
  bench     Fourier-vs-EM accuracy/runtime benchmark -> bench CSV/JSON
  order     order selection on a samples CSV -> report
  estimate  full pipeline on a samples CSV -> report

Shared flags: --config <path> (JSON, flat keys), --seed <u64> (overrides
the config seed), --out <dir>, --workers <n>, --format csv|json.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from .harness import (
    ExperimentConfig,
    load_config,
    load_samples_csv,
    run_bench,
    run_estimate,
    run_order,
    run_phase_grid,
    write_bench_csv,
    write_phase_csv,
    write_trials_json,
)
from .heatmap import render_phase_svg


def _add_common(p: argparse.ArgumentParser, samples_arg: bool) -> None:
    if samples_arg:
        p.add_argument("samples", nargs="?", default="",
                       help="samples CSV (one row per sample, d columns)")
    p.add_argument("--config", default="", help="JSON config file")
    p.add_argument("--seed", type=int, default=None,
                   help="override the config root seed")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--workers", type=int, default=1,
                   help="parallel worker processes")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="record output format")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fouriergmm",
        description="Gaussian mixture learning from Fourier measurements",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("phase", help="order-selection phase grid"), False)
    _add_common(sub.add_parser("bench", help="accuracy/runtime benchmark"), False)
    _add_common(sub.add_parser("order", help="order selection on samples"), True)
    _add_common(sub.add_parser("estimate", help="full pipeline on samples"), True)
    return ap


def _config(args, experiment: str) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig(
        experiment=experiment)
    updates = {}
    if cfg.experiment != experiment:
        updates["experiment"] = experiment
    if args.seed is not None:
        updates["seed"] = args.seed
    return dataclasses.replace(cfg, **updates) if updates else cfg


def _samples(args, cfg: ExperimentConfig):
    path = args.samples or cfg.samples_file
    if not path:
        raise ValueError("no samples file given (positional argument or "
                         "samples_file config key)")
    return load_samples_csv(path)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        os.makedirs(args.out, exist_ok=True)
        if args.command == "phase":
            cfg = _config(args, "phase")
            cells = run_phase_grid(cfg, workers=args.workers)
            if args.format == "csv":
                out = os.path.join(args.out, "phase.csv")
                write_phase_csv(cells, out)
            else:
                out = os.path.join(args.out, "phase.json")
                with open(out, "w") as fh:
                    json.dump([dataclasses.asdict(c) | {
                        "success_rate": c.success_rate} for c in cells], fh,
                        indent=1)
            svg = os.path.join(args.out, "phase.svg")
            render_phase_svg(cells, svg)
            print(f"wrote {out} and {svg} ({len(cells)} cells)")
        elif args.command == "bench":
            cfg = _config(args, "bench")
            trials = run_bench(cfg, workers=args.workers)
            if args.format == "csv":
                out = os.path.join(args.out, "bench.csv")
                records = [r for t in trials for r in t.bench_records()]
                write_bench_csv(records, out)
            else:
                out = os.path.join(args.out, "bench.json")
                write_trials_json(trials, out)
            print(f"wrote {out} ({len(trials)} trials)")
        elif args.command == "order":
            cfg = _config(args, "order")
            rep = run_order(_samples(args, cfg), cfg)
            print(f"k_hat = {rep.k_hat}  (rule: {rep.rule}, n = {rep.n}, "
                  f"d = {rep.d})")
            print("singular values:",
                  " ".join(f"{v:.4g}" for v in rep.singular_values))
            out = os.path.join(args.out, "order.json")
            with open(out, "w") as fh:
                json.dump(rep.to_dict(), fh, indent=1)
            print(f"wrote {out}")
        else:
            cfg = _config(args, "estimate")
            rep = run_estimate(_samples(args, cfg), cfg)
            out = os.path.join(args.out, "estimate.json")
            with open(out, "w") as fh:
                json.dump(rep.to_dict(), fh, indent=1)
            if rep.k_hat == 0:
                print("order selection failed (spectrum below floor); "
                      f"wrote {out}")
                return 1
            print(f"k_hat = {rep.k_hat}  reduced = {rep.reduced}")
            for center, w in zip(rep.centers, rep.weights):
                coords = " ".join(f"{x: .4f}" for x in center)
                print(f"  w = {w:.4f}  mu = [{coords}]")
            print(f"wrote {out}")
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
