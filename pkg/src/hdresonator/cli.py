"""Command line entry point: ``hdresonator factorize`` and ``hdresonator experiment``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import codebook_io
from .bench.experiment import run_experiment
from .bench.plotting import emit_plot
from .bench.presets import PRESETS, build_specs, summary_tables
from .bench.records import StreamingSink, format_records
from .decomposer import BundleSpec, encode_bundle
from .hdc import Kind, make_codebook
from .resonator import ResonatorConfig, UpdateRule, factorize, max_iters_for

EXIT_OK, EXIT_USAGE, EXIT_IO = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hdresonator", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("factorize", help="factorize one random bound hypervector")
    f.add_argument("--kind", choices=[k.value for k in Kind], default="bipolar")
    f.add_argument("--rule", choices=["original", "attention"], default="attention")
    f.add_argument("--dim", type=int, default=1500)
    f.add_argument("--factors", type=int, default=3)
    f.add_argument("--codebook-size", type=int, default=10)
    f.add_argument("--beta", type=float, default=250.0)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--max-iters", type=int, default=None,
                   help="sweep cap (default: 0.001 * codebook_size**factors, at least 1)")
    f.add_argument("--inverse", choices=["conjugate", "clamped"], default="conjugate")
    f.add_argument("--save-codebooks", metavar="DIR", default=None,
                   help="write the generated codebooks as DIR/codebook_<j>.hdcb")

    e = sub.add_parser("experiment", help="run a named benchmark sweep")
    e.add_argument("preset", choices=sorted(PRESETS))
    e.add_argument("--trials", type=int, default=1000)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--dims", type=int, nargs="+")
    e.add_argument("--factors", type=int, nargs="+")
    e.add_argument("--sizes", type=int, nargs="+", metavar="M", help="search space sizes M")
    e.add_argument("--codebook-sizes", type=int, nargs="+", metavar="N")
    e.add_argument("--beta", type=float, default=None, help="single beta (default 250)")
    e.add_argument("--betas", type=float, nargs="+")
    e.add_argument("--sigmas", type=float, nargs="+")
    e.add_argument("--ks", type=int, nargs="+")
    e.add_argument("--kinds", choices=[k.value for k in Kind], nargs="+")
    e.add_argument("--rules", choices=["original", "attention"], nargs="+")
    e.add_argument("--success-on", choices=["first", "any"], default="first")
    e.add_argument("--inverse", choices=["conjugate", "clamped"], default="conjugate")
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--out", default=None, help="records file (default: standard output)")
    e.add_argument("--format", choices=["csv", "json"], default="csv")
    e.add_argument("--plot", default=None, metavar="PATH.svg")
    e.add_argument("--quiet", action="store_true")
    return parser


def _cmd_factorize(args) -> int:
    n, F = args.codebook_size, args.factors
    if F < 1 or n < 1 or args.dim < 1:
        raise ValueError("--factors, --codebook-size and --dim must be positive")
    rng = np.random.default_rng(args.seed)
    cbs = [make_codebook(n, args.dim, args.kind, rng, seed=args.seed) for _ in range(F)]
    truth = BundleSpec.random([n] * F, 1, rng)
    s = encode_bundle(cbs, truth)
    cfg = ResonatorConfig(
        UpdateRule.from_parts(args.rule, args.kind),
        beta=args.beta,
        max_iters=args.max_iters or max_iters_for(n ** F),
        inverse_mode=args.inverse,
    )
    if args.save_codebooks:
        out = Path(args.save_codebooks)
        out.mkdir(parents=True, exist_ok=True)
        for j, cb in enumerate(cbs):
            codebook_io.save(cb, out / f"codebook_{j}.hdcb")
    res = factorize(s, cbs, cfg)
    print(json.dumps({
        "kind": args.kind,
        "rule": args.rule,
        "dim": args.dim,
        "factors": F,
        "codebook_size": n,
        "max_iters": cfg.max_iters,
        "truth": list(truth.tuples[0]),
        "indices": list(res.indices),
        "correct": res.indices == truth.tuples[0],
        "iterations": res.iterations,
        "converged": res.converged,
        "stop_reason": res.stop_reason.value,
    }))
    return EXIT_OK


def _cmd_experiment(args) -> int:
    betas = args.betas or ([args.beta] if args.beta is not None else None)
    specs = build_specs(
        args.preset, trials=args.trials, seed=args.seed, kinds=args.kinds, rules=args.rules,
        dims=args.dims, factors=args.factors, search_space_sizes=args.sizes,
        codebook_sizes=args.codebook_sizes, betas=betas, sigmas=args.sigmas, ks=args.ks,
        success_on=args.success_on, inverse_mode=args.inverse,
    )

    def progress(done, total):
        if not args.quiet:
            print(f"\r{args.preset}: {done}/{total} trials", end="" if done < total else "\n",
                  file=sys.stderr, flush=True)

    sink = StreamingSink(args.out, args.format) if args.out else None
    try:
        records = run_experiment(specs, workers=args.workers, sink=sink, progress=progress)
    finally:
        if sink is not None:
            sink.close()
    if sink is None:
        sys.stdout.write(format_records(records, args.format))
    if args.preset in ("tables", "bundle-sweep") and not args.quiet:
        print(summary_tables(records), file=sys.stderr)
    if args.plot:
        p = PRESETS[args.preset]
        emit_plot(records, p.x_axis, p.y_axis, p.group_by, args.plot, title=args.preset)
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "factorize":
            return _cmd_factorize(args)
        return _cmd_experiment(args)
    except OSError as e:
        print(f"hdresonator: I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        print(f"hdresonator: invalid argument: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
