#!/usr/bin/env python3
"""
Tubal CUR Toolkit - CLI Entry Point
===================================

Usage:
    python -m tubal_cur bench-multiply --n1 2000 --n2 200 --n3 5 --rank 50 --slices 230 --reps 10
    python -m tubal_cur decompose --synthetic --rank 5 --c 25,35 --algo cx --scores deterministic,randomized
    python -m tubal_cur rpca --synthetic --method full,cur --c 20 --l 20 --out rpca.csv
    python -m tubal_cur complete --input x.tns --mask-rate 0.5 --recovered-out l.tns
    python -m tubal_cur gen lowrank --n1 40 --n2 40 --n3 5 --rank 2 --out x.tns
    python -m tubal_cur convert-pgm frames/ --layout lateral --out faces.tns
"""

import argparse
import sys
from pathlib import Path

from . import __version__
from .config import BENCH_DEFAULTS, get_default_format, get_default_seed, get_solver_config, set_worker_count
from .errors import (
    DimMismatch,
    FormatError,
    InsufficientSupport,
    RankTooLarge,
    TubalError,
)
from .experiments import (
    RecoveryCase,
    run_bench_multiply,
    run_decompose,
    run_recovery,
    synthetic_completion_case,
    synthetic_rpca_case,
)
from .generators import gen_image_stack, gen_lowrank, gen_sparse_replicated
from .rng import derive_seed
from .solvers import AdmmConfig, Problem, corrupt_salt_pepper, make_mask
from .tensorfile import read_mask, read_pgm_stack, read_tensor, write_mask, write_pgm_stack, write_tensor
from .utils import print_error, print_header, print_info, print_metrics_table, print_success, save_json, write_metrics

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERICAL = 4


class UsageError(Exception):
    """Flag combination that argparse cannot reject on its own."""


# =============================================================================
# Helpers
# =============================================================================

def parse_int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return values


def parse_choices(text: str, allowed: tuple[str, ...], all_alias: str = "both") -> list[str]:
    items = [v.strip() for v in text.split(",") if v.strip()]
    if items == [all_alias]:
        return [a for a in allowed if a != "uniform"]
    bad = [v for v in items if v not in allowed]
    if bad or not items:
        raise UsageError(f"invalid choice(s) {bad or text!r}; expected from {allowed}")
    return items


def emit(rows, args, title: str) -> None:
    """Write metric rows and show the summary table."""
    flat = [r.flat() for r in rows]
    write_metrics(flat, args.out, args.format, quiet=args.quiet)
    if not args.quiet:
        print_metrics_table(flat, title=title)
    if args.manifest:
        save_json({
            "version": __version__,
            "command": args.command,
            "args": {k: str(v) for k, v in vars(args).items() if k != "func"},
            "rows": len(flat),
        }, args.manifest, quiet=args.quiet)


def suffixed(path: Path, tag: str, many: bool) -> Path:
    path = Path(path)
    return path.with_name(f"{path.stem}_{tag}{path.suffix}") if many else path


def admm_config(args) -> AdmmConfig:
    return AdmmConfig.from_defaults(
        lam=args.lam,
        max_iters=args.max_iters,
        time_limit_s=args.time_limit,
        verbose=args.verbose,
    )


# =============================================================================
# Subcommands
# =============================================================================

def cmd_bench_multiply(args) -> int:
    """Randomized multiplication study: uniform vs leverage sampling."""
    if args.slices != "auto":
        try:
            if int(args.slices) < 1:
                raise ValueError
        except ValueError:
            raise UsageError(f"--slices must be a positive integer or 'auto', got {args.slices!r}")
    if not args.quiet:
        print_header("BENCH MULTIPLY", f"{args.n1}x{args.n2}x{args.n3}, rank {args.rank}, slices {args.slices}")
    rows = run_bench_multiply(
        args.n1, args.n2, args.n3, args.rank, args.slices, args.density,
        args.reps, args.seed, quiet=args.quiet,
    )
    emit(rows, args, "rt-product relative errors")
    return EXIT_OK


def cmd_decompose(args) -> int:
    """t-CX / t-CUR against the truncated t-SVD baseline."""
    algos = ["cx", "cur"] if args.algo == "both" else [args.algo]
    scores = parse_choices(args.scores, ("deterministic", "randomized", "uniform"))
    params = {}
    if args.input:
        fixed = read_tensor(args.input)
        print_info(f"Loaded {args.input}: {fixed.dims}")
        source = lambda s: fixed  # noqa: E731
        params["input"] = str(args.input)
    else:
        params.update({"n1": args.n1, "n2": args.n2, "n3": args.n3, "noise": args.noise})
        source = lambda s: gen_lowrank(args.n1, args.n2, args.n3, args.rank, args.noise, s)[0]  # noqa: E731

    factors_out = None
    if args.factors_out:
        out_dir = Path(args.factors_out)
        out_dir.mkdir(parents=True, exist_ok=True)
        factors_out = lambda name, t: write_tensor(out_dir / f"{name}.tns", t)  # noqa: E731

    if not args.quiet:
        print_header("DECOMPOSE", f"algo={args.algo} scores={','.join(scores)} rank={args.rank}")
    rows = run_decompose(
        source, args.rank, args.c, args.l, algos, scores, args.reps, args.seed,
        params=params, factors_out=factors_out, quiet=args.quiet,
    )
    emit(rows, args, "Decomposition RSE")
    return EXIT_OK


def _recovery(args, problem: Problem) -> int:
    methods = parse_choices(args.method, ("full", "cur"), all_alias="all")
    cfg = admm_config(args)
    params: dict = {}

    if args.input:
        x = read_tensor(args.input)
        truth = read_tensor(args.truth) if args.truth else None
        if truth is not None and truth.dims != x.dims:
            raise DimMismatch("--truth dims differ from --input", truth.dims, x.dims)
        params["input"] = str(args.input)
        if problem is Problem.COMPLETE:
            if args.mask:
                fixed_mask = read_mask(args.mask)
                case_for = lambda s: RecoveryCase(fixed_mask.apply(x), truth, fixed_mask)  # noqa: E731
            else:
                case_for = lambda s: _masked_case(x, truth, args.mask_rate, s)  # noqa: E731
        else:
            case_for = lambda s: RecoveryCase(x, truth)  # noqa: E731
    else:
        if args.truth or (problem is Problem.COMPLETE and args.mask):
            raise UsageError("--truth and --mask need --input")
        params.update({"n1": args.n1, "n2": args.n2, "n3": args.n3})
        if problem is Problem.COMPLETE:
            params["mask_rate"] = args.mask_rate
            case_for = lambda s: synthetic_completion_case(  # noqa: E731
                args.n1, args.n2, args.n3, args.rank, args.mask_rate, s)
        else:
            params.update({"corruption": args.corruption, "magnitude": args.magnitude})
            case_for = lambda s: synthetic_rpca_case(  # noqa: E731
                args.n1, args.n2, args.n3, args.rank, args.corruption, args.magnitude, s)

    on_recovered = None
    if args.recovered_out:
        many = len(methods) > 1 or args.reps > 1

        def on_recovered(method, rep, l_hat):
            tag = f"{method}_rep{rep}" if args.reps > 1 else method
            write_tensor(suffixed(args.recovered_out, tag, many), l_hat)

    if not args.quiet:
        print_header(problem.value.upper(), f"methods={','.join(methods)} c={args.c} l={args.l}")
    rows = run_recovery(
        problem, case_for, methods, args.rank, args.c, args.l, cfg, args.reps, args.seed,
        params=params, on_recovered=on_recovered, quiet=args.quiet,
    )
    emit(rows, args, f"{problem.value} recovery")
    return EXIT_OK


def _masked_case(x, truth, rate, seed) -> RecoveryCase:
    mask = make_mask(x.dims, rate, derive_seed(seed, "mask"))
    return RecoveryCase(mask.apply(x), truth, mask)


def cmd_rpca(args) -> int:
    """Robust tensor PCA: full ADMM and/or CUR t-NN."""
    return _recovery(args, Problem.RPCA)


def cmd_complete(args) -> int:
    """Tensor completion: full ADMM and/or CUR t-NN."""
    if args.mask and args.mask_rate_given:
        raise UsageError("give either --mask or --mask-rate, not both")
    return _recovery(args, Problem.COMPLETE)


def cmd_gen(args) -> int:
    """Generate synthetic tensors (and masks / PGM frames)."""
    if args.kind == "lowrank":
        x, clean = gen_lowrank(args.n1, args.n2, args.n3, args.rank, args.noise, args.seed,
                               unit_entries=args.unit_entries)
    elif args.kind == "sparse":
        x = clean = gen_sparse_replicated(args.n1, args.n2, args.n3, args.density, args.seed)
    else:
        x = clean = gen_image_stack(args.n1, args.n2, args.n3, args.rank, args.seed)

    if args.corruption > 0:
        x, _ = corrupt_salt_pepper(x, args.corruption, args.magnitude, derive_seed(args.seed, "corrupt"))
    write_tensor(args.out, x)
    print_info(f"Wrote {args.out}: {x.dims}")
    if args.clean_out:
        write_tensor(args.clean_out, clean)
        print_info(f"Wrote {args.clean_out}")
    if args.mask_out:
        write_mask(args.mask_out, make_mask(x.dims, args.mask_rate, derive_seed(args.seed, "mask")))
        print_info(f"Wrote {args.mask_out}")
    if args.pgm_dir:
        paths = write_pgm_stack(args.pgm_dir, clean)
        print_info(f"Wrote {len(paths)} frames to {args.pgm_dir}")
    print_success("Generation complete")
    return EXIT_OK


def cmd_convert_pgm(args) -> int:
    """Stack a directory of PGM frames into a TensorFile."""
    try:
        x = read_pgm_stack(args.directory, args.layout)
    except DimMismatch as e:
        raise FormatError(str(e), 0, args.directory) from e
    write_tensor(args.out, x)
    print_success(f"Wrote {args.out}: {x.dims}")
    return EXIT_OK


# =============================================================================
# Main
# =============================================================================

def _common(parser: argparse.ArgumentParser, reps: int | None = None, out_default: str | None = "-") -> None:
    parser.add_argument("--seed", type=int, default=get_default_seed(),
                        help="Base seed; rep r uses seed + r (env: TUBAL_CUR_SEED)")
    parser.add_argument("--threads", type=int, default=None,
                        help="Worker threads for Fourier-slice work (env: TUBAL_CUR_THREADS)")
    parser.add_argument("--quiet", action="store_true", help="No progress bars or summary tables")
    if out_default is not None:
        parser.add_argument("--out", default=out_default, help="Metrics output path ('-' for stdout)")
        parser.add_argument("--format", choices=["csv", "json"], default=get_default_format(),
                            help="Metrics format (env: TUBAL_CUR_FORMAT)")
        parser.add_argument("--manifest", type=Path, help="Also write a JSON run manifest here")
    if reps is not None:
        parser.add_argument("--reps", type=int, default=reps, help=f"Repetitions (default: {reps})")


def _dims(parser: argparse.ArgumentParser, verb: str) -> None:
    d = BENCH_DEFAULTS[verb]
    parser.add_argument("--n1", type=int, default=d["n1"])
    parser.add_argument("--n2", type=int, default=d["n2"])
    parser.add_argument("--n3", type=int, default=d["n3"])
    parser.add_argument("--rank", type=int, default=d["rank"], help="Tubal rank")


def _solver_flags(parser: argparse.ArgumentParser, verb: str) -> None:
    d = BENCH_DEFAULTS[verb]
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--input", type=Path, help="Input TensorFile")
    source.add_argument("--synthetic", action="store_true", help="Use a generated instance (default)")
    parser.add_argument("--truth", type=Path, help="Ground-truth TensorFile for rse_frob")
    parser.add_argument("--method", default="full,cur", help="full, cur or full,cur")
    parser.add_argument("--c", type=int, default=d["c"], help="Lateral slices for CUR t-NN")
    parser.add_argument("--l", type=int, default=d["l"], help="Horizontal slices for CUR t-NN")
    parser.add_argument("--lam", type=float, default=None, help="Sparsity weight (default 1/sqrt(max(n1,n2) n3))")
    parser.add_argument("--max-iters", type=int, default=get_solver_config()["max_iters"])
    parser.add_argument("--time-limit", type=float, default=get_solver_config()["cli_time_limit_s"],
                        help="Per-solve wall-clock cap in seconds")
    parser.add_argument("--recovered-out", type=Path, help="Write the recovered low-rank tensor here")
    parser.add_argument("--verbose", action="store_true", help="Log solver progress")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tubal_cur",
        description="Tubal CUR Toolkit - randomized tubal tensor algebra experiments",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # --- BENCH-MULTIPLY command ---
    d = BENCH_DEFAULTS["bench-multiply"]
    bench = subparsers.add_parser("bench-multiply", help="Randomized t-product study")
    _common(bench, reps=d["reps"])
    _dims(bench, "bench-multiply")
    bench.add_argument("--slices", default=d["slices"], help="Expected sampled slices, or 'auto' for r log r")
    bench.add_argument("--density", type=float, default=d["density"], help="Nonzero fraction of the source tensor")
    bench.set_defaults(func=cmd_bench_multiply)

    # --- DECOMPOSE command ---
    d = BENCH_DEFAULTS["decompose"]
    dec = subparsers.add_parser("decompose", help="t-CX / t-CUR decompositions")
    _common(dec, reps=d["reps"])
    _dims(dec, "decompose")
    source = dec.add_mutually_exclusive_group()
    source.add_argument("--input", type=Path, help="Input TensorFile")
    source.add_argument("--synthetic", action="store_true", help="Use a generated low-rank + noise tensor (default)")
    dec.add_argument("--noise", type=float, default=d["noise"], help="Noise ||N||_F / ||L||_F for synthetic input")
    dec.add_argument("--c", type=parse_int_list, default=parse_int_list(d["c"]), help="Lateral slice counts")
    dec.add_argument("--l", type=parse_int_list, default=parse_int_list(d["l"]), help="Horizontal slice counts")
    dec.add_argument("--algo", choices=["cx", "cur", "both"], default="both")
    dec.add_argument("--scores", default="both",
                     help="deterministic, randomized, uniform (comma-separated) or both")
    dec.add_argument("--factors-out", type=Path, help="Directory for C/U/R TensorFiles")
    dec.set_defaults(func=cmd_decompose)

    # --- RPCA command ---
    d = BENCH_DEFAULTS["rpca"]
    rpca = subparsers.add_parser("rpca", help="Robust tensor PCA")
    _common(rpca, reps=d["reps"])
    _dims(rpca, "rpca")
    _solver_flags(rpca, "rpca")
    rpca.add_argument("--corruption", type=float, default=d["corruption"], help="Corrupted entry fraction")
    rpca.add_argument("--magnitude", type=float, default=d["magnitude"], help="Corruption magnitude")
    rpca.set_defaults(func=cmd_rpca)

    # --- COMPLETE command ---
    d = BENCH_DEFAULTS["complete"]
    comp = subparsers.add_parser("complete", help="Tensor completion")
    _common(comp, reps=d["reps"])
    _dims(comp, "complete")
    _solver_flags(comp, "complete")
    comp.add_argument("--mask", type=Path, help="Observation mask TensorFile")
    comp.add_argument("--mask-rate", type=float, default=None, help=f"Observed fraction (default {d['mask_rate']})")
    comp.set_defaults(func=cmd_complete)

    # --- GEN command ---
    gen = subparsers.add_parser("gen", help="Generate synthetic TensorFiles")
    _common(gen, out_default=None)
    gen.add_argument("kind", choices=["lowrank", "sparse", "images"])
    gen.add_argument("--out", type=Path, required=True, help="Output TensorFile")
    gen.add_argument("--n1", type=int, default=40, help="Rows (image height for 'images')")
    gen.add_argument("--n2", type=int, default=40, help="Columns (image width for 'images')")
    gen.add_argument("--n3", type=int, default=5, help="Tube length (frames for 'images')")
    gen.add_argument("--rank", type=int, default=2)
    gen.add_argument("--noise", type=float, default=0.0)
    gen.add_argument("--unit-entries", action="store_true", help="Scale low-rank entries to O(1)")
    gen.add_argument("--density", type=float, default=0.05)
    gen.add_argument("--corruption", type=float, default=0.0)
    gen.add_argument("--magnitude", type=float, default=5.0)
    gen.add_argument("--clean-out", type=Path, help="Also write the clean tensor")
    gen.add_argument("--mask-out", type=Path, help="Also write a random observation mask")
    gen.add_argument("--mask-rate", type=float, default=0.5)
    gen.add_argument("--pgm-dir", type=Path, help="Also write frontal slices as PGM frames")
    gen.set_defaults(func=cmd_gen)

    # --- CONVERT-PGM command ---
    conv = subparsers.add_parser("convert-pgm", help="Stack PGM frames into a TensorFile")
    _common(conv, out_default=None)
    conv.add_argument("directory", type=Path, help="Folder of .pgm frames")
    conv.add_argument("--layout", choices=["frontal", "lateral"], default="frontal")
    conv.add_argument("--out", type=Path, required=True, help="Output TensorFile")
    conv.set_defaults(func=cmd_convert_pgm)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return EXIT_OK

    if args.command == "complete":
        args.mask_rate_given = args.mask_rate is not None
        if args.mask_rate is None:
            args.mask_rate = BENCH_DEFAULTS["complete"]["mask_rate"]
    if args.threads is not None:
        if args.threads < 1:
            print_error("--threads must be >= 1")
            return EXIT_USAGE
        set_worker_count(args.threads)
    if getattr(args, "reps", 1) < 1:
        print_error("--reps must be >= 1")
        return EXIT_USAGE

    try:
        return args.func(args)
    except UsageError as e:
        print_error(str(e))
        return EXIT_USAGE
    except FormatError as e:
        print_error(str(e))
        return EXIT_IO
    except OSError as e:
        print_error(f"{e.strerror or e}: {e.filename}" if e.filename else str(e))
        return EXIT_IO
    except (RankTooLarge, InsufficientSupport, DimMismatch) as e:
        print_error(str(e))
        return EXIT_USAGE
    except TubalError as e:
        print_error(f"numerical failure: {e}")
        return EXIT_NUMERICAL
    except ValueError as e:
        print_error(str(e))
        return EXIT_USAGE
    except KeyboardInterrupt:
        print("\n[ABORT] Operation cancelled by user")
        return 130
    finally:
        if args.threads is not None:
            set_worker_count(None)


if __name__ == "__main__":
    sys.exit(main())
