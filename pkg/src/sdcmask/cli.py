"""Command-line interface: mask CSV columns, report on masked pairs, and
reproduce the lognormal validation study.

Subcommands
-----------
mask      mask one column of a CSV file, write the masked file plus a JSON
          report beside it (and figures with --figures)
report    compute the risk/utility report for an (original, masked) file
          pair, with plot-ready series and rendered figures
simulate  draw lognormal data, mask it across an alpha grid, and emit the
          full diagnostic bundle per alpha plus a correlation summary

Defaults for --seed and --outdir can be set with the SDCMASK_SEED and
SDCMASK_OUTDIR environment variables; explicit flags always win. Identical
inputs and configuration produce byte-identical outputs, and a failing run
never leaves partial files behind.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import figures
from .additive import mask_additive
from .config import METHOD_ADDITIVE, METHOD_MULTIPLICATIVE, METHODS, MaskConfig
from .dataset import OutputStage, load_csv, save_csv
from .errors import EXIT_CODES, ConfigError, MaskingError
from .multiplicative import mask_multiplicative
from .output import (
    absdiff_csv_text,
    density_csv_text,
    rank_pairs_csv_text,
    report_json_text,
)
from .report import MaskReport, build_report, rank_pairs
from .rng import MODES
from .simulate import DEFAULT_ALPHA_GRID, run_simulation

PROG = "sdcmask"


def _env_seed() -> int:
    raw = os.environ.get("SDCMASK_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{PROG}: error: ConfigError: SDCMASK_SEED={raw!r} is not an integer")


def _env_outdir() -> str:
    return os.environ.get("SDCMASK_OUTDIR", ".")


def _exit_code_epilog() -> str:
    lines = ["exit codes:"]
    lines += [f"  {code:>2}  {meaning}" for code, meaning in sorted(EXIT_CODES.items())]
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Mask confidential numeric microdata columns and report "
        "utility/risk diagnostics.",
        epilog=_exit_code_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    mask = sub.add_parser(
        "mask",
        help="mask one CSV column",
        epilog=_exit_code_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    mask.add_argument("--method", required=True, choices=METHODS)
    mask.add_argument("--alpha", required=True, type=float,
                      help="similarity in [0, 1]; 1 releases the data unchanged")
    mask.add_argument("--mode", choices=MODES, default="exact")
    mask.add_argument("--seed", type=int, default=_env_seed())
    mask.add_argument("--column", required=True, help="target column to mask")
    mask.add_argument("--key-column", default=None,
                      help="non-confidential key column (additive method only)")
    mask.add_argument("--in", dest="in_path", required=True, metavar="PATH")
    mask.add_argument("--out", dest="out_path", required=True, metavar="PATH")
    mask.add_argument("--figures", action="store_true",
                      help="also render density/absdiff/rank figures beside the output")
    mask.set_defaults(func=cmd_mask)

    report = sub.add_parser(
        "report",
        help="report on an (original, masked) file pair",
        epilog=_exit_code_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    report.add_argument("--in", dest="in_path", required=True, metavar="PATH",
                        help="original data file")
    report.add_argument("--masked", dest="masked_path", required=True, metavar="PATH")
    report.add_argument("--column", required=True)
    report.add_argument("--method", choices=METHODS, default=METHOD_MULTIPLICATIVE,
                        help="method that produced the masked file (labels the report)")
    report.add_argument("--alpha", required=True, type=float,
                        help="similarity the masked file was produced with")
    report.add_argument("--mode", choices=MODES, default="exact")
    report.add_argument("--seed", type=int, default=_env_seed())
    report.add_argument("--key-column", default=None)
    report.add_argument("--outdir", default=_env_outdir(), metavar="DIR")
    report.set_defaults(func=cmd_report)

    simulate = sub.add_parser(
        "simulate",
        help="run the lognormal validation study",
        epilog=_exit_code_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    simulate.add_argument("--n", type=int, default=1000)
    simulate.add_argument("--mu", type=float, default=4.0,
                          help="log-scale mean of the simulated lognormal")
    simulate.add_argument("--sigma-sq", type=float, default=2.0,
                          help="log-scale variance of the simulated lognormal")
    simulate.add_argument("--alpha-grid", default=",".join(f"{a:g}" for a in DEFAULT_ALPHA_GRID),
                          help="comma-separated similarity grid")
    simulate.add_argument("--mode", choices=MODES, default="exact")
    simulate.add_argument("--seed", type=int, default=_env_seed())
    simulate.add_argument("--bins", type=int, default=100)
    simulate.add_argument("--outdir", default=_env_outdir(), metavar="DIR")
    simulate.set_defaults(func=cmd_simulate)

    return parser


def _mask_column(config: MaskConfig, x: np.ndarray, s: np.ndarray | None) -> np.ndarray:
    label = f"{config.method}:{config.target_column}"
    if config.method == METHOD_ADDITIVE:
        return mask_additive(x, s, config.alpha, config.seed, config.mode,
                             stream_label=label)
    return mask_multiplicative(x, config.alpha, config.seed, config.mode,
                               stream_label=label)


def _emit_report_files(
    stage: OutputStage,
    report: MaskReport,
    x: np.ndarray,
    y: np.ndarray,
    json_path: Path,
    figure_base: Path | None,
    series_dir: Path | None = None,
) -> None:
    """Write the JSON report, and optionally series CSVs and figures."""
    stage.write_text(json_path, report_json_text(report))
    if series_dir is None and figure_base is None:
        return
    pairs = rank_pairs(x, y)
    edges, dens_x, dens_y = figures.density_series(x, y)
    if series_dir is not None:
        stage.write_text(series_dir / "absdiff.csv", absdiff_csv_text(report))
        stage.write_text(series_dir / "rank_pairs.csv", rank_pairs_csv_text(pairs))
        stage.write_text(series_dir / "density.csv",
                         density_csv_text(edges, dens_x, dens_y))
    if figure_base is not None:
        alpha = report.alpha
        figures.save_density_figure(
            stage.temp_path(Path(f"{figure_base}.density.png")),
            edges, dens_y, reference=dens_x,
            title=f"Density, original vs masked, alpha = {alpha:g}",
        )
        diffs = np.array([d for _, d in report.abs_diff_series])
        figures.save_absdiff_figure(
            stage.temp_path(Path(f"{figure_base}.absdiff.png")),
            diffs, title=f"Absolute differences, alpha = {alpha:g}",
        )
        figures.save_rank_pairs_figure(
            stage.temp_path(Path(f"{figure_base}.rank_pairs.png")),
            pairs[:, 0], pairs[:, 1],
            title=f"Original vs masked ranks, alpha = {alpha:g}",
        )


def cmd_mask(args: argparse.Namespace) -> int:
    out_path = Path(args.out_path)
    report_path = out_path.with_suffix(".report.json")
    config = MaskConfig(
        method=args.method,
        alpha=args.alpha,
        mode=args.mode,
        seed=args.seed,
        target_column=args.column,
        key_column=args.key_column,
        out_path=out_path,
        report_path=report_path,
    )
    dataset = load_csv(args.in_path)
    x = dataset.numeric_column(config.target_column)
    s = dataset.numeric_column(config.key_column) if config.key_column else None
    y = _mask_column(config, x, s)
    report = build_report(x, y, config)
    dataset.replace_column(config.target_column, y)

    with OutputStage() as stage:
        save_csv(dataset, out_path, stage)
        figure_base = out_path.with_suffix("") if args.figures else None
        _emit_report_files(stage, report, x, y, report_path, figure_base)
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    config = MaskConfig(
        method=args.method,
        alpha=args.alpha,
        mode=args.mode,
        seed=args.seed,
        target_column=args.column,
        key_column=args.key_column,
    )
    x = load_csv(args.in_path).numeric_column(config.target_column)
    y = load_csv(args.masked_path).numeric_column(config.target_column)
    report = build_report(x, y, config)

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    with OutputStage() as stage:
        _emit_report_files(
            stage, report, x, y,
            json_path=outdir / "report.json",
            figure_base=outdir / "report",
            series_dir=outdir,
        )
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    try:
        grid = tuple(float(a) for a in args.alpha_grid.split(",") if a.strip())
    except ValueError:
        raise ConfigError(
            f"--alpha-grid {args.alpha_grid!r} is not a comma-separated float list"
        ) from None
    reports = run_simulation(
        outdir=args.outdir,
        n=args.n,
        mu=args.mu,
        sigma_sq=args.sigma_sq,
        alpha_grid=grid,
        seed=args.seed,
        mode=args.mode,
        bins=args.bins,
    )
    for rep in reports:
        print(
            f"alpha={rep.alpha:g} pearson_xy={rep.pearson_xy:.4f} "
            f"spearman_xy={rep.spearman_xy:.4f} rank_swaps={rep.rank_swaps}"
        )
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MaskingError as exc:
        message = " ".join(str(exc).split())
        print(f"{PROG}: error: {type(exc).__name__}: {message}", file=sys.stderr)
        return exc.exit_code
    except FileNotFoundError as exc:
        message = " ".join(str(exc).split())
        print(f"{PROG}: error: FileNotFound: {message}", file=sys.stderr)
        return 3
    except OSError as exc:
        message = " ".join(str(exc).split())
        print(f"{PROG}: error: IoError: {message}", file=sys.stderr)
        return 9


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
