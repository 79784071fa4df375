"""Batch command line: fit a model from files and write exports.

Exit codes: 0 success, 2 configuration error, 3 parse error,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import simplexes
from .errors import (
    ConfigError,
    DecompositionError,
    EmptyMeasureError,
    ParseError,
    PmaError,
    RankZeroError,
    UnknownAnnotationError,
)
from .frame import DataFrame, parse_annotations, parse_data
from .moments import DEFAULT_RANK_TOL, fit_pma
from .report import export_axes, export_eigenvalues, export_report, export_scores, report

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PARSE = 3
EXIT_NUMERIC = 4

_DELIMITERS = {"auto": None, "tab": "\t", "comma": ","}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pma",
        description="Simplex principal moment analysis.",
        epilog="Exit codes: 0 success, 2 config error, 3 parse error, 4 numerical failure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    fit_cmd = sub.add_parser("fit", help="fit a model from a data file and write exports")
    fit_cmd.add_argument("--data", required=True, help="delimited data file (variables x samples)")
    fit_cmd.add_argument("--metadata", help="delimited metadata file (sample annotations)")
    fit_cmd.add_argument(
        "--strategy", required=True, choices=["points", "groupby", "knn", "chain"]
    )
    fit_cmd.add_argument("--group-column", help="annotation for --strategy groupby")
    fit_cmd.add_argument("--k", type=int, help="neighbor count for --strategy knn")
    fit_cmd.add_argument("--order-column", help="numeric annotation for --strategy chain")
    fit_cmd.add_argument("--series-column", help="optional series annotation for chain")
    fit_cmd.add_argument(
        "--volume-weights", action="store_true", help="scale simplex mass by volume"
    )
    fit_cmd.add_argument(
        "--center", action="store_true", help="subtract the measure mean before decomposition"
    )
    fit_cmd.add_argument("--dims", type=int, help="report rank (default min(3, rank))")
    fit_cmd.add_argument("--out", default=".", help="output directory")
    fit_cmd.add_argument("--format", default="tsv", choices=["tsv", "json"])
    fit_cmd.add_argument("--delimiter", default="auto", choices=["auto", "tab", "comma"])
    fit_cmd.add_argument("--rank-tol", type=float, default=DEFAULT_RANK_TOL)
    return parser


def _build_simplexes(args, frame: DataFrame):
    if args.strategy == "points":
        return simplexes.points(frame)
    if args.strategy == "groupby":
        if not args.group_column:
            raise ConfigError("--strategy groupby requires --group-column")
        return simplexes.group_by(frame, args.group_column)
    if args.strategy == "knn":
        if args.k is None:
            raise ConfigError("--strategy knn requires --k")
        return simplexes.knn(frame, args.k)
    if args.strategy == "chain":
        if not args.order_column:
            raise ConfigError("--strategy chain requires --order-column")
        return simplexes.chain(frame, args.order_column, args.series_column)
    raise ConfigError(f"unknown strategy {args.strategy!r}")


def run_fit(args) -> int:
    delimiter = _DELIMITERS[args.delimiter]
    frame = parse_data(Path(args.data).read_text(), delimiter)
    if args.metadata:
        frame = parse_annotations(Path(args.metadata).read_text(), frame, delimiter)
    sset = _build_simplexes(args, frame)
    if args.volume_weights:
        sset = simplexes.apply_volume_weights(sset, frame)
    model = fit_pma(
        frame,
        sset,
        center=args.center,
        rank_tol=args.rank_tol,
        config={"strategy": args.strategy, "volume_weights": args.volume_weights},
    )
    dims = args.dims if args.dims is not None else min(3, model.rank)
    if not 1 <= dims <= model.rank:
        raise ConfigError(f"--dims {dims} out of range [1, {model.rank}]")
    rep = report(model, dims)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ext = args.format
    (out / f"eigenvalues.{ext}").write_text(export_eigenvalues(model, ext))
    (out / f"axes.{ext}").write_text(export_axes(rep, ext))
    (out / f"scores.{ext}").write_text(export_scores(rep, ext))
    (out / "report.json").write_text(export_report(rep))

    print("component\teigenvalue\texplained\tcumulative")
    total = model.trace_total
    running = 0.0
    for k, lam in enumerate(model.eigenvalues):
        running += float(lam)
        print(f"PM{k + 1}\t{lam:.6g}\t{lam / total:.6g}\t{running / total:.6g}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, matching our config-error code
        return int(exc.code or 0)
    try:
        if args.command == "fit":
            return run_fit(args)
        raise ConfigError(f"unknown command {args.command!r}")
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ConfigError, UnknownAnnotationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DecompositionError, RankZeroError, EmptyMeasureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except PmaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
