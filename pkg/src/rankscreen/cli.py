"""Command-line front end: screen CSV datasets, generate synthetic data, run
benchmark tables, and run timing sweeps.

Exit codes: 0 success, 2 I/O failure, 3 malformed input data, 64 usage error.
The default seed comes from --seed, falling back to the RANKSCREEN_SEED
environment variable, then 0.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

import numpy as np

from .bandit import bandit_cr_sis
from .baselines import dc_sis, sis
from .core import BanditConfig, DataMatrix, ResponseVector, ScreenConfig, SeedSpec, default_model_size
from .evalbench import MethodSpec, run_replicates, timing_sweep
from .screen import ScreenResult, cr_sis
from .simgen import SimModelSpec, SimulationError, make_dataset

EXIT_OK = 0
EXIT_IO = 2
EXIT_PARSE = 3
EXIT_USAGE = 64

SCREEN_METHODS = ("cr-sis", "bandit-cr-sis", "sis", "dc-sis")


class UsageError(Exception):
    pass


class CsvFormatError(Exception):
    """Malformed dataset content; the message names the offending row/column."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    raw = os.environ.get("RANKSCREEN_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"RANKSCREEN_SEED must be an integer, got {raw!r}") from None


def read_csv_dataset(path: str, response: str) -> tuple[DataMatrix, ResponseVector]:
    """Parse a headered numeric CSV and split off the response column."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise CsvFormatError("empty input: no header row")
        hits = [i for i, name in enumerate(header) if name == response]
        if not hits:
            raise UsageError(f"response column {response!r} not found in header {header}")
        if len(hits) > 1:
            raise CsvFormatError(f"response column {response!r} appears {len(hits)} times in the header")
        yidx = hits[0]
        ncol = len(header)
        if ncol < 2:
            raise CsvFormatError("need at least one predictor column besides the response")
        body = []
        for rownum, row in enumerate(reader, start=1):
            if not row:
                continue
            if len(row) != ncol:
                raise CsvFormatError(f"row {rownum}: expected {ncol} cells, got {len(row)}")
            vals = []
            for cell, name in zip(row, header):
                try:
                    v = float(cell)
                except ValueError:
                    raise CsvFormatError(f"row {rownum}, column {name!r}: {cell!r} is not a number") from None
                if not math.isfinite(v):
                    raise CsvFormatError(f"row {rownum}, column {name!r}: non-finite value {cell!r}")
                vals.append(v)
            body.append(vals)
        if len(body) < 2:
            raise CsvFormatError(f"need at least 2 data rows, got {len(body)}")
    arr = np.asarray(body, dtype=np.float64)
    y = arr[:, yidx]
    X = np.delete(arr, yidx, axis=1)
    names = tuple(nm for i, nm in enumerate(header) if i != yidx)
    return DataMatrix(X, names=names), ResponseVector(y)


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_methods(methods_csv: str, alpha0_csv: str) -> list[MethodSpec]:
    kinds = [s.strip() for s in methods_csv.split(",") if s.strip()]
    if not kinds:
        raise UsageError("no methods given")
    try:
        alphas = [float(s) for s in alpha0_csv.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"--alpha0 must be a comma-separated list of numbers, got {alpha0_csv!r}") from None
    specs = []
    for kind in kinds:
        if kind == "bandit-cr-sis":
            specs.extend(MethodSpec(kind, a) for a in alphas)
        else:
            specs.append(MethodSpec(kind))
    return specs


# ------------------------------------------------------------------ screen


def _screen_payload(args, names, n, p, seed, result: ScreenResult, selection: dict) -> dict:
    payload = {
        "command": "screen",
        "input": args.input,
        "response": args.response,
        "method": args.method,
        "n": n,
        "p": p,
        "seed": seed,
        "selection": selection,
        "ranking": [
            {"feature": names[j], "index": j, "score": result.scores.get(j)} for j in result.ranking
        ],
        "selected": [names[j] for j in result.selected],
        "trace": [
            {
                "round": rec.round_index,
                "alpha": rec.alpha,
                "n_rows": rec.n_rows,
                "kept": [names[j] for j in rec.kept],
                "dropped": [names[j] for j in rec.dropped],
            }
            for rec in result.trace
        ],
    }
    return payload


def _screen_tsv(names, result: ScreenResult) -> str:
    chosen = set(result.selected)
    lines = ["rank\tfeature\tscore\tselected"]
    for rank, j in enumerate(result.ranking, start=1):
        score = result.scores.get(j)
        lines.append(f"{rank}\t{names[j]}\t{'' if score is None else score}\t{int(j in chosen)}")
    return "\n".join(lines) + "\n"


def cmd_screen(args) -> int:
    seed = _resolve_seed(args.seed)
    if args.soft is not None and args.method != "cr-sis":
        raise UsageError("--soft applies only to --method cr-sis")
    if args.soft is not None and args.d is not None:
        raise UsageError("--soft and --d are mutually exclusive")
    if args.alpha0 is not None and args.method != "bandit-cr-sis":
        raise UsageError("--alpha0 applies only to --method bandit-cr-sis")
    if args.eta is not None and args.method != "bandit-cr-sis":
        raise UsageError("--eta applies only to --method bandit-cr-sis")
    if args.threads < 1:
        raise UsageError(f"--threads must be >= 1, got {args.threads}")

    data, y = read_csv_dataset(args.input, args.response)
    names = data.names
    d = args.d if args.d is not None else default_model_size(data.n)

    if args.method == "cr-sis" and args.soft is not None:
        c, kappa = args.soft
        cfg = ScreenConfig(seed=SeedSpec(seed), mode="soft", c=c, kappa=kappa)
        result = cr_sis(data, y, cfg, workers=args.threads)
        selection = {"mode": "soft", "c": c, "kappa": kappa, "threshold": c * data.n ** (-kappa)}
    elif args.method == "cr-sis":
        cfg = ScreenConfig(seed=SeedSpec(seed), mode="hard", d=d)
        result = cr_sis(data, y, cfg, workers=args.threads)
        selection = {"mode": "hard", "d": d}
    elif args.method == "bandit-cr-sis":
        cfg = BanditConfig(
            seed=SeedSpec(seed),
            d=d,
            alpha0=args.alpha0 if args.alpha0 is not None else 0.35,
            eta=args.eta if args.eta is not None else 1.1,
        )
        result = bandit_cr_sis(data, y, cfg, workers=args.threads)
        selection = {"mode": "hard", "d": d, "alpha0": cfg.alpha0, "eta": cfg.eta}
    elif args.method == "sis":
        result = sis(data, y, d)
        selection = {"mode": "hard", "d": d}
    else:
        result = dc_sis(data, y, d)
        selection = {"mode": "hard", "d": d}

    if args.format == "tsv":
        _write_text(args.out, _screen_tsv(names, result))
    else:
        payload = _screen_payload(args, names, data.n, data.p, seed, result, selection)
        _write_text(args.out, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


# ------------------------------------------------------------------ simulate


def cmd_simulate(args) -> int:
    seed = _resolve_seed(args.seed)
    spec = SimModelSpec(args.model, n=args.n, p=args.p, rho=args.rho, seed=SeedSpec(seed))
    X, y = make_dataset(spec)
    rows = np.column_stack([X.values, y.values]).tolist()
    lines = [",".join(list(X.names) + ["y"])]
    lines.extend(",".join(str(v) for v in row) for row in rows)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print(",".join(X.names[j] for j in spec.active_set))
    return EXIT_OK


# ------------------------------------------------------------------ bench


def cmd_bench(args) -> int:
    seed = _resolve_seed(args.seed)
    methods = _parse_methods(args.methods, args.alpha0)
    if args.replicates < 1:
        raise UsageError(f"--replicates must be >= 1, got {args.replicates}")
    spec = SimModelSpec(args.model, n=args.n, p=args.p, rho=args.rho, seed=SeedSpec(seed))
    report = run_replicates(
        spec,
        methods,
        args.replicates,
        base_seed=SeedSpec(seed),
        time_methods=args.time,
        workers=args.threads,
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    print(report.render_table())
    return EXIT_OK


# ------------------------------------------------------------------ time


def cmd_time(args) -> int:
    seed = _resolve_seed(args.seed)
    methods = _parse_methods(args.methods, args.alpha0)
    try:
        grid = [int(s) for s in args.grid.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"--grid must be a comma-separated list of integers, got {args.grid!r}") from None
    report = timing_sweep(
        args.axis,
        grid,
        fixed=args.fixed,
        d=args.d,
        methods=methods,
        repeats=args.repeats,
        base_seed=SeedSpec(seed),
        model_id=args.model,
        workers=args.threads,
    )
    lines = ["method,axis_value,mean_seconds,stderr_seconds"]
    lines.extend(
        f"{row.method},{row.axis_value},{row.mean_seconds},{row.stderr_seconds}" for row in report.rows
    )
    _write_text(args.out, "\n".join(lines) + "\n")
    for method, slope in report.slopes().items():
        if slope is not None:
            print(f"log-log slope [{method}]: {slope:.3f}", file=sys.stderr)
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> _Parser:
    parser = _Parser(prog="rankscreen", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("screen", help="rank and select features of a CSV dataset")
    ps.add_argument("input", help="CSV file with a header row and numeric body")
    ps.add_argument("--response", required=True, help="name of the response column")
    ps.add_argument("--method", choices=SCREEN_METHODS, default="cr-sis")
    ps.add_argument("--d", type=int, help="hard-selection size (default floor(n/ln n))")
    ps.add_argument("--soft", nargs=2, type=float, metavar=("C", "KAPPA"), help="soft threshold c*n^-kappa (cr-sis only)")
    ps.add_argument("--alpha0", type=float, help="subsample trade-off (bandit-cr-sis only)")
    ps.add_argument("--eta", type=float, help="per-round alpha divisor (bandit-cr-sis only)")
    ps.add_argument("--seed", type=int)
    ps.add_argument("--threads", type=int, default=1)
    ps.add_argument("--out", help="output path (default stdout)")
    ps.add_argument("--format", choices=("json", "tsv"), default="json")
    ps.set_defaults(handler=cmd_screen)

    pg = sub.add_parser("simulate", help="write a synthetic benchmark dataset as CSV")
    pg.add_argument("--model", required=True, help="model id, e.g. 1a, 1b, ..., 2e")
    pg.add_argument("--n", type=int, required=True)
    pg.add_argument("--p", type=int, required=True)
    pg.add_argument("--rho", type=float, default=0.5)
    pg.add_argument("--seed", type=int)
    pg.add_argument("--out", required=True, help="CSV output path")
    pg.set_defaults(handler=cmd_simulate)

    pb = sub.add_parser("bench", help="replicate benchmark: S-quantiles and P-proportions")
    pb.add_argument("--model", required=True)
    pb.add_argument("--n", type=int, required=True)
    pb.add_argument("--p", type=int, required=True)
    pb.add_argument("--rho", type=float, default=0.5)
    pb.add_argument("--replicates", type=int, default=50)
    pb.add_argument("--methods", default="cr-sis", help="comma list from: " + ", ".join(SCREEN_METHODS))
    pb.add_argument("--alpha0", default="0.35", help="comma list of alpha0 values for bandit-cr-sis")
    pb.add_argument("--time", action="store_true", help="record per-method timing in the report")
    pb.add_argument("--seed", type=int)
    pb.add_argument("--threads", type=int, default=1)
    pb.add_argument("--out", help="write the JSON report here")
    pb.set_defaults(handler=cmd_bench)

    pt = sub.add_parser("time", help="wall-time sweep along an n- or p-grid")
    pt.add_argument("--axis", choices=("n", "p"), required=True)
    pt.add_argument("--grid", required=True, help="comma list of grid values")
    pt.add_argument("--fixed", type=int, required=True, help="value of the other dimension")
    pt.add_argument("--d", type=int, default=20)
    pt.add_argument("--methods", default="cr-sis,bandit-cr-sis")
    pt.add_argument("--alpha0", default="0.35")
    pt.add_argument("--repeats", type=int, default=5)
    pt.add_argument("--model", default="1a")
    pt.add_argument("--seed", type=int)
    pt.add_argument("--threads", type=int, default=1)
    pt.add_argument("--out", help="timing CSV path (default stdout)")
    pt.set_defaults(handler=cmd_time)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CsvFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SimulationError as exc:
        print(f"simulation error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def entrypoint() -> None:  # console-script shim
    sys.exit(main())
