"""Command-line interface.

Subcommands mirror the pipeline stages (skeletonize, vectorize, resample,
order, export-deltas, render), plus roundtrip fidelity measurement,
dataset generation, retrieval evaluation, and the full pipeline. All
diagnostics go to stderr; results go to files or stdout. Exit codes:
0 success, 1 usage error, 2 processing error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__, formats, graph, ordering, raster, rendering, resampling, retrieval, thinning

_USAGE_EXIT = 1
_PROCESSING_EXIT = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


def _load_mask(path: Path, method: str, threshold: int, invert: bool):
    if not path.exists():
        raise FileNotFoundError(f"input file not found: {path}")
    gray = raster.read_png(path)
    if invert:
        gray = 255 - gray
    return raster.binarize(gray, method=method, threshold=threshold)


def _add_binarize_flags(parser):
    parser.add_argument("--binarize", choices=("otsu", "fixed"), default="otsu",
                        help="threshold selection (default: otsu)")
    parser.add_argument("--threshold", type=int, default=128,
                        help="threshold for --binarize fixed (default: 128)")
    parser.add_argument("--invert", action="store_true",
                        help="invert grayscale before binarizing (light ink on dark)")


def _add_resample_flags(parser):
    parser.add_argument("--accel", type=float, required=True,
                        help="maximum acceleration, pixels per step^2")
    parser.add_argument("--spacing", type=float, default=None,
                        help="pre-sample spacing in pixels (default: accel / 3)")
    parser.add_argument("--reach", type=float, default=None,
                        help="corner threshold in pixels (default: 3 * spacing)")


def _resample_params(args) -> resampling.ResampleParams:
    try:
        return resampling.ResampleParams(args.accel, args.spacing, args.reach)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def build_parser() -> _Parser:
    parser = _Parser(prog="strokeforge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("skeletonize", help="thin a PNG to its skeleton PNG")
    p.add_argument("input", type=Path)
    p.add_argument("-o", "--output", type=Path, required=True)
    _add_binarize_flags(p)

    p = sub.add_parser("vectorize", help="extract strokes from a skeleton PNG")
    p.add_argument("input", type=Path)
    p.add_argument("-o", "--output", type=Path, required=True)
    _add_binarize_flags(p)

    p = sub.add_parser("resample", help="assign pen dynamics to a stroke-set JSON")
    p.add_argument("input", type=Path)
    p.add_argument("-o", "--output", type=Path, required=True)
    _add_resample_flags(p)
    p.add_argument("--method", choices=("maxaccel", "constvel", "none"), default="maxaccel")
    p.add_argument("--speed", type=float, default=None,
                   help="step size for --method constvel (default: pre-sample spacing)")
    p.add_argument("--jobs", type=int, default=1, help="worker threads over strokes")

    p = sub.add_parser("order", help="order a sampled sequence left to right")
    p.add_argument("input", type=Path)
    p.add_argument("-o", "--output", type=Path, required=True)

    p = sub.add_parser("export-deltas", help="write a sequence as dx,dy,lift CSV")
    p.add_argument("input", type=Path)
    p.add_argument("-o", "--output", type=Path, required=True)

    p = sub.add_parser("render", help="rasterize a sequence JSON to PNG")
    p.add_argument("input", type=Path)
    p.add_argument("-o", "--output", type=Path, required=True)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--height", type=int, required=True)

    p = sub.add_parser("roundtrip", help="skeleton -> strokes -> render, print chamfer JSON")
    p.add_argument("input", type=Path)
    p.add_argument("--accel", type=float, default=2.0)
    p.add_argument("--spacing", type=float, default=None)
    p.add_argument("--reach", type=float, default=None)
    _add_binarize_flags(p)

    p = sub.add_parser("dataset-gen", help="write (original, skeleton) training pairs")
    p.add_argument("--in", dest="input_dir", type=Path, required=True)
    p.add_argument("--out", dest="output_dir", type=Path, required=True)
    p.add_argument("--binarize", choices=("otsu", "fixed"), default="otsu")
    p.add_argument("--threshold", type=int, default=128)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("eval", help="leave-one-out retrieval metrics from a distance CSV")
    p.add_argument("--dist", type=Path, required=True)
    p.add_argument("--labels", type=Path, required=True)
    p.add_argument("--soft", default="2,3,4,5", help="comma-separated soft-K ranks")
    p.add_argument("--exclude", type=Path, default=None,
                   help="CSV of query,db pairs to drop per query")
    p.add_argument("-o", "--output", type=Path, default=None,
                   help="report JSON path (default: stdout)")

    p = sub.add_parser("pipeline", help="skeletonize, vectorize, resample, and order a PNG")
    p.add_argument("input", type=Path)
    p.add_argument("-o", "--output", type=Path, required=True)
    _add_resample_flags(p)
    _add_binarize_flags(p)
    p.add_argument("--jobs", type=int, default=1)

    return parser


def _cmd_skeletonize(args) -> None:
    mask = _load_mask(args.input, args.binarize, args.threshold, args.invert)
    raster.save_png(thinning.thin(mask), args.output)


def _cmd_vectorize(args) -> None:
    mask = _load_mask(args.input, args.binarize, args.threshold, args.invert)
    formats.write_stroke_set(args.output, graph.vectorize(mask))


def _cmd_resample(args) -> None:
    params = _resample_params(args)
    if args.speed is not None and args.speed <= 0:
        raise _UsageError("--speed must be positive")
    if not args.input.exists():
        raise FileNotFoundError(f"input file not found: {args.input}")
    strokes = formats.read_stroke_set(args.input)
    sampled = resampling.resample_stroke_set(
        strokes, params, method=args.method, speed=args.speed, jobs=args.jobs
    )
    formats.write_sequence(args.output, ordering.OnlineSequence(sampled))


def _cmd_order(args) -> None:
    if not args.input.exists():
        raise FileNotFoundError(f"input file not found: {args.input}")
    seq = formats.read_sequence(args.input)
    formats.write_sequence(args.output, ordering.order_strokes(seq.strokes))


def _cmd_export_deltas(args) -> None:
    if not args.input.exists():
        raise FileNotFoundError(f"input file not found: {args.input}")
    seq = formats.read_sequence(args.input)
    formats.write_deltas_csv(args.output, ordering.to_deltas(seq))


def _cmd_render(args) -> None:
    if args.width < 1 or args.height < 1:
        raise _UsageError("--width and --height must be at least 1")
    if not args.input.exists():
        raise FileNotFoundError(f"input file not found: {args.input}")
    seq = formats.read_sequence(args.input)
    raster.save_png(rendering.render_online(seq, args.width, args.height), args.output)


def _run_pipeline(mask, params: resampling.ResampleParams, jobs: int) -> ordering.OnlineSequence:
    skeleton = thinning.thin(mask)
    strokes = graph.vectorize(skeleton)
    sampled = resampling.resample_stroke_set(strokes, params, jobs=jobs)
    return ordering.order_strokes(sampled)


def _cmd_roundtrip(args) -> None:
    params = _resample_params(args)
    mask = _load_mask(args.input, args.binarize, args.threshold, args.invert)
    skeleton = thinning.thin(mask)
    seq = _run_pipeline(mask, params, jobs=1)
    height, width = skeleton.shape
    rendered = rendering.render_online(seq, width, height)
    sys.stdout.write(formats.dumps_json(rendering.chamfer(skeleton, rendered)))


def _cmd_dataset_gen(args) -> None:
    if not args.input_dir.is_dir():
        raise FileNotFoundError(f"input directory not found: {args.input_dir}")
    manifest = thinning.generate_training_pairs(
        args.input_dir,
        args.output_dir,
        binarize_method=args.binarize,
        threshold=args.threshold,
        jobs=args.jobs,
    )
    skipped = sum(1 for entry in manifest if entry["status"] == "skipped")
    print(f"wrote {len(manifest) - skipped} pairs, skipped {skipped}", file=sys.stderr)


def _cmd_eval(args) -> None:
    try:
        soft_ks = [int(k) for k in args.soft.split(",") if k.strip()]
    except ValueError as exc:
        raise _UsageError(f"bad --soft value: {args.soft}") from exc
    for path in (args.dist, args.labels):
        if not path.exists():
            raise FileNotFoundError(f"input file not found: {path}")
    problem = retrieval.RetrievalProblem(
        formats.read_distance_csv(args.dist), formats.read_labels(args.labels)
    )
    exclusions = []
    if args.exclude is not None:
        for line in args.exclude.read_text().splitlines():
            if line.strip():
                q, j = line.split(",")
                exclusions.append((int(q), int(j)))
    report = retrieval.leave_one_out_eval(problem, exclusions, soft_ks)
    out = {
        "map": round(report["map"], 2),
        "accuracy": round(report["accuracy"], 2),
        "soft": {str(k): round(v, 2) for k, v in report["soft"].items()},
        "skipped": report["skipped"],
    }
    text = formats.dumps_json(out)
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.write_text(text)


def _cmd_pipeline(args) -> None:
    params = _resample_params(args)
    mask = _load_mask(args.input, args.binarize, args.threshold, args.invert)
    seq = _run_pipeline(mask, params, jobs=args.jobs)
    formats.write_sequence(args.output, seq)


_COMMANDS = {
    "skeletonize": _cmd_skeletonize,
    "vectorize": _cmd_vectorize,
    "resample": _cmd_resample,
    "order": _cmd_order,
    "export-deltas": _cmd_export_deltas,
    "render": _cmd_render,
    "roundtrip": _cmd_roundtrip,
    "dataset-gen": _cmd_dataset_gen,
    "eval": _cmd_eval,
    "pipeline": _cmd_pipeline,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _USAGE_EXIT
    except SystemExit as exc:
        # argparse exits itself for --help/--version
        return int(exc.code or 0)
    try:
        _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _USAGE_EXIT
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _PROCESSING_EXIT
    return 0


if __name__ == "__main__":
    sys.exit(main())
