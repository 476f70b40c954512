"""Command-line front end.

Subcommands: detect, deskew, evaluate, synth, bench, fht-dump.
Exit status: 0 on success, 1 on domain/format errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import criterion, evaluation, raster
from .backend import BACKEND
from .detector import DetectorConfig, detect_skew
from .fht import Orientation, SlopeSign, fht, write_accumulator_pgm


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="houghskew",
        description="Document skew detection with the dyadic fast Hough transform",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="print the skew angle of an image, in degrees")
    p.add_argument("image")
    p.add_argument("--max-angle", type=float, default=15.0, help="search window, degrees")
    p.add_argument("--no-vertical", action="store_true", help="use only the horizontal channel")
    p.add_argument("--json", dest="as_json", action="store_true", help="emit a JSON object")
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("deskew", help="write a rotation-corrected copy of an image")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--angle", type=float, default=None, help="skip detection, correct this angle")
    p.set_defaults(func=_cmd_deskew)

    p = sub.add_parser("evaluate", help="run detection over a manifest and report metrics")
    p.add_argument("--images", required=True, help="directory the manifest filenames resolve in")
    p.add_argument("--manifest", required=True, help="CSV of filename,group_id,gt_angle_deg")
    p.add_argument("--threshold", type=float, default=evaluation.DEFAULT_THRESHOLD)
    p.add_argument("--report", default=None, help="write the JSON report here instead of stdout")
    p.add_argument("--profiles", default=None, help="directory for per-image profile dumps")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("synth", help="generate a synthetic skewed-document dataset")
    p.add_argument("--out", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--size", type=int, default=512)
    p.add_argument("--max-angle", type=float, default=15.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("bench", help="time the fast transform against rotate-and-project")
    p.add_argument("--size", type=int, default=1024)
    p.add_argument("--repeats", type=int, default=9)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("fht-dump", help="export one accumulator as a 16-bit PGM")
    p.add_argument("image")
    p.add_argument("--orientation", choices=("h", "v"), required=True)
    p.add_argument("--sign", choices=("+", "-"), required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_fht_dump)

    return parser


def _cmd_detect(args) -> int:
    cfg = DetectorConfig(max_angle=args.max_angle, use_vertical=not args.no_vertical)
    est = detect_skew(raster.load_image(args.image), cfg)
    if args.as_json:
        print(json.dumps({"angle": est.angle, "peak_value": est.peak_value}))
    else:
        print(f"{est.angle:.6f}")
    return 0


def _cmd_deskew(args) -> int:
    img = raster.load_image(args.input)
    angle = args.angle if args.angle is not None else detect_skew(img).angle
    raster.save_image(args.output, raster.rotate(img, -angle, fill=1.0))
    return 0


def _detect_file(task):
    """Worker for evaluate: path -> (angle, profile arrays or None)."""
    path, want_profile = task
    est = detect_skew(raster.load_image(path))
    if want_profile:
        return est.angle, est.profile.tangents, est.profile.values
    return est.angle, None, None


def _cmd_evaluate(args) -> int:
    records = evaluation.parse_manifest(args.manifest)
    if not records:
        raise ValueError(f"manifest {args.manifest} has no records")
    images = Path(args.images)
    tasks = [(str(images / r.filename), args.profiles is not None) for r in records]
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    if jobs < 1:
        raise ValueError(f"--jobs must be >= 1, got {jobs}")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_detect_file, tasks, chunksize=4))
    else:
        results = [_detect_file(t) for t in tasks]

    profile_dir = Path(args.profiles) if args.profiles else None
    if profile_dir is not None:
        profile_dir.mkdir(parents=True, exist_ok=True)
    for rec, (angle, tangents, values) in zip(records, results):
        rec.est_angle = angle
        if profile_dir is not None:
            prof = criterion.CriterionProfile(
                tangents, values, criterion.ProfileSource.COMBINED
            )
            out = profile_dir / f"{Path(rec.filename).name}.profile.txt"
            criterion.write_profile_text(prof, out)

    report = evaluation.compute_metrics(records, threshold=args.threshold)
    text = json.dumps(report.to_dict(), indent=2)
    if args.report:
        Path(args.report).write_text(text + "\n")
        print(
            f"aed={report.aed:.6f} top80={report.top80:.6f} "
            f"ce={report.ce:.6f} max={report.max_error:.6f}"
        )
    else:
        print(text)
    return 0


def _cmd_synth(args) -> int:
    if args.count < 1:
        raise ValueError(f"--count must be >= 1, got {args.count}")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(args.seed)
    angles = rng.uniform(-args.max_angle, args.max_angle, size=args.count)
    lines = ["# houghskew synthetic dataset", "# filename,group_id,gt_angle_deg"]
    for i, angle in enumerate(angles):
        # Ten samples per group share a page layout, like the contest data.
        group = i // 10
        img, gt = evaluation.synth_document(args.size, float(angle), seed=args.seed + group)
        name = f"doc_{i:04d}.png"
        raster.save_image(out / name, img)
        lines.append(f"{name},g{group:03d},{gt!r}")
    (out / "manifest.csv").write_text("\n".join(lines) + "\n")
    print(f"wrote {args.count} images and manifest.csv to {out}")
    return 0


def _cmd_bench(args) -> int:
    rep = evaluation.time_transforms(args.size, args.repeats)
    print(f"backend     : {BACKEND}")
    print(f"image side  : {rep.image_side}")
    print(f"projections : {rep.projections}")
    print(f"fht median  : {rep.fht_micros:.1f} us")
    print(f"drt median  : {rep.drt_micros:.1f} us")
    print(f"speedup     : {rep.speedup:.1f}x")
    return 0


def _cmd_fht_dump(args) -> int:
    img = raster.pad_to_dyadic(raster.load_image(args.image))
    orientation = (
        Orientation.HORIZONTAL if args.orientation == "h" else Orientation.VERTICAL
    )
    sign = SlopeSign.POSITIVE if args.sign == "+" else SlopeSign.NEGATIVE
    write_accumulator_pgm(fht(img, orientation, sign), args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
