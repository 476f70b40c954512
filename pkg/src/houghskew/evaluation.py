"""Evaluation harness: absolute-error metrics with per-group and
per-degree breakdowns, a synthetic stripe-document generator, and a
timing comparison of the fast transform against rotate-and-project.
"""

from __future__ import annotations

import math
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import raster
from .fht import Orientation, SlopeSign, drt_projection, fht

DEFAULT_THRESHOLD = 0.1  # degrees: "correct estimation" cutoff
TOP80_RULE = "mean of the floor(0.8*N) smallest absolute errors (at least one)"

_SUPERSAMPLE = 2  # synthetic pages render at this factor, then box-downsample


@dataclass
class SampleRecord:
    """One evaluated image: ground truth vs. detected angle, in degrees."""

    filename: str
    group_id: str
    gt_angle: float
    est_angle: float | None = None

    @property
    def error(self) -> float:
        if self.est_angle is None:
            raise ValueError(f"record {self.filename} has no estimate yet")
        return abs(self.est_angle - self.gt_angle)


@dataclass(frozen=True)
class GroupStats:
    group_id: str
    aed: float
    top80: float
    ce: float
    max: float
    min: float
    range: float


@dataclass(frozen=True)
class BinStats:
    degree_bin: int
    aed: float
    count: int


@dataclass(frozen=True)
class EvalReport:
    aed: float
    top80: float
    ce: float
    max_error: float
    threshold: float
    per_group: list[GroupStats] = field(default_factory=list)
    per_bin: list[BinStats] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "aed": self.aed,
            "top80": self.top80,
            "ce": self.ce,
            "max_error": self.max_error,
            "threshold": self.threshold,
            "top80_rule": TOP80_RULE,
            "per_group": [vars(g) for g in self.per_group],
            "per_bin": [vars(b) for b in self.per_bin],
        }


@dataclass(frozen=True)
class TimingReport:
    image_side: int
    projections: int
    fht_micros: float
    drt_micros: float
    speedup: float


def compute_metrics(records, threshold: float = DEFAULT_THRESHOLD) -> EvalReport:
    """Aggregate absolute angle errors into the contest-style report.

    aed is the mean error, top80 the mean of the smallest floor(0.8*N)
    errors, ce the percentage of errors within `threshold` degrees.
    """
    records = list(records)
    if not records:
        raise ValueError("compute_metrics needs at least one record")
    if threshold <= 0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    errors = np.array([r.error for r in records], dtype=np.float64)
    return EvalReport(
        aed=float(errors.mean()),
        top80=_top80(errors),
        ce=_ce(errors, threshold),
        max_error=float(errors.max()),
        threshold=threshold,
        per_group=group_stats(records, threshold),
        per_bin=bin_by_degree(records),
    )


def group_stats(records, threshold: float = DEFAULT_THRESHOLD) -> list[GroupStats]:
    """Per-group metrics, worst group (largest aed) first; ties by id."""
    groups: dict[str, list[float]] = {}
    for rec in records:
        groups.setdefault(rec.group_id, []).append(rec.error)
    stats = []
    for gid, errs in groups.items():
        arr = np.array(errs, dtype=np.float64)
        stats.append(
            GroupStats(
                group_id=gid,
                aed=float(arr.mean()),
                top80=_top80(arr),
                ce=_ce(arr, threshold),
                max=float(arr.max()),
                min=float(arr.min()),
                range=float(arr.max() - arr.min()),
            )
        )
    stats.sort(key=lambda g: (-g.aed, g.group_id))
    return stats


def bin_by_degree(records) -> list[BinStats]:
    """Mean error per one-degree bin of ground truth, keyed by floor(gt)."""
    bins: dict[int, list[float]] = {}
    for rec in records:
        bins.setdefault(math.floor(rec.gt_angle), []).append(rec.error)
    return [
        BinStats(key, float(np.mean(bins[key])), len(bins[key]))
        for key in sorted(bins)
    ]


def parse_manifest(path) -> list[SampleRecord]:
    """Read `filename,group_id,gt_angle_deg` lines; '#' starts a comment."""
    records = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 3:
            raise ValueError(f"{path}:{lineno}: expected filename,group_id,gt_angle")
        try:
            gt = float(parts[2])
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: bad angle {parts[2]!r}") from exc
        records.append(SampleRecord(filename=parts[0], group_id=parts[1], gt_angle=gt))
    return records


def synth_document(size: int, angle: float, seed: int) -> tuple[np.ndarray, float]:
    """Render a skewed synthetic text page and its ground-truth angle.

    A white page with 8-20 black text-line stripes (4-12 px tall, ragged
    lengths, word gaps, short ascender/descender strokes) is drawn at 2x
    resolution, rotated by `angle` (white fill), and box-downsampled.
    Bit-deterministic for a given (size, angle, seed).
    """
    if size < 64:
        raise ValueError(f"size must be >= 64, got {size}")
    if not abs(angle) <= 20:
        raise ValueError(f"|angle| must be <= 20 degrees, got {angle}")
    rng = np.random.default_rng(seed)
    ss = _SUPERSAMPLE
    canvas = np.ones((size * ss, size * ss), dtype=np.float64)

    margin = max(4, size // 12)
    left, right = margin, size - margin
    avail = size - 2 * margin
    n_lines = int(rng.integers(8, min(20, avail // 6) + 1))
    height_cap = min(12, (avail - 2 * (n_lines - 1)) // n_lines)
    heights = rng.integers(4, height_cap + 1, size=n_lines)
    slack = avail - int(heights.sum()) - 2 * (n_lines - 1)
    gap_extra = max(0, slack // max(1, n_lines - 1))

    y = margin
    for i in range(n_lines):
        h = int(heights[i])
        x0 = left + int(rng.integers(0, avail // 8 + 1))
        length = max(8, int((right - x0) * rng.uniform(0.75, 0.97)))
        x1 = min(right, x0 + length)
        _rect(canvas, ss, y, y + h, x0, x1, 0.0)
        for gx in rng.integers(x0 + 3, max(x0 + 4, x1 - 3), size=max(1, length // 10)):
            _rect(canvas, ss, y, y + h, int(gx), int(gx) + int(rng.integers(2, 5)), 1.0)
        for _ in range(max(2, length // 12)):
            sx = int(rng.integers(x0, x1 - 1))
            wd = int(rng.integers(1, 3))
            if rng.random() < 0.5:
                reach = max(0, y - int(rng.integers(2, 6)))  # ascender
                _rect(canvas, ss, reach, y + h, sx, sx + wd, 0.0)
            else:
                reach = min(size, y + h + int(rng.integers(2, 6)))  # descender
                _rect(canvas, ss, y, reach, sx, sx + wd, 0.0)
        y += h + 2 + int(rng.integers(0, gap_extra + 1))

    rotated = raster.rotate(canvas, angle, fill=1.0)
    img = rotated.reshape(size, ss, size, ss).mean(axis=(1, 3))
    return img, float(angle)


def time_transforms(side: int, repeats: int) -> TimingReport:
    """Median wall time of the four-pass fast transform vs. the classical
    rotate-and-project evaluated at the matching number of projections.

    Single-threaded by construction; medians resist scheduler noise.
    """
    if side < 256 or side & (side - 1):
        raise ValueError(f"side must be a power of two >= 256, got {side}")
    if repeats < 3:
        raise ValueError(f"repeats must be >= 3, got {repeats}")
    img, _ = synth_document(side, 3.7, seed=0x5EED)
    combos = [(o, s) for o in Orientation for s in SlopeSign]

    fht_times = []
    for _ in range(repeats):
        start = time.perf_counter()
        for orientation, sign in combos:
            fht(img, orientation, sign)
        fht_times.append(time.perf_counter() - start)

    angles = fht_angle_set(side)
    drt_times = []
    for _ in range(repeats):
        start = time.perf_counter()
        for a in angles:
            drt_projection(img, a)
        drt_times.append(time.perf_counter() - start)

    fht_med = statistics.median(fht_times)
    drt_med = statistics.median(drt_times)
    return TimingReport(
        image_side=side,
        projections=len(angles),
        fht_micros=fht_med * 1e6,
        drt_micros=drt_med * 1e6,
        speedup=drt_med / fht_med,
    )


def fht_angle_set(n: int) -> np.ndarray:
    """The 4n-2 projection angles one image's four transform passes cover.

    Per orientation the signed shifts give 2n-1 angles (the shared shift
    0 counted once); the vertical family sits 90 degrees over. The exact
    45-degree diagonal appears in both families, as it does in the
    transform's accumulators.
    """
    half = np.degrees(np.arctan(np.arange(n, dtype=np.float64) / (n - 1)))
    fan = np.concatenate([-half[::-1][:-1], half])
    return np.concatenate([fan, 90.0 + fan])


def _top80(errors: np.ndarray) -> float:
    keep = max(1, (8 * errors.size) // 10)
    return float(np.sort(errors)[:keep].mean())


def _ce(errors: np.ndarray, threshold: float) -> float:
    return 100.0 * int(np.count_nonzero(errors <= threshold)) / errors.size


def _rect(canvas, ss, r0, r1, c0, c1, value) -> None:
    side = canvas.shape[0]
    canvas[
        max(0, r0 * ss) : min(side, r1 * ss), max(0, c0 * ss) : min(side, c1 * ss)
    ] = value
