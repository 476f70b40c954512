"""Fast Hough transform over dyadic line patterns.

One transform pass covers one 45-degree family of staircase lines on a
2^k-sided image: ``MostlyHorizontal`` patterns traverse columns and
drift across rows, ``MostlyVertical`` patterns the transpose. A slope
sign selects the drift direction by mirroring the traversal axis. The
brute-force twin computes the identical accumulator directly from the
patterns and exists as the correctness reference for the fast path.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from . import raster
from .backend import fht_butterfly


class Orientation(Enum):
    """Line family: within 45 degrees of horizontal, or of vertical."""

    HORIZONTAL = "h"
    VERTICAL = "v"


class SlopeSign(Enum):
    POSITIVE = 1
    NEGATIVE = -1


@dataclass(frozen=True)
class HoughAccumulator:
    """Dyadic line sums, indexed ``cells[shift s][offset y]``.

    Row s sums the staircase lines of total cross-axis displacement
    sigma*s, where sigma is the slope sign; row 0 is the axis-aligned
    projection of the image.
    """

    orientation: Orientation
    sign: SlopeSign
    n: int
    cells: np.ndarray

    def __post_init__(self):
        if not _is_pow2(self.n):
            raise ValueError(f"accumulator side must be a power of two, got {self.n}")
        if self.cells.shape != (self.n, self.n):
            raise ValueError(
                f"cells shape {self.cells.shape} does not match side {self.n}"
            )


def dyadic_pattern(n: int, s: int) -> np.ndarray:
    """Cross-axis offsets d(t, s) of the staircase with total shift s.

    Both halves of the width-n pattern reuse the width-n/2 pattern for
    floor(s/2); the second half is raised by ceil(s/2). Endpoints are
    pinned: d(0, s) = 0 and d(n-1, s) = s.
    """
    if not _is_pow2(n):
        raise ValueError(f"pattern length must be a power of two, got {n}")
    if not 0 <= s < n:
        raise ValueError(f"shift {s} out of range [0, {n - 1}]")
    return _pattern(n, s)


def _pattern(n: int, s: int) -> np.ndarray:
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    half = _pattern(n // 2, s // 2)
    return np.concatenate([half, half + (s - s // 2)])


def fht(img: np.ndarray, orientation: Orientation, sign: SlopeSign) -> HoughAccumulator:
    """Transform a dyadic square image with the O(n^2 log n) butterfly.

    cells[s][y] equals the sum of the image over the staircase pattern
    anchored at cross coordinate y with shift s; reads that leave the
    image contribute zero.
    """
    p = _pattern_space(img, orientation, sign)
    return HoughAccumulator(orientation, sign, p.shape[0], fht_butterfly(p))


def brute_force_hough(
    img: np.ndarray, orientation: Orientation, sign: SlopeSign
) -> HoughAccumulator:
    """Reference transform: materialize every pattern and sum directly.

    O(n^3) additions; value-identical to :func:`fht`. Deliberately does
    not share the butterfly.
    """
    p = _pattern_space(img, orientation, sign)
    n = p.shape[0]
    cells = np.zeros((n, n), dtype=np.float64)
    for s in range(n):
        offsets = dyadic_pattern(n, s)
        row = cells[s]
        for t in range(n):
            d = int(offsets[t])
            if d == 0:
                row += p[t]
            else:
                row[: n - d] += p[t, d:]
    return HoughAccumulator(orientation, sign, n, cells)


def projection_profiles(img: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Axis-aligned projections: (per-column sums, per-row sums).

    The first profile has one entry per column (sums over rows); the
    second one entry per row. These equal the s=0 accumulator rows of
    the vertical and horizontal orientations respectively.
    """
    img = raster.as_image(img)
    return img.sum(axis=0), img.sum(axis=1)


def drt_projection(img: np.ndarray, angle: float) -> np.ndarray:
    """Rotate-and-project: column sums of the image rotated by -angle.

    The classical O(n^2)-per-angle transform the fast path replaces;
    kept for timing comparisons and sanity checks, not bit equivalence.
    """
    return raster.rotate(img, -angle).sum(axis=0)


def write_accumulator_pgm(acc: HoughAccumulator, path) -> None:
    """Dump an accumulator as 16-bit PGM plus a one-line scale sidecar.

    Cells are scaled linearly so the peak maps to 65535; the sidecar
    ``<path>.scale`` holds ``scale <v>`` with cells = pgm * v.
    """
    path = Path(path)
    peak = float(acc.cells.max(initial=0.0))
    if peak > 0:
        samples = np.rint(acc.cells / peak * 65535.0).astype(np.uint16)
    else:
        samples = np.zeros_like(acc.cells, dtype=np.uint16)
    raster.write_pgm(path, samples, maxval=65535)
    Path(f"{path}.scale").write_text(f"scale {peak / 65535.0!r}\n")


def _pattern_space(img, orientation: Orientation, sign: SlopeSign) -> np.ndarray:
    """Map an image into the traversal frame of one (orientation, sign) pass."""
    img = raster.as_image(img)
    n = img.shape[0]
    if img.shape[1] != n or not _is_pow2(n):
        raise ValueError(
            f"transform input must be a power-of-two square, got {img.shape}"
        )
    p = img.T if orientation is Orientation.HORIZONTAL else img
    if sign is SlopeSign.NEGATIVE:
        p = p[::-1]
    return np.ascontiguousarray(p, dtype=np.float64)


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0
