"""Skew criterion over Hough accumulators.

Each accumulator row is scored by the sharpness of its offset profile;
scores over the shift axis become a profile on a tangent grid, the two
slope signs are merged, the vertical profile is resampled to the
horizontal grid, and the window argmax converts to an angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .fht import HoughAccumulator, Orientation, SlopeSign


class ProfileSource(Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    COMBINED = "combined"


@dataclass(frozen=True)
class CriterionProfile:
    """Criterion scores on a strictly increasing tangent grid."""

    tangents: np.ndarray
    values: np.ndarray
    source: ProfileSource

    def __post_init__(self):
        t = np.asarray(self.tangents, dtype=np.float64)
        v = np.asarray(self.values, dtype=np.float64)
        if t.ndim != 1 or t.size == 0 or v.shape != t.shape:
            raise ValueError("profile needs matching 1-D tangents and values")
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise ValueError("profile tangents must be strictly increasing")
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise ValueError("profile values must be finite and nonnegative")
        object.__setattr__(self, "tangents", t)
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class SkewEstimate:
    """Detected angle in degrees plus the peak's diagnostics."""

    angle: float
    peak_value: float
    peak_index: int
    profile: CriterionProfile


def ssg(row) -> float:
    """Sum of squared first differences of a projection row.

    Zero for a flat profile, large when the profile has sharp structure;
    quadratic in the row scale. This is the per-row alignment score.
    """
    row = np.asarray(row, dtype=np.float64)
    if row.ndim != 1 or row.size < 2:
        raise ValueError("ssg needs a 1-D row of at least 2 entries")
    return float(_ssg_rows(row[None, :])[0])


def weighted_profile(acc: HoughAccumulator) -> CriterionProfile:
    """Per-shift scores with cubed length compensation.

    A staircase of shift s is longer than the axis-aligned span by
    sqrt(1 + (s/(n-1))^2); that factor cubed undoes the shortening bias
    of the squared-difference score. Tangent of row s is sigma*s/(n-1).
    """
    n = acc.n
    if n < 2:
        raise ValueError("weighted profile needs accumulator side >= 2")
    slope = np.arange(n, dtype=np.float64) / (n - 1)
    values = np.power(1.0 + slope * slope, 1.5) * _ssg_rows(acc.cells)
    source = (
        ProfileSource.HORIZONTAL
        if acc.orientation is Orientation.HORIZONTAL
        else ProfileSource.VERTICAL
    )
    if acc.sign is SlopeSign.NEGATIVE:
        return CriterionProfile(-slope[::-1], values[::-1], source)
    return CriterionProfile(slope, values, source)


def merge_signs(pos: CriterionProfile, neg: CriterionProfile) -> CriterionProfile:
    """Join the two signed halves into one grid over [-1, 1].

    The shared shift-0 entry (identical in both halves by construction)
    is kept once.
    """
    if pos.source is not neg.source:
        raise ValueError("cannot merge profiles from different sources")
    if pos.tangents[0] != 0.0 or np.any(pos.tangents < 0):
        raise ValueError("positive half must cover tangents [0, 1] starting at 0")
    if neg.tangents[-1] != 0.0 or np.any(neg.tangents > 0):
        raise ValueError("negative half must cover tangents [-1, 0] ending at 0")
    if not np.array_equal(pos.tangents, -neg.tangents[::-1]):
        raise ValueError("signed halves must share the same |tangent| grid")
    return CriterionProfile(
        np.concatenate([neg.tangents[:-1], pos.tangents]),
        np.concatenate([neg.values[:-1], pos.values]),
        pos.source,
    )


def resample_profile(src: CriterionProfile, target_tangents) -> CriterionProfile:
    """Linear interpolation of the profile onto a new tangent grid.

    Grid-coincident targets pass values through exactly; targets outside
    the source span are refused rather than extrapolated.
    """
    target = np.asarray(target_tangents, dtype=np.float64)
    if target.ndim != 1 or target.size == 0:
        raise ValueError("target grid must be a nonempty 1-D sequence")
    if target.size > 1 and not np.all(np.diff(target) > 0):
        raise ValueError("target grid must be strictly increasing")
    if target[0] < src.tangents[0] or target[-1] > src.tangents[-1]:
        raise ValueError(
            f"target span [{target[0]}, {target[-1]}] exceeds source span "
            f"[{src.tangents[0]}, {src.tangents[-1]}]"
        )
    return CriterionProfile(
        target.copy(), np.interp(target, src.tangents, src.values), src.source
    )


def combine(c_h: CriterionProfile, c_v: CriterionProfile) -> CriterionProfile:
    """Element-wise sum of two profiles sharing one tangent grid."""
    if not np.array_equal(c_h.tangents, c_v.tangents):
        raise ValueError("profiles must share the same tangent grid")
    return CriterionProfile(
        c_h.tangents, c_h.values + c_v.values, ProfileSource.COMBINED
    )


def peak_to_angle(profile: CriterionProfile, max_angle: float) -> SkewEstimate:
    """Argmax within the +-max_angle window, converted to degrees.

    Ties prefer the smallest |tangent| and then the negative side, so a
    structureless profile reports 0.
    """
    if not 0 < max_angle <= 45:
        raise ValueError(f"max_angle must be in (0, 45], got {max_angle}")
    limit = math.tan(math.radians(max_angle))
    inside = np.flatnonzero(np.abs(profile.tangents) <= limit)
    if inside.size == 0:
        raise ValueError(f"no grid entry within +-{max_angle} degrees")
    vals = profile.values[inside]
    best = float(vals.max())
    ties = inside[vals == best]
    tg = profile.tangents[ties]
    peak = int(ties[np.lexsort((tg, np.abs(tg)))[0]])
    angle = math.degrees(math.atan(float(profile.tangents[peak])))
    return SkewEstimate(angle, best, peak, profile)


def write_profile_text(profile: CriterionProfile, path) -> None:
    """Write a profile as two-column text (tangent, value) for plotting."""
    with open(path, "w") as fh:
        for t, v in zip(profile.tangents, profile.values):
            fh.write(f"{t!r} {v!r}\n")


def _ssg_rows(rows: np.ndarray) -> np.ndarray:
    d = np.diff(rows, axis=1)
    return np.einsum("ij,ij->i", d, d)
