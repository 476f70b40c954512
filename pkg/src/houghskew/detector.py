"""End-to-end skew detection and correction.

Pipeline: derivative images, four transform passes (two orientations
times two slope signs), weighted profiles, sign merging, resampling
onto a common angle axis, combination, and the window argmax.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import criterion, raster
from .criterion import CriterionProfile, ProfileSource, SkewEstimate
from .fht import Orientation, SlopeSign, fht

MIN_SIDE = 8  # below this the derivative stencils and recursion degenerate


@dataclass(frozen=True)
class DetectorConfig:
    max_angle: float = 15.0
    use_vertical: bool = True
    normalize_before_combine: bool = False

    def __post_init__(self):
        if not 0 < self.max_angle <= 45:
            raise ValueError(f"max_angle must be in (0, 45], got {self.max_angle}")


def detect_skew(img: np.ndarray, config: DetectorConfig | None = None) -> SkewEstimate:
    """Estimate the in-plane skew of a document image, in degrees.

    Positive angles are counterclockwise, matching :func:`raster.rotate`.
    Deterministic: the same image and config always give the same
    estimate. Works on grayscale and binary content alike; no
    binarization is applied.
    """
    cfg = config or DetectorConfig()
    img = raster.as_image(img)
    if min(img.shape) < MIN_SIDE:
        raise ValueError(f"image sides must be >= {MIN_SIDE}, got {img.shape}")

    # Derivatives are taken before padding: padding the raw image would
    # cut a step edge along the content boundary, while zero-padding the
    # derivative adds nothing to any line sum.
    d_h = raster.pad_to_dyadic(raster.horizontal_derivative(img))
    d_v = raster.pad_to_dyadic(raster.vertical_derivative(img))

    c_h = _merged_profile(d_h, Orientation.HORIZONTAL)
    c_v = _merged_profile(d_v, Orientation.VERTICAL)

    # The two traversal frames are transposes of each other, so their
    # slope axes have opposite chirality. Mirroring the horizontal
    # profile puts both on the same axis: positive tangent = the row
    # content climbs to the right = counterclockwise skew.
    c_h = _mirror(c_h)

    if cfg.use_vertical:
        c_v = criterion.resample_profile(c_v, c_h.tangents)
        if cfg.normalize_before_combine:
            c_h = _mean_normalize(c_h)
            c_v = _mean_normalize(c_v)
        combined = criterion.combine(c_h, c_v)
    else:
        combined = CriterionProfile(c_h.tangents, c_h.values, ProfileSource.COMBINED)
    return criterion.peak_to_angle(combined, cfg.max_angle)


def deskew(img: np.ndarray, estimate: SkewEstimate | float) -> np.ndarray:
    """Rotate by the negated estimate; exposed regions fill paper-white."""
    angle = estimate.angle if isinstance(estimate, SkewEstimate) else float(estimate)
    return raster.rotate(img, -angle, fill=1.0)


def _merged_profile(padded: np.ndarray, orientation: Orientation) -> CriterionProfile:
    pos = criterion.weighted_profile(fht(padded, orientation, SlopeSign.POSITIVE))
    neg = criterion.weighted_profile(fht(padded, orientation, SlopeSign.NEGATIVE))
    return criterion.merge_signs(pos, neg)


def _mirror(profile: CriterionProfile) -> CriterionProfile:
    # Merged grids are symmetric about 0, so negating the tangent axis
    # only reverses the value order.
    assert np.array_equal(profile.tangents, -profile.tangents[::-1])
    return CriterionProfile(
        profile.tangents, profile.values[::-1].copy(), profile.source
    )


def _mean_normalize(profile: CriterionProfile) -> CriterionProfile:
    mean = float(profile.values.mean())
    if mean == 0.0:
        return profile
    return CriterionProfile(profile.tangents, profile.values / mean, profile.source)
