"""Document skew detection built on the dyadic fast Hough transform.

The detector differentiates a grayscale page, runs four O(n^2 log n)
staircase-line transforms (two orientations, two slope signs), scores
every accumulator row by the sharpness of its offset profile, and reads
the skew angle off the combined profile's peak. Hot kernels run in a
compiled extension when built, with a numpy fallback
(``houghskew.backend.BACKEND`` reports which).
"""

from .backend import BACKEND
from .criterion import (
    CriterionProfile,
    ProfileSource,
    SkewEstimate,
    combine,
    merge_signs,
    peak_to_angle,
    resample_profile,
    ssg,
    weighted_profile,
)
from .detector import DetectorConfig, deskew, detect_skew
from .evaluation import (
    BinStats,
    EvalReport,
    GroupStats,
    SampleRecord,
    TimingReport,
    bin_by_degree,
    compute_metrics,
    group_stats,
    parse_manifest,
    synth_document,
    time_transforms,
)
from .fht import (
    HoughAccumulator,
    Orientation,
    SlopeSign,
    brute_force_hough,
    drt_projection,
    dyadic_pattern,
    fht,
    projection_profiles,
    write_accumulator_pgm,
)
from .raster import (
    FormatError,
    horizontal_derivative,
    load_image,
    pad_to_dyadic,
    rotate,
    save_image,
    vertical_derivative,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BinStats",
    "CriterionProfile",
    "DetectorConfig",
    "EvalReport",
    "FormatError",
    "GroupStats",
    "HoughAccumulator",
    "Orientation",
    "ProfileSource",
    "SampleRecord",
    "SkewEstimate",
    "SlopeSign",
    "TimingReport",
    "bin_by_degree",
    "brute_force_hough",
    "combine",
    "compute_metrics",
    "deskew",
    "detect_skew",
    "drt_projection",
    "dyadic_pattern",
    "fht",
    "group_stats",
    "horizontal_derivative",
    "load_image",
    "merge_signs",
    "pad_to_dyadic",
    "parse_manifest",
    "peak_to_angle",
    "projection_profiles",
    "resample_profile",
    "rotate",
    "save_image",
    "ssg",
    "synth_document",
    "time_transforms",
    "vertical_derivative",
    "weighted_profile",
    "write_accumulator_pgm",
]
