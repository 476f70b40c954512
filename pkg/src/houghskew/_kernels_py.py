"""Pure-numpy kernels, the fallback for the compiled extension.

Same signatures as ``houghskew._kernels``; ``houghskew.backend`` picks
one pair at import time. Inputs are assumed validated by the callers
(C-contiguous float64, dyadic square for the butterfly).
"""

import math

import numpy as np


def fht_butterfly(pattern_img: np.ndarray) -> np.ndarray:
    """Dyadic staircase sums over a 2^k-sided array, O(n^2 log n) adds.

    Axis 0 of the input is the traversal coordinate t, axis 1 the cross
    coordinate. Output[s, y] is the sum of input[t, y + d(t, s)] over
    all t, where d is the dyadic pattern of total shift s; reads past
    the last column contribute zero.

    Each merge level pairs adjacent blocks of rows: the output row for
    shift s combines both halves' rows for shift s//2, the right half
    offset by ceil(s/2) along the cross axis.
    """
    n = pattern_img.shape[0]
    acc = np.array(pattern_img, dtype=np.float64)
    m = 1
    while m < n:
        two = 2 * m
        out = np.empty_like(acc)
        for s in range(two):
            half_shift = s >> 1
            rise = s - half_shift  # ceil(s / 2)
            left = acc[half_shift::two]
            right = acc[m + half_shift :: two]
            dst = out[s::two]
            if rise == 0:
                np.add(left, right, out=dst)
            else:
                np.add(left[:, : n - rise], right[:, rise:], out=dst[:, : n - rise])
                dst[:, n - rise :] = left[:, n - rise :]
        acc = out
        m = two
    return acc


def rotate_bilinear(img: np.ndarray, angle_deg: float, fill: float) -> np.ndarray:
    """Rotate about the image center, bilinear taps, `fill` outside.

    Counterclockwise for positive angles (row 0 is the top of the
    image). Output has the input's shape; every sample tap that falls
    outside the source reads `fill`.
    """
    h, w = img.shape
    cy = (h - 1) / 2.0
    cx = (w - 1) / 2.0
    rad = math.radians(angle_deg)
    cos_a = math.cos(rad)
    sin_a = math.sin(rad)

    row_off = np.arange(h, dtype=np.float64)[:, None] - cy
    col_off = np.arange(w, dtype=np.float64)[None, :] - cx
    src_x = cx + cos_a * col_off - sin_a * row_off
    src_y = cy + sin_a * col_off + cos_a * row_off

    x0f = np.floor(src_x)
    y0f = np.floor(src_y)
    fx = src_x - x0f
    fy = src_y - y0f
    x0 = x0f.astype(np.int64)
    y0 = y0f.astype(np.int64)

    out = np.zeros((h, w), dtype=np.float64)
    for dy in (0, 1):
        for dx in (0, 1):
            xs = x0 + dx
            ys = y0 + dy
            weight = (fx if dx else 1.0 - fx) * (fy if dy else 1.0 - fy)
            inside = (xs >= 0) & (xs < w) & (ys >= 0) & (ys < h)
            taps = img[np.clip(ys, 0, h - 1), np.clip(xs, 0, w - 1)]
            out += weight * np.where(inside, taps, fill)
    return out
