# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: dyadic butterfly and bilinear rotation.

Mirrors the signatures and contracts of ``houghskew._kernels_py``.
"""

from libc.math cimport cos, floor, sin

import numpy as np

cdef double DEG_TO_RAD = 0.017453292519943295  # pi / 180, matches math.radians


def fht_butterfly(double[:, ::1] pattern_img):
    """Dyadic staircase sums over a 2^k-sided array, O(n^2 log n) adds.

    See ``_kernels_py.fht_butterfly`` for the contract.
    """
    cdef Py_ssize_t n = pattern_img.shape[0]
    a_buf = np.array(pattern_img, dtype=np.float64)
    b_buf = np.empty((n, n), dtype=np.float64)
    cdef double[:, ::1] cur = a_buf
    cdef double[:, ::1] nxt = b_buf
    cdef double[:, ::1] swp
    cdef Py_ssize_t m = 1, two, blk, s, half_shift, rise, src_l, src_r, dst, y

    while m < n:
        two = 2 * m
        for blk in range(0, n, two):
            for s in range(two):
                half_shift = s >> 1
                rise = s - half_shift  # ceil(s / 2)
                src_l = blk + half_shift
                src_r = blk + m + half_shift
                dst = blk + s
                for y in range(n - rise):
                    nxt[dst, y] = cur[src_l, y] + cur[src_r, y + rise]
                for y in range(n - rise, n):
                    nxt[dst, y] = cur[src_l, y]
        swp = cur
        cur = nxt
        nxt = swp
        m = two
    return np.asarray(cur)


def rotate_bilinear(double[:, ::1] img, double angle_deg, double fill):
    """Rotate about the image center, bilinear taps, `fill` outside.

    See ``_kernels_py.rotate_bilinear`` for the contract.
    """
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1]
    out_buf = np.empty((h, w), dtype=np.float64)
    cdef double[:, ::1] out = out_buf
    cdef double rad = angle_deg * DEG_TO_RAD
    cdef double cos_a = cos(rad), sin_a = sin(rad)
    cdef double cy = (h - 1) / 2.0, cx = (w - 1) / 2.0
    cdef Py_ssize_t r, c, x0, y0, x1, y1
    cdef double xs, ys, fx, fy, v00, v01, v10, v11

    for r in range(h):
        for c in range(w):
            xs = cx + cos_a * (c - cx) - sin_a * (r - cy)
            ys = cy + sin_a * (c - cx) + cos_a * (r - cy)
            x0 = <Py_ssize_t>floor(xs)
            y0 = <Py_ssize_t>floor(ys)
            fx = xs - floor(xs)
            fy = ys - floor(ys)
            x1 = x0 + 1
            y1 = y0 + 1
            v00 = img[y0, x0] if (0 <= x0 < w and 0 <= y0 < h) else fill
            v01 = img[y0, x1] if (0 <= x1 < w and 0 <= y0 < h) else fill
            v10 = img[y1, x0] if (0 <= x0 < w and 0 <= y1 < h) else fill
            v11 = img[y1, x1] if (0 <= x1 < w and 0 <= y1 < h) else fill
            out[r, c] = (
                (1.0 - fx) * (1.0 - fy) * v00
                + fx * (1.0 - fy) * v01
                + (1.0 - fx) * fy * v10
                + fx * fy * v11
            )
    return out_buf
