"""Grayscale raster handling: file I/O, padding, derivatives, rotation.

Images are 2-D float64 numpy arrays with intensities in [0, 1], indexed
``[row, column]``; row 0 is the top of the image.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .backend import rotate_bilinear

LUMA_WEIGHTS = (0.299, 0.587, 0.114)  # ITU-R BT.601


class FormatError(ValueError):
    """An image file the library does not support."""


def as_image(img) -> np.ndarray:
    """Validate and return `img` as a nonempty 2-D float64 array."""
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"expected a nonempty 2-D image, got shape {arr.shape}")
    return arr


def load_image(path) -> np.ndarray:
    """Load an 8-bit PNG or PGM (P2/P5) file as intensities in [0, 1].

    RGB pixels are collapsed with the 0.299/0.587/0.114 luma weights;
    8-bit values are divided by 255.

    Raises:
        FormatError: unsupported container, color mode, or bit depth.
        OSError: unreadable file.
    """
    path = Path(path)
    with open(path, "rb") as fh:
        magic = fh.read(2)
    if magic in (b"P2", b"P5"):
        return _read_pgm(path)
    return _read_png(path)


def save_image(path, img: np.ndarray) -> None:
    """Write an image as 8-bit PGM (.pgm extension) or PNG (anything else)."""
    img = as_image(img)
    eight_bit = np.rint(np.clip(img, 0.0, 1.0) * 255.0).astype(np.uint8)
    path = Path(path)
    if path.suffix.lower() == ".pgm":
        write_pgm(path, eight_bit, maxval=255)
    else:
        Image.fromarray(eight_bit, mode="L").save(path, format="PNG")


def write_pgm(path, samples: np.ndarray, maxval: int) -> None:
    """Write a binary (P5) PGM; 2-byte big-endian samples above maxval 255."""
    if samples.ndim != 2:
        raise ValueError("PGM samples must be 2-D")
    if not 1 <= maxval <= 65535:
        raise ValueError(f"PGM maxval out of range: {maxval}")
    height, width = samples.shape
    header = f"P5\n{width} {height}\n{maxval}\n".encode("ascii")
    kind = ">u2" if maxval > 255 else "u1"
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(samples.astype(kind)).tobytes())


def pad_to_dyadic(img: np.ndarray) -> np.ndarray:
    """Zero-pad to the smallest enclosing 2^k square, content at top-left.

    Already-dyadic squares come back as an unchanged copy. The padding
    value is 0 so the padded region contributes nothing to line sums.
    """
    img = as_image(img)
    height, width = img.shape
    side = 1 << (max(height, width) - 1).bit_length()
    if (height, width) == (side, side):
        return img.copy()
    out = np.zeros((side, side), dtype=np.float64)
    out[:height, :width] = img
    return out


def horizontal_derivative(img: np.ndarray) -> np.ndarray:
    """Absolute central difference along x with replicated borders.

    out(x, y) = |I(x+1, y) - I(x-1, y)| / 2; values stay in [0, 0.5]
    for inputs in [0, 1].
    """
    img = as_image(img)
    if img.shape[1] < 2:
        raise ValueError("horizontal derivative needs width >= 2")
    out = np.empty_like(img)
    out[:, 1:-1] = np.abs(img[:, 2:] - img[:, :-2]) * 0.5
    out[:, 0] = np.abs(img[:, 1] - img[:, 0]) * 0.5
    out[:, -1] = np.abs(img[:, -1] - img[:, -2]) * 0.5
    return out


def vertical_derivative(img: np.ndarray) -> np.ndarray:
    """Absolute central difference along y; transpose twin of the horizontal one."""
    img = as_image(img)
    if img.shape[0] < 2:
        raise ValueError("vertical derivative needs height >= 2")
    out = np.empty_like(img)
    out[1:-1, :] = np.abs(img[2:, :] - img[:-2, :]) * 0.5
    out[0, :] = np.abs(img[1, :] - img[0, :]) * 0.5
    out[-1, :] = np.abs(img[-1, :] - img[-2, :]) * 0.5
    return out


def rotate(img: np.ndarray, angle: float, fill: float = 0.0) -> np.ndarray:
    """Rotate counterclockwise about the image center, bilinear sampling.

    The output keeps the input's shape; sample taps outside the source
    read `fill` (default 0). Rotation by 0 reproduces the input
    bit-exactly.
    """
    img = as_image(img)
    if not math.isfinite(angle):
        raise ValueError(f"rotation angle must be finite, got {angle}")
    return rotate_bilinear(np.ascontiguousarray(img), float(angle), float(fill))


def _read_png(path: Path) -> np.ndarray:
    try:
        with Image.open(path) as im:
            if im.format != "PNG":
                raise FormatError(
                    f"unsupported image format {im.format!r} (only PNG and PGM)"
                )
            if im.mode == "P":
                im = im.convert("RGB")
            if im.mode == "L":
                return np.asarray(im, dtype=np.float64) / 255.0
            if im.mode == "RGB":
                rgb = np.asarray(im, dtype=np.float64) / 255.0
                return rgb @ np.array(LUMA_WEIGHTS)
            raise FormatError(
                f"unsupported PNG mode {im.mode!r}: only 8-bit grayscale or RGB"
            )
    except UnidentifiedImageError as exc:
        raise FormatError(f"not a PNG or PGM file: {path}") from exc


def _read_pgm(path: Path) -> np.ndarray:
    data = path.read_bytes()
    magic, fields, pos = _pgm_header(data, path)
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise FormatError(f"bad PGM dimensions {width}x{height} in {path}")
    if maxval > 255:
        raise FormatError(
            f"unsupported PGM bit depth (maxval {maxval}) in {path}: only 8-bit"
        )
    if maxval < 1:
        raise FormatError(f"bad PGM maxval {maxval} in {path}")
    if magic == b"P5":
        if len(data) - pos < width * height:
            raise FormatError(f"truncated PGM raster in {path}")
        raster = np.frombuffer(data, dtype=np.uint8, count=width * height, offset=pos)
    else:
        try:
            values = data[pos:].split()
            raster = np.array([int(v) for v in values[: width * height]], dtype=np.int64)
        except ValueError as exc:
            raise FormatError(f"bad ASCII PGM raster in {path}") from exc
        if raster.size != width * height:
            raise FormatError(f"truncated PGM raster in {path}")
    if raster.max(initial=0) > maxval:
        raise FormatError(f"PGM sample above maxval in {path}")
    return raster.reshape(height, width).astype(np.float64) / 255.0


def _pgm_header(data: bytes, path: Path):
    """Parse 'magic width height maxval', honoring '#' comment lines.

    Returns (magic, (width, height, maxval), offset of the raster).
    """
    magic = data[:2]
    pos = 2
    fields = []
    while len(fields) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos] not in b"\r\n":
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        token = data[start:pos]
        if not token:
            raise FormatError(f"truncated PGM header in {path}")
        try:
            fields.append(int(token))
        except ValueError as exc:
            raise FormatError(f"bad PGM header token {token!r} in {path}") from exc
    # Exactly one whitespace byte separates the header from a P5 raster.
    pos += 1
    return magic, tuple(fields), pos
