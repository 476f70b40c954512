import numpy as np
import pytest
from PIL import Image

from houghskew import raster
from houghskew.raster import (
    FormatError,
    horizontal_derivative,
    load_image,
    pad_to_dyadic,
    rotate,
    save_image,
    vertical_derivative,
)


def _write_pgm_bytes(path, body: bytes):
    path.write_bytes(body)
    return path


class TestLoadImage:
    def test_p5_single_pixel_max(self, tmp_path):
        p = _write_pgm_bytes(tmp_path / "one.pgm", b"P5\n1 1\n255\n\xff")
        img = load_image(p)
        assert img.shape == (1, 1)
        assert img[0, 0] == 1.0

    def test_p5_single_pixel_zero(self, tmp_path):
        p = _write_pgm_bytes(tmp_path / "zero.pgm", b"P5\n1 1\n255\n\x00")
        assert load_image(p)[0, 0] == 0.0

    def test_p2_with_comments(self, tmp_path):
        body = b"P2\n# a comment\n3 2\n# another\n255\n0 128 255\n10 20 30\n"
        img = load_image(_write_pgm_bytes(tmp_path / "a.pgm", body))
        expected = np.array([[0, 128, 255], [10, 20, 30]]) / 255.0
        np.testing.assert_array_equal(img, expected)

    def test_rgb_png_luma(self, tmp_path):
        p = tmp_path / "red.png"
        Image.new("RGB", (1, 1), (255, 0, 0)).save(p)
        img = load_image(p)
        assert img[0, 0] == pytest.approx(0.299, abs=1e-12)

    def test_gray_png(self, tmp_path):
        p = tmp_path / "gray.png"
        Image.fromarray(np.array([[0, 128], [255, 64]], dtype=np.uint8), "L").save(p)
        np.testing.assert_array_equal(
            load_image(p), np.array([[0, 128], [255, 64]]) / 255.0
        )

    def test_16bit_png_rejected(self, tmp_path):
        p = tmp_path / "deep.png"
        Image.fromarray(np.array([[1000]], dtype=np.uint16)).save(p)
        with pytest.raises(FormatError, match="mode"):
            load_image(p)

    def test_16bit_pgm_rejected(self, tmp_path):
        p = _write_pgm_bytes(tmp_path / "deep.pgm", b"P5\n1 1\n65535\n\x01\x00")
        with pytest.raises(FormatError, match="bit depth"):
            load_image(p)

    def test_non_image_rejected(self, tmp_path):
        p = tmp_path / "junk.png"
        p.write_bytes(b"definitely not an image")
        with pytest.raises(FormatError):
            load_image(p)

    def test_truncated_pgm(self, tmp_path):
        p = _write_pgm_bytes(tmp_path / "short.pgm", b"P5\n4 4\n255\n\x00\x01")
        with pytest.raises(FormatError, match="truncated"):
            load_image(p)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_image(tmp_path / "nope.png")

    @pytest.mark.parametrize("suffix", [".png", ".pgm"])
    def test_save_load_roundtrip(self, tmp_path, rng, suffix):
        img = rng.integers(0, 256, size=(9, 13)).astype(np.float64) / 255.0
        p = tmp_path / f"rt{suffix}"
        save_image(p, img)
        np.testing.assert_array_equal(load_image(p), img)


class TestPadToDyadic:
    def test_idempotent_on_dyadic_square(self, rng):
        img = rng.random((4, 4))
        out = pad_to_dyadic(img)
        np.testing.assert_array_equal(out, img)
        assert out is not img  # pure function, no aliasing

    def test_pads_to_enclosing_square(self, rng):
        img = rng.random((3, 5))
        out = pad_to_dyadic(img)
        assert out.shape == (8, 8)
        np.testing.assert_array_equal(out[:3, :5], img)
        assert out[3:, :].sum() == 0 and out[:, 5:].sum() == 0

    def test_scan_sized_input(self):
        out = pad_to_dyadic(np.zeros((1095, 894)))
        assert out.shape == (2048, 2048)

    def test_single_pixel(self):
        assert pad_to_dyadic(np.ones((1, 1))).shape == (1, 1)


class TestDerivatives:
    def test_constant_image_is_zero(self):
        img = np.full((5, 7), 0.375)
        assert horizontal_derivative(img).sum() == 0
        assert vertical_derivative(img).sum() == 0

    def test_horizontal_stencil_row(self):
        img = np.array([[0.0, 1.0, 0.0]])
        np.testing.assert_array_equal(
            horizontal_derivative(img), np.array([[0.5, 0.0, 0.5]])
        )

    def test_vertical_stencil_column(self):
        img = np.array([[0.0], [1.0], [0.0]])
        np.testing.assert_array_equal(
            vertical_derivative(img), np.array([[0.5], [0.0], [0.5]])
        )

    def test_vertical_step_edge(self):
        img = np.zeros((4, 6))
        img[:, 3:] = 1.0
        out = horizontal_derivative(img)
        np.testing.assert_array_equal(out[:, 2], np.full(4, 0.5))
        np.testing.assert_array_equal(out[:, 3], np.full(4, 0.5))
        assert out[:, [0, 1, 4, 5]].sum() == 0

    def test_transpose_symmetry(self, rng):
        img = rng.random((6, 11))
        np.testing.assert_array_equal(
            vertical_derivative(img), horizontal_derivative(img.T).T
        )

    def test_bounded_by_half(self, rng):
        img = rng.random((16, 16))
        assert horizontal_derivative(img).max() <= 0.5
        assert vertical_derivative(img).min() >= 0.0

    def test_scales_with_intensity(self, rng):
        img = rng.random((8, 8))
        np.testing.assert_allclose(
            horizontal_derivative(0.5 * img),
            0.5 * horizontal_derivative(img),
            atol=1e-15,
        )

    def test_degenerate_width(self):
        with pytest.raises(ValueError, match="width"):
            horizontal_derivative(np.ones((3, 1)))
        with pytest.raises(ValueError, match="height"):
            vertical_derivative(np.ones((1, 3)))


class TestRotate:
    def test_zero_angle_bit_exact(self, rng):
        img = rng.random((10, 14))
        np.testing.assert_array_equal(rotate(img, 0.0), img)

    def test_roundtrip_away_from_borders(self):
        n = 64
        yy, xx = np.mgrid[0:n, 0:n]
        img = (yy + xx) / (2.0 * n)  # smooth gradient
        back = rotate(rotate(img, 10.0), -10.0)
        core = slice(n // 4, 3 * n // 4)
        assert np.abs(back[core, core] - img[core, core]).mean() < 0.02

    @pytest.mark.parametrize("angle", [3.0, 45.0, 90.0, -133.7])
    def test_center_pixel_invariant(self, rng, angle):
        img = rng.random((9, 9))
        assert rotate(img, angle)[4, 4] == pytest.approx(img[4, 4], abs=1e-12)

    def test_fill_value(self):
        img = np.ones((8, 8))
        out = rotate(img, 45.0)
        assert out.min() == 0.0  # corners exposed, default fill
        out_white = rotate(img, 45.0, fill=1.0)
        np.testing.assert_allclose(out_white, 1.0, atol=1e-12)

    def test_counterclockwise_direction(self):
        # Ink right of center must move up (smaller row) for angle > 0.
        img = np.zeros((15, 15))
        img[7, 12] = 1.0
        out = rotate(img, 20.0)
        rows, cols = np.nonzero(out > 0.2)
        assert rows.mean() < 7 and cols.mean() > 7

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            rotate(np.ones((4, 4)), float("nan"))


def test_as_image_rejects_bad_shapes():
    with pytest.raises(ValueError):
        raster.as_image(np.zeros((0, 4)))
    with pytest.raises(ValueError):
        raster.as_image(np.zeros(7))
