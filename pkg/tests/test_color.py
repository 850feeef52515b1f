import numpy as np
import pytest

from gamutpress.color import lch_to_rgb, luminance, rgb_to_lab, rgb_to_lch, srgb_transfer

# Independent scalar oracle: full RGB->XYZ matrix, D65-as-row-sums white.
ORACLE_M = np.array(
    [
        [0.4124, 0.3576, 0.1805],
        [0.2126, 0.7152, 0.0722],
        [0.0193, 0.1192, 0.9505],
    ]
)
ORACLE_WHITE = ORACLE_M.sum(axis=1)


def oracle_rgb_to_lch(rgb):
    xyz = ORACLE_M @ np.asarray(rgb, dtype=np.float64)
    t = xyz / ORACLE_WHITE
    f = np.where(t > (6 / 29) ** 3, np.cbrt(t), t / (3 * (6 / 29) ** 2) + 4 / 29)
    L = 116 * f[1] - 16
    a = 500 * (f[0] - f[1])
    b = 200 * (f[1] - f[2])
    return L, np.hypot(a, b), np.arctan2(b, a) % (2 * np.pi)


class TestLuminance:
    def test_white(self):
        assert luminance(np.array([1.0, 1.0, 1.0])) == pytest.approx(1.0, abs=1e-12)

    def test_pure_red(self):
        assert luminance(np.array([1.0, 0.0, 0.0])) == pytest.approx(0.2126, abs=1e-15)

    def test_matches_matrix_row_oracle(self):
        rng = np.random.RandomState(3)
        rgb = rng.rand(100, 3)
        expected = rgb @ ORACLE_M[1]
        assert np.abs(luminance(rgb) - expected).max() < 1e-12


class TestSrgbTransfer:
    def test_endpoints(self):
        assert srgb_transfer(0.0, "decode") == 0.0
        assert srgb_transfer(1.0, "decode") == pytest.approx(1.0, abs=1e-12)
        assert srgb_transfer(0.0, "encode") == 0.0
        assert srgb_transfer(1.0, "encode") == pytest.approx(1.0, abs=1e-12)

    def test_breakpoint_continuity(self):
        assert srgb_transfer(0.04045, "decode") == pytest.approx(0.0031308, abs=1e-7)
        lo = srgb_transfer(0.04045 - 1e-9, "decode")
        hi = srgb_transfer(0.04045 + 1e-9, "decode")
        assert abs(hi - lo) < 1e-6

    def test_inverse_pair(self):
        assert srgb_transfer(srgb_transfer(0.5, "decode"), "encode") == pytest.approx(0.5, abs=1e-9)
        grid = np.linspace(0.0, 1.0, 1001)
        back = srgb_transfer(srgb_transfer(grid, "decode"), "encode")
        assert np.abs(back - grid).max() < 1e-9

    def test_extends_outside_unit_range(self):
        assert srgb_transfer(-0.5, "decode") == pytest.approx(-0.5 / 12.92)
        assert srgb_transfer(2.0, "encode") > 1.0

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            srgb_transfer(0.5, "sideways")


class TestRgbLch:
    def test_white(self):
        L, C, h = rgb_to_lch(np.array([1.0, 1.0, 1.0]))
        assert L == pytest.approx(100.0, abs=1e-9)
        assert C == pytest.approx(0.0, abs=1e-9)
        assert h == 0.0

    def test_black(self):
        assert np.allclose(rgb_to_lch(np.zeros(3)), 0.0, atol=1e-12)

    def test_pure_red_against_scalar_oracle(self):
        L, C, h = rgb_to_lch(np.array([1.0, 0.0, 0.0]))
        oL, oC, oh = oracle_rgb_to_lch([1.0, 0.0, 0.0])
        assert L == pytest.approx(oL, abs=1e-9)
        assert C == pytest.approx(oC, abs=1e-9)
        assert h == pytest.approx(oh, abs=1e-12)
        # headline values for sRGB red through D65
        assert L == pytest.approx(53.24, abs=0.05)
        assert C == pytest.approx(104.55, abs=0.05)
        assert h == pytest.approx(0.699, abs=0.002)
        assert np.degrees(h) == pytest.approx(40.0, abs=0.05)

    def test_random_pixels_against_scalar_oracle(self):
        rng = np.random.RandomState(11)
        for rgb in rng.rand(50, 3):
            got = rgb_to_lch(rgb)
            exp = oracle_rgb_to_lch(rgb)
            assert np.abs(np.asarray(got) - np.asarray(exp)).max() < 1e-9

    def test_round_trip(self):
        rng = np.random.RandomState(4)
        rgb = rng.rand(10_000, 3)
        back = lch_to_rgb(rgb_to_lch(rgb))
        assert np.abs(back - rgb).max() < 1e-6

    def test_hue_ordering(self):
        h_red = rgb_to_lch(np.array([1.0, 0.0, 0.0]))[2]
        h_yellow = rgb_to_lch(np.array([1.0, 1.0, 0.0]))[2]
        h_green = rgb_to_lch(np.array([0.0, 1.0, 0.0]))[2]
        assert h_red < h_yellow < h_green

    def test_gray_axis_has_no_chroma(self):
        grays = np.linspace(0.0, 1.0, 101)[:, None] * np.ones(3)
        lch = rgb_to_lch(grays)
        assert lch[:, 1].max() < 1e-8

    def test_hue_range(self):
        rng = np.random.RandomState(5)
        lch = rgb_to_lch(rng.rand(1000, 3))
        assert (lch[:, 2] >= 0.0).all() and (lch[:, 2] < 2 * np.pi).all()


class TestRgbLab:
    def test_matches_lch_polar(self):
        rng = np.random.RandomState(6)
        rgb = rng.rand(200, 3)
        lab = rgb_to_lab(rgb)
        lch = rgb_to_lch(rgb)
        assert np.abs(np.hypot(lab[:, 1], lab[:, 2]) - lch[:, 1]).max() < 1e-9
        assert np.abs(lab[:, 0] - lch[:, 0]).max() < 1e-9
