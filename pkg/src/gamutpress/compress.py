"""Chroma compression: fit tone-mapped chroma into the display gamut.

The pipeline preserves lightness and hue: per-hue source maxima are
aligned to the display cusps, only the smooth base layer of the chroma
plane is scaled, and whatever still falls outside the gamut afterwards is
clipped along chroma by exact binary search.
"""

from dataclasses import dataclass

import numpy as np

from . import backend
from ._constants import TWO_PI
from .color import lch_to_rgb, rgb_to_lch
from .gamut import GAMUT_EPS, CuspTable, fill_empty_bins_circular

SMOOTHING_BINS = 15
DEFAULT_SIGMA_R = 10.0
BASE_SIGMA_S = 16.0
REFERENCE_DIAGONAL = 725.0
CLIP_ITERS = 20


@dataclass(frozen=True)
class ImageCusps:
    """Per-hue-bin source chroma maxima and the cusp-alignment scales."""

    c_src: np.ndarray
    scale: np.ndarray

    @property
    def bins(self):
        return len(self.scale)


@dataclass(frozen=True)
class BaseDetail:
    """Smooth base layer plus the exact residual (base + detail == C)."""

    base: np.ndarray
    detail: np.ndarray


def circular_moving_average(values, width=SMOOTHING_BINS):
    values = np.asarray(values, dtype=np.float64)
    half = width // 2
    padded = np.concatenate([values[-half:], values, values[:half]])
    kernel = np.full(width, 1.0 / width)
    return np.convolve(padded, kernel, mode="valid")


def hue_bin_max(lch, bins):
    """Raw per-bin max chroma and which bins saw any chromatic pixel."""
    lch = np.asarray(lch, dtype=np.float64)
    chroma = lch[..., 1].ravel()
    hue = lch[..., 2].ravel()
    chromatic = chroma > 0.0  # C=0 pixels have no constrained hue
    idx = np.minimum((hue[chromatic] / TWO_PI * bins).astype(np.int64), bins - 1)
    c_src = np.zeros(bins)
    populated = np.zeros(bins, dtype=bool)
    if idx.size:
        np.maximum.at(c_src, idx, chroma[chromatic])
        populated[idx] = True
    return c_src, populated


def image_hue_cusps(lch, table: CuspTable):
    """Smoothed per-bin max source chroma and scale = min(1, C_dst/C_src)."""
    c_src, populated = hue_bin_max(lch, table.bins)
    if populated.any():
        c_src = fill_empty_bins_circular(c_src, populated)
        c_src = circular_moving_average(c_src)

    scale = np.ones(table.bins)
    np.minimum(1.0, table.c_cusp / np.where(c_src > 0.0, c_src, 1.0), out=scale, where=c_src > 0.0)
    return ImageCusps(c_src=c_src, scale=scale)


def auto_downsample(sigma_s, shape):
    """Blur-grid reduction: keeps the effective sigma near 4 grid units."""
    ds = max(1, int(sigma_s // 4))
    return min(ds, max(1, min(shape) // 8))


def base_detail_split(chroma, sigma_s=BASE_SIGMA_S, sigma_r=DEFAULT_SIGMA_R, downsample=None):
    """Edge-preserving base layer; detail = C - base reconstructs exactly."""
    chroma = np.asarray(chroma, dtype=np.float64)
    if downsample is None:
        downsample = auto_downsample(sigma_s, chroma.shape)
    base = backend.active().bilateral_base(chroma, sigma_s, sigma_r, downsample)
    base = np.maximum(base, 0.0)
    return BaseDetail(base=base, detail=chroma - base)


def clip_to_gamut(lch, eps=GAMUT_EPS, iters=CLIP_ITERS):
    """Reduce chroma of out-of-gamut pixels at constant (L, h).

    Binary search keeps the largest chroma fraction that passes the exact
    in-gamut test; in-gamut pixels are returned untouched.
    """
    return backend.active().clip_chroma(np.asarray(lch, dtype=np.float64), eps, iters)


def default_sigma_s(shape):
    diag = float(np.hypot(shape[0], shape[1]))
    return BASE_SIGMA_S * diag / REFERENCE_DIAGONAL


def compress_chroma(img, table: CuspTable, sigma_s=None, sigma_r=DEFAULT_SIGMA_R, eps=GAMUT_EPS):
    """Compress a tone-mapped linear-RGB raster into the display gamut.

    Lightness is only clamped to [0,100]; the hue plane is carried through
    every step untouched. Output channels lie within [-eps, 1+eps].
    """
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError("expected an (H, W, 3) raster")
    if not np.isfinite(img).all():
        raise ValueError("non-finite input")
    if sigma_s is None:
        sigma_s = default_sigma_s(img.shape[:2])

    lch = rgb_to_lch(img)
    lch[..., 0] = np.clip(lch[..., 0], 0.0, 100.0)

    cusps = image_hue_cusps(lch, table)
    split = base_detail_split(lch[..., 1], sigma_s=sigma_s, sigma_r=sigma_r)

    bins = table.bins
    bin_idx = np.minimum((lch[..., 2] / TWO_PI * bins).astype(np.int64), bins - 1)
    pixel_scale = cusps.scale[bin_idx]
    lch[..., 1] = np.maximum(0.0, pixel_scale * split.base + split.detail)

    lch = clip_to_gamut(lch, eps=eps)
    return lch_to_rgb(lch)
