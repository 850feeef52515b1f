"""Pairwise image comparison metrics.

psnr/ssim operate on the rasters exactly as given ([0,1] range). The
hue and Lab metrics expect linear RGB: callers comparing stored 8-bit
images decode the sRGB curve first (evaluate_corpus does this).
"""

import math
from dataclasses import dataclass

import numpy as np

from ._constants import TWO_PI
from .color import rgb_to_lab, rgb_to_lch

HUE_CHROMA_FLOOR = 0.5  # below this chroma (both images) hue is noise
SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_K1 = 0.01
SSIM_K2 = 0.03


@dataclass(frozen=True)
class MetricsReport:
    psnr: float
    ssim: float
    mae_h: float
    delta_e_lab: float
    hue_loss: float


def _check_pair(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a, b


def psnr(a, b):
    """10*log10(1/MSE) over all pixels and channels; inf for identical."""
    a, b = _check_pair(a, b)
    mse = float(np.mean((a - b) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(1.0 / mse)


def _gauss_window(n=SSIM_WINDOW, sigma=SSIM_SIGMA):
    x = np.arange(n, dtype=np.float64) - (n - 1) / 2.0
    k = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return k / k.sum()


def _filter_valid(plane, kernel):
    # Separable 'valid' correlation with the (outer-product) Gaussian window.
    win = np.lib.stride_tricks.sliding_window_view(plane, len(kernel), axis=0)
    plane = win @ kernel
    win = np.lib.stride_tricks.sliding_window_view(plane, len(kernel), axis=1)
    return win @ kernel


def ssim(a, b):
    """Single-scale SSIM, 11x11 Gaussian window (sigma 1.5), range 1.

    Computed per channel over valid window positions, then averaged over
    channels.
    """
    a, b = _check_pair(a, b)
    if min(a.shape[0], a.shape[1]) < SSIM_WINDOW:
        raise ValueError(f"image smaller than the {SSIM_WINDOW}x{SSIM_WINDOW} SSIM window")
    kernel = _gauss_window()
    c1 = SSIM_K1 ** 2
    c2 = SSIM_K2 ** 2
    scores = []
    for ch in range(a.shape[2]):
        x = a[..., ch]
        y = b[..., ch]
        mu_x = _filter_valid(x, kernel)
        mu_y = _filter_valid(y, kernel)
        var_x = _filter_valid(x * x, kernel) - mu_x * mu_x
        var_y = _filter_valid(y * y, kernel) - mu_y * mu_y
        cov = _filter_valid(x * y, kernel) - mu_x * mu_y
        num = (2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2)
        den = (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
        scores.append(np.mean(num / den))
    return float(np.mean(scores))


def circular_hue_distance(h1, h2):
    d = np.abs(np.asarray(h1) - np.asarray(h2))
    return np.minimum(d, TWO_PI - d)


def _masked_hue_diffs(a, b):
    lch_a = rgb_to_lch(a)
    lch_b = rgb_to_lch(b)
    defined = (lch_a[..., 1] >= HUE_CHROMA_FLOOR) | (lch_b[..., 1] >= HUE_CHROMA_FLOOR)
    return circular_hue_distance(lch_a[..., 2][defined], lch_b[..., 2][defined])


def mae_hue(a, b):
    """Mean circular hue error in radians; near-gray pixels are skipped."""
    a, b = _check_pair(a, b)
    d = _masked_hue_diffs(a, b)
    if d.size == 0:
        return 0.0
    return float(np.mean(d))


def hue_loss_l2(a, b):
    """Mean squared circular hue error (radians^2), same mask as mae_hue."""
    a, b = _check_pair(a, b)
    d = _masked_hue_diffs(a, b)
    if d.size == 0:
        return 0.0
    return float(np.mean(d * d))


def delta_e_lab(a, b, full_lab=False):
    """Joint RMSE of the a*/b* planes: sqrt(sum(da^2 + db^2) / (2N)).

    full_lab=True instead returns the mean per-pixel Lab distance
    (classic delta-E 1976) for sensitivity checks.
    """
    a, b = _check_pair(a, b)
    lab_a = rgb_to_lab(a)
    lab_b = rgb_to_lab(b)
    d = lab_a - lab_b
    if full_lab:
        return float(np.mean(np.sqrt(np.sum(d * d, axis=-1))))
    n = d[..., 0].size
    return float(np.sqrt(np.sum(d[..., 1] ** 2 + d[..., 2] ** 2) / (2.0 * n)))


def compare(a, b):
    """All metrics for a pair of linear-RGB rasters."""
    return MetricsReport(
        psnr=psnr(a, b),
        ssim=ssim(a, b),
        mae_h=mae_hue(a, b),
        delta_e_lab=delta_e_lab(a, b),
        hue_loss=hue_loss_l2(a, b),
    )
