"""Pure-numpy implementations of the hot per-pixel kernels.

This is the fallback path used when numba is unavailable or disabled via
GAMUTPRESS_BACKEND=numpy. Every function here has an identically-named
twin in _kernels_numba; both follow the same arithmetic so results agree
to floating-point noise.
"""

import numpy as np

from ._constants import (
    LAB_DELTA,
    LAB_EPS,
    LAB_SLOPE,
    RGB_TO_XYZ,
    SRGB_ENCODED_KNEE,
    SRGB_LINEAR_KNEE,
    TWO_PI,
    WHITE_XYZ,
    XYZ_TO_RGB,
)

NAME = "numpy"


def srgb_encode(linear):
    # Values below the knee (negatives included) take the linear branch.
    linear = np.asarray(linear, dtype=np.float64)
    safe = np.maximum(linear, SRGB_LINEAR_KNEE)
    return np.where(
        linear <= SRGB_LINEAR_KNEE,
        12.92 * linear,
        1.055 * safe ** (1.0 / 2.4) - 0.055,
    )


def srgb_decode(encoded):
    encoded = np.asarray(encoded, dtype=np.float64)
    safe = np.maximum(encoded, SRGB_ENCODED_KNEE)
    return np.where(
        encoded <= SRGB_ENCODED_KNEE,
        encoded / 12.92,
        ((safe + 0.055) / 1.055) ** 2.4,
    )


def _lab_f(t):
    return np.where(t > LAB_EPS, np.cbrt(t), t / LAB_SLOPE + 4.0 / 29.0)


def _lab_f_inv(ft):
    return np.where(ft > LAB_DELTA, ft * ft * ft, LAB_SLOPE * (ft - 4.0 / 29.0))


def rgb_to_lch(rgb):
    """Linear RGB (..., 3) -> (L, C, h) with h in [0, 2pi); h=0 where C=0."""
    rgb = np.asarray(rgb, dtype=np.float64)
    xyz = rgb @ RGB_TO_XYZ.T
    f = _lab_f(xyz / WHITE_XYZ)
    fx, fy, fz = f[..., 0], f[..., 1], f[..., 2]
    L = 116.0 * fy - 16.0
    a = 500.0 * (fx - fy)
    b = 200.0 * (fy - fz)
    C = np.hypot(a, b)
    h = np.where(C > 0.0, np.arctan2(b, a) % TWO_PI, 0.0)
    return np.stack([L, C, h], axis=-1)


def lch_to_rgb(lch):
    lch = np.asarray(lch, dtype=np.float64)
    L, C, h = lch[..., 0], lch[..., 1], lch[..., 2]
    a = C * np.cos(h)
    b = C * np.sin(h)
    fy = (L + 16.0) / 116.0
    fx = fy + a / 500.0
    fz = fy - b / 200.0
    xyz = np.stack([_lab_f_inv(fx), _lab_f_inv(fy), _lab_f_inv(fz)], axis=-1) * WHITE_XYZ
    return xyz @ XYZ_TO_RGB.T


def in_gamut_mask(lch, eps):
    """True where the exact linear-RGB rendering lies in [-eps, 1+eps]^3."""
    rgb = lch_to_rgb(lch)
    return np.all((rgb >= -eps) & (rgb <= 1.0 + eps), axis=-1)


def clip_chroma(lch, eps, iters):
    """Binary-search chroma toward the gamut boundary at constant (L, h).

    Keeps the largest chroma fraction known to pass the exact in-gamut
    test, so every returned pixel passes it. L and h are untouched.
    """
    out = np.array(lch, dtype=np.float64, copy=True)
    flat = out.reshape(-1, 3)
    bad = ~in_gamut_mask(flat, eps)
    if not bad.any():
        return out
    sub = flat[bad]
    c0 = sub[:, 1].copy()
    lo = np.zeros(len(sub))
    hi = np.ones(len(sub))
    trial = sub.copy()
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        trial[:, 1] = mid * c0
        ok = in_gamut_mask(trial, eps)
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
    sub[:, 1] = lo * c0
    # Numerical edge: if even C=0 fails (L off the displayable axis), keep
    # C=0; the caller renders with a terminal [0,1] clamp.
    flat[bad] = sub
    return out


def _gauss_kernel(sigma):
    radius = int(2.0 * sigma)
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return k / k.sum()


def _blur_axis(img, kernel, axis):
    # Zero-padded separable correlation; zero padding is what makes the
    # joint-weight normalization in bilateral_base boundary-correct.
    radius = len(kernel) // 2
    pad = [(0, 0), (0, 0)]
    pad[axis] = (radius, radius)
    padded = np.pad(img, pad, mode="constant")
    win = np.lib.stride_tricks.sliding_window_view(padded, len(kernel), axis=axis)
    return win @ kernel


def _box_reduce(img, ds):
    h, w = img.shape
    hh = -(-h // ds)
    ww = -(-w // ds)
    padded = np.pad(img, ((0, hh * ds - h), (0, ww * ds - w)), mode="edge")
    return padded.reshape(hh, ds, ww, ds).mean(axis=(1, 3))


def _bilinear_upsample(small, shape, ds):
    h, w = shape
    ys = (np.arange(h) + 0.5) / ds - 0.5
    xs = (np.arange(w) + 0.5) / ds - 0.5
    y0 = np.clip(np.floor(ys).astype(np.int64), 0, small.shape[0] - 1)
    x0 = np.clip(np.floor(xs).astype(np.int64), 0, small.shape[1] - 1)
    y1 = np.minimum(y0 + 1, small.shape[0] - 1)
    x1 = np.minimum(x0 + 1, small.shape[1] - 1)
    ty = np.clip(ys - y0, 0.0, 1.0)[:, None]
    tx = np.clip(xs - x0, 0.0, 1.0)[None, :]
    top = small[y0][:, x0] * (1 - tx) + small[y0][:, x1] * tx
    bot = small[y1][:, x0] * (1 - tx) + small[y1][:, x1] * tx
    return top * (1 - ty) + bot * ty


def bilateral_base(chroma, sigma_s, sigma_r, downsample):
    """Edge-preserving smooth of a non-negative plane.

    Piecewise-linear range decomposition: blur weight/value planes at a
    handful of range levels, then per-pixel interpolate between the two
    levels bracketing each pixel's value. Spatial Gaussian truncated at
    2*sigma; blurs run on a box-reduced grid when downsample > 1.
    """
    chroma = np.asarray(chroma, dtype=np.float64)
    cmin = float(chroma.min())
    cmax = float(chroma.max())
    if cmax - cmin < 1e-12:
        return np.full_like(chroma, (cmax + cmin) / 2.0)

    ds = max(1, int(downsample))
    small = _box_reduce(chroma, ds) if ds > 1 else chroma
    kernel = _gauss_kernel(sigma_s / ds)

    n_levels = min(32, int(np.ceil((cmax - cmin) / sigma_r)) + 2)
    levels = np.linspace(cmin, cmax, n_levels)
    spacing = levels[1] - levels[0]

    pos = (chroma - cmin) / spacing
    k0 = np.clip(pos.astype(np.int64), 0, n_levels - 2)
    t = np.clip(pos - k0, 0.0, 1.0)

    inv_two_sr2 = 1.0 / (2.0 * sigma_r * sigma_r)
    out = np.zeros_like(chroma)
    for k, ck in enumerate(levels):
        w = np.exp(-((small - ck) ** 2) * inv_two_sr2)
        num = _blur_axis(_blur_axis(w * small, kernel, 0), kernel, 1)
        den = _blur_axis(_blur_axis(w, kernel, 0), kernel, 1)
        base_k = num / den
        if ds > 1:
            base_k = _bilinear_upsample(base_k, chroma.shape, ds)
        weight = (k0 == k) * (1.0 - t) + (k0 + 1 == k) * t
        out += base_k * weight
    return out
