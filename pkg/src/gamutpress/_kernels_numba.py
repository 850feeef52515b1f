"""Numba-compiled twins of the hot kernels in _kernels_numpy.

Loops are written per pixel so numba can fuse the arithmetic; prange is
only used where every iteration writes disjoint outputs, which keeps
results bit-identical for any thread count.
"""

import math

import numpy as np
from numba import njit, prange

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

NAME = "numba"

_M00, _M01, _M02 = RGB_TO_XYZ[0]
_M10, _M11, _M12 = RGB_TO_XYZ[1]
_M20, _M21, _M22 = RGB_TO_XYZ[2]
_I00, _I01, _I02 = XYZ_TO_RGB[0]
_I10, _I11, _I12 = XYZ_TO_RGB[1]
_I20, _I21, _I22 = XYZ_TO_RGB[2]
_WX, _WY, _WZ = WHITE_XYZ


@njit(cache=True)
def _srgb_encode_flat(flat, out):
    for i in range(flat.size):
        v = flat[i]
        if v <= SRGB_LINEAR_KNEE:
            out[i] = 12.92 * v
        else:
            out[i] = 1.055 * v ** (1.0 / 2.4) - 0.055


@njit(cache=True)
def _srgb_decode_flat(flat, out):
    for i in range(flat.size):
        v = flat[i]
        if v <= SRGB_ENCODED_KNEE:
            out[i] = v / 12.92
        else:
            out[i] = ((v + 0.055) / 1.055) ** 2.4


def srgb_encode(linear):
    linear = np.ascontiguousarray(linear, dtype=np.float64)
    out = np.empty_like(linear)
    _srgb_encode_flat(linear.ravel(), out.ravel())
    return out


def srgb_decode(encoded):
    encoded = np.ascontiguousarray(encoded, dtype=np.float64)
    out = np.empty_like(encoded)
    _srgb_decode_flat(encoded.ravel(), out.ravel())
    return out


@njit(cache=True, inline="always")
def _lab_f(t):
    if t > LAB_EPS:
        return t ** (1.0 / 3.0)
    return t / LAB_SLOPE + 4.0 / 29.0


@njit(cache=True, inline="always")
def _lab_f_inv(ft):
    if ft > LAB_DELTA:
        return ft * ft * ft
    return LAB_SLOPE * (ft - 4.0 / 29.0)


@njit(cache=True, inline="always")
def _pixel_rgb_to_lch(r, g, b):
    x = (_M00 * r + _M01 * g + _M02 * b) / _WX
    y = (_M10 * r + _M11 * g + _M12 * b) / _WY
    z = (_M20 * r + _M21 * g + _M22 * b) / _WZ
    fx = _lab_f(x)
    fy = _lab_f(y)
    fz = _lab_f(z)
    ll = 116.0 * fy - 16.0
    aa = 500.0 * (fx - fy)
    bb = 200.0 * (fy - fz)
    cc = math.hypot(aa, bb)
    if cc > 0.0:
        hh = math.atan2(bb, aa) % TWO_PI
    else:
        hh = 0.0
    return ll, cc, hh


@njit(cache=True, inline="always")
def _pixel_lch_to_rgb(ll, cc, hh):
    aa = cc * math.cos(hh)
    bb = cc * math.sin(hh)
    fy = (ll + 16.0) / 116.0
    fx = fy + aa / 500.0
    fz = fy - bb / 200.0
    x = _lab_f_inv(fx) * _WX
    y = _lab_f_inv(fy) * _WY
    z = _lab_f_inv(fz) * _WZ
    r = _I00 * x + _I01 * y + _I02 * z
    g = _I10 * x + _I11 * y + _I12 * z
    b = _I20 * x + _I21 * y + _I22 * z
    return r, g, b


@njit(cache=True, parallel=True)
def _rgb_to_lch_flat(rgb, out):
    for i in prange(rgb.shape[0]):
        ll, cc, hh = _pixel_rgb_to_lch(rgb[i, 0], rgb[i, 1], rgb[i, 2])
        out[i, 0] = ll
        out[i, 1] = cc
        out[i, 2] = hh


@njit(cache=True, parallel=True)
def _lch_to_rgb_flat(lch, out):
    for i in prange(lch.shape[0]):
        r, g, b = _pixel_lch_to_rgb(lch[i, 0], lch[i, 1], lch[i, 2])
        out[i, 0] = r
        out[i, 1] = g
        out[i, 2] = b


def rgb_to_lch(rgb):
    rgb = np.ascontiguousarray(rgb, dtype=np.float64)
    flat = rgb.reshape(-1, 3)
    out = np.empty_like(flat)
    _rgb_to_lch_flat(flat, out)
    return out.reshape(rgb.shape)


def lch_to_rgb(lch):
    lch = np.ascontiguousarray(lch, dtype=np.float64)
    flat = lch.reshape(-1, 3)
    out = np.empty_like(flat)
    _lch_to_rgb_flat(flat, out)
    return out.reshape(lch.shape)


@njit(cache=True, inline="always")
def _pixel_in_gamut(ll, cc, hh, eps):
    r, g, b = _pixel_lch_to_rgb(ll, cc, hh)
    lo = -eps
    hi = 1.0 + eps
    return lo <= r <= hi and lo <= g <= hi and lo <= b <= hi


@njit(cache=True, parallel=True)
def _in_gamut_flat(lch, eps, out):
    for i in prange(lch.shape[0]):
        out[i] = _pixel_in_gamut(lch[i, 0], lch[i, 1], lch[i, 2], eps)


def in_gamut_mask(lch, eps):
    lch = np.ascontiguousarray(lch, dtype=np.float64)
    flat = lch.reshape(-1, 3)
    out = np.empty(flat.shape[0], dtype=np.bool_)
    _in_gamut_flat(flat, eps, out)
    return out.reshape(lch.shape[:-1])


@njit(cache=True, parallel=True)
def _clip_chroma_flat(lch, eps, iters):
    for i in prange(lch.shape[0]):
        ll = lch[i, 0]
        cc = lch[i, 1]
        hh = lch[i, 2]
        if _pixel_in_gamut(ll, cc, hh, eps):
            continue
        lo = 0.0
        hi = 1.0
        for _ in range(iters):
            mid = 0.5 * (lo + hi)
            if _pixel_in_gamut(ll, mid * cc, hh, eps):
                lo = mid
            else:
                hi = mid
        lch[i, 1] = lo * cc


def clip_chroma(lch, eps, iters):
    out = np.array(lch, dtype=np.float64, copy=True)
    _clip_chroma_flat(np.ascontiguousarray(out.reshape(-1, 3)), eps, iters)
    return out


@njit(cache=True, parallel=True)
def _blur_h(img, kernel, out):
    radius = kernel.size // 2
    h, w = img.shape
    for y in prange(h):
        for x in range(w):
            acc = 0.0
            lo = max(0, x - radius)
            hi = min(w - 1, x + radius)
            for xx in range(lo, hi + 1):
                acc += img[y, xx] * kernel[xx - x + radius]
            out[y, x] = acc


@njit(cache=True, parallel=True)
def _blur_v(img, kernel, out):
    radius = kernel.size // 2
    h, w = img.shape
    for y in prange(h):
        lo = max(0, y - radius)
        hi = min(h - 1, y + radius)
        for x in range(w):
            acc = 0.0
            for yy in range(lo, hi + 1):
                acc += img[yy, x] * kernel[yy - y + radius]
            out[y, x] = acc


@njit(cache=True)
def _box_reduce(img, ds):
    h, w = img.shape
    hh = -(-h // ds)
    ww = -(-w // ds)
    out = np.empty((hh, ww))
    for by in range(hh):
        for bx in range(ww):
            acc = 0.0
            for dy in range(ds):
                y = min(by * ds + dy, h - 1)
                for dx in range(ds):
                    x = min(bx * ds + dx, w - 1)
                    acc += img[y, x]
            out[by, bx] = acc / (ds * ds)
    return out


@njit(cache=True, parallel=True)
def _accumulate_level(chroma, base_k, k, cmin, spacing, n_levels, ds, out):
    h, w = chroma.shape
    sh, sw = base_k.shape
    for y in prange(h):
        ys = (y + 0.5) / ds - 0.5
        y0 = int(math.floor(ys))
        ty = ys - y0
        if y0 < 0:
            y0 = 0
            ty = 0.0
        if y0 > sh - 1:
            y0 = sh - 1
            ty = 0.0
        y1 = min(y0 + 1, sh - 1)
        for x in range(w):
            pos = (chroma[y, x] - cmin) / spacing
            k0 = int(pos)
            if k0 > n_levels - 2:
                k0 = n_levels - 2
            if k0 < 0:
                k0 = 0
            t = pos - k0
            if t < 0.0:
                t = 0.0
            if t > 1.0:
                t = 1.0
            if k0 == k:
                weight = 1.0 - t
            elif k0 + 1 == k:
                weight = t
            else:
                continue
            if ds > 1:
                xs = (x + 0.5) / ds - 0.5
                x0 = int(math.floor(xs))
                tx = xs - x0
                if x0 < 0:
                    x0 = 0
                    tx = 0.0
                if x0 > sw - 1:
                    x0 = sw - 1
                    tx = 0.0
                x1 = min(x0 + 1, sw - 1)
                top = base_k[y0, x0] * (1 - tx) + base_k[y0, x1] * tx
                bot = base_k[y1, x0] * (1 - tx) + base_k[y1, x1] * tx
                val = top * (1 - ty) + bot * ty
            else:
                val = base_k[y, x]
            out[y, x] += val * weight


@njit(cache=True, parallel=True)
def _level_weight(small, ck, inv_two_sr2, w_img, wc_img):
    h, w = small.shape
    for y in prange(h):
        for x in range(w):
            d = small[y, x] - ck
            wv = math.exp(-(d * d) * inv_two_sr2)
            w_img[y, x] = wv
            wc_img[y, x] = wv * small[y, x]


def bilateral_base(chroma, sigma_s, sigma_r, downsample):
    """See _kernels_numpy.bilateral_base; same algorithm, compiled loops."""
    chroma = np.ascontiguousarray(chroma, dtype=np.float64)
    cmin = float(chroma.min())
    cmax = float(chroma.max())
    if cmax - cmin < 1e-12:
        return np.full_like(chroma, (cmax + cmin) / 2.0)

    ds = max(1, int(downsample))
    small = _box_reduce(chroma, ds) if ds > 1 else chroma
    sigma_grid = sigma_s / ds
    radius = int(2.0 * sigma_grid)
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    kernel = np.exp(-(x * x) / (2.0 * sigma_grid * sigma_grid))
    kernel /= kernel.sum()

    n_levels = min(32, int(np.ceil((cmax - cmin) / sigma_r)) + 2)
    levels = np.linspace(cmin, cmax, n_levels)
    spacing = levels[1] - levels[0]
    inv_two_sr2 = 1.0 / (2.0 * sigma_r * sigma_r)

    w_img = np.empty_like(small)
    wc_img = np.empty_like(small)
    tmp = np.empty_like(small)
    num = np.empty_like(small)
    den = np.empty_like(small)
    out = np.zeros_like(chroma)
    for k in range(n_levels):
        _level_weight(small, levels[k], inv_two_sr2, w_img, wc_img)
        _blur_h(wc_img, kernel, tmp)
        _blur_v(tmp, kernel, num)
        _blur_h(w_img, kernel, tmp)
        _blur_v(tmp, kernel, den)
        base_k = num / den
        _accumulate_level(chroma, base_k, k, cmin, spacing, n_levels, ds, out)
    return out
