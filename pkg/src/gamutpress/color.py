"""Color management: luminance, sRGB transfer curve, RGB <-> CIELCh.

All conversions assume linear sRGB primaries with D65 white. Hue is kept
in radians in [0, 2pi) everywhere; pixels with zero chroma carry h=0 by
convention and their hue is treated as unconstrained downstream.
"""

import numpy as np

from . import backend
from ._constants import RGB_TO_XYZ, WHITE_XYZ, LAB_EPS, LAB_SLOPE

LUMA_WEIGHTS = RGB_TO_XYZ[1].copy()


def luminance(img):
    """Rec.709 luminance plane of a linear-RGB raster."""
    img = np.asarray(img, dtype=np.float64)
    return img @ LUMA_WEIGHTS


def srgb_transfer(values, direction):
    """Apply the piecewise sRGB curve; direction is "encode" or "decode".

    The same formula extends outside [0,1]: values below the knee (which
    includes all negatives) take the linear segment.
    """
    if direction == "encode":
        out = backend.active().srgb_encode(np.asarray(values, dtype=np.float64))
    elif direction == "decode":
        out = backend.active().srgb_decode(np.asarray(values, dtype=np.float64))
    else:
        raise ValueError(f"direction must be 'encode' or 'decode', got {direction!r}")
    if np.isscalar(values) or np.ndim(values) == 0:
        return float(np.ravel(out)[0])
    return out


def rgb_to_lch(img):
    """Linear RGB (..., 3) to (L, C, h); h in [0, 2pi), h=0 where C=0."""
    return backend.active().rgb_to_lch(np.asarray(img, dtype=np.float64))


def lch_to_rgb(img):
    """(L, C, h) back to linear RGB; exact inverse of rgb_to_lch."""
    return backend.active().lch_to_rgb(np.asarray(img, dtype=np.float64))


def rgb_to_lab(img):
    """Linear RGB (..., 3) to CIELab (L*, a*, b*)."""
    img = np.asarray(img, dtype=np.float64)
    xyz = img @ RGB_TO_XYZ.T
    t = xyz / WHITE_XYZ
    f = np.where(t > LAB_EPS, np.cbrt(t), t / LAB_SLOPE + 4.0 / 29.0)
    fx, fy, fz = f[..., 0], f[..., 1], f[..., 2]
    return np.stack([116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)], axis=-1)
