"""Color constants shared by the numba and numpy kernel backends.

The forward matrix is the 4-decimal IEC sRGB / Rec.709 matrix; its middle
row doubles as the luminance weights. The reference white is defined as the
matrix row sums so that RGB (1,1,1) maps to Lab (100, 0, 0) exactly.
"""

import numpy as np

RGB_TO_XYZ = np.array(
    [
        [0.4124, 0.3576, 0.1805],
        [0.2126, 0.7152, 0.0722],
        [0.0193, 0.1192, 0.9505],
    ],
    dtype=np.float64,
)

WHITE_XYZ = RGB_TO_XYZ.sum(axis=1)


def _inverse_3x3(m: np.ndarray) -> np.ndarray:
    # Closed-form adjugate inverse: identical bits on every platform,
    # unlike LAPACK-backed np.linalg.inv.
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    adj = np.array(
        [
            [e * i - f * h, c * h - b * i, b * f - c * e],
            [f * g - d * i, a * i - c * g, c * d - a * f],
            [d * h - e * g, b * g - a * h, a * e - b * d],
        ],
        dtype=np.float64,
    )
    return adj / det


XYZ_TO_RGB = _inverse_3x3(RGB_TO_XYZ)

# CIE Lab transfer breakpoints.
LAB_DELTA = 6.0 / 29.0
LAB_EPS = LAB_DELTA ** 3
LAB_SLOPE = 3.0 * LAB_DELTA ** 2

# sRGB transfer breakpoints.
SRGB_LINEAR_KNEE = 0.0031308
SRGB_ENCODED_KNEE = 0.04045

TWO_PI = 2.0 * np.pi
