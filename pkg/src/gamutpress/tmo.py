"""Global tone-mapping operators.

Each operator maps world luminance Lw to display luminance Ld in [0,1];
color is reassembled as RGB_out = (RGB_in / max(Lw, delta)) * Ld so the
chromaticity of every pixel is untouched. Out-of-gamut chroma is left
alone on purpose: compressing it is the chroma stage's job.
"""

from dataclasses import dataclass, field

import numpy as np

from .color import luminance

DELTA = 1e-6

TMO_IDS = (
    "normalize",
    "exponential",
    "logarithmic",
    "best_exposure",
    "photographic",
    "drago",
    "ward_global",
    "schlick",
)

_DEFAULTS = {
    "normalize": {},
    "exponential": {},
    "logarithmic": {},
    "best_exposure": {},
    "photographic": {"a": 0.18},
    "drago": {"bias": 0.85, "ld_max": 100.0},
    "ward_global": {"ld_max": 100.0},
    "schlick": {"p": 200.0},
}


@dataclass(frozen=True)
class TmoSpec:
    """Operator id plus parameter overrides, validated against ranges."""

    id: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.id not in _DEFAULTS:
            raise ValueError(f"unknown TMO {self.id!r}; known: {TMO_IDS}")
        unknown = set(self.params) - set(_DEFAULTS[self.id])
        if unknown:
            raise ValueError(f"unknown params {sorted(unknown)} for TMO {self.id!r}")
        p = self.resolved()
        if self.id == "photographic" and not 0.0 < p["a"] <= 1.0:
            raise ValueError("photographic key 'a' must be in (0, 1]")
        if self.id == "drago" and not 0.0 < p["bias"] < 1.0:
            raise ValueError("drago 'bias' must be in (0, 1)")
        if self.id == "schlick" and p["p"] <= 1.0:
            raise ValueError("schlick 'p' must be > 1")

    def resolved(self):
        merged = dict(_DEFAULTS[self.id])
        merged.update(self.params)
        return merged


def log_average(lum):
    """exp(mean(ln(delta + Y))): the geometric-mean luminance statistic."""
    lum = np.asarray(lum, dtype=np.float64)
    if lum.size == 0:
        raise ValueError("empty luminance plane")
    return float(np.exp(np.mean(np.log(DELTA + lum))))


def _ld_normalize(lw, params):
    return lw / lw.max()


def _ld_exponential(lw, params):
    return 1.0 - np.exp(-lw / log_average(lw))


def _ld_logarithmic(lw, params):
    return np.log10(1.0 + lw) / np.log10(1.0 + lw.max())


def _ld_best_exposure(lw, params):
    # Quarter-stop exposure grid; pick the factor mapping the most pixels
    # into [0.05, 0.95], ties resolved toward the smaller factor.
    lmax = lw.max()
    positive = lw[lw > 0]
    low = float(np.percentile(positive, 1.0))
    k_lo = int(np.ceil(4.0 * np.log2(1.0 / lmax)))
    k_hi = int(np.floor(4.0 * np.log2(4.0 / low)))
    best_f = 2.0 ** (k_lo / 4.0)
    best_n = -1
    for k in range(k_lo, k_hi + 1):
        f = 2.0 ** (k / 4.0)
        scaled = f * lw
        n = int(np.count_nonzero((scaled >= 0.05) & (scaled <= 0.95)))
        if n > best_n:
            best_n = n
            best_f = f
    return np.minimum(1.0, best_f * lw)


def _ld_photographic(lw, params):
    scaled = (params["a"] / log_average(lw)) * lw
    white = scaled.max()
    return scaled * (1.0 + scaled / (white * white)) / (1.0 + scaled)


def _ld_drago(lw, params):
    bias = params["bias"]
    ld_max = params["ld_max"]
    lw_max = lw.max()
    prefactor = (0.01 * ld_max) / np.log10(1.0 + lw_max)
    exponent = np.log(bias) / np.log(0.5)
    denom = np.log(2.0 + 8.0 * (lw / lw_max) ** exponent)
    out = np.zeros_like(lw)
    np.divide(prefactor * np.log1p(lw), denom, out=out, where=lw > 0)
    return out


def _ld_ward_global(lw, params):
    ld_max = params["ld_max"]
    lwa = log_average(lw)
    sf = ((1.219 + (ld_max / 2.0) ** 0.4) / (1.219 + lwa ** 0.4)) ** 2.5
    return np.minimum(1.0, sf * lw / ld_max)


def _ld_schlick(lw, params):
    p = params["p"]
    return p * lw / ((p - 1.0) * lw + lw.max())


_OPERATORS = {
    "normalize": _ld_normalize,
    "exponential": _ld_exponential,
    "logarithmic": _ld_logarithmic,
    "best_exposure": _ld_best_exposure,
    "photographic": _ld_photographic,
    "drago": _ld_drago,
    "ward_global": _ld_ward_global,
    "schlick": _ld_schlick,
}


def tone_map_luminance(lum, spec):
    """Ld plane in [0,1] for a world-luminance plane."""
    lum = np.asarray(lum, dtype=np.float64)
    if not np.isfinite(lum).all():
        raise ValueError("non-finite luminance")
    if lum.size == 0 or lum.max() <= 0.0:
        raise ValueError("luminance plane is empty or all zero")
    return _OPERATORS[spec.id](lum, spec.resolved())


def apply_tmo(img, spec):
    """Tone map a linear HDR raster; output luminance lies in [0,1].

    Channel ratios are preserved exactly, so saturated pixels may exceed
    [0,1] per channel until chroma compression runs.
    """
    img = np.asarray(img, dtype=np.float64)
    if not np.isfinite(img).all():
        raise ValueError("non-finite HDR input")
    lw = luminance(img)
    ld = tone_map_luminance(lw, spec)
    return img * (ld / np.maximum(lw, DELTA))[..., None]
