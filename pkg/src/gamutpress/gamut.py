"""Display-gamut model: per-hue triangular cusp table plus the exact test.

The cusp table drives the compression scaling (triangle geometry); final
containment always uses the exact RGB test, which stays correct even
where the true slice boundary is concave.
"""

from dataclasses import dataclass

import numpy as np

from . import backend
from ._constants import TWO_PI
from .color import rgb_to_lch

DEFAULT_BINS = 360
DEFAULT_EDGE_SAMPLES = 1024
GAMUT_EPS = 1e-4

# The 12 edges of the RGB unit cube as (corner, direction) pairs; the
# maximum-chroma locus per hue lies on these edges. The six edges not
# touching a gray corner (the primary/secondary hexagon) carry the cusp
# itself; gray-cornered edges contribute interior samples whose hues may
# drift, so they never mark a bin as directly covered.
_HEXAGON_EDGES = [
    ((1, 0, 0), (0, 1, 0)),
    ((0, 1, 0), (0, 0, 1)),
    ((0, 0, 1), (1, 0, 0)),
    ((1, 1, 0), (-1, 0, 0)),
    ((0, 1, 1), (0, -1, 0)),
    ((1, 0, 1), (0, 0, -1)),
]
_GRAY_CORNER_EDGES = [
    ((0, 0, 0), (1, 0, 0)),
    ((0, 0, 0), (0, 1, 0)),
    ((0, 0, 0), (0, 0, 1)),
    ((1, 1, 1), (-1, 0, 0)),
    ((1, 1, 1), (0, -1, 0)),
    ((1, 1, 1), (0, 0, -1)),
]


@dataclass(frozen=True)
class CuspTable:
    """Per-hue-bin (L, C) of the maximum-chroma gamut vertex."""

    l_cusp: np.ndarray
    c_cusp: np.ndarray

    @property
    def bins(self):
        return len(self.c_cusp)

    def bin_of(self, hue):
        idx = np.floor(np.asarray(hue) / TWO_PI * self.bins).astype(np.int64)
        return np.clip(idx, 0, self.bins - 1)

    def to_csv(self):
        lines = ["bin,l_cusp,c_cusp"]
        for k in range(self.bins):
            lines.append(f"{k},{self.l_cusp[k]:.6f},{self.c_cusp[k]:.6f}")
        return "\n".join(lines) + "\n"


def fill_empty_bins_circular(values, populated):
    """Interpolate unpopulated bins linearly between circular neighbors."""
    values = np.asarray(values, dtype=np.float64).copy()
    populated = np.asarray(populated, dtype=bool)
    if populated.all():
        return values
    if not populated.any():
        raise ValueError("no populated bins to interpolate from")
    n = len(values)
    filled = np.flatnonzero(populated)
    for k in np.flatnonzero(~populated):
        # Nearest populated neighbors in each circular direction.
        after = filled[np.searchsorted(filled, k) % len(filled)]
        before = filled[np.searchsorted(filled, k) - 1]
        span = (after - before) % n
        if span == 0:  # single populated bin
            values[k] = values[before]
            continue
        t = ((k - before) % n) / span
        values[k] = (1.0 - t) * values[before] + t * values[after]
    return values


def _edge_points(edges, samples):
    t = np.linspace(0.0, 1.0, samples)
    pts = [
        np.asarray(corner, dtype=np.float64) + t[:, None] * np.asarray(direction, dtype=np.float64)
        for corner, direction in edges
    ]
    return np.concatenate(pts, axis=0)


def build_srgb_cusp_table(bins=DEFAULT_BINS, edge_samples=DEFAULT_EDGE_SAMPLES):
    """Sample the RGB-cube edges and keep the max-chroma point per hue bin."""
    if bins < 36:
        raise ValueError("need at least 36 hue bins")
    if edge_samples < 64:
        raise ValueError("need at least 64 samples per cube edge")
    hexagon = rgb_to_lch(_edge_points(_HEXAGON_EDGES, edge_samples))
    gray = rgb_to_lch(_edge_points(_GRAY_CORNER_EDGES, edge_samples))
    gray = gray[gray[:, 1] > 1e-9]  # drop the hueless gray corners
    lch = np.concatenate([hexagon, gray], axis=0)
    idx = np.minimum((lch[:, 2] / TWO_PI * bins).astype(np.int64), bins - 1)

    c_cusp = np.zeros(bins)
    l_cusp = np.zeros(bins)
    order = np.argsort(lch[:, 1], kind="stable")  # ascending; later writes win
    c_cusp[idx[order]] = lch[order, 1]
    l_cusp[idx[order]] = lch[order, 0]
    populated = np.zeros(bins, dtype=bool)
    populated[idx[: len(hexagon)]] = True

    c_cusp = fill_empty_bins_circular(c_cusp, populated)
    l_cusp = fill_empty_bins_circular(l_cusp, populated)
    return CuspTable(l_cusp=l_cusp, c_cusp=c_cusp)


def _interp_cusp(table, hue):
    """Cusp (L, C) at arbitrary hue, linear between bin centers, circular."""
    hue = np.asarray(hue, dtype=np.float64)
    n = table.bins
    pos = hue / TWO_PI * n - 0.5
    k0 = np.floor(pos).astype(np.int64) % n
    t = pos - np.floor(pos)
    k1 = (k0 + 1) % n
    l_c = (1.0 - t) * table.l_cusp[k0] + t * table.l_cusp[k1]
    c_c = (1.0 - t) * table.c_cusp[k0] + t * table.c_cusp[k1]
    return l_c, c_c


def cusp_max_chroma(lightness, hue, table):
    """Triangle-model chroma bound at (L, h): linear to the cusp, then to white."""
    lightness = np.asarray(lightness, dtype=np.float64)
    l_c, c_c = _interp_cusp(table, hue)
    below = c_c * lightness / l_c
    above = c_c * (100.0 - lightness) / (100.0 - l_c)
    out = np.where(lightness <= l_c, below, above)
    out = np.maximum(out, 0.0)
    if out.ndim == 0:
        return float(out)
    return out


def in_gamut(lch, eps=GAMUT_EPS):
    """Exact test: LCh renders to linear RGB within [-eps, 1+eps]."""
    lch = np.asarray(lch, dtype=np.float64)
    mask = backend.active().in_gamut_mask(lch, eps)
    if mask.ndim == 0:
        return bool(mask)
    return mask
