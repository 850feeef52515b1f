"""Wall-time benchmark of the compression path over a resolution ladder.

Images are resampled (area-preserving, aspect kept) to each target pixel
count; every point runs warm-up repetitions first so JIT compilation never
lands in the timings. The same ladder can be timed on both kernel
backends for comparison.
"""

import time
from dataclasses import dataclass

import numpy as np

from . import backend
from .compress import compress_chroma
from .gamut import build_srgb_cusp_table

LADDER_MPIXELS = (0.26, 1.0, 2.0, 4.0, 9.4)
MIN_REPS = 5


def resize_bilinear(img, target_mpixels):
    """Resample to ~target megapixels, preserving aspect ratio."""
    img = np.asarray(img, dtype=np.float64)
    h, w = img.shape[:2]
    scale = np.sqrt(target_mpixels * 1e6 / (h * w))
    nh = max(1, int(round(h * scale)))
    nw = max(1, int(round(w * scale)))
    ys = (np.arange(nh) + 0.5) * h / nh - 0.5
    xs = (np.arange(nw) + 0.5) * w / nw - 0.5
    y0 = np.clip(np.floor(ys).astype(np.int64), 0, h - 1)
    x0 = np.clip(np.floor(xs).astype(np.int64), 0, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    x1 = np.minimum(x0 + 1, w - 1)
    ty = np.clip(ys - y0, 0.0, 1.0)[:, None, None]
    tx = np.clip(xs - x0, 0.0, 1.0)[None, :, None]
    top = img[y0][:, x0] * (1 - tx) + img[y0][:, x1] * tx
    bot = img[y1][:, x0] * (1 - tx) + img[y1][:, x1] * tx
    return top * (1 - ty) + bot * ty


@dataclass(frozen=True)
class BenchPoint:
    engine: str
    mpixels: float
    width: int
    height: int
    reps: int
    mean_ms: float
    std_ms: float
    fps: float


def set_threads(n):
    if backend.backend_name() == "numba":
        import numba

        numba.set_num_threads(max(1, int(n)))


def run_bench(img, resolutions=LADDER_MPIXELS, reps=10, warmup=2, engines=("auto",), table=None):
    """Time compress_chroma per engine and ladder point; returns BenchPoints."""
    if reps < MIN_REPS:
        raise ValueError(f"need at least {MIN_REPS} repetitions, got {reps}")
    if table is None:
        table = build_srgb_cusp_table()
    points = []
    for engine in engines:
        backend.use_backend(engine)
        name = backend.backend_name()
        for mp in resolutions:
            scaled = np.ascontiguousarray(resize_bilinear(img, mp))
            for _ in range(warmup):
                compress_chroma(scaled, table)
            times = []
            for _ in range(reps):
                t0 = time.perf_counter()
                compress_chroma(scaled, table)
                times.append((time.perf_counter() - t0) * 1e3)
            times = np.asarray(times)
            mean_ms = float(times.mean())
            points.append(
                BenchPoint(
                    engine=name,
                    mpixels=mp,
                    width=scaled.shape[1],
                    height=scaled.shape[0],
                    reps=reps,
                    mean_ms=mean_ms,
                    std_ms=float(times.std(ddof=1)) if reps > 1 else 0.0,
                    fps=1e3 / mean_ms,
                )
            )
    return points


def format_table(points):
    header = f"{'engine':>7s} {'MPix':>6s} {'size':>12s} {'mean ms':>10s} {'std ms':>9s} {'frames/s':>9s}"
    lines = [header]
    for p in points:
        lines.append(
            f"{p.engine:>7s} {p.mpixels:6.2f} {p.width:5d}x{p.height:<6d} {p.mean_ms:10.2f} {p.std_ms:9.2f} {p.fps:9.2f}"
        )
    return "\n".join(lines) + "\n"


def to_csv(points):
    lines = ["engine,mpixels,width,height,reps,mean_ms,std_ms,fps"]
    for p in points:
        lines.append(
            f"{p.engine},{p.mpixels},{p.width},{p.height},{p.reps},{p.mean_ms:.4f},{p.std_ms:.4f},{p.fps:.4f}"
        )
    return "\n".join(lines) + "\n"
