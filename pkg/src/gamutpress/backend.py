"""Kernel backend selection.

The heavy per-pixel work (color conversion, gamut tests, chroma clipping,
bilateral smoothing) exists twice: compiled numba loops and a vectorized
pure-numpy fallback. The GAMUTPRESS_BACKEND environment variable picks the
initial backend ("numba", "numpy", or "auto"); use_backend() switches at
runtime, which the benchmark uses to time both paths in one process.
"""

import os

from . import _kernels_numpy

ENV_VAR = "GAMUTPRESS_BACKEND"

_BACKENDS = {"numpy": _kernels_numpy}
_numba_import_error = None
try:
    from . import _kernels_numba

    _BACKENDS["numba"] = _kernels_numba
except ImportError as exc:  # pragma: no cover - depends on environment
    _numba_import_error = exc

_active = None


def available_backends():
    return sorted(_BACKENDS)


def use_backend(name):
    """Select the kernel backend; returns the active module."""
    global _active
    if name in ("auto", None, ""):
        name = "numba" if "numba" in _BACKENDS else "numpy"
    if name not in _BACKENDS:
        raise ValueError(
            f"unknown backend {name!r}; available: {available_backends()}"
            + (f" (numba import failed: {_numba_import_error})" if _numba_import_error else "")
        )
    _active = _BACKENDS[name]
    return _active


def active():
    """The currently selected kernel module."""
    global _active
    if _active is None:
        use_backend(os.environ.get(ENV_VAR, "auto"))
    return _active


def backend_name():
    return active().NAME
