"""Binary PGM/PPM export for amplitude, phase and time maps."""
from __future__ import annotations

from pathlib import Path

import numpy as np

# 256-entry ramp for time maps: blue -> cyan -> green -> yellow -> red,
# piecewise linear through those five anchors at equal spacing.
_ANCHORS = np.array([[0, 0, 255], [0, 255, 255], [0, 255, 0], [255, 255, 0], [255, 0, 0]], dtype=float)


def color_ramp() -> np.ndarray:
    x = np.linspace(0, len(_ANCHORS) - 1, 256)
    out = np.empty((256, 3))
    for ch in range(3):
        out[:, ch] = np.interp(x, np.arange(len(_ANCHORS)), _ANCHORS[:, ch])
    return np.rint(out).astype(np.uint8)


def to_gray(values, lo=None, hi=None) -> np.ndarray:
    """Linearly map ``[lo, hi]`` onto 0..255 (defaults: data min/max)."""
    v = np.asarray(values, dtype=np.float64)
    lo = np.nanmin(v) if lo is None else lo
    hi = np.nanmax(v) if hi is None else hi
    if not hi > lo:
        return np.zeros(v.shape, dtype=np.uint8)
    g = np.floor((v - lo) / (hi - lo) * 256)
    return np.clip(np.nan_to_num(g, nan=0), 0, 255).astype(np.uint8)


def phase_to_gray(phase) -> np.ndarray:
    """[-pi, pi) onto the full grey range."""
    wrapped = (np.asarray(phase) + np.pi) % (2 * np.pi) - np.pi
    return to_gray(wrapped, -np.pi, np.pi)


def time_map_rgb(time_map, exposure_s: float) -> np.ndarray:
    """Colour by event time; NaN (undetected) pixels are black."""
    tm = np.asarray(time_map, dtype=np.float64)
    idx = to_gray(tm, 0.0, exposure_s)
    rgb = color_ramp()[idx]
    rgb[np.isnan(tm)] = 0
    return rgb


def write_pgm(path, gray: np.ndarray):
    gray = np.asarray(gray, dtype=np.uint8)
    rows, cols = gray.shape
    Path(path).write_bytes(f"P5\n{cols} {rows}\n255\n".encode("ascii") + gray.tobytes())


def write_ppm(path, rgb: np.ndarray):
    rgb = np.asarray(rgb, dtype=np.uint8)
    rows, cols, _ = rgb.shape
    Path(path).write_bytes(f"P6\n{cols} {rows}\n255\n".encode("ascii") + rgb.tobytes())


def read_pnm(path) -> np.ndarray:
    """Read back a file written by :func:`write_pgm` / :func:`write_ppm`."""
    magic, size, _maxval, data = Path(path).read_bytes().split(b"\n", 3)
    cols, rows = (int(v) for v in size.split())
    if magic == b"P6":
        return np.frombuffer(data, dtype=np.uint8).reshape(rows, cols, 3)
    return np.frombuffer(data, dtype=np.uint8).reshape(rows, cols)
