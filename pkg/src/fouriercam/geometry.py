"""Coding mosaic layout.

The sensor is tiled into ``m x n`` coding groups (one per reconstructed scene
pixel). Each group holds ``p x q`` coding elements (one per frequency) and each
element is a 2x2 block whose four pixels carry the phases::

    [0,    pi/2 ]
    [pi,   3pi/2]

Elements are assigned frequencies in row-major ascending order.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument

PHASES = (0.0, 0.5 * np.pi, np.pi, 1.5 * np.pi)


@dataclass(frozen=True)
class CodingLayout:
    cg_rows: int
    cg_cols: int
    ce_rows: int
    ce_cols: int
    phase_order: tuple[float, ...] = PHASES

    def __post_init__(self):
        for name in ("cg_rows", "cg_cols", "ce_rows", "ce_cols"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise InvalidArgument(f"{name} must be a positive integer, got {v!r}")
        if sorted(np.round(np.asarray(self.phase_order) / (0.5 * np.pi)).astype(int).tolist()) != [0, 1, 2, 3]:
            raise InvalidArgument(f"phase_order must permute the four quarter-wave phases, got {self.phase_order}")

    @property
    def n_frequencies(self) -> int:
        return self.ce_rows * self.ce_cols

    @property
    def scene_shape(self) -> tuple[int, int]:
        return (self.cg_rows, self.cg_cols)

    @property
    def sensor_shape(self) -> tuple[int, int]:
        return (2 * self.ce_rows * self.cg_rows, 2 * self.ce_cols * self.cg_cols)

    def frequency_index(self, ce) -> int:
        """Index into the kernel frequency list for coding element ``ce``."""
        return ce[0] * self.ce_cols + ce[1]


def build_layout(cg_rows: int, cg_cols: int, ce_rows: int, ce_cols: int) -> CodingLayout:
    return CodingLayout(cg_rows, cg_cols, ce_rows, ce_cols)


def max_layout(sensor_rows: int, sensor_cols: int, ce_rows: int, ce_cols: int) -> CodingLayout:
    """Largest layout whose mosaic fits an effective sensor; leftover pixels are cropped."""
    return build_layout(sensor_rows // (2 * ce_rows), sensor_cols // (2 * ce_cols), ce_rows, ce_cols)


def ce_shape_for(h: int) -> tuple[int, int]:
    """Most square ``(p, q)`` with ``p * q == h`` and ``p <= q``."""
    if h < 1:
        raise InvalidArgument(f"h must be >= 1, got {h}")
    p = int(np.sqrt(h))
    while h % p:
        p -= 1
    return p, h // p


def _check(value, bound, what):
    if not 0 <= value < bound:
        raise InvalidArgument(f"{what} {value} out of range [0, {bound})")


def sensor_index(layout: CodingLayout, cg, ce, phase_slot: int) -> tuple[int, int]:
    _check(cg[0], layout.cg_rows, "cg row")
    _check(cg[1], layout.cg_cols, "cg col")
    _check(ce[0], layout.ce_rows, "ce row")
    _check(ce[1], layout.ce_cols, "ce col")
    _check(phase_slot, 4, "phase slot")
    row = cg[0] * 2 * layout.ce_rows + 2 * ce[0] + phase_slot // 2
    col = cg[1] * 2 * layout.ce_cols + 2 * ce[1] + phase_slot % 2
    return row, col


def inverse_sensor_index(layout: CodingLayout, sensor) -> tuple[tuple[int, int], tuple[int, int], int]:
    rows, cols = layout.sensor_shape
    _check(sensor[0], rows, "sensor row")
    _check(sensor[1], cols, "sensor col")
    cg_r, rem_r = divmod(sensor[0], 2 * layout.ce_rows)
    cg_c, rem_c = divmod(sensor[1], 2 * layout.ce_cols)
    ce_r, sr = divmod(rem_r, 2)
    ce_c, sc = divmod(rem_c, 2)
    return (cg_r, cg_c), (ce_r, ce_c), 2 * sr + sc


# Vectorised forms of the two maps. A sensor image reshaped to
# (m, p, 2, n, q, 2) has axes (cg_r, ce_r, slot_r, cg_c, ce_c, slot_c),
# which is exactly sensor_index written as array strides.

def to_blocks(sensor: np.ndarray, layout: CodingLayout) -> np.ndarray:
    """Sensor image -> array indexed ``[cg_r, cg_c, frequency, phase_slot]``."""
    m, n, p, q = layout.cg_rows, layout.cg_cols, layout.ce_rows, layout.ce_cols
    if sensor.shape[-2:] != layout.sensor_shape:
        raise InvalidArgument(f"sensor shape {sensor.shape[-2:]} != layout extent {layout.sensor_shape}")
    a = sensor.reshape(m, p, 2, n, q, 2).transpose(0, 3, 1, 4, 2, 5)
    return a.reshape(m, n, p * q, 4)


def from_blocks(blocks: np.ndarray, layout: CodingLayout) -> np.ndarray:
    """Inverse of :func:`to_blocks`."""
    m, n, p, q = layout.cg_rows, layout.cg_cols, layout.ce_rows, layout.ce_cols
    a = blocks.reshape(m, n, p, q, 2, 2).transpose(0, 2, 4, 1, 3, 5)
    return a.reshape(2 * p * m, 2 * q * n)


def slot_maps(layout: CodingLayout) -> tuple[np.ndarray, np.ndarray]:
    """Per-sensor-pixel frequency index and phase slot."""
    m, n, h = layout.cg_rows, layout.cg_cols, layout.n_frequencies
    freq = np.broadcast_to(np.arange(h)[:, None], (m, n, h, 4))
    slot = np.broadcast_to(np.arange(4)[None, :], (m, n, h, 4))
    return from_blocks(np.ascontiguousarray(freq), layout), from_blocks(np.ascontiguousarray(slot), layout)
