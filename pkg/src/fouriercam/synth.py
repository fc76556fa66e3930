"""Deterministic synthetic scenes.

Everything is rendered by point-sampling an analytic intensity at pixel
centres, so the temporal spectrum of every pixel is known exactly. Nothing is
clipped: generators are built to stay inside [0, 1].
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidArgument


@dataclass
class VideoCube:
    """``data[frame, row, col]`` sampled at ``t = frame / frame_rate_hz``."""

    data: np.ndarray
    frame_rate_hz: float

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=np.float64)
        if self.data.ndim != 3:
            raise InvalidArgument(f"video data must be 3-d (frames, rows, cols), got shape {self.data.shape}")
        if not self.frame_rate_hz > 0:
            raise InvalidArgument(f"frame rate must be positive, got {self.frame_rate_hz}")

    @property
    def frames(self) -> int:
        return self.data.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[1], self.data.shape[2]

    @property
    def dt_s(self) -> float:
        return 1.0 / self.frame_rate_hz

    @property
    def duration_s(self) -> float:
        return self.frames / self.frame_rate_hz

    def times(self) -> np.ndarray:
        return np.arange(self.frames) / self.frame_rate_hz

    def in_range(self) -> bool:
        return bool(self.data.min() >= 0.0 and self.data.max() <= 1.0)

    def check_range(self) -> "VideoCube":
        if not self.in_range():
            raise InvalidArgument(f"intensities outside [0, 1]: [{self.data.min()}, {self.data.max()}]")
        return self


def _frame_count(frames, duration_s, frame_rate_hz):
    if frames is None:
        if duration_s is None:
            raise InvalidArgument("give either frames or duration_s")
        frames = int(round(duration_s * frame_rate_hz))
    if frames < 1:
        raise InvalidArgument(f"need at least one frame, got {frames}")
    return frames


def _pixel_grid(rows, cols):
    y, x = np.mgrid[0:rows, 0:cols].astype(np.float64)
    return y, x


def disk_geometry(rows, cols, center=None, radius=None, hub=0.25):
    """Default centre/outer radius/hub radius of a disk drawn in a frame."""
    if center is None:
        center = ((rows - 1) / 2, (cols - 1) / 2)
    if radius is None:
        radius = min(rows, cols) / 2
    return center, radius, hub * radius


def ring_masks(n_rings: int, rows: int, cols: int, center=None, radius=None, hub=0.25) -> list[np.ndarray]:
    """Boolean masks of the ``n_rings`` equal-width annuli, inner to outer."""
    (cy, cx), r_out, r_in = disk_geometry(rows, cols, center, radius, hub)
    y, x = _pixel_grid(rows, cols)
    r = np.hypot(y - cy, x - cx)
    edges = np.linspace(r_in, r_out, n_rings + 1)
    return [(r >= lo) & (r < hi) for lo, hi in zip(edges[:-1], edges[1:])]


def rotating_disk(
    rpm: float,
    ring_periods: Sequence[int],
    rows: int,
    cols: int,
    frames: int | None = None,
    frame_rate_hz: float = 1000.0,
    *,
    duration_s: float | None = None,
    center=None,
    radius=None,
    hub: float = 0.25,
) -> VideoCube:
    """Disk of concentric rings, ring ``i`` carrying ``ring_periods[i]`` angular periods.

    A pixel on a ring with ``s`` periods flickers at ``s * rpm / 60`` Hz.
    Pixels off the disk and inside the hub are dark.
    """
    ring_periods = [int(s) for s in ring_periods]
    if not ring_periods or min(ring_periods) < 1:
        raise InvalidArgument(f"ring periods must be positive, got {ring_periods}")
    top = abs(rpm) / 60 * max(ring_periods)
    if frame_rate_hz < 2 * top:
        raise InvalidArgument(
            f"{frame_rate_hz:g} fps aliases the {top:g} Hz outer ring; need at least {2 * top:g} fps"
        )
    frames = _frame_count(frames, duration_s, frame_rate_hz)
    (cy, cx), _, _ = disk_geometry(rows, cols, center, radius, hub)
    y, x = _pixel_grid(rows, cols)
    theta = np.arctan2(y - cy, x - cx)
    omega = 2 * np.pi * rpm / 60
    t = np.arange(frames) / frame_rate_hz
    data = np.zeros((frames, rows, cols))
    for s, mask in zip(ring_periods, ring_masks(len(ring_periods), rows, cols, center, radius, hub)):
        phase = s * (theta[mask][None, :] - omega * t[:, None])
        data[:, mask] = 0.5 + 0.5 * np.cos(phase)
    return VideoCube(data, frame_rate_hz)


def moving_spot(
    path: Callable[[float], tuple[float, float]],
    spot_radius: float,
    rows: int,
    cols: int,
    frames: int | None = None,
    frame_rate_hz: float = 100.0,
    *,
    duration_s: float | None = None,
    check_bounds: bool = True,
) -> VideoCube:
    """Bright disk of ``spot_radius`` pixels centred at ``path(t) = (row, col)``."""
    frames = _frame_count(frames, duration_s, frame_rate_hz)
    y, x = _pixel_grid(rows, cols)
    data = np.zeros((frames, rows, cols))
    for i in range(frames):
        r, c = path(i / frame_rate_hz)
        if check_bounds and not (0 <= r <= rows - 1 and 0 <= c <= cols - 1):
            raise InvalidArgument(f"path leaves the frame at t={i / frame_rate_hz:g}s: ({r:g}, {c:g})")
        data[i] = (y - r) ** 2 + (x - c) ** 2 <= spot_radius**2
    return VideoCube(data, frame_rate_hz)


def heart_path(rows: int, cols: int, period_s: float = 1.0, margin: float = 0.1):
    """Parametric heart curve fitted inside the frame, one lap per ``period_s``."""
    cy, cx = (rows - 1) / 2, (cols - 1) / 2
    scale = (1 - 2 * margin) * min(rows, cols) / 34.0

    def path(t):
        s = 2 * np.pi * t / period_s
        hx = 16 * np.sin(s) ** 3
        hy = 13 * np.cos(s) - 5 * np.cos(2 * s) - 2 * np.cos(3 * s) - np.cos(4 * s)
        return cy - scale * (hy + 2.5), cx + scale * hx

    return path


def circle_path(center, radius, period_s: float = 1.0, phase: float = 0.0):
    def path(t):
        a = 2 * np.pi * t / period_s + phase
        return center[0] + radius * np.sin(a), center[1] + radius * np.cos(a)

    return path


def line_path(start, end, duration_s: float):
    (r0, c0), (r1, c1) = start, end

    def path(t):
        u = t / duration_s
        return r0 + (r1 - r0) * u, c0 + (c1 - c0) * u

    return path


def character_flash(glyph_masks: Sequence[np.ndarray], dwell_s: float, frame_rate_hz: float) -> VideoCube:
    """Show glyph ``g`` during ``[g * dwell_s, (g + 1) * dwell_s)``."""
    masks = [np.asarray(g, dtype=bool) for g in glyph_masks]
    if not masks:
        raise InvalidArgument("need at least one glyph")
    if len({m.shape for m in masks}) != 1:
        raise InvalidArgument("glyph masks must share one shape")
    frames = int(round(len(masks) * dwell_s * frame_rate_hz))
    t = np.arange(frames) / frame_rate_hz
    # small guard so frame times that land exactly on a boundary go to the later glyph
    which = np.minimum(np.floor(t / dwell_s + 1e-9).astype(int), len(masks) - 1)
    data = np.stack([masks[g] for g in which]).astype(np.float64)
    return VideoCube(data, frame_rate_hz)


# 5x7 bitmap font, just enough letters for the flash demos
_FONT = {
    "T": ["#####", "..#..", "..#..", "..#..", "..#..", "..#..", "..#.."],
    "H": ["#...#", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"],
    "U": ["#...#", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."],
    "E": ["#####", "#....", "#....", "####.", "#....", "#....", "#####"],
    "O": [".###.", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."],
    "L": ["#....", "#....", "#....", "#....", "#....", "#....", "#####"],
    "I": ["#####", "..#..", "..#..", "..#..", "..#..", "..#..", "#####"],
    "X": ["#...#", "#...#", ".#.#.", "..#..", ".#.#.", "#...#", "#...#"],
}


def text_glyphs(words: Sequence[str], rows: int, cols: int, scale: int = 1) -> list[np.ndarray]:
    """Lay ``words`` out left to right on one line; return one mask per word.

    Each mask lights only that word's own cells, so words never overlap.
    """
    cw, ch, gap = 5 * scale, 7 * scale, scale
    widths = [len(w) * (cw + gap) - gap for w in words]
    total = sum(widths) + 2 * gap * (len(words) - 1)
    if total > cols or ch > rows:
        raise InvalidArgument(f"text needs {ch}x{total} pixels, frame is {rows}x{cols}")
    top = (rows - ch) // 2
    left = (cols - total) // 2
    masks = []
    for word, w in zip(words, widths):
        m = np.zeros((rows, cols), dtype=bool)
        x = left
        for letter in word:
            try:
                bitmap = np.array([[c == "#" for c in line] for line in _FONT[letter.upper()]])
            except KeyError:
                raise InvalidArgument(f"no glyph for {letter!r}") from None
            m[top : top + ch, x : x + cw] = np.kron(bitmap, np.ones((scale, scale), dtype=bool))
            x += cw + gap
        masks.append(m)
        left += w + 2 * gap
    return masks


def translating_block(
    texture_cycles_per_px: float,
    speed_px_per_s: float,
    rows: int,
    cols: int,
    frames: int | None = None,
    frame_rate_hz: float = 100.0,
    *,
    duration_s: float | None = None,
    block: tuple[int, int, int, int] | None = None,
) -> VideoCube:
    """Vertical sinusoidal fringes moving right at ``speed_px_per_s``.

    The texture shows through the window ``block = (r0, r1, c0, c1)``
    (whole frame by default), so any pixel inside it sees a pure tone at
    ``texture_cycles_per_px * speed_px_per_s`` Hz.
    """
    f_t = abs(texture_cycles_per_px * speed_px_per_s)
    if f_t > frame_rate_hz / 2:
        raise InvalidArgument(f"temporal frequency {f_t:g} Hz aliases at {frame_rate_hz:g} fps")
    frames = _frame_count(frames, duration_s, frame_rate_hz)
    r0, r1, c0, c1 = block if block is not None else (0, rows, 0, cols)
    t = np.arange(frames)[:, None] / frame_rate_hz
    x = np.arange(c0, c1)[None, :]
    rowprof = 0.5 + 0.5 * np.cos(2 * np.pi * texture_cycles_per_px * (x - speed_px_per_s * t))
    data = np.zeros((frames, rows, cols))
    data[:, r0:r1, c0:c1] = rowprof[:, None, :]
    return VideoCube(data, frame_rate_hz)


def composite(base: VideoCube, overlay: VideoCube | np.ndarray, mask: np.ndarray) -> VideoCube:
    """Replace ``base`` by ``overlay`` wherever ``mask`` is set.

    ``overlay`` may be a video of the same size or a single static image.
    """
    mask = np.asarray(mask, dtype=bool)
    data = base.data.copy()
    src = overlay.data if isinstance(overlay, VideoCube) else np.broadcast_to(overlay, data.shape)
    data[:, mask] = src[:, mask]
    return VideoCube(data, base.frame_rate_hz)


def _noise_spectrum(rng, rows, cols, slope=2.0):
    """rfft2 spectrum of zero-mean unit-peak noise with ``1/f**slope`` power."""
    fy = np.fft.fftfreq(rows)[:, None]
    fx = np.fft.rfftfreq(cols)[None, :]
    f = np.hypot(fy, fx)
    f[0, 0] = 1.0
    spec = (rng.normal(size=f.shape) + 1j * rng.normal(size=f.shape)) * f ** (-slope / 2)
    spec[0, 0] = 0.0
    return spec / np.abs(np.fft.irfft2(spec, s=(rows, cols))).max()


def _shifted(spec, rows, cols, dy, dx):
    fy = np.fft.fftfreq(rows)[:, None]
    fx = np.fft.rfftfreq(cols)[None, :]
    return np.fft.irfft2(spec * np.exp(-2j * np.pi * (fy * dy + fx * dx)), s=(rows, cols))


def _soft_box(y, x, r0, c0, h, w, edge):
    def ramp(u, lo, hi):
        a = np.clip((u - lo) / edge, 0, 1)
        b = np.clip((hi - u) / edge, 0, 1)
        return np.minimum(a, b)

    return ramp(y, r0, r0 + h) * ramp(x, c0, c0 + w)


def textured_scene(
    rows: int,
    cols: int,
    frames: int,
    frame_rate_hz: float,
    *,
    n_blocks: int = 3,
    max_speed_px_per_s: float | None = None,
    seed: int = 0,
) -> VideoCube:
    """Natural-looking stand-in: static ``1/f`` textured background with a
    few soft-edged ``1/f`` textured blocks translating across it at constant
    velocity. Smooth textures and soft edges give per-pixel temporal spectra
    the low-pass decay of real footage.
    """
    rng = np.random.default_rng(seed)
    duration = frames / frame_rate_hz
    if max_speed_px_per_s is None:
        max_speed_px_per_s = 0.5 * min(rows, cols) / duration
    y, x = _pixel_grid(rows, cols)
    background = 0.5 + 0.3 * np.fft.irfft2(_noise_spectrum(rng, rows, cols), s=(rows, cols))
    blocks = []
    for _ in range(n_blocks):
        h = rng.uniform(0.2, 0.35) * rows
        w = rng.uniform(0.2, 0.35) * cols
        r0 = rng.uniform(0, rows - h)
        c0 = rng.uniform(0, cols - w)
        ang = rng.uniform(0, 2 * np.pi)
        speed = max_speed_px_per_s * rng.uniform(0.5, 1.0)
        tex = _noise_spectrum(rng, rows, cols, slope=2.5)
        blocks.append((r0, c0, h, w, speed * np.sin(ang), speed * np.cos(ang), tex))
    t = np.arange(frames) / frame_rate_hz
    data = np.empty((frames, rows, cols))
    for i in range(frames):
        frame = background.copy()
        for r0, c0, h, w, vy, vx, tex in blocks:
            oy, ox = vy * t[i], vx * t[i]
            alpha = _soft_box(y, x, r0 + oy, c0 + ox, h, w, edge=3.0)
            # texture rides with the block (sub-pixel shift in the Fourier domain)
            frame = (1 - alpha) * frame + alpha * (0.5 + 0.4 * _shifted(tex, rows, cols, oy, ox))
        data[i] = frame
    return VideoCube(data, frame_rate_hz)
