"""Closed-form comparisons against conventional cameras, and SSIM."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import InvalidArgument


@dataclass
class ComparisonReport:
    """Named scalars with units, in insertion order."""

    values: dict[str, tuple[float, str]] = field(default_factory=dict)

    def add(self, name: str, value: float, unit: str):
        if value < 0:
            raise InvalidArgument(f"{name} is negative ({value})")
        self.values[name] = (value, unit)
        return self

    def __getitem__(self, name):
        return self.values[name][0]

    def as_dict(self) -> dict[str, dict]:
        return {k: {"value": v, "unit": u} for k, (v, u) in self.values.items()}

    def to_text(self) -> str:
        return "\n".join(f"{k} = {v:.10g} {u}".rstrip() for k, (v, u) in self.values.items())


def _positive_count(name, v):
    if int(v) != v or v < 1:
        raise InvalidArgument(f"{name} must be a positive integer, got {v!r}")


def detection_bandwidth(f_max_hz: float, h: int) -> tuple[float, float]:
    """Minimum detector bandwidth: ``(conventional, fouriercam)`` in Hz."""
    _positive_count("h", h)
    return f_max_hz, f_max_hz / (2 * h)


def light_throughput(L: float, T_s: float, gain_m: int) -> tuple[float, float]:
    """Per-pixel light throughput of an impulse-coding camera vs sinusoidal coding."""
    if gain_m < 1:
        raise InvalidArgument(f"frame-rate gain must be >= 1, got {gain_m}")
    return L * T_s / gain_m, L * T_s / 2


def throughput_advantage(gain_m: float) -> float:
    return gain_m / 2


def data_volume(frames_M: int, pixels_N: int, h: int) -> tuple[int, int]:
    """Bytes for ``M`` 8-bit frames vs ``h`` complex coefficients (2 bytes each)."""
    for name, v in (("frames", frames_M), ("pixels", pixels_N), ("h", h)):
        _positive_count(name, v)
    return frames_M * pixels_N, 2 * h * pixels_N


def _log2_ceil(M: int) -> int:
    return (M - 1).bit_length()


def flops_comparison(frames_M: int, pixels_N: int) -> tuple[int, int, int]:
    """``(fft, fouriercam, saved)`` FLOPs for the temporal spectrum of a video.

    ``log2 M`` is rounded up when ``M`` is not a power of two.
    """
    _positive_count("frames", frames_M)
    _positive_count("pixels", pixels_N)
    lg = _log2_ceil(frames_M)
    fft = 5 * frames_M * pixels_N * lg
    fc = 3 * frames_M * pixels_N
    return fft, fc, (5 * frames_M * lg - 3 * frames_M) * pixels_N


def resolution_tradeoff(h: int) -> int:
    """Sensor pixels consumed per scene pixel when acquiring ``h`` coefficients."""
    _positive_count("h", h)
    return 4 * h


def equivalent_frame_rate(f_max_hz: float) -> float:
    return 2 * f_max_hz


SSIM_WINDOW = 8
SSIM_K1 = 0.01
SSIM_K2 = 0.03


def ssim_map(a, b, window: int = SSIM_WINDOW, data_range: float = 1.0) -> np.ndarray:
    """SSIM of every ``window x window`` patch (uniform weights, sample covariance)."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 2:
        raise InvalidArgument(f"ssim needs two equal-size 2-d images, got {a.shape} and {b.shape}")
    if min(a.shape) < window:
        raise InvalidArgument(f"image {a.shape} smaller than the {window}x{window} window")
    c1 = (SSIM_K1 * data_range) ** 2
    c2 = (SSIM_K2 * data_range) ** 2
    wa = sliding_window_view(a, (window, window))
    wb = sliding_window_view(b, (window, window))
    npx = window * window
    mu_a = wa.mean(axis=(-1, -2))
    mu_b = wb.mean(axis=(-1, -2))
    corr = npx / (npx - 1)
    var_a = wa.var(axis=(-1, -2)) * corr
    var_b = wb.var(axis=(-1, -2)) * corr
    cov = ((wa * wb).mean(axis=(-1, -2)) - mu_a * mu_b) * corr
    num = (2 * mu_a * mu_b + c1) * (2 * cov + c2)
    den = (mu_a**2 + mu_b**2 + c1) * (var_a + var_b + c2)
    return num / den


def ssim(a, b, window: int = SSIM_WINDOW, data_range: float = 1.0) -> float:
    """Mean structural similarity over all 8x8 windows."""
    return float(ssim_map(a, b, window, data_range).mean())


def video_ssim(reference, test) -> np.ndarray:
    """Per-frame SSIM of two ``(frames, rows, cols)`` stacks."""
    reference = np.asarray(reference)
    test = np.asarray(test)
    if reference.shape != test.shape:
        raise InvalidArgument(f"videos differ in shape: {reference.shape} vs {test.shape}")
    return np.array([ssim(r, t) for r, t in zip(reference, test)])


def comparison_report(
    f_max_hz: float,
    h: int,
    frames_M: int,
    pixels_N: int,
    exposure_s: float,
    gain_m: int | None = None,
    grayscale_levels: int = 256,
    intensity_L: float = 1.0,
) -> ComparisonReport:
    """Every closed-form comparison for one configuration."""
    from .tracking import tracking_temporal_resolution

    gain_m = frames_M if gain_m is None else gain_m
    rep = ComparisonReport()
    bw_trad, bw_fc = detection_bandwidth(f_max_hz, h)
    rep.add("bandwidth_traditional", bw_trad, "Hz").add("bandwidth_fouriercam", bw_fc, "Hz")
    lt_imp, lt_fc = light_throughput(intensity_L, exposure_s, gain_m)
    rep.add("throughput_impulse", lt_imp, "L*s").add("throughput_fouriercam", lt_fc, "L*s")
    rep.add("throughput_advantage", throughput_advantage(gain_m), "x")
    v_trad, v_fc = data_volume(frames_M, pixels_N, h)
    rep.add("volume_traditional", v_trad, "B").add("volume_fouriercam", v_fc, "B")
    fft, fc, saved = flops_comparison(frames_M, pixels_N)
    rep.add("flops_fft", fft, "FLOP").add("flops_fouriercam", fc, "FLOP")
    # very short videos cost more optically than by FFT; keep every entry non-negative
    if saved >= 0:
        rep.add("flops_saved", saved, "FLOP")
    else:
        rep.add("flops_extra", -saved, "FLOP")
    rep.add("pixels_per_scene_pixel", resolution_tradeoff(h), "px")
    rep.add("equivalent_frame_rate", equivalent_frame_rate(f_max_hz), "Hz")
    rep.add("tracking_resolution", tracking_temporal_resolution(exposure_s, grayscale_levels), "s")
    return rep

