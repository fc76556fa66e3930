"""Virtual FourierCam: pixel-wise sinusoidal coding and a single integration.

Each sensor pixel sees its scene intensity multiplied by
``A + B cos(2 pi f t + phase)`` and integrated over the exposure with a
left Riemann sum on the video's own frame grid.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument
from .geometry import CodingLayout, from_blocks, slot_maps
from .kernels import KernelSpec
from .synth import VideoCube

SPATIAL_MODES = ("ideal", "block")


@dataclass(frozen=True)
class NoiseConfig:
    """Sensor noise, applied after integration.

    ``photon_budget`` is the expected photon count of a full-scale pixel
    (``(A + B) * t_expo``); ``None`` disables shot noise. ``read_noise_sigma``
    is in photo-electrons when shot noise is on, otherwise in units of full
    scale. ``adc_bits`` quantises ``[0, full scale]`` uniformly.
    """

    photon_budget: float | None = None
    read_noise_sigma: float = 0.0
    adc_bits: int | None = None
    rng_seed: int = 0

    def __post_init__(self):
        if self.photon_budget is not None and not self.photon_budget > 0:
            raise InvalidArgument(f"photon budget must be positive, got {self.photon_budget}")
        if self.read_noise_sigma < 0:
            raise InvalidArgument("read noise sigma must be non-negative")
        if self.adc_bits is not None and not 1 <= self.adc_bits <= 32:
            raise InvalidArgument(f"adc bits must be in [1, 32], got {self.adc_bits}")

    @property
    def is_null(self) -> bool:
        return self.photon_budget is None and self.read_noise_sigma == 0 and self.adc_bits is None

    def describe(self) -> str:
        if self.is_null:
            return "none"
        parts = []
        if self.photon_budget is not None:
            parts.append(f"photon={self.photon_budget:g}")
        if self.read_noise_sigma:
            parts.append(f"read={self.read_noise_sigma:g}")
        if self.adc_bits is not None:
            parts.append(f"adc={self.adc_bits}")
        return ",".join(parts) + f",seed={self.rng_seed}"


@dataclass
class CodedExposure:
    pixels: np.ndarray
    layout: CodingLayout
    kernel: KernelSpec
    dt_s: float
    noise: NoiseConfig | None = None
    spatial_mode: str = "ideal"
    pwm_levels: int | None = None

    def __post_init__(self):
        if self.pixels.shape != self.layout.sensor_shape:
            raise InvalidArgument(f"pixel array {self.pixels.shape} does not match layout {self.layout.sensor_shape}")
        if self.layout.n_frequencies != self.kernel.h:
            raise InvalidArgument(
                f"layout has {self.layout.n_frequencies} coding elements but kernel has {self.kernel.h} frequencies"
            )

    @property
    def full_scale(self) -> float:
        return (self.kernel.amplitude + self.kernel.contrast) * self.kernel.exposure_s


def sampling_vector(f_hz: float, phase: float, A: float, B: float, times_s) -> np.ndarray:
    if B < 0 or A < B:
        raise InvalidArgument(f"need A >= B >= 0 for a non-negative coding waveform, got A={A}, B={B}")
    t = np.asarray(times_s, dtype=np.float64)
    return A + B * np.cos(2 * np.pi * f_hz * t + phase)


def quantize_pwm(waveform, levels: int) -> np.ndarray:
    """Round to the nearest of ``levels`` evenly spaced grey levels in [0, 1]."""
    if levels < 2:
        raise InvalidArgument(f"need at least 2 levels, got {levels}")
    w = np.asarray(waveform, dtype=np.float64)
    # cos() can overshoot [0, 1] by an ulp at A = B = 0.5
    if w.size and (w.min() < -1e-12 or w.max() > 1 + 1e-12):
        raise InvalidArgument(f"PWM waveform must lie in [0, 1], got [{w.min()}, {w.max()}]")
    k = levels - 1
    return np.floor(np.clip(w, 0.0, 1.0) * k + 0.5) / k


def coding_waveforms(kernel: KernelSpec, layout: CodingLayout, times_s, pwm_levels: int | None = None) -> np.ndarray:
    """All coding waveforms, shape ``(frames, h, 4)`` indexed by frequency and phase slot."""
    t = np.asarray(times_s, dtype=np.float64)
    out = np.empty((t.size, kernel.h, 4))
    for k, f in enumerate(kernel.frequencies_hz):
        for s, phase in enumerate(layout.phase_order):
            w = sampling_vector(f, phase, kernel.amplitude, kernel.contrast, t)
            out[:, k, s] = quantize_pwm(w, pwm_levels) if pwm_levels is not None else w
    return out


def _check_inputs(video, layout, kernel, spatial_mode):
    if spatial_mode not in SPATIAL_MODES:
        raise InvalidArgument(f"spatial mode must be one of {SPATIAL_MODES}, got {spatial_mode!r}")
    if layout.n_frequencies != kernel.h:
        raise InvalidArgument(f"layout has {layout.n_frequencies} coding elements, kernel has {kernel.h} frequencies")
    if abs(video.duration_s - kernel.exposure_s) > video.dt_s * (1 + 1e-9):
        raise InvalidArgument(
            f"video lasts {video.duration_s:g}s but the exposure is {kernel.exposure_s:g}s (tolerance one frame)"
        )
    nyquist = video.frame_rate_hz / 2
    if kernel.max_frequency_hz > nyquist * (1 + 1e-12):
        raise InvalidArgument(f"kernel frequency {kernel.max_frequency_hz:g} Hz exceeds video Nyquist {nyquist:g} Hz")
    want = layout.scene_shape if spatial_mode == "ideal" else layout.sensor_shape
    if video.shape != want:
        raise InvalidArgument(f"{spatial_mode} mode needs a {want} video, got {video.shape}")


def integrate(video: VideoCube, layout: CodingLayout, kernel: KernelSpec,
              spatial_mode: str = "ideal", pwm_levels: int | None = None) -> np.ndarray:
    """Noiseless detections ``D`` on the sensor grid."""
    _check_inputs(video, layout, kernel, spatial_mode)
    dt = video.dt_s
    waves = coding_waveforms(kernel, layout, video.times(), pwm_levels)
    M = video.frames
    if spatial_mode == "ideal":
        m, n = layout.scene_shape
        I = video.data.reshape(M, m * n)
        D = dt * np.einsum("tp,tks->pks", I, waves, optimize=True)
        return from_blocks(D.reshape(m, n, kernel.h, 4), layout)
    freq, slot = slot_maps(layout)
    out = np.empty(layout.sensor_shape)
    for k in range(kernel.h):
        for s in range(4):
            sel = (freq == k) & (slot == s)
            out[sel] = dt * (waves[:, k, s] @ video.data[:, sel])
    return out


def apply_noise(pixels: np.ndarray, noise: NoiseConfig, full_scale: float) -> np.ndarray:
    """Shot noise, then read noise, then ADC, each drawn from per-row streams.

    Row ``r`` uses ``SeedSequence(seed, spawn_key=(r,))`` so rows can be
    processed in any order or in parallel with identical results.
    """
    if noise.is_null:
        return pixels.copy()
    out = np.empty_like(pixels)
    for r in range(pixels.shape[0]):
        rng = np.random.default_rng(np.random.SeedSequence(noise.rng_seed, spawn_key=(r,)))
        row = pixels[r]
        if noise.photon_budget is not None:
            gain = noise.photon_budget / full_scale
            counts = rng.poisson(np.maximum(row, 0.0) * gain).astype(np.float64)
            if noise.read_noise_sigma:
                counts += rng.normal(0.0, noise.read_noise_sigma, size=row.shape)
            row = counts / gain
        elif noise.read_noise_sigma:
            row = row + rng.normal(0.0, noise.read_noise_sigma * full_scale, size=row.shape)
        row = np.maximum(row, 0.0)
        if noise.adc_bits is not None:
            top = 2**noise.adc_bits - 1
            row = np.clip(np.floor(row / full_scale * top + 0.5), 0, top) * (full_scale / top)
        out[r] = row
    return out


def encode_exposure(
    video: VideoCube,
    layout: CodingLayout,
    kernel: KernelSpec,
    spatial_mode: str = "ideal",
    pwm_levels: int | None = None,
    noise: NoiseConfig | None = None,
) -> CodedExposure:
    """Simulate one coded exposure of ``video``.

    ``ideal``: the video has one pixel per coding group and every sensor
    pixel of a group sees that pixel. ``block``: the video is at sensor
    resolution and every sensor pixel sees its own intensity.
    """
    D = integrate(video, layout, kernel, spatial_mode, pwm_levels)
    full_scale = (kernel.amplitude + kernel.contrast) * kernel.exposure_s
    if noise is not None and not noise.is_null:
        D = apply_noise(D, noise, full_scale)
    return CodedExposure(D, layout, kernel, video.dt_s, noise, spatial_mode, pwm_levels)


def block_average(video: VideoCube, layout: CodingLayout) -> VideoCube:
    """Downsample a sensor-resolution video to one pixel per coding group."""
    m, n = layout.scene_shape
    bh, bw = 2 * layout.ce_rows, 2 * layout.ce_cols
    d = video.data.reshape(video.frames, m, bh, n, bw).mean(axis=(2, 4))
    return VideoCube(d, video.frame_rate_hz)


def long_exposure(video: VideoCube) -> np.ndarray:
    """What an uncoded camera would record over the same exposure."""
    return video.data.sum(axis=0) * video.dt_s

