"""Moving-object detection and timing from a single ``1 / t_expo`` coefficient.

A pixel that lights up at time ``t0`` contributes ``exp(-i 2 pi f0 t0)`` to
its coefficient, so ``t0 = t_expo * ((-arg F) mod 2 pi) / (2 pi)``. Because
``f0 * t_expo == 1`` the map is one-to-one over the exposure.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .decode import TemporalSpectrum
from .errors import InvalidArgument, UndefinedPhase

DEFAULT_THRESHOLD = 0.1
# amplitudes below this fraction of the largest possible |F| count as zero
NOISE_FLOOR = 1e-9


@dataclass
class Trajectory:
    amplitude_map: np.ndarray
    time_map: np.ndarray
    detection_mask: np.ndarray
    exposure_s: float
    track: list[tuple[int, int, float, float]] = field(default_factory=list)

    def times(self) -> np.ndarray:
        return np.array([t for _, _, t, _ in self.track])


def _require_tracking(spectrum: TemporalSpectrum):
    if spectrum.kernel.kind != "tracking" or spectrum.kernel.h != 1:
        raise InvalidArgument(f"need a single-frequency tracking capture, got a {spectrum.kernel.kind!r} kernel")


def detect(spectrum: TemporalSpectrum, threshold_rel: float = DEFAULT_THRESHOLD) -> tuple[np.ndarray, np.ndarray]:
    """Threshold ``|F|`` relative to its maximum. Returns ``(mask, amplitude)``."""
    _require_tracking(spectrum)
    if not 0 <= threshold_rel < 1:
        raise InvalidArgument(f"threshold must be in [0, 1), got {threshold_rel}")
    amp = spectrum.amplitude(0)
    floor = NOISE_FLOOR * spectrum.integrated_frames
    top = amp.max(initial=0.0)
    if top <= floor:
        return np.zeros(amp.shape, dtype=bool), amp
    return (amp > threshold_rel * top) & (amp > floor), amp


def phase_to_time(coefficient, exposure_s: float):
    """Event time in ``[0, exposure_s)`` from the phase of a coefficient."""
    c = np.asarray(coefficient, dtype=np.complex128)
    if np.any(c == 0):
        raise UndefinedPhase("phase of a zero coefficient is undefined")
    frac = np.mod(-np.angle(c), 2 * np.pi) / (2 * np.pi)
    t = frac * exposure_s
    # mod can round up to exactly 2 pi
    t = np.where(t >= exposure_s, 0.0, t)
    return float(t) if t.ndim == 0 else t


def extract_trajectory(spectrum: TemporalSpectrum, threshold_rel: float = DEFAULT_THRESHOLD) -> Trajectory:
    mask, amp = detect(spectrum, threshold_rel)
    exposure = spectrum.kernel.exposure_s
    time_map = np.full(amp.shape, np.nan)
    coeffs = spectrum.fourier[..., 0]
    if mask.any():
        time_map[mask] = phase_to_time(coeffs[mask], exposure)
    rows, cols = np.nonzero(mask)
    # nonzero is row-major already; a stable sort on t keeps that as the tie-break
    order = np.argsort(time_map[rows, cols], kind="stable")
    track = [
        (int(rows[i]), int(cols[i]), float(time_map[rows[i], cols[i]]), float(amp[rows[i], cols[i]]))
        for i in order
    ]
    return Trajectory(amp, time_map, mask, exposure, track)


def tracking_temporal_resolution(exposure_s: float, grayscale_levels: int) -> float:
    """Smallest resolvable event-time step for a modulator with ``grayscale_levels``."""
    if grayscale_levels < 2:
        raise InvalidArgument(f"need at least 2 grey levels, got {grayscale_levels}")
    return exposure_s / grayscale_levels


def circular_time_error(t_a, t_b, exposure_s: float):
    """Signed difference ``t_a - t_b`` wrapped into ``[-T/2, T/2)``."""
    d = np.asarray(t_a) - np.asarray(t_b)
    return (d + exposure_s / 2) % exposure_s - exposure_s / 2
