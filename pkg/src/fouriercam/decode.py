"""4-step phase-shifting decode and inverse-DFT video reconstruction.

Sign convention: the decoded coefficient of a CE is

    (D_0 - D_pi) + i (D_pi/2 - D_3pi/2) = 2 B dt * sum_t I(t) exp(-i 2 pi f t)

i.e. the forward DFT convention, scaled by ``2 B dt``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridMismatch, InvalidArgument, NumericalFailure
from .forward import CodedExposure
from .geometry import CodingLayout, to_blocks
from .kernels import KernelSpec
from .synth import VideoCube

# imaginary residue of an inverse transform, relative to the signal norm
IMAG_RTOL = 1e-9


@dataclass
class TemporalSpectrum:
    """Per-coding-group coefficients ``[cg_r, cg_c, k]`` in kernel frequency order.

    Stored values are the raw phase-shifting differences; divide by
    ``scale`` (``2 B dt``) for the plain DFT coefficient.
    """

    coefficients: np.ndarray
    kernel: KernelSpec
    layout: CodingLayout
    dt_s: float

    def __post_init__(self):
        self.coefficients = np.asarray(self.coefficients, dtype=np.complex128)
        want = (*self.layout.scene_shape, self.kernel.h)
        if self.coefficients.shape != want:
            raise InvalidArgument(f"coefficient array {self.coefficients.shape} does not match {want}")

    @property
    def scale(self) -> float:
        return 2 * self.kernel.contrast * self.dt_s

    @property
    def fourier(self) -> np.ndarray:
        """Coefficients as ``sum_t I(t) exp(-i 2 pi f t)``."""
        if self.scale == 0:
            raise NumericalFailure("zero coding contrast: spectrum scale is zero")
        return self.coefficients / self.scale

    @property
    def integrated_frames(self) -> float:
        return self.kernel.exposure_s / self.dt_s

    def amplitude(self, k: int | None = None) -> np.ndarray:
        c = self.fourier
        return np.abs(c if k is None else c[..., k])

    def phase(self, k: int | None = None) -> np.ndarray:
        c = self.fourier
        return np.angle(c if k is None else c[..., k])


def extract_coefficient(d0, d_half_pi, d_pi, d_3half_pi):
    """4-step phase shifting; the common ``A`` term cancels."""
    return (np.asarray(d0) - d_pi) + 1j * (np.asarray(d_half_pi) - d_3half_pi)


def _slot_of_phase(layout: CodingLayout) -> list[int]:
    quarter = np.rint(np.asarray(layout.phase_order) / (0.5 * np.pi)).astype(int) % 4
    return [int(np.flatnonzero(quarter == q)[0]) for q in range(4)]


def decode_spectrum(coded: CodedExposure) -> TemporalSpectrum:
    layout, kernel = coded.layout, coded.kernel
    if layout.n_frequencies != kernel.h:
        raise InvalidArgument(f"layout has {layout.n_frequencies} CEs but kernel has {kernel.h} frequencies")
    if coded.pixels.shape != layout.sensor_shape:
        raise InvalidArgument(f"coded image {coded.pixels.shape} does not match layout {layout.sensor_shape}")
    if not coded.dt_s > 0:
        raise InvalidArgument(f"dt must be positive, got {coded.dt_s}")
    blocks = to_blocks(coded.pixels, layout)
    s0, s1, s2, s3 = _slot_of_phase(layout)
    coeffs = extract_coefficient(blocks[..., s0], blocks[..., s1], blocks[..., s2], blocks[..., s3])
    return TemporalSpectrum(coeffs, kernel, layout, coded.dt_s)


def grid_length(kernel: KernelSpec) -> int:
    """Smallest reconstruction length holding every kernel bin: ``2 * max bin``."""
    top = int(kernel.bins().max())
    return max(1, 2 * top)


def assemble_symmetric(coeffs, kernel: KernelSpec, n: int | None = None, source_dt_s: float | None = None) -> np.ndarray:
    """Place coefficients at their bins and mirror conjugates into the negative bins.

    ``coeffs`` has the kernel's frequencies on its last axis. DC and, if
    occupied, the Nyquist bin are forced real. At the Nyquist bin the
    coefficient and its mirror land on the same slot, giving ``2 Re F``;
    the exception is a frequency that was also the Nyquist rate of the
    sampled source (``2 f dt == 1``), whose DFT coefficient already holds
    both halves.
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if coeffs.shape[-1] != kernel.h:
        raise InvalidArgument(f"expected {kernel.h} coefficients on the last axis, got {coeffs.shape[-1]}")
    bins = kernel.bins()
    need = grid_length(kernel)
    n = need if n is None else int(n)
    if n < need:
        raise GridMismatch(f"{n} bins cannot hold bin {bins.max()}; need at least {need}")
    full = np.zeros(coeffs.shape[:-1] + (n,), dtype=np.complex128)
    for k, b in enumerate(bins):
        c = coeffs[..., k]
        if b == 0:
            full[..., b] = c.real
        elif 2 * b == n:
            f = kernel.frequencies_hz[k]
            whole = source_dt_s is not None and abs(2 * f * source_dt_s - 1) < 1e-9
            full[..., b] = c.real if whole else 2 * c.real
        else:
            full[..., b] = c
            full[..., n - b] = np.conj(c)
    return full


def reconstruct_video(
    spectrum: TemporalSpectrum,
    frames: int | None = None,
    tile: bool = False,
) -> VideoCube:
    """Inverse DFT of every coding group's assembled spectrum.

    The output spans one grid period (``t_expo`` for grid kernels, one
    fundamental period for periodic ones) sampled at ``frames`` points,
    ``2 * max bin`` by default. ``tile`` repeats a periodic reconstruction to
    fill the whole exposure. Values are in scene intensity units: a video
    band-limited to the kernel bins comes back unchanged (minus its mean when
    DC is not sampled).
    """
    kernel = spectrum.kernel
    if kernel.kind == "tracking":
        raise InvalidArgument("tracking captures hold one coefficient; use the tracking module instead")
    full = assemble_symmetric(spectrum.fourier, kernel, frames, spectrum.dt_s)
    n = full.shape[-1]
    x = np.fft.ifft(full, axis=-1) * (n / spectrum.integrated_frames)
    norm = np.linalg.norm(x)
    residue = np.abs(x.imag).max() if x.size else 0.0
    if norm > 0 and residue > IMAG_RTOL * norm:
        raise NumericalFailure(f"inverse transform left an imaginary residue of {residue:g} (norm {norm:g})")
    video = np.moveaxis(x.real, -1, 0)
    base = kernel.grid_base_hz()
    rate = n * base
    if tile:
        total = int(round(kernel.exposure_s * rate))
        video = video[np.arange(total) % n]
    return VideoCube(video, rate)


def equivalent_frame_rate(kernel: KernelSpec) -> float:
    """``2 * f_max``: the rate implied by the highest acquired frequency."""
    return 2 * kernel.max_frequency_hz
