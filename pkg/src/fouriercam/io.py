"""Self-describing little-endian binary formats.

Every file starts with a 4-byte magic and a ``uint16`` version. Counts are
``uint32``, reals ``float64``.

FCV1  video cube   frames, rows, cols, frame_rate | float32 samples, frame-major
FCK1  kernel       kind, exposure, A, B, fundamental, h | h float64 frequencies
FCE1  exposure     m, n, p, q, FCK1 block, dt, mode, pwm, noise | float64 pixels
FCS1  spectrum     m, n, p, q, FCK1 block, dt, scale | (re, im) float64 pairs
"""
from __future__ import annotations

import math
import struct
from pathlib import Path

import numpy as np

from .decode import TemporalSpectrum
from .errors import FormatError
from .forward import CodedExposure, NoiseConfig, SPATIAL_MODES
from .geometry import CodingLayout
from .kernels import KINDS, KernelSpec
from .synth import VideoCube

VERSION = 1

_PREAMBLE = struct.Struct("<4sH")
_VIDEO = struct.Struct("<IIId")
_KERNEL = struct.Struct("<BddddI")
_LAYOUT = struct.Struct("<IIII")
_CODED = struct.Struct("<dBIddHQ")
_SPEC = struct.Struct("<dd")


class _Reader:
    def __init__(self, buf: bytes, what: str):
        self.buf = buf
        self.pos = 0
        self.what = what

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.buf):
            raise FormatError(
                f"truncated {self.what}: expected at least {self.pos + n} bytes, file has {len(self.buf)}"
            )
        out = self.buf[self.pos : self.pos + n]
        self.pos += n
        return out

    def unpack(self, st: struct.Struct):
        return st.unpack(self.take(st.size))

    def array(self, dtype, count: int) -> np.ndarray:
        dt = np.dtype(dtype)
        return np.frombuffer(self.take(dt.itemsize * count), dtype=dt).copy()

    def finish(self):
        if self.pos != len(self.buf):
            raise FormatError(f"{self.what}: expected {self.pos} bytes, file has {len(self.buf)}")


def _preamble(magic: bytes) -> bytes:
    return _PREAMBLE.pack(magic, VERSION)


def _open(buf: bytes, magic: bytes, what: str) -> _Reader:
    r = _Reader(buf, what)
    got, version = r.unpack(_PREAMBLE)
    if got != magic:
        raise FormatError(f"not a {what}: magic {got!r}, expected {magic!r}")
    if version != VERSION:
        raise FormatError(f"{what} version {version} not supported (expected {VERSION})")
    return r


def peek_magic(path) -> bytes:
    with open(path, "rb") as fh:
        return fh.read(4)


# video cube

def video_to_bytes(video: VideoCube) -> bytes:
    M, (rows, cols) = video.frames, video.shape
    head = _preamble(b"FCV1") + _VIDEO.pack(M, rows, cols, float(video.frame_rate_hz))
    return head + video.data.astype("<f4").tobytes()


def video_from_bytes(buf: bytes) -> VideoCube:
    r = _open(buf, b"FCV1", "FCV1 video cube")
    M, rows, cols, rate = r.unpack(_VIDEO)
    data = r.array("<f4", M * rows * cols).reshape(M, rows, cols)
    r.finish()
    return VideoCube(data.astype(np.float64), rate)


# kernel

def _kernel_bytes(kernel: KernelSpec) -> bytes:
    fund = math.nan if kernel.fundamental_hz is None else kernel.fundamental_hz
    head = _preamble(b"FCK1") + _KERNEL.pack(
        KINDS.index(kernel.kind), kernel.exposure_s, kernel.amplitude, kernel.contrast, fund, kernel.h
    )
    return head + np.asarray(kernel.frequencies_hz, dtype="<f8").tobytes()


def _read_kernel(r: _Reader) -> KernelSpec:
    magic, version = r.unpack(_PREAMBLE)
    if magic != b"FCK1" or version != VERSION:
        raise FormatError(f"bad embedded kernel block: {magic!r} v{version}")
    kind, exposure, A, B, fund, h = r.unpack(_KERNEL)
    if kind >= len(KINDS):
        raise FormatError(f"unknown kernel kind code {kind}")
    freqs = r.array("<f8", h)
    return KernelSpec(
        exposure, tuple(freqs.tolist()), kind=KINDS[kind], amplitude=A, contrast=B,
        fundamental_hz=None if math.isnan(fund) else fund,
    )


def kernel_to_bytes(kernel: KernelSpec) -> bytes:
    return _kernel_bytes(kernel)


def kernel_from_bytes(buf: bytes) -> KernelSpec:
    r = _Reader(buf, "FCK1 kernel")
    k = _read_kernel(r)
    r.finish()
    return k


def _layout_bytes(layout: CodingLayout) -> bytes:
    return _LAYOUT.pack(layout.cg_rows, layout.cg_cols, layout.ce_rows, layout.ce_cols)


# coded exposure

def coded_to_bytes(coded: CodedExposure) -> bytes:
    noise = coded.noise if coded.noise is not None else NoiseConfig()
    tail = _CODED.pack(
        coded.dt_s,
        SPATIAL_MODES.index(coded.spatial_mode),
        coded.pwm_levels or 0,
        noise.photon_budget or 0.0,
        noise.read_noise_sigma,
        noise.adc_bits or 0,
        noise.rng_seed,
    )
    return (
        _preamble(b"FCE1") + _layout_bytes(coded.layout) + _kernel_bytes(coded.kernel) + tail
        + coded.pixels.astype("<f8").tobytes()
    )


def coded_from_bytes(buf: bytes) -> CodedExposure:
    r = _open(buf, b"FCE1", "FCE1 coded exposure")
    layout = CodingLayout(*r.unpack(_LAYOUT))
    kernel = _read_kernel(r)
    dt, mode, pwm, photon, read, adc, seed = r.unpack(_CODED)
    if mode >= len(SPATIAL_MODES):
        raise FormatError(f"unknown spatial mode code {mode}")
    rows, cols = layout.sensor_shape
    pixels = r.array("<f8", rows * cols).reshape(rows, cols)
    r.finish()
    noise = NoiseConfig(photon or None, read, adc or None, seed)
    return CodedExposure(pixels, layout, kernel, dt, None if noise.is_null else noise, SPATIAL_MODES[mode], pwm or None)


# spectrum

def spectrum_to_bytes(spec: TemporalSpectrum) -> bytes:
    c = np.ascontiguousarray(spec.coefficients, dtype="<c16")
    return (
        _preamble(b"FCS1") + _layout_bytes(spec.layout) + _kernel_bytes(spec.kernel)
        + _SPEC.pack(spec.dt_s, spec.scale) + c.tobytes()
    )


def spectrum_from_bytes(buf: bytes) -> TemporalSpectrum:
    r = _open(buf, b"FCS1", "FCS1 spectrum")
    layout = CodingLayout(*r.unpack(_LAYOUT))
    kernel = _read_kernel(r)
    dt, _scale = r.unpack(_SPEC)
    m, n = layout.scene_shape
    coeffs = r.array("<c16", m * n * kernel.h).reshape(m, n, kernel.h)
    r.finish()
    return TemporalSpectrum(coeffs, kernel, layout, dt)


# path helpers

def write_video(path, video: VideoCube):
    Path(path).write_bytes(video_to_bytes(video))


def read_video(path) -> VideoCube:
    return video_from_bytes(Path(path).read_bytes())


def write_coded(path, coded: CodedExposure):
    Path(path).write_bytes(coded_to_bytes(coded))


def read_coded(path) -> CodedExposure:
    return coded_from_bytes(Path(path).read_bytes())


def write_spectrum(path, spec: TemporalSpectrum):
    Path(path).write_bytes(spectrum_to_bytes(spec))


def read_spectrum(path) -> TemporalSpectrum:
    return spectrum_from_bytes(Path(path).read_bytes())
