"""Temporal filter kernels: which frequencies a capture acquires."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .errors import GridMismatch, InvalidArgument

KINDS = ("compression", "periodic", "background-subtract", "extraction", "tracking")

# relative tolerance for "this frequency sits on an integer bin"
BIN_RTOL = 1e-9


@dataclass(frozen=True)
class KernelSpec:
    """Frequency set plus the coding waveform ``A + B cos(2 pi f t + phase)``.

    ``fundamental_hz`` sets the reconstruction grid for periodic and
    extraction kernels; grid kernels use ``1 / exposure_s``.
    """

    exposure_s: float
    frequencies_hz: tuple[float, ...]
    kind: str = "compression"
    amplitude: float = 0.5
    contrast: float = 0.5
    fundamental_hz: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "frequencies_hz", tuple(float(f) for f in self.frequencies_hz))
        if not self.exposure_s > 0:
            raise InvalidArgument(f"exposure must be positive, got {self.exposure_s}")
        if self.kind not in KINDS:
            raise InvalidArgument(f"unknown kernel kind {self.kind!r}; expected one of {KINDS}")
        fs = self.frequencies_hz
        if not fs:
            raise InvalidArgument("kernel needs at least one frequency")
        if any(f < 0 or not math.isfinite(f) for f in fs):
            raise InvalidArgument(f"frequencies must be finite and non-negative, got {fs}")
        if len(set(fs)) != len(fs):
            raise InvalidArgument(f"duplicate frequencies in {fs}")
        if self.amplitude < 0 or self.contrast < 0:
            raise InvalidArgument("amplitude and contrast must be non-negative")
        if self.kind == "tracking" and len(fs) != 1:
            raise InvalidArgument("a tracking kernel carries exactly one frequency")
        if self.fundamental_hz is not None and not self.fundamental_hz > 0:
            raise InvalidArgument(f"fundamental must be positive, got {self.fundamental_hz}")

    @property
    def h(self) -> int:
        return len(self.frequencies_hz)

    @property
    def max_frequency_hz(self) -> float:
        return max(self.frequencies_hz)

    def grid_base_hz(self) -> float:
        """Bin spacing of the reconstruction grid."""
        if self.fundamental_hz is not None:
            return self.fundamental_hz
        base = 1.0 / self.exposure_s
        if self.kind == "extraction" and not _on_grid(self.frequencies_hz, base):
            common = _common_fundamental(self.frequencies_hz)
            if common is not None:
                return common
        return base

    def bins(self) -> np.ndarray:
        """Integer bin of every frequency on the reconstruction grid."""
        base = self.grid_base_hz()
        raw = np.asarray(self.frequencies_hz) / base
        b = np.rint(raw)
        bad = np.abs(raw - b) > BIN_RTOL * np.maximum(1.0, raw)
        if bad.any():
            off = [f for f, x in zip(self.frequencies_hz, bad) if x]
            raise GridMismatch(f"frequencies {off} Hz are not integer multiples of the {base:g} Hz grid")
        return b.astype(int)

    def with_coding(self, amplitude: float, contrast: float) -> "KernelSpec":
        return replace(self, amplitude=amplitude, contrast=contrast)


def _on_grid(freqs, base) -> bool:
    raw = np.asarray(freqs) / base
    return bool(np.all(np.abs(raw - np.rint(raw)) <= BIN_RTOL * np.maximum(1.0, raw)))


def _common_fundamental(freqs, max_den: int = 1000) -> float | None:
    nonzero = [Fraction(f).limit_denominator(max_den) for f in freqs if f > 0]
    if not nonzero:
        return None
    num = 0
    den = 1
    for fr in nonzero:
        num = math.gcd(num * fr.denominator, fr.numerator * den)
        den = den * fr.denominator
        g = math.gcd(num, den)
        num, den = num // g, den // g
    base = num / den
    return base if _on_grid(freqs, base) else None


def _grid(exposure_s: float, start: int, stop: int) -> tuple[float, ...]:
    df = 1.0 / exposure_s
    return tuple(k * df for k in range(start, stop))


def make_compression_kernel(exposure_s: float, h: int) -> KernelSpec:
    """DC plus the first ``h - 1`` harmonics of ``1 / exposure_s``."""
    if h < 1:
        raise InvalidArgument(f"h must be >= 1, got {h}")
    if not exposure_s > 0:
        raise InvalidArgument(f"exposure must be positive, got {exposure_s}")
    return KernelSpec(exposure_s, _grid(exposure_s, 0, h), kind="compression")


def make_background_subtract_kernel(exposure_s: float, h: int) -> KernelSpec:
    if h < 1:
        raise InvalidArgument(f"h must be >= 1, got {h}")
    if not exposure_s > 0:
        raise InvalidArgument(f"exposure must be positive, got {exposure_s}")
    return KernelSpec(exposure_s, _grid(exposure_s, 1, h + 1), kind="background-subtract")


def make_periodic_kernel(fundamental_hz: float, harmonics, exposure_s: float) -> KernelSpec:
    if not fundamental_hz > 0:
        raise InvalidArgument(f"fundamental must be positive, got {fundamental_hz}")
    harmonics = [int(k) for k in harmonics]
    if not harmonics or any(k < 1 for k in harmonics):
        raise InvalidArgument(f"harmonics must be positive integers, got {harmonics}")
    if len(set(harmonics)) != len(harmonics):
        raise InvalidArgument(f"duplicate harmonic in {harmonics}")
    return KernelSpec(
        exposure_s,
        tuple(k * fundamental_hz for k in harmonics),
        kind="periodic",
        fundamental_hz=fundamental_hz,
    )


def make_tracking_kernel(exposure_s: float) -> KernelSpec:
    """One coding period per exposure, so phase maps to time without wrap-around."""
    if not exposure_s > 0:
        raise InvalidArgument(f"exposure must be positive, got {exposure_s}")
    return KernelSpec(exposure_s, (1.0 / exposure_s,), kind="tracking")


def make_extraction_kernel(exposure_s: float, frequencies_hz, fundamental_hz: float | None = None) -> KernelSpec:
    return KernelSpec(exposure_s, tuple(frequencies_hz), kind="extraction", fundamental_hz=fundamental_hz)


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        lines = [f"violation: {v}" for v in self.violations] + [f"warning: {w}" for w in self.warnings]
        return "\n".join(lines) if lines else "clean"


def validate_kernel(kernel: KernelSpec, video_frame_rate_hz: float) -> ValidationReport:
    report = ValidationReport()
    nyquist = video_frame_rate_hz / 2
    if kernel.max_frequency_hz > nyquist:
        report.violations.append(
            f"coding frequency {kernel.max_frequency_hz:g} Hz exceeds the {nyquist:g} Hz Nyquist limit of the input video"
        )
    if kernel.amplitude < kernel.contrast:
        report.violations.append(
            f"A = {kernel.amplitude:g} < B = {kernel.contrast:g}: the coding waveform goes negative (negative light)"
        )
    df = 1.0 / kernel.exposure_s
    fs = sorted(kernel.frequencies_hz)
    if kernel.kind in ("compression", "background-subtract"):
        steps = np.diff([0.0] + fs if kernel.kind == "background-subtract" else fs)
        if steps.size and steps.max() > df * (1 + BIN_RTOL):
            report.violations.append(
                f"frequency spacing {steps.max():g} Hz exceeds 1/t_expo = {df:g} Hz; reconstruction will alias in time"
            )
        if not _on_grid(fs, df):
            report.violations.append(f"frequencies are not on the 1/t_expo = {df:g} Hz grid")
    elif kernel.kind == "tracking":
        if abs(fs[0] * kernel.exposure_s - 1) > BIN_RTOL:
            report.violations.append(
                f"tracking frequency {fs[0]:g} Hz is not 1/t_expo; phase-to-time mapping becomes ambiguous"
            )
    elif not _on_grid(fs, df):
        report.warnings.append(
            f"frequencies are off the 1/t_expo = {df:g} Hz grid; reconstruction uses the "
            f"{kernel.grid_base_hz():g} Hz period grid"
        )
    return report


def parse_kernel(text: str, exposure_s: float) -> KernelSpec:
    """Parse ``compression:h=9``, ``periodic:f=91,harmonics=3,5,7,11``,
    ``background:h=4``, ``tracking`` or ``extraction:f=455``."""
    kind, _, rest = text.partition(":")
    params: dict[str, list[str]] = {}
    key = None
    for tok in filter(None, rest.split(",")):
        if "=" in tok:
            key, _, val = tok.partition("=")
            params[key.strip()] = [val.strip()]
        elif key is not None:
            params[key].append(tok.strip())
        else:
            raise InvalidArgument(f"cannot parse kernel parameter {tok!r} in {text!r}")
    try:
        if kind == "compression":
            return make_compression_kernel(exposure_s, int(params["h"][0]))
        if kind in ("background", "background-subtract"):
            return make_background_subtract_kernel(exposure_s, int(params["h"][0]))
        if kind == "periodic":
            return make_periodic_kernel(float(params["f"][0]), [int(k) for k in params["harmonics"]], exposure_s)
        if kind == "tracking":
            return make_tracking_kernel(exposure_s)
        if kind == "extraction":
            fund = float(params["fundamental"][0]) if "fundamental" in params else None
            return make_extraction_kernel(exposure_s, [float(f) for f in params["f"]], fund)
    except KeyError as e:
        raise InvalidArgument(f"kernel {text!r} is missing parameter {e.args[0]!r}") from None
    except ValueError as e:
        if isinstance(e, InvalidArgument):
            raise
        raise InvalidArgument(f"bad kernel parameter in {text!r}: {e}") from None
    raise InvalidArgument(f"unknown kernel kind {kind!r}")
