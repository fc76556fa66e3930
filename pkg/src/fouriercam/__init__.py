"""Simulator and codec for a camera that records per-pixel temporal spectra in one exposure."""

from .errors import FormatError, FourierCamError, GridMismatch, InvalidArgument, NumericalFailure, UndefinedPhase
from .geometry import CodingLayout, build_layout, inverse_sensor_index, sensor_index
from .kernels import (
    KernelSpec,
    make_background_subtract_kernel,
    make_compression_kernel,
    make_extraction_kernel,
    make_periodic_kernel,
    make_tracking_kernel,
    validate_kernel,
)
from .synth import VideoCube
from .forward import CodedExposure, NoiseConfig, encode_exposure, quantize_pwm, sampling_vector
from .decode import TemporalSpectrum, assemble_symmetric, decode_spectrum, extract_coefficient, reconstruct_video
from .tracking import Trajectory, detect, extract_trajectory, phase_to_time, tracking_temporal_resolution

__version__ = "0.1.0"
