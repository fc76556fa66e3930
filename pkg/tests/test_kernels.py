import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fouriercam.errors import GridMismatch, InvalidArgument
from fouriercam.forward import sampling_vector
from fouriercam.geometry import PHASES
from fouriercam.kernels import (
    KernelSpec, make_background_subtract_kernel, make_compression_kernel, make_extraction_kernel,
    make_periodic_kernel, make_tracking_kernel, parse_kernel, validate_kernel,
)


def test_compression_nine_coefficients():
    k = make_compression_kernel(0.1, 9)
    assert k.frequencies_hz == (0, 10, 20, 30, 40, 50, 60, 70, 80)
    assert k.kind == "compression"
    assert list(k.bins()) == list(range(9))


def test_compression_small():
    assert make_compression_kernel(1.0, 1).frequencies_hz == (0.0,)
    assert make_compression_kernel(0.5, 3).frequencies_hz == (0.0, 2.0, 4.0)


def test_periodic_ring_harmonics():
    k = make_periodic_kernel(91, [3, 5, 7, 11], 0.5)
    assert k.frequencies_hz == (273, 455, 637, 1001)
    assert k.kind == "periodic"
    assert list(k.bins()) == [3, 5, 7, 11]
    assert make_periodic_kernel(1, [1], 1).frequencies_hz == (1.0,)
    assert make_periodic_kernel(50, [2, 4], 0.2).frequencies_hz == (100.0, 200.0)


def test_periodic_duplicate_harmonic():
    with pytest.raises(InvalidArgument):
        make_periodic_kernel(91, [3, 3], 0.5)


def test_background_subtract():
    assert make_background_subtract_kernel(0.5, 4).frequencies_hz == (2, 4, 6, 8)
    assert make_background_subtract_kernel(1, 1).frequencies_hz == (1.0,)
    k = make_background_subtract_kernel(0.1, 8)
    assert k.frequencies_hz == make_compression_kernel(0.1, 9).frequencies_hz[1:]


@pytest.mark.parametrize("t,f", [(1.0, 1.0), (0.5, 2.0), (2.0, 0.5)])
def test_tracking(t, f):
    k = make_tracking_kernel(t)
    assert k.frequencies_hz == (f,)
    assert k.frequencies_hz[0] * k.exposure_s == 1.0


def test_validate_clean_and_nyquist():
    k = make_compression_kernel(0.1, 9)
    assert validate_kernel(k, 1000).ok
    rep = validate_kernel(k, 100)
    assert not rep.ok
    assert "80" in rep.violations[0] and "50" in rep.violations[0]


def test_validate_negative_light():
    k = KernelSpec(1.0, (0.0, 1.0), amplitude=0.3, contrast=0.5)
    rep = validate_kernel(k, 100)
    assert any("negative light" in v for v in rep.violations)


def test_validate_spacing():
    k = KernelSpec(1.0, (0.0, 1.0, 3.0), kind="compression")
    assert any("spacing" in v for v in validate_kernel(k, 100).violations)


def test_validate_periodic_off_grid_warns_only():
    rep = validate_kernel(make_periodic_kernel(91, [3, 5, 7, 11], 0.5), 4004)
    assert rep.ok and rep.warnings


def test_invalid_kernel_fields():
    with pytest.raises(InvalidArgument):
        KernelSpec(0.0, (1.0,))
    with pytest.raises(InvalidArgument):
        KernelSpec(1.0, (1.0, 1.0))
    with pytest.raises(InvalidArgument):
        KernelSpec(1.0, (-1.0,))
    with pytest.raises(InvalidArgument):
        KernelSpec(1.0, (1.0, 2.0), kind="tracking")
    with pytest.raises(InvalidArgument):
        KernelSpec(1.0, (1.0,), kind="bogus")


def test_grid_mismatch():
    k = KernelSpec(1.0, (0.5,), kind="compression")
    with pytest.raises(GridMismatch):
        k.bins()


def test_extraction_grid_falls_back_to_common_fundamental():
    k = make_extraction_kernel(0.5, [273, 455])
    assert k.grid_base_hz() == pytest.approx(91)
    assert list(k.bins()) == [3, 5]
    assert make_extraction_kernel(0.5, [198]).grid_base_hz() == 2.0


@settings(max_examples=50, deadline=None)
@given(st.floats(0.01, 10), st.integers(1, 30))
def test_compression_properties(t, h):
    k = make_compression_kernel(t, h)
    assert 0.0 in k.frequencies_hz
    assert k.max_frequency_hz == pytest.approx((h - 1) / t)
    times = np.linspace(0, t, 257)
    for f in k.frequencies_hz:
        for ph in PHASES:
            assert sampling_vector(f, ph, k.amplitude, k.contrast, times).min() >= -1e-15


@pytest.mark.parametrize("text,freqs,kind", [
    ("compression:h=9", (0, 10, 20, 30, 40, 50, 60, 70, 80), "compression"),
    ("periodic:f=91,harmonics=3,5,7,11", (273, 455, 637, 1001), "periodic"),
    ("background:h=2", (10, 20), "background-subtract"),
    ("tracking", (10,), "tracking"),
    ("extraction:f=455", (455,), "extraction"),
])
def test_parse_kernel(text, freqs, kind):
    k = parse_kernel(text, 0.1)
    assert k.kind == kind
    assert k.frequencies_hz == pytest.approx(freqs)


@pytest.mark.parametrize("text", ["compression", "nope:h=1", "periodic:f=91", "compression:h=x"])
def test_parse_kernel_errors(text):
    with pytest.raises(InvalidArgument):
        parse_kernel(text, 1.0)
