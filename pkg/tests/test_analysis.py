import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_ssim
from fouriercam.analysis import (
    comparison_report, data_volume, detection_bandwidth, flops_comparison, light_throughput,
    resolution_tradeoff, ssim, ssim_map, throughput_advantage, video_ssim,
)
from fouriercam.errors import InvalidArgument
from fouriercam.geometry import ce_shape_for


def test_detection_bandwidth():
    assert detection_bandwidth(80, 8) == (80, 5)
    assert detection_bandwidth(7.0, 1) == (7.0, 3.5)
    assert detection_bandwidth(1001, 4) == (1001, 125.125)
    with pytest.raises(InvalidArgument):
        detection_bandwidth(10, 0)


def test_light_throughput():
    imp, fc = light_throughput(1, 1.0, 16)
    assert (imp, fc) == (1 / 16, 1 / 2) and fc / imp == throughput_advantage(16) == 8
    assert light_throughput(1, 1.0, 2) == (0.5, 0.5)
    imp, fc = light_throughput(1, 0.5, 1001)
    assert fc / imp == pytest.approx(500.5)
    with pytest.raises(InvalidArgument):
        light_throughput(1, 1.0, 0)


def test_data_volume_examples():
    assert data_volume(16, 235 * 157, 9) == (590_320, 664_110)
    assert data_volume(100, 1080**2, 16)[0] == 116_640_000


@settings(max_examples=50)
@given(st.integers(1, 64), st.integers(1, 10**6))
def test_data_volume_crossover(h, n):
    trad, fc = data_volume(2 * h, n, h)
    assert trad == fc
    assert data_volume(2 * h + 1, n, h)[0] > fc
    if h > 1:
        assert data_volume(2 * h - 1, n, h)[0] < fc


def test_flops_examples():
    assert flops_comparison(1024, 1) == (51200, 3072, 48128)
    assert flops_comparison(1, 37) == (0, 111, -111)
    # periodic disk: 1001 reconstructed frames over 353 x 235 scene pixels
    fft, fc, saved = flops_comparison(1001, 353 * 235)
    assert saved == fft - fc
    assert round(saved / 1e9, 1) == 3.9


@settings(max_examples=50)
@given(st.integers(1, 5000), st.integers(1, 1000))
def test_flops_consistency(m, n):
    fft, fc, saved = flops_comparison(m, n)
    assert fft - fc == saved
    assert fft == 5 * m * n * math.ceil(math.log2(m))


def test_resolution_tradeoff_matches_geometry():
    assert resolution_tradeoff(1) == 4
    assert resolution_tradeoff(4) == 16
    assert resolution_tradeoff(9) == 36
    for h in (1, 4, 9, 16, 25):
        p, q = ce_shape_for(h)
        assert 4 * p * q == resolution_tradeoff(h)


def test_ssim_identical_is_one(rng):
    a = rng.random((16, 20))
    assert ssim(a, a) == pytest.approx(1.0)


def test_ssim_checkerboard_negative():
    y, x = np.indices((16, 16))
    board = 0.5 + 0.4 * ((y + x) % 2 * 2 - 1)
    assert ssim(board, 1 - board) < 0


def test_ssim_against_brute(rng):
    a = rng.random((12, 14))
    b = np.clip(a + 0.1 * rng.normal(size=a.shape), 0, 1)
    assert ssim(a, b) == pytest.approx(brute_ssim(a, b), abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_ssim_bounded_and_symmetric(seed):
    rng = np.random.default_rng(seed)
    a, b = rng.random((10, 10)), rng.random((10, 10))
    m = ssim_map(a, b)
    assert m.shape == (3, 3)
    assert np.all(m <= 1 + 1e-12) and np.all(m >= -1 - 1e-12)
    assert ssim(a, b) == pytest.approx(ssim(b, a))


def test_ssim_errors(rng):
    with pytest.raises(InvalidArgument):
        ssim(rng.random((8, 8)), rng.random((8, 9)))
    with pytest.raises(InvalidArgument):
        ssim(rng.random((7, 9)), rng.random((7, 9)))
    with pytest.raises(InvalidArgument):
        video_ssim(rng.random((2, 8, 8)), rng.random((3, 8, 8)))


def test_comparison_report():
    rep = comparison_report(80, 8, 16, 100, 1.0)
    d = rep.as_dict()
    assert d["bandwidth_fouriercam"]["value"] == 5
    assert d["tracking_resolution"]["value"] == pytest.approx(3.90625e-3)
    assert rep["pixels_per_scene_pixel"] == 32
    assert rep["flops_saved"] == flops_comparison(16, 100)[2]
    assert "bandwidth_traditional = 80 Hz" in rep.to_text()


def test_comparison_report_short_video_stays_non_negative():
    rep = comparison_report(10, 1, 1, 5, 1.0)
    assert rep["flops_extra"] == 15
    assert all(v["value"] >= 0 for v in rep.as_dict().values())
