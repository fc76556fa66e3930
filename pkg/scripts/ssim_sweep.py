"""SSIM against the number of coefficients h.

Two regimes on the same textured scene (100 frames, 1 s):

  scene-resolution  every coding group sees one scene pixel (no spatial loss)
  fixed sensor      a 240x240 sensor shared by 4h pixels per group, so the
                    scene is recovered at 240/(2p) x 240/(2q) and upsampled

The first isolates temporal truncation; the second adds the spatial cost of
spending more sensor pixels per group. About a minute per seed.
"""
import argparse

import numpy as np

from fouriercam import synth
from fouriercam.analysis import video_ssim
from fouriercam.decode import decode_spectrum, reconstruct_video
from fouriercam.forward import encode_exposure
from fouriercam.geometry import build_layout, ce_shape_for
from fouriercam.kernels import make_compression_kernel


def scene_resolution(video, h):
    p, q = ce_shape_for(h)
    spec = decode_spectrum(encode_exposure(video, build_layout(*video.shape, p, q), make_compression_kernel(1.0, h)))
    return reconstruct_video(spec, frames=video.frames).data


def fixed_sensor(video, h):
    p, q = ce_shape_for(h)
    rows, cols = video.shape
    layout = build_layout(rows // (2 * p), cols // (2 * q), p, q)
    crop = video.data[:, : 2 * p * layout.cg_rows, : 2 * q * layout.cg_cols]
    cropped = synth.VideoCube(crop, video.frame_rate_hz)
    coded = encode_exposure(cropped, layout, make_compression_kernel(1.0, h), spatial_mode="block")
    rec = reconstruct_video(decode_spectrum(coded), frames=video.frames).data
    return np.repeat(np.repeat(rec, 2 * p, axis=1), 2 * q, axis=2), crop


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--hs", type=int, nargs="+", default=[1, 4, 9, 16, 25, 36])
    ap.add_argument("--seeds", type=int, default=1)
    args = ap.parse_args()

    small = [synth.textured_scene(64, 64, 100, 100.0, seed=s) for s in range(args.seeds)]
    large = [synth.textured_scene(240, 240, 100, 100.0, seed=s) for s in range(args.seeds)]
    print(f"{'h':>3} {'scene-res SSIM':>16} {'fixed-sensor SSIM':>18}")
    for h in args.hs:
        a = [video_ssim(v.data, scene_resolution(v, h)) for v in small]
        b = []
        for v in large:
            rec, crop = fixed_sensor(v, h)
            b.append(video_ssim(crop, rec))
        a, b = np.concatenate(a), np.concatenate(b)
        print(f"{h:>3} {a.mean():>9.4f} +/- {a.std():.3f} {b.mean():>11.4f} +/- {b.std():.3f}")


if __name__ == "__main__":
    main()
