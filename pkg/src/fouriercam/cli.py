"""Command-line pipeline: synth -> encode -> decode -> reconstruct / track / analyze."""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import analysis, images, io, synth
from .decode import decode_spectrum, reconstruct_video
from .errors import FourierCamError, InvalidArgument
from .forward import NoiseConfig, encode_exposure
from .geometry import CodingLayout, ce_shape_for
from .kernels import make_extraction_kernel, make_tracking_kernel, parse_kernel, validate_kernel
from .tracking import DEFAULT_THRESHOLD, extract_trajectory

log = logging.getLogger("fouriercam")


def _int_list(text):
    return [int(v) for v in text.split(",") if v]


def _float_list(text):
    return [float(v) for v in text.split(",") if v]


def _ce(text):
    try:
        p, q = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <p>x<q>, got {text!r}") from None
    return p, q


def _pwm(text):
    if text.lower() in ("off", "none"):
        return None
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("PWM needs at least 2 levels")
    return v


def _noise(text):
    vals = {}
    for tok in text.split(","):
        key, sep, val = tok.partition("=")
        if not sep or key not in ("photon", "read", "adc"):
            raise argparse.ArgumentTypeError(f"bad noise field {tok!r}; use photon=<n>,read=<sigma>,adc=<bits>")
        vals[key] = val
    return vals


def _size(text):
    try:
        r, c = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <rows>x<cols>, got {text!r}") from None
    return r, c


# subcommands

def cmd_synth(args):
    rows, cols = args.size
    fps = args.fps
    frames = args.frames if args.frames is not None else int(round(args.duration * fps))
    if args.scene == "disk":
        video = synth.rotating_disk(args.rpm, args.rings, rows, cols, frames, fps)
        if args.overlay:
            mask = np.zeros((rows, cols), dtype=bool)
            mask[: rows // 5, : cols // 5] = True
            video = synth.composite(video, np.full((rows, cols), 0.8), mask)
    elif args.scene == "spot":
        duration = frames / fps
        if args.path == "heart":
            path = synth.heart_path(rows, cols, duration)
        elif args.path == "circle":
            path = synth.circle_path(((rows - 1) / 2, (cols - 1) / 2), 0.35 * min(rows, cols), duration)
        else:
            path = synth.line_path((rows / 2, args.radius), (rows / 2, cols - 1 - args.radius), duration)
        video = synth.moving_spot(path, args.radius, rows, cols, frames, fps)
    elif args.scene == "flash":
        words = [w for w in args.text.split(",") if w]
        scale = max(1, min(rows // 9, cols // (6 * sum(map(len, words)) + 2 * len(words))))
        video = synth.character_flash(synth.text_glyphs(words, rows, cols, scale), args.dwell, fps)
    elif args.scene == "block":
        video = synth.translating_block(args.texture, args.speed, rows, cols, frames, fps)
    else:
        video = synth.textured_scene(rows, cols, frames, fps, seed=args.seed)
    io.write_video(args.out, video)
    log.info("wrote %s: %d frames of %dx%d at %g fps", args.out, video.frames, rows, cols, fps)


def _kernel_from_args(args, exposure):
    if args.frequencies:
        return make_extraction_kernel(exposure, args.frequencies, args.fundamental)
    return parse_kernel(args.kernel, exposure)


def _layout_for(video, kernel, ce, mode):
    p, q = ce if ce is not None else ce_shape_for(kernel.h)
    if p * q != kernel.h:
        raise InvalidArgument(f"--ce {p}x{q} holds {p * q} frequencies but the kernel has {kernel.h}")
    rows, cols = video.shape
    if mode == "ideal":
        return CodingLayout(rows, cols, p, q)
    if rows % (2 * p) or cols % (2 * q):
        raise InvalidArgument(f"block mode needs a video divisible by {2 * p}x{2 * q}, got {rows}x{cols}")
    return CodingLayout(rows // (2 * p), cols // (2 * q), p, q)


def _encode(args, video):
    exposure = args.exposure if args.exposure is not None else video.duration_s
    kernel = _kernel_from_args(args, exposure)
    report = validate_kernel(kernel, video.frame_rate_hz)
    for w in report.warnings:
        log.warning("%s", w)
    for v in report.violations:
        log.warning("kernel check: %s", v)
    layout = _layout_for(video, kernel, args.ce, args.spatial_mode)
    noise = None
    if args.noise:
        noise = NoiseConfig(
            photon_budget=float(args.noise["photon"]) if "photon" in args.noise else None,
            read_noise_sigma=float(args.noise.get("read", 0.0)),
            adc_bits=int(args.noise["adc"]) if "adc" in args.noise else None,
            rng_seed=args.seed,
        )
    return encode_exposure(video, layout, kernel, args.spatial_mode, args.pwm_levels, noise)


def cmd_encode(args):
    coded = _encode(args, io.read_video(args.input))
    io.write_coded(args.out, coded)
    log.info("wrote %s: sensor %dx%d", args.out, *coded.pixels.shape)


def _export_spectrum_images(spec, outdir):
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    amp = spec.amplitude()
    ph = spec.phase()
    for k, f in enumerate(spec.kernel.frequencies_hz):
        images.write_pgm(outdir / f"amplitude_{k:02d}_{f:g}Hz.pgm", images.to_gray(amp[..., k]))
        images.write_pgm(outdir / f"phase_{k:02d}_{f:g}Hz.pgm", images.phase_to_gray(ph[..., k]))


def cmd_decode(args):
    spec = decode_spectrum(io.read_coded(args.input))
    io.write_spectrum(args.out, spec)
    if args.images:
        _export_spectrum_images(spec, args.images)


def cmd_reconstruct(args):
    video = reconstruct_video(io.read_spectrum(args.input), frames=args.frames, tile=args.tile)
    io.write_video(args.out, video)
    log.info("wrote %s: %d frames at %g Hz equivalent", args.out, video.frames, video.frame_rate_hz)


def write_track_csv(path, traj):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["row", "col", "t_s", "amplitude"])
        for r, c, t, a in traj.track:
            w.writerow([r, c, repr(t), repr(a)])


def cmd_track(args):
    if io.peek_magic(args.input) == b"FCV1":
        video = io.read_video(args.input)
        args.exposure = args.exposure if args.exposure is not None else video.duration_s
        kernel = make_tracking_kernel(args.exposure)
        layout = _layout_for(video, kernel, None, args.spatial_mode)
        noise = NoiseConfig(rng_seed=args.seed)
        spec = decode_spectrum(encode_exposure(video, layout, kernel, args.spatial_mode, args.pwm_levels, noise))
    else:
        spec = io.read_spectrum(args.input)
    traj = extract_trajectory(spec, args.threshold)
    write_track_csv(args.out, traj)
    if args.time_map:
        images.write_ppm(args.time_map, images.time_map_rgb(traj.time_map, traj.exposure_s))
    log.info("%d pixels detected", len(traj.track))


def _emit(report: analysis.ComparisonReport | dict, as_json: bool, out):
    if isinstance(report, analysis.ComparisonReport):
        text = json.dumps(report.as_dict(), indent=2, sort_keys=False) if as_json else report.to_text()
    else:
        text = json.dumps(report, indent=2) if as_json else "\n".join(f"{k} = {v}" for k, v in report.items())
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


def cmd_analyze(args):
    if args.input:
        spec = io.read_spectrum(args.input)
        k = spec.kernel
        m, n = spec.layout.scene_shape
        rep = analysis.comparison_report(
            f_max_hz=k.max_frequency_hz,
            h=k.h,
            frames_M=args.frames or max(1, int(round(2 * k.max_frequency_hz * k.exposure_s))),
            pixels_N=m * n,
            exposure_s=k.exposure_s,
            gain_m=args.gain,
            grayscale_levels=args.levels,
        )
    else:
        rep = analysis.comparison_report(
            f_max_hz=args.f_max, h=args.h, frames_M=args.frames or 1, pixels_N=args.pixels,
            exposure_s=args.exposure, gain_m=args.gain, grayscale_levels=args.levels,
        )
    _emit(rep, args.json, args.out_report)


def cmd_roundtrip(args):
    video = io.read_video(args.input)
    coded = _encode(args, video)
    spec = decode_spectrum(coded)
    kernel = spec.kernel
    ref = None
    if kernel.kind in ("compression", "background-subtract") and kernel.fundamental_hz is None:
        rec = reconstruct_video(spec, frames=video.frames)
        ref = video.data
    else:
        per = video.frame_rate_hz / kernel.grid_base_hz()
        if abs(per - round(per)) < 1e-9 and round(per) >= 2 * kernel.bins().max():
            rec = reconstruct_video(spec, frames=int(round(per)))
            ref = video.data[: rec.frames]
        else:
            rec = reconstruct_video(spec)
    io.write_video(args.out, rec)
    report = {"frames": rec.frames, "equivalent_frame_rate_hz": rec.frame_rate_hz}
    if ref is not None and coded.spatial_mode == "ideal":
        if 0.0 not in kernel.frequencies_hz:
            ref = ref - ref.mean(axis=0, keepdims=True)
        err = rec.data - ref
        scores = analysis.video_ssim(ref, rec.data) if min(video.shape) >= analysis.SSIM_WINDOW else None
        report["max_abs_error"] = float(np.abs(err).max())
        report["rmse"] = float(np.sqrt(np.mean(err**2)))
        if scores is not None:
            report["ssim_mean"] = float(scores.mean())
            report["ssim_std"] = float(scores.std())
            report["ssim_min"] = float(scores.min())
    _emit(report, args.json, args.report)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fouriercam", description="Temporal-spectrum camera simulator and codec.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")

    s = sub.add_parser("synth", help="render a synthetic test video")
    s.add_argument("scene", choices=["disk", "spot", "flash", "block", "scene"])
    s.add_argument("--out", required=True)
    s.add_argument("--size", type=_size, default=(64, 64), help="<rows>x<cols>")
    s.add_argument("--fps", type=float, default=1000.0)
    s.add_argument("--duration", type=float, default=1.0)
    s.add_argument("--frames", type=int)
    s.add_argument("--rpm", type=float, default=5460.0)
    s.add_argument("--rings", type=_int_list, default=[3, 5, 7, 11])
    s.add_argument("--overlay", action="store_true", help="add a static card in the top-left corner")
    s.add_argument("--path", choices=["heart", "circle", "line"], default="heart")
    s.add_argument("--radius", type=float, default=2.0)
    s.add_argument("--text", default="T,H,U,EE")
    s.add_argument("--dwell", type=float, default=0.25)
    s.add_argument("--texture", type=float, default=0.1, help="cycles per pixel")
    s.add_argument("--speed", type=float, default=20.0, help="pixels per second")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_synth)

    def coding_flags(sp):
        sp.add_argument("--exposure", type=float, help="seconds (default: video duration)")
        sp.add_argument("--kernel", default="compression:h=9")
        sp.add_argument("--frequencies", type=_float_list, help="explicit extraction frequencies in Hz")
        sp.add_argument("--fundamental", type=float, help="reconstruction grid for --frequencies")
        sp.add_argument("--ce", type=_ce, help="<p>x<q> coding elements per group")
        sp.add_argument("--spatial-mode", choices=["ideal", "block"], default="ideal")
        sp.add_argument("--pwm-levels", type=_pwm, default=None, help="<n> or off")
        sp.add_argument("--noise", type=_noise, help="photon=<n>,read=<sigma>,adc=<bits>")
        sp.add_argument("--seed", type=int, default=0)

    e = sub.add_parser("encode", help="simulate a coded exposure of a video")
    e.add_argument("input")
    e.add_argument("--out", required=True)
    coding_flags(e)
    e.set_defaults(func=cmd_encode)

    d = sub.add_parser("decode", help="recover the temporal spectrum of a coded exposure")
    d.add_argument("input")
    d.add_argument("--out", required=True)
    d.add_argument("--images", help="directory for amplitude/phase PGM images")
    d.set_defaults(func=cmd_decode)

    r = sub.add_parser("reconstruct", help="inverse-DFT a spectrum into video")
    r.add_argument("input")
    r.add_argument("--out", required=True)
    r.add_argument("--frames", type=int)
    r.add_argument("--tile", action="store_true", help="repeat a periodic reconstruction over the exposure")
    r.set_defaults(func=cmd_reconstruct)

    t = sub.add_parser("track", help="detect and time moving objects")
    t.add_argument("input", help="FCS1 tracking spectrum or FCV1 video")
    t.add_argument("--out", required=True, help="trajectory CSV")
    t.add_argument("--time-map", help="PPM image coloured by event time")
    t.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    t.add_argument("--exposure", type=float)
    t.add_argument("--spatial-mode", choices=["ideal", "block"], default="ideal")
    t.add_argument("--pwm-levels", type=_pwm, default=None)
    t.add_argument("--seed", type=int, default=0)
    t.set_defaults(func=cmd_track)

    a = sub.add_parser("analyze", help="closed-form comparison report")
    a.add_argument("input", nargs="?", help="optional FCS1 spectrum to take parameters from")
    a.add_argument("--f-max", type=float, default=80.0)
    a.add_argument("--h", type=int, default=8)
    a.add_argument("--frames", type=int)
    a.add_argument("--pixels", type=int, default=1)
    a.add_argument("--exposure", type=float, default=1.0)
    a.add_argument("--gain", type=int)
    a.add_argument("--levels", type=int, default=256)
    a.add_argument("--json", action="store_true")
    a.add_argument("--out", dest="out_report")
    a.set_defaults(func=cmd_analyze)

    rt = sub.add_parser("roundtrip", help="encode + decode + reconstruct + metrics")
    rt.add_argument("input")
    rt.add_argument("--out", required=True, help="reconstructed video")
    rt.add_argument("--report", help="write the metrics report here instead of stdout")
    rt.add_argument("--json", action="store_true")
    coding_flags(rt)
    rt.set_defaults(func=cmd_roundtrip)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        args.func(args)
    except (FourierCamError, OSError) as exc:
        log.error("%s", exc)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
