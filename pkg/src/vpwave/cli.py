"""Command-line entry point: ``vpwave <command> [options]`` or ``python -m vpwave``.

Exit codes: 0 success, 1 runtime error, 2 usage error. Inputs are read and
all work is done before any output file is opened.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import compress as cmp
from . import denoise as dn
from .formats import (
    FormatError,
    read_image,
    read_signal_csv,
    read_vpc,
    write_image,
    write_signal_csv,
    write_vpc,
)
from .mra1d import PAD_MODES, Pyramid1D, decompose_any, decompose_multi, reconstruct_multi
from .mra2d import decompose2d_multi, reconstruct2d_multi
from .signals import SIGNAL_NAMES, add_noise_at_snr, gen_test_signal
from .vp_basis import m_from_theta

IMAGE_SUFFIXES = (".pgm", ".pnm", ".png")
BENCH_HEADER = "length,level,n,m,seconds"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Validated options of one invocation."""

    command: str
    args: argparse.Namespace


def _is_image(path) -> bool:
    return Path(path).suffix.lower() in IMAGE_SUFFIXES


def _theta(text):
    val = float(text)
    if not 0.0 < val < 1.0:
        raise argparse.ArgumentTypeError(f"theta must lie in (0, 1), got {text}")
    return val


def _pos_int(text):
    val = int(text)
    if val < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return val


def _float_list(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _write_lines(path, lines):
    Path(path).write_text("\n".join(lines) + "\n")


def _fmt(x):
    return "inf" if x == math.inf else repr(float(x))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vpwave",
        description="de la Vallée Poussin polynomial wavelets: transforms, denoising, compressibility.",
        epilog="m is derived per level as clamp(floor(theta * n), 1, n - 1).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a test signal as CSV")
    p.add_argument("--signal", required=True, choices=SIGNAL_NAMES)
    p.add_argument("--length", required=True, type=_pos_int)
    p.add_argument("--out", required=True)
    p.add_argument("--noise-snr", type=float, default=None, help="add Gaussian noise at this input SNR (dB)")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("decompose", help="multilevel decomposition of a signal CSV or PGM/PNG image")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True, help=".vpc container")
    p.add_argument("--theta", type=_theta, default=None, help="default 0.1 for signals, 0.65 for images")
    p.add_argument("--levels", type=_pos_int, default=4)
    p.add_argument("--pad-mode", choices=PAD_MODES, default="replicate")

    p = sub.add_parser("reconstruct", help="invert a .vpc container")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True, help=".csv for 1D, .pgm/.png for 2D")

    p = sub.add_parser("denoise", help="Bayes soft-threshold denoising of a signal CSV")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--theta", type=_theta, default=0.1)
    p.add_argument("--levels", type=_pos_int, default=8)
    p.add_argument("--pad-mode", choices=PAD_MODES, default="replicate")
    p.add_argument("--calibration", default=None, help="calibration CSV from `calibrate`")
    p.add_argument("--reference", default=None, help="clean signal CSV for SNR reporting")
    p.add_argument("--metrics", default=None, help="write signal,theta,levels,input_snr_db,output_snr_db")

    p = sub.add_parser("compress", help="keep a fraction of 2D coefficients and score the result")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", default=None, help="reconstructed .pgm/.png")
    p.add_argument("--theta", type=_theta, default=0.65)
    p.add_argument("--levels", type=_pos_int, default=4)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--keep", type=float, help="retained fraction in (0, 1]")
    group.add_argument("--cr", type=float, help="compression ratio >= 1 (keep = 1/cr)")
    p.add_argument("--pad-mode", choices=PAD_MODES, default="replicate")
    p.add_argument("--metrics", default=None)
    p.add_argument("--sorted-out", default=None, help="sorted detail magnitudes, one per line")
    p.add_argument("--sorted-count", type=_pos_int, default=30000)

    p = sub.add_parser("calibrate", help="Monte-Carlo per-band normalization factors")
    p.add_argument("--length", required=True, type=_pos_int)
    p.add_argument("--theta", type=_theta, default=0.1)
    p.add_argument("--levels", type=_pos_int, default=8)
    p.add_argument("--trials", type=_pos_int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=_pos_int, default=1)
    p.add_argument("--out", required=True)

    p = sub.add_parser("sweep-theta", help="output SNR or PSNR/SSIM as a function of theta")
    p.add_argument("--task", choices=("denoise", "compress"), required=True)
    p.add_argument("--thetas", type=_float_list, default=[k / 10 for k in range(1, 10)])
    p.add_argument("--levels", type=_pos_int, default=None, help="default 8 (denoise) or 4 (compress)")
    p.add_argument("--signals", default="bumps,heavy_sine,doppler,quadchirp")
    p.add_argument("--length", type=_pos_int, default=6561)
    p.add_argument("--snr", type=_float_list, default=[5.0, 10.0, 15.0])
    p.add_argument("--trials", type=_pos_int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--in", dest="input", action="append", default=[], help="image (repeatable)")
    p.add_argument("--keep", type=_float_list, default=None, help="fractions (default 1/2^k, k=1..7)")
    p.add_argument("--pad-mode", choices=PAD_MODES, default="replicate")
    p.add_argument("--out", required=True)

    p = sub.add_parser("bench", help="per-level decomposition timings")
    p.add_argument("--sizes", type=_int_list, default=[3**k for k in range(6, 13)])
    p.add_argument("--theta", type=_theta, default=0.5)
    p.add_argument("--levels", type=_pos_int, default=1)
    p.add_argument("--repeats", type=_pos_int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    return parser


def validate(args) -> RunConfig:
    cmd = args.command
    if cmd == "compress":
        if args.keep is not None and not 0.0 < args.keep <= 1.0:
            raise UsageError("--keep must lie in (0, 1]")
        if args.cr is not None and not args.cr >= 1.0:
            raise UsageError("--cr must be >= 1")
        if not _is_image(args.input):
            raise UsageError("compress expects a .pgm or .png input")
        if args.out is not None and not _is_image(args.out):
            raise UsageError("--out must end in .pgm or .png")
    if cmd == "reconstruct" and Path(args.out).suffix.lower() not in IMAGE_SUFFIXES + (".csv", ".txt"):
        raise UsageError("--out must be .csv/.txt (1D) or .pgm/.png (2D)")
    if cmd == "sweep-theta":
        if any(not 0.0 < t < 1.0 for t in args.thetas):
            raise UsageError("all --thetas must lie in (0, 1)")
        if args.task == "compress":
            if not args.input:
                raise UsageError("sweep-theta --task compress needs at least one --in image")
            if args.keep is not None and any(not 0.0 < k <= 1.0 for k in args.keep):
                raise UsageError("--keep fractions must lie in (0, 1]")
        else:
            names = [s.strip() for s in args.signals.split(",") if s.strip()]
            bad = [s for s in names if s not in SIGNAL_NAMES]
            if bad:
                raise UsageError(f"unknown signals {bad}")
    if cmd == "bench" and any(s < 4 for s in args.sizes):
        raise UsageError("bench sizes must be >= 4")
    return RunConfig(cmd, args)


# -- commands ------------------------------------------------------------------


def cmd_gen(a):
    sig = gen_test_signal(a.signal, a.length)
    if a.noise_snr is not None:
        sig = add_noise_at_snr(sig, a.noise_snr, dn.trial_rngs(a.seed, 1)[0])
    write_signal_csv(a.out, sig)


def cmd_decompose(a):
    if _is_image(a.input):
        img = read_image(a.input).astype(float)
        p = decompose2d_multi(img, a.theta if a.theta is not None else 0.65, a.levels, a.pad_mode)
    else:
        sig = read_signal_csv(a.input)
        p = decompose_multi(sig, a.theta if a.theta is not None else 0.1, a.levels, a.pad_mode)
    write_vpc(a.out, p)


def cmd_reconstruct(a):
    p = read_vpc(a.input)
    if isinstance(p, Pyramid1D):
        if _is_image(a.out):
            raise UsageError("1D container cannot be written as an image")
        write_signal_csv(a.out, reconstruct_multi(p))
    else:
        if not _is_image(a.out):
            raise UsageError("2D container must be written as .pgm or .png")
        write_image(a.out, np.clip(reconstruct2d_multi(p), 0, 255))


def cmd_denoise(a):
    y = read_signal_csv(a.input)
    ref = read_signal_csv(a.reference) if a.reference else None
    if ref is not None and ref.shape != y.shape:
        raise ValueError(f"reference has {ref.size} samples, input has {y.size}")
    cal = dn.read_calibration(a.calibration) if a.calibration else None
    cfg = dn.DenoiseConfig(theta=a.theta, levels=a.levels, pad_mode=a.pad_mode, calibration=cal)
    out = dn.denoise_signal(y, cfg)
    write_signal_csv(a.out, out)
    if a.metrics:
        row = [Path(a.input).name, repr(a.theta), str(a.levels)]
        if ref is not None:
            row += [_fmt(dn.snr(ref, y)), _fmt(dn.snr(ref, out))]
        else:
            row += ["nan", "nan"]
        _write_lines(a.metrics, ["signal,theta,levels,input_snr_db,output_snr_db", ",".join(row)])


def cmd_compress(a):
    img = read_image(a.input)
    fraction = a.keep if a.keep is not None else 1.0 / a.cr
    rec, report = cmp.compress_image(img, a.theta, a.levels, fraction, a.pad_mode, name=Path(a.input).name)
    mags = None
    if a.sorted_out:
        p = decompose2d_multi(img.astype(float), a.theta, a.levels, a.pad_mode)
        mags = cmp.sorted_detail_magnitudes(p, a.sorted_count)
    if a.out:
        write_image(a.out, rec)
    if a.metrics:
        _write_lines(a.metrics, [cmp.METRICS_HEADER, report.csv_row()])
    if mags is not None:
        _write_lines(a.sorted_out, [repr(float(v)) for v in mags])
    print(f"cr={report.cr:g} psnr={report.psnr_db:.3f} dB ssim={report.ssim:.4f}")


def cmd_calibrate(a):
    table = dn.calibrate_factors(a.length, a.theta, a.levels, a.trials, a.seed, a.workers)
    dn.write_calibration(a.out, table)


def sweep_denoise(signals, length, levels, snrs, thetas, trials, seed, pad_mode="replicate"):
    """Rows (signal, input_snr, theta, mean_out_snr, std_out_snr); trial noise is shared across thetas."""
    rows = []
    for si, name in enumerate(signals):
        clean = gen_test_signal(name, length)
        for ni, snr_in in enumerate(snrs):
            rngs = dn.trial_rngs(seed + 1000 * si + ni, trials)
            noisy = [add_noise_at_snr(clean, snr_in, r) for r in rngs]
            for theta in thetas:
                cfg = dn.DenoiseConfig(theta=theta, levels=levels, pad_mode=pad_mode)
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    outs = [dn.snr(clean, dn.denoise_signal(y, cfg)) for y in noisy]
                rows.append((name, snr_in, theta, float(np.mean(outs)), float(np.std(outs))))
    return rows


def cmd_sweep(a):
    if a.task == "denoise":
        signals = [s.strip() for s in a.signals.split(",") if s.strip()]
        rows = sweep_denoise(signals, a.length, a.levels or 8, a.snr, a.thetas, a.trials, a.seed, a.pad_mode)
        lines = ["signal,input_snr_db,theta,mean_output_snr_db,std_output_snr_db"]
        lines += [f"{s},{i!r},{t!r},{m!r},{d!r}" for s, i, t, m, d in rows]
    else:
        keeps = a.keep or [2.0**-k for k in range(1, 8)]
        images = [(Path(p).name, read_image(p)) for p in a.input]
        lines = [cmp.METRICS_HEADER]
        for name, img in images:
            for keep in keeps:
                for theta in a.thetas:
                    with warnings.catch_warnings():
                        warnings.simplefilter("ignore")
                        _, rep = cmp.compress_image(img, theta, a.levels or 4, keep, a.pad_mode, name=name)
                    lines.append(rep.csv_row())
    _write_lines(a.out, lines)


def bench_rows(sizes, theta, levels, repeats, seed):
    """Median wall time of each decomposition level for each input size."""
    rows = []
    rng = dn.trial_rngs(seed, 1)[0]
    for size in sizes:
        cur = rng.standard_normal(size)
        for level in range(1, levels + 1):
            if cur.size < 4:
                break
            times = []
            for _ in range(repeats):
                t0 = time.perf_counter()
                nxt, _, _ = decompose_any(cur, theta)
                times.append(time.perf_counter() - t0)
            n = nxt.size
            rows.append((size, level, n, m_from_theta(n, theta), float(np.median(times))))
            cur = nxt
    return rows


def cmd_bench(a):
    rows = bench_rows(a.sizes, a.theta, a.levels, a.repeats, a.seed)
    _write_lines(a.out, [BENCH_HEADER] + [f"{s},{l},{n},{m},{t!r}" for s, l, n, m, t in rows])


COMMANDS = {
    "gen": cmd_gen,
    "decompose": cmd_decompose,
    "reconstruct": cmd_reconstruct,
    "denoise": cmd_denoise,
    "compress": cmd_compress,
    "calibrate": cmd_calibrate,
    "sweep-theta": cmd_sweep,
    "bench": cmd_bench,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = validate(args)
        COMMANDS[cfg.command](cfg.args)
    except UsageError as exc:
        print(f"vpwave {args.command}: usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError, OSError, FormatError) as exc:
        print(f"vpwave {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
