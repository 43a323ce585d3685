"""Command-line entry point: ``qimf filter|demo|sweep|encode-check``."""

from __future__ import annotations

import argparse
import csv
import math
import sys

import numpy as np

from .amplification import NothingToAmplifyError
from .encoding import (
    DimensionError,
    RectangleSpec,
    encode_image,
    prepare_rectangle,
    prepare_uniform_range,
    rasterize_rectangle,
    uniform_range_direct,
)
from .pgm import PGMFormatError, write_pgm
from .pipeline import (
    BUILTINS,
    FAMILIES,
    KINDS,
    PRESETS,
    ConfigError,
    FilterConfig,
    LambdaBelowFloor,
    preset,
    run_filter,
    sweep,
)
from .state import UnnormalizableError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_LAMBDA = 3
EXIT_IO = 4


def _l_value(text: str):
    if text == "auto":
        return "auto"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("l must be an integer or 'auto'") from None


def _float_or_inf(text: str) -> float:
    return math.inf if text.lower() in ("inf", "infinity") else float(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qimf", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def outputs(p):
        p.add_argument("--out", help="filtered image (PGM, P5)")
        p.add_argument("--report", help="JSON report path")
        p.add_argument("--timing", action="store_true", help="include wall time in the report")

    f = sub.add_parser("filter", help="filter one image")
    src = f.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="PGM (P2/P5) input")
    src.add_argument("--builtin", choices=BUILTINS)
    f.add_argument("--size", type=int, default=256, help="side of builtin images")
    f.add_argument("--kind", choices=KINDS, default="band")
    f.add_argument("--d1", type=float)
    f.add_argument("--d2", type=_float_or_inf)
    f.add_argument("--delta", type=float, default=0.01)
    f.add_argument("--l", type=_l_value, default="auto")
    f.add_argument("--lambda-floor", type=float)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--noise-density", type=float, default=0.05)
    outputs(f)

    d = sub.add_parser("demo", help="run a preset")
    d.add_argument("name", choices=sorted(PRESETS))
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--l", type=_l_value, help="override the preset length")
    outputs(d)

    s = sub.add_parser("sweep", help="scaling study over image sizes (CSV)")
    s.add_argument("--sizes", default="64,128,256,512", help="comma-separated sides")
    s.add_argument("--family", choices=FAMILIES, default="proportional")
    s.add_argument("--delta", type=float, default=0.01)
    s.add_argument("--out", help="CSV path (stdout when omitted)")

    e = sub.add_parser("encode-check", help="efficient encoders vs dense encoding")
    e.add_argument("--trials", type=int, default=100)
    e.add_argument("--seed", type=int, default=0)
    return parser


def _emit(image, report, args) -> None:
    if args.out:
        write_pgm(image, args.out)
    text = report.to_json()
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_filter(args) -> int:
    config = FilterConfig(
        kind=args.kind,
        d1=args.d1,
        d2=args.d2,
        delta=args.delta,
        l=args.l,
        lambda_floor=args.lambda_floor,
        input_path=args.input,
        builtin=args.builtin,
        size=args.size,
        seed=args.seed,
        noise_density=args.noise_density,
        out=args.out,
        report=args.report,
    )
    image, report = run_filter(config, timing=args.timing)
    _emit(image, report, args)
    return EXIT_OK


def _cmd_demo(args) -> int:
    overrides = {"seed": args.seed}
    if args.l is not None:
        overrides["l"] = args.l
    image, report = run_filter(preset(args.name, **overrides), timing=args.timing)
    _emit(image, report, args)
    return EXIT_OK


SWEEP_COLUMNS = (
    "side", "N", "n", "w", "x1", "d1", "d2", "lambda", "L", "l",
    "encoder_cost", "iteration_cost", "quantum_cost",
    "classical_fft_ops", "classical_mask_ops",
)


def _cmd_sweep(args) -> int:
    try:
        sides = [int(x) for x in args.sizes.split(",") if x.strip()]
    except ValueError:
        raise ConfigError("--sizes must be comma-separated integers") from None
    rows = sweep(sides, args.family, args.delta)
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(fh, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: (f"{v:.12g}" if isinstance(v, float) else v) for k, v in row.items()})
    finally:
        if args.out:
            fh.close()
    return EXIT_OK


def encode_check(trials: int = 100, seed: int = 0, tol: float = 1e-10) -> list[tuple[str, float]]:
    """Worst deviations of the efficient encoders from their dense counterparts."""
    rng = np.random.default_rng(seed)
    results = []
    worst = 0.0
    for C in range(64):
        n = max(1, C.bit_length())
        worst = max(worst, np.abs(prepare_uniform_range(C, n) - uniform_range_direct(C, n)).max())
    results.append(("uniform range C in [0, 63]", float(worst)))
    for side in (16, 64):
        worst = 0.0
        for _ in range(trials):
            w, h = rng.integers(0, side, size=2)
            x1 = rng.integers(0, side - w)
            y1 = rng.integers(0, side - h)
            spec = RectangleSpec(int(w), int(h), int(x1), int(y1), side, side)
            dense, _ = encode_image(rasterize_rectangle(spec))
            worst = max(worst, np.abs(prepare_rectangle(spec).amplitudes - dense.amplitudes).max())
        results.append((f"rectangle encoder, {trials} random specs at {side}x{side}", float(worst)))
    spec = RectangleSpec(50, 50, 103, 103, 256, 256)
    dense, _ = encode_image(rasterize_rectangle(spec))
    dev = np.abs(prepare_rectangle(spec).amplitudes - dense.amplitudes).max()
    results.append(("rectangle encoder, w=h=50 at (103, 103) in 256x256", float(dev)))
    return results


def _cmd_encode_check(args) -> int:
    ok = True
    for label, dev in encode_check(args.trials, args.seed):
        passed = dev < 1e-10
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'}  {label}: max deviation {dev:.3e}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


COMMANDS = {
    "filter": _cmd_filter,
    "demo": _cmd_demo,
    "sweep": _cmd_sweep,
    "encode-check": _cmd_encode_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except LambdaBelowFloor as exc:
        print(f"qimf: {exc}", file=sys.stderr)
        return EXIT_LAMBDA
    except (OSError, PGMFormatError, DimensionError) as exc:
        print(f"qimf: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, NothingToAmplifyError, UnnormalizableError, ValueError) as exc:
        print(f"qimf: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
