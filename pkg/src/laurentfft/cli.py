"""Command-line front end.

    laurentfft transform --n 16 --select dht --arith fixed --input ramp.csv
    laurentfft plan --n 16
    laurentfft testbench stimulus.txt --output words.hex

Sample files hold one decimal value per line, or comma-separated values;
blank lines are ignored.  All failures exit nonzero with a single
"error: ..." line on stderr.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .engine import (
    FixedConfig,
    TransformSelect,
    count_ops,
    execute,
    quantization_report,
)
from .fixed import QFormat, ROUND_HALF_AWAY, ROUNDING_MODES, quantize
from .memory import load_stimulus, pack_output, run_device, write_output_words
from .plan import build_plan, format_plan
from .reference import dft_direct, dht_direct


class CliError(Exception):
    pass


def _read_samples(path) -> list[float]:
    try:
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read input file: {exc}") from None
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        for token in line.replace(",", " ").split():
            try:
                values.append(float(token))
            except ValueError:
                raise CliError(f"{path}:{lineno}: not a number: {token!r}") from None
    if not values:
        raise CliError(f"{path}: no samples found")
    return values


def _write_text(stream, lines):
    for line in lines:
        stream.write(line + "\n")


def _format_values(result, fmt: str, select: TransformSelect):
    if fmt == "text":
        if select is TransformSelect.DFT:
            return [f"{v.real:g}{v.imag:+g}j" for v in result.values]
        return [f"{v:g}" for v in result.values]
    if fmt == "csv":
        if select is TransformSelect.DFT:
            return ["k,re,im"] + [f"{k},{v.real:.10g},{v.imag:.10g}"
                                  for k, v in enumerate(result.values)]
        return ["k,h"] + [f"{k},{v:.10g}" for k, v in enumerate(result.values)]
    if fmt == "hex":
        if result.real_raw is None:
            raise CliError("hex output requires fixed arithmetic")
        return [format(w, "08X") for w in pack_output(result, select)]
    raise CliError(f"unknown output format {fmt!r}")


def _cmd_transform(args) -> int:
    samples = _read_samples(args.input)
    n = args.n if args.n is not None else len(samples)
    if len(samples) != n:
        raise CliError(f"expected {n} samples, file holds {len(samples)}")
    plan = build_plan(n)
    select = TransformSelect(args.select)

    if args.arith == "fixed":
        cfg = FixedConfig(QFormat(16, args.frac_bits), args.round)
        for i, x in enumerate(samples):
            probe = quantize(x, cfg.fmt, cfg.rounding)
            if abs(probe.value - x) > 0.5 / cfg.fmt.scale + 1e-12:
                raise CliError(f"sample {i} = {x!r} is outside the {cfg.fmt} range")
        result = execute(plan, samples, select, cfg)
    else:
        result = execute(plan, samples, select, "exact")

    lines = _format_values(result, args.format, select)
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            _write_text(fh, lines)
    else:
        _write_text(sys.stdout, lines)

    if args.compare:
        oracle = dft_direct(samples) if select is TransformSelect.DFT else dht_direct(samples)
        deviation = float(np.max(np.abs(result.values - oracle)))
        print(f"max deviation vs direct transform: {deviation:.3e}")
    if result.overflow:
        print("warning: fixed-point overflow occurred (results saturated)", file=sys.stderr)
    return 0


def _cmd_plan(args) -> int:
    plan = build_plan(args.n)
    ops = count_ops(plan)
    show_counts = args.count_ops or not args.dump_plan
    show_dump = args.dump_plan or not args.count_ops
    if show_counts:
        print(f"block length: {plan.order}")
        print(f"multiplications: {ops.multiplications}")
        print(f"additions: {ops.additions}")
        print(f"accumulation adds: {ops.accumulation_adds}")
        print(f"dht output adds: {ops.dht_extra_adds}")
    if show_dump:
        sys.stdout.write(format_plan(plan))
    if not plan.optimal:
        print("error: plan contains a non-optimal factorization", file=sys.stderr)
        return 1
    return 0


def _cmd_testbench(args) -> int:
    image = load_stimulus(args.stimulus)
    plan = build_plan(len(image.input_words))
    cfg = FixedConfig(QFormat(16, args.frac_bits), args.round)
    done = run_device(image, plan, cfg)
    out_path = args.output or (str(args.stimulus) + ".out.hex")
    write_output_words(done.output_words, out_path)
    print(f"wrote {len(done.output_words)} output words to {out_path}")
    if done.overflow:
        print("warning: fixed-point overflow occurred (results saturated)", file=sys.stderr)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="laurentfft",
        description="DFT/DHT transform engine with a bit-exact fixed-point device model",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_tr = sub.add_parser("transform", help="transform a sample file")
    p_tr.add_argument("--n", type=int, default=None, help="block length (default: sample count)")
    p_tr.add_argument("--select", choices=("dft", "dht"), default="dft")
    p_tr.add_argument("--arith", choices=("exact", "fixed"), default="fixed")
    p_tr.add_argument("--frac-bits", type=int, default=7)
    p_tr.add_argument("--round", choices=ROUNDING_MODES, default=ROUND_HALF_AWAY)
    p_tr.add_argument("--input", required=True)
    p_tr.add_argument("--output", default=None)
    p_tr.add_argument("--format", choices=("text", "csv", "hex"), default="text")
    p_tr.add_argument("--compare", action="store_true",
                      help="report max deviation against the direct-summation oracle")
    p_tr.set_defaults(func=_cmd_transform)

    p_plan = sub.add_parser("plan", help="dump the decomposition and its operation counts")
    p_plan.add_argument("--n", type=int, required=True)
    p_plan.add_argument("--dump-plan", action="store_true", help="print only the plan dump")
    p_plan.add_argument("--count-ops", action="store_true", help="print only the counts")
    p_plan.set_defaults(func=_cmd_plan)

    p_tb = sub.add_parser("testbench", help="run a stimulus file through the device model")
    p_tb.add_argument("stimulus")
    p_tb.add_argument("--output", default=None)
    p_tb.add_argument("--frac-bits", type=int, default=7)
    p_tb.add_argument("--round", choices=ROUNDING_MODES, default=ROUND_HALF_AWAY)
    p_tb.set_defaults(func=_cmd_testbench)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
