"""Plan execution in exact or bit-exact fixed-point arithmetic, plus
structural operation counting.

A plan term is applied as combiner @ (scalar * (reduced_rows @ v)): the
reduced rows cost additions, the scalar costs rank-many multiplications,
the combiner and the cross-term accumulation cost additions again.  A
single select bit chooses Fourier output (Re, Im) or Hartley output
(Re - Im).  In fixed mode every operation is saturating Q-format integer
arithmetic: 16-bit inputs and constants, 32-bit accumulators.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .fixed import (
    Fixed,
    OverflowFlag,
    QFormat,
    ROUND_HALF_AWAY,
    ROUNDING_MODES,
    fx_add,
    fx_mul,
    fx_sub,
    quantize,
    widen,
)
from .plan import FactoredTernary, LaurentPlan


class TransformSelect(enum.Enum):
    DFT = "dft"
    DHT = "dht"


@dataclass(frozen=True)
class FixedConfig:
    """Device arithmetic: word format for samples and constants, rounding
    mode, and accumulator width (same fraction bits, wider word)."""

    fmt: QFormat = QFormat(16, 7)
    rounding: str = ROUND_HALF_AWAY
    acc_total_bits: int = 32

    def __post_init__(self):
        if self.rounding not in ROUNDING_MODES:
            raise ValueError(f"unknown rounding mode {self.rounding!r}")
        if self.acc_total_bits < self.fmt.total_bits:
            raise ValueError("accumulator must be at least as wide as the input word")

    @property
    def acc_fmt(self) -> QFormat:
        return self.fmt.widened(self.acc_total_bits)


@dataclass(frozen=True)
class OpCount:
    """Structural arithmetic cost of a plan.  Pure function of the plan.

    multiplications: scalar (twiddle) multiplications; products with
        {-1, 0, +1} are free sign flips or skips.
    additions: two-operand adds/subtracts inside the factored matrix
        applications (reduced rows and combiner rows, unit term included),
        counting an accumulation of t nonzero operands as t - 1 adds.
    accumulation_adds: adds that merge the unit/cosine/sine/middle output
        streams into the two output accumulators, reported separately
        because the split between the arithmetic core and the output
        collection stage is a convention.
    dht_extra_adds: the N output subtractions Re - Im that only the Hartley
        selection pays, also reported separately.
    """

    multiplications: int
    additions: int
    accumulation_adds: int
    dht_extra_adds: int


@dataclass(frozen=True)
class TransformResult:
    """Transform output.  values holds complex bins for DFT, real bins for
    DHT.  In fixed mode the Q-format integer raws are kept alongside
    (real_raw/imag_raw for DFT, real_raw for DHT) and overflow reports the
    sticky saturation flag."""

    select: TransformSelect
    values: np.ndarray
    real_raw: tuple[int, ...] | None = None
    imag_raw: tuple[int, ...] | None = None
    overflow: bool = False


def _check_input(plan: LaurentPlan, samples) -> np.ndarray:
    v = np.asarray(samples, dtype=np.float64)
    if v.ndim != 1 or v.size != plan.order:
        raise ValueError(f"signal length {v.shape} does not match plan order {plan.order}")
    return v


def _apply_factor_exact(f: FactoredTernary, v: np.ndarray) -> np.ndarray:
    if f.rank == 0:
        return np.zeros(f.combiner.shape[0])
    return f.combiner @ (f.reduced_rows @ v)


def _execute_exact(plan: LaurentPlan, v: np.ndarray, select: TransformSelect) -> TransformResult:
    re = _apply_factor_exact(plan.unit.real_factor, v)
    im = _apply_factor_exact(plan.unit.imag_factor, v)
    for t in plan.terms:
        re = re + t.value * _apply_factor_exact(t.real_factor, v)
        im = im + t.imag_sign * t.value * _apply_factor_exact(t.imag_factor, v)
    if select is TransformSelect.DHT:
        return TransformResult(select, re - im)
    return TransformResult(select, re + 1j * im)


def _rows_fixed(mat: np.ndarray, vals: list[Fixed], zero: Fixed,
                flags: OverflowFlag) -> list[Fixed]:
    out = []
    for row in mat:
        acc = zero
        for coef, x in zip(row, vals):
            if coef > 0:
                acc = fx_add(acc, x, flags)
            elif coef < 0:
                acc = fx_sub(acc, x, flags)
        out.append(acc)
    return out


def _apply_factor_fixed(f: FactoredTernary, vals: list[Fixed], scalar: Fixed | None,
                        zero: Fixed, cfg: FixedConfig, flags: OverflowFlag) -> list[Fixed]:
    u = _rows_fixed(f.reduced_rows, vals, zero, flags)
    if scalar is not None:
        u = [fx_mul(x, scalar, cfg.rounding, flags) for x in u]
    return _rows_fixed(f.combiner, u, zero, flags)


def _execute_fixed(plan: LaurentPlan, v: np.ndarray, select: TransformSelect,
                   cfg: FixedConfig) -> TransformResult:
    flags = OverflowFlag()
    zero = Fixed(0, cfg.acc_fmt)
    x = [widen(quantize(s, cfg.fmt, cfg.rounding, flags), cfg.acc_total_bits) for s in v]
    # Constants are quantized once per run, like a hardware coefficient ROM.
    consts = [quantize(t.value, cfg.fmt, cfg.rounding, flags) for t in plan.terms]

    re = _apply_factor_fixed(plan.unit.real_factor, x, None, zero, cfg, flags)
    im = _apply_factor_fixed(plan.unit.imag_factor, x, None, zero, cfg, flags)
    for t, c in zip(plan.terms, consts):
        yr = _apply_factor_fixed(t.real_factor, x, c, zero, cfg, flags)
        yi = _apply_factor_fixed(t.imag_factor, x, c, zero, cfg, flags)
        re = [fx_add(a, b, flags) for a, b in zip(re, yr)]
        if t.imag_sign >= 0:
            im = [fx_add(a, b, flags) for a, b in zip(im, yi)]
        else:
            im = [fx_sub(a, b, flags) for a, b in zip(im, yi)]

    if select is TransformSelect.DHT:
        h = [fx_sub(a, b, flags) for a, b in zip(re, im)]
        values = np.array([f.value for f in h])
        return TransformResult(select, values, tuple(f.raw for f in h), None, flags.overflow)
    values = np.array([a.value + 1j * b.value for a, b in zip(re, im)])
    return TransformResult(select, values,
                           tuple(f.raw for f in re), tuple(f.raw for f in im),
                           flags.overflow)


def execute(plan: LaurentPlan, samples, select: TransformSelect = TransformSelect.DFT,
            arith="exact") -> TransformResult:
    """Run the plan on a signal.

    arith is the string "exact" for double-precision evaluation or a
    FixedConfig for bit-exact device arithmetic.  Fixed-mode overflow does
    not raise; the result carries the sticky flag and the caller decides.
    """
    v = _check_input(plan, samples)
    if isinstance(select, str):
        select = TransformSelect(select.lower())
    if arith == "exact":
        return _execute_exact(plan, v, select)
    if isinstance(arith, FixedConfig):
        return _execute_fixed(plan, v, select, arith)
    raise ValueError(f"arith must be 'exact' or a FixedConfig, got {arith!r}")


def _row_adds(mat: np.ndarray) -> int:
    if mat.size == 0:
        return 0
    nnz = np.count_nonzero(mat, axis=1)
    return int(np.maximum(nnz - 1, 0).sum())


def _factor_adds(f: FactoredTernary) -> int:
    return _row_adds(f.reduced_rows) + _row_adds(f.combiner)


def count_ops(plan: LaurentPlan) -> OpCount:
    """Structural operation count; see OpCount for the exact convention."""
    mults = sum(t.real_factor.rank + t.imag_factor.rank for t in plan.terms)

    factors = [plan.unit.real_factor, plan.unit.imag_factor]
    for t in plan.terms:
        factors += [t.real_factor, t.imag_factor]
    adds = sum(_factor_adds(f) for f in factors)

    merge = 0
    for side in ("real", "imag"):
        unit_f = plan.unit.real_factor if side == "real" else plan.unit.imag_factor
        streams = [unit_f] + [t.real_factor if side == "real" else t.imag_factor
                              for t in plan.terms]
        present = np.zeros(plan.order, dtype=np.int64)
        for f in streams:
            if f.rank:
                present += (np.count_nonzero(f.combiner, axis=1) > 0)
        merge += int(np.maximum(present - 1, 0).sum())

    return OpCount(int(mults), int(adds), merge, plan.order)


@dataclass(frozen=True)
class QuantizationReport:
    """Componentwise fixed-vs-exact comparison over the significant bins.

    Components (Re/Im per bin for DFT, H per bin for DHT) whose exact
    magnitude is below floor_frac * peak are left out of the maximum: the
    device error is a fixed absolute quantity, so ratios against near-zero
    components measure nothing about the arithmetic.  max_rel_error is the
    worst included ratio and dominant_bins the bin indices attaining it.
    """

    max_rel_error: float
    dominant_bins: tuple[int, ...]
    floor: float
    entries: tuple[tuple[int, str, float, float, float], ...]


def quantization_report(plan: LaurentPlan, samples, cfg: FixedConfig | None = None,
                        select: TransformSelect = TransformSelect.DFT,
                        floor_frac: float = 0.25) -> QuantizationReport:
    """Maximum relative error of the fixed-point run against the exact run."""
    cfg = cfg or FixedConfig()
    exact = execute(plan, samples, select, "exact")
    fixed = execute(plan, samples, select, cfg)
    if select is TransformSelect.DFT:
        components = [(k, "re", exact.values[k].real, fixed.values[k].real)
                      for k in range(plan.order)]
        components += [(k, "im", exact.values[k].imag, fixed.values[k].imag)
                       for k in range(plan.order)]
    else:
        components = [(k, "h", float(exact.values[k]), float(fixed.values[k]))
                      for k in range(plan.order)]

    peak = max(abs(e) for _, _, e, _ in components)
    floor = floor_frac * peak
    entries = []
    for k, name, e, f in components:
        if abs(e) > floor:
            entries.append((k, name, e, f, abs(f - e) / abs(e)))
    if not entries:
        return QuantizationReport(0.0, (), floor, ())
    worst = max(rel for *_, rel in entries)
    dominant = tuple(sorted({k for k, *_, rel in entries
                             if rel >= worst * (1 - 1e-12) and worst > 0}))
    return QuantizationReport(worst, dominant, floor, tuple(entries))
