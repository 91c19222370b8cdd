"""Two's-complement fixed-point scalars with saturation and a sticky overflow flag.

A value is an integer raw scaled by 2**frac_bits (Q notation: a 16-bit word
with 7 fraction bits is Q8.7 -- one sign bit, eight integer bits, seven
fraction bits).  All arithmetic is exact integer arithmetic with a single
rounding at the end of a multiply, so results are bit-reproducible across
runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

ROUND_HALF_AWAY = "half-away"
ROUND_HALF_EVEN = "half-even"
ROUND_TRUNCATE = "truncate"
ROUNDING_MODES = (ROUND_HALF_AWAY, ROUND_HALF_EVEN, ROUND_TRUNCATE)


@dataclass(frozen=True)
class QFormat:
    """Word layout: total bits including sign, fraction bits."""

    total_bits: int = 16
    frac_bits: int = 7

    def __post_init__(self):
        if not 1 <= self.frac_bits < self.total_bits <= 32:
            raise ValueError(
                "QFormat requires 1 <= frac_bits < total_bits <= 32, "
                f"got total_bits={self.total_bits}, frac_bits={self.frac_bits}"
            )

    @property
    def scale(self) -> int:
        return 1 << self.frac_bits

    @property
    def min_raw(self) -> int:
        return -(1 << (self.total_bits - 1))

    @property
    def max_raw(self) -> int:
        return (1 << (self.total_bits - 1)) - 1

    def widened(self, total_bits: int) -> "QFormat":
        return QFormat(total_bits, self.frac_bits)

    def __str__(self) -> str:
        return f"Q{self.total_bits - self.frac_bits - 1}.{self.frac_bits}"


class OverflowFlag:
    """Sticky overflow marker.  One instance per computation context, so
    concurrent transforms never share state."""

    def __init__(self):
        self.overflow = False

    def mark(self):
        self.overflow = True


@dataclass(frozen=True)
class Fixed:
    raw: int
    fmt: QFormat

    @property
    def value(self) -> float:
        return self.raw / self.fmt.scale

    def hex(self) -> str:
        """Raw as zero-padded two's-complement hex (4 digits for 16-bit)."""
        nibbles = (self.fmt.total_bits + 3) // 4
        return format(self.raw & ((1 << self.fmt.total_bits) - 1), f"0{nibbles}X")


def _div_round(num: int, den: int, rounding: str) -> int:
    """Round num/den to an integer.  den > 0."""
    if rounding == ROUND_TRUNCATE:
        q = abs(num) // den
    elif rounding == ROUND_HALF_AWAY:
        q = (abs(num) * 2 + den) // (den * 2)
    elif rounding == ROUND_HALF_EVEN:
        q, r = divmod(abs(num), den)
        if 2 * r > den or (2 * r == den and q % 2 == 1):
            q += 1
    else:
        raise ValueError(f"unknown rounding mode {rounding!r}")
    return q if num >= 0 else -q


def _saturate(raw: int, fmt: QFormat, flags: OverflowFlag | None) -> int:
    if raw > fmt.max_raw:
        if flags is not None:
            flags.mark()
        return fmt.max_raw
    if raw < fmt.min_raw:
        if flags is not None:
            flags.mark()
        return fmt.min_raw
    return raw


def quantize(x, fmt: QFormat, rounding: str = ROUND_HALF_AWAY,
             flags: OverflowFlag | None = None) -> Fixed:
    """Quantize a real number onto the format's grid.

    Out-of-range values saturate to the nearest bound and mark the sticky
    flag.  The exact binary expansion of the input is used, so rounding
    decisions never suffer double rounding.
    """
    exact = Fraction(x) * fmt.scale
    raw = _div_round(exact.numerator, exact.denominator, rounding)
    return Fixed(_saturate(raw, fmt, flags), fmt)


def widen(a: Fixed, total_bits: int) -> Fixed:
    """Same value in a wider word.  Lossless."""
    if total_bits < a.fmt.total_bits:
        raise ValueError("widen cannot narrow a value")
    return Fixed(a.raw, a.fmt.widened(total_bits))


def _require_same_format(a: Fixed, b: Fixed):
    if a.fmt != b.fmt:
        raise ValueError(f"format mismatch: {a.fmt} vs {b.fmt}")


def fx_add(a: Fixed, b: Fixed, flags: OverflowFlag | None = None) -> Fixed:
    _require_same_format(a, b)
    return Fixed(_saturate(a.raw + b.raw, a.fmt, flags), a.fmt)


def fx_sub(a: Fixed, b: Fixed, flags: OverflowFlag | None = None) -> Fixed:
    _require_same_format(a, b)
    return Fixed(_saturate(a.raw - b.raw, a.fmt, flags), a.fmt)


def fx_mul(a: Fixed, b: Fixed, rounding: str = ROUND_HALF_AWAY,
           flags: OverflowFlag | None = None) -> Fixed:
    """Multiply with a double-width intermediate and one final rounding.

    Operands must share frac_bits; the result takes the wider word so a
    32-bit accumulator value can absorb a 16-bit constant product.
    """
    if a.fmt.frac_bits != b.fmt.frac_bits:
        raise ValueError(f"format mismatch: {a.fmt} vs {b.fmt}")
    out_fmt = a.fmt if a.fmt.total_bits >= b.fmt.total_bits else b.fmt
    raw = _div_round(a.raw * b.raw, out_fmt.scale, rounding)
    return Fixed(_saturate(raw, out_fmt, flags), out_fmt)
