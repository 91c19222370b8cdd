"""Software model of the device memory block: 16-bit input words, the
transform-select bit, and 32-bit packed output words.

Packing (word-level big-endian: "first" means most significant):
  DFT  word = [ real raw : 16 bits | imag raw : 16 bits ]
  DHT  word = [ zero     : 16 bits | real raw : 16 bits ]

The model is functional, not cycle-accurate: run_device is exactly the
fixed-point engine followed by packing, so a testbench diff against RTL
isolates arithmetic bugs from memory-layout bugs.

Testbench interchange files are plain text, one hex word per line:
stimulus files start with a header line "SELECT DFT" or "SELECT DHT"
followed by 16-bit input words; output files hold 32-bit words.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .engine import FixedConfig, TransformResult, TransformSelect, execute
from .fixed import OverflowFlag
from .plan import LaurentPlan

_WORD16 = 0xFFFF
_INT16_MIN, _INT16_MAX = -(1 << 15), (1 << 15) - 1


class StimulusFormatError(ValueError):
    """Malformed testbench stimulus file."""


@dataclass(frozen=True)
class MemoryImage:
    """Value snapshot of the device memory."""

    input_words: tuple[int, ...]
    select: TransformSelect
    output_words: tuple[int, ...] | None = None
    overflow: bool = False


def _to_int16(raw: int, flags: OverflowFlag | None) -> int:
    if raw > _INT16_MAX:
        if flags is not None:
            flags.mark()
        raw = _INT16_MAX
    elif raw < _INT16_MIN:
        if flags is not None:
            flags.mark()
        raw = _INT16_MIN
    return raw & _WORD16


def _sign_extend16(half: int) -> int:
    half &= _WORD16
    return half - 0x10000 if half & 0x8000 else half


def pack_output(spectrum, select: TransformSelect | None = None,
                flags: OverflowFlag | None = None) -> tuple[int, ...]:
    """Pack a fixed-mode result into 32-bit output words.

    Accepts a TransformResult from a fixed-mode run, or raw integers
    directly: (real, imag) pairs for DFT, plain ints for DHT.  Raws beyond
    16 bits saturate and mark the flags context when one is supplied.
    """
    if isinstance(spectrum, TransformResult):
        if spectrum.real_raw is None:
            raise ValueError("packing is defined only for fixed-mode results")
        select = select or spectrum.select
        if select is TransformSelect.DFT:
            pairs = list(zip(spectrum.real_raw, spectrum.imag_raw))
        else:
            pairs = list(spectrum.real_raw)
    else:
        if select is None:
            raise ValueError("select is required when packing raw integers")
        pairs = list(spectrum)

    words = []
    if select is TransformSelect.DFT:
        for re_raw, im_raw in pairs:
            words.append((_to_int16(re_raw, flags) << 16) | _to_int16(im_raw, flags))
    else:
        for raw in pairs:
            words.append(_to_int16(raw, flags))
    return tuple(words)


def unpack_output(words, select: TransformSelect):
    """Inverse of pack_output: recover signed 16-bit raws."""
    if select is TransformSelect.DFT:
        return tuple((_sign_extend16(w >> 16), _sign_extend16(w)) for w in words)
    return tuple(_sign_extend16(w) for w in words)


def run_device(image: MemoryImage, plan: LaurentPlan,
               cfg: FixedConfig | None = None) -> MemoryImage:
    """Model one device pass: load, run the core block, pack, store."""
    cfg = cfg or FixedConfig()
    if len(image.input_words) != plan.order:
        raise ValueError(
            f"memory holds {len(image.input_words)} input words, plan order is {plan.order}"
        )
    samples = np.array(image.input_words, dtype=np.float64) / cfg.fmt.scale
    result = execute(plan, samples, image.select, cfg)
    flags = OverflowFlag()
    words = pack_output(result, image.select, flags)
    return replace(image, output_words=words,
                   overflow=result.overflow or flags.overflow)


def load_stimulus(path) -> MemoryImage:
    """Read a stimulus file: SELECT header plus one 16-bit hex word per line."""
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    entries = [(i + 1, line.strip()) for i, line in enumerate(lines) if line.strip()]
    if not entries:
        raise StimulusFormatError(f"{path}: empty stimulus file")
    header_no, header = entries[0]
    parts = header.upper().split()
    if len(parts) != 2 or parts[0] != "SELECT" or parts[1] not in ("DFT", "DHT"):
        raise StimulusFormatError(
            f"{path}:{header_no}: expected 'SELECT DFT' or 'SELECT DHT', got {header!r}"
        )
    select = TransformSelect(parts[1].lower())
    words = []
    for lineno, text in entries[1:]:
        try:
            value = int(text, 16)
        except ValueError:
            raise StimulusFormatError(f"{path}:{lineno}: malformed hex word {text!r}") from None
        if not 0 <= value <= _WORD16:
            raise StimulusFormatError(f"{path}:{lineno}: word {text!r} exceeds 16 bits")
        words.append(_sign_extend16(value))
    if not words:
        raise StimulusFormatError(f"{path}: stimulus contains no input words")
    return MemoryImage(tuple(words), select)


def write_stimulus(image: MemoryImage, path):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"SELECT {image.select.value.upper()}\n")
        for raw in image.input_words:
            fh.write(format(raw & _WORD16, "04X") + "\n")


def write_output_words(words, path):
    with open(path, "w", encoding="ascii") as fh:
        for w in words:
            fh.write(format(w & 0xFFFFFFFF, "08X") + "\n")


def read_output_words(path) -> tuple[int, ...]:
    with open(path, "r", encoding="ascii") as fh:
        lines = [line.strip() for line in fh.read().splitlines()]
    return tuple(int(text, 16) for text in lines if text)
