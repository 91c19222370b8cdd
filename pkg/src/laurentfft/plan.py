"""Ternary matrix decomposition of the DFT for block lengths N = 0 (mod 4).

The DFT matrix F[k, n] = w**(k*n mod N), w = exp(-2j*pi/N), is regrouped by
the residue of the exponent k*n mod N.  Indicator matrices chi_l mark the
positions with k*n = l (mod N); gathering the residues of each congruence
class C_m = {l : l = m (mod N/4)} with unit weights (-j)**(4*(l-m)/N) gives
matrices M_m whose entries lie in {0, +1, -1, +j, -j}, and

    F = M_0 + sum_{m=1..floor((N/4-1)/2)} (w**m M_m + w**-m M_-m)
          + w**(N/8) M_(N/8)                      (last term iff N = 0 mod 8)

Splitting into real and imaginary parts turns each bracket into ternary
matrices ({-1, 0, +1} entries) weighted by cos(2*pi*m/N), sin(2*pi*m/N) and
sqrt(2)/2, so applying the transform costs general multiplications only by
those scalars.  Each scalar-weighted ternary matrix T is factored through
its reduced row-echelon form, T = C @ R with both factors ternary, so the
scalar multiplies just rank(T) intermediate values.

Every built plan is checked against the direct DFT matrix before it is
returned; a plan that fails to reconstruct is a construction bug, not a
caller error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .reference import dft_matrix

RECONSTRUCTION_TOL = 1e-12


class UnsupportedLengthError(ValueError):
    """Raised for block lengths outside N ≡ 0 (mod 4), N >= 4."""


class PlanConstructionError(RuntimeError):
    """Raised when a built plan violates its own structural invariants."""


def _require_mod4(n: int):
    if n < 4 or n % 4 != 0:
        raise UnsupportedLengthError(
            f"block length must satisfy N ≡ 0 (mod 4) and N >= 4, got N={n}"
        )


def exponent_matrix(n: int) -> np.ndarray:
    """N x N matrix of DFT exponents k*n mod N."""
    if n < 1:
        raise ValueError("order must be positive")
    idx = np.arange(n)
    return np.outer(idx, idx) % n


def chi(l: int, n: int) -> np.ndarray:
    """0/1 indicator of the positions where k*n ≡ l (mod N)."""
    if not 0 <= l < n:
        raise ValueError(f"class index must satisfy 0 <= l < N, got l={l}, N={n}")
    return (exponent_matrix(n) == l).astype(np.int64)


def congruence_class(m: int, n: int) -> set[int]:
    """Residues l in 0..N-1 with l ≡ m (mod N/4).  m may be negative."""
    _require_mod4(n)
    step = n // 4
    return {l for l in range(n) if (l - m) % step == 0}


@dataclass(frozen=True, eq=False)
class GaussianIntegerMatrix:
    """Matrix over {0, +1, -1, +j, -j}, stored as an integer (re, im) pair."""

    re: np.ndarray
    im: np.ndarray

    def __post_init__(self):
        weight = np.abs(self.re) + np.abs(self.im)
        if not np.isin(weight, (0, 1)).all():
            raise PlanConstructionError("entries must be 0 or a unit (+-1, +-j)")
        self.re.setflags(write=False)
        self.im.setflags(write=False)

    @property
    def order(self) -> int:
        return self.re.shape[0]


def build_M(m: int, n: int) -> GaussianIntegerMatrix:
    """Weighted sum of the indicators of class C_m.

    The weight of residue l is (-j)**(4*(l - m)/N), an integer power by the
    class definition.  The label m is signed: M_-1 and M_(N/4 - 1) cover the
    same residues but differ by a unit factor.
    """
    _require_mod4(n)
    re = np.zeros((n, n), dtype=np.int64)
    im = np.zeros((n, n), dtype=np.int64)
    for l in congruence_class(m, n):
        power = 4 * (l - m)
        if power % n != 0:
            raise PlanConstructionError(f"non-integer unit exponent for l={l}, m={m}")
        mask = chi(l, n)
        t = (power // n) % 4
        if t == 0:
            re += mask
        elif t == 1:
            im -= mask
        elif t == 2:
            re -= mask
        else:
            im += mask
    return GaussianIntegerMatrix(re, im)


def _as_ternary(mat: np.ndarray) -> np.ndarray:
    mat = np.asarray(mat, dtype=np.int64)
    if not np.isin(mat, (-1, 0, 1)).all():
        raise PlanConstructionError("matrix entries escaped {-1, 0, +1}")
    return mat


@dataclass(frozen=True, eq=False)
class FactoredTernary:
    """Rank factorization T = combiner @ reduced_rows with ternary factors.

    rank is the inner dimension, i.e. how many intermediate values a scalar
    weight must multiply.  optimal is False when the reduced-row-echelon
    route produced a non-ternary factor and the distinct-signed-rows
    fallback was used instead (rank may then exceed the rational rank).
    """

    combiner: np.ndarray
    reduced_rows: np.ndarray
    rank: int
    optimal: bool = True

    def __post_init__(self):
        self.combiner.setflags(write=False)
        self.reduced_rows.setflags(write=False)

    def product(self) -> np.ndarray:
        if self.rank == 0:
            n = self.combiner.shape[0]
            return np.zeros((n, self.reduced_rows.shape[1] if self.reduced_rows.size else n),
                            dtype=np.int64)
        return self.combiner @ self.reduced_rows


def _rref(mat: np.ndarray):
    """Reduced row-echelon form over exact rationals.

    Returns (rows, pivot_columns); rows is the list of nonzero rref rows as
    Fractions.
    """
    rows = [[Fraction(int(x)) for x in row] for row in mat]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def echelon_factor(mat) -> FactoredTernary:
    """Factor a ternary matrix as combiner @ reduced_rows, both ternary.

    The primary route takes R as the nonzero rows of the reduced row-echelon
    form and C as the pivot-column submatrix of the input, which reproduces
    the input exactly and makes the inner dimension the rational rank.  If
    the echelon rows are not ternary the factorization falls back to the
    distinct nonzero rows up to sign, and the result is flagged non-optimal.
    """
    t = _as_ternary(mat)
    nrows, ncols = t.shape
    rref_rows, pivots = _rref(t)
    rank = len(pivots)
    if rank == 0:
        return FactoredTernary(np.zeros((nrows, 0), dtype=np.int64),
                               np.zeros((0, ncols), dtype=np.int64), 0, True)
    if all(x.denominator == 1 and -1 <= x <= 1 for row in rref_rows for x in row):
        reduced = np.array([[int(x) for x in row] for row in rref_rows], dtype=np.int64)
        combiner = t[:, pivots].copy()
        if (combiner @ reduced == t).all():
            return FactoredTernary(combiner, reduced, rank, True)

    # Fallback: one reduced row per distinct nonzero row pattern up to sign.
    patterns: list[np.ndarray] = []
    coeffs = []
    for row in t:
        if not row.any():
            coeffs.append((0, 0))
            continue
        for j, p in enumerate(patterns):
            if (row == p).all():
                coeffs.append((j, 1))
                break
            if (row == -p).all():
                coeffs.append((j, -1))
                break
        else:
            patterns.append(row.copy())
            coeffs.append((len(patterns) - 1, 1))
    reduced = np.array(patterns, dtype=np.int64)
    combiner = np.zeros((nrows, len(patterns)), dtype=np.int64)
    for i, (j, s) in enumerate(coeffs):
        if s:
            combiner[i, j] = s
    if not (combiner @ reduced == t).all():
        raise PlanConstructionError("row factorization failed to reproduce the matrix")
    return FactoredTernary(combiner, reduced, len(patterns), False)


@dataclass(frozen=True, eq=False)
class UnitTerm:
    """The unweighted term: real and imaginary parts of M_0.

    Applied without multiplications; the factored forms drive the engine's
    addition-only application and the structural operation count.
    """

    real_matrix: np.ndarray
    imag_matrix: np.ndarray
    real_factor: FactoredTernary
    imag_factor: FactoredTernary


@dataclass(frozen=True, eq=False)
class ScalarTerm:
    """One trigonometric weight and its two factored ternary matrices.

    real_factor feeds the real output accumulator; imag_factor feeds the
    imaginary accumulator with sign imag_sign (-1 for sine terms).
    """

    label: str
    value: float
    m: int
    real_factor: FactoredTernary
    imag_factor: FactoredTernary
    imag_sign: int


@dataclass(frozen=True, eq=False)
class LaurentPlan:
    order: int
    unit: UnitTerm
    terms: tuple[ScalarTerm, ...]

    @property
    def optimal(self) -> bool:
        """True when every factorization achieved its rational rank."""
        factors = [self.unit.real_factor, self.unit.imag_factor]
        for t in self.terms:
            factors += [t.real_factor, t.imag_factor]
        return all(f.optimal for f in factors)


def build_plan(n: int) -> LaurentPlan:
    """Assemble and validate the full decomposition for order N."""
    _require_mod4(n)
    m0 = build_M(0, n)
    unit = UnitTerm(
        real_matrix=_as_ternary(m0.re),
        imag_matrix=_as_ternary(m0.im),
        real_factor=echelon_factor(m0.re),
        imag_factor=echelon_factor(m0.im),
    )
    terms = []
    for m in range(1, (n // 4 - 1) // 2 + 1):
        pos = build_M(m, n)
        neg = build_M(-m, n)
        theta = 2 * math.pi * m / n
        terms.append(ScalarTerm(
            label=f"cos(2*pi*{m}/{n})",
            value=math.cos(theta),
            m=m,
            real_factor=echelon_factor(pos.re + neg.re),
            imag_factor=echelon_factor(pos.im + neg.im),
            imag_sign=+1,
        ))
        terms.append(ScalarTerm(
            label=f"sin(2*pi*{m}/{n})",
            value=math.sin(theta),
            m=m,
            real_factor=echelon_factor(pos.im - neg.im),
            imag_factor=echelon_factor(pos.re - neg.re),
            imag_sign=-1,
        ))
    if n % 8 == 0:
        # w**(N/8) = (1 - j) * sqrt(2)/2, so the class at N/8 contributes
        # sqrt(2)/2 * (Re+Im) to the real part and sqrt(2)/2 * (Im-Re) to the
        # imaginary part.  The symmetric sum over +-m cannot reach this class
        # because m = N/8 is its own negative modulo N/4.
        mid = build_M(n // 8, n)
        terms.append(ScalarTerm(
            label="sqrt(2)/2",
            value=math.sqrt(0.5),
            m=n // 8,
            real_factor=echelon_factor(mid.re + mid.im),
            imag_factor=echelon_factor(mid.im - mid.re),
            imag_sign=+1,
        ))
    plan = LaurentPlan(order=n, unit=unit, terms=tuple(terms))
    err = np.abs(reconstruct(plan) - dft_matrix(n)).max()
    if err > RECONSTRUCTION_TOL:
        raise PlanConstructionError(
            f"plan for N={n} fails to reconstruct the DFT matrix (max error {err:.3e})"
        )
    return plan


def reconstruct(plan: LaurentPlan) -> np.ndarray:
    """Reassemble the complex transform matrix the plan represents."""
    re = plan.unit.real_matrix.astype(np.float64)
    im = plan.unit.imag_matrix.astype(np.float64)
    for t in plan.terms:
        re = re + t.value * t.real_factor.product()
        im = im + t.imag_sign * t.value * t.imag_factor.product()
    return re + 1j * im


_SYMBOLS = {-1: "-", 0: ".", 1: "+"}


def _rows_to_text(mat: np.ndarray, indent: str) -> list[str]:
    return [indent + "".join(_SYMBOLS[int(x)] for x in row) for row in mat]


def format_plan(plan: LaurentPlan) -> str:
    """Human-readable dump: scalars, ranks and factor matrices."""
    mults = sum(t.real_factor.rank + t.imag_factor.rank for t in plan.terms)
    lines = [f"plan for N={plan.order}: unit term + {len(plan.terms)} scalar terms, "
             f"{mults} multiplications"]
    lines.append("unit term (scalar 1)")
    lines.append("  real matrix:")
    lines += _rows_to_text(plan.unit.real_matrix, "    ")
    lines.append("  imag matrix:")
    lines += _rows_to_text(plan.unit.imag_matrix, "    ")
    for t in plan.terms:
        lines.append(f"term {t.label} = {t.value:.10g}"
                     + ("  (imaginary path applied with minus sign)" if t.imag_sign < 0 else ""))
        for name, f in (("real", t.real_factor), ("imag", t.imag_factor)):
            flag = "" if f.optimal else "  [non-optimal factorization]"
            lines.append(f"  {name} path rank {f.rank}{flag}")
            lines.append("    reduced rows:")
            lines += _rows_to_text(f.reduced_rows, "      ")
            lines.append("    combiner columns:")
            lines += _rows_to_text(f.combiner.T, "      ")
    return "\n".join(lines) + "\n"
