"""Direct-summation DFT and DHT references.

These are the correctness oracles for the fast path: O(N^2) sums evaluated
in double precision, valid for any length N >= 1.

    V[k] = sum_n v[n] * exp(-2j*pi*k*n/N)          (DFT)
    H[k] = sum_n v[n] * (cos(2*pi*k*n/N) + sin(2*pi*k*n/N))   (DHT)
    H[k] = Re(V[k]) - Im(V[k])
"""

from __future__ import annotations

import numpy as np


def _as_signal(samples) -> np.ndarray:
    v = np.asarray(samples, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError("signal must be one-dimensional")
    if v.size == 0:
        raise ValueError("signal must contain at least one sample")
    return v


def dft_matrix(n: int) -> np.ndarray:
    """The N x N matrix exp(-2j*pi*k*n/N)."""
    if n < 1:
        raise ValueError("transform length must be positive")
    idx = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(idx, idx) / n)


def dft_direct(samples) -> np.ndarray:
    """N-point DFT by direct summation.  Returns complex bins."""
    v = _as_signal(samples)
    return dft_matrix(v.size) @ v


def dht_direct(samples) -> np.ndarray:
    """N-point DHT by direct summation of the cas kernel cos + sin."""
    v = _as_signal(samples)
    idx = np.arange(v.size)
    arg = 2 * np.pi * np.outer(idx, idx) / v.size
    return (np.cos(arg) + np.sin(arg)) @ v


def dht_from_dft(spectrum) -> np.ndarray:
    """Hartley bins from Fourier bins: H[k] = Re(V[k]) - Im(V[k])."""
    bins = np.asarray(spectrum, dtype=np.complex128)
    return bins.real - bins.imag
