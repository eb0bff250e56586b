"""Prime selection, prime-length forward DFT, and top-bin ranking.

Sample vectors always have prime length p, so radix FFTs never apply
directly; the transform uses the chirp-z (Bluestein) identity

    m*l = (m^2 + l^2 - (m-l)^2) / 2

to turn the DFT into one linear convolution, evaluated with power-of-two
FFTs of length >= 2p-1. Chirp tables and the kernel transform are cached
per p.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

__all__ = ["BinRanking", "next_prime_at_least", "dft_forward", "top_bins"]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def next_prime_at_least(x: float) -> int:
    """Smallest prime >= ceil(x)."""
    if x > 2**62:
        raise ValueError(f"{x} out of supported range")
    n = max(2, math.ceil(x))
    while not _is_prime(n):
        n += 1
    return n


@functools.lru_cache(maxsize=64)
def _bluestein_plan(p: int):
    # exp(-i pi n^2 / p) is 2p-periodic in n; reduce n^2 mod 2p exactly.
    n = np.arange(p, dtype=np.int64)
    chirp = np.exp((-1j * np.pi / p) * ((n * n) % (2 * p)))
    length = 1 << max(2 * p - 1, 1).bit_length()
    kernel = np.zeros(length, dtype=np.complex128)
    kernel[:p] = np.conj(chirp)
    kernel[length - p + 1 :] = np.conj(chirp[1:][::-1])
    return chirp, np.fft.fft(kernel), length


def dft_forward(v) -> np.ndarray:
    """F[m] = sum_l v[l] exp(-2 pi i m l / p) for m = 0..p-1."""
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim != 1 or len(v) < 1:
        raise ValueError("input must be a nonempty 1-D vector")
    p = len(v)
    if p == 1:
        return v.copy()
    chirp, kernel_ft, length = _bluestein_plan(p)
    buf = np.zeros(length, dtype=np.complex128)
    buf[:p] = v * chirp
    conv = np.fft.ifft(np.fft.fft(buf) * kernel_ft)
    return chirp * conv[:p]


@dataclass(frozen=True)
class BinRanking:
    """Top DFT bins by descending magnitude, ties to the lower bin index."""

    order: np.ndarray
    spectrum: np.ndarray


def top_bins(F, count: int) -> BinRanking:
    """Rank the ``count`` largest-magnitude bins of a DFT vector."""
    F = np.asarray(F, dtype=np.complex128)
    if count > len(F):
        raise ValueError(f"count {count} exceeds vector length {len(F)}")
    # Stable sort on negated magnitudes keeps equal-magnitude bins in index order.
    order = np.argsort(-np.abs(F), kind="stable")[:count]
    return BinRanking(order=order.astype(np.int64), spectrum=F)
