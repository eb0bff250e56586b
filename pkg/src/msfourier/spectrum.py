"""Core types for sparse multidimensional spectra.

A signal is a finite sum of complex exponentials

    f(x) = sum_j a_j * exp(2*pi*i * w_j . x),   x in [0,1)^d,

with integer frequency vectors w_j in [-N/2, N/2)^d. Everything downstream
(unwrapping, sampling, recovery) works on these mode sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "FourierMode",
    "SparseSpectrum",
    "centered_mod",
    "evaluate_spectrum",
    "read_signal_file",
    "write_signal_file",
]


def centered_mod(v: int, n: int) -> int:
    """Balanced residue of ``v`` modulo ``n``.

    Returns the unique r with r == v (mod n) and -ceil(n/2) <= r < n - ceil(n/2);
    for even n that is the half-open interval [-n/2, n/2).
    """
    if n < 1:
        raise ValueError(f"modulus must be >= 1, got {n}")
    half = (n + 1) // 2
    return (v + half) % n - half


@dataclass(frozen=True)
class FourierMode:
    """One (frequency vector, coefficient) pair of a sparse spectrum."""

    freq: tuple[int, ...]
    coeff: complex

    def __post_init__(self):
        object.__setattr__(self, "freq", tuple(int(w) for w in self.freq))
        object.__setattr__(self, "coeff", complex(self.coeff))
        if not (math.isfinite(self.coeff.real) and math.isfinite(self.coeff.imag)):
            raise ValueError(f"coefficient must be finite, got {self.coeff}")


@dataclass(frozen=True)
class SparseSpectrum:
    """A set of Fourier modes with bandwidth and dimension metadata.

    Every frequency entry must lie in [-bandwidth/2, bandwidth/2) and no two
    modes may share a frequency vector.
    """

    modes: tuple[FourierMode, ...]
    bandwidth: int
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        if self.bandwidth < 1:
            raise ValueError(f"bandwidth must be positive, got {self.bandwidth}")
        if self.dim < 1:
            raise ValueError(f"dim must be positive, got {self.dim}")
        half = self.bandwidth / 2
        seen = set()
        for mode in self.modes:
            if len(mode.freq) != self.dim:
                raise ValueError(
                    f"frequency vector {mode.freq} has length {len(mode.freq)}, expected {self.dim}"
                )
            for w in mode.freq:
                if not (-half <= w < half):
                    raise ValueError(
                        f"frequency entry {w} outside [-{half}, {half}) for bandwidth {self.bandwidth}"
                    )
            if mode.freq in seen:
                raise ValueError(f"duplicate frequency vector {mode.freq}")
            seen.add(mode.freq)

    def __len__(self) -> int:
        return len(self.modes)

    def freq_array(self) -> np.ndarray:
        """Frequencies as an (s, dim) int64 array."""
        if not self.modes:
            return np.empty((0, self.dim), dtype=np.int64)
        return np.array([m.freq for m in self.modes], dtype=np.int64)

    def coeff_array(self) -> np.ndarray:
        """Coefficients as a length-s complex array."""
        return np.array([m.coeff for m in self.modes], dtype=np.complex128)


def evaluate_spectrum(spec: SparseSpectrum, x) -> complex:
    """Evaluate ``sum_j a_j exp(2 pi i w_j . x)`` at a point x in [0,1)^d."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (spec.dim,):
        raise ValueError(f"point has shape {x.shape}, expected ({spec.dim},)")
    if not spec.modes:
        return 0j
    phases = spec.freq_array().astype(np.float64) @ x
    return complex(np.sum(spec.coeff_array() * np.exp(2j * np.pi * phases)))


def write_signal_file(spec: SparseSpectrum, path) -> None:
    """Write a spectrum in the signal-spec text format.

    Header line ``N d s`` followed by s lines ``re im w_1 ... w_d``.
    """
    with open(path, "w") as fh:
        fh.write(f"{spec.bandwidth} {spec.dim} {len(spec)}\n")
        for mode in spec.modes:
            ws = " ".join(str(w) for w in mode.freq)
            fh.write(f"{mode.coeff.real!r} {mode.coeff.imag!r} {ws}\n")


def read_signal_file(path) -> SparseSpectrum:
    """Parse a signal-spec text file written by :func:`write_signal_file`."""
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 3:
            raise ValueError(f"malformed header {header!r}, expected 'N d s'")
        bandwidth, dim, count = (int(tok) for tok in header)
        modes = []
        for line_no, line in enumerate(fh, start=2):
            tokens = line.split()
            if not tokens:
                continue
            if len(tokens) != 2 + dim:
                raise ValueError(f"line {line_no}: expected {2 + dim} fields, got {len(tokens)}")
            coeff = complex(float(tokens[0]), float(tokens[1]))
            freq = tuple(int(tok) for tok in tokens[2:])
            modes.append(FourierMode(freq=freq, coeff=coeff))
    if len(modes) != count:
        raise ValueError(f"header declares {count} modes, file holds {len(modes)}")
    return SparseSpectrum(modes=tuple(modes), bandwidth=bandwidth, dim=dim)
