"""Pure-numpy mode-sum kernel."""

import numpy as np

# Bounds the (p, chunk) phase matrix to a few MB.
_CHUNK = 512


def mode_sum(residues: np.ndarray, weights: np.ndarray, p: int) -> np.ndarray:
    """out[l] = sum_j weights[j] * exp(2 pi i residues[j] * l / p), l = 0..p-1."""
    residues = np.ascontiguousarray(residues, dtype=np.int64)
    weights = np.ascontiguousarray(weights, dtype=np.complex128)
    if residues.shape != weights.shape or residues.ndim != 1:
        raise ValueError("residues and weights must be 1-D arrays of equal length")
    out = np.zeros(p, dtype=np.complex128)
    grid = np.arange(p, dtype=np.float64)[:, None]
    for start in range(0, len(residues), _CHUNK):
        m = residues[start : start + _CHUNK].astype(np.float64)
        block = np.exp((2j * np.pi / p) * (grid * m[None, :]))
        out += block @ weights[start : start + _CHUNK]
    return out
