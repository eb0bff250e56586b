"""Multiscale frequency-entry estimation and run-parameter schedules.

A frequency entry w' is read off the argument of the ratio of a shifted to
an unshifted DFT bin. One ratio at shift eps0 <= 1/(2 N') pins w' only up
to a noise-scaled error, so the estimate is refined over M+1 geometrically
growing shifts eps_a = beta^a * eps0: each level wraps the residual error
into [-1/2, 1/2) of a cycle and divides by the larger shift, shrinking the
error by beta per level until rounding to the nearest integer is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dft import next_prime_at_least

__all__ = [
    "RecoverySchedule",
    "CandidateState",
    "frac_centered",
    "arg_halfopen",
    "make_schedule",
    "collision_test",
    "initial_entry",
    "refine_entry",
    "reconstruct_entry",
    "finalize_entry",
    "accept_candidate",
    "estimate_coefficient",
]

# Bins with magnitude below this are treated as empty (collision test fails).
DEAD_BIN = 1e-300

# Threshold floor so noiseless runs tolerate floating-point round-off.
TAU_FLOOR = 1e-9


def frac_centered(x):
    """x reduced modulo 1 into [-1/2, 1/2)."""
    return x - np.floor(x + 0.5)


def arg_halfopen(z):
    """Complex argument in the branch [-pi, pi)."""
    a = np.angle(z)
    return np.where(a == np.pi, -np.pi, a) if isinstance(a, np.ndarray) else (
        -np.pi if a == np.pi else a
    )


@dataclass(frozen=True)
class RecoverySchedule:
    """Derived parameters for one outer iteration."""

    p: int
    tau: float
    M: int
    eps0: float
    beta: float
    delta: float
    shifts: np.ndarray  # eps_a = beta^a * eps0 for a = 0..M


@dataclass
class CandidateState:
    """Working state of one ranked bin during an outer iteration."""

    bin: int
    entry_estimates: np.ndarray  # length d', current w'_k estimates
    vote: int
    coeff: complex


def make_schedule(
    s_star: int,
    sigma: float,
    a_min: float,
    c1: float,
    c_sigma: float,
    beta: float,
    n_eff: int,
) -> RecoverySchedule:
    """Compute (p, tau, M, eps0, delta, shift ladder) for sparsity budget s*.

    p is the first prime >= max{c1 s*, (beta(beta+1) a_min c_sigma sigma / pi)^2};
    the second operand keeps the per-level phase error below the admissible
    delta = min((1 - eps0 N')/2, 1/(2 beta + 2)), and M = floor(log_beta N') + 1
    levels suffice to drive the reconstruction error under 1/2.
    """
    if s_star < 1:
        raise ValueError(f"sparsity budget must be >= 1, got {s_star}")
    if beta <= 1:
        raise ValueError(f"shift growth factor must exceed 1, got {beta}")
    if sigma < 0:
        raise ValueError(f"noise level must be >= 0, got {sigma}")
    if a_min <= 0:
        raise ValueError(f"minimum coefficient magnitude must be > 0, got {a_min}")

    noise_floor = (beta * (beta + 1) * a_min * c_sigma * sigma / math.pi) ** 2
    p = next_prime_at_least(max(c1 * s_star, noise_floor))
    tau = max(c_sigma * sigma / (a_min * math.sqrt(p)), TAU_FLOOR)
    eps0 = 1.0 / (2 * n_eff)
    delta = min((1.0 - eps0 * n_eff) / 2.0, 1.0 / (2 * beta + 2))
    if not (0 < delta < 0.25):
        raise ValueError(f"phase-error budget {delta} outside (0, 1/4)")
    if beta > (1 - 2 * delta) / (2 * delta) * (1 + 1e-12):
        raise ValueError(f"beta={beta} violates beta <= (1-2*delta)/(2*delta) for delta={delta}")
    if eps0 > (1 - 2 * delta) / n_eff:
        raise ValueError(f"eps0={eps0} violates eps0 <= (1-2*delta)/N'")
    M = math.floor(math.log(n_eff, beta)) + 1
    shifts = eps0 * beta ** np.arange(M + 1, dtype=np.float64)
    return RecoverySchedule(p=p, tau=tau, M=M, eps0=eps0, beta=beta, delta=delta, shifts=shifts)


def collision_test(F_unshifted_bin: complex, F_shifted_bin: complex, tau: float) -> bool:
    """True when the shifted/unshifted magnitude ratio is within tau of 1.

    A bin holding a single mode keeps its magnitude under any shift; a
    collided (or empty) bin generically does not. Empty bins fail outright.
    """
    denom = abs(F_unshifted_bin)
    if denom < DEAD_BIN:
        return False
    return abs(abs(F_shifted_bin) / denom - 1.0) <= tau


def initial_entry(F_shifted_bin: complex, F_unshifted_bin: complex, eps0: float) -> float:
    """Coarse entry estimate Arg(shifted/unshifted) / (2 pi eps0)."""
    if abs(F_unshifted_bin) < DEAD_BIN:
        raise ZeroDivisionError("unshifted bin is (numerically) zero")
    return arg_halfopen(F_shifted_bin / F_unshifted_bin) / (2 * math.pi * eps0)


def refine_entry(w_prev: float, b_alpha: float, eps_alpha: float) -> float:
    """One correction level: wrap the phase residual and rescale by the shift."""
    if eps_alpha <= 0:
        raise ValueError(f"shift must be positive, got {eps_alpha}")
    return w_prev + frac_centered(b_alpha - eps_alpha * w_prev) / eps_alpha


def reconstruct_entry(shifts, phases) -> float:
    """Closed-form multiscale reconstruction from per-level phases.

    Computes w = sum_a c_a / eps_a with c_0 = b_0 and
    c_a = (b_a - eps_a * lambda_{a-1}) mod [-1/2, 1/2), where lambda_a is the
    running sum of the first a+1 terms. Folding :func:`refine_entry` over the
    levels yields the same value.
    """
    shifts = np.asarray(shifts, dtype=np.float64)
    phases = np.asarray(phases, dtype=np.float64)
    if shifts.shape != phases.shape or shifts.ndim != 1 or len(shifts) == 0:
        raise ValueError("shifts and phases must be nonempty 1-D arrays of equal length")
    if np.any(np.diff(shifts) <= 0):
        raise ValueError("shifts must be strictly increasing")
    lam = phases[0] / shifts[0]
    for eps, b in zip(shifts[1:], phases[1:]):
        lam += frac_centered(b - eps * lam) / eps
    return float(lam)


def finalize_entry(w_est: float) -> int:
    """Nearest integer, ties rounded half away from zero."""
    return int(math.copysign(math.floor(abs(w_est) + 0.5), w_est))


def accept_candidate(vote: int, M: int, eta: float) -> bool:
    """Keep a candidate whose collision tests failed at most eta*(M+1) times."""
    if not 0 <= vote <= M + 1:
        raise ValueError(f"vote {vote} outside [0, {M + 1}]")
    return vote <= eta * (M + 1)


def estimate_coefficient(F_unshifted_bin: complex, p: int) -> complex:
    """Coefficient estimate F[m]/p of the mode aliased into bin m."""
    if p < 1:
        raise ValueError(f"sample length must be >= 1, got {p}")
    return F_unshifted_bin / p
