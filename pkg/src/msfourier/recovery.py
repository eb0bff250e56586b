"""End-to-end sparse recovery: outer peeling loop over projection axes.

Each outer iteration projects the residual signal onto one reduced-domain
axis k~, ranks the s* largest DFT bins of a prime-length sample vector,
then refines a d'-entry frequency estimate per bin through the multiscale
shift ladder while collision tests vote on the bin's integrity. Accepted
modes are subtracted from all later samples; the loop ends when s modes
are found or the iteration budget runs out (the all-axes-collision case
this library does not attempt to untangle).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .dft import dft_forward, top_bins
from .estimator import (
    DEAD_BIN,
    CandidateState,
    accept_candidate,
    arg_halfopen,
    estimate_coefficient,
    frac_centered,
    make_schedule,
)
from .sampler import NoiseModel, SamplePlan, gather_unwrapped
from .spectrum import FourierMode, SparseSpectrum
from .unwrap import UnwrapMap, rewrap_freq, unwrap_freq_matrix

__all__ = ["RecoveryConfig", "RecoveryResult", "recover", "count_samples"]


@dataclass(frozen=True)
class RecoveryConfig:
    """Run parameters; defaults follow the standard benchmark setup."""

    N: int
    d: int
    d1: int
    s: int
    sigma: float = 0.0
    a_min: float = 1.0
    c1: float = 2.0
    c_sigma: float = 6.0
    eta: float = 0.25
    beta: float = 2.5
    seed: int = 0
    max_outer_iterations: int | None = None  # None -> 10 * d'

    def __post_init__(self):
        if self.N < 2 or self.N % 2 != 0:
            raise ValueError(f"N must be even and >= 2, got {self.N}")
        if self.d < 1 or self.d % self.d1 != 0:
            raise ValueError(f"d1={self.d1} must divide d={self.d}")
        if self.s < 1:
            raise ValueError(f"sparsity must be >= 1, got {self.s}")
        if self.c1 < 1:
            raise ValueError(f"c1 must be >= 1, got {self.c1}")
        if not 0 < self.eta < 1:
            raise ValueError(f"eta must lie in (0, 1), got {self.eta}")


@dataclass
class RecoveryResult:
    modes: SparseSpectrum
    samples_used: int
    outer_iterations: int
    converged: bool
    sample_seconds: float = field(default=0.0, compare=False)


def recover(
    config: RecoveryConfig, truth: SparseSpectrum, noise: NoiseModel | None = None
) -> RecoveryResult:
    """Recover the modes of ``truth`` from noisy point samples.

    ``truth`` is the sampling oracle: the algorithm only sees point values
    f(g(t)) + noise. When ``noise`` is None a complex-circular model with
    the config's sigma and seed is used.
    """
    if truth.dim != config.d or truth.bandwidth != config.N:
        raise ValueError(
            f"truth geometry ({truth.bandwidth}, {truth.dim}) does not match config "
            f"({config.N}, {config.d})"
        )
    if noise is None:
        noise = NoiseModel(sigma=config.sigma, seed=config.seed)

    umap = UnwrapMap(bandwidth=config.N, dim=config.d, block=config.d1)
    d_red = umap.reduced_dim
    half_eff = umap.eff_bandwidth // 2
    max_outer = config.max_outer_iterations or 10 * d_red

    freqs_truth = unwrap_freq_matrix(truth.freq_array(), umap)
    coeffs_truth = truth.coeff_array()

    found: dict[tuple[int, ...], complex] = {}
    samples_used = 0
    sample_seconds = 0.0
    stream = 0
    i = 0

    def gather(plan: SamplePlan) -> np.ndarray:
        nonlocal sample_seconds, samples_used
        t0 = time.perf_counter()
        values = gather_unwrapped(freqs_all, coeffs_all, plan, noise)
        sample_seconds += time.perf_counter() - t0
        samples_used += plan.p
        return values

    while len(found) < config.s and i < max_outer:
        s_star = config.s - len(found)
        sched = make_schedule(
            s_star, config.sigma, config.a_min, config.c1, config.c_sigma,
            config.beta, umap.eff_bandwidth,
        )
        p, M = sched.p, sched.M
        k_tilde = (i % d_red) + 1

        # Residual subtraction: found modes enter with negated coefficients.
        if found:
            freqs_all = np.vstack(
                [freqs_truth, np.array(list(found.keys()), dtype=np.int64)]
            )
            coeffs_all = np.concatenate(
                [coeffs_truth, -np.array(list(found.values()), dtype=np.complex128)]
            )
        else:
            freqs_all, coeffs_all = freqs_truth, coeffs_truth

        r0 = gather(SamplePlan(p=p, axis=k_tilde, stream=stream))
        stream += 1
        F0 = dft_forward(r0)
        bins = top_bins(F0, s_star).order
        Fu = F0[bins]
        dead = np.abs(Fu) < DEAD_BIN

        votes = np.zeros(s_star, dtype=np.int64)
        entries = np.zeros((d_red, s_star), dtype=np.float64)
        for alpha in range(M + 1):
            eps = float(sched.shifts[alpha])
            shifted = np.empty((d_red, s_star), dtype=np.complex128)
            for k in range(1, d_red + 1):
                r = gather(
                    SamplePlan(p=p, axis=k_tilde, shift_axis=k, shift_size=eps, stream=stream)
                )
                stream += 1
                shifted[k - 1] = dft_forward(r)[bins]

            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = shifted / Fu[None, :]
                fail = np.abs(np.abs(shifted) / np.abs(Fu)[None, :] - 1.0) > sched.tau
            fail |= dead[None, :]
            votes += np.any(fail, axis=0)

            ratio[:, dead] = 1.0  # keep the arithmetic finite; dead bins never accepted
            b = arg_halfopen(ratio) / (2 * np.pi)
            if alpha == 0:
                entries = b / eps
            else:
                entries += frac_centered(b - eps * entries) / eps
        final = np.copysign(np.floor(np.abs(entries) + 0.5), entries).astype(np.int64)

        accepted: list[CandidateState] = []
        for idx in range(s_star):
            if dead[idx]:
                continue
            if not accept_candidate(int(votes[idx]), M, config.eta):
                continue
            w_vec = final[:, idx]
            if np.any(np.abs(w_vec) > half_eff):
                continue
            try:
                rewrap_freq(w_vec, umap)
            except ValueError:
                continue  # not an unwrapped frequency: the candidate is junk
            accepted.append(
                CandidateState(
                    bin=int(bins[idx]),
                    entry_estimates=w_vec.astype(np.float64),
                    vote=int(votes[idx]),
                    coeff=estimate_coefficient(complex(Fu[idx]), p),
                )
            )

        # Conflicting candidates: the larger-magnitude coefficient wins.
        accepted.sort(key=lambda c: (-abs(c.coeff), tuple(c.entry_estimates)))
        for cand in accepted:
            key = tuple(int(x) for x in cand.entry_estimates)
            if key not in found:
                found[key] = cand.coeff
        i += 1

    modes = tuple(
        FourierMode(
            freq=tuple(int(x) for x in rewrap_freq(np.array(key, dtype=np.int64), umap)),
            coeff=coeff,
        )
        for key, coeff in found.items()
    )
    return RecoveryResult(
        modes=SparseSpectrum(modes=modes, bandwidth=config.N, dim=config.d),
        samples_used=samples_used,
        outer_iterations=i,
        converged=len(found) == config.s,
        sample_seconds=sample_seconds,
    )


def count_samples(result: RecoveryResult) -> int:
    """Signal evaluations consumed by a completed run."""
    return result.samples_used
