"""Benchmark command line: signal generation, recovery runs, parameter sweeps,
and a kernel benchmark.

Exit codes: 0 success, 2 recovery did not converge, 1 usage or I/O error.

The recover summary line is ``l1_error exact_rate samples runtime_ms sample_ms``
with runtime_ms excluding time spent evaluating signal samples (reported
separately as sample_ms).
"""

from __future__ import annotations

import csv
import sys
import time
from dataclasses import dataclass, replace

import click
import numpy as np

from . import _kernels
from .oracle import ComparisonReport, compare
from .recovery import RecoveryConfig, RecoveryResult, recover
from .sampler import NoiseModel
from .spectrum import FourierMode, SparseSpectrum, read_signal_file, write_signal_file
from .estimator import make_schedule
from .unwrap import effective_bandwidth

__all__ = ["SweepSpec", "cmd_generate", "cmd_recover", "cmd_sweep", "cli", "main"]

CSV_COLUMNS = [
    "variable", "value", "trial", "seed",
    "l1_error", "exact_rate", "samples", "runtime_ms", "sample_ms", "p", "M",
]


def random_spectrum(N: int, d: int, s: int, seed: int) -> SparseSpectrum:
    """s modes with unit-circle coefficients and distinct uniform frequencies."""
    if s > N**d:
        raise ValueError(f"cannot place {s} distinct modes in a {N}^{d} cube")
    rng = np.random.Generator(np.random.Philox(key=seed & (2**64 - 1)))
    coeffs = np.exp(2j * np.pi * rng.random(s))
    freqs: list[tuple[int, ...]] = []
    seen = set()
    while len(freqs) < s:
        draw = tuple(int(x) for x in rng.integers(-N // 2, N // 2, size=d))
        if draw not in seen:
            seen.add(draw)
            freqs.append(draw)
    modes = tuple(FourierMode(freq=w, coeff=a) for w, a in zip(freqs, coeffs))
    return SparseSpectrum(modes=modes, bandwidth=N, dim=d)


def cmd_generate(N: int, d: int, d1: int, s: int, seed: int, out) -> SparseSpectrum:
    """Write a random test signal in signal-spec format."""
    if d % d1 != 0:
        raise ValueError(f"d1={d1} must divide d={d}")
    spec = random_spectrum(N, d, s, seed)
    write_signal_file(spec, out)
    return spec


@dataclass
class RecoverOutcome:
    result: RecoveryResult
    report: ComparisonReport
    runtime_ms: float
    sample_ms: float

    def summary_line(self) -> str:
        return (
            f"{self.report.l1_coeff_error!r} {self.report.exact_freq_rate!r} "
            f"{self.result.samples_used} {self.runtime_ms:.3f} {self.sample_ms:.3f}"
        )


def cmd_recover(
    signal_path, config: RecoveryConfig, noise_kind: str = "complex-circular", out=None
) -> RecoverOutcome:
    """Run recovery against a signal file; optionally write the recovered modes."""
    truth = read_signal_file(signal_path)
    if len(truth) != config.s:
        config = replace(config, s=len(truth))
    noise = NoiseModel(sigma=config.sigma, seed=config.seed, kind=noise_kind)
    t0 = time.perf_counter()
    result = recover(config, truth, noise)
    elapsed = time.perf_counter() - t0
    if out is not None:
        write_signal_file(result.modes, out)
    report = compare(truth, result.modes)
    return RecoverOutcome(
        result=result,
        report=report,
        runtime_ms=(elapsed - result.sample_seconds) * 1e3,
        sample_ms=result.sample_seconds * 1e3,
    )


@dataclass
class SweepSpec:
    """One benchmark sweep: vary sigma or sparsity, hold the rest fixed."""

    variable: str  # "sigma" | "sparsity"
    values: list
    fixed: RecoveryConfig
    trials: int
    out_path: str
    noise_kind: str = "complex-circular"

    def __post_init__(self):
        if self.variable not in ("sigma", "sparsity"):
            raise ValueError(f"unknown sweep variable {self.variable!r}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not self.values or any(v <= 0 for v in self.values):
            raise ValueError("values must be nonempty and positive")


def _trial_seeds(master: int, value_idx: int, trial: int) -> tuple[int, int]:
    state = np.random.SeedSequence(
        entropy=master & (2**64 - 1), spawn_key=(value_idx, trial)
    ).generate_state(2, dtype=np.uint64)
    return int(state[0]), int(state[1])


def cmd_sweep(spec: SweepSpec) -> tuple[list[dict], bool]:
    """Run the sweep and write the CSV; returns (rows, all trials converged).

    Per (value, trial): a fresh random signal and noise stream from seeds
    derived deterministically off the fixed config's seed. One aggregate
    row (trial="mean") per value holds arithmetic means; runtime columns
    are wall-clock and not reproducible. p and M report the schedule of
    the first outer iteration.
    """
    rows: list[dict] = []
    all_converged = True
    for vi, value in enumerate(spec.values):
        if spec.variable == "sigma":
            cfg = replace(spec.fixed, sigma=float(value))
        else:
            cfg = replace(spec.fixed, s=int(value))
        sched = make_schedule(
            cfg.s, cfg.sigma, cfg.a_min, cfg.c1, cfg.c_sigma, cfg.beta,
            effective_bandwidth(cfg.N, cfg.d1),
        )
        trial_rows = []
        for trial in range(spec.trials):
            signal_seed, noise_seed = _trial_seeds(cfg.seed, vi, trial)
            truth = random_spectrum(cfg.N, cfg.d, cfg.s, signal_seed)
            noise = NoiseModel(sigma=cfg.sigma, seed=noise_seed, kind=spec.noise_kind)
            t0 = time.perf_counter()
            result = recover(cfg, truth, noise)
            elapsed = time.perf_counter() - t0
            all_converged &= result.converged
            report = compare(truth, result.modes)
            trial_rows.append({
                "variable": spec.variable,
                "value": value,
                "trial": trial,
                "seed": signal_seed,
                "l1_error": report.l1_coeff_error,
                "exact_rate": report.exact_freq_rate,
                "samples": result.samples_used,
                "runtime_ms": (elapsed - result.sample_seconds) * 1e3,
                "sample_ms": result.sample_seconds * 1e3,
                "p": sched.p,
                "M": sched.M,
            })
        mean = {
            "variable": spec.variable,
            "value": value,
            "trial": "mean",
            "seed": "",
        }
        for col in ("l1_error", "exact_rate", "samples", "runtime_ms", "sample_ms", "p", "M"):
            mean[col] = sum(r[col] for r in trial_rows) / len(trial_rows)
        rows.extend(trial_rows)
        rows.append(mean)
    with open(spec.out_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
    return rows, all_converged


def _config_options(fn):
    opts = [
        click.option("--sigma", type=float, default=0.0, show_default=True,
                     help="noise standard deviation"),
        click.option("--seed", type=int, default=0, show_default=True),
        click.option("--beta", type=float, default=2.5, show_default=True,
                     help="shift growth factor"),
        click.option("--c1", type=float, default=2.0, show_default=True,
                     help="sample-length multiple of sparsity"),
        click.option("--c-sigma", type=float, default=6.0, show_default=True,
                     help="noise-threshold constant"),
        click.option("--eta", type=float, default=0.25, show_default=True,
                     help="tolerated fraction of failed collision tests"),
        click.option("--noise-kind", type=click.Choice(["complex-circular", "real-only"]),
                     default="complex-circular", show_default=True),
        click.option("--max-outer", type=int, default=None,
                     help="outer iteration cap (default 10*d')"),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


@click.group()
def cli():
    """Multiscale sparse Fourier recovery benchmark."""


@cli.command("generate")
@click.option("--n", "N", type=int, required=True, help="bandwidth N (even)")
@click.option("--d", type=int, required=True, help="full dimension")
@click.option("--d1", type=int, default=1, show_default=True, help="unwrap block size")
@click.option("--sparsity", "s", type=int, required=True, help="number of modes")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def generate_command(N, d, d1, s, seed, out):
    """Generate a random test signal."""
    try:
        cmd_generate(N, d, d1, s, seed, out)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"wrote {s} modes to {out}")


@cli.command("recover")
@click.argument("signal", type=click.Path(exists=True, dir_okay=False))
@click.option("--d1", type=int, default=1, show_default=True, help="unwrap block size")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="write recovered modes here")
@_config_options
def recover_command(signal, d1, out, sigma, seed, beta, c1, c_sigma, eta,
                    noise_kind, max_outer):
    """Recover a signal file's modes; prints

    l1_error exact_rate samples runtime_ms sample_ms
    """
    truth_header = read_signal_file(signal)
    try:
        config = RecoveryConfig(
            N=truth_header.bandwidth, d=truth_header.dim, d1=d1, s=len(truth_header),
            sigma=sigma, c1=c1, c_sigma=c_sigma, eta=eta, beta=beta, seed=seed,
            max_outer_iterations=max_outer,
        )
    except ValueError as exc:
        raise click.ClickException(str(exc))
    outcome = cmd_recover(signal, config, noise_kind=noise_kind, out=out)
    click.echo(outcome.summary_line())
    if not outcome.result.converged:
        click.echo("warning: recovery did not converge", err=True)
        raise click.exceptions.Exit(2)


@cli.command("sweep")
@click.option("--variable", type=click.Choice(["sigma", "sparsity"]), required=True)
@click.option("--values", required=True,
              help="comma-separated sweep values, e.g. 0.001,0.002,0.004")
@click.option("--n", "N", type=int, required=True)
@click.option("--d", type=int, required=True)
@click.option("--d1", type=int, default=1, show_default=True)
@click.option("--sparsity", "s", type=int, default=None,
              help="fixed sparsity (sigma sweeps)")
@click.option("--trials", type=int, default=10, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@_config_options
def sweep_command(variable, values, N, d, d1, s, trials, out, sigma, seed, beta,
                  c1, c_sigma, eta, noise_kind, max_outer):
    """Sweep sigma or sparsity and write per-trial + mean rows to a CSV."""
    try:
        parsed = [float(v) if variable == "sigma" else int(v) for v in values.split(",")]
    except ValueError as exc:
        raise click.UsageError(f"bad --values: {exc}")
    if variable == "sigma" and s is None:
        raise click.UsageError("--sparsity is required for sigma sweeps")
    try:
        fixed = RecoveryConfig(
            N=N, d=d, d1=d1, s=s or 1, sigma=sigma, c1=c1, c_sigma=c_sigma, eta=eta,
            beta=beta, seed=seed, max_outer_iterations=max_outer,
        )
        spec = SweepSpec(variable=variable, values=parsed, fixed=fixed,
                         trials=trials, out_path=out, noise_kind=noise_kind)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    _, converged = cmd_sweep(spec)
    click.echo(f"wrote {out}")
    if not converged:
        click.echo("warning: some trials did not converge", err=True)
        raise click.exceptions.Exit(2)


@cli.command("bench")
@click.option("--p", type=int, default=521, show_default=True, help="sample length")
@click.option("--modes", type=int, default=256, show_default=True)
@click.option("--repeat", type=int, default=100, show_default=True)
def bench_command(p, modes, repeat):
    """Time the mode-sum kernel on every available backend."""
    rng = np.random.default_rng(0)
    residues = rng.integers(0, p, size=modes)
    weights = np.exp(2j * np.pi * rng.random(modes))
    backends = _kernels.available_backends()
    reference = None
    timings = {}
    for name, fn in backends.items():
        fn(residues, weights, p)  # warm-up
        t0 = time.perf_counter()
        for _ in range(repeat):
            out = fn(residues, weights, p)
        timings[name] = (time.perf_counter() - t0) / repeat
        if reference is None:
            reference = out
        elif not np.allclose(out, reference, atol=1e-9 * modes):
            raise click.ClickException(f"backend {name} disagrees with reference")
    click.echo(f"mode_sum p={p} modes={modes} (active backend: {_kernels.BACKEND})")
    base = max(timings.values())
    for name, dt in sorted(timings.items()):
        click.echo(f"  {name:>6}: {dt * 1e6:9.1f} us/call  ({base / dt:4.1f}x)")
    if "native" not in timings:
        click.echo("  (native kernel not built; numpy fallback only)")


def main(argv=None):
    """Console entry point with the documented exit-code mapping."""
    try:
        # Non-standalone mode returns the code of an explicit ctx.exit/Exit.
        rv = cli.main(args=argv, standalone_mode=False)
    except click.ClickException as exc:  # includes UsageError
        exc.show()
        sys.exit(1)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        sys.exit(1)
    sys.exit(rv if isinstance(rv, int) else 0)


if __name__ == "__main__":
    main()
