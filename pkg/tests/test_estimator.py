import math

import numpy as np
import pytest

from msfourier import (
    FourierMode,
    NoiseModel,
    SamplePlan,
    SparseSpectrum,
    UnwrapMap,
    accept_candidate,
    collision_test,
    estimate_coefficient,
    finalize_entry,
    gather_samples,
    initial_entry,
    make_schedule,
    reconstruct_entry,
    refine_entry,
)
from msfourier.dft import dft_forward
from msfourier.estimator import frac_centered


class TestSchedule:
    def test_benchmark_scale_values(self):
        sched = make_schedule(256, 0.512, 1.0, 2.0, 6.0, 2.5, 3368421)
        assert sched.p == 521  # max{512, 73.2} -> first prime >= 512
        assert sched.M == 17
        assert sched.tau == pytest.approx(6 * 0.512 / math.sqrt(521))
        assert sched.eps0 == pytest.approx(1 / (2 * 3368421))
        assert sched.delta == pytest.approx(1 / 7)  # min(1/4, 1/(2*2.5+2))
        assert len(sched.shifts) == sched.M + 1
        assert np.all(np.diff(sched.shifts) > 0)
        np.testing.assert_allclose(sched.shifts, sched.eps0 * 2.5 ** np.arange(18))

    def test_noiseless_schedule(self):
        sched = make_schedule(4, 0.0, 1.0, 2.0, 6.0, 2.5, 3368421)
        assert sched.p == 11  # first prime >= 2*4
        assert sched.tau == 1e-9  # floor replaces the exact zero

    def test_noise_floor_dominates(self):
        # c1 s* = 32 < 73.2 -> p from the noise term
        sched = make_schedule(16, 0.512, 1.0, 2.0, 6.0, 2.5, 3368421)
        assert sched.p == 79

    def test_validation(self):
        with pytest.raises(ValueError):
            make_schedule(0, 0.1, 1.0, 2.0, 6.0, 2.5, 99)
        with pytest.raises(ValueError):
            make_schedule(4, 0.1, 1.0, 2.0, 6.0, 1.0, 99)  # beta must exceed 1
        with pytest.raises(ValueError):
            make_schedule(4, -0.1, 1.0, 2.0, 6.0, 2.5, 99)
        with pytest.raises(ValueError):
            make_schedule(4, 0.1, 0.0, 2.0, 6.0, 2.5, 99)


class TestCollisionTest:
    def test_unit_modulus_ratio_passes(self):
        assert collision_test(5 + 0j, 5j, 0.01)

    def test_half_ratio_fails(self):
        assert not collision_test(5 + 0j, 2.5 + 0j, 0.01)

    def test_empty_bin_fails(self):
        assert not collision_test(0j, 1 + 0j, 0.5)

    def test_collided_bins_generically_fail(self):
        # two colliding modes: the shifted magnitude |a1 e^{i t1} + a2 e^{i t2}|
        # almost never matches |a1 + a2|
        rng = np.random.default_rng(9)
        failures = 0
        trials = 1000
        for _ in range(trials):
            a1, a2 = np.exp(2j * np.pi * rng.random(2))
            t1, t2 = 2 * np.pi * rng.random(2)
            unshifted = a1 + a2
            shifted = a1 * np.exp(1j * t1) + a2 * np.exp(1j * t2)
            if not collision_test(unshifted, shifted, 1e-6):
                failures += 1
        assert failures >= 0.99 * trials


class TestEntryEstimation:
    def test_initial_entry_examples(self):
        eps0 = 1 / 200
        assert initial_entry(np.exp(2j * np.pi * 7 * eps0), 1 + 0j, eps0) == pytest.approx(7.0)
        assert initial_entry(1 + 0j, 1 + 0j, eps0) == 0.0
        assert initial_entry(np.exp(2j * np.pi * -50 * eps0), 1 + 0j, eps0) == pytest.approx(-50.0)
        # branch [-pi, pi): the -N'/2 edge maps to -100, not +100
        assert initial_entry(np.exp(2j * np.pi * -100 * eps0), 1 + 0j, eps0) == pytest.approx(
            -100.0
        )

    def test_initial_entry_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            initial_entry(1 + 0j, 0j, 0.01)

    def test_refine_exact_phase_is_fixed_point(self):
        w = 137.0
        eps = 1 / 32
        b = frac_centered(eps * w)
        assert refine_entry(w, b, eps) == pytest.approx(w)

    def test_refine_recovers_small_offset(self):
        eps = 1 / 32
        b = frac_centered(eps * 103)
        assert refine_entry(100.0, b, eps) == pytest.approx(103.0)

    def test_refine_is_linear_in_phase_noise(self):
        eps = 1 / 32
        b = frac_centered(eps * 103 + 0.01)
        assert refine_entry(100.0, b, eps) == pytest.approx(103.0 + 0.01 / eps)

    def test_reconstruct_single_level(self):
        n_eff = 201
        eps0 = 1 / (2 * n_eff)
        for w in (-100, -1, 0, 57, 100):
            assert reconstruct_entry([eps0], [eps0 * w]) == pytest.approx(float(w))

    def test_reconstruct_exact_ladder(self):
        n_eff = 30000
        beta, w = 2.5, 12345
        eps0 = 1 / (2 * n_eff)
        M = math.floor(math.log(n_eff, beta)) + 1
        shifts = eps0 * beta ** np.arange(M + 1)
        phases = frac_centered(shifts * w)
        assert abs(reconstruct_entry(shifts, phases) - w) < 0.5

    def test_reconstruct_matches_folded_refinement(self):
        rng = np.random.default_rng(10)
        for _ in range(50):
            levels = rng.integers(2, 12)
            shifts = np.sort(rng.uniform(1e-6, 1.0, size=levels))
            shifts = np.unique(shifts)
            phases = rng.uniform(-0.5, 0.5, size=len(shifts))
            w = initial_entry(np.exp(2j * np.pi * phases[0]), 1 + 0j, shifts[0])
            for eps, b in zip(shifts[1:], phases[1:]):
                w = refine_entry(w, b, eps)
            assert reconstruct_entry(shifts, phases) == pytest.approx(w, abs=1e-9)

    def test_reconstruct_bound_under_phase_noise(self):
        # smaller sibling of the acceptance-suite reconstruction-bound check
        rng = np.random.default_rng(11)
        sched = make_schedule(4, 0.0, 1.0, 2.0, 6.0, 2.5, 3368421)
        bound = sched.delta / sched.eps0 * sched.beta ** -sched.M
        half = 3368421 // 2
        for _ in range(100):
            w = int(rng.integers(-half, half + 1))
            noise = rng.uniform(-sched.delta, sched.delta, size=sched.M + 1)
            phases = frac_centered(sched.shifts * w + noise)
            est = reconstruct_entry(sched.shifts, phases)
            assert abs(est - w) <= bound
            assert abs(est - w) < 0.5

    def test_validation(self):
        with pytest.raises(ValueError):
            reconstruct_entry([0.1, 0.05], [0.0, 0.0])  # not increasing
        with pytest.raises(ValueError):
            reconstruct_entry([0.1, 0.2], [0.0])
        with pytest.raises(ValueError):
            refine_entry(0.0, 0.0, 0.0)


def test_finalize_entry():
    assert finalize_entry(12344.7) == 12345
    assert finalize_entry(-0.4) == 0
    assert finalize_entry(2.5) == 3  # ties away from zero
    assert finalize_entry(-2.5) == -3


def test_accept_candidate():
    assert accept_candidate(0, 5, 0.25)
    assert not accept_candidate(5, 17, 0.25)  # 5 > 0.25 * 18
    assert accept_candidate(4, 17, 0.25)  # 4 <= 4.5
    with pytest.raises(ValueError):
        accept_candidate(20, 17, 0.25)


class TestCoefficientEstimate:
    def test_trivial(self):
        assert estimate_coefficient(5 + 0j, 5) == 1 + 0j

    def test_noiseless_mode(self):
        p, a = 11, 0.3 - 0.4j
        v = a * np.exp(2j * np.pi * 41 * np.arange(p) / p)
        F = dft_forward(v)
        assert abs(estimate_coefficient(F[41 % p], p) - a) <= 1e-9

    def test_noisy_error_scale(self):
        # mean coefficient error over streams stays within 3 sigma/sqrt(p)
        p, sigma, a = 521, 0.5, 1.0 + 0j
        spec = SparseSpectrum(modes=(FourierMode((3, 1), a),), bandwidth=8, dim=2)
        umap = UnwrapMap(bandwidth=8, dim=2, block=1)
        noise = NoiseModel(sigma=sigma, seed=21)
        errors = []
        for stream in range(300):
            vals = gather_samples(spec, umap, SamplePlan(p=p, axis=1, stream=stream), noise)
            est = estimate_coefficient(dft_forward(vals)[3 % p], p)
            errors.append(abs(est - a))
        assert np.mean(errors) <= 3 * sigma / math.sqrt(p)


def test_noise_error_scaling_for_entries():
    # median |w_hat - w| scales like sigma / sqrt(p) within a factor of 2
    spec = SparseSpectrum(modes=(FourierMode((3, 1), 1.0),), bandwidth=8, dim=2)
    umap = UnwrapMap(bandwidth=8, dim=2, block=1)
    eps0 = 1 / (2 * umap.eff_bandwidth)
    w_true = 3.0

    def median_error(p, sigma, n=300):
        noise = NoiseModel(sigma=sigma, seed=31)
        errs = []
        for stream in range(n):
            base = gather_samples(
                spec, umap, SamplePlan(p=p, axis=1, stream=2 * stream), noise
            )
            shifted = gather_samples(
                spec,
                umap,
                SamplePlan(p=p, axis=1, shift_axis=1, shift_size=eps0, stream=2 * stream + 1),
                noise,
            )
            m = 3 % p
            est = initial_entry(dft_forward(shifted)[m], dft_forward(base)[m], eps0)
            errs.append(abs(est - w_true))
        return float(np.median(errs))

    base = median_error(31, 0.125)
    assert 2.0 <= median_error(31, 0.5) / base <= 8.0  # 4x sigma -> ~4x error
    assert 0.25 <= median_error(127, 0.125) / base <= 1.0  # ~4x p -> ~x/2 error


def test_lee_norm_bound():
    # || Arg(g + n) - Arg(g) ||_{2 pi Z} <= (pi/2) |n/g| whenever |g| >= |n|
    rng = np.random.default_rng(12)
    n_pairs = 10**5
    g = rng.standard_normal(n_pairs) + 1j * rng.standard_normal(n_pairs)
    ratio = rng.uniform(0, 1, size=n_pairs) * np.exp(2j * np.pi * rng.random(n_pairs))
    nu = g * ratio  # |nu| <= |g| by construction
    diff = np.angle(g + nu) - np.angle(g)
    lee = np.abs(diff - 2 * np.pi * np.round(diff / (2 * np.pi)))
    assert np.all(lee <= (np.pi / 2) * np.abs(ratio) + 1e-12)
