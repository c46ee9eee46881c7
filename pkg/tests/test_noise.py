import math

import numpy as np
import pytest

from qthin.errors import ZeroNormError
from qthin.noise import NoiseSpec, add_noise, snr_of


def unit_signal(n=256, seed=0):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return a / np.linalg.norm(a)


def test_none_spec_returns_input_unchanged():
    a = unit_signal()
    np.testing.assert_array_equal(add_noise(a, None), a)
    np.testing.assert_array_equal(add_noise(a, NoiseSpec(None, seed=3)), a)


def test_zero_db_noise_energy_equals_signal_energy():
    a = unit_signal()
    noisy = add_noise(a, NoiseSpec(0.0, seed=1))
    noise_energy = np.sum(np.abs(noisy - a) ** 2)
    assert noise_energy == pytest.approx(np.sum(np.abs(a) ** 2), rel=1e-12)


@pytest.mark.parametrize("target", [0.0, 10.0, 20.0, 37.5, 50.0])
@pytest.mark.parametrize("seed", [0, 1, 17])
def test_realized_snr_is_exact(target, seed):
    a = unit_signal()
    noisy = add_noise(a, NoiseSpec(target, seed=seed))
    assert snr_of(a, noisy - a) == pytest.approx(target, abs=1e-9)


def test_same_seed_is_bit_identical():
    a = unit_signal()
    x = add_noise(a, NoiseSpec(20.0, seed=5))
    y = add_noise(a, NoiseSpec(20.0, seed=5))
    np.testing.assert_array_equal(x, y)


def test_different_seeds_differ():
    a = unit_signal()
    x = add_noise(a, NoiseSpec(20.0, seed=5))
    y = add_noise(a, NoiseSpec(20.0, seed=6))
    assert np.any(x != y)


def test_noise_is_zero_mean_per_component():
    # pool draws over several seeds; component means stay well below 3 sigma / 100
    n = 1024
    a = unit_signal(n)
    draws = []
    for seed in range(10):
        draws.append(add_noise(a, NoiseSpec(0.0, seed=seed)) - a)
    nu = np.concatenate(draws)
    sigma = math.sqrt(1.0 / n)  # per-component scale at 0 dB
    assert abs(nu.real.mean()) < 3 * sigma / 100
    assert abs(nu.imag.mean()) < 3 * sigma / 100


def test_add_noise_rejects_zero_signal():
    with pytest.raises(ZeroNormError):
        add_noise(np.zeros(8, dtype=complex), NoiseSpec(10.0, seed=0))


def test_snr_of_basic_ratios():
    s = np.ones(4, dtype=complex)
    assert snr_of(s, s) == pytest.approx(0.0, abs=1e-12)
    assert snr_of(s, s * 0.1) == pytest.approx(20.0, abs=1e-12)


def test_snr_of_zero_noise_is_infinite():
    assert snr_of(np.ones(4), np.zeros(4)) == math.inf


def test_sweep_endpoints_are_representable():
    a = unit_signal()
    for target in (0.0, 50.0):
        noisy = add_noise(a, NoiseSpec(target, seed=2))
        assert snr_of(a, noisy - a) == pytest.approx(target, abs=1e-9)


def test_noise_spec_rejects_non_finite():
    with pytest.raises(ValueError):
        NoiseSpec(math.nan)
    with pytest.raises(ValueError):
        NoiseSpec(math.inf)
