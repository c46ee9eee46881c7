"""Additive complex Gaussian perturbation of input amplitudes at an exact SNR.

The drawn noise vector is rescaled so that the realized energy ratio hits the
target exactly, which makes sweeps reproducible without ensemble averaging.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ZeroNormError


@dataclass(frozen=True)
class NoiseSpec:
    """Target SNR in dB (None means no noise) and the draw seed."""

    snr_db: float | None
    seed: int = 0

    def __post_init__(self):
        if self.snr_db is not None and not math.isfinite(self.snr_db):
            raise ValueError(f"snr_db must be finite, got {self.snr_db}")


def add_noise(amplitudes, spec: NoiseSpec | None) -> np.ndarray:
    """Add i.i.d. zero-mean complex Gaussian noise scaled to the target SNR.

    Real and imaginary parts are independent N(0, sigma^2/2) draws; the whole
    noise vector is then rescaled so the signal-to-noise energy ratio equals
    the target exactly.  A spec of None (or snr_db None) returns the input
    unchanged.
    """
    a = np.asarray(amplitudes, dtype=complex)
    if spec is None or spec.snr_db is None:
        return a.copy()
    signal_energy = float(np.sum(np.abs(a) ** 2))
    if signal_energy == 0.0:
        raise ZeroNormError("cannot set an SNR against a zero-energy signal")
    rng = np.random.default_rng(spec.seed)
    nu = (rng.standard_normal(a.size) + 1j * rng.standard_normal(a.size)) * math.sqrt(0.5)
    target_energy = signal_energy / 10.0 ** (spec.snr_db / 10.0)
    nu *= math.sqrt(target_energy / float(np.sum(np.abs(nu) ** 2)))
    return a + nu


def snr_of(signal, noise) -> float:
    """10*log10 of the energy ratio; +inf when the noise carries no energy."""
    signal_energy = float(np.sum(np.abs(np.asarray(signal, dtype=complex)) ** 2))
    noise_energy = float(np.sum(np.abs(np.asarray(noise, dtype=complex)) ** 2))
    if noise_energy == 0.0:
        return math.inf
    return 10.0 * math.log10(signal_energy / noise_energy)
