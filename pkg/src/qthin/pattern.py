"""Classical linear-array mathematics.

Element spacing ``d`` is expressed in wavelengths throughout, so the phase of
element ``n`` seen from direction cosine ``u`` is ``2*pi*d*u*n``.  Pattern
samples and excitations are tied together by the DFT pair

    A_m = sum_n w_n exp(-2j*pi*n*m/N)        (samples at u_m = -m/(N*d))
    w_n = (1/N) sum_m A_m exp(+2j*pi*m*n/N)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AllElementsOffError

ISOPHORIC = "isophoric"
AMPLITUDE = "amplitude"

# keep the scratch arrays of chunked evaluations below ~64 MB
_CHUNK_ELEMENTS = 4_000_000


@dataclass(frozen=True)
class PatternSamples:
    """N complex array-factor samples plus the lattice spacing in wavelengths."""

    samples: np.ndarray
    spacing_d: float

    def __post_init__(self):
        object.__setattr__(self, "samples", np.asarray(self.samples, dtype=complex))
        if self.samples.ndim != 1 or self.samples.size < 2:
            raise ValueError("need at least 2 pattern samples")
        if not self.spacing_d > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing_d}")

    @property
    def n_samples(self) -> int:
        return self.samples.size


@dataclass(frozen=True)
class ArrayLayout:
    """A thinned layout: on/off mask plus nonnegative real excitations.

    Off elements must carry zero excitation; isophoric layouts additionally
    restrict on-element excitations to exactly 1.
    """

    n_elements: int
    spacing_d: float
    thinning: np.ndarray
    excitations: np.ndarray
    mode: str

    def __post_init__(self):
        b = np.asarray(self.thinning, dtype=bool)
        w = np.asarray(self.excitations, dtype=float)
        object.__setattr__(self, "thinning", b)
        object.__setattr__(self, "excitations", w)
        if b.shape != (self.n_elements,) or w.shape != (self.n_elements,):
            raise ValueError("thinning and excitations must have length n_elements")
        if not self.spacing_d > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing_d}")
        if np.any(w < 0):
            raise ValueError("excitations must be nonnegative")
        if np.any(w[~b] != 0):
            raise ValueError("off elements must have zero excitation")
        if self.mode not in (ISOPHORIC, AMPLITUDE):
            raise ValueError(f"unknown excitation mode {self.mode!r}")
        if self.mode == ISOPHORIC and np.any((w != 0) & (w != 1)):
            raise ValueError("isophoric excitations must be 0 or 1")

    @property
    def active_indices(self) -> np.ndarray:
        return np.flatnonzero(self.thinning)

    @property
    def k_active(self) -> int:
        return int(np.count_nonzero(self.thinning))


def default_u_grid(n_elements: int) -> np.ndarray:
    """Uniform evaluation grid over [-1, 1] with 16 points per element."""
    return np.linspace(-1.0, 1.0, 16 * n_elements)


def dft_pattern_samples(excitations) -> np.ndarray:
    """Pattern samples A_m = sum_n w_n exp(-2j*pi*n*m/N)."""
    w = np.asarray(excitations, dtype=complex)
    if w.size < 2:
        raise ValueError("need at least 2 excitations")
    return np.fft.fft(w)


def idft_excitations(samples) -> np.ndarray:
    """Excitations w_n = (1/N) sum_m A_m exp(+2j*pi*m*n/N); inverse of the above."""
    a = np.asarray(samples, dtype=complex)
    if a.size < 2:
        raise ValueError("need at least 2 samples")
    return np.fft.ifft(a)


def sample_directions(n_samples: int, spacing_d: float) -> np.ndarray:
    """Direction cosines of the pattern samples, u_m = -m/(N*d).

    Raw values are folded into the principal grating period (-1/(2d), 1/(2d)]
    by adding integer multiples of 1/d; for d = 1/2 that interval is exactly
    (-1, 1].  Spacings above half a wavelength are rejected because the
    visible range would alias ambiguously.
    """
    if not spacing_d > 0:
        raise ValueError(f"spacing must be positive, got {spacing_d}")
    period = 1.0 / spacing_d
    if period < 2.0:
        raise ValueError(
            f"grating period 1/d = {period} is below the visible range; "
            "wrapping requires d <= 0.5 wavelengths"
        )
    m = np.arange(n_samples)
    u = -m / (n_samples * spacing_d)
    return u - period * np.ceil(u / period - 0.5)


def cyclic_shift(samples) -> np.ndarray:
    """Half-period rotation: output[m] = input[(m + N/2) mod N]."""
    a = np.asarray(samples)
    if a.size % 2:
        raise ValueError(f"cyclic shift needs an even length, got {a.size}")
    return np.roll(a, -(a.size // 2))


def periodic_sinc(x, n_terms: int):
    """Dirichlet kernel sin(N*x) / (N*sin(x)).

    The removable singularities at x = m*pi take their analytic limit
    (-1)**(m*(N-1)), so the function is finite everywhere.
    """
    if n_terms < 1:
        raise ValueError(f"n_terms must be >= 1, got {n_terms}")
    x_arr = np.asarray(x, dtype=float)
    s = np.sin(x_arr)
    near_pole = np.abs(s) < 1e-12
    m = np.rint(x_arr / np.pi).astype(np.int64)
    limit = np.where((m * (n_terms - 1)) % 2 == 0, 1.0, -1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        value = np.sin(n_terms * x_arr) / (n_terms * s)
    out = np.where(near_pole, limit, value)
    return float(out) if np.ndim(x) == 0 else out


def array_factor_interpolated(pattern: PatternSamples, u):
    """Continuous array factor reconstructed from its N samples.

    Each sample is weighted by the Dirichlet kernel together with the phase
    factor exp(j(N-1)(pi*d*u + m*pi/N)) that references the pattern to
    element 0; with that factor the reconstruction is periodic in u with
    period 1/d and agrees exactly with the direct evaluation of the
    corresponding excitations.

    The kernel is evaluated in factored form: with x = pi*d*u + pi*m/N, both
    exp(j(N-1)x) and sin(N*x) = (-1)**m * sin(N*pi*d*u) split into per-u and
    per-m parts, leaving only the 1/sin(x) table as two-dimensional work.
    """
    a = pattern.samples
    n = pattern.n_samples
    d = pattern.spacing_d
    u_arr = np.atleast_1d(np.asarray(u, dtype=float))
    out = np.empty(u_arr.size, dtype=complex)
    x_m = np.pi * np.arange(n) / n
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    coeff = a * np.exp(1j * (n - 1) * x_m) * signs / n
    step = max(1, _CHUNK_ELEMENTS // n)
    for lo in range(0, u_arr.size, step):
        x_u = np.pi * d * u_arr[lo : lo + step]
        denom = np.sin(x_u[:, None] + x_m[None, :])
        pole = np.abs(denom) < 1e-12
        inv = np.empty_like(denom)
        np.divide(1.0, denom, out=inv, where=~pole)
        inv[pole] = 0.0
        chunk = np.exp(1j * (n - 1) * x_u) * np.sin(n * x_u) * (inv @ coeff)
        if pole.any():
            # exact limit of the full kernel at the removable singularities
            rows, cols = np.nonzero(pole)
            x_pole = x_u[rows] + x_m[cols]
            k = np.rint(x_pole / np.pi).astype(np.int64)
            limit = np.where((k * (n - 1)) % 2 == 0, 1.0, -1.0)
            np.add.at(chunk, rows, a[cols] * np.exp(1j * (n - 1) * x_pole) * limit)
        out[lo : lo + step] = chunk
    return complex(out[0]) if np.ndim(u) == 0 else out


def array_factor_direct(layout: ArrayLayout, u):
    """A(u) = sum_n w_n b_n exp(2j*pi*d*u*n) over the active elements."""
    act = layout.active_indices
    if act.size == 0:
        return complex(0.0) if np.ndim(u) == 0 else np.zeros(np.size(u), dtype=complex)
    w = layout.excitations[act].astype(complex)
    u_arr = np.atleast_1d(np.asarray(u, dtype=float))
    out = np.empty(u_arr.size, dtype=complex)
    step = max(1, _CHUNK_ELEMENTS // act.size)
    for lo in range(0, u_arr.size, step):
        phases = np.exp(
            2j * np.pi * layout.spacing_d * u_arr[lo : lo + step, None] * act[None, :]
        )
        out[lo : lo + step] = phases @ w
    return complex(out[0]) if np.ndim(u) == 0 else out


def normalized_power_pattern(layout: ArrayLayout, u_grid) -> np.ndarray:
    """|A(u)|^2 normalized to a unit peak over the grid."""
    u = np.asarray(u_grid, dtype=float)
    if u.size == 0:
        raise ValueError("u_grid must be nonempty")
    if u.min() < -1.0 or u.max() > 1.0:
        raise ValueError("u_grid must lie within [-1, 1]")
    if layout.k_active == 0:
        raise AllElementsOffError("layout has no active elements")
    power = np.abs(array_factor_direct(layout, u)) ** 2
    peak = power.max()
    if peak == 0.0:
        raise AllElementsOffError("active excitations are all zero")
    return power / peak
