"""Cost functionals and radiation-performance indexes.

Two synthesis features are available: matching a full reference pattern in
the least-squares sense, and a one-sided sidelobe mask in linear power.  All
dB values are power quantities (10*log10).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import (
    AllElementsOffError,
    EmptySidelobeRegionError,
    NoPeakError,
    ZeroNormError,
)
from .pattern import (
    ArrayLayout,
    PatternSamples,
    array_factor_direct,
    array_factor_interpolated,
    normalized_power_pattern,
)


@dataclass(frozen=True)
class PatternMatch:
    """Feature: squared distance to a reference pattern over the u grid."""

    reference: PatternSamples
    u_grid: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "u_grid", np.asarray(self.u_grid, dtype=float))


@dataclass(frozen=True)
class SllMask:
    """Feature: one-sided sidelobe-level mask at ``sll_db`` (negative dB)."""

    sll_db: float
    u_grid: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "u_grid", np.asarray(self.u_grid, dtype=float))
        if not self.sll_db < 0:
            raise ValueError(f"mask level must be negative dB, got {self.sll_db}")


FeatureSpec = Union[PatternMatch, SllMask]


@dataclass(frozen=True)
class SidelobeRegion:
    """Disjoint u intervals outside the main lobe (first-null to first-null)."""

    intervals: tuple[tuple[float, float], ...]

    @property
    def is_empty(self) -> bool:
        return len(self.intervals) == 0


def power_to_db(power):
    """10*log10 of a linear power quantity."""
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(power)


def db_to_power(level_db):
    return 10.0 ** (np.asarray(level_db, dtype=float) / 10.0)


def sidelobe_region(power, u_grid) -> SidelobeRegion:
    """Everything outside the open interval between the first nulls.

    Nulls are the first strict local minima on either side of the global
    peak; a side without an interior minimum contributes nothing.
    """
    p = np.asarray(power, dtype=float)
    u = np.asarray(u_grid, dtype=float)
    if p.shape != u.shape or p.size < 3:
        raise ValueError("power and u_grid must be matching vectors of length >= 3")
    if p.max() - p.min() < 1e-15 * max(1.0, p.max()):
        raise NoPeakError("pattern is flat; no main-beam peak to exclude")
    peak = int(np.argmax(p))
    interior_minima = np.flatnonzero((p[1:-1] < p[:-2]) & (p[1:-1] < p[2:])) + 1
    lefts = interior_minima[interior_minima < peak]
    rights = interior_minima[interior_minima > peak]
    intervals = []
    if lefts.size:
        intervals.append((float(u[0]), float(u[lefts.max()])))
    if rights.size:
        intervals.append((float(u[rights.min()]), float(u[-1])))
    return SidelobeRegion(tuple(intervals))


def region_mask(omega: SidelobeRegion, u_grid) -> np.ndarray:
    """Boolean grid mask of the sidelobe region (boundaries are grid points)."""
    u = np.asarray(u_grid, dtype=float)
    tol = 1e-9 * max(1.0, float(np.max(np.abs(u))))
    mask = np.zeros(u.size, dtype=bool)
    for lo, hi in omega.intervals:
        mask |= (u >= lo - tol) & (u <= hi + tol)
    return mask


def _interval_slices(omega: SidelobeRegion, u: np.ndarray):
    tol = 1e-9 * max(1.0, float(np.max(np.abs(u))))
    for lo, hi in omega.intervals:
        i0 = int(np.searchsorted(u, lo - tol, side="left"))
        i1 = int(np.searchsorted(u, hi + tol, side="right"))
        yield slice(i0, i1)


def _integrate_region(values: np.ndarray, u: np.ndarray, omega: SidelobeRegion) -> float:
    total = 0.0
    for sl in _interval_slices(omega, u):
        if sl.stop - sl.start >= 2:
            total += float(np.trapezoid(values[sl], u[sl]))
    return total


def _peak_normalized(curve: np.ndarray) -> np.ndarray:
    peak = float(np.abs(curve).max())
    if peak == 0.0:
        raise ZeroNormError("pattern is identically zero")
    return curve / peak


def _pattern_match_cost(layout: ArrayLayout, ref_unit: np.ndarray, u: np.ndarray) -> float:
    if layout.k_active == 0:
        raise AllElementsOffError("layout has no active elements")
    candidate = _peak_normalized(array_factor_direct(layout, u))
    return float(np.trapezoid(np.abs(candidate - ref_unit) ** 2, u))


def cost_pattern_match(layout: ArrayLayout, reference: PatternSamples, u_grid) -> float:
    """Integral of |A(u|B) - A_ref(u)|^2 over the grid, both peak-normalized."""
    u = np.asarray(u_grid, dtype=float)
    ref_unit = _peak_normalized(array_factor_interpolated(reference, u))
    return _pattern_match_cost(layout, ref_unit, u)


def cost_sll_mask(power, u_grid, omega: SidelobeRegion, sll_ref_db: float) -> float:
    """One-sided hinge cost: integral over the region of max(0, P - s)^2
    with s the mask level in linear power."""
    if omega.is_empty:
        raise EmptySidelobeRegionError("sidelobe region is empty")
    u = np.asarray(u_grid, dtype=float)
    p = np.asarray(power, dtype=float)
    hinge = np.maximum(0.0, p - db_to_power(sll_ref_db))
    return _integrate_region(hinge**2, u, omega)


def peak_sll(power, u_grid, omega: SidelobeRegion) -> float:
    """Peak sidelobe level in dB relative to the (unit) pattern peak."""
    if omega.is_empty:
        raise EmptySidelobeRegionError("sidelobe region is empty")
    p = np.asarray(power, dtype=float)
    u = np.asarray(u_grid, dtype=float)
    mask = region_mask(omega, u)
    return float(power_to_db(p[mask].max()))


def mean_sll(power, u_grid, omega: SidelobeRegion) -> float:
    """Average sidelobe level: 10*log10 of half the integral of P over the region."""
    if omega.is_empty:
        raise EmptySidelobeRegionError("sidelobe region is empty")
    u = np.asarray(u_grid, dtype=float)
    p = np.asarray(power, dtype=float)
    return float(power_to_db(0.5 * _integrate_region(p, u, omega)))


def mask_violations(power, u_grid, omega: SidelobeRegion, sll_ref_db: float) -> int:
    """Number of grid points in the region whose power exceeds the mask.

    Grid-dependent by construction; comparable only on a fixed grid.
    """
    p = np.asarray(power, dtype=float)
    u = np.asarray(u_grid, dtype=float)
    mask = region_mask(omega, u)
    return int(np.count_nonzero(p[mask] > db_to_power(sll_ref_db)))


def thinning_percentage(n_elements: int, k_active: int) -> float:
    """100 * (N - K) / N."""
    if not 1 <= k_active <= n_elements:
        raise ValueError(f"need 1 <= K <= N, got K={k_active}, N={n_elements}")
    return 100.0 * (n_elements - k_active) / n_elements


def feature_evaluator(feature: FeatureSpec) -> Callable[[ArrayLayout], float]:
    """Bind a feature to a reusable ``layout -> psi`` callable.

    For pattern matching the reference curve is interpolated once and reused
    across calls, which keeps K-scans cheap.
    """
    if isinstance(feature, PatternMatch):
        u = feature.u_grid
        ref_unit = _peak_normalized(array_factor_interpolated(feature.reference, u))

        def evaluate(layout: ArrayLayout) -> float:
            return _pattern_match_cost(layout, ref_unit, u)

    elif isinstance(feature, SllMask):
        u = feature.u_grid

        def evaluate(layout: ArrayLayout) -> float:
            p = normalized_power_pattern(layout, u)
            omega = sidelobe_region(p, u)
            return cost_sll_mask(p, u, omega, feature.sll_db)

    else:
        raise TypeError(f"unknown feature {feature!r}")
    return evaluate


def evaluate_feature(layout: ArrayLayout, feature: FeatureSpec) -> float:
    """One-shot feature cost for a single layout."""
    return feature_evaluator(feature)(layout)
