"""Reference-pattern generators feeding the synthesis pipeline."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.signal import windows

from .pattern import PatternSamples, dft_pattern_samples


def layout_reference(n_elements: int, spacing_d: float, indices) -> PatternSamples:
    """Pattern samples of an isophoric layout with the given active indices."""
    idx = np.asarray(indices, dtype=int)
    if idx.size == 0:
        raise ValueError("need at least one active index")
    if idx.min() < 0 or idx.max() >= n_elements:
        raise IndexError(f"active indices must lie in [0, {n_elements}), got {idx}")
    if np.unique(idx).size != idx.size:
        raise ValueError(f"duplicate active index in {idx}")
    excitations = np.zeros(n_elements)
    excitations[idx] = 1.0
    return PatternSamples(dft_pattern_samples(excitations), spacing_d)


def chebyshev_taper(n_elements: int, sll_db: float) -> np.ndarray:
    """Dolph-Chebyshev excitations with equiripple sidelobes at ``sll_db``."""
    if not sll_db < 0:
        raise ValueError(f"sidelobe level must be negative dB, got {sll_db}")
    if n_elements < 4:
        raise ValueError(f"need at least 4 elements, got {n_elements}")
    with warnings.catch_warnings():
        # chebwin warns about noise bandwidth below 45 dB attenuation; that
        # concerns spectral estimation, not aperture tapering.
        warnings.simplefilter("ignore", UserWarning)
        return windows.chebwin(n_elements, at=-sll_db)


def chebyshev_reference(n_elements: int, spacing_d: float, sll_db: float) -> PatternSamples:
    """Pattern samples of the Dolph-Chebyshev taper at the requested level."""
    return PatternSamples(dft_pattern_samples(chebyshev_taper(n_elements, sll_db)), spacing_d)


@dataclass(frozen=True)
class ReferenceSpec:
    """Declarative reference choice: a known layout or a Chebyshev taper."""

    kind: str  # "layout" | "chebyshev"
    n_elements: int
    spacing_d: float
    indices: tuple[int, ...] = ()
    sll_db: float | None = None

    def build(self) -> PatternSamples:
        if self.kind == "layout":
            return layout_reference(self.n_elements, self.spacing_d, self.indices)
        if self.kind == "chebyshev":
            if self.sll_db is None:
                raise ValueError("chebyshev reference needs sll_db")
            return chebyshev_reference(self.n_elements, self.spacing_d, self.sll_db)
        raise ValueError(f"unknown reference kind {self.kind!r}")
