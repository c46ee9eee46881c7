"""The four-step thinning pipeline.

Step 1 supplies a reference pattern, step 2 pushes its samples through the
inverse QFT and reads basis-state probabilities, step 3 ranks them (ties go
to the smaller element index), and step 4 keeps the minimum number K of
top-ranked elements whose layout drives the feature cost below the threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptySidelobeRegionError, NoFeasibleThinningError, NoPeakError
from .metrics import FeatureSpec, feature_evaluator, thinning_percentage
from .pattern import AMPLITUDE, ISOPHORIC, ArrayLayout, PatternSamples, cyclic_shift
from .qsim import (
    Statevector,
    build_iqft,
    new_statevector,
    probabilities,
    run_circuit,
    sample_measurements,
)


@dataclass(frozen=True)
class Ranking:
    """Descending probability order; equal values keep increasing index order."""

    order: np.ndarray
    sorted_p: np.ndarray


@dataclass(frozen=True)
class ThinningResult:
    layout: ArrayLayout
    k: int
    probabilities: np.ndarray
    ranking: Ranking
    psi: float
    eta: float

    def to_dict(self) -> dict:
        """JSON-ready summary (field names n, d, k, tau, eta, psi, mode, b, w, p)."""
        layout = self.layout
        return {
            "n": layout.n_elements,
            "d": layout.spacing_d,
            "k": self.k,
            "tau": thinning_percentage(layout.n_elements, self.k),
            "eta": self.eta,
            "psi": self.psi,
            "mode": layout.mode,
            "b": [int(x) for x in layout.thinning],
            "w": [float(x) for x in layout.excitations],
            "p": [float(x) for x in self.probabilities],
        }


def mask_string(thinning) -> str:
    """0/1 text mask, one character per element."""
    return "".join("1" if on else "0" for on in np.asarray(thinning, dtype=bool))


def prepare_input_state(reference: PatternSamples) -> Statevector:
    """Cyclically shift the reference samples and normalize them into a state."""
    return new_statevector(cyclic_shift(reference.samples))


def read_probabilities(state: Statevector, shots: int | None = None, seed: int = 0) -> np.ndarray:
    """Run the inverse QFT and read element probabilities.

    Exact mode (shots None) returns the squared output amplitudes; shots mode
    returns empirical frequencies from a seeded measurement histogram.
    """
    output = run_circuit(state, build_iqft(state.num_qubits))
    if shots is None:
        return probabilities(output)
    counts = sample_measurements(output, shots, seed)
    return counts / shots


def rank_probabilities(p) -> Ranking:
    """Stable descending sort; ties are broken by the smaller element index."""
    values = np.asarray(p, dtype=float)
    if np.any(values < 0):
        raise ValueError("probabilities must be nonnegative")
    order = np.argsort(-values, kind="stable")
    return Ranking(order, values[order])


def excitations_from(p, thinning, mode: str) -> np.ndarray:
    """Excitations per mode: 1.0 on active elements, or sqrt(p_n)."""
    values = np.asarray(p, dtype=float)
    on = np.asarray(thinning, dtype=bool)
    if values.shape != on.shape:
        raise ValueError("probabilities and thinning mask must have equal length")
    if mode == ISOPHORIC:
        w = on.astype(float)
    elif mode == AMPLITUDE:
        w = np.where(on, np.sqrt(np.maximum(values, 0.0)), 0.0)
    else:
        raise ValueError(f"unknown excitation mode {mode!r}")
    return w


def synthesize(
    p,
    reference: PatternSamples,
    feature: FeatureSpec,
    eta: float,
    mode: str = ISOPHORIC,
) -> ThinningResult:
    """Minimal-K synthesis against the matching threshold.

    Scans K = 1, 2, ... keeping the K top-ranked elements each time, and
    returns the first layout whose feature cost is <= eta, so every smaller K
    fails the test by construction.  K values whose pattern has no resolvable
    lobe structure (flat, or without interior nulls) cannot certify an SLL
    mask and are skipped as infeasible.
    """
    if not eta > 0:
        raise ValueError(f"threshold eta must be positive, got {eta}")
    values = np.asarray(p, dtype=float)
    n = reference.n_samples
    if values.shape != (n,):
        raise ValueError(f"expected {n} probabilities, got shape {values.shape}")
    if values.sum() <= 0:
        raise ValueError("probabilities sum to zero")
    ranking = rank_probabilities(values)
    evaluate = feature_evaluator(feature)
    for k in range(1, n + 1):
        thinning = np.zeros(n, dtype=bool)
        thinning[ranking.order[:k]] = True
        w = excitations_from(values, thinning, mode)
        layout = ArrayLayout(n, reference.spacing_d, thinning, w, mode)
        try:
            psi = evaluate(layout)
        except (NoPeakError, EmptySidelobeRegionError):
            continue
        if psi <= eta:
            return ThinningResult(layout, k, values, ranking, psi, eta)
    raise NoFeasibleThinningError(
        f"no layout with K <= {n} reaches psi <= {eta}; relax the value of eta "
        "or increase the number of candidate locations"
    )
