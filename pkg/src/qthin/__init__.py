"""Thinned linear array synthesis via inverse-QFT probability readout.

The package couples a dense statevector simulator (``qsim``) with classical
array-factor mathematics (``pattern``), ranks the readout probabilities of
the inverse-QFT output and keeps the minimum number of top-ranked elements
that satisfies a pattern feature within a threshold (``thinning``).  The
``cli`` module drives the validation, noise-robustness and sidelobe-level
experiments from config files.
"""

from .errors import (
    AllElementsOffError,
    ConfigError,
    EmptySidelobeRegionError,
    NoFeasibleThinningError,
    NoPeakError,
    ZeroNormError,
)
from .metrics import (
    FeatureSpec,
    PatternMatch,
    SidelobeRegion,
    SllMask,
    cost_pattern_match,
    cost_sll_mask,
    evaluate_feature,
    mask_violations,
    mean_sll,
    peak_sll,
    sidelobe_region,
    thinning_percentage,
)
from .noise import NoiseSpec, add_noise, snr_of
from .pattern import (
    AMPLITUDE,
    ISOPHORIC,
    ArrayLayout,
    PatternSamples,
    array_factor_direct,
    array_factor_interpolated,
    cyclic_shift,
    default_u_grid,
    dft_pattern_samples,
    idft_excitations,
    normalized_power_pattern,
    periodic_sinc,
    sample_directions,
)
from .qsim import (
    Gate,
    GateSequence,
    Statevector,
    apply_gate,
    build_iqft,
    build_qft,
    new_statevector,
    probabilities,
    run_circuit,
    sample_measurements,
)
from .reference import ReferenceSpec, chebyshev_reference, chebyshev_taper, layout_reference
from .thinning import (
    Ranking,
    ThinningResult,
    excitations_from,
    mask_string,
    prepare_input_state,
    rank_probabilities,
    read_probabilities,
    synthesize,
)

__version__ = "0.1.0"
