import numpy as np
import pytest

from qthin.errors import NoFeasibleThinningError, ZeroNormError
from qthin.metrics import PatternMatch, SllMask, evaluate_feature
from qthin.pattern import default_u_grid
from qthin.reference import layout_reference
from qthin.thinning import (
    excitations_from,
    mask_string,
    prepare_input_state,
    rank_probabilities,
    read_probabilities,
    synthesize,
)

VALIDATION_INDICES = (0, 1, 3, 4, 5, 7, 9)


def validation_probabilities(n=256):
    reference = layout_reference(n, 0.5, VALIDATION_INDICES)
    state = prepare_input_state(reference)
    return reference, read_probabilities(state)


# ---------------------------------------------------------------------------
# state preparation and probability readout


def test_prepare_shifts_then_normalizes():
    from qthin.pattern import PatternSamples

    state = prepare_input_state(PatternSamples(np.array([0, 0, 3.0, 0]), 0.5))
    np.testing.assert_allclose(state.amplitudes, [1, 0, 0, 0])
    assert state.num_qubits == 2


def test_prepare_validation_case_uses_ten_qubits():
    reference = layout_reference(1024, 0.5, VALIDATION_INDICES)
    assert prepare_input_state(reference).num_qubits == 10


def test_prepare_rejects_zero_pattern():
    from qthin.pattern import PatternSamples

    with pytest.raises(ZeroNormError):
        prepare_input_state(PatternSamples(np.zeros(4), 0.5))


def test_exact_probabilities_recover_equal_actives():
    _, p = validation_probabilities()
    np.testing.assert_allclose(p[list(VALIDATION_INDICES)], 1 / 7, atol=1e-12)
    off = np.setdiff1d(np.arange(256), VALIDATION_INDICES)
    assert np.all(p[off] < 1e-12)


def test_shots_mode_support_is_reference_support():
    reference = layout_reference(256, 0.5, VALIDATION_INDICES)
    state = prepare_input_state(reference)
    p = read_probabilities(state, shots=512, seed=0)
    assert set(np.flatnonzero(p)) <= set(VALIDATION_INDICES)
    assert p.sum() == pytest.approx(1.0)


def test_single_shot_gives_single_index():
    reference = layout_reference(64, 0.5, VALIDATION_INDICES)
    state = prepare_input_state(reference)
    p = read_probabilities(state, shots=1, seed=9)
    assert np.count_nonzero(p) == 1
    assert p.max() == 1.0


# ---------------------------------------------------------------------------
# ranking


def test_rank_descending():
    ranking = rank_probabilities([0.1, 0.5, 0.4])
    np.testing.assert_array_equal(ranking.order, [1, 2, 0])
    np.testing.assert_allclose(ranking.sorted_p, [0.5, 0.4, 0.1])


def test_rank_ties_prefer_smaller_index():
    ranking = rank_probabilities([0.5, 0.5])
    np.testing.assert_array_equal(ranking.order, [0, 1])


def test_rank_all_equal_is_identity():
    ranking = rank_probabilities(np.full(8, 0.125))
    np.testing.assert_array_equal(ranking.order, np.arange(8))


def test_rank_rejects_negative():
    with pytest.raises(ValueError):
        rank_probabilities([0.2, -0.1])


# ---------------------------------------------------------------------------
# excitation assignment


def test_excitations_isophoric():
    w = excitations_from([0.7, 0.2, 0.1], np.array([True, False, True]), "isophoric")
    np.testing.assert_array_equal(w, [1.0, 0.0, 1.0])


def test_excitations_amplitude_square_root():
    w = excitations_from([0.25, 0.75], np.array([True, True]), "amplitude")
    np.testing.assert_allclose(w, [0.5, np.sqrt(0.75)])


def test_excitations_amplitude_zero_where_off():
    w = excitations_from([0.25, 0.75], np.array([True, False]), "amplitude")
    assert w[1] == 0.0


def test_excitations_rejects_unknown_mode():
    with pytest.raises(ValueError, match="mode"):
        excitations_from([1.0], np.array([True]), "tapered")


# ---------------------------------------------------------------------------
# synthesis


def test_synthesize_recovers_validation_layout():
    reference, p = validation_probabilities()
    grid = default_u_grid(256)
    result = synthesize(p, reference, PatternMatch(reference, grid), 1e-6, mode="isophoric")
    assert result.k == 7
    np.testing.assert_array_equal(result.layout.active_indices, VALIDATION_INDICES)
    assert result.psi <= 1e-12
    assert result.psi <= result.eta


def test_synthesize_huge_eta_returns_single_element():
    reference, p = validation_probabilities(n=64)
    grid = default_u_grid(64)
    result = synthesize(p, reference, PatternMatch(reference, grid), 1e9, mode="isophoric")
    assert result.k == 1


def test_synthesize_minimality():
    reference, p = validation_probabilities(n=64)
    grid = default_u_grid(64)
    feature = PatternMatch(reference, grid)
    result = synthesize(p, reference, feature, 1e-6, mode="isophoric")
    ranking = result.ranking
    for smaller_k in range(1, result.k):
        b = np.zeros(64, dtype=bool)
        b[ranking.order[:smaller_k]] = True
        w = excitations_from(p, b, "isophoric")
        from qthin.pattern import ArrayLayout

        psi = evaluate_feature(ArrayLayout(64, 0.5, b, w, "isophoric"), feature)
        assert psi > result.eta


def test_synthesize_infeasible_raises_with_guidance():
    reference = layout_reference(16, 0.5, [0, 5])
    p = np.zeros(16)
    p[0] = 1.0  # ranking can never isolate {0, 5}
    grid = default_u_grid(16)
    with pytest.raises(NoFeasibleThinningError, match="relax"):
        synthesize(p, reference, PatternMatch(reference, grid), 1e-9, mode="isophoric")


def test_synthesize_deterministic():
    reference, p = validation_probabilities(n=64)
    grid = default_u_grid(64)
    feature = PatternMatch(reference, grid)
    a = synthesize(p, reference, feature, 1e-6, mode="isophoric")
    b = synthesize(p, reference, feature, 1e-6, mode="isophoric")
    assert a.k == b.k
    assert a.psi == b.psi
    np.testing.assert_array_equal(a.layout.thinning, b.layout.thinning)


def test_synthesize_skips_degenerate_small_k_for_masks():
    # top-2 elements are adjacent: K=1 is flat and K=2 has no interior nulls,
    # so the scan must skip to the first K with a resolvable sidelobe region
    n = 32
    p = np.full(n, 1e-4)
    p[10], p[11], p[12] = 0.4, 0.35, 0.15
    p /= p.sum()
    reference = layout_reference(n, 0.5, [10, 11, 12])
    result = synthesize(p, reference, SllMask(-3.0, default_u_grid(n)), 0.5, mode="amplitude")
    assert result.k == 3


def test_synthesize_shots_mode_recovery_stable_across_seeds():
    n = 64
    reference = layout_reference(n, 0.5, VALIDATION_INDICES)
    state = prepare_input_state(reference)
    grid = default_u_grid(n)
    recovered = []
    for seed in range(3):
        p = read_probabilities(state, shots=2 * n, seed=seed)
        result = synthesize(p, reference, PatternMatch(reference, grid), 1e-6, mode="isophoric")
        recovered.append(tuple(result.layout.active_indices))
    assert set(recovered) == {VALIDATION_INDICES}


def test_synthesize_validates_inputs():
    reference, p = validation_probabilities(n=64)
    grid = default_u_grid(64)
    feature = PatternMatch(reference, grid)
    with pytest.raises(ValueError, match="positive"):
        synthesize(p, reference, feature, 0.0)
    with pytest.raises(ValueError, match="probabilities"):
        synthesize(p[:32], reference, feature, 1e-6)
    with pytest.raises(ValueError, match="zero"):
        synthesize(np.zeros(64), reference, feature, 1e-6)


@pytest.mark.parametrize("n,count", [(16, 20), (64, 20), (256, 10)])
def test_recovery_property_random_layouts(n, count):
    rng = np.random.default_rng(n)
    grid = default_u_grid(n)
    for _ in range(count):
        k_ref = int(rng.integers(1, max(2, n // 2)))
        indices = np.sort(rng.choice(n, size=k_ref, replace=False))
        reference = layout_reference(n, 0.5, indices)
        p = read_probabilities(prepare_input_state(reference))
        result = synthesize(p, reference, PatternMatch(reference, grid), 1e-9, mode="isophoric")
        assert result.k == k_ref
        np.testing.assert_array_equal(result.layout.active_indices, indices)


def test_result_serialization_fields():
    reference, p = validation_probabilities(n=64)
    grid = default_u_grid(64)
    result = synthesize(p, reference, PatternMatch(reference, grid), 1e-6, mode="isophoric")
    payload = result.to_dict()
    assert payload["n"] == 64
    assert payload["k"] == 7
    assert payload["mode"] == "isophoric"
    assert payload["tau"] == pytest.approx(100 * (64 - 7) / 64)
    assert sum(payload["b"]) == 7
    assert len(payload["w"]) == 64
    assert len(payload["p"]) == 64
    assert payload["psi"] <= payload["eta"]


def test_mask_string_format():
    assert mask_string(np.array([True, False, True, True])) == "1011"
