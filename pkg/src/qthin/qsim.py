"""Dense statevector simulation of the gate set needed for QFT/IQFT circuits.

Basis ordering: basis index ``n`` carries qubit 0 in its least significant
bit, so ``n = sum_l q_l * 2**l``.  Every operation in this package uses that
convention.

Transform convention: :func:`build_iqft` returns the circuit whose matrix has
entries ``exp(+2j*pi*m*n/N) / sqrt(N)`` with ``N = 2**L``, i.e. the inverse
DFT in unitary normalization.  Feeding it normalized pattern samples returns
the excitation amplitudes at their original element indices.  The forward
transform (:func:`build_qft`) is its elementwise conjugate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ZeroNormError

HADAMARD = "hadamard"
CPHASE = "cphase"
SWAP = "swap"

MAX_QUBITS = 24  # practical dense-simulation bound

_SQRT1_2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class Gate:
    """A single circuit element: gate kind, target qubits, optional angle."""

    kind: str
    targets: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        if any(q < 0 for q in self.targets):
            raise ValueError(f"negative qubit index in {self.targets}")
        if self.kind == HADAMARD:
            if len(self.targets) != 1:
                raise ValueError("hadamard takes exactly one target qubit")
            if self.angle is not None:
                raise ValueError("hadamard takes no angle")
        elif self.kind in (CPHASE, SWAP):
            if len(self.targets) != 2 or self.targets[0] == self.targets[1]:
                raise ValueError(f"{self.kind} needs two distinct target qubits")
            if self.kind == CPHASE and self.angle is None:
                raise ValueError("controlled phase needs an angle")
            if self.kind == SWAP and self.angle is not None:
                raise ValueError("swap takes no angle")
        else:
            raise ValueError(f"unknown gate kind {self.kind!r}")


def hadamard(qubit: int) -> Gate:
    return Gate(HADAMARD, (qubit,))


def controlled_phase(angle: float, qubit_a: int, qubit_b: int) -> Gate:
    """Diagonal phase ``exp(j*angle)`` on basis states with both qubits set."""
    return Gate(CPHASE, (qubit_a, qubit_b), float(angle))


def swap(qubit_a: int, qubit_b: int) -> Gate:
    return Gate(SWAP, (qubit_a, qubit_b))


@dataclass(frozen=True)
class GateSequence:
    """An ordered list of gates acting on a fixed-size register."""

    gates: tuple[Gate, ...]
    num_qubits: int

    def __post_init__(self):
        for gate in self.gates:
            if max(gate.targets) >= self.num_qubits:
                raise ValueError(
                    f"gate targets {gate.targets} exceed register size {self.num_qubits}"
                )

    def __len__(self) -> int:
        return len(self.gates)

    def inverse(self) -> "GateSequence":
        """Reversed gate order with conjugated phases."""
        inv = tuple(
            Gate(g.kind, g.targets, None if g.angle is None else -g.angle)
            for g in reversed(self.gates)
        )
        return GateSequence(inv, self.num_qubits)


@dataclass(frozen=True)
class Statevector:
    """Unit-norm complex amplitudes of an L-qubit register."""

    amplitudes: np.ndarray
    num_qubits: int

    def __post_init__(self):
        if self.amplitudes.shape != (1 << self.num_qubits,):
            raise ValueError(
                f"expected {1 << self.num_qubits} amplitudes, "
                f"got shape {self.amplitudes.shape}"
            )
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"statevector norm {norm!r} is not 1 (use new_statevector)")


def new_statevector(amplitudes) -> Statevector:
    """Normalize a complex sequence of power-of-two length into a state.

    Raises ZeroNormError when every amplitude is zero and ValueError when the
    length is not a power of two >= 2.
    """
    amps = np.array(amplitudes, dtype=complex)
    n = amps.size
    if amps.ndim != 1 or n < 2 or n & (n - 1):
        raise ValueError(f"amplitude count must be a power of two >= 2, got {n}")
    norm = np.linalg.norm(amps)
    if norm == 0.0:
        raise ZeroNormError("cannot normalize the all-zero amplitude vector")
    return Statevector(amps / norm, n.bit_length() - 1)


def _apply_hadamard(amps: np.ndarray, gate: Gate) -> None:
    (q,) = gate.targets
    view = amps.reshape(-1, 2, 1 << q)
    lo = view[:, 0, :].copy()
    hi = view[:, 1, :]
    view[:, 0, :] = (lo + hi) * _SQRT1_2
    view[:, 1, :] = (lo - hi) * _SQRT1_2


def _apply_cphase(amps: np.ndarray, gate: Gate) -> None:
    qa, qb = gate.targets
    idx = np.arange(amps.size)
    both = (((idx >> qa) & 1) & ((idx >> qb) & 1)).astype(bool)
    amps[both] *= complex(math.cos(gate.angle), math.sin(gate.angle))


def _apply_swap(amps: np.ndarray, gate: Gate) -> None:
    qa, qb = gate.targets
    idx = np.arange(amps.size)
    sel = (((idx >> qa) & 1) == 1) & (((idx >> qb) & 1) == 0)
    src = idx[sel]
    dst = src ^ ((1 << qa) | (1 << qb))
    tmp = amps[src].copy()
    amps[src] = amps[dst]
    amps[dst] = tmp


_APPLY = {HADAMARD: _apply_hadamard, CPHASE: _apply_cphase, SWAP: _apply_swap}


def apply_gate(state: Statevector, gate: Gate) -> Statevector:
    """Apply one gate and return the transformed state (input untouched)."""
    if max(gate.targets) >= state.num_qubits:
        raise IndexError(
            f"gate targets {gate.targets} out of range for {state.num_qubits} qubits"
        )
    amps = state.amplitudes.copy()
    _APPLY[gate.kind](amps, gate)
    return Statevector(amps, state.num_qubits)


def run_circuit(state: Statevector, circuit: GateSequence) -> Statevector:
    """Apply the gates of ``circuit`` in order."""
    if circuit.num_qubits != state.num_qubits:
        raise ValueError(
            f"qubit count mismatch: circuit has {circuit.num_qubits}, "
            f"state has {state.num_qubits}"
        )
    amps = state.amplitudes.copy()
    for gate in circuit.gates:
        _APPLY[gate.kind](amps, gate)
    return Statevector(amps, state.num_qubits)


def probabilities(state: Statevector) -> np.ndarray:
    """Squared-magnitude readout probabilities per basis index."""
    return np.abs(state.amplitudes) ** 2


def sample_measurements(state: Statevector, shots: int, seed: int) -> np.ndarray:
    """Histogram of ``shots`` projective measurements, reproducible per seed."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    p = probabilities(state)
    p = p / p.sum()
    rng = np.random.default_rng(seed)
    return rng.multinomial(shots, p)


def _check_register_size(num_qubits: int) -> None:
    if not 1 <= num_qubits <= MAX_QUBITS:
        raise ValueError(f"register size must be in [1, {MAX_QUBITS}], got {num_qubits}")


def build_iqft(num_qubits: int) -> GateSequence:
    """Inverse-QFT circuit on ``num_qubits`` qubits.

    Uses the textbook ladder (Hadamard plus controlled-phase cascade per
    qubit) followed by explicit bit-reversal swaps, for a total of
    ``L + L*(L-1)/2 + floor(L/2)`` gates.
    """
    _check_register_size(num_qubits)
    gates: list[Gate] = []
    for j in range(num_qubits - 1, -1, -1):
        gates.append(hadamard(j))
        for k in range(j - 1, -1, -1):
            gates.append(controlled_phase(math.pi / 2 ** (j - k), j, k))
    for i in range(num_qubits // 2):
        gates.append(swap(i, num_qubits - 1 - i))
    return GateSequence(tuple(gates), num_qubits)


def build_qft(num_qubits: int) -> GateSequence:
    """Forward QFT circuit: the elementwise conjugate of :func:`build_iqft`."""
    return build_iqft(num_qubits).inverse()
