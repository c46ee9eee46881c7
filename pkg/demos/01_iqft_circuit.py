"""Build the inverse-QFT circuit and check it against the dense transform.

The simulator keeps qubit 0 in the least significant bit of the basis index,
and the inverse QFT realizes the inverse DFT in unitary normalization: its
matrix entries are exp(+2j*pi*m*n/N)/sqrt(N).
"""

import numpy as np

from qthin import build_iqft, build_qft, new_statevector, probabilities, run_circuit
from qthin.qsim import sample_measurements

print("gate counts (L Hadamards + L(L-1)/2 controlled phases + floor(L/2) swaps)")
for num_qubits in range(1, 11):
    circuit = build_iqft(num_qubits)
    kinds = [g.kind for g in circuit.gates]
    print(
        f"  L={num_qubits:2d}: {len(circuit):3d} gates "
        f"({kinds.count('hadamard')} h, {kinds.count('cphase')} cp, {kinds.count('swap')} swap)"
    )

# circuit matrix vs the dense inverse-DFT unitary, column by column
num_qubits = 4
n = 1 << num_qubits
circuit = build_iqft(num_qubits)
matrix = np.zeros((n, n), dtype=complex)
for basis in range(n):
    e = np.zeros(n, dtype=complex)
    e[basis] = 1.0
    matrix[:, basis] = run_circuit(new_statevector(e), circuit).amplitudes
m, k = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
dense = np.exp(2j * np.pi * m * k / n) / np.sqrt(n)
print(f"\nL={num_qubits}: max |circuit - dense idft| = {np.abs(matrix - dense).max():.2e}")

# inverse and forward circuits cancel
rng = np.random.default_rng(0)
state = new_statevector(rng.standard_normal(n) + 1j * rng.standard_normal(n))
back = run_circuit(run_circuit(state, circuit), build_qft(num_qubits))
print(f"round trip iqft -> qft error = {np.abs(back.amplitudes - state.amplitudes).max():.2e}")

# a flat spectrum collapses onto the ground state; shot sampling agrees
flat = new_statevector(np.ones(n))
out = run_circuit(flat, circuit)
print(f"\nuniform input: p_0 = {probabilities(out)[0]:.6f}")
counts = sample_measurements(out, shots=256, seed=1)
print(f"256 shots land on index 0: {counts[0]} of {counts.sum()}")
