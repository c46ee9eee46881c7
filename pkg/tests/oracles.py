"""Independent reference implementations used as test oracles.

Everything here is deliberately naive (explicit summation, dense matrices,
closed-form polynomials) and stays independent of the code paths it checks.
"""

import math

import numpy as np


def naive_dft(w):
    """O(N^2) forward sum A_m = sum_n w_n exp(-2j*pi*n*m/N)."""
    w = np.asarray(w, dtype=complex)
    n = w.size
    out = np.zeros(n, dtype=complex)
    for m in range(n):
        acc = 0.0 + 0.0j
        for k in range(n):
            acc += w[k] * np.exp(-2j * np.pi * k * m / n)
        out[m] = acc
    return out


def naive_idft(a):
    """O(N^2) inverse sum w_n = (1/N) sum_m A_m exp(+2j*pi*m*n/N)."""
    a = np.asarray(a, dtype=complex)
    n = a.size
    out = np.zeros(n, dtype=complex)
    for k in range(n):
        acc = 0.0 + 0.0j
        for m in range(n):
            acc += a[m] * np.exp(2j * np.pi * m * k / n)
        out[k] = acc / n
    return out


def dense_idft_unitary(num_qubits):
    """Matrix with entries exp(+2j*pi*m*n/N)/sqrt(N), N = 2**L."""
    n = 1 << num_qubits
    m, k = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return np.exp(2j * np.pi * m * k / n) / math.sqrt(n)


def circuit_unitary(circuit, run_circuit, new_statevector):
    """Assemble a circuit's matrix column by column from basis-state runs."""
    n = 1 << circuit.num_qubits
    out = np.zeros((n, n), dtype=complex)
    for b in range(n):
        e = np.zeros(n, dtype=complex)
        e[b] = 1.0
        out[:, b] = run_circuit(new_statevector(e), circuit).amplitudes
    return out


def direct_array_factor(excitations, spacing_d, u):
    """A(u) = sum_n w_n exp(2j*pi*d*u*n) for arbitrary complex excitations."""
    w = np.asarray(excitations, dtype=complex)
    n_idx = np.arange(w.size)
    u_arr = np.atleast_1d(np.asarray(u, dtype=float))
    out = np.array(
        [np.sum(w * np.exp(2j * np.pi * spacing_d * uu * n_idx)) for uu in u_arr]
    )
    return out[0] if np.ndim(u) == 0 else out


def chebyshev_poly(order, x):
    """T_order(x) on the whole real line via the cos/cosh closed forms."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    inside = np.abs(x) <= 1.0
    out[inside] = np.cos(order * np.arccos(x[inside]))
    above = x > 1.0
    out[above] = np.cosh(order * np.arccosh(x[above]))
    below = x < -1.0
    out[below] = (-1.0) ** order * np.cosh(order * np.arccosh(-x[below]))
    return out


def chebyshev_pattern(n_elements, sll_db, spacing_d, u):
    """Ideal Dolph pattern magnitude |T_{N-1}(x0*cos(pi*d*u))|, peak-normalized."""
    ripple = 10.0 ** (-sll_db / 20.0)
    x0 = math.cosh(math.acosh(ripple) / (n_elements - 1))
    mag = np.abs(chebyshev_poly(n_elements - 1, x0 * np.cos(np.pi * spacing_d * np.asarray(u))))
    return mag / ripple
