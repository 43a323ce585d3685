"""Gate and query accounting for the filtering circuit and its classical baseline.

Costs are in elementary gates under the model of :func:`qimf.circuit.controlled_cost`.
The oracle is a reversible evaluation of the squared corner distance followed
by two comparisons against constants; only its scaling matters here.
"""

from __future__ import annotations

from .circuit import controlled_cost
from .classical import classical_op_count
from .spectral import qft_cost, qft_gate_counts


def adder_cost(m: int) -> int:
    """Fourier-basis adder on ``m`` qubits: two QFTs without swaps plus ``m`` rotations."""
    return m * m + 2 * m


def oracle_cost(n1: int, n2: int) -> int:
    fold = adder_cost(n1 + 1) + adder_cost(n2 + 1)  # min(u, N1-u), min(v, N2-v)
    squares = 2 * n1 * n1 + 2 * n2 * n2
    width = 2 * max(n1, n2) + 1
    compute = fold + squares + adder_cost(width) + 2 * adder_cost(width + 1)
    # compute, one Toffoli onto the flag qubit, uncompute
    return 2 * compute + 1


def zero_reflection_cost(n: int) -> int:
    """Phase on ``|0...0>``: X conjugation plus an (n-1)-controlled phase."""
    return 2 * n + controlled_cost(n - 1)


def quantum_resources(n1: int, n2: int, l: int, encoder_cost: int) -> dict:
    n = n1 + n2
    enc, qft, orc = encoder_cost, qft_cost(n1, n2), oracle_cost(n1, n2)
    s_t = 2 * orc + 1
    s_f = 2 * enc + 2 * qft + zero_reflection_cost(n) + 1
    per_iteration = s_t + s_f
    hadamards, cphases, swaps = qft_gate_counts(n1, n2)
    return {
        "encoder_calls": 1 + 2 * l,
        "oracle_calls": 2 * l,
        "qft2d_applications": 2 * l + 2,
        "qft2d_gates": {"hadamard": hadamards, "controlled_phase": cphases, "swap": swaps},
        "encoder_cost": enc,
        "qft2d_cost": qft,
        "oracle_cost": orc,
        "iteration_cost": per_iteration,
        "total_cost": enc + 2 * qft + l * per_iteration,
    }


def classical_resources(N1: int, N2: int) -> dict:
    fft_ops, mask_ops = classical_op_count(N1, N2)
    return {"fft_ops": fft_ops, "mask_ops": mask_ops}
