"""A minimal gate-list simulator for small register circuits.

Qubit ``q`` carries bit ``q`` of the basis index (qubit 0 is least
significant). Used to run the efficient encoders gate by gate and to
tally their cost.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)


def ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def phase(phi: float) -> np.ndarray:
    return np.array([[1, 0], [0, np.exp(1j * phi)]], dtype=np.complex128)


def controlled_cost(num_controls: int) -> int:
    """Elementary-gate cost of a single-qubit gate with ``num_controls`` controls.

    A k-controlled gate is charged ``2k - 1``: k-1 Toffolis into an ancilla,
    one singly-controlled gate, k-1 Toffolis to uncompute.
    """
    return 1 if num_controls == 0 else 2 * num_controls - 1


@dataclass(frozen=True)
class Gate:
    name: str
    matrix: np.ndarray | None
    targets: tuple[int, ...]
    controls: tuple[tuple[int, int], ...] = ()

    @property
    def cost(self) -> int:
        if self.name == "swap":
            return 3 * controlled_cost(len(self.controls)) if self.controls else 3
        return controlled_cost(len(self.controls))


@dataclass
class Circuit:
    num_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def _add(self, name, matrix, target, controls):
        if not 0 <= target < self.num_qubits:
            raise ValueError(f"qubit {target} outside register of {self.num_qubits}")
        ctrl = tuple(sorted((int(q), int(v)) for q, v in dict(controls or {}).items()))
        if any(q == target for q, _ in ctrl):
            raise ValueError("target qubit cannot also be a control")
        self.gates.append(Gate(name, matrix, (target,), ctrl))
        return self

    def h(self, q, controls=None):
        return self._add("h", H, q, controls)

    def x(self, q, controls=None):
        return self._add("x", X, q, controls)

    def ry(self, theta, q, controls=None):
        return self._add("ry", ry(theta), q, controls)

    def p(self, phi, q, controls=None):
        return self._add("p", phase(phi), q, controls)

    def swap(self, a, b):
        self.gates.append(Gate("swap", None, (a, b)))
        return self

    def counts(self) -> Counter:
        """Gate tally keyed by ``name`` or ``c{k}-name`` for k controls."""
        tally = Counter()
        for g in self.gates:
            key = g.name if not g.controls else f"c{len(g.controls)}-{g.name}"
            tally[key] += 1
        return tally

    @property
    def size(self) -> int:
        return len(self.gates)

    @property
    def cost(self) -> int:
        return sum(g.cost for g in self.gates)

    def run(self, initial=None) -> np.ndarray:
        dim = 1 << self.num_qubits
        if initial is None:
            psi = np.zeros(dim, dtype=np.complex128)
            psi[0] = 1.0
        else:
            psi = np.array(initial, dtype=np.complex128).ravel()
            if psi.size != dim:
                raise ValueError("initial state has wrong dimension")
        for g in self.gates:
            psi = apply_gate(psi, g, self.num_qubits)
        return psi

    def unitary(self) -> np.ndarray:
        dim = 1 << self.num_qubits
        return np.column_stack([self.run(col) for col in np.eye(dim)])


def _axis(q: int, m: int) -> int:
    return m - 1 - q


def apply_gate(psi: np.ndarray, gate: Gate, m: int) -> np.ndarray:
    t = psi.reshape((2,) * m).copy()
    if gate.name == "swap":
        a, b = gate.targets
        return np.swapaxes(t, _axis(a, m), _axis(b, m)).reshape(-1).copy()
    index = [slice(None)] * m
    for q, v in gate.controls:
        index[_axis(q, m)] = v
    index = tuple(index)
    sub = t[index]
    target = gate.targets[0]
    # position of the target axis once control axes are indexed away
    ctrl_axes = {_axis(q, m) for q, _ in gate.controls}
    pos = sum(1 for ax in range(_axis(target, m)) if ax not in ctrl_axes)
    sub = np.moveaxis(np.tensordot(gate.matrix, sub, axes=([1], [pos])), 0, pos)
    t[index] = sub
    return t.reshape(-1)
