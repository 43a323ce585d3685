import numpy as np
import pytest

from qimf.state import StateVector


def random_state(rng, n1, n2):
    v = rng.normal(size=1 << (n1 + n2)) + 1j * rng.normal(size=1 << (n1 + n2))
    return StateVector(v / np.linalg.norm(v), n1, n2)


def direct_dft2(grid, sign=+1):
    """Brute-force 2D DFT with kernel exp(sign * 2 pi i (ui/N1 + vj/N2)) / sqrt(N1 N2)."""
    n1, n2 = grid.shape
    out = np.zeros((n1, n2), dtype=complex)
    for u in range(n1):
        for v in range(n2):
            acc = 0j
            for i in range(n1):
                for j in range(n2):
                    acc += grid[i, j] * np.exp(sign * 2j * np.pi * (u * i / n1 + v * j / n2))
            out[u, v] = acc
    return out / np.sqrt(n1 * n2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
