import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qimf.state import (
    DimensionMismatch,
    StateVector,
    UnnormalizableError,
    apply_diagonal_phase,
    apply_rank_one_phase,
    from_values,
    global_phase_distance,
    inner_product,
)

from conftest import random_state


def test_from_values_two_equal_entries():
    s, M = from_values([1, 1, 0, 0], 1, 1)
    np.testing.assert_allclose(s.amplitudes, [2 ** -0.5, 2 ** -0.5, 0, 0])
    assert M == 2


def test_from_values_basis_state():
    s, M = from_values([1, 0, 0, 0], 1, 1)
    np.testing.assert_array_equal(s.amplitudes, [1, 0, 0, 0])
    assert M == 1


def test_from_values_all_ones_4x4():
    s, M = from_values(np.ones(16), 2, 2)
    np.testing.assert_allclose(s.amplitudes, np.full(16, 0.25))
    assert M == 16


def test_from_values_errors():
    with pytest.raises(UnnormalizableError, match="unnormalizable"):
        from_values(np.zeros(4), 1, 1)
    with pytest.raises(DimensionMismatch, match="dimension mismatch"):
        from_values(np.ones(8), 1, 1)


def test_state_rejects_unnormalized():
    with pytest.raises(UnnormalizableError):
        StateVector(np.ones(4), 1, 1)


def test_amplitudes_are_read_only():
    s = StateVector.basis(0, 1, 1)
    with pytest.raises(ValueError):
        s.amplitudes[0] = 2


def test_inner_product_basics(rng):
    psi = random_state(rng, 2, 2)
    assert inner_product(psi, psi) == pytest.approx(1.0, abs=1e-12)
    assert inner_product(StateVector.basis(0, 1, 1), StateVector.basis(1, 1, 1)) == 0


def test_inner_product_conjugate_linear_first_argument(rng):
    a, b = random_state(rng, 1, 2), random_state(rng, 1, 2)
    a_phase = a.with_amplitudes(1j * a.amplitudes)
    assert inner_product(a_phase, b) == pytest.approx(-1j * inner_product(a, b))


def test_inner_product_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        inner_product(StateVector.basis(0, 1, 1), StateVector.basis(0, 2, 1))


def test_overlap_equals_masked_intensity():
    # 4x4 image, region = a handful of indices; brute-force M_D / M
    img = np.arange(16, dtype=float) % 5
    mask = np.zeros(16, dtype=bool)
    mask[[1, 4, 7, 11]] = True
    f, M = from_values(img, 2, 2)
    t_vals = np.where(mask, img, 0.0)
    t, M_D = from_values(t_vals, 2, 2)
    expected = sum(img[k] ** 2 for k in range(16) if mask[k]) / sum(x * x for x in img)
    assert abs(inner_product(f, t)) ** 2 == pytest.approx(expected, abs=1e-12)
    assert M_D / M == pytest.approx(expected, abs=1e-12)


def test_rank_one_phase_cases(rng):
    psi = random_state(rng, 2, 1)
    axis = random_state(rng, 2, 1)
    assert global_phase_distance(apply_rank_one_phase(psi, axis, 0.0), psi) < 1e-12
    np.testing.assert_allclose(apply_rank_one_phase(psi, axis, 0.0).amplitudes, psi.amplitudes)

    e0, e1 = StateVector.basis(0, 1, 1), StateVector.basis(1, 1, 1)
    np.testing.assert_allclose(apply_rank_one_phase(e0, e1, 1.234).amplitudes, e0.amplitudes)

    flipped = apply_rank_one_phase(axis, axis, np.pi, +1)
    np.testing.assert_allclose(flipped.amplitudes, -axis.amplitudes, atol=1e-12)


def test_diagonal_phase_cases(rng):
    psi = random_state(rng, 2, 2)
    np.testing.assert_allclose(apply_diagonal_phase(psi, np.zeros(16, bool), 0, 0).amplitudes, psi.amplitudes)
    out = apply_diagonal_phase(psi, lambda k: True, 0.7, 0.0)
    assert abs(inner_product(psi, out)) ** 2 == pytest.approx(1.0, abs=1e-12)
    assert global_phase_distance(out, psi) < 1e-10


def test_diagonal_phase_matches_rank_one_in_invariant_plane(rng):
    # a state in span{t, t_bar}: the oracle phase equals S_t up to e^{-i beta/2}
    mask = rng.random(32) < 0.4
    f = random_state(rng, 3, 2)
    t = np.where(mask, f.amplitudes, 0)
    tb = np.where(mask, 0, f.amplitudes)
    t_state = StateVector(t / np.linalg.norm(t), 3, 2)
    a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
    comb = a * t / np.linalg.norm(t) + b * tb / np.linalg.norm(tb)
    psi = StateVector(comb / np.linalg.norm(comb), 3, 2)
    beta = 2.1
    oracle = apply_diagonal_phase(psi, mask, beta / 2, -beta / 2)
    rank1 = apply_rank_one_phase(psi, t_state, beta, +1)
    np.testing.assert_allclose(oracle.amplitudes, np.exp(-1j * beta / 2) * rank1.amplitudes, atol=1e-12)
    assert global_phase_distance(oracle, rank1) < 1e-10


def test_global_phase_distance_examples(rng):
    psi = random_state(rng, 1, 2)
    assert global_phase_distance(psi, psi) == pytest.approx(0.0, abs=1e-15)
    assert global_phase_distance(psi, psi.with_amplitudes(-psi.amplitudes)) == pytest.approx(0.0, abs=1e-15)
    e0, e1 = StateVector.basis(0, 1, 1), StateVector.basis(1, 1, 1)
    assert global_phase_distance(e0, e1) == pytest.approx(np.sqrt(2))


def test_global_phase_distance_matches_closed_form(rng):
    for _ in range(20):
        a, b = random_state(rng, 2, 1), random_state(rng, 2, 1)
        closed = np.sqrt(2 - 2 * abs(inner_product(a, b)))
        assert global_phase_distance(a, b) == pytest.approx(closed, abs=1e-12)
        assert global_phase_distance(a, b) == pytest.approx(global_phase_distance(b, a), abs=1e-12)


angles = st.floats(-10, 10, allow_nan=False)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), theta=angles, phi_in=angles, phi_out=angles)
def test_operations_preserve_norm(seed, theta, phi_in, phi_out):
    rng = np.random.default_rng(seed)
    psi, axis = random_state(rng, 2, 2), random_state(rng, 2, 2)
    mask = rng.random(16) < 0.5
    for sign in (1, -1):
        assert apply_rank_one_phase(psi, axis, theta, sign).norm() == pytest.approx(1.0, abs=1e-10)
    assert apply_diagonal_phase(psi, mask, phi_in, phi_out).norm() == pytest.approx(1.0, abs=1e-10)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), theta=angles)
def test_rank_one_phase_inverse_and_period(seed, theta):
    rng = np.random.default_rng(seed)
    psi, axis = random_state(rng, 1, 2), random_state(rng, 1, 2)
    there = apply_rank_one_phase(psi, axis, theta)
    back = apply_rank_one_phase(there, axis, -theta)
    np.testing.assert_allclose(back.amplitudes, psi.amplitudes, atol=1e-10)
    full = apply_rank_one_phase(psi, axis, 2 * np.pi)
    np.testing.assert_allclose(full.amplitudes, psi.amplitudes, atol=1e-10)


def test_oracle_form_matches_rank_one_for_random_betas(rng):
    mask = rng.random(64) < 0.3
    f = random_state(rng, 3, 3)
    t = np.where(mask, f.amplitudes, 0)
    t_state = StateVector(t / np.linalg.norm(t), 3, 3)
    tb = np.where(mask, 0, f.amplitudes)
    for beta in rng.uniform(-2 * np.pi, 2 * np.pi, size=20):
        a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
        comb = a * t / np.linalg.norm(t) + b * tb / np.linalg.norm(tb)
        psi = StateVector(comb / np.linalg.norm(comb), 3, 3)
        d = global_phase_distance(
            apply_diagonal_phase(psi, mask, beta / 2, -beta / 2),
            apply_rank_one_phase(psi, t_state, beta, +1),
        )
        assert d < 1e-10
