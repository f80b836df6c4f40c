import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

import hexwalk as hw
from hexwalk import COLORS, HexLattice
from hexwalk.evolution import dense_hamiltonian, reflect


def random_unit_state(lat, rng):
    v = rng.normal(size=lat.N) + 1j * rng.normal(size=lat.N)
    return v / np.linalg.norm(v)


def test_theta_zero_is_identity():
    lat = HexLattice(4)
    rng = np.random.default_rng(0)
    v = random_unit_state(lat, rng)
    assert np.allclose(hw.apply_local_unitary(v, "red", 0.0, lat), v)
    assert np.allclose(hw.step(v, 0.0, lat), v)


def test_blue_half_turn_moves_to_full_sublattice():
    # exp(i*(pi/2)*H) = i*H on a blue cell: |x,y,0> -> i|x,y,1>
    lat = HexLattice(4)
    v = np.zeros(lat.N, dtype=complex)
    v[lat.flat_index((2, 1, 0))] = 1.0
    out = hw.apply_local_unitary(v, "blue", np.pi / 2, lat)
    expected = np.zeros(lat.N, dtype=complex)
    expected[lat.flat_index((2, 1, 1))] = 1j
    assert np.allclose(out, expected, atol=1e-15)


@pytest.mark.parametrize("color", COLORS)
def test_local_unitary_inverse(color):
    lat = HexLattice(4)
    rng = np.random.default_rng(1)
    v = random_unit_state(lat, rng)
    out = hw.apply_local_unitary(hw.apply_local_unitary(v, color, 0.7, lat),
                                 color, -0.7, lat)
    assert np.max(np.abs(out - v)) < 1e-14


@pytest.mark.parametrize("color", COLORS)
def test_reflection_is_involution(color):
    lat = HexLattice(6)
    rng = np.random.default_rng(2)
    v = random_unit_state(lat, rng)
    assert np.array_equal(reflect(reflect(v, color, lat), color, lat), v)


@pytest.mark.parametrize("color", COLORS)
def test_local_unitary_matches_dense_exponential(color):
    lat = HexLattice(2)
    u_dense = scipy.linalg.expm(1j * 0.9 * dense_hamiltonian(color, lat))
    for i in range(lat.N):
        basis = np.zeros(lat.N, dtype=complex)
        basis[i] = 1.0
        sparse = hw.apply_local_unitary(basis, color, 0.9, lat)
        assert np.max(np.abs(sparse - u_dense[:, i])) < 1e-12


@settings(max_examples=25, deadline=None)
@given(theta=st.floats(min_value=0.0, max_value=np.pi),
       seed=st.integers(min_value=0, max_value=2**31))
def test_step_preserves_norm(theta, seed):
    lat = HexLattice(4)
    v = random_unit_state(lat, np.random.default_rng(seed))
    assert abs(np.linalg.norm(hw.step(v, theta, lat)) - 1.0) < 1e-12


def test_step_norm_on_theta_grid():
    lat = HexLattice(4)
    rng = np.random.default_rng(3)
    v = random_unit_state(lat, rng)
    for theta in np.linspace(0.0, np.pi, 32):
        assert abs(np.linalg.norm(hw.step(v, theta, lat)) - 1.0) < 1e-12


@pytest.mark.parametrize("n", [2, 4])
def test_step_matches_dense_oracle(n):
    lat = HexLattice(n)
    rng = np.random.default_rng(4)
    u_dense = hw.dense_evolution_matrix(np.pi / 3, lat)
    for i in range(lat.N):
        basis = np.zeros(lat.N, dtype=complex)
        basis[i] = 1.0
        assert np.max(np.abs(hw.step(basis, np.pi / 3, lat) - u_dense[:, i])) < 1e-12
    for _ in range(20):
        v = random_unit_state(lat, rng)
        assert np.max(np.abs(hw.step(v, np.pi / 3, lat) - u_dense @ v)) < 1e-11


def test_independent_angles_match_dense_oracle():
    lat = HexLattice(2)
    angles = (0.3, 0.9, 1.7)
    u_dense = hw.dense_evolution_matrix(angles, lat)
    rng = np.random.default_rng(5)
    v = random_unit_state(lat, rng)
    assert np.max(np.abs(hw.step(v, angles, lat) - u_dense @ v)) < 1e-12


def test_bad_angles_rejected():
    lat = HexLattice(2)
    v = np.zeros(lat.N, dtype=complex)
    v[0] = 1.0
    with pytest.raises(ValueError):
        hw.step(v, (0.1, 0.2), lat)


def test_dimension_mismatch_rejected():
    lat = HexLattice(4)
    with pytest.raises(ValueError):
        hw.step(np.zeros(7, dtype=complex), 0.5, lat)


def test_evolve_zero_steps_is_input():
    lat = HexLattice(4)
    rng = np.random.default_rng(6)
    v = random_unit_state(lat, rng)
    assert np.array_equal(hw.evolve(v, 0, 0.8, lat), v)


def test_evolve_rejects_negative_or_fractional_t():
    lat = HexLattice(2)
    v = np.zeros(lat.N, dtype=complex)
    v[0] = 1.0
    with pytest.raises(ValueError):
        hw.evolve(v, -1, 0.5, lat)
    with pytest.raises(ValueError):
        hw.evolve(v, 1.5, 0.5, lat)


def test_evolve_semigroup():
    lat = HexLattice(4)
    rng = np.random.default_rng(7)
    v = random_unit_state(lat, rng)
    combined = hw.evolve(v, 9, 1.1, lat)
    split = hw.evolve(hw.evolve(v, 4, 1.1, lat), 5, 1.1, lat)
    assert np.max(np.abs(combined - split)) < 1e-10


def test_long_evolution_spreads_into_a_ring():
    # hexagon start, t=58 at the fastest angle: the distribution leaves the
    # center almost empty and peaks near the edge of the reachable area
    lat = HexLattice(128)
    init = hw.centered_state(lat, "hexagon")
    probs = hw.probability_distribution(hw.evolve(init, 58, np.pi / 3, lat))
    pos = lat.positions
    center = probs @ pos
    radius = np.linalg.norm(pos - center, axis=1)
    reach = radius[probs > 1e-8].max()
    assert probs[radius < 0.25 * reach].sum() < 0.08
    assert radius[np.argmax(probs)] > 0.6 * reach


def test_dense_matrix_identity_at_theta_zero():
    lat = HexLattice(2)
    assert np.allclose(hw.dense_evolution_matrix(0.0, lat), np.eye(lat.N))


@pytest.mark.parametrize("theta", np.linspace(0.1, np.pi, 4))
def test_dense_matrix_unitary(theta):
    lat = HexLattice(2)
    u = hw.dense_evolution_matrix(theta, lat)
    assert np.max(np.abs(u.conj().T @ u - np.eye(lat.N))) < 1e-12


def test_dense_matrix_guard_rail():
    with pytest.raises(ValueError):
        hw.dense_evolution_matrix(0.5, HexLattice(46))  # N = 4232 > 4096


def test_dense_spectrum_matches_block_phases():
    lat = HexLattice(4)
    spec = hw.WalkSpectrum(lat, np.pi / 3)
    predicted = np.concatenate([np.exp(1j * spec.phi.ravel()),
                                np.exp(-1j * spec.phi.ravel())])
    dense = np.linalg.eigvals(hw.dense_evolution_matrix(np.pi / 3, lat))
    used = np.zeros(lat.N, dtype=bool)
    for z in predicted:
        dist = np.abs(dense - z)
        dist[used] = np.inf
        j = int(np.argmin(dist))
        assert dist[j] < 1e-10
        used[j] = True
    assert used.all()


def test_probability_distribution():
    lat = HexLattice(2)
    basis = np.zeros(lat.N, dtype=complex)
    basis[3] = 1.0
    assert np.array_equal(hw.probability_distribution(basis),
                          np.eye(lat.N)[3])
    pair = np.zeros(lat.N, dtype=complex)
    pair[[1, 4]] = 1 / np.sqrt(2)
    probs = hw.probability_distribution(pair)
    assert probs[1] == pytest.approx(0.5)
    assert probs[4] == pytest.approx(0.5)


def test_probabilities_sum_to_one_after_evolution():
    lat = HexLattice(6)
    rng = np.random.default_rng(8)
    v = random_unit_state(lat, rng)
    probs = hw.probability_distribution(hw.evolve(v, 25, np.pi / 3, lat))
    assert abs(probs.sum() - 1.0) < 1e-12
