"""Direct-space evolution of the walk.

Each tessellation color defines a reflection H that swaps the two
amplitudes inside every cell (H**2 = I).  The corresponding local unitary
exp(i*theta*H) is evaluated in closed form as

    cos(theta)*I + i*sin(theta)*H,

which is exact and costs O(N).  One walk step applies the red, green and
blue local unitaries in that order.  A dense-matrix oracle built from the
cell projectors and generic matrix exponentials is provided for small
lattices; it is used only for testing.
"""

import numpy as np
import scipy.linalg

from .lattice import COLORS

DENSE_LIMIT = 4096


def angles_triple(angles):
    """Normalize a scalar angle or a 3-sequence to a (red, green, blue) triple."""
    if np.isscalar(angles):
        return (float(angles),) * 3
    triple = tuple(float(a) for a in angles)
    if len(triple) != 3:
        raise ValueError("angles must be a scalar or a (theta0, theta1, theta2) triple")
    return triple


def _as_state(state, lat):
    state = np.asarray(state)
    if state.shape != (lat.N,):
        raise ValueError(f"state has shape {state.shape}, expected ({lat.N},)")
    return state.astype(np.complex128, copy=False)


def reflect(state, color, lat):
    """Apply the tessellation reflection H (the in-cell amplitude swap)."""
    return _as_state(state, lat)[lat.swap_permutation(color)]


def apply_local_unitary(state, color, theta, lat):
    """Apply exp(i*theta*H_color) = cos(theta)*I + i*sin(theta)*H_color."""
    state = _as_state(state, lat)
    return np.cos(theta) * state + (1j * np.sin(theta)) * state[lat.swap_permutation(color)]


def step(state, angles, lat):
    """One walk step: the red, then green, then blue local unitary."""
    angles = angles_triple(angles)
    for color, theta in zip(COLORS, angles):
        state = apply_local_unitary(state, color, theta, lat)
    return state


def evolve(state, t, angles, lat):
    """Apply t walk steps; t = 0 returns the input state unchanged."""
    if t != int(t) or t < 0:
        raise ValueError(f"step count must be a nonnegative integer, got {t!r}")
    state = _as_state(state, lat)
    angles = angles_triple(angles)
    for _ in range(int(t)):
        state = step(state, angles, lat)
    return state


def probability_distribution(state):
    """Per-vertex measurement probabilities |amplitude|**2."""
    return np.abs(np.asarray(state)) ** 2


# ----------------------------------------------------------------------
# dense oracle (testing only)
# ----------------------------------------------------------------------

def dense_hamiltonian(color, lat):
    """Dense reflection 2*sum_cells |cell><cell| - I for one tessellation."""
    if lat.N > DENSE_LIMIT:
        raise ValueError(f"dense path limited to N <= {DENSE_LIMIT}, got N={lat.N}")
    ham = -np.eye(lat.N)
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    for u, v in lat.tessellation(color):
        eta = np.zeros(lat.N)
        eta[lat.flat_index(u)] = inv_sqrt2
        eta[lat.flat_index(v)] = inv_sqrt2
        ham += 2.0 * np.outer(eta, eta)
    return ham


def dense_evolution_matrix(angles, lat):
    """Brute-force N x N walk operator from generic matrix exponentials."""
    if lat.N > DENSE_LIMIT:
        raise ValueError(f"dense path limited to N <= {DENSE_LIMIT}, got N={lat.N}")
    t_red, t_green, t_blue = angles_triple(angles)
    u_red = scipy.linalg.expm(1j * t_red * dense_hamiltonian("red", lat))
    u_green = scipy.linalg.expm(1j * t_green * dense_hamiltonian("green", lat))
    u_blue = scipy.linalg.expm(1j * t_blue * dense_hamiltonian("blue", lat))
    return u_blue @ u_green @ u_red
