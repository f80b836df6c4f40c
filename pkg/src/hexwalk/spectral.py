"""Momentum-space machinery for the uniform-angle walk.

The walk operator commutes with lattice translations, so the pair of
sublattice Fourier modes at momentum (k, l) spans an invariant plane.
Restricted to that plane the walk is the 2x2 unitary

    [[A, B], [-conj(B), conj(A)]],      |A|**2 + |B|**2 = 1,

whose entries are built from a handful of trigonometric coefficients of
the momenta (:func:`block_coefficients`).  Its eigenvalues are
exp(+/- i*phi) with cos(phi) = a*cos(theta).  Diagonalizing every block
gives evolution to arbitrary t in O(N log N), the spectral gap
:func:`phi_min`, and the per-block data consumed by the localization and
search analyses.
"""

from dataclasses import dataclass

import numpy as np

from .lattice import HexLattice

# Below this norm an eigenvector column of the generic formula is 0/0 and
# the block is handled as diagonal (or scalar) explicitly.
DEGENERATE_TOL = 1e-9


def block_coefficients(kt, lt, theta):
    """Trigonometric coefficients (f, g, a, b, c, d) at momenta (kt, lt).

    ``kt``/``lt`` are momenta in radians (grid values 2*pi*k/n or arbitrary
    continuous points) and may be arrays; broadcasting applies.
    """
    kt = np.asarray(kt, dtype=float)
    lt = np.asarray(lt, dtype=float)
    sin_sq = np.sin(theta) ** 2
    f = np.cos(kt) + np.cos(lt) + np.cos(kt - lt)
    g = np.sin(kt) + np.sin(lt) + np.sin(kt - lt)
    a = -f * sin_sq + np.cos(theta) ** 2
    b = -g * sin_sq
    c = b + np.sin(kt) + np.sin(lt)
    d = a + np.cos(kt) + np.cos(lt)
    return f, g, a, b, c, d


@dataclass
class FourierBlock:
    """All scalar data of the 2x2 momentum block at grid point (k, l)."""

    k: int
    l: int
    n: int
    theta: float
    f: float
    g: float
    a: float
    b: float
    c: float
    d: float
    A: complex
    B: complex

    def unitary(self):
        """The 2x2 block matrix [[A, B], [-conj(B), conj(A)]]."""
        return np.array(
            [[self.A, self.B], [-np.conj(self.B), np.conj(self.A)]]
        )


@dataclass
class BlockEigensystem:
    """Eigenphase and orthonormal eigenvectors of one momentum block.

    The block eigenvalues are exp(+i*phi) on ``v_plus`` and exp(-i*phi) on
    ``v_minus``; ``gamma_plus``/``gamma_minus`` are the squared norms of the
    unnormalized eigenvector columns (0 exactly at degenerate blocks).
    """

    phi: float
    gamma_plus: float
    gamma_minus: float
    v_plus: np.ndarray
    v_minus: np.ndarray


def fourier_block(k, l, theta, n):
    """Build the momentum block at grid point (k, l) for an n x n cell grid."""
    if not (0 <= k < n and 0 <= l < n):
        raise ValueError(f"momentum indices ({k}, {l}) out of range for n={n}")
    kt = 2.0 * np.pi * k / n
    lt = 2.0 * np.pi * l / n
    f, g, a, b, c, d = (float(v) for v in block_coefficients(kt, lt, theta))
    A = (a + 1j * b) * np.cos(theta)
    B = (c + 1j * d) * np.sin(theta)
    return FourierBlock(k=int(k), l=int(l), n=int(n), theta=float(theta),
                        f=f, g=g, a=a, b=b, c=c, d=d, A=complex(A), B=complex(B))


def block_eigensystem(block):
    """Diagonalize one momentum block.

    The generic eigenvector columns are (B, exp(+/-i*phi) - A) normalized;
    where a column vanishes the block is diagonal and the matching basis
    vector is the eigenvector.  When both columns vanish the block is a
    scalar (+/-identity) and the balanced pair (1, +/-1)/sqrt(2) is used,
    which keeps the marked-vertex overlap |<0|v>|**2 = 1/2 exploited by the
    search analysis.
    """
    theta = block.theta
    cos_phi = float(np.clip(block.a * np.cos(theta), -1.0, 1.0))
    phi = float(np.arccos(cos_phi))
    e_plus = np.exp(1j * phi)
    col_plus = np.array([block.B, e_plus - block.A])
    col_minus = np.array([block.B, np.conj(e_plus) - block.A])
    norm_plus = np.linalg.norm(col_plus)
    norm_minus = np.linalg.norm(col_minus)
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    if norm_plus < DEGENERATE_TOL and norm_minus < DEGENERATE_TOL:
        v_plus = np.array([inv_sqrt2, inv_sqrt2], dtype=complex)
        v_minus = np.array([inv_sqrt2, -inv_sqrt2], dtype=complex)
    elif norm_plus < DEGENERATE_TOL:
        # diagonal block with A = exp(+i*phi)
        v_plus = np.array([1.0, 0.0], dtype=complex)
        v_minus = col_minus / norm_minus
    elif norm_minus < DEGENERATE_TOL:
        v_plus = col_plus / norm_plus
        v_minus = np.array([1.0, 0.0], dtype=complex)
    else:
        v_plus = col_plus / norm_plus
        v_minus = col_minus / norm_minus
    sin_phi = np.sin(phi)
    cos_t = np.cos(theta)
    gamma_plus = 2.0 - 2.0 * (block.a * cos_phi + block.b * sin_phi) * cos_t
    gamma_minus = 2.0 - 2.0 * (block.a * cos_phi - block.b * sin_phi) * cos_t
    return BlockEigensystem(phi=phi, gamma_plus=float(gamma_plus),
                            gamma_minus=float(gamma_minus),
                            v_plus=v_plus, v_minus=v_minus)


class WalkSpectrum:
    """Vectorized per-momentum block data for a fixed lattice size and angle.

    All arrays are indexed [k, l] with shape (n, n); eigenvector arrays
    carry a trailing component axis of length 2.  Construction costs
    O(n**2); instances are immutable and reusable across calls.
    """

    def __init__(self, lat, theta):
        if not isinstance(lat, HexLattice):
            lat = HexLattice(lat)
        self.n = lat.n
        self.theta = float(theta)
        n = self.n
        kk, ll = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        self.kt = 2.0 * np.pi * kk / n
        self.lt = 2.0 * np.pi * ll / n
        self.f, self.g, self.a, self.b, self.c, self.d = block_coefficients(
            self.kt, self.lt, self.theta)
        cos_t = np.cos(self.theta)
        sin_t = np.sin(self.theta)
        self.A = (self.a + 1j * self.b) * cos_t
        self.B = (self.c + 1j * self.d) * sin_t
        self.cos_phi = np.clip(self.a * cos_t, -1.0, 1.0)
        self.phi = np.arccos(self.cos_phi)
        sin_phi = np.sin(self.phi)
        self.gamma_plus = 2.0 - 2.0 * (self.a * self.cos_phi + self.b * sin_phi) * cos_t
        self.gamma_minus = 2.0 - 2.0 * (self.a * self.cos_phi - self.b * sin_phi) * cos_t
        self._build_eigenvectors()

    def _build_eigenvectors(self):
        n = self.n
        e_plus = np.exp(1j * self.phi)
        top = self.B
        bot_plus = e_plus - self.A
        bot_minus = np.conj(e_plus) - self.A
        norm_plus = np.sqrt(np.abs(top) ** 2 + np.abs(bot_plus) ** 2)
        norm_minus = np.sqrt(np.abs(top) ** 2 + np.abs(bot_minus) ** 2)
        deg_plus = norm_plus < DEGENERATE_TOL
        deg_minus = norm_minus < DEGENERATE_TOL
        scalar = deg_plus & deg_minus
        safe_plus = np.where(deg_plus, 1.0, norm_plus)
        safe_minus = np.where(deg_minus, 1.0, norm_minus)
        inv_sqrt2 = 1.0 / np.sqrt(2.0)
        v_plus = np.empty((n, n, 2), dtype=complex)
        v_minus = np.empty((n, n, 2), dtype=complex)
        v_plus[..., 0] = np.where(scalar, inv_sqrt2,
                                  np.where(deg_plus, 1.0, top / safe_plus))
        v_plus[..., 1] = np.where(scalar, inv_sqrt2,
                                  np.where(deg_plus, 0.0, bot_plus / safe_plus))
        v_minus[..., 0] = np.where(scalar, inv_sqrt2,
                                   np.where(deg_minus, 1.0, top / safe_minus))
        v_minus[..., 1] = np.where(scalar, -inv_sqrt2,
                                   np.where(deg_minus, 0.0, bot_minus / safe_minus))
        self.v_plus = v_plus
        self.v_minus = v_minus

    def block(self, k, l):
        """Scalar :class:`FourierBlock` view of grid point (k, l)."""
        return fourier_block(k, l, self.theta, self.n)

    def propagate_spinors(self, spinors, t):
        """Apply every block's t-th power to an (n, n, 2) spinor field.

        Uses exp(+/-i*t*phi) on the eigencomponents, so the error does not
        grow with t.
        """
        s0 = spinors[..., 0]
        s1 = spinors[..., 1]
        coef_plus = np.conj(self.v_plus[..., 0]) * s0 + np.conj(self.v_plus[..., 1]) * s1
        coef_minus = np.conj(self.v_minus[..., 0]) * s0 + np.conj(self.v_minus[..., 1]) * s1
        phase = np.exp(1j * t * self.phi)
        coef_plus = coef_plus * phase
        coef_minus = coef_minus * np.conj(phase)
        out = np.empty_like(spinors)
        out[..., 0] = coef_plus * self.v_plus[..., 0] + coef_minus * self.v_minus[..., 0]
        out[..., 1] = coef_plus * self.v_plus[..., 1] + coef_minus * self.v_minus[..., 1]
        return out


def forward_transform(state, lat):
    """Project a state onto the sublattice Fourier modes.

    Returns an (n, n, 2) complex array ``sp`` with ``sp[k, l, j]`` the
    overlap of the state with the sublattice-j mode at momentum (k, l).
    The transform is unitary (Parseval holds exactly up to roundoff).
    """
    state = np.asarray(state)
    n = lat.n
    if state.shape != (lat.N,):
        raise ValueError(f"state has shape {state.shape}, expected ({lat.N},)")
    empty = state[: n * n].reshape(n, n)  # indexed [y, x]
    full = state[n * n:].reshape(n, n)
    sp = np.empty((n, n, 2), dtype=complex)
    # fft2 output is indexed [l, k] (first axis conjugate to y); transpose
    sp[..., 0] = np.fft.fft2(empty).T / n
    sp[..., 1] = np.fft.fft2(full).T / n
    return sp


def inverse_transform(spinors, lat):
    """Inverse of :func:`forward_transform`, back to a flat state vector."""
    n = lat.n
    if np.shape(spinors) != (n, n, 2):
        raise ValueError(f"spinor field has shape {np.shape(spinors)}, expected {(n, n, 2)}")
    state = np.empty(lat.N, dtype=complex)
    state[: n * n] = (np.fft.ifft2(spinors[..., 0].T) * n).ravel()
    state[n * n:] = (np.fft.ifft2(spinors[..., 1].T) * n).ravel()
    return state


def uniform_angle(angles):
    """Return the single angle, rejecting non-uniform triples."""
    if np.isscalar(angles):
        return float(angles)
    triple = tuple(float(a) for a in angles)
    if len(triple) != 3 or len(set(triple)) != 1:
        raise ValueError("the momentum-space path requires one uniform angle "
                         "on all three tessellations")
    return triple[0]


def spectral_evolve(state, t, theta, lat, spectrum=None):
    """Evolve t steps through the momentum-space eigendecomposition.

    Cost O(N log N) independent of t.  Pass a prebuilt ``spectrum`` to
    amortize the block construction across calls.
    """
    theta = uniform_angle(theta)
    if t != int(t) or t < 0:
        raise ValueError(f"step count must be a nonnegative integer, got {t!r}")
    if spectrum is None:
        spectrum = WalkSpectrum(lat, theta)
    elif spectrum.n != lat.n or spectrum.theta != theta:
        raise ValueError("spectrum was built for a different lattice size or angle")
    sp = forward_transform(state, lat)
    sp = spectrum.propagate_spinors(sp, int(t))
    return inverse_transform(sp, lat)


def phi_min(n, theta):
    """Smallest positive eigenphase of the sign-flipped walk operator.

    The eigenvalues of -U are exp(+/-i*(pi - phi_kl)); the minimum runs
    over all momentum blocks, excluding those whose eigenvalue equals 1 to
    roundoff (phi = pi exactly), which carry argument 0, not a positive one.
    """
    lat = n if isinstance(n, HexLattice) else HexLattice(n)
    n = lat.n
    kk, ll = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    _, _, a, _, _, _ = block_coefficients(2.0 * np.pi * kk / n, 2.0 * np.pi * ll / n, theta)
    cos_phi = a * np.cos(theta)
    gaps = np.pi - np.arccos(np.clip(cos_phi, -1.0, 1.0))
    keep = 1.0 + cos_phi > 1e-12
    return float(gaps[keep].min())


def cos_phi_asymptotic(k, l, theta, n):
    """Two-term large-n expansion of cos(phi) at fixed block indices (k, l)."""
    cos_t = np.cos(theta)
    lead = (4.0 * cos_t ** 2 - 3.0) * cos_t
    corr = 4.0 * np.pi ** 2 * (k * k - k * l + l * l) * np.sin(theta) ** 2 * cos_t / n ** 2
    return float(lead + corr)
