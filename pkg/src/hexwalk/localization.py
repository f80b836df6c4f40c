"""Return-probability decay diagnostics (absence of localization).

A vertex amplitude is a Brillouin-zone sum of oscillatory terms
exp(+/-i*t*phi(k, l)).  On the infinite lattice the sum becomes an
integral whose long-time behavior is governed by the critical points of
the phase phi(k, l) = arccos(a(k, l)*cos(theta)); non-degenerate critical
points force the amplitude to decay, so no vertex retains probability.
A finite lattice large enough that nothing wraps within the observation
window reproduces the infinite-lattice dynamics exactly, which is how the
decay fits here operate.
"""

from dataclasses import dataclass

import numpy as np

from .dynamics import check_spread_room
from .errors import NumericalError
from .spectral import WalkSpectrum, block_coefficients, forward_transform

SINGULAR_TOL = 1e-9


def phase(k, l, theta):
    """Eigenphase phi = arccos(a*cos(theta)) at continuous momenta (k, l)."""
    _, _, a, _, _, _ = block_coefficients(k, l, theta)
    return np.arccos(np.clip(a * np.cos(theta), -1.0, 1.0))


def phase_gradient(k, l, theta):
    """Analytic gradient (dphi/dk, dphi/dl) of the [0, pi]-branch phase.

    Raises :class:`NumericalError` where sin(phi) vanishes (the phase has a
    conical point there and is not differentiable).
    """
    k = np.asarray(k, dtype=float)
    l = np.asarray(l, dtype=float)
    _, _, a, _, _, _ = block_coefficients(k, l, theta)
    cos_phi = a * np.cos(theta)
    sin_phi_sq = 1.0 - cos_phi ** 2
    if np.any(sin_phi_sq < SINGULAR_TOL ** 2):
        raise NumericalError("phase gradient is singular where sin(phi) vanishes")
    # d(arccos u)/du = -1/sin(phi) on the [0, pi] branch
    pref = -np.cos(theta) * np.sin(theta) ** 2 / np.sqrt(sin_phi_sq)
    grad_k = pref * (np.sin(k) + np.sin(k - l))
    grad_l = pref * (np.sin(l) + np.sin(l - k))
    return grad_k, grad_l


def _stationarity_residual(k, l):
    return abs(np.sin(k) + np.sin(k - l)) + abs(np.sin(l) + np.sin(l - k))


def _newton_refine(k, l, max_iter=50):
    """Newton iteration on the stationarity system; returns None on failure."""
    for _ in range(max_iter):
        g = np.array([np.sin(k) + np.sin(k - l), np.sin(l) + np.sin(l - k)])
        if abs(g[0]) + abs(g[1]) < 1e-13:
            return k, l
        jac = np.array([
            [np.cos(k) + np.cos(k - l), -np.cos(k - l)],
            [-np.cos(l - k), np.cos(l) + np.cos(l - k)],
        ])
        det = jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0]
        if abs(det) < 1e-12:
            return None
        dk, dl = np.linalg.solve(jac, -g)
        k, l = k + dk, l + dl
    return None


@dataclass
class CriticalPoint:
    """A stationary point of the phase on the closed square [-pi, pi]**2."""

    k: float
    l: float
    grad_residual: float
    hessian_det: float  # finite-difference determinant at the point


def find_critical_points(theta, seeds_per_axis=24):
    """All stationary points of the phase in the closed square [-pi, pi]**2.

    Newton refinement is run from a dense grid of seeds; converged points
    are deduplicated modulo 2*pi and then listed with every representative
    on the closed square, except that the four corners (all the same
    momentum) are listed once.  Both sine equations hold to ~1e-15 at every
    returned point.
    """
    if not 0.0 < theta < np.pi / 2.0:
        raise ValueError(f"critical-point analysis needs 0 < theta < pi/2, got {theta!r}")
    two_pi = 2.0 * np.pi
    classes = []
    grid = np.linspace(-np.pi, np.pi, seeds_per_axis, endpoint=False)
    for k0 in grid:
        for l0 in grid:
            refined = _newton_refine(k0, l0)
            if refined is None:
                continue
            k = (refined[0] + np.pi) % two_pi - np.pi
            l = (refined[1] + np.pi) % two_pi - np.pi
            if not any(
                abs((k - ck + np.pi) % two_pi - np.pi) < 1e-6
                and abs((l - cl + np.pi) % two_pi - np.pi) < 1e-6
                for ck, cl in classes
            ):
                classes.append((k, l))
    points = []
    for k, l in classes:
        reps = [
            (k + two_pi * a, l + two_pi * b)
            for a in (-1, 0, 1)
            for b in (-1, 0, 1)
            if abs(k + two_pi * a) <= np.pi + 1e-9 and abs(l + two_pi * b) <= np.pi + 1e-9
        ]
        if len(reps) == 4:
            # the corner momentum: its four square representatives coincide
            reps = [(np.pi, np.pi)]
        points.extend(reps)
    points.sort()
    return [
        CriticalPoint(k=k, l=l,
                      grad_residual=_stationarity_residual(k, l),
                      hessian_det=hessian_det_numeric(k, l, theta))
        for k, l in points
    ]


def hessian_det_numeric(k, l, theta, step=1e-4):
    """Finite-difference determinant of the phase Hessian at (k, l).

    At conical points (sin(phi) = 0) the second derivatives diverge and
    this value is a large non-degeneracy witness rather than a converged
    derivative; everywhere else it converges to the true determinant.
    """
    h = step
    phi_kk = (phase(k + h, l, theta) - 2.0 * phase(k, l, theta)
              + phase(k - h, l, theta)) / h ** 2
    phi_ll = (phase(k, l + h, theta) - 2.0 * phase(k, l, theta)
              + phase(k, l - h, theta)) / h ** 2
    phi_kl = (phase(k + h, l + h, theta) - phase(k + h, l - h, theta)
              - phase(k - h, l + h, theta) + phase(k - h, l - h, theta)) / (4.0 * h ** 2)
    return float(phi_kk * phi_ll - phi_kl ** 2)


def hessian_det_formula(k, l, theta):
    """Closed-form curvature expression of the stationary-phase analysis:

        (cos(theta)sin^2(theta)/sin^2(phi)) * det [[cos k + cos(k-l),
        -cos(phi)-cos(k-l)], [-cos(phi)-cos(k-l), cos l + cos(k-l)]].

    It classifies the regular stationary points by sign but is not the
    second-derivative determinant of arccos(a*cos(theta)) (magnitudes
    disagree with finite differences); use :func:`hessian_det_numeric`
    for quantitative non-degeneracy checks.
    """
    _, _, a, _, _, _ = block_coefficients(k, l, theta)
    cos_phi = float(np.clip(a * np.cos(theta), -1.0, 1.0))
    sin_phi_sq = 1.0 - cos_phi ** 2
    if sin_phi_sq < SINGULAR_TOL ** 2:
        raise NumericalError("Hessian expression is singular where sin(phi) vanishes")
    ckl = np.cos(k - l)
    m11 = np.cos(k) + ckl
    m22 = np.cos(l) + ckl
    m12 = -cos_phi - ckl
    return float(np.cos(theta) * np.sin(theta) ** 2 / sin_phi_sq * (m11 * m22 - m12 ** 2))


# ----------------------------------------------------------------------
# spectral-sum amplitudes and decay fits
# ----------------------------------------------------------------------

def _return_weights(vertex, init, theta, lat, spectrum=None):
    """Per-block weights (w_plus, w_minus, phi) of the amplitude at a vertex.

    The amplitude at time t is sum(w_plus*exp(i*t*phi)) +
    sum(w_minus*exp(-i*t*phi)); the weights absorb the initial-state
    overlaps, the eigenvector components and the mode phase at the vertex.
    """
    if spectrum is None:
        spectrum = WalkSpectrum(lat, theta)
    x, y, s = vertex
    lat.flat_index(vertex)  # range check
    sp = forward_transform(init, lat)
    coef_plus = (np.conj(spectrum.v_plus[..., 0]) * sp[..., 0]
                 + np.conj(spectrum.v_plus[..., 1]) * sp[..., 1])
    coef_minus = (np.conj(spectrum.v_minus[..., 0]) * sp[..., 0]
                  + np.conj(spectrum.v_minus[..., 1]) * sp[..., 1])
    n = lat.n
    kk, ll = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    mode_phase = np.exp(2j * np.pi * (kk * x + ll * y) / n) / n
    w_plus = spectrum.v_plus[..., s] * coef_plus * mode_phase
    w_minus = spectrum.v_minus[..., s] * coef_minus * mode_phase
    return w_plus, w_minus, spectrum.phi


def amplitude_at(vertex, init, t, theta, lat, spectrum=None):
    """Amplitude <vertex|psi(t)> via the per-block spectral sum."""
    w_plus, w_minus, phi = _return_weights(vertex, init, theta, lat, spectrum)
    phase_t = np.exp(1j * t * phi)
    return complex((w_plus * phase_t).sum() + (w_minus * np.conj(phase_t)).sum())


def probability_series(vertex, init, times, theta, lat, spectrum=None):
    """Probability at one vertex for every t in ``times`` (shared O(n^2) setup)."""
    w_plus, w_minus, phi = _return_weights(vertex, init, theta, lat, spectrum)
    out = np.empty(len(times))
    for i, t in enumerate(times):
        phase_t = np.exp(1j * t * phi)
        amp = (w_plus * phase_t).sum() + (w_minus * np.conj(phase_t)).sum()
        out[i] = abs(amp) ** 2
    return out


@dataclass
class DecayFit:
    """Log-log fit of the envelope of a vertex return probability."""

    exponent: float
    times: np.ndarray
    probabilities: np.ndarray
    peak_indices: np.ndarray


def decay_fit(vertex, init, theta, t_window, lat):
    """Fit the power-law decay of p_vertex(t) over envelope maxima.

    Returns the least-squares slope of log p versus log t restricted to the
    local maxima of the series in ``t_window`` (the oscillatory zeros of
    the amplitude are skipped).  Amplitude decay ~1/t corresponds to an
    exponent near -2.
    """
    t_start, t_end = int(t_window[0]), int(t_window[1])
    if not 1 <= t_start < t_end:
        raise ValueError(f"bad time window {t_window!r}")
    check_spread_room(init, t_end, lat)
    times = np.arange(t_start, t_end + 1)
    probs = probability_series(vertex, init, times, theta, lat)
    interior = np.arange(1, len(times) - 1)
    is_peak = (probs[interior] >= probs[interior - 1]) & (probs[interior] >= probs[interior + 1])
    peaks = interior[is_peak]
    peaks = peaks[probs[peaks] > 0.0]
    if len(peaks) < 3:
        raise NumericalError("too few envelope maxima in the window to fit a decay law")
    slope = np.polyfit(np.log(times[peaks]), np.log(probs[peaks]), 1)[0]
    return DecayFit(exponent=float(slope), times=times, probabilities=probs,
                    peak_indices=peaks)


def max_scaled_probability(init, times, theta, lat):
    """max_v p_v(t) * t**2 for each t; bounded iff no vertex localizes."""
    from .spectral import spectral_evolve

    spectrum = WalkSpectrum(lat, theta)
    out = []
    for t in times:
        state = spectral_evolve(init, t, theta, lat, spectrum)
        out.append(float(np.max(np.abs(state) ** 2) * t ** 2))
    return np.array(out)
