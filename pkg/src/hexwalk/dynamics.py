"""Position statistics of spreading wave packets.

Standard deviations use the 2-D geometric embedding with unit edge length
and ignore the periodic wrap, so experiments must keep packets away from
the boundary; the helpers here enforce that with an explicit support
check (the walk moves amplitude by at most one cell per axis per step).
"""

import math
from dataclasses import dataclass

import numpy as np

from .evolution import probability_distribution, step

INITIAL_STATE_KINDS = ("two-node", "hexagon", "single-node", "custom")

# Canonical local patterns as ((x, y, s), weight) before normalization.
_PATTERNS = {
    "single-node": (((0, 0, 0), 1.0),),
    "two-node": (((1, 1, 0), 1.0), ((1, 0, 1), 1.0)),
    "hexagon": (
        ((1, 1, 0), 1.0), ((1, 0, 1), 1.0), ((1, 0, 0), 1.0),
        ((0, 0, 1), 1.0), ((0, 1, 0), 1.0), ((0, 1, 1), 1.0),
    ),
}


def initial_state(lat, kind="hexagon", center=(0, 0), entries=None):
    """Build a normalized start state.

    ``kind`` is one of "two-node" (equal amplitudes on two neighboring
    vertices), "hexagon" (uniform over the six vertices of one hexagon),
    "single-node", or "custom" with ``entries`` an iterable of
    ((x, y, s), amplitude) pairs.  ``center`` translates the canonical
    pattern by whole cells; the walk is translation invariant, so this
    only parks the packet away from the periodic boundary.
    """
    if kind == "custom":
        if not entries:
            raise ValueError("custom initial state needs a nonempty entries list")
        pattern = tuple(entries)
    else:
        try:
            pattern = _PATTERNS[kind]
        except KeyError:
            raise ValueError(
                f"unknown initial state kind {kind!r}; choose from {INITIAL_STATE_KINDS}"
            ) from None
    state = np.zeros(lat.N, dtype=complex)
    for label, amp in pattern:
        state[lat.flat_index(lat.translate(label, center))] += amp
    norm = np.linalg.norm(state)
    if norm == 0.0:
        raise ValueError("initial state has zero norm")
    return state / norm


def centered_state(lat, kind="hexagon", entries=None):
    """Canonical start state translated to the middle of the lattice."""
    return initial_state(lat, kind, center=(lat.n // 2, lat.n // 2), entries=entries)


def std_deviation(state, lat):
    """Total positional standard deviation of the walker distribution.

    sqrt(sum_v p_v * |r_v - mean|**2) with 2-D Euclidean positions; the
    value is rotation invariant (root of the summed coordinate variances).
    """
    probs = probability_distribution(state)
    pos = lat.positions
    mean = probs @ pos
    return float(np.sqrt(probs @ np.sum((pos - mean) ** 2, axis=1)))


def support_box(state, lat, cutoff=1e-24):
    """Cell-coordinate bounding box (xmin, xmax, ymin, ymax) of the support."""
    idx = np.nonzero(probability_distribution(state) > cutoff)[0]
    if idx.size == 0:
        raise ValueError("state has empty support")
    n = lat.n
    x = idx % n
    y = (idx // n) % n
    return int(x.min()), int(x.max()), int(y.min()), int(y.max())


def check_spread_room(state, t_max, lat):
    """Raise unless the packet stays clear of the boundary for t_max steps.

    One step moves amplitude at most one cell along x and one along y, so
    the support after t steps sits inside the start box padded by t.
    """
    xmin, xmax, ymin, ymax = support_box(state, lat)
    if (xmin - t_max < 0 or xmax + t_max > lat.n - 1
            or ymin - t_max < 0 or ymax + t_max > lat.n - 1):
        raise ValueError(
            f"support box x=[{xmin},{xmax}] y=[{ymin},{ymax}] can wrap around "
            f"within {t_max} steps on n={lat.n}; enlarge the lattice or "
            "recenter the packet")


def _resolve_initial(init, lat):
    if isinstance(init, str):
        return centered_state(lat, init)
    state = np.asarray(init, dtype=complex)
    if state.shape != (lat.N,):
        raise ValueError(f"initial state has shape {state.shape}, expected ({lat.N},)")
    return state


@dataclass
class SigmaSeries:
    """Standard deviation versus time with its linear fit."""

    theta: float
    times: np.ndarray
    sigmas: np.ndarray
    slope: float
    intercept: float
    r_squared: float
    fit_window: tuple


def linear_fit(x, y):
    """Least-squares line fit returning (slope, intercept, r_squared)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    total = np.sum((y - y.mean()) ** 2)
    if total < 1e-20:
        r_squared = 1.0  # constant series is fit perfectly by a flat line
    else:
        r_squared = 1.0 - np.sum(residual ** 2) / total
    return float(slope), float(intercept), float(r_squared)


def sigma_series(init, theta, t_max, lat, fit_window=None):
    """Standard deviation sigma(t) for t = 0..t_max plus a linear fit.

    ``init`` is a state vector or an initial-state kind (then built at the
    lattice center).  The fit window defaults to [t_max/5, t_max], which
    skips the ballistic-onset transient.
    """
    if t_max < 1:
        raise ValueError(f"t_max must be >= 1, got {t_max!r}")
    state = _resolve_initial(init, lat)
    check_spread_room(state, t_max, lat)
    if fit_window is None:
        fit_window = (math.ceil(t_max / 5), t_max)
    lo, hi = fit_window
    if not (0 <= lo < hi <= t_max):
        raise ValueError(f"fit window {fit_window!r} outside 0..{t_max}")
    times = np.arange(t_max + 1)
    sigmas = np.empty(t_max + 1)
    sigmas[0] = std_deviation(state, lat)
    for t in range(1, t_max + 1):
        state = step(state, theta, lat)
        sigmas[t] = std_deviation(state, lat)
    mask = (times >= lo) & (times <= hi)
    slope, intercept, r_squared = linear_fit(times[mask], sigmas[mask])
    return SigmaSeries(theta=float(theta), times=times, sigmas=sigmas,
                       slope=slope, intercept=intercept, r_squared=r_squared,
                       fit_window=(lo, hi))


def theta_sweep(init, t_probe, thetas, lat):
    """Spreading rate sigma(t_probe)/t_probe for each angle in ``thetas``."""
    thetas = list(np.atleast_1d(np.asarray(thetas, dtype=float)))
    if not thetas:
        raise ValueError("theta grid is empty")
    if t_probe < 1:
        raise ValueError(f"t_probe must be >= 1, got {t_probe!r}")
    start = _resolve_initial(init, lat)
    check_spread_room(start, t_probe, lat)
    out = []
    for theta in thetas:
        state = start
        for _ in range(int(t_probe)):
            state = step(state, theta, lat)
        out.append((float(theta), std_deviation(state, lat) / t_probe))
    return out
