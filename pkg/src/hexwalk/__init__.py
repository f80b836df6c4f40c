"""Coinless quantum walk on the honeycomb torus.

Simulation and analysis of the three-tessellation walk on the hexagonal
lattice with cyclic boundary conditions: O(N) direct stepping,
O(N log N) momentum-space evolution, spreading-rate statistics,
return-probability decay diagnostics, and marked-vertex spatial search.
"""

from .dynamics import (
    SigmaSeries,
    centered_state,
    initial_state,
    sigma_series,
    std_deviation,
    theta_sweep,
)
from .errors import NumericalError
from .evolution import (
    apply_local_unitary,
    dense_evolution_matrix,
    evolve,
    probability_distribution,
    reflect,
    step,
)
from .lattice import COLORS, HexLattice
from .localization import (
    CriticalPoint,
    DecayFit,
    amplitude_at,
    decay_fit,
    find_critical_points,
    hessian_det_formula,
    hessian_det_numeric,
    phase_gradient,
)
from .search import (
    BoundsReport,
    OverlapReport,
    SearchAnalysis,
    SearchConfig,
    c_constant,
    lambda_exact,
    overlap_checks,
    predicted_runtime_and_probability,
    run_search,
    s_sum,
    search_step,
    uniform_state,
    verify_appendix_bounds,
)
from .spectral import (
    BlockEigensystem,
    FourierBlock,
    WalkSpectrum,
    block_eigensystem,
    cos_phi_asymptotic,
    forward_transform,
    fourier_block,
    inverse_transform,
    phi_min,
    spectral_evolve,
)

__version__ = "0.1.0"

__all__ = [
    "COLORS",
    "BlockEigensystem",
    "BoundsReport",
    "CriticalPoint",
    "DecayFit",
    "FourierBlock",
    "HexLattice",
    "NumericalError",
    "OverlapReport",
    "SearchAnalysis",
    "SearchConfig",
    "SigmaSeries",
    "WalkSpectrum",
    "amplitude_at",
    "apply_local_unitary",
    "block_eigensystem",
    "c_constant",
    "centered_state",
    "cos_phi_asymptotic",
    "decay_fit",
    "dense_evolution_matrix",
    "evolve",
    "find_critical_points",
    "forward_transform",
    "fourier_block",
    "hessian_det_formula",
    "hessian_det_numeric",
    "initial_state",
    "inverse_transform",
    "lambda_exact",
    "overlap_checks",
    "phase_gradient",
    "phi_min",
    "predicted_runtime_and_probability",
    "probability_distribution",
    "reflect",
    "run_search",
    "s_sum",
    "search_step",
    "sigma_series",
    "spectral_evolve",
    "std_deviation",
    "step",
    "theta_sweep",
    "uniform_state",
    "verify_appendix_bounds",
]
