"""Squeezed SU(2) coherent states from circle-averaged Gaussian states in
Bargmann space: exact reduction formulas, quadrature oracles, symbol
asymptotics, and quantum vs semiclassical propagation."""

from .bargmann import (
    SqueezeMatrix,
    bargmann_inner,
    gaussian_state_eval,
    husimi,
    quadratic_form,
    random_squeeze_matrix,
    unitary_covariance,
    weyl_translate_eval,
)
from .numerics import (
    BlowUpError,
    ConvergenceError,
    hermitian_propagator,
    log_binomial,
    periodic_quadrature,
    rk4_solve,
    takagi_values,
)
from .propagation import (
    CompareReport,
    DiskExitError,
    HamiltonianSpec,
    HessianBlocks,
    PropagationResult,
    chart_eval,
    chart_point,
    classical_lift_eval,
    compare_propagation,
    delta_phase,
    hamilton_field,
    hamilton_flow,
    hessian_blocks,
    moment_components,
    quantize,
    quantum_propagate,
    semiclassical_prediction,
    spin_operators,
    symbol_ode_solve,
)
from .reduction import (
    GaussianSymbol,
    center_value_asymptotic,
    reduce_exact,
    reduce_quadrature,
    reduce_symbol_matrix,
    reduced_inner_estimate,
    rotation_to_first_axis,
    symbol_eval_closed,
    symbol_eval_integral,
    symbol_inner,
    symbol_limit_residual,
)
from .spin import (
    SpinState,
    basis_norm_factor,
    husimi_cp1,
    ket_mu,
    ket_mu_norm,
    ket_pmu,
    load_state_csv,
    poly_to_state,
    reduced_to_state,
    save_state_csv,
    state_inner,
    state_norm,
    state_to_poly,
    su2_action,
)
from .validation import CheckResult, run_suite, suite_names

__version__ = "0.1.0"

__all__ = [
    "SqueezeMatrix",
    "bargmann_inner",
    "gaussian_state_eval",
    "husimi",
    "quadratic_form",
    "random_squeeze_matrix",
    "unitary_covariance",
    "weyl_translate_eval",
    "BlowUpError",
    "ConvergenceError",
    "hermitian_propagator",
    "log_binomial",
    "periodic_quadrature",
    "rk4_solve",
    "takagi_values",
    "CompareReport",
    "DiskExitError",
    "HamiltonianSpec",
    "HessianBlocks",
    "PropagationResult",
    "chart_eval",
    "chart_point",
    "classical_lift_eval",
    "compare_propagation",
    "delta_phase",
    "hamilton_field",
    "hamilton_flow",
    "hessian_blocks",
    "moment_components",
    "quantize",
    "quantum_propagate",
    "semiclassical_prediction",
    "spin_operators",
    "symbol_ode_solve",
    "GaussianSymbol",
    "center_value_asymptotic",
    "reduce_exact",
    "reduce_quadrature",
    "reduce_symbol_matrix",
    "reduced_inner_estimate",
    "rotation_to_first_axis",
    "symbol_eval_closed",
    "symbol_eval_integral",
    "symbol_inner",
    "symbol_limit_residual",
    "SpinState",
    "basis_norm_factor",
    "husimi_cp1",
    "ket_mu",
    "ket_mu_norm",
    "ket_pmu",
    "load_state_csv",
    "poly_to_state",
    "reduced_to_state",
    "save_state_csv",
    "state_inner",
    "state_norm",
    "state_to_poly",
    "su2_action",
    "CheckResult",
    "run_suite",
    "suite_names",
    "__version__",
]
