"""Random walks on scaled N-th roots of unity and their higher-order heat equations."""

from ._rootwalk import (
    BudgetExceeded,
    CauchyProblem,
    Estimate,
    EstimateKind,
    PowerSeries,
    TimeFunction,
    TruncationError,
    WalkSpec,
    characteristic_function,
    characteristic_limit,
    effective_time,
    exact_moments,
    exit_statistics,
    exp_functional_limit,
    exp_functional_mc,
    expect_exact,
    expect_mc,
    expected_ito_integral_exact,
    fk_residual,
    fk_solution_closed,
    ito_formula_check,
    leading_term,
    limit_series,
    remainder_bound,
    residual,
    sample_path,
    solve_probabilistic,
    solve_series,
    step_power_moment,
)

__version__ = "0.1.0"
