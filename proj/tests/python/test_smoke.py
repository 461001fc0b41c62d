import cmath
import math

import pytest

import rootwalk as rw


def test_walk_spec():
    spec = rw.WalkSpec(3, 1 + 0j, 100)
    assert spec.order == 3
    assert spec.steps_until(0.5) == 50
    assert abs(spec.root - 1) < 1e-15
    with pytest.raises(ValueError):
        rw.WalkSpec(2, 0j, 10)


def test_moments_vanish_off_multiples():
    spec = rw.WalkSpec(3, 1 + 0j, 50)
    m = rw.exact_moments(spec, 50, 6)
    assert abs(m[1]) < 1e-12 and abs(m[2]) < 1e-12
    # E[W^3] = m n^{-1} E[xi^3] = 1 for m = n
    assert abs(m[3] - 1) < 1e-12


def test_exact_expectation_matches_cosh_product():
    spec = rw.WalkSpec(2, 1 + 0j, 10)
    est = rw.expect_exact(spec, 10, rw.PowerSeries.exponential(), 0j)
    assert abs(est.value - math.cosh(10 ** -0.5) ** 10) < 1e-12


def test_limit_series_for_heat_equation():
    spec = rw.WalkSpec(2, 1 + 0j, 1)
    est = rw.limit_series(spec, 1.0, rw.PowerSeries.exponential(), 0j)
    assert abs(est.value - math.exp(0.5)) < 1e-12
    assert est.error < 1e-12


def test_mc_is_worker_invariant():
    spec = rw.WalkSpec(4, 1 + 0j, 200)
    f = rw.PowerSeries.exponential()
    a = rw.expect_mc(spec, 1.0, f, 0j, paths=2000, seed=7, workers=1)
    b = rw.expect_mc(spec, 1.0, f, 0j, paths=2000, seed=7, workers=4)
    assert a.value == b.value
    assert a.kind == rw.EstimateKind.mc_confidence


def test_solve_series_and_residual():
    problem = rw.CauchyProblem(2, 1 + 0j, rw.TimeFunction.constant(1 + 0j), rw.PowerSeries.exponential())
    u = rw.solve_series(problem, 0.5, 0j)
    assert abs(u.value - math.exp(0.25)) < 1e-12
    assert rw.residual(problem, 0.5, 0j) < 1e-8


def test_feynman_kac_closed_form():
    spec = rw.WalkSpec(2, 1j, 1000)
    a = rw.TimeFunction.constant(1 + 0j)
    value = rw.exp_functional_limit(spec, 1.0, a)
    assert abs(value - cmath.exp(1j / 6)) < 1e-12


def test_budget_error_is_raised():
    spec = rw.WalkSpec(4, 1 + 0j, 100)
    with pytest.raises(rw.BudgetExceeded):
        rw.expect_exact(spec, 100, rw.PowerSeries.exponential(), 0j, budget=10)


def test_exit_statistics_shape():
    spec = rw.WalkSpec(2, 1 + 0j, 100)
    st = rw.exit_statistics(spec, 0.5, paths=500, seed=3)
    assert st["samples"] == 500
    # the overshoot past R pushes the mean above the nominal upper bound
    assert st["lower_bound"] <= st["mean"] <= st["lower_bound"] + 2 * 0.5 * 100 ** -0.5 + 0.01
    assert st["truncated_fraction"] == 0
