#!/usr/bin/env python
# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from wellcalc.domain import DomainSpec, Field
from wellcalc.functionals import ModelParams, integrals, nehari_delta, \
    energy
from wellcalc.fibering import RaySummary, beta_star, j_on_ray
from wellcalc.wells import AnalysisConfig, WellConstants, \
    estimate_sobolev_constant, sobolev_quotient, r_of_delta, d_formula, \
    estimate_well_depth, well_curve, nehari_points, delta_zero, \
    delta_roots, lambda_alpha, in_W, in_V, in_W_delta, in_V_delta, \
    classify_initial, high_energy_constant, Regime, DELTA_MIN
from wellcalc.exceptions import InvalidParameter, InvalidDelta, \
    DomainMismatch
from wellcalc.scenarios import random_fields

from .conftest import sine_field, SMALL_ANALYSIS


def test_AnalysisConfig():
    analysis = AnalysisConfig()
    assert analysis.directions == 400
    assert analysis.delta_points == 200
    assert analysis.safety_factor == 1.05
    assert analysis.alpha is None

    with pytest.raises(InvalidParameter):
        AnalysisConfig(safety_factor=0.9)

    with pytest.raises(InvalidParameter):
        AnalysisConfig(delta_points=2)

    with pytest.raises(InvalidParameter):
        AnalysisConfig(directions=-1)

    with pytest.raises(InvalidParameter):
        AnalysisConfig(near_critical=1.5)


def test_WellConstants(constants, params, domain):
    assert constants.sobolev_C > 0
    assert constants.c_eff == pytest.approx(1.05 * constants.sobolev_C)
    assert constants.lambda1 == pytest.approx(math.pi ** 2)
    assert constants.delta0 > (1 + params.p) / 2
    assert constants.alpha == 2 * constants.d_hat
    assert constants.d_formula_at_1 == pytest.approx(
        d_formula(1.0, constants))

    with pytest.raises(InvalidParameter):
        WellConstants(constants.sobolev_C, lambda1=constants.lambda1,
                      d_hat=-1.0, delta0=constants.delta0, params=params,
                      domain=domain)

    with pytest.raises(InvalidParameter):
        WellConstants(constants.sobolev_C, lambda1=constants.lambda1,
                      d_hat=1.0, delta0=1.5, params=params, domain=domain)


def test_sobolev_constant_bounds_every_field(constants, params, domain):
    # the estimate is a supremum: no sampled quotient may exceed it by much
    for f in random_fields(domain, 50, seed=9):
        assert sobolev_quotient(f, params) <= constants.sobolev_C * \
            (1 + 1e-6)


def test_sobolev_constant_budget(params):
    domain = DomainSpec(resolution=32)
    low, _ = estimate_sobolev_constant(domain, params, budget=5, starts=2,
                                       seed=1)
    high, diagnostics = estimate_sobolev_constant(domain, params,
                                                  budget=200, starts=2,
                                                  seed=1)
    assert high >= low * (1 - 1e-12)
    assert diagnostics.iterations > 0
    assert len(diagnostics.quotients) == 2


def test_sobolev_refinement_on_a_coarse_grid(params):
    domain = DomainSpec(resolution=12)
    best, diagnostics = estimate_sobolev_constant(
        domain, params, budget=20, starts=1, seed=1, refine=True)
    resolutions = [res for res, _ in diagnostics.refinement]
    assert resolutions == [(8,), (12,), (24,)]
    assert diagnostics.refinement[1][1] == best
    assert all(value > 0 for _, value in diagnostics.refinement)


def test_sobolev_constant_starts_agree(params):
    domain = DomainSpec(resolution=32)
    _, diagnostics = estimate_sobolev_constant(domain, params, budget=400,
                                               starts=4, seed=3)
    best = max(diagnostics.quotients)
    assert diagnostics.quotients[0] == pytest.approx(best, rel=1e-6)
    top = [q for q, ok in zip(diagnostics.quotients, diagnostics.converged)
           if ok and q > best * (1 - 1e-3)]
    for quotient in top:
        assert quotient == pytest.approx(best, rel=1e-8)


def test_r_of_delta(constants):
    p = constants.params.p
    for delta in (0.5, 1.0, 1.5):
        r = r_of_delta(delta, constants)
        assert constants.c_eff ** (p + 2) * r ** p == pytest.approx(delta)

    assert np.allclose(r_of_delta(np.array([0.5, 1.0]), constants),
                       [r_of_delta(0.5, constants),
                        r_of_delta(1.0, constants)])

    with pytest.raises(InvalidDelta):
        r_of_delta(0.0, constants)


def test_d_formula(constants):
    p = constants.params.p
    assert d_formula(0.5, constants) > 0
    with pytest.raises(InvalidDelta):
        d_formula((1 + p) / 2, constants)

    # stationary at (1 + p) / (p + 2)
    peak = (1 + p) / (p + 2)
    assert d_formula(peak, constants) >= d_formula(peak - 0.05, constants)
    assert d_formula(peak, constants) >= d_formula(peak + 0.05, constants)


def test_r_delta_inner_ball(constants, params, domain):
    # fields inside the ball of radius r(delta) have I_delta > 0
    for delta in (0.5, 1.0, 1.5):
        target = 0.99 * r_of_delta(delta, constants)
        for f in random_fields(domain, 100, seed=17):
            g = integrals(f, params).grad_sq
            scaled = f.scaled(target / math.sqrt(g))
            assert nehari_delta(integrals(scaled, params), delta, params) > 0


def test_well_curve(constants):
    curve = constants.curve
    grid, depth = curve.delta_grid, curve.d_nehari_values
    assert 1.0 in grid
    assert grid[0] == pytest.approx(DELTA_MIN)
    assert grid[-1] == pytest.approx(constants.delta0)
    assert len(grid) == SMALL_ANALYSIS.delta_points

    assert np.all(depth[grid < constants.delta0] > 0)
    assert abs(grid[int(np.argmax(depth))] - 1.0) <= 1e-2
    assert estimate_well_depth(1.0, constants) == constants.d_hat
    assert abs(depth[-1]) <= 1e-3 * constants.d_hat

    formula = curve.d_formula_values
    p = constants.params.p
    assert np.all(np.isnan(formula[grid >= (1 + p) / 2]))
    assert np.all(formula[grid < (1 + p) / 2] > 0)

    again = well_curve(constants)
    assert np.array_equal(again.d_nehari_values, depth)


def test_d_hat_above_formula(constants):
    # the formula is a lower bound of the depth
    assert constants.d_hat >= constants.d_formula_at_1


def test_d_hat_bounded_by_sine_ray(constants, params, domain):
    summary = RaySummary.from_field(sine_field(domain, ((1, 1.0),)), params)
    assert constants.d_hat <= j_on_ray(
        summary, beta_star(summary, params), params) * (1 + 1e-12)


def test_estimate_well_depth_budget(constants):
    # larger pools can only lower the estimate, same seed and no descent
    analysis = constants.analysis._replace(descent_starts=0)
    base = constants._replace(analysis=analysis)
    small = estimate_well_depth(1.0, base, budget=20)
    large = estimate_well_depth(1.0, base, budget=200)
    assert large <= small * (1 + 1e-12)

    with pytest.raises(InvalidDelta):
        estimate_well_depth(0.0, constants)


def test_nehari_points(constants):
    points = nehari_points(1.0, constants)
    params = constants.params
    residual = points.G - points.L
    assert np.all(np.abs(residual) <= 1e-9 * (points.G + np.abs(points.L)))
    assert np.min(j_on_ray(points, 1.0, params)) == pytest.approx(
        constants.d_hat)


def test_delta_zero(constants):
    assert delta_zero(constants) == pytest.approx(constants.delta0)
    assert abs(estimate_well_depth(constants.delta0, constants)) <= \
        1e-6 * constants.d_hat


def test_delta_roots(constants):
    eta = 0.5 * constants.d_hat
    delta1, delta2 = delta_roots(eta, constants)
    assert delta1 < 1 < delta2 <= constants.delta0
    assert estimate_well_depth(delta2, constants) == pytest.approx(
        eta, rel=1e-8)
    if delta1 > 0:
        assert estimate_well_depth(delta1, constants) == pytest.approx(
            eta, rel=1e-8)

    assert delta_roots(constants.d_hat, constants) == (1.0, 1.0)

    with pytest.raises(InvalidDelta):
        delta_roots(2 * constants.d_hat, constants)

    with pytest.raises(InvalidDelta):
        delta_roots(0.0, constants)


def test_delta_roots_tiny_eta(constants):
    delta1, delta2 = delta_roots(1e-9 * constants.d_hat, constants)
    assert delta1 == 0.0
    assert delta2 > 1


def test_lambda_alpha(constants):
    bounds = lambda_alpha(constants.alpha, constants)
    assert bounds.lower_bound == pytest.approx(
        (1 / constants.c_eff) ** (2 / constants.params.p))
    assert bounds.estimate is not None
    assert bounds.estimate > 0

    with pytest.raises(InvalidParameter):
        lambda_alpha(0.5 * constants.d_hat, constants)


def test_lambda_alpha_budget(constants):
    # a larger pool can only find smaller norms, same seed and no descent
    analysis = constants.analysis._replace(descent_starts=0)
    base = constants._replace(analysis=analysis)
    alpha = 1e3 * constants.d_hat
    small = lambda_alpha(alpha, base, budget=40)
    large = lambda_alpha(alpha, base, budget=400)
    assert small.lower_bound == large.lower_bound
    assert large.estimate <= small.estimate * (1 + 1e-12)

    stored = lambda_alpha(constants.alpha, constants)
    assert lambda_alpha(constants.alpha, constants, budget=None) == stored


def test_membership(constants, domain):
    zero = Field.zeros(domain)
    assert in_W(zero, constants)
    assert in_W_delta(zero, 0.5, constants)
    assert not in_V(zero, constants)

    small = sine_field(domain, ((1, 0.1),))
    assert in_W(small, constants)
    assert in_W_delta(small, 0.5, constants)
    assert not in_V(small, constants)

    large = sine_field(domain, ((1, 20.0),))
    assert not in_W(large, constants)
    assert in_V(large, constants)

    with pytest.raises(DomainMismatch):
        in_W(Field.zeros(DomainSpec(resolution=16)), constants)


def test_in_V_delta(constants, domain, params):
    summary = RaySummary.from_field(sine_field(domain, ((1, 1.0),)), params)
    peak = beta_star(summary, params)
    # far out on the ray J is small again and I < 0
    big = peak
    while j_on_ray(summary, big, params) > 0.5 * constants.d_hat:
        big *= 1.05
    f = sine_field(domain, ((1, big),))
    assert in_V(f, constants)
    assert in_V_delta(f, 1.0, constants)


def test_classify_initial_decay(constants, domain):
    report = classify_initial(sine_field(domain, ((1, 0.1),)), constants)
    assert report.predicted_regime is Regime.GlobalDecay
    assert report.predicted_regime.is_global
    assert report.in_W and not report.in_V
    assert report.I0 > 0
    assert 0 < report.J0 < report.d_hat
    assert report.delta1 is not None and report.delta1 < 1
    lam = constants.lambda1
    assert report.mu_pred == pytest.approx(
        (1 - report.delta1) * lam / (1 + lam))
    assert len(report.in_W_delta) == len(report.delta_grid)
    assert not report.near_critical


def test_classify_initial_zero(constants, domain):
    report = classify_initial(Field.zeros(domain), constants)
    assert report.predicted_regime is Regime.Indeterminate
    assert report.in_W
    assert report.J0 == 0


def test_classify_initial_high_energy(constants, domain):
    report = classify_initial(sine_field(domain, ((1, 4.5),)), constants)
    assert all(report.high_energy_checks)
    assert report.predicted_regime.is_blowup
    assert high_energy_constant(constants) == pytest.approx(4.40, abs=0.01)


def test_classify_initial_domain_mismatch(constants):
    with pytest.raises(DomainMismatch):
        classify_initial(Field.zeros(DomainSpec(resolution=32)), constants)


def test_nehari_sign_constant_between_roots(domain, params, constants):
    checked = 0
    for f in random_fields(domain, 60, seed=11):
        parts = integrals(f, params)
        j = energy(parts, params)
        if not 0 < j < constants.d_hat:
            continue
        delta1, delta2 = delta_roots(j, constants)
        grid = np.linspace(delta1, delta2, 22)[1:-1]
        signs = {np.sign(nehari_delta(parts, delta, params))
                 for delta in grid}
        assert len(signs) == 1
        assert 0.0 not in signs
        checked += 1
    assert checked > 0
