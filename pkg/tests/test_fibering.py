#!/usr/bin/env python
# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from wellcalc.domain import DomainSpec
from wellcalc.functionals import ModelParams, J, I, I_delta
from wellcalc.fibering import RaySummary, j_on_ray, i_on_ray, beta_star, \
    nehari_energy
from wellcalc.exceptions import InvalidBeta, BracketError
from wellcalc.scenarios import random_fields

from .conftest import sine_field


@pytest.fixture(scope='module')
def fields():
    return random_fields(DomainSpec(resolution=64), 100, seed=5)


def test_RaySummary_matches_functionals():
    domain = DomainSpec(resolution=64)
    params = ModelParams(3)
    f = sine_field(domain, ((1, 1.0), (2, 0.3)))
    summary = RaySummary.from_field(f, params)

    for beta in (0.5, 1.0, 2.5):
        scaled = f.scaled(beta)
        assert j_on_ray(summary, beta, params) == pytest.approx(
            J(scaled, params), rel=1e-12)
        assert i_on_ray(summary, beta, params) == pytest.approx(
            I(scaled, params), rel=1e-12)
        assert i_on_ray(summary, beta, params, delta=1.5) == pytest.approx(
            I_delta(scaled, 1.5, params), rel=1e-12)

    twice = summary.scaled(2.0, params.p)
    assert j_on_ray(twice, 1.0, params) == pytest.approx(
        j_on_ray(summary, 2.0, params))


def test_positive_beta():
    summary = RaySummary(1.0, 1.0, 0.0)
    params = ModelParams(3)
    with pytest.raises(InvalidBeta) as exc:
        j_on_ray(summary, 0.0, params)
    assert 'greater than 0' in str(exc.value)

    with pytest.raises(InvalidBeta):
        i_on_ray(summary, beta=-1.0, params=params)

    with pytest.raises(InvalidBeta):
        j_on_ray(summary, np.array([1.0, -2.0]), params)


def test_beta_star_is_a_root(fields):
    params = ModelParams(3)
    for f in fields:
        summary = RaySummary.from_field(f, params)
        beta = beta_star(summary, params)
        scale = beta ** 2 * summary.G + beta ** (1 + params.p) * (
            abs(summary.L) + summary.P * abs(math.log(beta)))
        assert abs(i_on_ray(summary, beta, params)) <= 1e-10 * scale
        assert i_on_ray(summary, 0.5 * beta, params) > 0
        assert i_on_ray(summary, 2 * beta, params) < 0
        assert j_on_ray(summary, 1e3, params) < 0


def test_beta_star_maximizes_J(fields):
    params = ModelParams(3)
    for f in fields[:10]:
        summary = RaySummary.from_field(f, params)
        beta = beta_star(summary, params)
        grid = np.linspace(0.5 * beta, 1.5 * beta, 2001)
        scan = j_on_ray(summary, grid, params)
        # the scan resolves the maximizer to its own spacing
        spacing = grid[1] - grid[0]
        assert abs(grid[int(np.argmax(scan))] - beta) <= spacing
        assert j_on_ray(summary, beta, params) >= np.max(scan) - \
            1e-12 * abs(np.max(scan))


def test_beta_star_sine_ray():
    domain = DomainSpec(resolution=128)
    params = ModelParams(3)
    summary = RaySummary.from_field(sine_field(domain, ((1, 1.0),)), params)
    beta = beta_star(summary, params)
    assert beta == pytest.approx(3.42, abs=0.01)
    assert nehari_energy(summary, params) == pytest.approx(17.6, abs=0.1)


def test_beta_star_vectorized():
    params = ModelParams(3)
    summaries = [RaySummary(1.0, 1.0, 0.0), RaySummary(4.0, 0.5, -0.2),
                 RaySummary(1e-6, 2.0, 5.0)]
    batch = RaySummary(*map(np.array, zip(*summaries)))
    betas = beta_star(batch, params, delta=0.7)
    assert betas.shape == (3,)
    for summary, beta in zip(summaries, betas):
        assert beta == pytest.approx(beta_star(summary, params, delta=0.7),
                                     rel=1e-12)
        assert isinstance(beta_star(summary, params), float)


def test_beta_star_delta_family():
    params = ModelParams(3)
    summary = RaySummary(2.0, 1.0, -0.1)
    small = beta_star(summary, params, delta=0.5)
    large = beta_star(summary, params, delta=2.0)
    assert small < beta_star(summary, params) < large
    assert i_on_ray(summary, large, params, delta=2.0) == pytest.approx(
        0.0, abs=1e-9)


def test_beta_star_fails():
    params = ModelParams(3)
    with pytest.raises(BracketError):
        beta_star(RaySummary(0.0, 1.0, 0.0), params)

    with pytest.raises(BracketError):
        beta_star(RaySummary(1.0, 0.0, 0.0), params)
