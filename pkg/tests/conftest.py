#!/usr/bin/env python
# -*- coding: utf-8 -*-

import os
import math
import logging
import tempfile

import numpy as np
import pytest
import yaml

from wellcalc.config import env_strings as env, ExperimentConfig, \
    InitialData
from wellcalc.domain import DomainSpec, Field
from wellcalc.functionals import ModelParams
from wellcalc.solver import SolverConfig
from wellcalc.wells import AnalysisConfig, analyze_wells

logger = logging.getLogger(__name__)

SMALL_ANALYSIS = AnalysisConfig(
    directions=60, descent_starts=2, descent_modes=6, descent_sweeps=10,
    delta_points=40, sobolev_starts=3, sobolev_budget=150)
"""Budgets that keep a well analysis to a second or two."""


_config = """
# a decaying run
[domain]
dim = 1
resolution = 64

[model]
p = 3

[initial]
modes = 1:0.1;3:0.01
seed = 11

[solver]
t_end = 2.0
"""

_yaml_config = {
    'domain': {'dim': 1, 'resolution': 64},
    'model': {'p': 3},
    'initial': {'modes': '1:0.1', 'seed': 11},
    'solver': {'t_end': 2.0},
}


@pytest.fixture()
def config_text():
    return _config


@pytest.fixture(scope='session')
def yaml_config():
    tmp_file, path = tempfile.mkstemp(suffix='.yml')

    with open(tmp_file, 'w') as stream:
        yaml.safe_dump(_yaml_config, stream)

    yield path

    os.remove(path)


def _clean_up_env():
    logger.debug('cleaning env')
    for key in env:
        try:
            del(os.environ[key])
        except KeyError:
            pass


@pytest.fixture()
def clean_env():
    return _clean_up_env


@pytest.fixture()
def test_env_setup(clean_env):
    os.environ[env.workers] = '2'
    os.environ[env.seed] = '11'
    os.environ[env.out] = 'results'

    yield

    clean_env()


@pytest.fixture(scope='session')
def domain():
    return DomainSpec(resolution=64)


@pytest.fixture(scope='session')
def params():
    return ModelParams(3)


@pytest.fixture(scope='session')
def constants(domain, params):
    return analyze_wells(domain, params, SMALL_ANALYSIS, seed=7)


@pytest.fixture()
def experiment(domain, params):
    return ExperimentConfig(domain, params, InitialData(seed=7),
                            SolverConfig(), SMALL_ANALYSIS)


def sine_field(domain, modes):
    """``sum a * sin(k pi x / L)`` on the grid of a 1-D domain."""
    length = domain.lengths[0]
    return Field.from_function(domain, lambda x: sum(
        a * np.sin(k * math.pi * x / length) for k, a in modes))


def gauss_legendre(func, length, panels=64, order=16):
    """Composite Gauss-Legendre rule for ``integral_0^L func(x) dx``."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(0.0, length, panels + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        x = 0.5 * (b - a) * nodes + 0.5 * (a + b)
        total += 0.5 * (b - a) * float(np.sum(weights * func(x)))
    return total
