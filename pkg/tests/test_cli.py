#!/usr/bin/env python
# -*- coding: utf-8 -*-

import os
import json

import pytest
from click.testing import CliRunner

from wellcalc.cli import main, EXIT_CONFIG, EXIT_PROPERTY, EXIT_NUMERICAL
from wellcalc import scenarios
from wellcalc.exceptions import PropertyFailure, StepCollapse, \
    BracketError, NoNehariPoint


_small = """
[domain]
resolution = 64

[model]
p = 3

[initial]
modes = 1:0.1

[solver]
t_end = 2.0

[analysis]
directions = 60
descent_starts = 2
descent_modes = 6
descent_sweeps = 10
delta_points = 40
sobolev_starts = 3
sobolev_budget = 150
"""


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def small_config(tmpdir):
    path = tmpdir.join('small.cfg')
    path.write(_small)
    return str(path)


def _invoke(runner, config, out, *args):
    return runner.invoke(main, ['--config', config, '--out', out] +
                         list(args))


def test_help(runner):
    result = runner.invoke(main, ['--help'])
    assert result.exception is None
    assert 'analyze' in result.output
    assert 'verify' in result.output

    for command in ('analyze', 'classify', 'simulate', 'preset', 'sweep',
                    'verify'):
        result = runner.invoke(main, [command, '--help'])
        assert result.exception is None


def test_analyze(runner, small_config, tmpdir):
    out = str(tmpdir.join('out'))
    result = _invoke(runner, small_config, out, 'analyze')
    assert result.exception is None
    assert 'd_hat = ' in result.output
    assert os.path.isfile(os.path.join(out, 'constants.json'))
    assert os.path.isfile(os.path.join(out, 'curve.csv'))


def test_classify(runner, small_config, tmpdir):
    out = str(tmpdir.join('out'))
    result = _invoke(runner, small_config, out, '--no-color', 'classify')
    assert result.exception is None
    assert 'GlobalDecay' in result.output
    assert 'REGIME' in result.output

    result = _invoke(runner, small_config, out, 'classify', '--preset', 'S1',
                     '--quiet')
    assert result.exception is None
    assert result.output.startswith('GlobalDecay: J0 = ')

    with open(os.path.join(out, 'report.json')) as stream:
        assert json.load(stream)['predicted_regime'] == 'GlobalDecay'


def test_simulate(runner, small_config, tmpdir):
    out = str(tmpdir.join('out'))
    result = _invoke(runner, small_config, out, 'simulate')
    assert result.exception is None
    assert result.output.startswith('Completed: t = 2')
    assert os.path.isfile(os.path.join(out, 'trajectory.csv'))
    assert os.path.isfile(os.path.join(out, 'summary.json'))


def test_preset(runner, small_config, tmpdir):
    out = str(tmpdir.join('out'))
    result = _invoke(runner, small_config, out, 'preset', 'S1')
    assert result.exception is None
    assert os.path.isfile(os.path.join(out, 'S1_subcritical_decay.cfg'))

    result = _invoke(runner, small_config, out, 'preset', 'S7')
    assert result.exit_code == 2


def test_sweep(runner, small_config, tmpdir):
    out = str(tmpdir.join('out'))
    result = _invoke(runner, small_config, out, '--no-color', 'sweep',
                     '--amplitudes', '0.1;20')
    assert result.exception is None
    assert 'GlobalDecay' in result.output
    assert 'Blowup' in result.output

    with open(os.path.join(out, 'sweep.csv')) as stream:
        assert len(stream.read().splitlines()) == 3

    result = _invoke(runner, small_config, out, 'sweep', '--amplitudes',
                     '0.1;-2')
    assert result.exit_code == 2


def test_verify_fails_with_exit_code(runner, small_config, tmpdir,
                                     monkeypatch):
    def failing(experiment, out, constants=None, workers=1):
        raise PropertyFailure('failed properties: identity')

    monkeypatch.setattr('wellcalc.cli.run_verify', failing)
    result = _invoke(runner, small_config, str(tmpdir), 'verify')
    assert result.exit_code == EXIT_PROPERTY
    assert 'identity' in result.output


def test_verify_runs_the_suite(runner, small_config, tmpdir, monkeypatch):
    calls = []

    def passing(experiment, out, constants=None, workers=1):
        calls.append((experiment.analysis.directions, out, workers))
        return [scenarios.PropertyResult('identity', True, 400, 0)]

    monkeypatch.setattr('wellcalc.cli.run_verify', passing)
    out = str(tmpdir.join('verify'))
    result = _invoke(runner, small_config, out, '--workers', '2', 'verify')
    assert result.exception is None
    assert '1 properties passed' in result.output
    assert calls == [(60, out, 2)]


def test_bad_config_exits_with_config_code(runner, tmpdir):
    path = tmpdir.join('bad.cfg')
    path.write('[model]\np = 0.5\n')
    result = runner.invoke(main, ['--config', str(path), 'analyze'])
    assert result.exit_code == EXIT_CONFIG
    assert 'line 2' in result.output


def test_budget_and_seed_overrides(runner, small_config, tmpdir,
                                   monkeypatch):
    seen = []

    def fake_analyze(experiment, out, workers=1):
        seen.append(experiment)
        raise PropertyFailure('stop here')

    monkeypatch.setattr('wellcalc.cli.run_analyze', fake_analyze)
    result = _invoke(runner, small_config, str(tmpdir), '--budget', '10',
                     '--seed', '4', 'analyze')
    assert result.exit_code == EXIT_PROPERTY
    assert seen[0].analysis.directions == 10
    assert seen[0].initial.seed == 4


@pytest.mark.parametrize('error', [StepCollapse, BracketError,
                                   NoNehariPoint])
def test_numerical_failures_exit(error, runner, small_config, tmpdir,
                                 monkeypatch):
    def failing(experiment, out, workers=1):
        raise error('no convergence')

    monkeypatch.setattr('wellcalc.cli.run_analyze', failing)
    result = _invoke(runner, small_config, str(tmpdir), 'analyze')
    assert result.exit_code == EXIT_NUMERICAL
    assert 'no convergence' in result.output
