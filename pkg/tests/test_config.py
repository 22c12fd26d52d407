#!/usr/bin/env python
# -*- coding: utf-8 -*-

import os

import pytest

from wellcalc.config import Config, env_strings, parse_config, from_yaml, \
    load, format_config, DEFAULT_SEED
from wellcalc.exceptions import ConfigError


def test_env_strings():
    assert env_strings.seperator == 'WELLCALC_SEPERATOR'
    assert env_strings.divider == 'WELLCALC_DIVIDER'
    assert env_strings.workers == 'WELLCALC_WORKERS'
    assert env_strings.seed == 'WELLCALC_SEED'
    assert env_strings.out == 'WELLCALC_OUT'
    assert env_strings.config == 'WELLCALC_CONFIG'
    assert env_strings.debug == 'WELLCALC_DEBUG'


def test_Config(test_env_setup):
    config = Config()
    assert config.debug is not None
    assert config.workers == 2
    assert config.seed == 11
    assert config.out == 'results'

    # passed in values win over the environment
    config = Config(workers=1, seed=3, out='elsewhere')
    assert config.workers == 1
    assert config.seed == 3
    assert config.out == 'elsewhere'

    # test if variable is set to an empty string we return the default
    os.environ[env_strings.workers] = ''
    assert Config().workers == 1


def test_Config_defaults(clean_env):
    clean_env()
    config = Config()
    assert config.workers == 1
    assert config.seed == DEFAULT_SEED
    assert config.out == '.'

    with pytest.raises(ConfigError):
        Config(workers=0)


def test_parse_config(config_text):
    experiment = parse_config(config_text)
    assert experiment.domain.resolution == (64,)
    assert experiment.params.p == 3.0
    assert experiment.params.source == 'log'
    assert experiment.initial.modes == (((1,), 0.1), ((3,), 0.01))
    assert experiment.initial.seed == 11
    assert experiment.solver.t_end == 2.0
    assert experiment.solver.dt_max == pytest.approx(0.2)
    assert experiment.analysis.directions == 400

    assert parse_config(config_text, seed=5).initial.seed == 5


def test_parse_config_defaults():
    experiment = parse_config('[model]\np = 2.5\n')
    assert experiment.domain.dim == 1
    assert experiment.domain.resolution == (128,)
    assert experiment.initial.modes == ()
    assert experiment.initial.seed == DEFAULT_SEED
    assert experiment.solver.t_end == 5.0
    assert experiment.analysis.alpha is None

    square = parse_config('[domain]\ndim = 2\nlengths = 1, 2\n'
                          '[model]\np = 2\n[initial]\nmodes = 1,2:0.5\n'
                          '[analysis]\nalpha = none\n')
    assert square.domain.lengths == (1.0, 2.0)
    assert square.initial.modes == (((1, 2), 0.5),)


def test_parse_config_comments():
    text = '# leading\n; another\n[model]\np = 3  # inline\n'
    assert parse_config(text).params.p == 3.0


@pytest.mark.parametrize('text,lines', [
    ('[model]\np = 0.5\n', (2,)),
    ('[model]\np = 3\nq = 1\n', (3,)),
    ('[model]\np = 3\np = 4\n', (2, 3)),
    ('[model]\np = 3\n[model]\np = 4\n', (1, 3)),
    ('[model]\np = inf\n', (2,)),
    ('[model]\np = 3\n[initial]\nmodes = 0:1.0\n', (4,)),
    ('[model]\np = 3\n[solver]\nt_end = -1\n', (3,)),
    ('[nonsense]\n', (1,)),
    ('p = 3\n', (1,)),
    ('[model]\np\n', (2,)),
])
def test_parse_config_fails(text, lines):
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert exc.value.lines == lines


def test_parse_config_missing_model():
    with pytest.raises(ConfigError) as exc:
        parse_config('[domain]\ndim = 1\n')
    assert 'model' in str(exc.value)

    with pytest.raises(ConfigError):
        parse_config('[model]\nsource = log\n')


def test_parse_config_mode_dimension():
    with pytest.raises(ConfigError) as exc:
        parse_config('[domain]\ndim = 2\n[model]\np = 2\n'
                     '[initial]\nmodes = 1:0.5\n')
    assert exc.value.lines == (6,)


def test_format_config_round_trip(config_text):
    experiment = parse_config(config_text)
    assert parse_config(format_config(experiment)) == experiment

    square = parse_config('[domain]\ndim = 2\n[model]\np = 2\n'
                          '[initial]\nmodes = 1,1:0.25;2,1:-0.5\n')
    assert parse_config(format_config(square)) == square


def test_from_yaml(yaml_config):
    experiment = from_yaml(yaml_config)
    assert experiment.domain.resolution == (64,)
    assert experiment.initial.modes == (((1,), 0.1),)
    assert experiment.initial.seed == 11
    assert experiment.solver.t_end == 2.0

    assert load(yaml_config, seed=2).initial.seed == 2

    with pytest.raises(FileNotFoundError):
        from_yaml('not/a/file.yml')


def test_from_yaml_fails(tmpdir):
    path = tmpdir.join('dup.yml')
    path.write('model:\n  p: 3\n  p: 4\n')
    with pytest.raises(ConfigError) as exc:
        from_yaml(str(path))
    assert exc.value.lines == (2, 3)

    unknown = tmpdir.join('unknown.yaml')
    unknown.write('model:\n  p: 3\n  q: 1\n')
    with pytest.raises(ConfigError) as exc:
        from_yaml(str(unknown))
    assert exc.value.lines == (3,)


def test_load(config_text, tmpdir):
    path = tmpdir.join('run.cfg')
    path.write(config_text)
    assert load(str(path)) == parse_config(config_text)

    with pytest.raises(FileNotFoundError):
        load(str(tmpdir.join('missing.cfg')))
