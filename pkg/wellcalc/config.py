# -*- coding: utf-8 -*-

from typing import Dict, Optional, Any, Tuple
import os
import sys
import math
import logging
from collections import namedtuple

import yaml

from .domain import DomainSpec
from .functionals import ModelParams
from .solver import SolverConfig
from .wells import AnalysisConfig
from .exceptions import ConfigError, WellCalcError
from .utils import dict_from_env_string, bool_from_env_string, \
    parse_input_string

DEBUG = bool_from_env_string(
    os.environ.get('DEBUG', os.environ.get('WELLCALC_DEBUG', 'false'))
)

if DEBUG is True:  # pragma: no cover
    logging.basicConfig(
        stream=sys.stdout,
        level=logging.DEBUG,
        format='%(levelname)s - (%(filename)s::%(funcName)s):msg: %(message)s'
    )
else:  # pragma: no cover
    logging.basicConfig(
        stream=sys.stdout,
        level=logging.INFO,
        format='%(levelname)s: %(message)s'
    )

logger = logging.getLogger(__name__)
logger.debug('In debug mode.')

ENV_PREFIX = 'WELLCALC'
"""The prefix to use for all environment variables."""

DEFAULT_SEED = 7
"""The seed used when neither the environment nor a config sets one."""


_EnvStrings = namedtuple('_EnvStrings', ('seperator', 'divider', 'workers',
                                         'seed', 'out', 'config', 'debug'))

env_strings = _EnvStrings(*map(lambda x: ENV_PREFIX + '_' + x.upper(),
                               _EnvStrings._fields))
"""A named tuple that holds all the commonly used environment variables.
Primarily used to avoid typo's and make an IDE work better.
"""


class Config(object):
    """The runtime settings that are not part of an experiment.  These
    variables can either be passed in or retrieved from their corresponding
    environment variable.

    :param workers:  Worker processes for sweeps and the property suite.
                     Defaults to ``1``, which runs in process.  Can be set by
                     ``WELLCALC_WORKERS``.
    :param seed:  The default random seed.  Defaults to ``7``.  Can be set by
                  ``WELLCALC_SEED``.
    :param out:  The output directory.  Defaults to ``'.'``.  Can be set by
                 ``WELLCALC_OUT``.
    :param debug:  A bool to put the calculator into debug mode.  Defaults to
                   ``False``.

    """
    def __init__(self, *, workers: int=None, seed: int=None, out: str=None,
                 debug: bool=None) -> None:

        self.debug = bool(debug) if debug is not None else DEBUG

        self.workers = int(workers) if workers is not None else \
            int(self._get(env_strings.workers, '1'))

        self.seed = int(seed) if seed is not None else \
            int(self._get(env_strings.seed, str(DEFAULT_SEED)))

        self.out = str(out) if out else self._get(env_strings.out, '.')

        if self.workers < 1:
            raise ConfigError("workers should be >= 1, got '{}'".format(
                self.workers))

    def _get(self, key: str, default: Optional[str]) -> str:
        """Ensures that if an env var is set to an empty string ('') we return
        the default value.
        """
        var = os.environ.get(key, default)
        if var == '':
            return default
        return var


class InitialData(namedtuple('InitialData', ('modes', 'seed', 'random_modes',
                                             'random_amplitude'))):
    """The initial data ``sum amp * phi_k`` plus optional random modes.

    :param modes:  A tuple of ``(index tuple, amplitude)`` pairs.
    :param seed:  The seed of the random modes.
    :param random_modes:  How many of the lowest modes get a random
                          amplitude.  Default ``0``.
    :param random_amplitude:  The scale of the random amplitudes, which
                              decay like ``1 / (1 + lambda_k)``.  Default
                              ``0.1``.

    """
    __slots__ = ()

    def __new__(cls, modes=(), seed: int=DEFAULT_SEED, random_modes: int=0,
                random_amplitude: float=0.1) -> 'InitialData':
        modes = tuple((tuple(int(i) for i in index), float(amplitude))
                      for index, amplitude in modes)
        return super().__new__(cls, modes, int(seed), int(random_modes),
                               float(random_amplitude))


ExperimentConfig = namedtuple('ExperimentConfig', ('domain', 'params',
                                                   'initial', 'solver',
                                                   'analysis'))
"""A parsed experiment: a :py:class:`~wellcalc.domain.DomainSpec`,
:py:class:`~wellcalc.functionals.ModelParams`, :py:class:`InitialData`,
:py:class:`~wellcalc.solver.SolverConfig` and
:py:class:`~wellcalc.wells.AnalysisConfig`.
"""


def _number(value: Any) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError("non-finite value '{}'".format(value))
    return value


def _integer(value: Any) -> int:
    number = _number(value)
    if number != int(number):
        raise ValueError("'{}' is not an integer".format(value))
    return int(number)


def _numbers(convert):
    def wrapper(value):
        if isinstance(value, (list, tuple)):
            values = tuple(map(convert, value))
        else:
            values = parse_input_string(value, seperator=',', convert=convert)
        return values[0] if len(values) == 1 else values
    return wrapper


def _modes(value: Any) -> Tuple[Tuple[Tuple[int], float]]:
    """Parse ``'k:amp;k:amp'`` (2-D indices ``'k1,k2:amp'``), or a mapping
    from a YAML file.
    """
    if isinstance(value, dict):
        items = value.items()
    else:
        items = dict_from_env_string(str(value), seperator=';',
                                     divider=':').items()
    modes = []
    for key, amplitude in items:
        index = tuple(_integer(k) for k in
                      parse_input_string(str(key), seperator=','))
        if not index or any(k < 1 for k in index):
            raise ValueError("mode indices should be >= 1, got '{}'".format(
                key))
        modes.append((index, _number(amplitude)))
    return tuple(modes)


def _optional(convert):
    def wrapper(value):
        if value is None or str(value).strip().lower() in ('', 'none'):
            return None
        return convert(value)
    return wrapper


def _source(value: Any) -> str:
    return str(value).strip()


SCHEMA = {
    'domain': {
        'dim': _integer,
        'lengths': _numbers(_number),
        'resolution': _numbers(_integer),
    },
    'model': {
        'p': _number,
        'source': _source,
    },
    'initial': {
        'modes': _modes,
        'seed': _integer,
        'random_modes': _integer,
        'random_amplitude': _number,
    },
    'solver': {
        't_end': _number,
        'dt_init': _number,
        'dt_min': _number,
        'dt_max': _number,
        'rel_tol': _number,
        'abs_tol': _number,
        'blowup_norm': _number,
        'oversample': _integer,
        'record_stride': _integer,
        'max_rejections': _integer,
    },
    'analysis': {
        'directions': _integer,
        'descent_starts': _integer,
        'descent_modes': _integer,
        'descent_sweeps': _integer,
        'delta_points': _integer,
        'safety_factor': _number,
        'sobolev_starts': _integer,
        'sobolev_budget': _integer,
        'alpha': _optional(_number),
        'near_critical': _number,
    },
}
"""Every section and key of an experiment config, with its converter."""

REQUIRED_SECTIONS = ('model',)


def _strip_comment(line: str) -> str:
    stripped = line.strip()
    if stripped.startswith(('#', ';')):
        return ''
    if '#' in stripped:
        stripped = stripped.split('#', 1)[0].strip()
    return stripped


def _read_text(text: str) -> Dict[str, Dict[str, Tuple[Any, int]]]:
    """Collect ``{section: {key: (value, lineno)}}`` from the sectioned
    ``key = value`` format.
    """
    raw = {}
    section = None
    for lineno, line in enumerate(str(text).splitlines(), start=1):
        line = _strip_comment(line)
        if not line:
            continue

        if line.startswith('['):
            if not line.endswith(']'):
                raise ConfigError("malformed section header '{}'".format(
                    line), lineno)
            section = line[1:-1].strip().lower()
            if section not in SCHEMA:
                raise ConfigError("unknown section '[{}]'".format(section),
                                  lineno)
            if section in raw:
                raise ConfigError(
                    "duplicate section '[{}]'".format(section),
                    lines=(raw[section]['__line__'], lineno))
            raw[section] = {'__line__': lineno}
            continue

        if '=' not in line:
            raise ConfigError("expected 'key = value', got '{}'".format(line),
                              lineno)
        if section is None:
            raise ConfigError('key outside of a section', lineno)

        key, value = (x.strip() for x in line.split('=', 1))
        key = key.lower()
        if key in raw[section]:
            raise ConfigError(
                "duplicate key '{}' in [{}]".format(key, section),
                lines=(raw[section][key][1], lineno))
        raw[section][key] = (value, lineno)

    return raw


def _build(raw: Dict[str, Dict[str, Tuple[Any, int]]], seed: int=None
           ) -> ExperimentConfig:
    for name in REQUIRED_SECTIONS:
        if name not in raw:
            raise ConfigError("missing section '[{}]'".format(name))

    values = {}
    for section, items in raw.items():
        values[section] = {}
        for key, entry in items.items():
            if key == '__line__':
                continue
            value, lineno = entry
            if key not in SCHEMA[section]:
                raise ConfigError("unknown key '{}' in [{}]".format(
                    key, section), lineno)
            try:
                values[section][key] = SCHEMA[section][key](value)
            except (TypeError, ValueError) as exc:
                raise ConfigError("invalid value for '{}': {}".format(
                    key, exc), lineno)

    def lineno(section, key=None):
        items = raw.get(section, {})
        if key is not None and key in items:
            return items[key][1]
        return items.get('__line__')

    def build(section, cls, **extra):
        try:
            return cls(**dict(values.get(section, {}), **extra))
        except WellCalcError as exc:
            raise ConfigError('[{}] {}'.format(section, exc.msg),
                              lineno(section))

    if 'p' not in values['model']:
        raise ConfigError("missing key 'p' in [model]", lineno('model'))

    try:
        params = ModelParams(**values['model'])
    except WellCalcError as exc:
        raise ConfigError(exc.msg, lineno('model', 'p'))

    domain = build('domain', DomainSpec)

    initial = dict(values.get('initial', {}))
    initial.setdefault('seed', DEFAULT_SEED if seed is None else seed)
    if seed is not None:
        initial['seed'] = seed
    for index, _ in initial.get('modes', ()):
        if len(index) != domain.dim:
            raise ConfigError(
                "mode '{}' should have {} indices".format(index, domain.dim),
                lineno('initial', 'modes'))
    initial = InitialData(**initial)

    return ExperimentConfig(domain, params, initial,
                            build('solver', SolverConfig),
                            build('analysis', AnalysisConfig))


def parse_config(text: str, seed: int=None) -> ExperimentConfig:
    """Parse an experiment from the sectioned ``key = value`` format.

    Lines starting with ``#`` or ``;`` are comments.  Every key but ``p`` has
    a default.

    :param text:  The config text.
    :param seed:  Overrides the seed of the initial data.

    :raises ConfigError:  With the offending line numbers, for unknown
                          sections or keys, duplicates, a missing ``[model]``
                          section, non-finite values or values out of range.


    Example::

        >>> parse_config('[model]\\np = 3\\n[initial]\\nmodes = 1:0.1').params
        ModelParams(p=3.0, source='log')

    """
    return _build(_read_text(text), seed=seed)


class _LineLoader(yaml.SafeLoader):
    """A ``SafeLoader`` that keeps line numbers and rejects duplicate keys.
    """


def _construct_mapping(loader, node, deep=False):
    mapping = {}
    for key_node, value_node in node.value:
        key = loader.construct_object(key_node, deep=deep)
        lineno = key_node.start_mark.line + 1
        if key in mapping:
            raise ConfigError("duplicate key '{}'".format(key),
                              lines=(mapping[key][1], lineno))
        mapping[key] = (loader.construct_object(value_node, deep=True),
                        lineno)
    return mapping


_LineLoader.add_constructor(
    yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_mapping)


def from_yaml(path: str, seed: int=None) -> ExperimentConfig:
    """Create an :py:class:`ExperimentConfig` from a yaml file with one
    mapping per section.

    :param path:  The path to the file.
    :param seed:  Overrides the seed of the initial data.

    :raises FileNotFoundError:  If the path is not a valid file.
    :raises ConfigError:  As :py:func:`parse_config`.

    """
    if not os.path.isfile(path):
        raise FileNotFoundError(path)

    with open(str(path)) as stream:
        try:
            data = yaml.load(stream, Loader=_LineLoader)
        except yaml.YAMLError as exc:
            raise ConfigError(str(exc))

    if not isinstance(data, dict):
        raise ConfigError('expected a mapping of sections')

    raw = {}
    for section, (items, lineno) in data.items():
        section = str(section).lower()
        if section not in SCHEMA:
            raise ConfigError("unknown section '{}'".format(section), lineno)
        if not isinstance(items, dict):
            raise ConfigError("section '{}' should be a mapping".format(
                section), lineno)
        raw[section] = {'__line__': lineno}
        for key, (value, key_line) in items.items():
            if isinstance(value, dict):
                value = {k: v for k, (v, _) in value.items()}
            raw[section][str(key).lower()] = (value, key_line)

    return _build(raw, seed=seed)


def load(path: str, seed: int=None) -> ExperimentConfig:
    """Load a config file, as yaml for ``.yml`` / ``.yaml`` files and as
    sectioned text otherwise.
    """
    if str(path).endswith(('.yml', '.yaml')):
        return from_yaml(path, seed=seed)
    if not os.path.isfile(path):
        raise FileNotFoundError(path)
    with open(str(path)) as stream:
        return parse_config(stream.read(), seed=seed)


def _value(value: Any) -> str:
    if isinstance(value, tuple):
        return ', '.join(map(_value, value))
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_config(experiment: ExperimentConfig) -> str:
    """Write an experiment in the sectioned ``key = value`` format, so that
    ``parse_config(format_config(x)) == x``.
    """
    lines = []

    def section(name, pairs):
        lines.append('[{}]'.format(name))
        for key, value in pairs:
            if value is not None:
                lines.append('{} = {}'.format(key, value))
        lines.append('')

    domain = experiment.domain
    section('domain', (('dim', domain.dim),
                       ('lengths', _value(domain.lengths)),
                       ('resolution', _value(domain.resolution))))
    section('model', (('p', _value(experiment.params.p)),
                      ('source', experiment.params.source)))

    initial = experiment.initial
    modes = ';'.join('{}:{}'.format(','.join(map(str, index)),
                                    _value(amplitude))
                     for index, amplitude in initial.modes)
    section('initial', (('modes', modes or None), ('seed', initial.seed),
                        ('random_modes', initial.random_modes),
                        ('random_amplitude',
                         _value(initial.random_amplitude))))
    section('solver', ((key, _value(value)) for key, value in
                       experiment.solver._asdict().items()))
    section('analysis', ((key, None if value is None else _value(value))
                         for key, value in
                         experiment.analysis._asdict().items()))
    return '\n'.join(lines)
