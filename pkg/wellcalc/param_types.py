# -*- coding: utf-8 -*-

from typing import Any, Tuple
import math
import logging

import click
import wrapt

from .utils import parse_input_string
from .exceptions import ConfigError
from .config import ExperimentConfig, load
from .scenarios import PRESETS

logger = logging.getLogger(__name__)


@wrapt.decorator
def parse_input_value(wrapped, instance, args, kwargs):
    """A decorator to parse the first arg with ``parse_input_string``, before
    sending on to the wrapped function/method.  This method allows multiple
    values to be passed into a command line option as a single string, split on
    the default seperator ``';'``.

    Works properly with methods attached to classes or stand alone functions.

    Example::

        >>> @parse_input_value
        ... def decorated(values):
        ...    print(values)
        >>> decorated('0.05;0.1;')
        ('0.05', '0.1')

    .. note::

        This always passes a tuple to the wrapped method, which can be of
        length 1 if there wasn't any values to split in the input string.

    """
    value = args[0]
    if isinstance(value, (tuple, list)):
        values = tuple(map(str, value))
    else:
        values = parse_input_string(value)
    newargs = (values,) + args[1:]
    return wrapped(*newargs, **kwargs)


class AmplitudesType(click.ParamType):
    """A ``click.ParamType`` that converts ``';'`` seperated amplitudes to a
    tuple of positive floats.

    """

    name = 'amplitudes'

    @parse_input_value
    def convert(self, value: Tuple[str], param: Any, ctx: Any
                ) -> Tuple[float]:
        """Parses and converts the amplitudes.

        :param value:  A tuple of strings to convert.
        :param param:  The command line parameter this attached to.
        :param ctx:  The command line context.

        """
        logger.debug('converting: {} to amplitudes.'.format(value))
        try:
            amplitudes = tuple(float(x) for x in value)
        except ValueError as exc:
            self.fail(exc)

        if not amplitudes:
            self.fail('expected at least one amplitude')
        for amplitude in amplitudes:
            if not (math.isfinite(amplitude) and amplitude > 0):
                self.fail("amplitudes should be > 0, got '{}'".format(
                    amplitude))
        return amplitudes


class PresetType(click.ParamType):
    """A ``click.ParamType`` for a scenario preset, by full name or by its
    prefix (``'S1'`` ... ``'S5'``).

    """

    name = 'preset'

    def convert(self, value: str, param: Any, ctx: Any) -> str:
        value = str(value).strip()
        for name in PRESETS:
            if value == name or value.upper() == name.split('_', 1)[0]:
                return name
        self.fail("unknown preset '{}', expected one of {}".format(
            value, ', '.join(PRESETS)))


class ConfigType(click.ParamType):
    """Loads an experiment config file."""

    name = 'config'

    def convert(self, value: Any, param: Any, ctx: Any) -> ExperimentConfig:
        if isinstance(value, ExperimentConfig):
            return value
        try:
            return load(str(value))
        except FileNotFoundError as exc:
            self.fail('file not found: {}'.format(exc))
        except ConfigError as exc:
            self.fail(str(exc))


AMPLITUDES = AmplitudesType()
PRESET = PresetType()
CONFIG = ConfigType()
