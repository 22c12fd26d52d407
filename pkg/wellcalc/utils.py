# -*- coding: utf-8 -*-

from typing import Dict, Any, Callable, Union, Tuple, Iterable, List
import os
import concurrent.futures
import logging

import click
import colorclass
import numpy as np
import wrapt

from .exceptions import NonFiniteError

logger = logging.getLogger(__name__)


def _return_input(value: Any) -> Any:
    """Helper to return the input.  This can be used as a valid callback.
    """
    return value


def _converter(cls):
    """Helper to wrap a ``click.ParamType`` as a callback to convert values
    to the appropriate type.
    """
    if not hasattr(cls, 'convert'):
        raise TypeError('invalid object does not have a convert method')

    def wrapper(value: Any) -> Any:
        return cls.convert(value, None, None)
    return wrapper


def dict_from_env_string(string: Union[str, dict], seperator: str=None,
                         divider: str=None, type: Callable[[Any], Any]=None
                         ) -> Dict[str, Any]:
    """Creates a dict from a string, using a ``seperator`` to seperate the
    items and a ``divider`` to distinguish key, value pairs.

    This is the format used for the initial data modes of an experiment,
    where the keys are mode indices and the values amplitudes.

    :param string:  The string to create the dict from.
    :param seperator:  The seperator to use to seperate items in the string.
                       Defaults to ``';'``.  This can also be set by the
                       environment variable ``WELLCALC_SEPERATOR``.
    :param divider:  Divides key, value pairs.  Defaults to ``':'``.  This can
                     also be set by the environment variable
                     ``WELLCALC_DIVIDER``.
    :param type:  Callback to use to convert all the values to a certain type.

    :raises ValueError:  If an item does not hold exactly one ``divider``.


    Example::

        >>> dict_from_env_string('1:0.1;3:0.05')
        {'1': '0.1', '3': '0.05'}
        >>> dict_from_env_string('1,2:0.5', type=float)
        {'1,2': 0.5}

    """

    if string is None or string == '':
        return {}
    elif isinstance(string, dict):
        return string

    type = type or _return_input

    if seperator is None:
        seperator = os.environ.get('WELLCALC_SEPERATOR', ';')
    else:
        seperator = str(seperator)

    if divider is None:
        divider = os.environ.get('WELLCALC_DIVIDER', ':')
    else:
        divider = str(divider)

    split = list(x.strip().split(divider) for x in str(string).split(seperator)
                 if x.strip() != '')
    logger.debug('split: {}'.format(split))

    for item in split:
        if not len(item) == 2:
            raise ValueError(
                "invalid item '{}', expected key{}value".format(
                    divider.join(item), divider)
            )

    return {
        key.strip(): type(value.strip()) for (key, value) in split
    }


def parse_input_string(string: str, seperator: str=';',
                       convert: Callable[[Any], Any]=None) -> Tuple[Any]:
    """Parses an input string that could have multiple values passed in
    from the command line or a config file.

    .. note::

        This method always returns a tuple, which can be of length 1 or more.

    :param string:  The input string to parse.
    :param seperator:  The seperator used to seperate items.
                       Defaults to ``';'``.
    :param convert:  A callback that can be used to convert all the parsed
                     values to a type. This can be a ``callable`` that recieves
                     a single value and returns a single value, or we can
                     also handle ``click.ParamType``'s.  Default is ``None``.


    Example::

        >>> parse_input_string('0.05;0.1')
        ('0.05', '0.1')
        >>> parse_input_string('1.0, 2.0', seperator=',', convert=float)
        (1.0, 2.0)

    """
    if convert is not None and isinstance(convert, click.ParamType):
        convert = _converter(convert)
    elif convert is None:
        convert = _return_input

    split = (str(s).strip() for s in str(string).strip().split(seperator)
             if s.strip() != '')

    return tuple(map(convert, split))


def colorize(string: str, color: str) -> colorclass.Color:
    """Returns a colorized string.

    .. seealso:: ``colorclass``

    :param string:  The string to colorize.
    :param color:  The color for the string.


    Example::

        >>> colorize('Blowup', 'red')
        Color('\x1b[31mBlowup\x1b[39m')

    """
    return colorclass.Color('{' + str(color) + '}' + str(string) +
                            '{/' + str(color) + '}')


def bool_from_env_string(string: str) -> bool:
    """Convert a string recieved from an environment variable into a
    bool.

    'true', 'TRUE', 'TrUe', 1, '1' =  True

    Everything else is False.

    :param string:  The string to convert to a bool.

    """
    if str(string).lower() == 'false' or str(string) == '':
        return False
    if str(string).lower() == 'true':
        return True
    try:
        return int(string) == 1
    except (TypeError, ValueError):
        return False


def format_float(value: float) -> str:
    """Format a float with 17 significant digits, which round-trips any
    binary64 value.

    Example::

        >>> format_float(0.1)
        '0.10000000000000001'

    """
    return '{:.17g}'.format(float(value))


@wrapt.decorator
def requires_finite(wrapped, instance, args, kwargs):
    """A decorator that checks the first argument (a ``Field`` or an array)
    holds only finite values before calling the wrapped function.

    :raises NonFiniteError:  If any value is ``nan`` or ``inf``.

    Example::

        >>> @requires_finite
        ... def total(field):
        ...     return field.values.sum()

    """
    values = getattr(args[0], 'values', args[0])
    if not np.all(np.isfinite(values)):
        raise NonFiniteError('{} received non-finite values'.format(
            wrapped.__name__))
    return wrapped(*args, **kwargs)


def map_workers(func: Callable[[Any], Any], items: Iterable[Any],
                workers: int=1) -> List[Any]:
    """Map ``func`` over ``items``, in a process pool if ``workers > 1``.

    Results come back in the order of ``items``.

    :param func:  A picklable callable of one argument.
    :param items:  The arguments.
    :param workers:  The number of worker processes.  Default is ``1``, which
                     runs in the calling process.

    """
    items = list(items)
    if workers is None or int(workers) <= 1 or len(items) <= 1:
        return list(map(func, items))

    logger.debug('mapping {} items over {} workers'.format(
        len(items), workers))
    with concurrent.futures.ProcessPoolExecutor(int(workers)) as executor:
        return list(executor.map(func, items))
