# -*- coding: utf-8 -*-

from typing import Any, Iterable, Sequence
import os
import csv
import json
import enum
import math
import logging
from collections import namedtuple

import numpy as np
import terminaltables
import colorclass

from .utils import colorize, format_float

logger = logging.getLogger(__name__)


ColorContext = namedtuple('ColorContext', ('global_', 'blowup',
                                           'indeterminate'))
"""A named tuple used to hold colors for regimes when rendered.

:param global_:  Color for the global existence regimes.
:param blowup:  Color for the blow-up regimes.
:param indeterminate:  Color for data no result covers.

"""

DEFAULT_COLORS = ColorContext(
    global_='green',
    blowup='red',
    indeterminate='yellow'
)
"""Default colors to use as the ``ColorContext``."""

CURVE_COLUMNS = ('delta', 'r', 'd_formula', 'd_nehari')
"""The columns of the well curve CSV."""

SWEEP_COLUMNS = ('amplitude', 'J0', 'I0', 'h1sq', 'regime', 'near_critical',
                 'outcome', 'T_est')
"""The columns of the sweep CSV."""


def jsonable(obj: Any) -> Any:
    """Convert results (named tuples, enums, numpy values) to plain json
    types.  Non-finite floats become ``None``.
    """
    if isinstance(obj, enum.Enum):
        return obj.value
    if hasattr(obj, '_asdict'):
        return {key: jsonable(value) for key, value in obj._asdict().items()}
    if isinstance(obj, dict):
        return {str(key): jsonable(value) for key, value in obj.items()}
    if isinstance(obj, np.ndarray):
        return [jsonable(x) for x in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        obj = float(obj)
        return obj if math.isfinite(obj) else None
    return obj


def dumps(data: Any) -> str:
    """Lossless, key-sorted json of ``data``."""
    return json.dumps(jsonable(data), sort_keys=True, indent=2) + '\n'


def write_json(path: str, data: Any) -> str:
    """Write ``data`` as json to ``path`` and return the path."""
    with open(path, 'w') as stream:
        stream.write(dumps(data))
    logger.debug('wrote {}'.format(path))
    return path


def _cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


def write_csv(path: str, header: Sequence[str],
              rows: Iterable[Sequence[Any]]) -> str:
    """Write a header and rows to ``path``, floats with 17 significant
    digits, and return the path.
    """
    with open(path, 'w', newline='') as stream:
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(value) for value in row])
    logger.debug('wrote {}'.format(path))
    return path


def output_path(out: str, name: str) -> str:
    """Join ``out`` and ``name``, creating ``out`` if needed."""
    os.makedirs(out, exist_ok=True)
    return os.path.join(out, name)


class BaseFormatter(object):
    """All formatter's should sub-class this object, and override the
    :py:meth:`render` method.

    """

    @staticmethod
    def colorize(item: Any, color: str) -> colorclass.Color:
        if isinstance(item, enum.Enum):
            item = item.value
        return colorize(item, color)

    @staticmethod
    def regime_color(regime: Any, colors: ColorContext) -> str:
        """The color of a :py:class:`~wellcalc.wells.Regime`."""
        if regime.is_global:
            return colors.global_
        if regime.is_blowup:
            return colors.blowup
        return colors.indeterminate

    @staticmethod
    def render(report) -> str:
        """The method all sub-classes should override to render a report.

        :raises NotImplementedError:  If a sub-class does not implement this
                                      method.

        """
        raise NotImplementedError()


class BasicFormatter(BaseFormatter):
    """Renders a regime report as a single line."""

    @staticmethod
    def render(report: Any) -> str:
        try:
            return '{}: J0 = {}, I0 = {}, d_hat = {}'.format(
                report.predicted_regime.value, format_float(report.J0),
                format_float(report.I0), format_float(report.d_hat))
        except AttributeError as exc:
            logger.debug('failed render for report: {}, exc: {}'.format(
                report, exc))
            raise TypeError("'{}' should be a RegimeReport".format(report))


def _number(value):
    return 'n/a' if value is None else '{:.6g}'.format(value)


class TerminalFormatter(terminaltables.AsciiTable, BaseFormatter):
    """A ``terminaltables.AsciiTable`` of a regime report, with the regime
    colorized.

    :param colors:  A 3 tuple or :py:class:`ColorContext` of colors.
    :param title:  A title for the table.  Defaults to ``'REGIME'``.
    :param no_colors:  If ``True``, turns off colored output for the table.
                       Default is ``False``.

    """

    def __init__(self, *colors, title: str='REGIME', no_colors: bool=False):

        super().__init__([], title=title)

        if colors and no_colors is False:
            self.colors = ColorContext(*colors)
        else:
            self.colors = DEFAULT_COLORS

        self.no_colors = no_colors

    def _regime(self, regime):
        if self.no_colors is True:
            return regime.value
        return self.colorize(regime, self.regime_color(regime, self.colors))

    def render(self, report: Any) -> str:
        """Set's up the table, and returns it as a string, to be rendered.

        :param report:  A :py:class:`~wellcalc.wells.RegimeReport`.

        """
        headers = ['REGIME', 'J0', 'I0', '||v0||^2', 'D_HAT', 'DELTA1',
                   'DELTA2']
        body = [self._regime(report.predicted_regime), _number(report.J0),
                _number(report.I0), _number(report.h1sq),
                _number(report.d_hat), _number(report.delta1),
                _number(report.delta2)]
        logger.debug('body: {}'.format(body))
        self.table_data = [headers, body]
        return self.table


class SweepFormatter(TerminalFormatter):
    """A table of sweep rows, one amplitude a row."""

    def __init__(self, *colors, title: str='SWEEP', no_colors: bool=False):
        super().__init__(*colors, title=title, no_colors=no_colors)

    def render(self, rows: Iterable[Any]) -> str:
        headers = [name.upper() for name in SWEEP_COLUMNS]
        body = []
        for row in rows:
            body.append([
                _number(row.amplitude), _number(row.J0), _number(row.I0),
                _number(row.h1sq), self._regime(row.regime),
                'yes' if row.near_critical else 'no',
                row.outcome.value if row.outcome is not None else '',
                _number(row.T_est)])
        self.table_data = [headers] + body
        return self.table
