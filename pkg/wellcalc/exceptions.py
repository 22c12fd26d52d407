# -*- coding: utf-8 -*-

from typing import Any, Iterable, Optional


class WellCalcError(Exception):
    """Base exception used by the app.  All custom exceptions should inherit
    from this class.
    """

    def __init__(self, msg: str=None) -> None:
        self.msg = msg

    def __str__(self) -> str:
        name = self.__class__.__name__

        if self.msg is not None:
            return '{}: {}'.format(name, self.msg)
        return name

    def __repr__(self) -> str:
        return str(self)


class ShapeMismatch(WellCalcError, ValueError):
    """Raised if an array does not match the resolution of its domain."""
    pass


class NonFiniteError(WellCalcError, ValueError):
    """Raised if a field or parameter holds ``nan`` or ``inf`` values."""
    pass


class InvalidParameter(WellCalcError, ValueError):
    """Raised if a model or domain parameter is out of its valid range
    (ex. ``p <= 1``).
    """
    pass


class InvalidBeta(WellCalcError, ValueError):
    """Raised if a ray parameter is not strictly positive."""

    def __init__(self, value: Any) -> None:
        super().__init__("'{}' should be a number greater than 0".format(
            value))


class InvalidDelta(WellCalcError, ValueError):
    """Raised if a well parameter ``delta`` (or a level ``eta``) is outside
    the range an operation is defined on.
    """
    pass


class BracketError(WellCalcError, RuntimeError):
    """Raised if a root bracket can not be established, which signals a
    numerically degenerate input.
    """
    pass


class NoNehariPoint(WellCalcError, RuntimeError):
    """Raised if no sampled direction could be projected on a Nehari
    manifold, or none satisfies a requested energy bound.
    """
    pass


class DomainMismatch(WellCalcError, ValueError):
    """Raised if a field and a set of well constants were computed for
    different domains or parameters.
    """
    pass


class TrajectoryTooShort(WellCalcError, ValueError):
    """Raised if a trajectory has too few rows for a fit."""
    pass


class ToleranceFailure(WellCalcError, RuntimeError):
    """Raised if the integrator keeps rejecting steps without making
    progress.
    """
    pass


class StepCollapse(WellCalcError, RuntimeError):
    """Raised if a rejected step would fall below the minimum step size."""
    pass


class PropertyFailure(WellCalcError, AssertionError):
    """Raised if a verified property, or the hypotheses of a scenario preset,
    do not hold.
    """
    pass


class ConfigError(WellCalcError, ValueError):
    """Raised if an experiment config can not be parsed or validated.

    :param msg:  The error message.
    :param lineno:  The (1-based) line the error was found on, if known.
    :param lines:  All lines involved (ex. both lines of a duplicate key).

    """

    def __init__(self, msg: str=None, lineno: Optional[int]=None,
                 lines: Iterable[int]=None) -> None:
        self.lineno = lineno
        self.lines = tuple(lines) if lines is not None else \
            ((lineno,) if lineno is not None else ())

        if self.lines:
            msg = 'line {}: {}'.format(
                ', '.join(map(str, self.lines)), msg)

        super().__init__(msg)
