# -*- coding: utf-8 -*-
"""
The fibering map ``beta -> J(beta v)`` in closed form.

With ``G = ||grad v||^2``, ``P = ||v||_(1+p)^(1+p)`` and
``L = int |v|^(1+p) log|v|``::

    J(beta v) = beta^2 G / 2 - beta^(1+p) (L + P ln beta) / (1+p)
                + beta^(1+p) P / (1+p)^2
    I_delta(beta v) = delta beta^2 G - beta^(1+p) (L + P ln beta)

Every function here accepts scalars or numpy arrays of summaries, so a whole
pool of directions can be projected at once.

"""
from typing import Union
import logging
from collections import namedtuple

import numpy as np
import wrapt

from .domain import Field, DEFAULT_OVERSAMPLE
from .functionals import ModelParams, Integrals, integrals
from .exceptions import InvalidBeta, BracketError

logger = logging.getLogger(__name__)

Number = Union[float, np.ndarray]

MAX_DOUBLINGS = 1000
"""The most times a root bracket is doubled before giving up."""

BISECTION_TOL = 1e-12
"""The relative width the root bracket is bisected down to."""


class RaySummary(namedtuple('RaySummary', ('G', 'P', 'L'))):
    """The three integrals that determine ``J`` and ``I`` along a ray.

    :param G:  ``||grad v||^2``.
    :param P:  ``||v||_(1+p)^(1+p)``.
    :param L:  ``int |v|^(1+p) log|v|``.

    """
    __slots__ = ()

    @classmethod
    def from_integrals(cls, parts: Integrals) -> 'RaySummary':
        return cls(parts.grad_sq, parts.power, parts.log)

    @classmethod
    def from_field(cls, f: Field, params: ModelParams,
                   oversample: int=DEFAULT_OVERSAMPLE) -> 'RaySummary':
        return cls.from_integrals(integrals(f, params, oversample))

    def scaled(self, c: float, p: float) -> 'RaySummary':
        """The summary of ``c * v`` for ``c > 0``."""
        power = c ** (p + 1)
        return RaySummary(c ** 2 * self.G, power * self.P,
                          power * (self.L + self.P * np.log(c)))


@wrapt.decorator
def positive_beta(wrapped, instance, args, kwargs):
    """A decorator that checks the ``beta`` argument (the second positional
    argument) is strictly positive.

    :raises InvalidBeta:  If any ``beta <= 0``.

    """
    beta = kwargs['beta'] if 'beta' in kwargs else args[1]
    if not np.all(np.asarray(beta) > 0):
        raise InvalidBeta(beta)
    return wrapped(*args, **kwargs)


def _nonlinear(summary, beta, p):
    # beta^(1+p) (L + P ln beta)
    with np.errstate(over='ignore', invalid='ignore'):
        return beta ** (p + 1) * (summary.L + summary.P * np.log(beta))


@positive_beta
def j_on_ray(summary: RaySummary, beta: Number, params: ModelParams
             ) -> Number:
    """``J(beta v)`` from the summary of ``v``.

    :raises InvalidBeta:  If ``beta <= 0``.

    """
    p = params.p
    with np.errstate(over='ignore', invalid='ignore'):
        return 0.5 * beta ** 2 * summary.G - _nonlinear(summary, beta, p) / \
            (1 + p) + beta ** (p + 1) * summary.P / (1 + p) ** 2


@positive_beta
def i_on_ray(summary: RaySummary, beta: Number, params: ModelParams,
             delta: float=1.0) -> Number:
    """``I_delta(beta v)`` from the summary of ``v``.  ``I(beta v)`` equals
    ``beta * d/dbeta J(beta v)``.

    :raises InvalidBeta:  If ``beta <= 0``.

    """
    with np.errstate(over='ignore', invalid='ignore'):
        return delta * beta ** 2 * summary.G - \
            _nonlinear(summary, beta, params.p)


def _reduced(summary, beta, p, delta):
    # I_delta(beta v) / beta^2, which is positive below the root only
    with np.errstate(over='ignore', invalid='ignore'):
        return delta * summary.G - beta ** (p - 1) * \
            (summary.L + summary.P * np.log(beta))


def _reduced_slope(summary, beta, p):
    with np.errstate(over='ignore', invalid='ignore'):
        return -beta ** (p - 2) * ((p - 1) * (summary.L + summary.P *
                                              np.log(beta)) + summary.P)


def beta_star(summary: RaySummary, params: ModelParams, delta: float=1.0
              ) -> Number:
    """The positive root of ``delta G = beta^(p-1) (L + P ln beta)``, which
    projects ``v`` onto the manifold ``I_delta = 0``.  For ``delta = 1`` this
    is the maximizer of ``J(beta v)``.

    The root is bracketed by doubling (or halving) from ``beta = 1`` until
    ``I_delta`` changes sign, bisected to a relative width of ``1e-12`` and
    polished by Newton steps.

    :param summary:  A :py:class:`RaySummary` of scalars or of arrays.
    :param params:  The model parameters.
    :param delta:  The weight of the gradient term.  Defaults to 1.

    :raises BracketError:  If ``G <= 0``, ``P <= 0`` or a bracket is not found
                           within :py:data:`MAX_DOUBLINGS` doublings.

    """
    p = params.p
    G = np.asarray(summary.G, dtype=float)
    P = np.asarray(summary.P, dtype=float)
    L = np.asarray(summary.L, dtype=float)
    summary = RaySummary(G, P, L)

    if np.any(~(G > 0)) or np.any(~(P > 0)):
        raise BracketError('a Nehari projection needs G > 0 and P > 0')

    lo = np.ones(np.broadcast(G, P, L).shape)
    hi = lo.copy()

    at_one = _reduced(summary, lo, p, delta)
    up = at_one > 0

    # expand upward where I_delta(v) > 0, downward where it is < 0
    for count in range(MAX_DOUBLINGS + 1):
        pending = up & (_reduced(summary, hi, p, delta) > 0)
        if not np.any(pending):
            break
        hi = np.where(pending, 2 * hi, hi)
    else:
        raise BracketError(
            'no sign change of I within {} doublings'.format(MAX_DOUBLINGS))
    lo = np.where(up, np.where(hi > 1, hi / 2, 1.0), lo)

    for count in range(MAX_DOUBLINGS + 1):
        pending = ~up & (_reduced(summary, lo, p, delta) <= 0)
        if not np.any(pending):
            break
        lo = np.where(pending, lo / 2, lo)
    else:
        raise BracketError(
            'no sign change of I within {} halvings'.format(MAX_DOUBLINGS))
    hi = np.where(up, hi, np.where(lo < 1, 2 * lo, 1.0))

    logger.debug('bracket: [{}, {}]'.format(np.min(lo), np.max(hi)))

    # invariant: reduced(lo) > 0 >= reduced(hi)
    while np.any(hi - lo > BISECTION_TOL * hi):
        mid = 0.5 * (lo + hi)
        positive = _reduced(summary, mid, p, delta) > 0
        lo = np.where(positive, mid, lo)
        hi = np.where(positive, hi, mid)

    beta = 0.5 * (lo + hi)
    for _ in range(2):
        value = _reduced(summary, beta, p, delta)
        slope = _reduced_slope(summary, beta, p)
        candidate = beta - value / slope
        better = np.isfinite(candidate) & (candidate > 0) & (
            np.abs(_reduced(summary, candidate, p, delta)) < np.abs(value))
        beta = np.where(better, candidate, beta)

    if beta.ndim == 0:
        return float(beta)
    return beta


def nehari_energy(summary: RaySummary, params: ModelParams,
                  delta: float=1.0) -> Number:
    """``J`` at the projection of ``v`` onto ``I_delta = 0``."""
    return j_on_ray(summary, beta_star(summary, params, delta), params)
