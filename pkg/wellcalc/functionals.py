# -*- coding: utf-8 -*-
"""
The energy and Nehari functionals of ``v_t - Lap v_t - Lap v = f(v)`` with
``f(v) = v |v|^(p-1) log|v|``, their ``delta`` family and the a priori
integral estimates.

Every integral of the nonlinearity is taken by the nodal rule on the
refined quadrature grid of :py:mod:`wellcalc.domain`; gradient terms are
exact in spectral space.

"""
from typing import Optional
import math
import logging
from collections import namedtuple

import numpy as np

from .domain import Field, DomainSpec, to_spectral, fine_values, \
    quadrature, laplacian_spectrum, grad_sq, l2_sq, DEFAULT_OVERSAMPLE
from .exceptions import InvalidParameter, InvalidDelta
from .utils import requires_finite

logger = logging.getLogger(__name__)

LOG_FLOOR = 1e-300
"""Magnitudes below this value are treated as 0 before taking logarithms."""

SOURCES = ('log', 'zero')
"""The available source terms.  ``'zero'`` switches the nonlinearity off."""


class ModelParams(namedtuple('ModelParams', ('p', 'source'))):
    """The parameters of the model.

    :param p:  The power index, ``p > 1``.
    :param source:  The source term, one of :py:data:`SOURCES`.  Defaults to
                    ``'log'``.

    :raises InvalidParameter:  If ``p <= 1`` or the source is unknown.

    """
    __slots__ = ()

    def __new__(cls, p: float, source: str='log') -> 'ModelParams':
        try:
            p = float(p)
        except (TypeError, ValueError):
            raise InvalidParameter("p should be a number, got '{}'".format(p))

        if not math.isfinite(p) or p <= 1:
            raise InvalidParameter("p > 1 violated, got '{}'".format(p))

        if source not in SOURCES:
            raise InvalidParameter("source should be one of {}, got '{}'"
                                   .format(SOURCES, source))

        return super().__new__(cls, p, source)

    @property
    def gamma(self) -> float:
        """The exponent ``(2p + 2) / (2p + 1)`` of the logarithmic estimate.
        """
        return (2 * self.p + 2) / (2 * self.p + 1)

    def admissible(self, n: int) -> bool:
        """Whether ``p`` is admitted in dimension ``n`` by the supercritical
        existence result: any ``p`` for ``n <= 2``, ``p < 4 / (n - 2)`` for
        ``3 <= n <= 5``.
        """
        if n <= 2:
            return True
        if n <= 5:
            return self.p < 4.0 / (n - 2)
        return False


Integrals = namedtuple('Integrals', ('l2sq', 'grad_sq', 'power', 'log'))
"""The four integrals every functional is built from.

:param l2sq:  ``||v||^2``.
:param grad_sq:  ``||grad v||^2``.
:param power:  ``||v||_(1+p)^(1+p)``.
:param log:  ``integral |v|^(1+p) log|v|``.

"""


def log_source_values(values: np.ndarray, params: ModelParams) -> np.ndarray:
    """The pointwise source ``v |v|^(p-1) log|v|``, continuously extended by
    0 at ``v = 0``.
    """
    values = np.asarray(values, dtype=float)
    if params.source == 'zero':
        return np.zeros_like(values)

    magnitude = np.abs(values)
    keep = magnitude >= LOG_FLOOR
    safe = np.where(keep, magnitude, 1.0)
    return np.where(
        keep, values * safe ** (params.p - 1) * np.log(safe), 0.0)


def _log_density(values: np.ndarray, params: ModelParams) -> np.ndarray:
    magnitude = np.abs(values)
    keep = magnitude >= LOG_FLOOR
    safe = np.where(keep, magnitude, 1.0)
    return np.where(keep, safe ** (params.p + 1) * np.log(safe), 0.0)


def log_source(f: Field, params: ModelParams) -> Field:
    """The source term evaluated pointwise on the grid of ``f``.

    Example::

        >>> log_source(Field(domain, np.full(domain.shape, math.e)),
        ...            ModelParams(2)).values[0]
        7.38905609893065

    """
    return Field(f.domain, log_source_values(f.values, params))


def coefficient_integrals(c: np.ndarray, domain: DomainSpec,
                          params: ModelParams,
                          oversample: int=DEFAULT_OVERSAMPLE,
                          spectrum=None) -> Integrals:
    """:py:class:`Integrals` of the field with sine coefficients ``c``."""
    spectrum = spectrum or laplacian_spectrum(domain)
    values = fine_values(c, domain, oversample)
    return Integrals(
        l2sq=l2_sq(c, domain),
        grad_sq=grad_sq(c, spectrum, domain),
        power=quadrature(np.abs(values) ** (params.p + 1), domain,
                         oversample),
        log=quadrature(_log_density(values, params), domain, oversample),
    )


@requires_finite
def integrals(f: Field, params: ModelParams,
              oversample: int=DEFAULT_OVERSAMPLE) -> Integrals:
    """:py:class:`Integrals` of a field."""
    return coefficient_integrals(to_spectral(f), f.domain, params, oversample)


def log_integral(f: Field, params: ModelParams,
                 oversample: int=DEFAULT_OVERSAMPLE) -> float:
    """``integral |v|^(1+p) log|v| dx``, taking the integrand as 0 at
    ``v = 0``.
    """
    return integrals(f, params, oversample).log


def potential_integral(parts: Integrals, params: ModelParams) -> float:
    """``integral F(v)`` with ``F' = f`` and ``F(0) = 0``."""
    if params.source == 'zero':
        return 0.0
    p1 = params.p + 1
    return parts.log / p1 - parts.power / p1 ** 2


def pairing(parts: Integrals, params: ModelParams) -> float:
    """``integral f(v) v``."""
    if params.source == 'zero':
        return 0.0
    return parts.log


def energy(parts: Integrals, params: ModelParams) -> float:
    """``J`` from precomputed integrals."""
    return 0.5 * parts.grad_sq - potential_integral(parts, params)


def nehari_delta(parts: Integrals, delta: float, params: ModelParams
                 ) -> float:
    """``I_delta`` from precomputed integrals."""
    return delta * parts.grad_sq - pairing(parts, params)


def _check_delta(delta):
    if not delta > 0:
        raise InvalidDelta("delta should be > 0, got '{}'".format(delta))


def J(f: Field, params: ModelParams,
      oversample: int=DEFAULT_OVERSAMPLE) -> float:
    """The potential energy ``1/2 ||grad v||^2
    - 1/(1+p) int |v|^(1+p) log|v| + 1/(1+p)^2 ||v||^(1+p)``.
    """
    return energy(integrals(f, params, oversample), params)


def I(f: Field, params: ModelParams,  # noqa: E743
      oversample: int=DEFAULT_OVERSAMPLE) -> float:
    """The Nehari functional ``||grad v||^2 - int |v|^(1+p) log|v|``."""
    return nehari_delta(integrals(f, params, oversample), 1.0, params)


def J_delta(f: Field, delta: float, params: ModelParams,
            oversample: int=DEFAULT_OVERSAMPLE) -> float:
    """``J`` with the gradient term weighted by ``delta``::

        (delta / 2) ||grad v||^2 - int F(v)

    :raises InvalidDelta:  If ``delta <= 0``.

    """
    _check_delta(delta)
    parts = integrals(f, params, oversample)
    return 0.5 * delta * parts.grad_sq - potential_integral(parts, params)


def I_delta(f: Field, delta: float, params: ModelParams,
            oversample: int=DEFAULT_OVERSAMPLE) -> float:
    """``delta ||grad v||^2 - int |v|^(1+p) log|v|``.

    :raises InvalidDelta:  If ``delta <= 0``.

    """
    _check_delta(delta)
    return nehari_delta(integrals(f, params, oversample), delta, params)


def identity_residual(f: Field, params: ModelParams,
                      oversample: int=DEFAULT_OVERSAMPLE) -> float:
    """The residual of the decomposition::

        J(v) = (p-1)/(2(1+p)) ||grad v||^2 + ||v||_(1+p)^(1+p) / (1+p)^2
               + I(v) / (1+p)

    which holds for every field with the logarithmic source.
    """
    parts = integrals(f, params, oversample)
    p = params.p
    combo = (p - 1) / (2 * (1 + p)) * parts.grad_sq + \
        parts.power / (1 + p) ** 2 + I(f, params, oversample) / (1 + p)
    return abs(J(f, params, oversample) - combo)


LogBound = namedtuple('LogBound', ('lhs', 'rhs', 'holds'))
"""The two sides of the estimate ``int (|v|^p |log|v||)^gamma
<= (e p)^(-gamma) |U| + 2^gamma ||v||_(1+p)^(1+p)``.
"""


@requires_finite
def log_power_bound_check(f: Field, params: ModelParams,
                          oversample: int=DEFAULT_OVERSAMPLE) -> LogBound:
    """Evaluate both sides of the logarithmic estimate with exponent
    ``gamma = (2p + 2) / (2p + 1)``.
    """
    p, gamma = params.p, params.gamma
    values = np.abs(fine_values(to_spectral(f), f.domain, oversample))
    keep = values >= LOG_FLOOR
    safe = np.where(keep, values, 1.0)
    density = np.where(keep, (safe ** p * np.abs(np.log(safe))) ** gamma, 0.0)

    lhs = quadrature(density, f.domain, oversample)
    power = quadrature(values ** (p + 1), f.domain, oversample)
    rhs = (math.e * p) ** -gamma * f.domain.measure + 2 ** gamma * power
    return LogBound(lhs, rhs, lhs <= rhs * (1 + 1e-10))


AprioriBounds = namedtuple('AprioriBounds', (
    'grad_sq', 'grad_bound', 'power', 'power_bound', 'log_bound', 'holds'))
"""The a priori estimates of a field with ``I(v) >= 0``.

:param grad_sq:  ``||grad v||^2``.
:param grad_bound:  ``2(1+p)/(p-1) J(v)``.
:param power:  ``||v||_(1+p)^(1+p)``.
:param power_bound:  ``(1+p)^2 J(v)``.
:param log_bound:  ``(e p)^(-gamma) |U| + 2^gamma (1+p)^2 depth``, the bound
                   on ``int (|v|^p |log|v||)^gamma`` inside a well of the given
                   depth, or ``None``.
:param holds:  ``True`` if both bounds hold (vacuously for ``I(v) < 0``).

"""


def apriori_bounds(f: Field, params: ModelParams, depth: Optional[float]=None,
                   oversample: int=DEFAULT_OVERSAMPLE) -> AprioriBounds:
    """Evaluate the a priori estimates of a field.

    :param f:  The field.
    :param params:  The model parameters.
    :param depth:  An optional well depth used for ``log_bound``.

    """
    parts = integrals(f, params, oversample)
    p = params.p
    j = energy(parts, params)
    grad_bound = 2 * (1 + p) / (p - 1) * j
    power_bound = (1 + p) ** 2 * j

    log_bound = None
    if depth is not None:
        log_bound = (math.e * p) ** -params.gamma * f.domain.measure + \
            2 ** params.gamma * (1 + p) ** 2 * depth

    tol = 1e-10 * (1 + abs(j))
    holds = nehari_delta(parts, 1.0, params) < 0 or (
        parts.grad_sq <= grad_bound + tol and parts.power <= power_bound + tol)
    return AprioriBounds(parts.grad_sq, grad_bound, parts.power, power_bound,
                         log_bound, holds)
