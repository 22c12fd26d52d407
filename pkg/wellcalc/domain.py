# -*- coding: utf-8 -*-
"""
Box domains with a Dirichlet boundary, the sine eigenbasis of the Laplacian
and the norms used throughout the package.

Normalization
-------------

A field on ``U = (0, L_1) x ... x (0, L_n)`` is sampled at the interior nodes
``x_j = j * L / (N + 1)``, ``j = 1..N`` of every axis and expanded as::

    v(x) = sum_k c_k * prod_i sin(k_i * pi * x_i / L_i)

so that ``to_spectral(sin(k pi x / L))`` is a unit vector.  With scipy's
type-I sine transform (``DST-I``, which carries a factor 2 per axis)::

    c = dstn(v, type=1) / prod(N_i + 1)
    v = dstn(c, type=1) / 2 ** dim

and ``integral(phi_k ** 2) = |U| / 2 ** dim``, which is the ``scale`` used by
every spectral norm: ``||v||^2 = scale * sum(c ** 2)`` and
``||grad v||^2 = scale * sum(lambda_k * c ** 2)``.

"""
from typing import Tuple, Union, Callable
import math
import logging
from collections import namedtuple

import numpy as np
import scipy.fft

from .exceptions import ShapeMismatch, InvalidParameter, NonFiniteError
from .utils import requires_finite

logger = logging.getLogger(__name__)

MIN_RESOLUTION = 8
"""The smallest interior grid count allowed on an axis."""

DEFAULT_OVERSAMPLE = 2
"""The default refinement factor of the quadrature grid."""


class DomainSpec(namedtuple('DomainSpec', ('dim', 'lengths', 'resolution'))):
    """A box ``prod (0, L_i)`` with ``N_i`` interior grid points per axis.

    :param dim:  The dimension, 1 or 2.
    :param lengths:  The side lengths. A single number is used for every axis.
    :param resolution:  The interior grid count per axis.  A single number is
                        used for every axis.  Defaults to ``128`` in 1-D and
                        ``32`` in 2-D.

    :raises InvalidParameter:  If any of the values are out of range.

    """
    __slots__ = ()

    def __new__(cls, dim: int=1, lengths: Union[float, Tuple[float]]=1.0,
                resolution: Union[int, Tuple[int]]=None) -> 'DomainSpec':
        dim = int(dim)
        if dim not in (1, 2):
            raise InvalidParameter(
                "dim should be 1 or 2, got '{}'".format(dim))

        if resolution is None:
            resolution = 128 if dim == 1 else 32

        lengths = _per_axis(lengths, dim, float, 'lengths')
        resolution = _per_axis(resolution, dim, int, 'resolution')

        for length in lengths:
            if not math.isfinite(length) or length <= 0:
                raise InvalidParameter(
                    "lengths should be positive, got '{}'".format(length))

        for count in resolution:
            if count < MIN_RESOLUTION:
                raise InvalidParameter(
                    "resolution should be at least {}, got '{}'".format(
                        MIN_RESOLUTION, count))

        return super().__new__(cls, dim, lengths, resolution)

    @property
    def measure(self) -> float:
        """The volume ``|U|`` of the box."""
        return float(np.prod(self.lengths))

    @property
    def shape(self) -> Tuple[int]:
        return tuple(self.resolution)

    @property
    def scale(self) -> float:
        """``integral(phi_k ** 2)``, the same for every basis function."""
        return self.measure / 2 ** self.dim

    def fine_resolution(self, oversample: int=1) -> Tuple[int]:
        """The interior grid count of the quadrature grid, which halves
        the mesh width ``oversample`` times per axis refinement.
        """
        oversample = int(oversample)
        if oversample < 1:
            raise InvalidParameter(
                "oversample should be >= 1, got '{}'".format(oversample))
        return tuple(oversample * (n + 1) - 1 for n in self.resolution)

    def axes(self, oversample: int=1) -> Tuple[np.ndarray]:
        """The interior node coordinates of every axis."""
        return tuple(
            np.arange(1, m + 1) * length / (m + 1)
            for m, length in zip(self.fine_resolution(oversample),
                                 self.lengths)
        )

    def mesh(self, oversample: int=1) -> Tuple[np.ndarray]:
        """The node coordinates as ``'ij'`` indexed arrays."""
        return tuple(np.meshgrid(*self.axes(oversample), indexing='ij'))

    def cell_volume(self, oversample: int=1) -> float:
        """The weight of every node in the nodal quadrature rule."""
        return float(np.prod([
            length / (m + 1) for m, length in
            zip(self.fine_resolution(oversample), self.lengths)
        ]))


def _per_axis(value, dim, convert, name):
    if np.ndim(value) == 0:
        return (convert(value),) * dim
    value = tuple(map(convert, value))
    if len(value) != dim:
        raise InvalidParameter(
            "{} should have {} values, got '{}'".format(name, dim, value))
    return value


class Field(namedtuple('Field', ('domain', 'values'))):
    """A real function sampled on the interior grid of a domain.  The
    boundary values are implied to be 0.

    :param domain:  The :py:class:`DomainSpec` the field lives on.
    :param values:  An array shaped like ``domain.resolution``.

    :raises ShapeMismatch:  If the array does not match the resolution.
    :raises NonFiniteError:  If the array holds ``nan`` or ``inf``.

    """
    __slots__ = ()

    def __new__(cls, domain: DomainSpec, values: np.ndarray) -> 'Field':
        values = np.array(values, dtype=float)
        if values.shape != domain.shape:
            raise ShapeMismatch('values have shape {}, expected {}'.format(
                values.shape, domain.shape))
        if not np.all(np.isfinite(values)):
            raise NonFiniteError('field values should be finite')
        values.setflags(write=False)
        return super().__new__(cls, domain, values)

    @classmethod
    def from_function(cls, domain: DomainSpec,
                      func: Callable[..., np.ndarray]) -> 'Field':
        """Sample ``func(x)`` (or ``func(x, y)``) on the interior grid."""
        return cls(domain, func(*domain.mesh()))

    @classmethod
    def zeros(cls, domain: DomainSpec) -> 'Field':
        return cls(domain, np.zeros(domain.shape))

    def scaled(self, factor: float) -> 'Field':
        """Return ``factor * self``."""
        return Field(self.domain, factor * self.values)


SpectrumInfo = namedtuple('SpectrumInfo', ('eigenvalues', 'lambda1'))
"""The Dirichlet eigenvalues of ``-Laplacian`` on a box.

:param eigenvalues:  ``lambda_k = sum_i (k_i pi / L_i) ** 2`` laid out like
                     the coefficient arrays (index ``k_i - 1`` on axis ``i``).
:param lambda1:  The smallest eigenvalue, the optimal Poincare constant.

"""


def laplacian_spectrum(domain: DomainSpec) -> SpectrumInfo:
    """The exact eigenvalues of the Dirichlet Laplacian on ``domain``.

    Example::

        >>> laplacian_spectrum(DomainSpec(lengths=2.0)).lambda1 * 4
        9.869604401089358

    """
    grids = np.meshgrid(*(
        (np.arange(1, n + 1) * math.pi / length) ** 2
        for n, length in zip(domain.resolution, domain.lengths)
    ), indexing='ij')
    eigenvalues = sum(grids)
    eigenvalues.setflags(write=False)
    lambda1 = float(sum((math.pi / length) ** 2 for length in domain.lengths))
    return SpectrumInfo(eigenvalues, lambda1)


def transform(values: np.ndarray) -> np.ndarray:
    """The unnormalized type-I sine transform over every axis."""
    return scipy.fft.dstn(values, type=1)


@requires_finite
def to_spectral(f: Field) -> np.ndarray:
    """The sine coefficients of a field.

    :param f:  The field to transform.

    """
    return transform(f.values) / np.prod(np.add(f.domain.resolution, 1))


def from_spectral(c: np.ndarray, domain: DomainSpec) -> Field:
    """The field with sine coefficients ``c``.

    :param c:  The coefficient array.
    :param domain:  The domain the coefficients belong to.

    :raises ShapeMismatch:  If ``c`` does not match the resolution.

    """
    c = np.asarray(c, dtype=float)
    if c.shape != domain.shape:
        raise ShapeMismatch('coefficients have shape {}, expected {}'.format(
            c.shape, domain.shape))
    return Field(domain, transform(c) / 2 ** domain.dim)


def fine_values(c: np.ndarray, domain: DomainSpec,
                oversample: int=DEFAULT_OVERSAMPLE) -> np.ndarray:
    """Evaluate the sine interpolant with coefficients ``c`` on the
    quadrature grid (zero padding in spectral space).
    """
    fine = domain.fine_resolution(oversample)
    if fine == domain.shape:
        return transform(c) / 2 ** domain.dim
    padded = np.zeros(fine)
    padded[tuple(slice(0, n) for n in domain.shape)] = c
    return transform(padded) / 2 ** domain.dim


def project(values: np.ndarray, domain: DomainSpec,
            oversample: int=DEFAULT_OVERSAMPLE) -> np.ndarray:
    """The coefficients of grid values given on the quadrature grid,
    truncated to the modes of ``domain``.

    ``scale * project(g)[k]`` equals the nodal quadrature of ``g * phi_k``.
    """
    fine = domain.fine_resolution(oversample)
    coefficients = transform(values) / np.prod(np.add(fine, 1))
    return coefficients[tuple(slice(0, n) for n in domain.shape)]


def quadrature(values: np.ndarray, domain: DomainSpec,
               oversample: int=DEFAULT_OVERSAMPLE) -> float:
    """The nodal rule ``prod(h_i) * sum(values)`` on the quadrature grid.

    The rule is exact for products of two basis functions of the grid, which
    makes it agree with Parseval's identity on the native grid.
    """
    return domain.cell_volume(oversample) * float(np.sum(values))


def grad_sq(c: np.ndarray, spectrum: SpectrumInfo, domain: DomainSpec
            ) -> float:
    """``||grad v||^2`` from the coefficients."""
    return domain.scale * float(np.sum(spectrum.eigenvalues * c ** 2))


def l2_sq(c: np.ndarray, domain: DomainSpec) -> float:
    """``||v||^2`` from the coefficients."""
    return domain.scale * float(np.sum(c ** 2))


def norm_l2(f: Field) -> float:
    """The ``L^2`` norm of a field."""
    return math.sqrt(l2_sq(to_spectral(f), f.domain))


def norm_h10(f: Field) -> float:
    """The value of ``||grad f||``."""
    return math.sqrt(grad_sq(to_spectral(f), laplacian_spectrum(f.domain),
                             f.domain))


def norm_h1sq(f: Field) -> float:
    """``||f||^2 + ||grad f||^2``."""
    c = to_spectral(f)
    return l2_sq(c, f.domain) + \
        grad_sq(c, laplacian_spectrum(f.domain), f.domain)


def norm_lp(f: Field, q: float, oversample: int=DEFAULT_OVERSAMPLE) -> float:
    """The ``L^q`` norm of a field, by quadrature of its interpolant on the
    refined grid.

    :raises InvalidParameter:  If ``q < 1``.

    """
    if not q >= 1:
        raise InvalidParameter("q should be >= 1, got '{}'".format(q))
    values = fine_values(to_spectral(f), f.domain, oversample)
    return quadrature(np.abs(values) ** q, f.domain, oversample) ** (1.0 / q)


def check_coefficients(c: np.ndarray) -> np.ndarray:
    """Return ``c`` as an array, raising on non-finite entries."""
    c = np.asarray(c, dtype=float)
    if not np.all(np.isfinite(c)):
        raise NonFiniteError('coefficients should be finite')
    return c
