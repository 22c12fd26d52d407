# -*- coding: utf-8 -*-
"""
Potential well constants and the classification of initial data.

The well depth ``d(delta) = inf J`` over the manifold ``I_delta = 0`` is
estimated from above by a :py:class:`DirectionPool`: a fixed set of
directions (random low-mode biased spectra, every single eigenmode and
coordinate descent refinements) each projected onto ``I_delta = 0`` along its
ray.  Every ``delta`` uses the same pool, so the estimated curve has its
maximum at ``delta = 1`` and is monotone on each side of it.

"""
from typing import Optional, Tuple
import enum
import math
import logging
from collections import namedtuple

import numpy as np
import scipy.fft
import scipy.optimize

from .domain import DomainSpec, Field, SpectrumInfo, laplacian_spectrum, \
    to_spectral, fine_values, project, quadrature, DEFAULT_OVERSAMPLE, \
    MIN_RESOLUTION
from .functionals import ModelParams, integrals, energy, nehari_delta
from .fibering import RaySummary, beta_star, j_on_ray
from .exceptions import InvalidParameter, InvalidDelta, NoNehariPoint, \
    DomainMismatch, BracketError
from .utils import map_workers

logger = logging.getLogger(__name__)

DELTA_MIN = 0.01
"""The left end of the delta grid of a :py:class:`WellCurve`."""

_CHUNK = 256


class AnalysisConfig(namedtuple('AnalysisConfig', (
        'directions', 'descent_starts', 'descent_modes', 'descent_sweeps',
        'delta_points', 'safety_factor', 'sobolev_starts', 'sobolev_budget',
        'alpha', 'near_critical'))):
    """Sampling budgets and tolerances of a well analysis.

    :param directions:  Random directions in the pool.  Default ``400``.
    :param descent_starts:  Best directions refined by coordinate descent.
                            Default ``4``.
    :param descent_modes:  Lowest modes moved by the descent.  Default ``12``.
    :param descent_sweeps:  Sweeps of the descent.  Default ``40``.
    :param delta_points:  Points of the delta grid.  Default ``200``.
    :param safety_factor:  Factor ``s >= 1`` applied to the Sobolev constant
                           where it enters a sufficient condition.  Default
                           ``1.05``.
    :param sobolev_starts:  Starts of the Sobolev quotient ascent.  Default
                            ``8``.
    :param sobolev_budget:  Iterations per start.  Default ``400``.
    :param alpha:  The energy level of supercritical runs.  Default ``None``,
                   which means ``2 * d_hat``.
    :param near_critical:  Relative band around ``d_hat`` flagged as near
                           critical.  Default ``0.05``.

    """
    __slots__ = ()

    def __new__(cls, directions: int=400, descent_starts: int=4,
                descent_modes: int=12, descent_sweeps: int=40,
                delta_points: int=200, safety_factor: float=1.05,
                sobolev_starts: int=8, sobolev_budget: int=400,
                alpha: Optional[float]=None, near_critical: float=0.05
                ) -> 'AnalysisConfig':

        counts = dict(directions=directions, descent_starts=descent_starts,
                      descent_modes=descent_modes,
                      descent_sweeps=descent_sweeps,
                      delta_points=delta_points,
                      sobolev_starts=sobolev_starts,
                      sobolev_budget=sobolev_budget)
        for key, value in counts.items():
            if int(value) != value or value < 0:
                raise InvalidParameter(
                    "{} should be a non-negative integer, got '{}'".format(
                        key, value))
        if delta_points < 3:
            raise InvalidParameter('delta_points should be at least 3')
        if sobolev_starts < 1 or sobolev_budget < 1:
            raise InvalidParameter('the Sobolev ascent needs a start and a '
                                   'budget')
        if not safety_factor >= 1:
            raise InvalidParameter(
                "safety_factor should be >= 1, got '{}'".format(
                    safety_factor))
        if alpha is not None and not alpha > 0:
            raise InvalidParameter("alpha should be > 0, got '{}'".format(
                alpha))
        if not 0 <= near_critical < 1:
            raise InvalidParameter(
                "near_critical should be in [0, 1), got '{}'".format(
                    near_critical))

        return super().__new__(
            cls, int(directions), int(descent_starts), int(descent_modes),
            int(descent_sweeps), int(delta_points), float(safety_factor),
            int(sobolev_starts), int(sobolev_budget),
            None if alpha is None else float(alpha), float(near_critical))


SobolevDiagnostics = namedtuple('SobolevDiagnostics', (
    'method', 'iterations', 'quotients', 'converged', 'refinement'))
"""What the Sobolev constant ascent did.

:param method:  A tag for the method.
:param iterations:  Total iterations over all starts.
:param quotients:  The best quotient of every start.
:param converged:  Whether every start reached a stationary point.
:param refinement:  ``(resolution, C)`` pairs of a resolution study, or
                    ``()``.

"""


DirectionPool = namedtuple('DirectionPool', ('summary', 'l2sq'))
"""Ray summaries of the sampled directions.

:param summary:  A :py:class:`RaySummary` of arrays, one entry a direction.
:param l2sq:  ``||v||^2`` of every direction.

"""


WellCurve = namedtuple('WellCurve', ('delta_grid', 'r_values',
                                     'd_formula_values', 'd_nehari_values'))
"""The well family sampled on a delta grid.

``d_formula_values`` is ``nan`` outside ``(0, (1+p)/2)``.
"""


class WellConstants(namedtuple('WellConstants', (
        'sobolev_C', 'sobolev_method', 'lambda1', 'd_hat', 'd_formula_at_1',
        'delta0', 'params', 'domain', 'safety_factor', 'analysis', 'seed',
        'pool', 'curve'))):
    """The constants of the potential wells of one domain and model.

    :param sobolev_C:  Estimate of ``C = sup ||v||_(p+2) / ||grad v||``.
    :param sobolev_method:  :py:class:`SobolevDiagnostics` or a tag.
    :param lambda1:  The first Dirichlet eigenvalue.
    :param d_hat:  The estimated well depth ``d(1)``.
    :param d_formula_at_1:  ``(p-1)/(2(p+1)) r(1)^2``.  Computed if ``None``.
    :param delta0:  The zero of the estimated well curve.
    :param params:  The :py:class:`ModelParams`.
    :param domain:  The :py:class:`DomainSpec`.
    :param safety_factor:  Factor applied to ``sobolev_C``.
    :param analysis:  The :py:class:`AnalysisConfig` used.
    :param seed:  The seed of the direction pool.
    :param pool:  The :py:class:`DirectionPool`, or ``None``.
    :param curve:  The :py:class:`WellCurve`, or ``None``.

    :raises InvalidParameter:  If an invariant does not hold.

    """
    __slots__ = ()

    def __new__(cls, sobolev_C: float, sobolev_method=None,
                lambda1: float=None, d_hat: float=None,
                d_formula_at_1: float=None, delta0: float=None,
                params: ModelParams=None, domain: DomainSpec=None,
                safety_factor: float=1.05, analysis: AnalysisConfig=None,
                seed: int=None, pool: DirectionPool=None,
                curve: WellCurve=None) -> 'WellConstants':

        if params is None or domain is None or lambda1 is None:
            raise InvalidParameter('params, domain and lambda1 are required')
        if not sobolev_C > 0:
            raise InvalidParameter('sobolev_C should be > 0')
        if d_hat is None or not d_hat > 0:
            raise InvalidParameter('d_hat should be > 0')
        if delta0 is None or not delta0 > (1 + params.p) / 2:
            raise InvalidParameter('delta0 should be > (1 + p) / 2')

        if d_formula_at_1 is None:
            c_eff = safety_factor * sobolev_C
            r1 = (1.0 / c_eff ** (params.p + 2)) ** (1.0 / params.p)
            d_formula_at_1 = (params.p - 1) / (2 * (params.p + 1)) * r1 ** 2

        return super().__new__(
            cls, float(sobolev_C), sobolev_method, float(lambda1),
            float(d_hat), float(d_formula_at_1), float(delta0), params,
            domain, float(safety_factor), analysis or AnalysisConfig(), seed,
            pool, curve)

    @property
    def c_eff(self) -> float:
        """The Sobolev constant with the safety factor applied."""
        return self.safety_factor * self.sobolev_C

    @property
    def alpha(self) -> float:
        """The supercritical energy level (``2 * d_hat`` by default)."""
        if self.analysis.alpha is None:
            return 2 * self.d_hat
        return self.analysis.alpha


# ----------------------------------------------------------------------------
# Sobolev constant
# ----------------------------------------------------------------------------

def _log_quotient(y, domain, params, spectrum, oversample):
    # negative log of ||v||_q / ||grad v|| in the variables y = sqrt(lam) c
    q = params.p + 2
    root = np.sqrt(spectrum.eigenvalues)
    c = y / root
    values = fine_values(c, domain, oversample)
    magnitude = np.abs(values)
    power = quadrature(magnitude ** q, domain, oversample)
    grad = domain.scale * float(np.sum(y ** 2))

    value = -(math.log(power) / q - 0.5 * math.log(grad))
    slope = domain.scale * project(magnitude ** (q - 2) * values, domain,
                                   oversample) / power - \
        domain.scale * spectrum.eigenvalues * c / grad
    return value, -slope / root


def sobolev_quotient(f: Field, params: ModelParams,
                     oversample: int=DEFAULT_OVERSAMPLE) -> float:
    """``||f||_(p+2) / ||grad f||``."""
    c = to_spectral(f)
    spectrum = laplacian_spectrum(f.domain)
    value, _ = _log_quotient(np.sqrt(spectrum.eigenvalues) * c, f.domain,
                             params, spectrum, oversample)
    return math.exp(-value)


def _log_quotient_flat(y, domain, *args):
    value, slope = _log_quotient(y.reshape(domain.shape), domain, *args)
    return value, slope.ravel()


def _ascend_flat(start, domain, params, budget, oversample):
    spectrum = laplacian_spectrum(domain)
    root = np.sqrt(spectrum.eigenvalues)
    result = scipy.optimize.minimize(
        _log_quotient_flat, (root * start).ravel(), jac=True, method='BFGS',
        args=(domain, params, spectrum, oversample),
        options={'maxiter': budget, 'gtol': 1e-10})
    converged = bool(result.success) or \
        float(np.max(np.abs(result.jac))) < 1e-8
    if not converged:
        logger.debug('ascent stopped: {}'.format(result.message))
    return math.exp(-result.fun), int(result.nit), converged


def _run_start(args):
    return _ascend_flat(*args)


def _starts(domain: DomainSpec, spectrum: SpectrumInfo, count: int,
            seed: Optional[int]) -> list:
    first = np.zeros(domain.shape)
    first[(0,) * domain.dim] = 1.0
    rng = np.random.default_rng(seed)
    starts = [first]
    for _ in range(count - 1):
        starts.append(rng.standard_normal(domain.shape) /
                      (1 + spectrum.eigenvalues))
    return starts


def estimate_sobolev_constant(domain: DomainSpec, params: ModelParams,
                              budget: int=400, starts: int=8, seed: int=None,
                              refine: bool=False, workers: int=1,
                              oversample: int=DEFAULT_OVERSAMPLE
                              ) -> Tuple[float, SobolevDiagnostics]:
    """Estimate ``C = sup ||v||_(p+2) / ||grad v||`` from below by
    multi-start quasi-Newton ascent on the quotient over sine coefficients.

    The first start is the lowest eigenmode, the others are random spectra
    ``c_k ~ xi_k / (1 + lambda_k)``.

    :param domain:  The domain.
    :param params:  The model parameters.
    :param budget:  Iterations per start.
    :param starts:  The number of starts.
    :param seed:  Seed of the random starts.
    :param refine:  If ``True`` also estimate ``C`` at half and double the
                    resolution (from the lowest-mode start only).
    :param workers:  Worker processes for the starts.

    :returns:  ``(C_est, diagnostics)``.  Starts that exhaust the budget
               without reaching a stationary point are flagged in
               ``diagnostics.converged``; the best value found is still used.

    """
    spectrum = laplacian_spectrum(domain)
    jobs = [(start, domain, params, int(budget), oversample)
            for start in _starts(domain, spectrum, int(starts), seed)]
    results = map_workers(_run_start, jobs, workers)

    quotients = tuple(r[0] for r in results)
    converged = tuple(r[2] for r in results)
    iterations = sum(r[1] for r in results)
    best = max(quotients)

    if not all(converged):
        logger.warning('Sobolev ascent: {} of {} starts exhausted the budget'
                       .format(converged.count(False), len(converged)))

    refinement = ()
    if refine is True:
        resolutions = (tuple(max(n // 2, MIN_RESOLUTION)
                             for n in domain.resolution),
                       domain.resolution,
                       tuple(2 * n for n in domain.resolution))
        refinement = tuple(
            (res, best if res == domain.resolution else
             estimate_sobolev_constant(
                 DomainSpec(domain.dim, domain.lengths, res), params,
                 budget=budget, starts=1, oversample=oversample)[0])
            for res in resolutions
        )
        logger.debug('refinement: {}'.format(refinement))

    diagnostics = SobolevDiagnostics('bfgs-multistart', iterations,
                                     quotients, converged, refinement)
    return best, diagnostics


# ----------------------------------------------------------------------------
# closed forms
# ----------------------------------------------------------------------------

def r_of_delta(delta: float, constants: WellConstants) -> float:
    """The root ``r(delta) = (delta / C_eff^(p+2))^(1/p)`` of
    ``C_eff^(p+2) r^p = delta``.

    :raises InvalidDelta:  If ``delta <= 0``.

    """
    delta = np.asarray(delta, dtype=float)
    if not np.all(delta > 0):
        raise InvalidDelta("delta should be > 0, got '{}'".format(delta))
    p = constants.params.p
    r = (delta / constants.c_eff ** (p + 2)) ** (1.0 / p)
    return float(r) if r.ndim == 0 else r


def d_formula(delta: float, constants: WellConstants) -> float:
    """``(1/2 - delta/(1+p)) r(delta)^2``, positive on ``(0, (1+p)/2)``.

    :raises InvalidDelta:  If ``delta`` is outside ``(0, (1+p)/2)``.

    """
    p = constants.params.p
    if not 0 < delta < (1 + p) / 2:
        raise InvalidDelta("delta should be in (0, {}), got '{}'".format(
            (1 + p) / 2, delta))
    return (0.5 - delta / (1 + p)) * r_of_delta(delta, constants) ** 2


# ----------------------------------------------------------------------------
# direction pool
# ----------------------------------------------------------------------------

def _batch_summaries(coefficients: np.ndarray, domain: DomainSpec,
                     params: ModelParams, spectrum: SpectrumInfo,
                     oversample: int) -> Tuple[RaySummary, np.ndarray]:
    # integrals of a stack of coefficient arrays, chunked
    fine = domain.fine_resolution(oversample)
    axes = tuple(range(1, domain.dim + 1))
    volume = domain.cell_volume(oversample)
    p1 = params.p + 1
    G, P, L, H = [], [], [], []

    for start in range(0, len(coefficients), _CHUNK):
        chunk = coefficients[start:start + _CHUNK]
        padded = np.zeros((len(chunk),) + fine)
        padded[(slice(None),) + tuple(slice(0, n) for n in domain.shape)] = \
            chunk
        values = scipy.fft.dstn(padded, type=1, axes=axes) / 2 ** domain.dim
        magnitude = np.abs(values)
        keep = magnitude >= 1e-300
        safe = np.where(keep, magnitude, 1.0)

        G.append(domain.scale * np.sum(spectrum.eigenvalues * chunk ** 2,
                                       axis=axes))
        H.append(domain.scale * np.sum(chunk ** 2, axis=axes))
        P.append(volume * np.sum(magnitude ** p1, axis=axes))
        L.append(volume * np.sum(np.where(keep, safe ** p1 * np.log(safe),
                                          0.0), axis=axes))

    return RaySummary(np.concatenate(G), np.concatenate(P),
                      np.concatenate(L)), np.concatenate(H)


def _single_summary(c, domain, params, spectrum, oversample):
    summary, _ = _batch_summaries(c[np.newaxis], domain, params, spectrum,
                                  oversample)
    return RaySummary(*(float(x[0]) for x in summary))


def _nehari_level(c, domain, params, spectrum, oversample):
    summary = _single_summary(c, domain, params, spectrum, oversample)
    beta = beta_star(summary, params)
    return float(j_on_ray(summary, beta, params)), beta


def coordinate_descent(start: np.ndarray, domain: DomainSpec,
                       params: ModelParams, modes: int=12, sweeps: int=40,
                       oversample: int=DEFAULT_OVERSAMPLE) -> np.ndarray:
    """Lower the Nehari level ``J(beta*(v) v)`` of a direction by moving its
    lowest ``modes`` coefficients one at a time, re-projecting onto the
    Nehari manifold after every accepted move.  The step halves after a
    sweep without improvement.

    :returns:  The coefficients of the refined Nehari point.

    """
    spectrum = laplacian_spectrum(domain)
    order = np.argsort(spectrum.eigenvalues, axis=None, kind='stable')[:modes]

    best, beta = _nehari_level(start, domain, params, spectrum, oversample)
    c = beta * start
    step = 0.25 * float(np.max(np.abs(c)))

    for sweep in range(sweeps):
        improved = False
        for index in order:
            for sign in (1.0, -1.0):
                trial = c.copy()
                trial.flat[index] += sign * step
                if not np.any(trial):
                    continue
                try:
                    level, beta = _nehari_level(trial, domain, params,
                                                spectrum, oversample)
                except BracketError:
                    continue
                if level < best:
                    best, c, improved = level, beta * trial, True
                    break
        if improved is False:
            step /= 2

    logger.debug('descent level: {}'.format(best))
    return c


def build_pool(domain: DomainSpec, params: ModelParams,
               analysis: AnalysisConfig=None, seed: int=None,
               oversample: int=DEFAULT_OVERSAMPLE) -> DirectionPool:
    """Sample the directions used for every well depth estimate.

    :param domain:  The domain.
    :param params:  The model parameters.
    :param analysis:  The budgets.  Defaults to :py:class:`AnalysisConfig`.
    :param seed:  Seed of the random directions.

    """
    analysis = analysis or AnalysisConfig()
    spectrum = laplacian_spectrum(domain)
    rng = np.random.default_rng(seed)

    random = rng.standard_normal((analysis.directions,) + domain.shape) / \
        (1 + spectrum.eigenvalues)
    modes = np.eye(int(np.prod(domain.shape))).reshape(
        (-1,) + domain.shape)
    coefficients = np.concatenate([random, modes])

    summary, l2sq = _batch_summaries(coefficients, domain, params, spectrum,
                                     oversample)

    if analysis.descent_starts > 0:
        levels = j_on_ray(summary, beta_star(summary, params), params)
        starts = np.argsort(levels, kind='stable')[:analysis.descent_starts]
        refined = np.array([
            coordinate_descent(coefficients[i], domain, params,
                               analysis.descent_modes,
                               analysis.descent_sweeps, oversample)
            for i in starts
        ])
        more, more_l2 = _batch_summaries(refined, domain, params, spectrum,
                                         oversample)
        summary = RaySummary(*(np.concatenate(pair) for pair in
                               zip(summary, more)))
        l2sq = np.concatenate([l2sq, more_l2])

    logger.debug('pool of {} directions'.format(len(l2sq)))
    return DirectionPool(summary, l2sq)


def _pool_depth(pool: DirectionPool, params: ModelParams, delta: float
                ) -> float:
    levels = j_on_ray(pool.summary, beta_star(pool.summary, params, delta),
                      params)
    levels = levels[np.isfinite(levels)]
    if levels.size == 0:
        raise NoNehariPoint('no direction could be projected')
    return float(np.min(levels))


def _delta_zero(pool: DirectionPool, params: ModelParams) -> float:
    lo = (1 + params.p) / 2
    hi = 2 * lo
    while _pool_depth(pool, params, hi) > 0:
        lo, hi = hi, 2 * hi
        if hi > 1e6:
            raise BracketError('the well curve does not cross 0')
    return scipy.optimize.brentq(
        lambda delta: _pool_depth(pool, params, delta), lo, hi, xtol=1e-12)


# ----------------------------------------------------------------------------
# public operations
# ----------------------------------------------------------------------------

def analyze_wells(domain: DomainSpec, params: ModelParams,
                  analysis: AnalysisConfig=None, seed: int=None,
                  workers: int=1, oversample: int=DEFAULT_OVERSAMPLE
                  ) -> WellConstants:
    """Compute the :py:class:`WellConstants` (with pool and curve) of a
    domain and model.
    """
    analysis = analysis or AnalysisConfig()
    spectrum = laplacian_spectrum(domain)

    sobolev_C, diagnostics = estimate_sobolev_constant(
        domain, params, analysis.sobolev_budget, analysis.sobolev_starts,
        seed, workers=workers, oversample=oversample)

    pool = build_pool(domain, params, analysis, seed, oversample)
    d_hat = _pool_depth(pool, params, 1.0)
    delta0 = _delta_zero(pool, params)

    constants = WellConstants(
        sobolev_C=sobolev_C, sobolev_method=diagnostics,
        lambda1=spectrum.lambda1, d_hat=d_hat, delta0=delta0, params=params,
        domain=domain, safety_factor=analysis.safety_factor,
        analysis=analysis, seed=seed, pool=pool)

    curve = well_curve(constants)
    logger.debug('d_hat: {}, d_formula(1): {}, ratio: {}'.format(
        d_hat, constants.d_formula_at_1, d_hat / constants.d_formula_at_1))
    return constants._replace(curve=curve)


def well_curve(constants: WellConstants) -> WellCurve:
    """Sample ``r``, ``d_formula`` and the estimated depth on
    ``delta_points`` log-spaced points of ``[0.01, delta0]`` (with
    ``delta = 1`` always one of them).
    """
    p = constants.params.p
    grid = np.geomspace(DELTA_MIN, constants.delta0,
                        constants.analysis.delta_points - 1)
    grid = np.unique(np.append(grid, 1.0))

    r_values = np.array([r_of_delta(delta, constants) for delta in grid])
    formula = np.array([
        d_formula(delta, constants) if delta < (1 + p) / 2 else np.nan
        for delta in grid
    ])
    depth = np.array([estimate_well_depth(delta, constants)
                      for delta in grid])
    return WellCurve(grid, r_values, formula, depth)


def _sampled_pool(constants: WellConstants, budget: int=None
                  ) -> DirectionPool:
    """The stored pool, or a fresh one of ``budget`` directions (same seed)."""
    pool = constants.pool
    if budget is not None:
        pool = build_pool(constants.domain, constants.params,
                          constants.analysis._replace(directions=int(budget)),
                          constants.seed)
    if pool is None:
        raise NoNehariPoint('constants hold no direction pool')
    return pool


def estimate_well_depth(delta: float, constants: WellConstants,
                        budget: int=None) -> float:
    """Upper estimate of ``d(delta) = inf J`` over ``I_delta = 0``.

    :param delta:  The family parameter.
    :param constants:  Constants holding a direction pool.
    :param budget:  If given, sample a fresh pool with this many random
                    directions (same seed) instead of using the stored one.

    :raises InvalidDelta:  If ``delta <= 0``.
    :raises NoNehariPoint:  If no direction could be projected.

    """
    if not delta > 0:
        raise InvalidDelta("delta should be > 0, got '{}'".format(delta))

    return _pool_depth(_sampled_pool(constants, budget), constants.params,
                       delta)


def nehari_points(delta: float, constants: WellConstants) -> RaySummary:
    """Summaries of the pool directions projected onto ``I_delta = 0``."""
    summary = constants.pool.summary
    beta = beta_star(summary, constants.params, delta)
    return summary.scaled(beta, constants.params.p)


def delta_zero(constants: WellConstants) -> float:
    """The zero ``delta0 > (1+p)/2`` of the estimated well curve."""
    return _delta_zero(constants.pool, constants.params)


def delta_roots(eta: float, constants: WellConstants
                ) -> Tuple[float, float]:
    """The roots ``delta1 <= 1 <= delta2`` of ``d_hat(delta) = eta``.

    If ``eta`` is below the curve at the left end of the grid, ``delta1``
    is reported as 0.

    :raises InvalidDelta:  If ``eta`` is outside ``(0, d_hat]``.

    """
    d_hat = constants.d_hat
    if not 0 < eta <= d_hat:
        raise InvalidDelta("eta should be in (0, {}], got '{}'".format(
            d_hat, eta))
    if eta == d_hat:
        return 1.0, 1.0

    def gap(delta):
        return estimate_well_depth(delta, constants) - eta

    if gap(DELTA_MIN) >= 0:
        logger.info('eta {} is below the well curve at delta = {}, using '
                    'delta1 = 0'.format(eta, DELTA_MIN))
        delta1 = 0.0
    else:
        delta1 = scipy.optimize.brentq(gap, DELTA_MIN, 1.0, xtol=1e-12)

    if gap(constants.delta0) >= 0:
        delta2 = constants.delta0
    else:
        delta2 = scipy.optimize.brentq(gap, 1.0, constants.delta0,
                                       xtol=1e-12)
    return delta1, delta2


LambdaAlpha = namedtuple('LambdaAlpha', ('lower_bound', 'estimate'))
"""Bounds on ``Lambda_alpha = inf ||v||^2_H10`` over Nehari points with
``J < alpha``.

:param lower_bound:  ``(1 / C_eff)^(2/p)``.
:param estimate:  The smallest sampled value, or ``None``.

"""


def lambda_alpha(alpha: float, constants: WellConstants,
                 budget: int=None) -> LambdaAlpha:
    """Estimate ``Lambda_alpha`` over the Nehari points of the pool.

    :param alpha:  The energy level, above ``d_hat``.
    :param constants:  Constants holding a direction pool.
    :param budget:  If given, sample a fresh pool with this many random
                    directions (same seed) instead of using the stored one.

    :raises InvalidParameter:  If ``alpha <= d_hat``.
    :raises NoNehariPoint:  If there is no pool.

    """
    if not alpha > constants.d_hat:
        raise InvalidParameter("alpha should be > d_hat, got '{}'".format(
            alpha))
    p = constants.params.p
    lower = (1.0 / constants.c_eff) ** (2.0 / p)

    pool = _sampled_pool(constants, budget)
    beta = beta_star(pool.summary, constants.params)
    levels = j_on_ray(pool.summary, beta, constants.params)
    norms = beta ** 2 * (pool.l2sq + pool.summary.G)
    inside = np.isfinite(levels) & (levels < alpha)

    if not np.any(inside):
        logger.warning('no Nehari point below alpha = {}'.format(alpha))
        return LambdaAlpha(lower, None)
    return LambdaAlpha(lower, float(np.min(norms[inside])))


# ----------------------------------------------------------------------------
# membership and classification
# ----------------------------------------------------------------------------

def _check_domain(f: Field, constants: WellConstants) -> None:
    if f.domain != constants.domain:
        raise DomainMismatch('field domain {} != constants domain {}'.format(
            f.domain, constants.domain))


def _in_well(j, i_delta, depth, zero):
    return bool(zero or (j < depth and i_delta > 0))


def _in_outer(j, i_delta, depth):
    return bool(j < depth and i_delta < 0)


def in_W(f: Field, constants: WellConstants) -> bool:
    """``f`` in ``{J < d, I > 0}`` or ``f = 0``."""
    return in_W_delta(f, 1.0, constants)


def in_V(f: Field, constants: WellConstants) -> bool:
    """``f`` in ``{J < d, I < 0}``."""
    return in_V_delta(f, 1.0, constants)


def in_W_delta(f: Field, delta: float, constants: WellConstants) -> bool:
    """``f`` in ``{J < d(delta), I_delta > 0}`` or ``f = 0``."""
    _check_domain(f, constants)
    parts = integrals(f, constants.params)
    return _in_well(energy(parts, constants.params),
                    nehari_delta(parts, delta, constants.params),
                    estimate_well_depth(delta, constants),
                    not np.any(f.values))


def in_V_delta(f: Field, delta: float, constants: WellConstants) -> bool:
    """``f`` in ``{J < d(delta), I_delta < 0}``."""
    _check_domain(f, constants)
    parts = integrals(f, constants.params)
    return _in_outer(energy(parts, constants.params),
                     nehari_delta(parts, delta, constants.params),
                     estimate_well_depth(delta, constants))


class Regime(enum.Enum):
    """The predicted behaviour of a solution."""

    GlobalDecay = 'GlobalDecay'
    Blowup = 'Blowup'
    CriticalGlobal = 'CriticalGlobal'
    CriticalBlowup = 'CriticalBlowup'
    HighEnergyBlowup = 'HighEnergyBlowup'
    SupercriticalGlobal = 'SupercriticalGlobal'
    Indeterminate = 'Indeterminate'

    @property
    def is_global(self) -> bool:
        return self in (Regime.GlobalDecay, Regime.CriticalGlobal,
                        Regime.SupercriticalGlobal)

    @property
    def is_blowup(self) -> bool:
        return self in (Regime.Blowup, Regime.CriticalBlowup,
                        Regime.HighEnergyBlowup)


RegimeReport = namedtuple('RegimeReport', (
    'J0', 'I0', 'h1sq', 'd_hat', 'd_formula_at_1', 'in_W', 'in_V',
    'delta_grid', 'in_W_delta', 'in_V_delta', 'delta1', 'delta2',
    'near_critical', 'predicted_regime', 'mu_pred', 'high_energy_checks',
    'alpha', 'lambda_alpha', 'supercritical_sound'))
"""The classification of initial data.

:param J0:  ``J(v0)``.
:param I0:  ``I(v0)``.
:param h1sq:  ``||v0||^2_H10``.
:param d_hat:  The estimated depth.
:param d_formula_at_1:  The formula depth at ``delta = 1``.
:param in_W:  Membership of the well ``W`` (``0`` is a member).
:param in_V:  Membership of the outer well ``V``.
:param delta_grid:  The delta grid of the flags below.
:param in_W_delta:  Tuple of ``W_delta`` memberships.
:param in_V_delta:  Tuple of ``V_delta`` memberships.
:param delta1:  Lower root of ``d(delta) = J0`` or ``None``.
:param delta2:  Upper root of ``d(delta) = J0`` or ``None``.
:param near_critical:  ``|J0 - d_hat| < near_critical * d_hat``.
:param predicted_regime:  A :py:class:`Regime`.
:param mu_pred:  The predicted decay rate ``(1 - delta1) lambda1 /
                 (1 + lambda1)`` (0 if not applicable).
:param high_energy_checks:  ``(J0 > 0, ||v0||^2_H10 > 2(lambda1+1)(1+p)
                            / (lambda1 (p-1)) J0, I0 < 0)``.
:param alpha:  The supercritical energy level.
:param lambda_alpha:  A :py:class:`LambdaAlpha` or ``None``.
:param supercritical_sound:  ``||v0||^2_H10`` is below the conservative
                             lower bound of ``Lambda_alpha``.

"""


def high_energy_constant(constants: WellConstants) -> float:
    """``2(lambda1 + 1)(1 + p) / (lambda1 (p - 1))``."""
    lam, p = constants.lambda1, constants.params.p
    return 2 * (lam + 1) * (1 + p) / (lam * (p - 1))


def classify_initial(v0: Field, constants: WellConstants,
                     alpha: float=None, near_critical: float=None
                     ) -> RegimeReport:
    """Classify initial data against the hypotheses of the existence, decay
    and blow-up results.

    The checks run in order: trivial data, subcritical decay, subcritical
    blow-up, the near-critical band, high energy blow-up, supercritical
    global existence.

    :param v0:  The initial data.
    :param constants:  Well constants of the same domain and model.
    :param alpha:  The supercritical level.  Defaults to ``constants.alpha``.
    :param near_critical:  The near-critical band.  Defaults to the
                           analysis setting.

    :raises DomainMismatch:  If ``v0`` lives on another domain.

    """
    _check_domain(v0, constants)
    params = constants.params
    alpha = constants.alpha if alpha is None else float(alpha)
    band = constants.analysis.near_critical if near_critical is None \
        else near_critical

    parts = integrals(v0, params)
    j0 = energy(parts, params)
    i0 = nehari_delta(parts, 1.0, params)
    g0 = parts.grad_sq
    h1sq = parts.l2sq + parts.grad_sq
    d_hat = constants.d_hat
    zero = not np.any(v0.values)

    if constants.curve is not None:
        grid = constants.curve.delta_grid
        depths = constants.curve.d_nehari_values
    else:
        grid = np.array([1.0])
        depths = np.array([d_hat])
    in_w_delta = tuple(_in_well(j0, i0 + (delta - 1) * g0, depth, zero)
                       for delta, depth in zip(grid, depths))
    in_v_delta = tuple(_in_outer(j0, i0 + (delta - 1) * g0, depth)
                       for delta, depth in zip(grid, depths))

    delta1 = delta2 = None
    if 0 < j0 <= d_hat:
        delta1, delta2 = delta_roots(j0, constants)

    mu_pred = 0.0
    if 0 < j0 < d_hat and i0 > 0:
        mu_pred = (1 - delta1) * constants.lambda1 / (1 + constants.lambda1)

    near = abs(j0 - d_hat) < band * d_hat
    checks = (j0 > 0, h1sq > high_energy_constant(constants) * j0, i0 < 0)

    bounds = None
    sound = False
    if d_hat < j0 and i0 > 0 and alpha > d_hat:
        bounds = lambda_alpha(alpha, constants)
        sound = bool(h1sq < bounds.lower_bound)

    if zero:
        regime = Regime.Indeterminate
    elif not near and 0 < j0 < d_hat and i0 > 0:
        regime = Regime.GlobalDecay
    elif not near and j0 < d_hat and i0 < 0:
        regime = Regime.Blowup
    elif near:
        regime = Regime.CriticalGlobal if i0 >= 0 else Regime.CriticalBlowup
        logger.warning('near-critical data: J0 = {}, d_hat = {}'.format(
            j0, d_hat))
    elif all(checks):
        regime = Regime.HighEnergyBlowup
    elif bounds is not None and j0 < alpha and \
            bounds.estimate is not None and h1sq < bounds.estimate:
        regime = Regime.SupercriticalGlobal
    else:
        regime = Regime.Indeterminate

    logger.debug('classified as {} (J0 = {}, I0 = {})'.format(
        regime.value, j0, i0))

    return RegimeReport(
        J0=j0, I0=i0, h1sq=h1sq, d_hat=d_hat,
        d_formula_at_1=constants.d_formula_at_1,
        in_W=_in_well(j0, i0, d_hat, zero), in_V=_in_outer(j0, i0, d_hat),
        delta_grid=tuple(float(x) for x in grid), in_W_delta=in_w_delta,
        in_V_delta=in_v_delta, delta1=delta1, delta2=delta2,
        near_critical=bool(near), predicted_regime=regime, mu_pred=mu_pred,
        high_energy_checks=tuple(bool(x) for x in checks), alpha=alpha,
        lambda_alpha=bounds, supercritical_sound=sound)
