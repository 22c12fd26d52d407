# -*- coding: utf-8 -*-
"""
Time integration of the Galerkin system::

    (1 + lambda_k) q_k' + lambda_k q_k = f_k(q)

where ``f_k`` is the sine coefficient of the source, computed by collocation
on the refined grid.  In the form ``q' = A q + N(q)`` with the diagonal
``A = -lambda / (1 + lambda)`` the linear part is integrated exactly by a
Lawson (integrating factor) transformation of the Dormand-Prince 5(4) pair.

The monitors below read a :py:class:`Trajectory` and check the energy
identity, the decay bound, the concavity of ``N(t)`` and the sign of ``I``.

"""
from typing import Optional, Iterator
import enum
import math
import logging
from collections import namedtuple

import numpy as np

from .domain import DomainSpec, Field, laplacian_spectrum, to_spectral, \
    fine_values, project, DEFAULT_OVERSAMPLE
from .functionals import ModelParams, coefficient_integrals, energy, \
    nehari_delta, log_source_values
from .exceptions import InvalidParameter, StepCollapse, ToleranceFailure, \
    TrajectoryTooShort
from .utils import requires_finite

logger = logging.getLogger(__name__)

SAFETY = 0.9
"""Safety factor of the step size controller."""

MAX_GROWTH = 5.0
"""The most a step may grow after an accepted step."""

MIN_GROWTH = 0.2
"""The most a step may shrink after an accepted step."""

# Dormand-Prince 5(4)
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84,
               0.0])
_B_HAT = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640,
                   -92097 / 339200, 187 / 2100, 1 / 40])
_ORDER = 5


class OutcomeKind(enum.Enum):
    Completed = 'Completed'
    BlownUp = 'BlownUp'
    ToleranceFailure = 'ToleranceFailure'


class BlowupReason(enum.Enum):
    NormThreshold = 'NormThreshold'
    StepCollapse = 'StepCollapse'


class SolverConfig(namedtuple('SolverConfig', (
        't_end', 'dt_init', 'dt_min', 'dt_max', 'rel_tol', 'abs_tol',
        'blowup_norm', 'oversample', 'record_stride', 'max_rejections'))):
    """Settings of a run.

    :param t_end:  The end of the time horizon.  Default ``5.0``.
    :param dt_init:  The first step.  Default ``1e-3 * t_end``.
    :param dt_min:  Steps below this declare blow-up.  Default
                    ``1e-12 * t_end``.
    :param dt_max:  The largest step.  Default ``0.1 * t_end``.
    :param rel_tol:  Relative tolerance of the local error.  Default ``1e-8``.
    :param abs_tol:  Absolute tolerance of the local error.  Default
                     ``1e-12``.
    :param blowup_norm:  ``||v||_H10`` declaring blow-up.  Default ``1e6``.
    :param oversample:  Refinement of the collocation grid.  Default ``2``.
    :param record_stride:  Record every n-th accepted step.  Default ``1``.
    :param max_rejections:  Consecutive rejections allowed.  Default ``60``.

    :raises InvalidParameter:  If ``dt_min < dt_init <= dt_max`` fails or a
                               tolerance is not positive.

    """
    __slots__ = ()

    def __new__(cls, t_end: float=5.0, dt_init: float=None,
                dt_min: float=None, dt_max: float=None, rel_tol: float=1e-8,
                abs_tol: float=1e-12, blowup_norm: float=1e6,
                oversample: int=2, record_stride: int=1,
                max_rejections: int=60) -> 'SolverConfig':

        t_end = float(t_end)
        if not (math.isfinite(t_end) and t_end > 0):
            raise InvalidParameter("t_end should be > 0, got '{}'".format(
                t_end))

        dt_init = 1e-3 * t_end if dt_init is None else float(dt_init)
        dt_min = 1e-12 * t_end if dt_min is None else float(dt_min)
        dt_max = 0.1 * t_end if dt_max is None else float(dt_max)

        if not 0 < dt_min < dt_init <= dt_max:
            raise InvalidParameter(
                'expected 0 < dt_min < dt_init <= dt_max, got {}, {}, {}'
                .format(dt_min, dt_init, dt_max))
        if not (rel_tol > 0 and abs_tol > 0 and blowup_norm > 0):
            raise InvalidParameter('tolerances should be > 0')
        if int(oversample) < 1 or int(record_stride) < 1 or \
                int(max_rejections) < 1:
            raise InvalidParameter('oversample, record_stride and '
                                   'max_rejections should be >= 1')

        return super().__new__(
            cls, t_end, dt_init, dt_min, dt_max, float(rel_tol),
            float(abs_tol), float(blowup_norm), int(oversample),
            int(record_stride), int(max_rejections))


SpectralState = namedtuple('SpectralState', ('t', 'q', 'dt'))
"""The Galerkin coefficients ``q`` at time ``t`` and the next step ``dt``.
"""


TRAJECTORY_COLUMNS = (
    't', 'norm_l2', 'norm_grad', 'norm_h1sq', 'power_norm', 'J', 'I',
    'ledger', 'energy_residual', 'N', 'Ndot', 'Nddot', 'concavity_margin',
    'dt')
"""The columns of a trajectory, in output order."""

TrajectoryRow = namedtuple('TrajectoryRow', TRAJECTORY_COLUMNS)
"""A recorded state.

``ledger`` is ``int_0^t ||v_t||^2_H10``, ``N`` is ``int_0^t ||v||^2_H10``,
``Ndot = ||v||^2_H10``, ``Nddot = -2 I`` and
``concavity_margin = N Nddot - (1+p)/2 Ndot^2``.
"""


class Trajectory(object):
    """The rows recorded during a run.

    :param params:  The model parameters of the run.
    :param domain:  The domain of the run.

    """

    def __init__(self, params: ModelParams, domain: DomainSpec,
                 rows: list=None) -> None:
        self.params = params
        self.domain = domain
        self.rows = list(rows or [])

    def append(self, row: TrajectoryRow) -> None:
        if self.rows and not row.t > self.rows[-1].t:
            raise ValueError('trajectory times should increase')
        self.rows.append(row)

    def column(self, name: str) -> np.ndarray:
        """All values of a column."""
        index = TRAJECTORY_COLUMNS.index(name)
        return np.array([row[index] for row in self.rows], dtype=float)

    @property
    def J0(self) -> float:
        return self.rows[0].J

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[TrajectoryRow]:
        return iter(self.rows)

    def __getitem__(self, index):
        return self.rows[index]


RunOutcome = namedtuple('RunOutcome', ('kind', 'reason', 'T_est',
                                       'final_state', 'trajectory'))
"""The result of :py:func:`integrate`.

:param kind:  An :py:class:`OutcomeKind`.
:param reason:  A :py:class:`BlowupReason` if blown up, else ``None``.
:param T_est:  The estimated blow-up time if blown up, else ``None``.  This
               is the ``T_tangent`` of :py:func:`blowup_monitor`.
:param final_state:  The last accepted :py:class:`SpectralState`.
:param trajectory:  The :py:class:`Trajectory`.

"""

_Attempt = namedtuple('_Attempt', ('q', 'k_last', 'error', 'ledger', 'N'))


class Integrator(object):
    """The Lawson Dormand-Prince integrator of one domain and model.

    :param domain:  The domain.
    :param params:  The model parameters.
    :param config:  The :py:class:`SolverConfig`.

    """

    def __init__(self, domain: DomainSpec, params: ModelParams,
                 config: SolverConfig=None) -> None:
        self.domain = domain
        self.params = params
        self.config = config or SolverConfig()
        self.spectrum = laplacian_spectrum(domain)
        self.mass = 1 + self.spectrum.eigenvalues
        self.linear = -self.spectrum.eigenvalues / self.mass

    def nonlinear(self, q: np.ndarray) -> np.ndarray:
        """``f_k(q) / (1 + lambda_k)``."""
        oversample = self.config.oversample
        values = fine_values(q, self.domain, oversample)
        source = log_source_values(values, self.params)
        return project(source, self.domain, oversample) / self.mass

    def rhs(self, q: np.ndarray) -> np.ndarray:
        return self.linear * q + self.nonlinear(q)

    def _h1sq(self, q):
        return self.domain.scale * float(np.sum(self.mass * q ** 2))

    def _attempt(self, q: np.ndarray, k_first: np.ndarray, h: float
                 ) -> _Attempt:
        exps = {}

        def factor(tau):
            if tau not in exps:
                exps[tau] = np.exp(self.linear * tau * h)
            return exps[tau]

        stages, ks = [q], [k_first]
        with np.errstate(all='ignore'):
            for i in range(1, 7):
                y = factor(_C[i]) * q
                for j, a in enumerate(_A[i]):
                    if a != 0.0:
                        y = y + h * a * factor(_C[i] - _C[j]) * ks[j]
                stages.append(y)
                ks.append(self.nonlinear(y))

            error = np.zeros_like(q)
            for j in range(7):
                weight = _B[j] - _B_HAT[j]
                if weight != 0.0:
                    error = error + h * weight * factor(1.0 - _C[j]) * ks[j]

            q_new = stages[6]
            scale = self.config.abs_tol + self.config.rel_tol * max(
                float(np.max(np.abs(q))), float(np.max(np.abs(q_new))))
            norm = float(np.max(np.abs(error))) / scale

            # quadrature of the dissipation and of ||v||^2_H10 with the
            # weights of the scheme
            ledger = N = 0.0
            for j in range(7):
                if _B[j] != 0.0:
                    qdot = self.linear * stages[j] + ks[j]
                    ledger += h * _B[j] * self._h1sq(qdot)
                    N += h * _B[j] * self._h1sq(stages[j])

        if not (np.all(np.isfinite(q_new)) and math.isfinite(norm) and
                math.isfinite(ledger) and math.isfinite(N)):
            norm = math.inf
        return _Attempt(q_new, ks[6], norm, ledger, N)

    def advance(self, q: np.ndarray, k_first: np.ndarray, h: float):
        """Take one accepted step of at most ``h``, halving on rejection.

        :returns:  ``(attempt, h_taken, h_next, rejections)``.

        :raises StepCollapse:  If the step falls below ``dt_min``.
        :raises ToleranceFailure:  If more than ``max_rejections``
                                   consecutive steps are rejected.

        """
        config = self.config
        rejections = 0
        while True:
            attempt = self._attempt(q, k_first, h)
            if attempt.error <= 1.0:
                if attempt.error == 0.0:
                    growth = MAX_GROWTH
                else:
                    growth = min(MAX_GROWTH, max(
                        MIN_GROWTH,
                        SAFETY * attempt.error ** (-1.0 / _ORDER)))
                return attempt, h, min(config.dt_max, h * growth), \
                    rejections

            rejections += 1
            h *= 0.5
            logger.debug('rejected step (error {}), dt -> {}'.format(
                attempt.error, h))
            if h < config.dt_min:
                raise StepCollapse('dt {} fell below dt_min {}'.format(
                    h, config.dt_min))
            if rejections > config.max_rejections:
                raise ToleranceFailure('{} consecutive rejections'.format(
                    rejections))

    def row(self, t: float, q: np.ndarray, ledger: float, N: float,
            dt: float, J0: Optional[float]=None) -> TrajectoryRow:
        """Measure the state ``q`` at time ``t``."""
        parts = coefficient_integrals(q, self.domain, self.params,
                                      self.config.oversample, self.spectrum)
        j = energy(parts, self.params)
        i = nehari_delta(parts, 1.0, self.params)
        j0 = j if J0 is None else J0
        h1sq = parts.l2sq + parts.grad_sq
        nddot = -2 * i
        return TrajectoryRow(
            t=t, norm_l2=math.sqrt(parts.l2sq),
            norm_grad=math.sqrt(parts.grad_sq), norm_h1sq=h1sq,
            power_norm=parts.power, J=j, I=i, ledger=ledger,
            energy_residual=abs(ledger + j - j0) / max(1.0, abs(j0)),
            N=N, Ndot=h1sq, Nddot=nddot,
            concavity_margin=N * nddot - (1 + self.params.p) / 2 * h1sq ** 2,
            dt=dt)


def rhs(q: np.ndarray, params: ModelParams, domain: DomainSpec,
        oversample: int=DEFAULT_OVERSAMPLE) -> np.ndarray:
    """``q_k' = (-lambda_k q_k + f_k) / (1 + lambda_k)`` with ``f_k`` the
    sine coefficient of the source, collocated on the refined grid.
    """
    config = SolverConfig(oversample=oversample)
    return Integrator(domain, params, config).rhs(np.asarray(q, dtype=float))


def step(state: SpectralState, config: SolverConfig, params: ModelParams,
         domain: DomainSpec) -> SpectralState:
    """One accepted adaptive step from ``state``.

    :raises StepCollapse:  If the step falls below ``dt_min``.

    """
    integrator = Integrator(domain, params, config)
    q = np.asarray(state.q, dtype=float)
    attempt, h, h_next, _ = integrator.advance(
        q, integrator.nonlinear(q), min(state.dt, config.dt_max))
    return SpectralState(state.t + h, attempt.q, h_next)


@requires_finite
def integrate(v0: Field, params: ModelParams, config: SolverConfig=None,
              constants=None) -> RunOutcome:
    """Integrate from ``v0`` until ``t_end`` or blow-up.

    Blow-up is declared when ``||v||_H10 >= blowup_norm`` or when a rejected
    step falls below ``dt_min``.

    :param v0:  The initial data.
    :param params:  The model parameters.
    :param config:  The :py:class:`SolverConfig`.
    :param constants:  Optional well constants, forwarded to the blow-up
                       monitor.

    """
    config = config or SolverConfig()
    integrator = Integrator(v0.domain, params, config)
    trajectory = Trajectory(params, v0.domain)

    q = to_spectral(v0)
    k = integrator.nonlinear(q)
    t, dt, ledger, N = 0.0, config.dt_init, 0.0, 0.0
    first = integrator.row(t, q, ledger, N, 0.0)
    trajectory.append(first)
    J0 = first.J

    kind, reason, accepted, last = OutcomeKind.Completed, None, 0, first
    end = config.t_end * (1 - 1e-14)

    while t < end:
        h = min(dt, config.t_end - t)
        try:
            attempt, h, dt, _ = integrator.advance(q, k, h)
        except StepCollapse as exc:
            logger.info('blow-up declared at t = {}: {}'.format(t, exc.msg))
            kind, reason = OutcomeKind.BlownUp, BlowupReason.StepCollapse
            break
        except ToleranceFailure as exc:
            logger.warning('tolerance failure at t = {}: {}'.format(
                t, exc.msg))
            kind = OutcomeKind.ToleranceFailure
            break

        q, k = attempt.q, attempt.k_last
        t += h
        ledger += attempt.ledger
        N += attempt.N
        accepted += 1

        blown = math.sqrt(integrator._h1sq(q)) >= config.blowup_norm
        if blown or accepted % config.record_stride == 0 or t >= end:
            last = integrator.row(t, q, ledger, N, h, J0)
            trajectory.append(last)

        if blown:
            logger.info('blow-up declared at t = {}: norm threshold'.format(
                t))
            kind, reason = OutcomeKind.BlownUp, BlowupReason.NormThreshold
            break

    if kind is not OutcomeKind.Completed and last.t < t:
        trajectory.append(integrator.row(t, q, ledger, N, h, J0))

    T_est = None
    if kind is OutcomeKind.BlownUp:
        check = blowup_monitor(trajectory, params, constants)
        T_est = check.T_tangent if check.T_tangent is not None else t

    return RunOutcome(kind, reason, T_est, SpectralState(t, q, dt),
                      trajectory)


# ----------------------------------------------------------------------------
# monitors
# ----------------------------------------------------------------------------

def energy_residual(trajectory: Trajectory) -> float:
    """``max |ledger + J - J(v0)| / max(1, |J(v0)|)`` over all rows."""
    ledger = trajectory.column('ledger')
    j = trajectory.column('J')
    j0 = trajectory.J0
    return float(np.max(np.abs(ledger + j - j0))) / max(1.0, abs(j0))


DecayCheck = namedtuple('DecayCheck', ('bound_holds', 'fitted_rate',
                                       'mu_pred'))
"""The decay bound ``||v(t)||_H10 <= ||v0||_H10 exp(-mu t)`` and the
asymptotic rate fitted over the final half of the run.
"""


def decay_monitor(trajectory: Trajectory, report=None) -> DecayCheck:
    """Check the exponential decay bound with the predicted rate of a
    :py:class:`~wellcalc.wells.RegimeReport` (0 if ``report`` is ``None``).

    :raises TrajectoryTooShort:  If there are fewer than 10 rows.

    """
    if len(trajectory) < 10:
        raise TrajectoryTooShort('{} rows, need 10 to fit a rate'.format(
            len(trajectory)))

    mu = 0.0 if report is None else float(report.mu_pred)
    t = trajectory.column('t')
    norm = np.sqrt(trajectory.column('norm_h1sq'))

    bound = norm[0] * np.exp(-mu * t) * (1 + 1e-3)
    holds = bool(np.all(norm <= bound))

    tail = t >= 0.5 * t[-1]
    if np.count_nonzero(tail) < 2:
        tail = np.arange(len(t)) >= len(t) // 2
    slope = np.polyfit(t[tail], np.log(norm[tail]), 1)[0]
    return DecayCheck(holds, float(-slope), mu)


BlowupCheck = namedtuple('BlowupCheck', (
    'concavity_onset', 'T_est', 'tail_linearity_R2', 'T_star', 'T_tangent',
    'mdd_holds', 'ndd_bound', 'ndd_bound_holds'))
"""Blow-up signatures of a trajectory.

:param concavity_onset:  First ``t`` from which the concavity margin stays
                         positive, or ``None``.
:param T_est:  Zero of the line fitted to ``N^(-(p-1)/2)`` over the final
               quarter of the run, or ``None`` without a concavity onset.
:param tail_linearity_R2:  The coefficient of determination of that fit.
:param T_star:  ``t + 2/(p-1) N/Ndot`` at the onset, an upper bound of the
                blow-up time, or ``None``.
:param T_tangent:  The same expression at the last row, where the tangent
                   of ``N^(-(p-1)/2)`` crosses zero, or ``None``.  Past the
                   onset it lies between the last recorded ``t`` and
                   ``T_star``.
:param mdd_holds:  ``Nddot >= -2(1+p) J + (p-1) lambda1/(1+lambda1) Ndot``
                   on every row.
:param ndd_bound:  ``2(delta2 - 1) r(delta2)^2`` or ``None``.
:param ndd_bound_holds:  ``Nddot`` stays above ``ndd_bound``, or ``None``.

"""


def ndd_lower_bound(delta2: float, constants) -> float:
    """``2 (delta2 - 1) r(delta2)^2``, the lower bound of ``N''`` for data
    in the outer wells.
    """
    from .wells import r_of_delta
    return 2 * (delta2 - 1) * r_of_delta(delta2, constants) ** 2


def blowup_monitor(trajectory: Trajectory, params: ModelParams,
                   constants=None, report=None) -> BlowupCheck:
    """Read the blow-up signatures of a trajectory.

    :param trajectory:  The trajectory.
    :param params:  The model parameters.
    :param constants:  Optional well constants.
    :param report:  Optional :py:class:`~wellcalc.wells.RegimeReport`; with
                    ``constants`` it enables the ``N''`` lower bound.

    """
    t = trajectory.column('t')
    margin = trajectory.column('concavity_margin')
    N = trajectory.column('N')
    ndot = trajectory.column('Ndot')
    nddot = trajectory.column('Nddot')
    j = trajectory.column('J')

    onset_index = None
    if len(t) and margin[-1] > 0:
        negative = np.nonzero(margin <= 0)[0]
        onset_index = int(negative[-1]) + 1 if negative.size else 0
    onset = None if onset_index is None else float(t[onset_index])

    exponent = (params.p - 1) / 2
    T_est = None
    r2 = 0.0
    positive = N > 0
    if np.count_nonzero(positive) >= 3:
        tp, y = t[positive], N[positive] ** -exponent
        window = np.linspace(max(0.75 * tp[-1], tp[0]), tp[-1], 200)
        sample = np.interp(window, tp, y)
        slope, intercept = np.polyfit(window, sample, 1)
        fitted = slope * window + intercept
        total = float(np.sum((sample - sample.mean()) ** 2))
        r2 = 1.0 - float(np.sum((sample - fitted) ** 2)) / total \
            if total > 0 else 0.0
        if onset is not None and slope < 0:
            T_est = float(-intercept / slope)

    T_star = None
    if onset_index is not None and ndot[onset_index] > 0:
        T_star = float(t[onset_index] + 2 / (params.p - 1) *
                       N[onset_index] / ndot[onset_index])

    T_tangent = None
    if onset_index is not None and ndot[-1] > 0:
        T_tangent = float(t[-1] + 2 / (params.p - 1) * N[-1] / ndot[-1])

    lam = laplacian_spectrum(trajectory.domain).lambda1
    floor = -2 * (1 + params.p) * j + (params.p - 1) * lam / (1 + lam) * ndot
    mdd_holds = bool(np.all(nddot >= floor - 1e-9 * (1 + np.abs(floor))))

    bound = holds = None
    if constants is not None and report is not None and \
            report.delta2 is not None and report.I0 < 0 and \
            report.delta2 > 1:
        bound = ndd_lower_bound(report.delta2, constants)
        holds = bool(np.all(nddot >= bound))

    return BlowupCheck(onset, T_est, r2, T_star, T_tangent, mdd_holds, bound,
                       holds)


def sign_persistence_check(trajectory: Trajectory) -> bool:
    """``True`` if ``I`` keeps the sign of ``I(v0)`` on every row
    (vacuously for ``I(v0) = 0``).
    """
    i = trajectory.column('I')
    if len(i) == 0 or i[0] == 0:
        return True
    return bool(np.all(np.sign(i) == np.sign(i[0])))


DerivativeCheck = namedtuple('DerivativeCheck', ('h1sq_residual',
                                                 'N_residual'))
"""Relative residuals of ``d/dt ||v||^2_H10 = -2 I`` and ``N' = Ndot``
by midpoint differences between consecutive rows.
"""


def derivative_residual(trajectory: Trajectory) -> DerivativeCheck:
    """Compare finite differences of the recorded columns with the
    recorded derivatives.

    :raises TrajectoryTooShort:  If there are fewer than 3 rows.

    """
    if len(trajectory) < 3:
        raise TrajectoryTooShort('need 3 rows for differences')
    t = trajectory.column('t')
    dt = np.diff(t)

    def residual(values, derivative):
        difference = np.diff(values) / dt
        midpoint = 0.5 * (derivative[1:] + derivative[:-1])
        return float(np.max(np.abs(difference - midpoint)) /
                     max(float(np.max(np.abs(derivative))), 1e-300))

    return DerivativeCheck(
        residual(trajectory.column('Ndot'), trajectory.column('Nddot')),
        residual(trajectory.column('N'), trajectory.column('Ndot')))


def apriori_check(trajectory: Trajectory) -> bool:
    """``||grad v||^2 <= 2(1+p)/(p-1) J`` and
    ``||v||_(1+p)^(1+p) <= (1+p)^2 J`` on every row with ``I >= 0``.
    """
    p = trajectory.params.p
    j = trajectory.column('J')
    inside = trajectory.column('I') >= 0
    tol = 1e-10 * (1 + np.abs(j))
    grad = trajectory.column('norm_grad') ** 2 <= \
        2 * (1 + p) / (p - 1) * j + tol
    power = trajectory.column('power_norm') <= (1 + p) ** 2 * j + tol
    return bool(np.all((grad & power) | ~inside))


InvarianceCheck = namedtuple('InvarianceCheck', ('checked', 'violations',
                                                 'deltas'))
"""Membership of every recorded state in ``W_delta`` (``I0 > 0``) or
``V_delta`` (``I0 < 0``) for a grid of ``delta`` inside ``(delta1, delta2)``.
"""


def invariance_check(trajectory: Trajectory, report, constants,
                     points: int=20) -> InvarianceCheck:
    """Check the invariance of the well family along a run started at
    ``0 < J(v0) < d``.  Nothing is checked if the report has no roots.
    """
    from .wells import estimate_well_depth, DELTA_MIN

    if report.delta1 is None or report.I0 == 0:
        return InvarianceCheck(False, 0, ())

    low = max(report.delta1, DELTA_MIN)
    deltas = np.linspace(low, report.delta2, points + 2)[1:-1]
    j = trajectory.column('J')
    i = trajectory.column('I')
    grad = trajectory.column('norm_grad') ** 2
    zero = trajectory.column('norm_h1sq') == 0

    violations = 0
    for delta in deltas:
        depth = estimate_well_depth(delta, constants)
        i_delta = i + (delta - 1) * grad
        if report.I0 > 0:
            ok = zero | ((j < depth) & (i_delta > 0))
        else:
            ok = (j < depth) & (i_delta < 0)
        violations += int(np.count_nonzero(~ok))

    return InvarianceCheck(True, violations, tuple(float(d) for d in deltas))
