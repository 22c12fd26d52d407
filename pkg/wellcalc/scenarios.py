# -*- coding: utf-8 -*-
"""
Experiments: initial data, the scenario presets, and the runners behind the
command line (analyze, classify, simulate, sweep, verify).

Each preset builds initial data that meets the hypotheses of one of the
existence, decay or blow-up results, checks them with :py:mod:`wellcalc.wells`
before anything is simulated, and raises
:py:class:`~wellcalc.exceptions.PropertyFailure` if they do not hold.

"""
from typing import Optional, Sequence, Tuple, List
import math
import logging
from collections import namedtuple

import numpy as np
import scipy.optimize

from .config import ExperimentConfig, InitialData, DEFAULT_SEED, \
    format_config
from .domain import DomainSpec, Field, from_spectral, laplacian_spectrum, \
    to_spectral, l2_sq, grad_sq, quadrature
from .functionals import ModelParams, integrals, energy, nehari_delta, \
    identity_residual, log_power_bound_check
from .fibering import RaySummary, beta_star, j_on_ray, i_on_ray, \
    MAX_DOUBLINGS
from .wells import AnalysisConfig, WellConstants, analyze_wells, \
    classify_initial, r_of_delta, delta_roots, estimate_well_depth, \
    high_energy_constant, Regime, RegimeReport
from .solver import SolverConfig, OutcomeKind, integrate, energy_residual, \
    decay_monitor, blowup_monitor, sign_persistence_check, \
    derivative_residual, invariance_check, apriori_check, TRAJECTORY_COLUMNS
from .formatters import write_csv, write_json, output_path, CURVE_COLUMNS, \
    SWEEP_COLUMNS
from .exceptions import PropertyFailure, ConfigError, TrajectoryTooShort
from .utils import map_workers

logger = logging.getLogger(__name__)

PRESETS = ('S1_subcritical_decay', 'S2_subcritical_blowup', 'S3_critical',
           'S4_high_energy_blowup', 'S5_supercritical_global')
"""The names of the scenario presets."""

S3_BRANCHES = ('global', 'blowup')
"""The branches of the critical preset: ``I0 > 0`` or ``I0 < 0``."""

S4_RATIOS = (0.25, 0.5, 1.0, 2.0, 4.0)
"""Second-mode weights of the rays searched by the high energy preset."""

S4_LEVEL = 2.0
"""The high energy preset starts at ``J0 = (1 + S4_LEVEL * near_critical)
d_hat``, outside the near-critical band."""

S5_EXCESS = (0.5, 0.3, 0.1)


ScenarioPreset = namedtuple('ScenarioPreset', ('name', 'branch',
                                               'experiment', 'expected',
                                               'constants'))
"""A preset with its experiment, the expected classification of its initial
data and the well constants it was built against.
"""


def default_experiment(p: float=3.0, dim: int=1,
                       seed: int=DEFAULT_SEED) -> ExperimentConfig:
    """The unit interval (or square) with every other setting at its
    default.
    """
    return ExperimentConfig(DomainSpec(dim=dim), ModelParams(p),
                            InitialData(seed=seed), SolverConfig(),
                            AnalysisConfig())


def initial_field(experiment: ExperimentConfig) -> Field:
    """The initial data of an experiment.

    Random modes are added to the ``random_modes`` lowest eigenmodes with
    normal amplitudes scaled by ``random_amplitude / (1 + lambda_k)``.

    :raises ConfigError:  If a mode index exceeds the resolution.

    """
    domain = experiment.domain
    initial = experiment.initial
    c = np.zeros(domain.shape)

    for index, amplitude in initial.modes:
        if any(k > n for k, n in zip(index, domain.resolution)):
            raise ConfigError("mode '{}' exceeds the resolution {}".format(
                index, domain.resolution))
        c[tuple(k - 1 for k in index)] += amplitude

    if initial.random_modes > 0:
        eigenvalues = laplacian_spectrum(domain).eigenvalues
        order = np.argsort(eigenvalues, axis=None, kind='stable')
        chosen = order[:initial.random_modes]
        rng = np.random.default_rng(initial.seed)
        c.flat[chosen] += initial.random_amplitude * rng.standard_normal(
            chosen.size) / (1 + eigenvalues.flat[chosen])

    return from_spectral(c, domain)


def well_constants(experiment: ExperimentConfig, workers: int=1
                   ) -> WellConstants:
    """Analyze the wells of the domain and model of an experiment."""
    return analyze_wells(experiment.domain, experiment.params,
                         experiment.analysis, seed=experiment.initial.seed,
                         workers=workers,
                         oversample=experiment.solver.oversample)


# ----------------------------------------------------------------------------
# presets
# ----------------------------------------------------------------------------

def _mode(domain: DomainSpec, first: int) -> Tuple[int]:
    return (first,) + (1,) * (domain.dim - 1)


def _with_modes(experiment: ExperimentConfig, modes, t_end: float=None
                ) -> ExperimentConfig:
    initial = experiment.initial._replace(modes=tuple(modes),
                                          random_modes=0)
    solver = experiment.solver
    if t_end is not None and t_end != solver.t_end:
        solver = SolverConfig(t_end=t_end, rel_tol=solver.rel_tol,
                              abs_tol=solver.abs_tol,
                              blowup_norm=solver.blowup_norm,
                              oversample=solver.oversample,
                              record_stride=solver.record_stride,
                              max_rejections=solver.max_rejections)
    return experiment._replace(initial=initial, solver=solver)


def _ray_summary(experiment: ExperimentConfig, modes) -> RaySummary:
    unit = initial_field(_with_modes(experiment, modes))
    return RaySummary.from_field(unit, experiment.params,
                                 experiment.solver.oversample)


def _unit_summary(experiment: ExperimentConfig, index: Tuple[int]
                  ) -> RaySummary:
    return _ray_summary(experiment, ((index, 1.0),))


def amplitude_at_level(summary: RaySummary, params: ModelParams,
                       level: float, above: bool) -> float:
    """The amplitude ``a`` with ``J(a v) = level``, below (``above=False``)
    or above the maximizer ``beta*`` of the ray.

    :raises PropertyFailure:  If the ray never reaches ``level``.

    """
    def gap(a):
        return j_on_ray(summary, a, params) - level

    peak = beta_star(summary, params)
    if gap(peak) <= 0:
        raise PropertyFailure(
            'the ray peaks at J = {} <= {}'.format(gap(peak) + level, level))

    if not above:
        return scipy.optimize.brentq(gap, peak * 1e-12, peak, xtol=1e-14)

    hi = 2 * peak
    for _ in range(MAX_DOUBLINGS):
        if gap(hi) < 0:
            break
        hi *= 2
    else:
        raise PropertyFailure('J(a v) stays above {}'.format(level))
    return scipy.optimize.brentq(gap, peak, hi, xtol=1e-14)


def _s1(experiment, constants, branch):
    index = _mode(experiment.domain, 1)
    return _with_modes(experiment, ((index, 0.1),))


def _s2(experiment, constants, branch):
    index = _mode(experiment.domain, 1)
    summary = _unit_summary(experiment, index)
    a = amplitude_at_level(summary, experiment.params, 0.5 * constants.d_hat,
                           above=True)
    return _with_modes(experiment, ((index, a),), t_end=10.0)


def _s3(experiment, constants, branch):
    index = _mode(experiment.domain, 1)
    summary = _unit_summary(experiment, index)
    peak = j_on_ray(summary, beta_star(summary, experiment.params),
                    experiment.params)
    if not peak > constants.d_hat * (1 + 1e-9):
        raise PropertyFailure(
            'the sine ray peaks at {}, not above d_hat = {}'.format(
                peak, constants.d_hat))
    a = amplitude_at_level(summary, experiment.params, constants.d_hat,
                           above=(branch == 'blowup'))
    return _with_modes(experiment, ((index, a),))


def _s4(experiment, constants, branch):
    first = _mode(experiment.domain, 1)
    second = _mode(experiment.domain, 2)
    params = experiment.params
    factor = high_energy_constant(constants)
    level = (1 + S4_LEVEL * constants.analysis.near_critical) * \
        constants.d_hat

    for ratio in S4_RATIOS:
        direction = ((first, 1.0), (second, ratio))
        try:
            a = amplitude_at_level(_ray_summary(experiment, direction),
                                   params, level, above=True)
        except PropertyFailure as exc:
            logger.debug('ratio {}: {}'.format(ratio, exc.msg))
            continue

        modes = tuple((index, a * weight) for index, weight in direction)
        candidate = _with_modes(experiment, modes)
        parts = integrals(initial_field(candidate), params,
                          experiment.solver.oversample)
        j0 = energy(parts, params)
        h1sq = parts.l2sq + parts.grad_sq
        if j0 > 0 and h1sq > factor * j0 and \
                nehari_delta(parts, 1.0, params) < 0:
            logger.info('high energy data found at ratio {}, a = {}, '
                        'J0 = {}'.format(ratio, a, j0))
            return candidate

    raise PropertyFailure('no two-mode ray meets the high energy '
                          'conditions above the near-critical band')


def _s5(experiment, constants, branch):
    if not experiment.params.admissible(experiment.domain.dim):
        raise PropertyFailure('p = {} is not admitted in dimension {}'.format(
            experiment.params.p, experiment.domain.dim))

    index = _mode(experiment.domain, 2)
    summary = _unit_summary(experiment, index)

    for excess in S5_EXCESS:
        level = (1 + excess) * constants.d_hat
        if not level < constants.alpha:
            continue
        a = amplitude_at_level(summary, experiment.params, level,
                               above=False)
        candidate = _with_modes(experiment, ((index, a),))
        report = classify_initial(initial_field(candidate), constants)
        if report.predicted_regime is Regime.SupercriticalGlobal:
            logger.info('supercritical data found at J0 = {} d_hat'.format(
                1 + excess))
            return candidate

    raise PropertyFailure('no supercritical data below Lambda_alpha found')


_GENERATORS = dict(zip(PRESETS, (_s1, _s2, _s3, _s4, _s5)))


def check_hypotheses(preset: ScenarioPreset) -> None:
    """Assert the hypotheses of a preset's result on its initial data.

    :raises PropertyFailure:  If a hypothesis does not hold.

    """
    report = preset.expected
    d_hat = preset.constants.d_hat
    failures = []

    def require(condition, message):
        if not condition:
            failures.append(message)

    if preset.name == 'S1_subcritical_decay':
        require(0 < report.J0 < d_hat, '0 < J0 < d')
        require(report.I0 > 0, 'I0 > 0')
    elif preset.name == 'S2_subcritical_blowup':
        require(0 < report.J0 < d_hat, '0 < J0 < d')
        require(report.I0 < 0, 'I0 < 0')
    elif preset.name == 'S3_critical':
        require(abs(report.J0 - d_hat) <= 1e-8 * d_hat, 'J0 = d')
        if preset.branch == 'global':
            require(report.I0 > 0, 'I0 > 0')
        else:
            require(report.I0 < 0, 'I0 < 0')
    elif preset.name == 'S4_high_energy_blowup':
        j0_positive, large_norm, negative = report.high_energy_checks
        require(j0_positive, 'J0 > 0')
        require(large_norm, '||v0||^2 > 2(lambda1+1)(1+p)/(lambda1(p-1)) J0')
        require(negative, 'I0 < 0')
        require(not report.near_critical, 'J0 outside the near-critical band')
    elif preset.name == 'S5_supercritical_global':
        require(report.I0 > 0, 'I0 > 0')
        require(d_hat < report.J0 < report.alpha, 'd < J0 < alpha')
        require(report.lambda_alpha is not None and
                report.lambda_alpha.estimate is not None and
                report.h1sq < report.lambda_alpha.estimate,
                '||v0||^2 < Lambda_alpha')

    if failures:
        raise PropertyFailure('{}: {} violated'.format(
            preset.name, ', '.join(failures)))
    logger.debug('{} hypotheses hold'.format(preset.name))


def preset(name: str, base: ExperimentConfig=None,
           constants: WellConstants=None, branch: str=None,
           workers: int=1) -> ScenarioPreset:
    """Build a scenario preset and check its hypotheses.

    :param name:  One of :py:data:`PRESETS`.
    :param base:  The experiment the preset starts from.  Defaults to
                  :py:func:`default_experiment`.
    :param constants:  Well constants of the base domain and model, computed
                       if not given.
    :param branch:  The branch of ``S3_critical``.  Default ``'global'``.
    :param workers:  Worker processes for the well analysis.

    :raises ConfigError:  If the name or branch is unknown.
    :raises PropertyFailure:  If the hypotheses do not hold.

    """
    if name not in PRESETS:
        raise ConfigError("unknown preset '{}', expected one of {}".format(
            name, ', '.join(PRESETS)))
    branch = branch or 'global'
    if branch not in S3_BRANCHES:
        raise ConfigError("unknown branch '{}'".format(branch))

    base = base or default_experiment()
    constants = constants or well_constants(base, workers)

    experiment = _GENERATORS[name](base, constants, branch)
    expected = classify_initial(initial_field(experiment), constants)
    result = ScenarioPreset(name, branch if name == 'S3_critical' else None,
                            experiment, expected, constants)
    check_hypotheses(result)
    return result


# ----------------------------------------------------------------------------
# runners
# ----------------------------------------------------------------------------

def constants_summary(constants: WellConstants) -> dict:
    """The scalar constants of an analysis, for the constants json."""
    return dict(
        sobolev_C=constants.sobolev_C,
        sobolev=constants.sobolev_method,
        c_eff=constants.c_eff,
        safety_factor=constants.safety_factor,
        lambda1=constants.lambda1,
        d_hat=constants.d_hat,
        d_formula_at_1=constants.d_formula_at_1,
        d_ratio=constants.d_hat / constants.d_formula_at_1,
        delta0=constants.delta0,
        alpha=constants.alpha,
        p=constants.params.p,
        source=constants.params.source,
        domain=constants.domain,
        seed=constants.seed,
    )


def run_analyze(experiment: ExperimentConfig, out: str='.',
                workers: int=1) -> WellConstants:
    """Analyze the wells and write ``constants.json`` and ``curve.csv``."""
    constants = well_constants(experiment, workers)
    curve = constants.curve
    write_json(output_path(out, 'constants.json'),
               constants_summary(constants))
    write_csv(output_path(out, 'curve.csv'), CURVE_COLUMNS,
              zip(curve.delta_grid, curve.r_values, curve.d_formula_values,
                  curve.d_nehari_values))
    logger.info('d_hat = {}, d_formula(1) = {}, delta0 = {}'.format(
        constants.d_hat, constants.d_formula_at_1, constants.delta0))
    return constants


def run_classify(experiment: ExperimentConfig, out: str='.',
                 constants: WellConstants=None, workers: int=1,
                 v0: Field=None) -> RegimeReport:
    """Classify the initial data and write ``report.json``."""
    constants = constants or well_constants(experiment, workers)
    v0 = v0 if v0 is not None else initial_field(experiment)
    report = classify_initial(v0, constants)
    write_json(output_path(out, 'report.json'), report)
    return report


def simulation_summary(outcome, report: RegimeReport,
                       constants: WellConstants) -> dict:
    """The monitors of a finished run, for the summary json."""
    trajectory = outcome.trajectory
    summary = dict(
        outcome=outcome.kind, reason=outcome.reason, T_est=outcome.T_est,
        t_final=outcome.final_state.t, rows=len(trajectory),
        regime=report.predicted_regime, J0=report.J0, I0=report.I0,
        energy_residual=energy_residual(trajectory),
        sign_persistent=sign_persistence_check(trajectory),
        apriori_holds=apriori_check(trajectory),
    )

    try:
        summary['derivative_residual'] = derivative_residual(trajectory)
    except TrajectoryTooShort:
        summary['derivative_residual'] = None

    if report.predicted_regime.is_global and \
            outcome.kind is OutcomeKind.Completed:
        try:
            decay = decay_monitor(trajectory, report)
            summary.update(bound_holds=decay.bound_holds,
                           fitted_rate=decay.fitted_rate,
                           mu_pred=decay.mu_pred)
        except TrajectoryTooShort as exc:
            logger.warning(exc.msg)

    if outcome.kind is OutcomeKind.BlownUp:
        summary['blowup'] = blowup_monitor(
            trajectory, trajectory.params, constants, report)

    if report.delta1 is not None and 0 < report.J0 < report.d_hat:
        summary['invariance'] = invariance_check(trajectory, report,
                                                 constants)
    return summary


def run_simulate(experiment: ExperimentConfig, out: str='.',
                 constants: WellConstants=None, workers: int=1,
                 v0: Field=None, report: RegimeReport=None) -> dict:
    """Integrate the initial data, and write ``trajectory.csv`` and
    ``summary.json``.

    :returns:  The summary.

    """
    constants = constants or well_constants(experiment, workers)
    v0 = v0 if v0 is not None else initial_field(experiment)
    report = report or classify_initial(v0, constants)

    outcome = integrate(v0, experiment.params, experiment.solver, constants)
    summary = simulation_summary(outcome, report, constants)

    write_csv(output_path(out, 'trajectory.csv'), TRAJECTORY_COLUMNS,
              outcome.trajectory)
    write_json(output_path(out, 'summary.json'), summary)
    logger.info('{} at t = {}'.format(outcome.kind.value,
                                      outcome.final_state.t))
    return summary


def run_preset(name: str, base: ExperimentConfig=None, out: str='.',
               constants: WellConstants=None, branch: str=None,
               workers: int=1) -> dict:
    """Build a preset, write its config to ``<name>.cfg`` and simulate it.
    """
    built = preset(name, base, constants, branch, workers)
    with open(output_path(out, '{}.cfg'.format(name)), 'w') as stream:
        stream.write(format_config(built.experiment))
    return run_simulate(built.experiment, out, built.constants, workers,
                        report=built.expected)


SweepRow = namedtuple('SweepRow', SWEEP_COLUMNS)
"""One amplitude of a sweep.  ``outcome`` and ``T_est`` are ``None``
unless the row was simulated.
"""


def _sweep_case(args) -> SweepRow:
    amplitude, direction, experiment, constants, simulate = args
    v0 = direction.scaled(amplitude)
    report = classify_initial(v0, constants)
    outcome = T_est = None
    if simulate:
        result = integrate(v0, experiment.params, experiment.solver,
                           constants)
        outcome, T_est = result.kind, result.T_est
    return SweepRow(amplitude, report.J0, report.I0, report.h1sq,
                    report.predicted_regime, report.near_critical, outcome,
                    T_est)


def run_sweep(experiment: ExperimentConfig, amplitudes: Sequence[float],
              out: str='.', constants: WellConstants=None, workers: int=1,
              simulate: bool=False) -> List[SweepRow]:
    """Classify (and optionally simulate) ``a * v`` for every amplitude,
    where ``v`` is the initial data (the first sine mode if none is set),
    and write ``sweep.csv``.
    """
    constants = constants or well_constants(experiment, workers)
    direction = initial_field(experiment)
    if not np.any(direction.values):
        direction = initial_field(_with_modes(
            experiment, ((_mode(experiment.domain, 1), 1.0),)))

    cases = [(float(a), direction, experiment, constants, simulate)
             for a in amplitudes]
    rows = map_workers(_sweep_case, cases, workers)

    for low, high in zip(rows, rows[1:]):
        if low.regime.is_global and high.regime.is_blowup:
            logger.info('transition between amplitudes {} and {}'.format(
                low.amplitude, high.amplitude))

    write_csv(output_path(out, 'sweep.csv'), SWEEP_COLUMNS, rows)
    return rows


# ----------------------------------------------------------------------------
# property suite
# ----------------------------------------------------------------------------

PropertyResult = namedtuple('PropertyResult', ('name', 'passed', 'checked',
                                               'failures'))
"""The verdict of one property of the suite."""


def random_fields(domain: DomainSpec, count: int, seed: Optional[int]
                  ) -> List[Field]:
    """Smooth random fields with spectra decaying like ``1 / (1 + lambda)``
    and magnitudes spread over four decades.
    """
    rng = np.random.default_rng(seed)
    eigenvalues = laplacian_spectrum(domain).eigenvalues
    fields = []
    for _ in range(count):
        c = rng.standard_normal(domain.shape) / (1 + eigenvalues)
        c *= math.exp(rng.uniform(-2, 2) * math.log(10)) / np.max(np.abs(c))
        fields.append(from_spectral(c, domain))
    return fields


def _check_spectral(experiment, constants):
    domain = experiment.domain
    spectrum = laplacian_spectrum(domain)
    lam = spectrum.lambda1
    failures = 0
    fields = random_fields(domain, 200, experiment.initial.seed)
    for f in fields:
        c = to_spectral(f)
        l2, grad = l2_sq(c, domain), grad_sq(c, spectrum, domain)
        nodal = quadrature(f.values ** 2, domain, oversample=1)
        restored = from_spectral(c, domain).values
        ok = grad >= lam * l2 * (1 - 1e-12)
        ok = ok and grad >= lam / (1 + lam) * (l2 + grad) * (1 - 1e-12)
        ok = ok and abs(nodal - l2) <= 1e-12 * l2
        ok = ok and np.max(np.abs(restored - f.values)) <= \
            1e-12 * np.max(np.abs(f.values))
        failures += not ok
    return len(fields), failures


def _check_delta_signs(experiment, constants):
    params = experiment.params
    failures = checked = 0
    for f in random_fields(experiment.domain, 200, experiment.initial.seed):
        parts = integrals(f, params, experiment.solver.oversample)
        j = energy(parts, params)
        if not 0 < j < constants.d_hat:
            continue
        delta1, delta2 = delta_roots(j, constants)
        signs = {float(np.sign(nehari_delta(parts, delta, params)))
                 for delta in np.linspace(delta1, delta2, 22)[1:-1]}
        checked += 1
        failures += len(signs) != 1 or 0.0 in signs
    if not checked:
        return 1, 1
    return checked, failures


def _check_identity(experiment, constants):
    params = experiment.params
    oversample = experiment.solver.oversample
    failures = 0
    fields = random_fields(experiment.domain, 400, experiment.initial.seed)
    for f in fields:
        j = energy(integrals(f, params, oversample), params)
        if not identity_residual(f, params, oversample) <= \
                1e-10 * (1 + abs(j)):
            failures += 1
    return len(fields), failures


def _check_fibering(experiment, constants):
    params = experiment.params
    failures = 0
    fields = random_fields(experiment.domain, 100, experiment.initial.seed)
    for f in fields:
        summary = RaySummary.from_field(f, params,
                                        experiment.solver.oversample)
        beta = beta_star(summary, params)
        scale = beta ** 2 * summary.G + beta ** (1 + params.p) * (
            abs(summary.L) + summary.P * abs(math.log(beta)))
        ok = abs(i_on_ray(summary, beta, params)) <= 1e-10 * scale
        ok = ok and i_on_ray(summary, 0.5 * beta, params) > 0
        ok = ok and i_on_ray(summary, 2 * beta, params) < 0
        if params.p >= 2:
            ok = ok and j_on_ray(summary, 1e3, params) < 0
        failures += not ok
    return len(fields), failures


def _check_r_delta(experiment, constants):
    params = experiment.params
    failures = checked = 0
    fields = random_fields(experiment.domain, 100, experiment.initial.seed)
    for delta in (0.5, 1.0, 1.5):
        target = 0.99 * r_of_delta(delta, constants)
        for f in fields:
            g = integrals(f, params).grad_sq
            scaled = f.scaled(target / math.sqrt(g))
            checked += 1
            if not nehari_delta(integrals(scaled, params), delta,
                                params) > 0:
                failures += 1
    return checked, failures


def _check_log_bound(experiment, constants):
    failures = checked = 0
    fields = random_fields(experiment.domain, 100, experiment.initial.seed)
    for p in (1.5, 3.0, 5.0):
        for f in fields:
            checked += 1
            failures += not log_power_bound_check(f, ModelParams(p)).holds
    return checked, failures


def _check_well_curve(experiment, constants):
    curve = constants.curve
    grid, depth = curve.delta_grid, curve.d_nehari_values
    inside = grid < constants.delta0
    failures = int(np.count_nonzero(~(depth[inside] > 0)))
    failures += not abs(grid[int(np.argmax(depth))] - 1.0) <= 1e-2
    failures += not estimate_well_depth(constants.delta0, constants) <= \
        1e-3 * constants.d_hat
    return int(np.count_nonzero(inside)) + 2, failures


def _check_delta_roots(experiment, constants):
    failures = checked = 0
    for fraction in (0.25, 0.5, 0.9):
        eta = fraction * constants.d_hat
        delta1, delta2 = delta_roots(eta, constants)
        checked += 1
        ok = delta1 < 1 < delta2 <= constants.delta0
        if delta1 > 0:
            ok = ok and abs(estimate_well_depth(delta1, constants) - eta) <= \
                1e-8 * constants.d_hat
        failures += not ok
    return checked, failures


def _check_persistence(experiment, constants):
    decay = _with_modes(experiment, ((_mode(experiment.domain, 1), 0.1),))
    v0 = initial_field(decay)
    report = classify_initial(v0, constants)
    outcome = integrate(v0, decay.params, decay.solver, constants)
    trajectory = outcome.trajectory
    checks = [
        outcome.kind is OutcomeKind.Completed,
        sign_persistence_check(trajectory),
        energy_residual(trajectory) <= 1e-6,
        apriori_check(trajectory),
        decay_monitor(trajectory, report).bound_holds,
    ]
    return len(checks), checks.count(False)


def _check_blowup_persistence(experiment, constants):
    blowup = _s2(experiment, constants, None)
    v0 = initial_field(blowup)
    outcome = integrate(v0, blowup.params, blowup.solver, constants)
    trajectory = outcome.trajectory
    checks = [
        outcome.kind is OutcomeKind.BlownUp,
        trajectory[0].I < 0,
        sign_persistence_check(trajectory),
        bool(np.all(np.diff(trajectory.column('Ndot')) > 0)),
    ]
    return len(checks), checks.count(False)


PROPERTIES = (
    ('spectral', _check_spectral),
    ('identity', _check_identity),
    ('fibering', _check_fibering),
    ('r_delta', _check_r_delta),
    ('log_bound', _check_log_bound),
    ('well_curve', _check_well_curve),
    ('delta_roots', _check_delta_roots),
    ('delta_signs', _check_delta_signs),
    ('persistence', _check_persistence),
    ('blowup_persistence', _check_blowup_persistence),
)
"""The property suite, in report order."""


def _run_property(args) -> PropertyResult:
    name, check, experiment, constants = args
    checked, failures = check(experiment, constants)
    return PropertyResult(name, failures == 0, checked, failures)


def run_verify(experiment: ExperimentConfig, out: str='.',
               constants: WellConstants=None, workers: int=1
               ) -> List[PropertyResult]:
    """Run the property suite and write ``verify.json``.

    :raises PropertyFailure:  After writing the report, if any property
                              failed.

    """
    if experiment.params.source != 'log':
        raise ConfigError('the property suite needs the log source')
    constants = constants or well_constants(experiment, workers)
    cases = [(name, check, experiment, constants)
             for name, check in PROPERTIES]
    results = map_workers(_run_property, cases, workers)

    write_json(output_path(out, 'verify.json'),
               {result.name: result for result in results})

    failed = [result.name for result in results if not result.passed]
    for result in results:
        logger.info('{}: {} ({} checked, {} failed)'.format(
            result.name, 'pass' if result.passed else 'FAIL',
            result.checked, result.failures))
    if failed:
        raise PropertyFailure('failed properties: {}'.format(
            ', '.join(failed)))
    return results
