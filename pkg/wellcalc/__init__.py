# -*- coding: utf-8 -*-

from .utils import bool_from_env_string, dict_from_env_string, \
    parse_input_string, colorize, format_float, map_workers

from .config import Config, ExperimentConfig, InitialData, parse_config, \
    from_yaml, format_config

from .domain import DomainSpec, Field, laplacian_spectrum, to_spectral, \
    from_spectral, norm_l2, norm_h10, norm_lp

from .functionals import ModelParams, log_source, log_integral, J, I, \
    J_delta, I_delta, identity_residual, apriori_bounds

from .fibering import RaySummary, j_on_ray, i_on_ray, beta_star

from .wells import AnalysisConfig, WellConstants, Regime, RegimeReport, \
    analyze_wells, estimate_sobolev_constant, estimate_well_depth, \
    well_curve, r_of_delta, d_formula, delta_roots, classify_initial, \
    in_W, in_V, in_W_delta, in_V_delta

from .solver import SolverConfig, SpectralState, RunOutcome, OutcomeKind, \
    BlowupReason, Trajectory, rhs, step, integrate, energy_residual, \
    decay_monitor, blowup_monitor, sign_persistence_check

from .exceptions import WellCalcError, InvalidParameter, InvalidDelta, \
    InvalidBeta, BracketError, NoNehariPoint, ToleranceFailure, \
    StepCollapse, PropertyFailure, ConfigError

from .formatters import BaseFormatter, BasicFormatter, TerminalFormatter, \
    SweepFormatter


__version__ = '0.1.0'

__all__ = [

    # Utils
    'bool_from_env_string', 'dict_from_env_string', 'parse_input_string',
    'colorize', 'format_float', 'map_workers',

    # Config
    'Config', 'ExperimentConfig', 'InitialData', 'parse_config', 'from_yaml',
    'format_config',

    # Domain
    'DomainSpec', 'Field', 'laplacian_spectrum', 'to_spectral',
    'from_spectral', 'norm_l2', 'norm_h10', 'norm_lp',

    # Functionals
    'ModelParams', 'log_source', 'log_integral', 'J', 'I', 'J_delta',
    'I_delta', 'identity_residual', 'apriori_bounds',

    # Fibering
    'RaySummary', 'j_on_ray', 'i_on_ray', 'beta_star',

    # Wells
    'AnalysisConfig', 'WellConstants', 'Regime', 'RegimeReport',
    'analyze_wells', 'estimate_sobolev_constant', 'estimate_well_depth',
    'well_curve', 'r_of_delta', 'd_formula', 'delta_roots',
    'classify_initial', 'in_W', 'in_V', 'in_W_delta', 'in_V_delta',

    # Solver
    'SolverConfig', 'SpectralState', 'RunOutcome', 'OutcomeKind',
    'BlowupReason', 'Trajectory', 'rhs', 'step', 'integrate',
    'energy_residual', 'decay_monitor', 'blowup_monitor',
    'sign_persistence_check',

    # Exceptions
    'WellCalcError', 'InvalidParameter', 'InvalidDelta', 'InvalidBeta',
    'BracketError', 'NoNehariPoint', 'ToleranceFailure', 'StepCollapse',
    'PropertyFailure', 'ConfigError',

    # Formatters
    'BaseFormatter', 'BasicFormatter', 'TerminalFormatter', 'SweepFormatter',

]
