#!/usr/bin/env python
# -*- coding: utf-8 -*-

import logging
from collections import namedtuple

import click
import wrapt

from . import param_types as types
from .config import ENV_PREFIX, Config
from .formatters import TerminalFormatter, SweepFormatter, BasicFormatter
from .scenarios import default_experiment, preset, run_analyze, \
    run_classify, run_simulate, run_sweep, run_verify, run_preset, \
    S3_BRANCHES
from .solver import OutcomeKind
from .exceptions import PropertyFailure, ConfigError, ToleranceFailure, \
    StepCollapse, BracketError, NoNehariPoint, WellCalcError

logger = logging.getLogger(__name__)

EXIT_PROPERTY = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

DEFAULT_AMPLITUDES = '0.05;0.1;0.25;0.5;1;2;3;4;5'

Context = namedtuple('Context', ('config', 'experiment', 'no_color'))
"""What the group passes on to every command."""


@wrapt.decorator
def exit_codes(wrapped, instance, args, kwargs):
    """A decorator that maps errors of a command to the exit codes of the
    command line: ``1`` for failed properties, ``2`` for configuration
    errors and ``3`` for numerical failures (tolerance, step collapse,
    bracketing and Nehari point failures).
    """
    ctx = click.get_current_context()
    try:
        return wrapped(*args, **kwargs)
    except PropertyFailure as exc:
        click.echo(str(exc), err=True)
        ctx.exit(EXIT_PROPERTY)
    except ConfigError as exc:
        click.echo(str(exc), err=True)
        ctx.exit(EXIT_CONFIG)
    except (ToleranceFailure, StepCollapse, BracketError,
            NoNehariPoint) as exc:
        click.echo(str(exc), err=True)
        ctx.exit(EXIT_NUMERICAL)
    except WellCalcError as exc:
        click.echo(str(exc), err=True)
        ctx.exit(EXIT_CONFIG)


def _check_outcome(summary: dict) -> None:
    click.echo('{}: t = {:.6g}, energy residual = {:.3g}'.format(
        summary['outcome'].value, summary['t_final'],
        summary['energy_residual']))
    if summary['outcome'] is OutcomeKind.ToleranceFailure:
        raise ToleranceFailure('the step size controller gave up')


@click.group()
@click.option('-c', '--config', type=types.CONFIG,
              envvar=ENV_PREFIX + '_CONFIG', nargs=1,
              help='Path to an experiment config file (sectioned text or '
                   'yaml).')
@click.option('-o', '--out', default=None, type=click.Path(file_okay=False),
              help='Directory for the output files.')
@click.option('-s', '--seed', default=None, type=int,
              help='Override the random seed.')
@click.option('-b', '--budget', default=None, type=click.IntRange(min=1),
              help='Random directions of the well analysis.')
@click.option('-w', '--workers', default=None, type=click.IntRange(min=1),
              help='Worker processes for sweeps and verify.')
@click.option('--no-color', is_flag=True, default=False,
              help='Turn colored output off.')
@click.pass_context
def main(ctx, config, out, seed, budget, workers, no_color):
    """Potential well analysis and simulation of the pseudo-parabolic
    equation with a logarithmic source.

    Without --config the unit interval with p = 3 is used.

    SUBCOMMAND-HELP:
    For info on a particular COMMAND and it's OPTIONS

    well-calc COMMAND --help

    """
    runtime = Config(workers=workers, seed=seed, out=out)

    experiment = config or default_experiment(seed=runtime.seed)
    if seed is not None:
        experiment = experiment._replace(
            initial=experiment.initial._replace(seed=seed))
    if budget is not None:
        experiment = experiment._replace(
            analysis=experiment.analysis._replace(directions=budget))

    logger.debug('experiment: {}'.format(experiment))
    ctx.obj = Context(runtime, experiment, no_color)


@main.command()
@click.pass_obj
@exit_codes
def analyze(obj):
    """Estimate the well constants, writing constants.json and curve.csv."""
    constants = run_analyze(obj.experiment, obj.config.out,
                            obj.config.workers)
    click.echo('d_hat = {:.10g}, d_formula(1) = {:.10g}, delta0 = {:.10g}'
               .format(constants.d_hat, constants.d_formula_at_1,
                       constants.delta0))


@main.command()
@click.option('-p', '--preset', 'name', default=None, type=types.PRESET,
              help='Classify the data of a scenario preset.')
@click.option('--branch', default=None, type=click.Choice(S3_BRANCHES),
              help='The branch of the critical preset.')
@click.option('-q', '--quiet', is_flag=True, default=False,
              help='Print a single line instead of a table.')
@click.pass_obj
@exit_codes
def classify(obj, name, branch, quiet):
    """Classify the initial data, writing report.json."""
    experiment, constants = obj.experiment, None
    if name is not None:
        built = preset(name, obj.experiment, branch=branch,
                       workers=obj.config.workers)
        experiment, constants = built.experiment, built.constants

    report = run_classify(experiment, obj.config.out, constants,
                          obj.config.workers)
    if quiet:
        click.echo(BasicFormatter.render(report))
    else:
        click.echo(TerminalFormatter(no_colors=obj.no_color).render(report))


@main.command()
@click.option('-p', '--preset', 'name', default=None, type=types.PRESET,
              help='Simulate the data of a scenario preset.')
@click.option('--branch', default=None, type=click.Choice(S3_BRANCHES),
              help='The branch of the critical preset.')
@click.pass_obj
@exit_codes
def simulate(obj, name, branch):
    """Integrate the initial data, writing trajectory.csv and summary.json.
    """
    if name is not None:
        summary = run_preset(name, obj.experiment, obj.config.out,
                             branch=branch, workers=obj.config.workers)
    else:
        summary = run_simulate(obj.experiment, obj.config.out,
                               workers=obj.config.workers)
    _check_outcome(summary)


@main.command('preset')
@click.argument('name', type=types.PRESET)
@click.option('--branch', default=None, type=click.Choice(S3_BRANCHES),
              help='The branch of the critical preset.')
@click.pass_obj
@exit_codes
def preset_command(obj, name, branch):
    """Write the config of a scenario preset to NAME.cfg and simulate it."""
    summary = run_preset(name, obj.experiment, obj.config.out,
                         branch=branch, workers=obj.config.workers)
    _check_outcome(summary)


@main.command()
@click.option('-a', '--amplitudes', default=DEFAULT_AMPLITUDES,
              type=types.AMPLITUDES,
              help="Amplitudes seperated by ';'.")
@click.option('--simulate', 'simulate_rows', is_flag=True, default=False,
              help='Simulate every row.')
@click.pass_obj
@exit_codes
def sweep(obj, amplitudes, simulate_rows):
    """Classify a ray of amplitudes, writing sweep.csv."""
    rows = run_sweep(obj.experiment, amplitudes, obj.config.out,
                     workers=obj.config.workers, simulate=simulate_rows)
    click.echo(SweepFormatter(no_colors=obj.no_color).render(rows))


@main.command()
@click.pass_obj
@exit_codes
def verify(obj):
    """Run the property suite, writing verify.json."""
    results = run_verify(obj.experiment, obj.config.out,
                         workers=obj.config.workers)
    click.echo('{} properties passed'.format(len(results)))


if __name__ == '__main__':
    main(auto_envvar_prefix=ENV_PREFIX)
