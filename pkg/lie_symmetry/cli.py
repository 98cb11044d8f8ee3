"""Command-line front end: the `liesym` command and its subcommands.

Each subcommand reads a system file (and vector-field files where needed),
runs one analysis and writes its report to stdout.  The exit status is 0 on
success, 1 when a verification fails, 2 for unparseable input and 3 for a
degenerate system or a vanishing pivot.
"""
from dataclasses import dataclass
from pathlib import Path

import click

from .analysis import AnalysisRequest, analyze
from .reports import render_json, render_text
from .settings import configure_logging, load_settings


@dataclass
class RunConfig:
    """Options of one command-line run.

    Attributes:
        command:  Subcommand name
        system_path:  Path of the .sys file
        vector_field_path:  Path of a .vf file (verify, closure --check)
        basis_path:  Path of a multi-block .vf file (algebra --basis)
        degree, sweep, point, cross_check, show_prolongation:  As in
            analysis.AnalysisRequest
        json_output:  Write the JSON document instead of the text report
        threads:  Worker threads, or None for the configured default
    """
    command: str
    system_path: Path
    vector_field_path: Path = None
    basis_path: Path = None
    degree: int = None
    sweep: tuple = None
    point: tuple = None
    cross_check: bool = False
    show_prolongation: bool = False
    json_output: bool = False
    threads: int = None


def _read(path):
    return None if path is None else Path(path).read_text(encoding='utf-8')


def run(config, settings=None):
    """Run one analysis.

    Args:
        config:  RunConfig
        settings:  flask.Config with the package settings; loaded from the
            defaults and the environment when omitted

    Returns:
        Tuple (exit status, report text)
    """
    if settings is None:
        settings = load_settings()
    request = AnalysisRequest(
        command=config.command,
        system_text=_read(config.system_path),
        vector_field_text=_read(config.vector_field_path),
        basis_text=_read(config.basis_path),
        degree=(settings['DEFAULT_DEGREE'] if config.degree is None
                else config.degree),
        sweep=config.sweep,
        point=config.point,
        cross_check=config.cross_check,
        show_prolongation=config.show_prolongation,
        threads=(settings['THREADS'] if config.threads is None
                 else config.threads),
        prune_consequences=settings['PRUNE_CONSEQUENCES'],
        exponent_bound=settings['EXPONENT_BOUND']
    )
    outcome = analyze(request)
    render = render_json if config.json_output else render_text
    return outcome.status, render(outcome.document)


def _execute(ctx, **fields):
    options = ctx.obj
    config = RunConfig(command=ctx.info_name, json_output=options['json'],
                       threads=options['threads'], **fields)
    status, report = run(config, options['settings'])
    click.echo(report, nl=False)
    ctx.exit(status)


INPUT_FILE = click.Path(exists=True, dir_okay=False, path_type=Path)


@click.group()
@click.option('--json', 'json_output', is_flag=True,
              help='Write the structured JSON document.')
@click.option('--threads', type=click.IntRange(min=1), default=None,
              help='Worker threads (the report does not depend on it).')
@click.option('--verbose', '-v', is_flag=True,
              help='Log pipeline progress to stderr.')
@click.pass_context
def cli(ctx, json_output, threads, verbose):
    """Exact Lie point symmetries of u_y = F1 u1 + F2 u1^2 + F3 u1^3,
    u_xxx = G."""
    settings = load_settings()
    configure_logging('DEBUG' if verbose else settings['LOG_LEVEL'])
    ctx.obj = {'json': json_output, 'threads': threads, 'settings': settings}


@cli.command()
@click.argument('system_path', type=INPUT_FILE)
@click.option('--show-prolongation', is_flag=True,
              help='Also print the prolongation coefficients.')
@click.option('--cross-check', is_flag=True,
              help='Compare with the published determining equations.')
@click.pass_context
def detgen(ctx, system_path, show_prolongation, cross_check):
    """Print the determining equations of a system."""
    _execute(ctx, system_path=system_path,
             show_prolongation=show_prolongation, cross_check=cross_check)


@cli.command()
@click.argument('system_path', type=INPUT_FILE)
@click.option('--degree', type=click.IntRange(min=1), default=None,
              help='Total degree of the polynomial ansatz.')
@click.option('--sweep', type=int, nargs=2, default=None,
              metavar='DMIN DMAX', help='Solve at every degree in a range.')
@click.pass_context
def solve(ctx, system_path, degree, sweep):
    """Print a basis of the polynomial symmetries of a system."""
    if sweep is not None:
        limit = ctx.obj['settings']['MAX_SWEEP_DEGREE']
        if sweep[1] > limit:
            raise click.BadParameter(f'sweeps stop at degree {limit}',
                                     param_hint='--sweep')
    _execute(ctx, system_path=system_path, degree=degree, sweep=sweep)


@cli.command()
@click.argument('system_path', type=INPUT_FILE)
@click.option('--degree', type=click.IntRange(min=1), default=None,
              help='Total degree of the polynomial ansatz.')
@click.option('--basis', 'basis_path', type=INPUT_FILE, default=None,
              help='Use the vector fields in this file as the basis.')
@click.pass_context
def algebra(ctx, system_path, degree, basis_path):
    """Print the structure constants of the symmetry algebra."""
    _execute(ctx, system_path=system_path, degree=degree,
             basis_path=basis_path)


@cli.command()
@click.argument('system_path', type=INPUT_FILE)
@click.option('--point', type=str, nargs=3, default=None,
              metavar='X Y U', help='Point of the reconstruction check.')
@click.option('--check', 'vector_field_path', type=INPUT_FILE, default=None,
              help='Vector field to reconstruct from its initial data.')
@click.pass_context
def closure(ctx, system_path, point, vector_field_path):
    """Print the reduction of all derivatives to the initial coefficients."""
    _execute(ctx, system_path=system_path, point=point,
             vector_field_path=vector_field_path)


@cli.command()
@click.argument('system_path', type=INPUT_FILE)
@click.argument('vector_field_path', type=INPUT_FILE)
@click.pass_context
def verify(ctx, system_path, vector_field_path):
    """Check whether a vector field is a symmetry of a system."""
    _execute(ctx, system_path=system_path,
             vector_field_path=vector_field_path)
