"""Command line interface of pyteich. Every subcommand builds a surface point
from a :class:`pyteich.cli.RunConfig`, evaluates the series or the spectrum
statistics and writes a JSON or CSV report. The exit status is 0 if every
check passed, 1 on a numeric failure (an identity outside the tolerance or
an arithmetic error) and 2 on a usage or domain error.

Examples:

    Verify the arctan and McShane identities at the hexagonal point:

    .. code-block:: console

        $ pyteich verify --x1 3 --x2 3 --ldelta 0 --cutoff 40
"""
from __future__ import annotations
import argparse
import csv
import datetime
import io
import json
import os
import platform
import sys
import time
from typing import Any, Callable, Dict, List, Optional, Tuple
import jsonschema
import numpy as np
import scipy
from .. import __version__
from ..data_container import DataContainer
from ..geometry import wolpert_derivative_check
from ..ini_parser import ROOT_PATH
from ..series import (SeriesReport, arctan_sum, degeneration_limit, mcshane_sum,
                      telescoping_sum, variation_sum)
from ..spectrum import (collar_check, counting_function, length_spectrum,
                        product_lower_bound_check)
from .run_config import RunConfig

REPORT_SCHEMA = os.path.join(ROOT_PATH, 'config/report_schema.json')
SERIES_COLUMNS = ('name', 'value', 'terms_used', 'cutoff_length', 'tail_bound', 'target',
                  'abs_error_vs_target', 'passed')
SPECTRUM_COLUMNS = ('slope_p', 'slope_q', 'trace', 'length')

class CommandOutput(DataContainer):
    """Results of a subcommand.

    Args:
        command : Subcommand name.
        passed : True if every check passed.
        results : List of result dictionaries.
        records : Enumerated geodesics of the spectrum command.
    """
    attr_set = {'command', 'passed', 'results'}
    init_set = {'records'}

    command : str
    passed : bool
    results : List[Dict[str, Any]]
    records : Optional[list]

def _report_dict(report: SeriesReport, tolerance: float) -> Dict[str, Any]:
    dct = report.export_dict()
    dct['passed'] = report.passed(tolerance)
    return dct

def _stage(config: RunConfig, message: str) -> None:
    if config.verbose:
        print(message, file=sys.stderr)

def cmd_verify_identity(config: RunConfig) -> CommandOutput:
    """Evaluate the arctan identity and, on a punctured torus, McShane's
    identity up to the length cutoff.
    """
    point = config.surface_point()
    reports = [arctan_sum(point, config.cutoff, num_threads=config.num_threads,
                          verbose=config.verbose)]
    if point.is_cusp:
        reports.append(mcshane_sum(point, config.cutoff, num_threads=config.num_threads,
                                   verbose=config.verbose))
    for report in reports:
        _stage(config, f'{report.name}: value = {report.value:.12f}, '\
                       f'error = {report.abs_error_vs_target:.3e}, terms = {report.terms_used:d}')
    results = [_report_dict(report, config.tolerance) for report in reports]
    return CommandOutput(command='verify', passed=all(res['passed'] for res in results),
                         results=results)

def cmd_spectrum(config: RunConfig) -> CommandOutput:
    """Enumerate the simple length spectrum up to the cutoff, count it at
    the thresholds and run the collar and product inequality checks.
    """
    point = config.surface_point()
    records = length_spectrum(point, config.cutoff, num_threads=config.num_threads,
                              verbose=config.verbose)
    thresholds = [t for t in config.thresholds if t <= config.cutoff] or [config.cutoff]
    summary = counting_function(point, thresholds, num_threads=config.num_threads)
    collar = collar_check(point, config.cutoff)
    product = product_lower_bound_check(point, config.cutoff)
    _stage(config, f'spectrum: {len(records):d} geodesics, systole = '\
                   f'{summary.systole_length:.12f} ({summary.systole_slope!s})')
    result = summary.export_dict()
    result.update(name='spectrum', collar_violations=len(collar),
                  product_violations=len(product), passed=not collar and not product)
    return CommandOutput(command='spectrum', passed=result['passed'], results=[result],
                         records=[{'slope': str(rec.slope), 'trace': rec.trace,
                                   'length': rec.length} for rec in records])

def cmd_twist_orbit(config: RunConfig) -> CommandOutput:
    """Sum the angles along the twist orbit of `gamma_prime` about `gamma`
    and compare the twist derivative of its length with the cosine of the
    intersection angle.
    """
    point = config.surface_point()
    gamma, gamma_prime = config.slope('gamma'), config.slope('gamma_prime')
    report = telescoping_sum(point, gamma, gamma_prime, config.n_terms)
    analytic, finite_diff = wolpert_derivative_check(point, gamma, gamma_prime, config.fd_step)
    derivative = SeriesReport(name='twist_derivative', value=finite_diff, terms_used=2,
                              cutoff_length=config.fd_step, tail_bound=0.0, target=analytic)
    _stage(config, f'telescoping: value = {report.value:.12f}, '\
                   f'error = {report.abs_error_vs_target:.3e}')
    results = [_report_dict(report, config.tolerance),
               _report_dict(derivative, config.tolerance)]
    return CommandOutput(command='twist-orbit', passed=all(res['passed'] for res in results),
                         results=results)

def cmd_degenerate(config: RunConfig) -> CommandOutput:
    """Evaluate a degeneration limit at the near cusp point with systole
    `epsilon`. The check passes if the twist orbit sum is within
    `limit_tolerance` of its limit.
    """
    f, f_prime0 = config.profile()
    report = degeneration_limit(config.l_delta, config.epsilon, f, f_prime0, name=config.f_name)
    orbit_error = abs(report.components['orbit'] - report.components['orbit_target'])
    _stage(config, f'{report.name}: value = {report.value:.12f}, target = {report.target:.12f}, '\
                   f'orbit error = {orbit_error:.3e}')
    result = report.export_dict()
    result['passed'] = bool(orbit_error < config.limit_tolerance)
    return CommandOutput(command='degenerate', passed=result['passed'], results=[result])

def cmd_variation(config: RunConfig) -> CommandOutput:
    """Sum the variation of the intersection angles along the twist flow of
    `mu`. The check passes if the signed sum vanishes within the tolerance
    and no length variation exceeds its intersection number.
    """
    point = config.surface_point()
    report = variation_sum(point, config.slope('mu'), config.cutoff, config.fd_step)
    violations = report.components['amplitude_violations']
    _stage(config, f'variation: value = {report.value:.3e}, '\
                   f'absolute = {report.components["absolute"]:.12f}, '\
                   f'amplitude violations = {violations:d}')
    result = _report_dict(report, config.tolerance)
    result['passed'] = result['passed'] and violations == 0
    return CommandOutput(command='variation', passed=result['passed'], results=[result])

COMMANDS: Dict[str, Tuple[Callable[[RunConfig], CommandOutput], str]] = {
    'verify': (cmd_verify_identity, "Verify the arctan and McShane identities"),
    'spectrum': (cmd_spectrum, "Enumerate the simple length spectrum"),
    'twist-orbit': (cmd_twist_orbit, "Sum the angles along a twist orbit"),
    'degenerate': (cmd_degenerate, "Evaluate a degeneration limit"),
    'variation': (cmd_variation, "Sum the angle variations along a twist flow")}

def _finite(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {key: _finite(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(val) for val in obj]
    if isinstance(obj, float) and not np.isfinite(obj):
        return None
    return obj

def versions() -> Dict[str, str]:
    return {'pyteich': __version__, 'numpy': np.__version__, 'scipy': scipy.__version__,
            'python': platform.python_version()}

def make_report(output: CommandOutput, config: RunConfig, start: datetime.datetime,
                elapsed: float) -> Dict[str, Any]:
    """Assemble the JSON report of a run and validate it against the
    report schema. Non-finite floats are replaced by None.

    Raises:
        jsonschema.ValidationError : If the report doesn't match the schema.
    """
    report = {'command': output.command, 'passed': bool(output.passed),
              'config': config.export_dict(), 'versions': versions(),
              'timing': {'start': start.isoformat(), 'elapsed': elapsed},
              'results': output.results}
    if output.records is not None:
        report['records'] = output.records
    report = _finite(report)
    with open(REPORT_SCHEMA, 'r') as schema_file:
        jsonschema.validate(report, json.load(schema_file))
    return report

def _csv_cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, '.17g')
    return str(value)

def write_csv(output: CommandOutput, stream: io.TextIOBase) -> None:
    """Write the geodesics of the spectrum command (sorted by length) or
    one row per series report of the other commands.
    """
    writer = csv.writer(stream, lineterminator='\r\n')
    if output.command == 'spectrum':
        writer.writerow(SPECTRUM_COLUMNS)
        for rec in output.records:
            p, q = rec['slope'].split('/')
            writer.writerow([p, q, _csv_cell(rec['trace']), _csv_cell(rec['length'])])
    else:
        writer.writerow(SERIES_COLUMNS)
        for result in output.results:
            writer.writerow([_csv_cell(_finite(result.get(col))) for col in SERIES_COLUMNS])

def write_output(output: CommandOutput, config: RunConfig, report: Dict[str, Any]) -> None:
    if config.out_path in ('', '-'):
        stream = sys.stdout
    else:
        stream = open(config.out_path, 'w', encoding='utf-8', newline='')
    try:
        if config.format == 'csv':
            write_csv(output, stream)
        else:
            json.dump(report, stream, ensure_ascii=False, indent=2, allow_nan=False)
            stream.write('\n')
    finally:
        if stream is not sys.stdout:
            stream.close()
            _stage(config, f"The report has been saved to {os.path.abspath(config.out_path)}")

def run_command(command: str, config: RunConfig) -> Tuple[CommandOutput, Dict[str, Any]]:
    """Run a subcommand and return its output together with the validated
    JSON report.
    """
    if command not in COMMANDS:
        raise ValueError(f"Invalid command '{command}', must be one of {list(COMMANDS)}")
    start, tic = datetime.datetime.now(), time.perf_counter()
    output = COMMANDS[command][0](config)
    return output, make_report(output, config, start, time.perf_counter() - tic)

def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser with a subparser for every command."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-f', '--ini_file', type=str,
                        help="Path to an INI file to fetch all of the run parameters")
    common.add_argument('--x1', type=float, help="Trace of the curve 1/0")
    common.add_argument('--x2', type=float, help="Trace of the curve 0/1")
    common.add_argument('--ldelta', dest='l_delta', type=float, help="Boundary length")
    common.add_argument('--root', choices=('smaller', 'larger'),
                        help="Root of the Markoff cubic for the third trace")
    common.add_argument('--preset', type=str,
                        help="Named point: none, hexagonal, near-cusp:<epsilon> or random")
    common.add_argument('--cutoff', type=float, help="Length cutoff")
    common.add_argument('--epsilon', type=float, help="Systole of the degeneration family")
    common.add_argument('--format', choices=('json', 'csv'), help="Report format")
    common.add_argument('--threads', dest='num_threads', type=int,
                        help="Number of worker processes")
    common.add_argument('--seed', type=int, help="Seed of the random point preset")
    common.add_argument('--tol', dest='tolerance', type=float, help="Tolerance of the identities")
    common.add_argument('--out', dest='out_path', type=str,
                        help="Output file path, '-' for the standard output")
    common.add_argument('-v', '--verbose', action='store_const', const=True,
                        help="Show progress bars and stage summaries")

    parser = argparse.ArgumentParser(prog='pyteich',
                                     description="Length series identities on the one-holed torus",
                                     formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    subparsers = parser.add_subparsers(dest='command', required=True)
    subs = {name: subparsers.add_parser(name, parents=[common], help=desc, description=desc)
            for name, (_, desc) in COMMANDS.items()}
    subs['spectrum'].add_argument('--thresholds', type=float, nargs='+',
                                  help="Thresholds of the counting function")
    subs['twist-orbit'].add_argument('--gamma', type=str, help="Twisting curve p/q")
    subs['twist-orbit'].add_argument('--gamma-prime', dest='gamma_prime', type=str,
                                     help="Twisted curve p/q")
    subs['twist-orbit'].add_argument('--n', dest='n_terms', type=int,
                                     help="Number of terms on either side")
    subs['twist-orbit'].add_argument('--fd-step', dest='fd_step', type=float,
                                     help="Finite difference twist step")
    subs['degenerate'].add_argument('--f', dest='f_name', type=str,
                                    help="Degeneration profile: sech-linear, arctan or mcshane")
    subs['degenerate'].add_argument('--limit-tol', dest='limit_tolerance', type=float,
                                    help="Tolerance of the twist orbit limit")
    subs['variation'].add_argument('--mu', type=str, help="Twisting curve p/q")
    subs['variation'].add_argument('--fd-step', dest='fd_step', type=float,
                                   help="Finite difference twist step")
    return parser

def main(argv: Optional[List[str]]=None) -> int:
    """Main function to run a pyteich command and write its report.

    Returns:
        Exit status: 0 if every check passed, 1 on a numeric failure or a
        report failing the schema, 2 on a usage or domain error.
    """
    parser = build_parser()
    args = vars(parser.parse_args(argv))
    command = args.pop('command')
    ini_file = args.pop('ini_file')
    try:
        if ini_file:
            config = RunConfig.import_ini(ini_file, **args)
        else:
            config = RunConfig.import_default(**args)
        output, report = run_command(command, config)
        write_output(output, config, report)
    except ArithmeticError as err:
        print(f'pyteich {command}: numeric failure: {err}', file=sys.stderr)
        return 1
    except jsonschema.ValidationError as err:
        print(f'pyteich {command}: invalid report: {err.message}', file=sys.stderr)
        return 1
    except ValueError as err:
        print(f'pyteich {command}: {err}', file=sys.stderr)
        return 2
    return 0 if output.passed else 1
