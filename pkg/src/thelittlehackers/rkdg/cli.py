# MIT License
#
# Copyright (C) 2026 The Little Hackers.  All rights reserved.
#
# Permission is hereby granted, free of charge, to any person obtaining
# a copy of this software and associated documentation files (the
# "Software"), to deal in the Software without restriction, including
# without limitation the rights to use, copy, modify, merge, publish,
# distribute, sublicense, and/or sell copies of the Software, and to
# permit persons to whom the Software is furnished to do so, subject to
# the following conditions:
#
# The above copyright notice and this permission notice shall be
# included in all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND,
# EXPRESS OR IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF
# MERCHANTABILITY, FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT.
# IN NO EVENT SHALL THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY
# CLAIM, DAMAGES OR OTHER LIABILITY, WHETHER IN AN ACTION OF CONTRACT,
# TORT OR OTHERWISE, ARISING FROM, OUT OF OR IN CONNECTION WITH THE
# SOFTWARE OR THE USE OR OTHER DEALINGS IN THE SOFTWARE.

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any
from typing import Sequence

from pydantic import ValidationError

from thelittlehackers.rkdg.constant.exit_code import ExitCode
from thelittlehackers.rkdg.constant.logging import LOGGING_LEVEL_LITERAL_STRINGS
from thelittlehackers.rkdg.constant.logging import LoggingLevelLiteral
from thelittlehackers.rkdg.constant.time_step import CflMode
from thelittlehackers.rkdg.exception import BlowUpError
from thelittlehackers.rkdg.exception import BoundaryModelError
from thelittlehackers.rkdg.exception import ConfigError
from thelittlehackers.rkdg.exception import FluxDomainError
from thelittlehackers.rkdg.exception import InvalidInputError
from thelittlehackers.rkdg.exception import OracleInvalidError
from thelittlehackers.rkdg.experiments import build_config
from thelittlehackers.rkdg.experiments import convergence_study
from thelittlehackers.rkdg.experiments import resolve_problem
from thelittlehackers.rkdg.experiments import run_simulation
from thelittlehackers.rkdg.model.problem import ProblemSpec
from thelittlehackers.rkdg.model.run_config import RunConfig
from thelittlehackers.rkdg.report import compare_summaries
from thelittlehackers.rkdg.report import emit_reports
from thelittlehackers.rkdg.report import format_comparison
from thelittlehackers.rkdg.report import format_summary
from thelittlehackers.rkdg.report import load_summary
from thelittlehackers.rkdg.report import summarize
from thelittlehackers.rkdg.utils.config_utils import load_config_file
from thelittlehackers.rkdg.utils.csv_utils import write_csv
from thelittlehackers.rkdg.utils.logging_utils import set_up_logger


DEFAULT_PROBLEM_NAME = 'example_1'
DEFAULT_OUTPUT_DIRECTORY = 'output'
CONVERGENCE_FILE_NAME = 'convergence.csv'

# Command-line options mapped to the names of the run settings they
# override.
FLAG_SETTINGS = {
    'p': 'p',
    'k': 'k',
    'h': 'h',
    'tau': 'tau_fixed',
    'gamma': 'gamma',
    'mu': 'mu',
    'tfinal': 'T_final',
    'problem': 'problem',
    'out': 'out',
    'cfl_mode': 'cfl_mode',
    'output_times': 'output_times',
    'kappa': 'kappa',
    'ceiling': 'indicator_ceiling',
    'max_workers': 'max_workers',
}


def parse_float_list(value: str) -> tuple[float, ...]:
    try:
        return tuple(float(item) for item in value.split(',') if item.strip())
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"\"{value}\" is not a comma-separated list of numbers") from error


def add_run_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--config', help="path of a configuration file of \"key = value\" entries")
    parser.add_argument('--problem', help=f"name of the problem (default: {DEFAULT_PROBLEM_NAME})")
    parser.add_argument('--p', type=int, help="polynomial degree")
    parser.add_argument('--k', type=int, help="order of the TVD Runge-Kutta scheme")
    parser.add_argument('--h', type=float, help="cell width")
    parser.add_argument('--tau', type=float, help="fixed time step")
    parser.add_argument('--gamma', type=float, help="constant of the strengthened CFL condition")
    parser.add_argument('--mu', type=float, help="exponent μ of the scaled jumps")
    parser.add_argument('--tfinal', type=float, help="final time")
    parser.add_argument('--cfl-mode', dest='cfl_mode', choices=[mode.value for mode in CflMode])
    parser.add_argument('--output-times', dest='output_times', type=parse_float_list,
                        help="comma-separated snapshot times")
    parser.add_argument('--kappa', type=float, help="safety factor of the N^{p+1} surrogate")
    parser.add_argument('--ceiling', type=float, help="untrusted-indicator threshold")
    parser.add_argument('--out', help=f"output directory (default: {DEFAULT_OUTPUT_DIRECTORY}/<problem>)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='rkdg',
        description="RKDG solver of 1D scalar conservation laws with smoothness indicators "
                    "and a posteriori L1 error estimates"
    )
    parser.add_argument(
        '--logging-level',
        dest='logging_level',
        choices=LOGGING_LEVEL_LITERAL_STRINGS,
        default=LoggingLevelLiteral.INFO.value,
        help="logging threshold (default: INFO)"
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    run_parser = subparsers.add_parser('run', help="run a problem and write its reports")
    add_run_arguments(run_parser)
    run_parser.set_defaults(handler=run_command)

    converge_parser = subparsers.add_parser('converge', help="run a mesh-refinement study")
    add_run_arguments(converge_parser)
    converge_parser.add_argument('--h-list', dest='h_list', type=parse_float_list, required=True,
                                 help="comma-separated cell widths")
    converge_parser.add_argument('--max-workers', dest='max_workers', type=int,
                                 help="number of cases run concurrently")
    converge_parser.set_defaults(handler=converge_command)

    report_parser = subparsers.add_parser('report', help="print the summary of a written run")
    report_parser.add_argument('run_dir', help="output directory of a run")
    report_parser.add_argument('--compare', help="output directory of a run to compare with")
    report_parser.add_argument('--t', type=float, help="snapshot time of the comparison")
    report_parser.set_defaults(handler=report_command)

    return parser


def collect_settings(arguments: argparse.Namespace) -> tuple[ProblemSpec, RunConfig, Path]:
    """
    Merge the reference settings of the problem, the configuration file
    and the command-line options, in increasing order of precedence.


    :return: A tuple ``(problem, config, output_directory)``.


    :raise ConfigError: If the settings are invalid.
    """
    settings: dict[str, Any] = load_config_file(arguments.config) if arguments.config else {}
    for flag, setting in FLAG_SETTINGS.items():
        value = getattr(arguments, flag, None)
        if value is not None:
            settings[setting] = value

    problem = resolve_problem(str(settings.pop('problem', DEFAULT_PROBLEM_NAME)))
    out = Path(str(settings.pop('out', None) or Path(DEFAULT_OUTPUT_DIRECTORY) / problem.name))

    for key in ('output_times', 'tau_schedule'):
        if isinstance(settings.get(key), list):
            settings[key] = tuple(tuple(item) if isinstance(item, list) else item for item in settings[key])

    return problem, build_config(problem, **settings), out


def run_command(arguments: argparse.Namespace) -> int:
    problem, cfg, out = collect_settings(arguments)
    artifact = run_simulation(problem, cfg)
    emit_reports(artifact, out)
    print(format_summary(summarize(artifact)))
    return ExitCode.BLOW_UP if artifact.aborted else ExitCode.SUCCESS


def converge_command(arguments: argparse.Namespace) -> int:
    problem, cfg, out = collect_settings(arguments)
    table = convergence_study(problem, cfg, arguments.h_list)

    out.mkdir(parents=True, exist_ok=True)
    write_csv(
        out / CONVERGENCE_FILE_NAME,
        ['h', 'l1_error', 'estimate', 'effectivity', 'steps'],
        ([row.h, row.l1_error, row.estimate, row.effectivity, row.step_count] for row in table.rows)
    )

    print(f"{'h':>10}  {'L1 error':>12}  {'estimate':>12}  {'effectivity':>11}")
    for row in table.rows:
        print(f"{row.h:>10g}  {row.l1_error:>12.4e}  {row.estimate:>12.4e}  {row.effectivity:>11.3g}")
    if len(table.rows) > 1:
        print(f"fitted order: {table.fitted_order:.3f}")
    return ExitCode.SUCCESS


def report_command(arguments: argparse.Namespace) -> int:
    summary = load_summary(arguments.run_dir)
    print(format_summary(summary))

    if arguments.compare:
        other = load_summary(arguments.compare)
        t = arguments.t
        if t is None:
            if not summary.snapshots:
                raise InvalidInputError(f"The run {arguments.run_dir} has no snapshot")
            t = summary.snapshots[-1].t
        print(format_comparison(compare_summaries(summary, other, t)))

    return ExitCode.SUCCESS


def main(argv: Sequence[str] | None = None) -> int:
    """
    Run the ``rkdg`` command-line interface.


    :param argv: The command-line arguments; ``sys.argv[1:]`` when
        ``None``.


    :return: The exit code: ``0`` on success, ``2`` on a configuration
        error, ``3`` when the run blows up, ``4`` when the exact-solution
        oracle is invalid.
    """
    arguments = build_parser().parse_args(argv)
    set_up_logger(logging_level=LoggingLevelLiteral(arguments.logging_level))

    try:
        return int(arguments.handler(arguments))
    except OracleInvalidError as error:
        logging.error(str(error))
        return ExitCode.ORACLE_INVALID
    except (BlowUpError, FluxDomainError) as error:
        logging.error(str(error))
        return ExitCode.BLOW_UP
    except (ConfigError, InvalidInputError, BoundaryModelError, ValidationError) as error:
        logging.error(str(error))
        return ExitCode.CONFIG_ERROR


if __name__ == '__main__':
    sys.exit(main())
