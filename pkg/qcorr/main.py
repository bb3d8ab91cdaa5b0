#!/usr/bin/env python3
"""
qcorr - quantum correlations of noisy three-qubit states
Command-line entry point
"""

import sys
import logging
import argparse
from pathlib import Path
from typing import List, Optional

from qcorr.analysis.channels import NoiseKind
from qcorr.analysis.states import StateKind
from qcorr.config import (
    LoggingConfig,
    OptimizerConfig,
    SweepConfigDefaults,
    ValidationConfig,
)
from qcorr.core.pipeline import FIGURE_SERIES, SweepConfig, figure, sweep
from qcorr.core.validator import validate
from qcorr.exceptions import QCorrError, ValidationError
from qcorr.io.results_writer import (
    render_sweep_csv,
    render_sweep_json,
    render_validation_report,
    write_sweep_csv,
    write_sweep_json,
    write_validation_report,
)

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def setup_logging(level: Optional[str] = None, log_dir: Optional[str] = None) -> logging.Logger:
    """
    Setup application logging

    Console output goes to stderr; a DEBUG file log is added when log_dir is
    given. Calling it again replaces the handlers installed earlier.
    """
    root_logger = logging.getLogger('qcorr')
    root_logger.setLevel(logging.DEBUG)

    for handler in list(root_logger.handlers):
        if getattr(handler, '_qcorr_handler', False):
            root_logger.removeHandler(handler)
            handler.close()

    # Console handler
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(getattr(logging, level or LoggingConfig.DEFAULT_LEVEL))
    console_handler.setFormatter(logging.Formatter(LoggingConfig.CONSOLE_FORMAT))
    console_handler._qcorr_handler = True
    root_logger.addHandler(console_handler)

    # File handler
    if log_dir:
        folder = Path(log_dir)
        folder.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(folder / LoggingConfig.LOG_FILE)
        file_handler.setLevel(getattr(logging, LoggingConfig.FILE_LEVEL))
        file_handler.setFormatter(logging.Formatter(LoggingConfig.FILE_FORMAT))
        file_handler._qcorr_handler = True
        root_logger.addHandler(file_handler)

    return root_logger


def _diagnostic(message: str) -> None:
    print(message, file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with the sweep, figure and validate subcommands"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--log-level', choices=LOG_LEVELS, default=None,
                        help=f"console log level (default {LoggingConfig.DEFAULT_LEVEL})")
    common.add_argument('--log-dir', default=None, help='also write a debug log into this folder')

    optimizer = argparse.ArgumentParser(add_help=False)
    optimizer.add_argument('--restarts', type=int, default=OptimizerConfig.DEFAULT_RESTARTS,
                           help='AMID restarts per point')
    optimizer.add_argument('--seed', type=int, default=OptimizerConfig.DEFAULT_SEED,
                           help='AMID random seed')

    parser = argparse.ArgumentParser(
        prog='qcorr',
        description='MID and AMID of GHZ and W states under Pauli and isotropic noise',
    )
    commands = parser.add_subparsers(dest='command', required=True)

    sweep_parser = commands.add_parser('sweep', parents=[common, optimizer], help='kt sweep of one channel')
    sweep_parser.add_argument('--state', required=True, choices=[s.value for s in StateKind])
    sweep_parser.add_argument('--noise', required=True, choices=[n.value for n in NoiseKind])
    sweep_parser.add_argument('--measure', default='mid', choices=SweepConfigDefaults.MEASURES)
    sweep_parser.add_argument('--kt-min', type=float, default=SweepConfigDefaults.KT_MIN)
    sweep_parser.add_argument('--kt-max', type=float, default=SweepConfigDefaults.KT_MAX)
    sweep_parser.add_argument('--points', type=int, default=SweepConfigDefaults.POINTS)
    sweep_parser.add_argument('--format', default=SweepConfigDefaults.FORMAT, choices=SweepConfigDefaults.FORMATS)
    sweep_parser.add_argument('--out', default='-', help="output file, '-' for stdout")
    sweep_parser.add_argument('--n', type=float, default=SweepConfigDefaults.WN_N, help='W_n weight (state wn)')
    sweep_parser.add_argument('--gamma', type=float, default=SweepConfigDefaults.WN_GAMMA,
                              help='W_n phase of |010> (state wn)')
    sweep_parser.add_argument('--delta', type=float, default=SweepConfigDefaults.WN_DELTA,
                              help='W_n phase of |001> (state wn)')
    sweep_parser.set_defaults(handler=run_sweep)

    figure_parser = commands.add_parser('figure', parents=[common, optimizer], help='write every series of a figure')
    figure_parser.add_argument('--id', type=int, required=True, choices=sorted(FIGURE_SERIES))
    figure_parser.add_argument('--out', required=True, help='output folder')
    figure_parser.add_argument('--points', type=int, default=SweepConfigDefaults.POINTS)
    figure_parser.set_defaults(handler=run_figure)

    validate_parser = commands.add_parser('validate', parents=[common, optimizer], help='run the acceptance suite')
    validate_parser.add_argument('--json', action='store_true', help='print the machine-readable report')
    validate_parser.add_argument('--out', default=None, help='also write the JSON report to this file')
    validate_parser.add_argument('--amid-points', type=int, default=ValidationConfig.AMID_POINTS,
                                 help='grid points for the AMID criteria')
    validate_parser.add_argument('--criteria', type=int, nargs='+', default=None,
                                 help='run only these criterion ids')
    validate_parser.set_defaults(handler=run_validate)

    return parser


def run_sweep(args: argparse.Namespace) -> int:
    to_stdout = args.out == '-'
    config = SweepConfig(
        state=args.state,
        noise=args.noise,
        measure=args.measure,
        kt_min=args.kt_min,
        kt_max=args.kt_max,
        points=args.points,
        restarts=args.restarts,
        seed=args.seed,
        output_format=args.format,
        output_path=None if to_stdout else args.out,
        wn_n=args.n,
        wn_gamma=args.gamma,
        wn_delta=args.delta,
    )
    points = sweep(config)

    if to_stdout:
        if config.output_format == 'csv':
            sys.stdout.write(render_sweep_csv(points))
        else:
            sys.stdout.write(render_sweep_json(points, config.to_dict()))
    elif config.output_format == 'csv':
        write_sweep_csv(points, args.out)
    else:
        write_sweep_json(points, args.out, config.to_dict())

    return EXIT_OK


def run_figure(args: argparse.Namespace) -> int:
    figure(
        args.id,
        args.out,
        points=args.points,
        restarts=args.restarts,
        seed=args.seed,
        log_callback=_diagnostic,
    )
    return EXIT_OK


def run_validate(args: argparse.Namespace) -> int:
    report = validate(
        amid_points=args.amid_points,
        restarts=args.restarts,
        seed=args.seed,
        criteria=args.criteria,
        log_callback=_diagnostic,
    )
    if args.json:
        sys.stdout.write(render_validation_report(report))
    if args.out:
        write_validation_report(report, args.out)
    return EXIT_OK if report['passed'] else EXIT_FAILURE


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run the command and return the exit status"""
    args = build_parser().parse_args(argv)
    logger = setup_logging(args.log_level, args.log_dir)

    logger.info("=" * 50)
    logger.info(f"qcorr {args.command} started")
    logger.info("=" * 50)

    try:
        return args.handler(args)
    except ValidationError as e:
        _diagnostic(f"error: {e}")
        return EXIT_USAGE
    except QCorrError as e:
        _diagnostic(f"error: {e}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
