#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""
Helpers shared by the centralforce programs: the common options, logging
setup, configuration loading and the mapping of errors to exit codes.

Exit codes::

   0, success
   1, analysis failure (hypothesis violation, failed fit, ...)
   2, configuration error or malformed JSON
"""

import logging
import os
import sys

import centralforce
from centralforce.actions import build_all_charts
from centralforce.effective import decompose_momentum_intervals, v_infinity

logger = logging.getLogger("centralforce.scripts")

EXIT_OK = 0
EXIT_ANALYSIS = 1
EXIT_CONFIG = 2


def add_common_arguments(parser):
    """Options understood by every program."""
    parser.add_argument("--config", dest="config", required=True, help="path of the JSON run configuration")
    parser.add_argument("--out", dest="out", default=None, help="output directory (overrides the config)")
    parser.add_argument("--jobs", dest="jobs", type=int, default=None, help="number of worker processes")
    parser.add_argument("--seed", dest="seed", type=int, default=None, help="random seed (overrides the config)")
    parser.add_argument(
        "-p",
        dest="progress",
        default=False,
        action="store_true",
        help="show a progress display bar as processing occurs",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        dest="verbose",
        default=0,
        action="count",
        help="more logging (-v info, -vv debug)",
    )


def configure_logging(verbose):
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def load(args):
    """Run configuration with the command line overrides applied; creates the
    output directory."""
    config = centralforce.load_config(args.config).with_overrides(out=args.out, jobs=args.jobs, seed=args.seed)
    os.makedirs(config.out, exist_ok=True)
    return config


def out_path(config, name):
    return os.path.join(config.out, name)


def charts(config, progress=False):
    """(potential, intervals, V^inf, charts) of the configured potential."""
    pot = config.potential.build()
    intervals = decompose_momentum_intervals(
        pot,
        n_samples=config.grid.n_samples,
        cap=config.grid.cap,
        cut_fraction=config.tolerances.cut_fraction,
        progress=progress,
        tol_nondeg=config.tolerances.tol_nondeg,
        tol_grad=config.tolerances.tol_grad,
    )
    v_inf = v_infinity(pot)
    built = build_all_charts(pot, intervals, v_inf, config.grid.energy_span, quad_rtol=config.tolerances.quad_tol)
    return pot, intervals, v_inf, built


def run(main, args):
    """Call main(args) and map exceptions to the exit code."""
    try:
        written = main(args)
    except centralforce.ConfigurationError as err:
        logger.debug("configuration error", exc_info=True)
        print("configuration error: %s" % err, file=sys.stderr)
        return EXIT_CONFIG
    except centralforce.CentralForceError as err:
        logger.debug("analysis failed", exc_info=True)
        print("analysis failed: %s" % err, file=sys.stderr)
        return EXIT_ANALYSIS
    for path in written or []:
        print(path)
    return EXIT_OK
