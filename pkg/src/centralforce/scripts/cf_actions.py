#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""

==========
cf_actions
==========

Actions and frequencies on a grid of every action chart, and the logarithmic
asymptotics of I1 above the maxima

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

Synopsis::

   cf_actions --config <JSON file> [options]

Options::

   --out DIR, output directory
   --jobs N, number of worker processes
   --seed N, random seed
   -p, show a progress display
   -v, more logging
   -h, access program help via the command line

Writes actions.csv (chart, I2, E, I1, omega1, omega2, nu, accurate) and
asymptotics.json (one fit per chart bottomed by a maximum).
"""

import logging
import sys
from argparse import ArgumentParser

from centralforce.actions import action_grid, fit_log_asymptotics
from centralforce.errors import AsymptoticsMismatch
from centralforce.scripts import common
from centralforce.util import MAXIMUM
from centralforce.writers import write_csv, write_json

logger = logging.getLogger("centralforce.scripts.cf_actions")

ACTION_COLUMNS = ("chart", "I2", "E", "I1", "omega1", "omega2", "nu", "accurate")


def main(args):
    """Main program function: tabulate the charts and fit the asymptotics"""

    config = common.load(args)
    grid = config.grid
    pot, intervals, v_inf, charts = common.charts(config, progress=args.progress)

    rows = []
    fits = []
    for chart in charts:
        logger.info("Chart:\n%s", chart)
        for row in action_grid(chart, grid.n1, grid.n2, grid.momentum_fractions, grid.energy_fractions, grid.method):
            for pt in row:
                rows.append((chart.index, pt.I2, pt.E, pt.I1, pt.omega1, pt.omega2, pt.nu, pt.accurate))

        if chart.bottom_kind != MAXIMUM:
            continue
        I2 = chart.interval.mid
        try:
            fit = fit_log_asymptotics(chart, I2, residual_tol=config.tolerances.log_residual)
            fits.append({"chart": chart.index, "fit": fit, "lambda_error": fit.lambda_error})
        except AsymptoticsMismatch as err:
            # recorded, the remaining charts are still fitted
            logger.warning("Chart %d: %s", chart.index, err)
            fits.append({"chart": chart.index, "error": str(err)})

    csv_path, units_path = write_csv(common.out_path(config, "actions.csv"), ACTION_COLUMNS, rows)
    json_path = write_json(
        common.out_path(config, "asymptotics.json"),
        {"potential": pot.name, "charts": len(charts), "asymptotics": fits},
    )
    return [csv_path, units_path, json_path]


def add_arguments(parser):
    common.add_common_arguments(parser)


def execute():

    # Setup the parser
    parser = ArgumentParser(
        prog="cf_actions",
        description="Action-angle charts, frequencies and logarithmic asymptotics",
    )
    add_arguments(parser)

    # Parse the command line automatically
    args = parser.parse_args()
    common.configure_logging(args.verbose)
    sys.exit(common.run(main, args))
