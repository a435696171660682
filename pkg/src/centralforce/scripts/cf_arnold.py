#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""

=========
cf_arnold
=========

Arnold determinant of the Hamiltonian in actions on a grid of every chart,
its zero set and its divergence above the maxima

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

Synopsis::

   cf_arnold --config <JSON file> [options]

Options::

   --out DIR, output directory
   --jobs N, number of worker processes for the grid rows
   --seed N, random seed
   -p, show a progress display
   -v, more logging
   -h, access program help via the command line

Writes arnold.csv (one row per grid cell) and arnold.json (per chart: the
fraction of cells with |D| below tolerance, degraded cells, the zero set and,
for charts bottomed by a maximum, the divergence report).
"""

import sys
from argparse import ArgumentParser

from centralforce.quasiconvexity import max_bottom_divergence, quasiconvexity_map
from centralforce.scripts import common
from centralforce.util import MAXIMUM
from centralforce.writers import write_csv, write_json

ARNOLD_COLUMNS = ("chart", "I1", "I2", "E", "D", "D_normalized", "quasiconvex", "burgers_residual", "accurate")


def main(args):
    """Main program function: map the Arnold determinant"""

    config = common.load(args)
    grid = config.grid
    pot, intervals, v_inf, charts = common.charts(config, progress=args.progress)

    rows = []
    summary = []
    for chart in charts:
        amap = quasiconvexity_map(
            chart,
            grid.n1,
            grid.n2,
            grid.momentum_fractions,
            grid.energy_fractions,
            tol_D=config.tolerances.tol_D,
            jobs=config.jobs,
            progress=args.progress,
        )
        rows.extend(amap.rows(chart.index))
        entry = {"chart": chart.index, "bottom_kind": chart.bottom_kind, "map": amap}
        if chart.bottom_kind == MAXIMUM:
            entry["divergence"] = max_bottom_divergence(chart, chart.interval.mid)
        summary.append(entry)

    csv_path, units_path = write_csv(common.out_path(config, "arnold.csv"), ARNOLD_COLUMNS, rows)
    json_path = write_json(
        common.out_path(config, "arnold.json"),
        {"potential": pot.name, "tol_D": config.tolerances.tol_D, "charts": summary},
    )
    return [csv_path, units_path, json_path]


def add_arguments(parser):
    common.add_common_arguments(parser)


def execute():

    # Setup the parser
    parser = ArgumentParser(
        prog="cf_arnold",
        description="Quasiconvexity map of a central force Hamiltonian",
    )
    add_arguments(parser)

    # Parse the command line automatically
    args = parser.parse_args()
    common.configure_logging(args.verbose)
    sys.exit(common.run(main, args))
