#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""

===========
cf_bertrand
===========

Tell whether all bounded orbits near the stable circular orbits are closed,
from the spread of the frequency ratio over an energy sweep

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

Synopsis::

   cf_bertrand --config <JSON file> [options]

Options::

   --out DIR, output directory
   --jobs N, number of worker processes
   --seed N, random seed
   -p, show a progress display
   -v, more logging
   -h, access program help via the command line

Writes bertrand.json; the overall verdict is "degenerate" only when every
chart bottomed by a minimum is.
"""

import sys
from argparse import ArgumentParser

from centralforce.errors import AnalysisError
from centralforce.quasiconvexity import bertrand_nonconstancy
from centralforce.scripts import common
from centralforce.util import MINIMUM
from centralforce.writers import write_json


def main(args):
    """Main program function: run the non-constancy test on every well"""

    config = common.load(args)
    pot, intervals, v_inf, charts = common.charts(config, progress=args.progress)
    minima = [c for c in charts if c.bottom_kind == MINIMUM]
    if not minima:
        raise AnalysisError("Potential %s has no chart bottomed by a minimum" % pot.name)

    verdicts = []
    for chart in minima:
        v = bertrand_nonconstancy(
            chart,
            chart.interval.mid,
            n=config.grid.bertrand_points,
            energy_fractions=config.grid.energy_fractions,
            threshold=config.tolerances.bertrand_spread,
        )
        verdicts.append({"chart": chart.index, "test": v})

    overall = "degenerate" if all(item["test"].degenerate for item in verdicts) else "non-degenerate"
    json_path = write_json(
        common.out_path(config, "bertrand.json"),
        {"potential": pot.name, "verdict": overall, "charts": verdicts},
    )
    return [json_path]


def add_arguments(parser):
    common.add_common_arguments(parser)


def execute():

    # Setup the parser
    parser = ArgumentParser(
        prog="cf_bertrand",
        description="Closed-orbit (Bertrand) test of a central potential",
    )
    add_arguments(parser)

    # Parse the command line automatically
    args = parser.parse_args()
    common.configure_logging(args.verbose)
    sys.exit(common.run(main, args))
