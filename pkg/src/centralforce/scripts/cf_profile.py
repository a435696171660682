#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""

==========
cf_profile
==========

Critical point branches of the effective potential and the decomposition of
the angular momentum range into admissible intervals

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

Synopsis::

   cf_profile --config <JSON file> [options]

Options::

   --out DIR, output directory
   --jobs N, number of worker processes
   --seed N, random seed
   -p, show a progress display
   -v, more logging
   -h, access program help via the command line

Writes branches.csv (one row per sample and branch) and profile.json (the
hypothesis report, V^inf, the momentum range, the intervals and their charts).
"""

import logging
import sys
from argparse import ArgumentParser

import numpy as np

from centralforce.effective import branch_rows, momentum_range
from centralforce.errors import HypothesisViolation
from centralforce.potentials import check_hypotheses
from centralforce.scripts import common
from centralforce.writers import write_csv, write_json

logger = logging.getLogger("centralforce.scripts.cf_profile")

BRANCH_COLUMNS = ("p_theta", "ell", "branch", "r0", "kind", "level", "curvature")


def main(args):
    """Main program function: emit the branch table and the interval report"""

    config = common.load(args)
    pot = config.potential.build()
    report = check_hypotheses(pot)
    logger.info("Hypotheses:\n%s", report)

    summary = {"potential": str(pot.name), "params": pot.params, "range": [pot.r_lo, pot.r_hi], "hypotheses": report}
    if not report.passed:
        # the report is still written, the exit code is an analysis failure
        write_json(common.out_path(config, "profile.json"), summary)
        raise HypothesisViolation("Potential %s fails the hypotheses (H1=%s, H2=%s)" % (pot.name, report.h1, report.h2))

    pot, intervals, v_inf, charts = common.charts(config, progress=args.progress)
    L_m, L_M = momentum_range(pot, config.grid.cap)

    # interior samples of the momentum range
    n = config.grid.p_theta_points
    p_theta = L_m + (np.arange(n) + 0.5) / n * (L_M - L_m)
    csv_path, units_path = write_csv(common.out_path(config, "branches.csv"), BRANCH_COLUMNS, branch_rows(pot, p_theta))

    summary.update(
        {
            "v_inf": v_inf,
            "momentum_range": [L_m, L_M],
            "intervals": [
                {
                    "lo": iv.lo,
                    "hi": iv.hi,
                    "kinds": list(iv.kinds),
                    "level_order": list(iv.level_order),
                    "levels_distinct": iv.levels_distinct,
                }
                for iv in intervals
            ],
            "charts": [
                {
                    "index": c.index,
                    "interval": [c.interval.lo, c.interval.hi],
                    "bottom_kind": c.bottom_kind,
                    "top_kind": c.top_kind,
                    "left_wall": c.left_wall,
                    "right_wall": c.right_wall,
                }
                for c in charts
            ],
        }
    )
    json_path = write_json(common.out_path(config, "profile.json"), summary)
    return [csv_path, units_path, json_path]


def add_arguments(parser):
    common.add_common_arguments(parser)


def execute():

    # Setup the parser
    parser = ArgumentParser(
        prog="cf_profile",
        description="Critical point branches and momentum intervals of a central potential",
    )
    add_arguments(parser)

    # Parse the command line automatically
    args = parser.parse_args()
    common.configure_logging(args.verbose)
    sys.exit(common.run(main, args))
