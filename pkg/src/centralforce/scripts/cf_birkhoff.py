#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""

===========
cf_birkhoff
===========

Frequency-ratio expansion at circular orbits: closed-form coefficients, the
residuals of the degeneracy equations, a fit against the action integrals
and the scan for the homogeneous exponents with all orbits closed

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

Synopsis::

   cf_birkhoff --config <JSON file> [options]

Options::

   --out DIR, output directory
   --jobs N, number of worker processes
   --seed N, random seed of the transcription fuzz
   -p, show a progress display
   -v, more logging
   -h, access program help via the command line

Writes residuals.csv (one row per radius) and birkhoff.json.
"""

import sys
from argparse import ArgumentParser

from centralforce.birkhoff import find_degenerate_exponents, numeric_expansion_check, rhs_G1_G2, transcription_fuzz
from centralforce.scripts import common
from centralforce.util import MINIMUM
from centralforce.writers import write_csv, write_json

RESIDUAL_COLUMNS = ("r0", "nu0", "nu1", "nu2", "G1", "G2", "res1", "res2", "accurate")


def main(args):
    """Main program function: evaluate the expansion and the residuals"""

    config = common.load(args)
    section = config.birkhoff
    pot, intervals, v_inf, charts = common.charts(config, progress=args.progress)
    minima = [c for c in charts if c.bottom_kind == MINIMUM]

    # radii of stable circular orbits, from the config or at the chart midpoints
    if section.radii is not None:
        radii = list(section.radii)
    else:
        radii = [c.bottom_point(c.interval.mid).r0 for c in minima]

    terms = [rhs_G1_G2(pot, r0, step=config.tolerances.fd_step) for r0 in radii]
    rows = [(t.r0, t.nu0, t.nu1, t.nu2, t.G1, t.G2, t.res1, t.res2, t.accurate) for t in terms]

    checks = []
    for chart in minima:
        checks.append({"chart": chart.index, "check": numeric_expansion_check(chart, chart.interval.mid)})

    fuzz = transcription_fuzz(n=section.fuzz, seed=config.seed)
    exponents = find_degenerate_exponents(section.scan, section.step)

    csv_path, units_path = write_csv(common.out_path(config, "residuals.csv"), RESIDUAL_COLUMNS, rows)
    json_path = write_json(
        common.out_path(config, "birkhoff.json"),
        {
            "potential": pot.name,
            "residuals": terms,
            "expansion_checks": checks,
            "transcription_discrepancy": fuzz,
            "exponents": exponents,
        },
    )
    return [csv_path, units_path, json_path]


def add_arguments(parser):
    common.add_common_arguments(parser)


def execute():

    # Setup the parser
    parser = ArgumentParser(
        prog="cf_birkhoff",
        description="Frequency-ratio expansion at circular orbits",
    )
    add_arguments(parser)

    # Parse the command line automatically
    args = parser.parse_args()
    common.configure_logging(args.verbose)
    sys.exit(common.run(main, args))
