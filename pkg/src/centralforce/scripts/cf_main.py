#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""

============
centralforce
============

Run one analysis of a central force Hamiltonian

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

Synopsis::

   centralforce <subcommand> --config <JSON file> [options]

Subcommands::

   profile, critical point branches and momentum intervals
   actions, action-angle grids and logarithmic asymptotics
   arnold, quasiconvexity map
   birkhoff, frequency-ratio expansion at circular orbits
   bertrand, closed-orbit test
   nekhoroshev, drift under perturbation

Options::

   --config PATH, JSON run configuration
   --out DIR, output directory
   --jobs N, number of worker processes
   --seed N, random seed
   -p, show a progress display
   -v, more logging
   -h, access program help via the command line
"""

import sys
from argparse import ArgumentParser

from centralforce.scripts import (
    cf_actions,
    cf_arnold,
    cf_bertrand,
    cf_birkhoff,
    cf_nekhoroshev,
    cf_profile,
    common,
)

SUBCOMMANDS = {
    "profile": (cf_profile, "critical point branches and momentum intervals"),
    "actions": (cf_actions, "action-angle grids and logarithmic asymptotics"),
    "arnold": (cf_arnold, "quasiconvexity map"),
    "birkhoff": (cf_birkhoff, "frequency-ratio expansion at circular orbits"),
    "bertrand": (cf_bertrand, "closed-orbit test"),
    "nekhoroshev": (cf_nekhoroshev, "drift under perturbation"),
}


def build_parser():
    parser = ArgumentParser(prog="centralforce", description="Analyses of central force Hamiltonians")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (module, text) in SUBCOMMANDS.items():
        module.add_arguments(sub.add_parser(name, help=text))
    return parser


def main(argv=None):
    """Parse argv, run the subcommand and return its exit code"""
    args = build_parser().parse_args(argv)
    return common.run(SUBCOMMANDS[args.command][0].main, args)


def execute():
    args = build_parser().parse_args()
    common.configure_logging(args.verbose)
    sys.exit(common.run(SUBCOMMANDS[args.command][0].main, args))
