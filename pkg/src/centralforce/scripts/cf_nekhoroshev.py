#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""

==============
cf_nekhoroshev
==============

Drift of |L| and H along the perturbed flow H + eps P for a sweep of eps,
and optionally along the fast-slow system

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

Synopsis::

   cf_nekhoroshev --config <JSON file> [options]

Options::

   --out DIR, output directory
   --jobs N, number of worker processes (one per eps)
   --seed N, random seed of the initial phase and of user_grid centres
   -p, show a progress display
   -v, more logging
   -h, access program help via the command line

The initial datum is the inner turning point of the torus at the configured
I2 (default: middle of the chart's momentum interval) and normalized energy,
rotated about the z axis by a phase drawn from the seed. Writes drift.csv
(eps, t, L_abs, H) and nekhoroshev.json.
"""

import logging
import math
import sys
from argparse import ArgumentParser

import numpy as np

from centralforce.actions import action_G, initial_state
from centralforce.dynamics import eps_scaling_sweep, integrate_fast_slow
from centralforce.errors import ConfigurationError
from centralforce.scripts import common
from centralforce.writers import write_csv, write_json

logger = logging.getLogger("centralforce.scripts.cf_nekhoroshev")

DRIFT_COLUMNS = ("eps", "t", "L_abs", "H")


def rotate_z(z, phase):
    """Rotate the position and momentum of a 6-vector about the z axis."""
    c, s = math.cos(phase), math.sin(phase)
    rot = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    return np.concatenate([rot @ z[:3], rot @ z[3:6]])


def main(args):
    """Main program function: run the eps sweep"""

    config = common.load(args)
    dyn = config.dynamics
    pot, intervals, v_inf, charts = common.charts(config, progress=args.progress)
    if not 0 <= dyn.chart < len(charts):
        raise ConfigurationError("dynamics.chart = %d but the potential has %d charts" % (dyn.chart, len(charts)),
                                 "dynamics.chart")
    chart = charts[dyn.chart]
    I2 = dyn.I2 if dyn.I2 is not None else chart.interval.mid
    E = chart.denormalize(dyn.energy_fraction, I2)
    I1 = action_G(chart, E, I2)

    rng = np.random.default_rng(config.seed)
    phase = rng.uniform(0.0, 2.0 * math.pi)
    x0p0 = rotate_z(initial_state(chart, I1, I2, dyn.inclination), phase)
    pert = config.perturbation.build(seed=config.seed)
    logger.info("Initial datum %s (I1 = %g, I2 = %g, E = %g), perturbation %s", x0p0, I1, I2, E, pert)

    report = eps_scaling_sweep(pot, pert, x0p0, dyn.eps, T=dyn.T, dt=dyn.dt, shell=dyn.shell, jobs=config.jobs)
    rows = [row for rec in report.records for row in rec.rows()]

    summary = {
        "potential": pot.name,
        "perturbation": {"kind": pert.kind, "params": pert.params},
        "seed": config.seed,
        "chart": chart.index,
        "I1": I1,
        "I2": I2,
        "E": E,
        "x0p0": x0p0,
        "sweep": report,
        "records": report.records,
    }

    if dyn.fast_slow is not None:
        fs = dyn.fast_slow
        coupling = fs.coupling()
        slow = np.zeros(2 * coupling.n)
        slow[0] = 1.0
        z0 = np.concatenate([x0p0, slow])
        summary["fast_slow"] = [integrate_fast_slow(pot, coupling, eps, z0, fs.T) for eps in fs.eps]

    csv_path, units_path = write_csv(common.out_path(config, "drift.csv"), DRIFT_COLUMNS, rows)
    json_path = write_json(common.out_path(config, "nekhoroshev.json"), summary)
    return [csv_path, units_path, json_path]


def add_arguments(parser):
    common.add_common_arguments(parser)


def execute():

    # Setup the parser
    parser = ArgumentParser(
        prog="cf_nekhoroshev",
        description="Drift of the angular momentum and energy under perturbation",
    )
    add_arguments(parser)

    # Parse the command line automatically
    args = parser.parse_args()
    common.configure_logging(args.verbose)
    sys.exit(common.run(main, args))
