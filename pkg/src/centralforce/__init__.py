#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""
CENTRALFORCE: Action-angle analysis of central force Hamiltonians

Builds action-angle charts of H = |p|^2/2 + V(|x|), tests the quasiconvexity
of the Hamiltonian in actions through the Arnold determinant, evaluates the
frequency-ratio expansion at circular orbits and measures the drift of |L| and
H under small perturbations.

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

"""

from .errors import (AnalysisError, AsymptoticsMismatch, CentralForceError, ChartError, ConfigurationError,
                     DomainError, HypothesisViolation, SingularPointError, TranscriptionError)
from .potentials import Potential, check_hypotheses, g_derivatives, g_of, make_builtin
from .effective import (CriticalPoint, MomentumInterval, decompose_momentum_intervals, find_critical_points,
                        momentum_range, v_infinity, veff)
from .actions import (ActionChart, ActionPoint, action_G, action_grid, apsidal_angle, build_all_charts,
                      build_charts, fit_log_asymptotics, frequencies, initial_state, invert_h, turning_points)
from .quasiconvexity import (arnold_determinant, arnold_from_actions_form, bertrand_nonconstancy,
                             max_bottom_divergence, quasiconvexity_map)
from .birkhoff import (CircularOrbitData, circular_orbit_data, find_degenerate_exponents, numeric_expansion_check,
                       nu_coefficients, nu_coefficients_horner, rhs_G1_G2, transcription_fuzz)
from .dynamics import (DriftRecord, FastSlowCoupling, Perturbation, eps_scaling_sweep, integrate_fast_slow,
                       integrate_perturbed, make_perturbation, reverse_check)
from .config import RunConfig, load_config, parse_config
from .util import potential_kinds, perturbation_kinds, units
from importlib.metadata import version, PackageNotFoundError

try:
   __version__ = version("centralforce")
except PackageNotFoundError:
   pass
