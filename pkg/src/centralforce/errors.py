#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""
CENTRALFORCE: Action-angle analysis of central force Hamiltonians

errors file. Contains the exception hierarchy raised by the library. Flagged
but usable results (degraded accuracy, inconclusive fits, escapes) are
reported on result records instead.

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

"""

# ---------------------------------------------------------------------------
class CentralForceError(Exception):
   """Base class of every error raised by centralforce."""


# ---------------------------------------------------------------------------
class ConfigurationError(CentralForceError):
   """A parameter or configuration key is missing or invalid."""

   def __init__(self, message, parameter=None):
      """ class constructor """
      super().__init__(message)
      self.parameter = parameter


# ---------------------------------------------------------------------------
class DomainError(CentralForceError, ValueError):
   """An argument lies outside the admissible range of an operation."""


# ---------------------------------------------------------------------------
class SingularPointError(CentralForceError):
   """A quantity is singular at the given radius (e.g. V'(r) = 0)."""

   def __init__(self, message, r):
      """ class constructor """
      super().__init__(message)
      self.r = r


# ---------------------------------------------------------------------------
class HypothesisViolation(CentralForceError):
   """The potential does not satisfy the standing hypotheses."""


# ---------------------------------------------------------------------------
class AnalysisError(CentralForceError):
   """An analysis produced no usable result."""


# ---------------------------------------------------------------------------
class ChartError(CentralForceError):
   """An action chart is inconsistent (turning points, negative integrand)."""


# ---------------------------------------------------------------------------
class AsymptoticsMismatch(AnalysisError):
   """A logarithmic asymptotic fit does not describe the sampled actions."""


# ---------------------------------------------------------------------------
class TranscriptionError(CentralForceError):
   """Two evaluations of the same closed-form coefficient disagree."""
