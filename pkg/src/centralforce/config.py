#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""
CENTRALFORCE: Action-angle analysis of central force Hamiltonians

config file. Contains the JSON run configuration. Every section is a frozen
dataclass; unknown keys and missing required keys are rejected with the
dotted path of the offending key.

Example::

   {
      "potential": {"kind": "lennard_jones", "params": {"epsilon": 1.0}},
      "grid": {"n1": 8, "n2": 8},
      "perturbation": {"kind": "fixed_dipole"},
      "dynamics": {"eps": [1e-2, 1e-3, 1e-4], "T": 200.0},
      "seed": 1
   }

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

"""
import json
import logging
import math
from dataclasses import MISSING, dataclass, field, fields, replace
from typing import Optional

from .errors import ConfigurationError
from .dynamics import FastSlowCoupling, make_perturbation
from .potentials import make_builtin

logger = logging.getLogger(__name__)

ANALYSES = ('profile', 'actions', 'arnold', 'birkhoff', 'bertrand', 'nekhoroshev')


# ---------------------------------------------------------------------------
def _section(cls):
   return field(default_factory=cls, metadata={'section': cls})


def _check(condition, message, path):
   if not condition:
      raise ConfigurationError('%s: %s' % (path, message), path)


def _number(value, path, positive=False):
   _check(isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value),
          'expected a finite number, got %r' % (value,), path)
   if positive:
      _check(value > 0, 'expected a positive number, got %r' % (value,), path)
   return float(value)


def _integer(value, path, minimum=0):
   _check(isinstance(value, int) and not isinstance(value, bool) and value >= minimum,
          'expected an integer >= %d, got %r' % (minimum, value), path)
   return value


def _sequence(value, path, minimum=1):
   _check(isinstance(value, (list, tuple)) and len(value) >= minimum,
          'expected a list of at least %d value(s), got %r' % (minimum, value), path)
   return value


def _pair(value, path, lo=None, hi=None):
   _check(isinstance(value, (list, tuple)) and len(value) == 2, 'expected a pair of numbers', path)
   a, b = (_number(v, path) for v in value)
   _check(a < b, 'expected increasing values, got %r' % (list(value),), path)
   if lo is not None:
      _check(a >= lo and b <= hi, 'values must lie in [%g, %g]' % (lo, hi), path)
   return a, b


def from_dict(cls, data, path):
   """Build the section cls from the parsed JSON object data."""
   _check(isinstance(data, dict), 'expected an object', path)
   known = {f.name: f for f in fields(cls)}
   for key in data:
      if key not in known:
         raise ConfigurationError('Unknown configuration key %s.%s' % (path, key), '%s.%s' % (path, key))
   kwargs = {}
   for name, f in known.items():
      if name not in data:
         if f.default is MISSING and f.default_factory is MISSING:
            raise ConfigurationError('Missing configuration key %s.%s' % (path, name), '%s.%s' % (path, name))
         continue
      value = data[name]
      section = f.metadata.get('section')
      if section is not None and value is not None:
         value = from_dict(section, value, '%s.%s' % (path, name))
      elif isinstance(value, list):
         value = tuple(value)
      kwargs[name] = value
   obj = cls(**kwargs)
   obj.validate(path)
   return obj


# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class PotentialSpec:
   kind: str
   params: dict = field(default_factory=dict)
   range: Optional[tuple] = None

   def validate(self, path):
      _check(isinstance(self.kind, str), 'expected a potential name, got %r' % (self.kind,), path + '.kind')
      _check(isinstance(self.params, dict), 'params must be an object', path + '.params')
      if self.range is not None:
         lo, hi = _pair(self.range, path + '.range')
         _check(lo > 0.0, 'r_lo must be positive', path + '.range')

   def build(self):
      return make_builtin(self.kind, self.params, self.range)


@dataclass(frozen=True)
class GridSpec:
   n_samples: int = 256
   cap: float = 10.0
   energy_span: float = 4.0
   p_theta_points: int = 64
   n1: int = 8
   n2: int = 8
   momentum_fractions: tuple = (0.1, 0.9)
   energy_fractions: tuple = (0.1, 0.9)
   method: str = 'quadrature'
   bertrand_points: int = 32

   def validate(self, path):
      for name in ('n_samples', 'p_theta_points', 'n1', 'n2', 'bertrand_points'):
         _integer(getattr(self, name), '%s.%s' % (path, name), minimum=2)
      _number(self.cap, path + '.cap', positive=True)
      _number(self.energy_span, path + '.energy_span', positive=True)
      _pair(self.momentum_fractions, path + '.momentum_fractions', 0.0, 1.0)
      _pair(self.energy_fractions, path + '.energy_fractions', 0.0, 1.0)
      _check(self.method in ('quadrature', 'difference'), 'unknown frequency method %r' % (self.method,),
             path + '.method')


@dataclass(frozen=True)
class ToleranceSpec:
   tol_D: float = 1e-7
   cut_fraction: float = 1e-4
   log_residual: float = 1e-6
   bertrand_spread: float = 1e-6
   fd_step: float = 1e-4
   tol_grad: float = 1e-10
   tol_nondeg: float = 1e-8
   quad_tol: float = 1e-11

   def validate(self, path):
      for f in fields(self):
         _number(getattr(self, f.name), '%s.%s' % (path, f.name), positive=True)


@dataclass(frozen=True)
class PerturbationSpec:
   kind: str = 'anisotropic_quadratic'
   params: dict = field(default_factory=dict)

   def validate(self, path):
      _check(isinstance(self.params, dict), 'params must be an object', path + '.params')

   def build(self, seed=None):
      return make_perturbation(self.kind, self.params, seed)


@dataclass(frozen=True)
class FastSlowSpec:
   kind: str = 'harmonic_slow'
   n: int = 1
   omega: float = 1.0
   kappa: float = 0.1
   eps: tuple = (1e-2, 1e-3)
   T: float = 50.0

   def validate(self, path):
      _number(self.omega, path + '.omega', positive=True)
      _number(self.kappa, path + '.kappa')
      _number(self.T, path + '.T', positive=True)
      _integer(self.n, path + '.n', minimum=1)
      for e in _sequence(self.eps, path + '.eps'):
         _number(e, path + '.eps', positive=True)

   def coupling(self):
      return FastSlowCoupling(self.kind, self.n, self.omega, self.kappa)


@dataclass(frozen=True)
class DynamicsSpec:
   eps: tuple = (1e-2, 1e-3, 1e-4)
   T: Optional[float] = None
   dt: Optional[float] = None
   shell: Optional[tuple] = None
   chart: int = 0
   I2: Optional[float] = None
   energy_fraction: float = 0.2
   inclination: float = 0.0
   n_samples: int = 1000
   fast_slow: Optional[FastSlowSpec] = field(default=None, metadata={'section': FastSlowSpec})

   def validate(self, path):
      for e in _sequence(self.eps, path + '.eps'):
         _check(isinstance(e, (int, float)) and not isinstance(e, bool) and e >= 0.0,
                'eps must be non-negative numbers', path + '.eps')
      for name in ('T', 'dt', 'I2'):
         if getattr(self, name) is not None:
            _number(getattr(self, name), '%s.%s' % (path, name), positive=True)
      if self.shell is not None:
         _pair(self.shell, path + '.shell')
      _integer(self.chart, path + '.chart')
      _integer(self.n_samples, path + '.n_samples', minimum=2)
      _number(self.inclination, path + '.inclination')
      _number(self.energy_fraction, path + '.energy_fraction')
      _check(0.0 < self.energy_fraction < 1.0, 'energy_fraction must lie in (0, 1)', path + '.energy_fraction')


@dataclass(frozen=True)
class BirkhoffSpec:
   radii: Optional[tuple] = None
   scan: tuple = (-3.5, 2.0)
   step: float = 1e-3
   fuzz: int = 100

   def validate(self, path):
      _pair(self.scan, path + '.scan')
      _number(self.step, path + '.step', positive=True)
      _integer(self.fuzz, path + '.fuzz', minimum=1)
      if self.radii is not None:
         for r in _sequence(self.radii, path + '.radii'):
            _number(r, path + '.radii', positive=True)


@dataclass(frozen=True)
class RunConfig:
   potential: PotentialSpec = field(metadata={'section': PotentialSpec})
   grid: GridSpec = _section(GridSpec)
   tolerances: ToleranceSpec = _section(ToleranceSpec)
   perturbation: PerturbationSpec = _section(PerturbationSpec)
   dynamics: DynamicsSpec = _section(DynamicsSpec)
   birkhoff: BirkhoffSpec = _section(BirkhoffSpec)
   analysis: Optional[str] = None
   out: str = '.'
   seed: int = 0
   jobs: int = 1

   def validate(self, path):
      if self.analysis is not None:
         _check(self.analysis in ANALYSES, 'unknown analysis %r' % (self.analysis,), path + '.analysis')
      _check(isinstance(self.seed, int) and not isinstance(self.seed, bool), 'seed must be an integer',
             path + '.seed')
      _check(isinstance(self.jobs, int) and self.jobs >= 1, 'jobs must be a positive integer', path + '.jobs')

   def with_overrides(self, out=None, jobs=None, seed=None):
      changes = {k: v for k, v in (('out', out), ('jobs', jobs), ('seed', seed)) if v is not None}
      new = replace(self, **changes)
      new.validate('config')
      return new


# ---------------------------------------------------------------------------
def parse_config(text, source='<string>'):
   """Parse the JSON text of a run configuration."""
   try:
      data = json.loads(text)
   except json.JSONDecodeError as err:
      raise ConfigurationError('Malformed JSON in %s at line %d column %d: %s'
                               % (source, err.lineno, err.colno, err.msg)) from err
   config = from_dict(RunConfig, data, 'config')
   logger.debug('Configuration from %s: %s', source, config)
   return config


def load_config(path):
   try:
      with open(path) as f:
         text = f.read()
   except OSError as err:
      raise ConfigurationError('Cannot read configuration %s: %s' % (path, err.strerror), 'config') from err
   return parse_config(text, str(path))
