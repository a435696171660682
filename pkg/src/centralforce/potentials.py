#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""
CENTRALFORCE: Action-angle analysis of central force Hamiltonians

potentials file. Contains the Potential class, the analytic terms it is built
from, the built-in potential kinds and the hypothesis checks.

A potential is a sum of terms (power, logarithm, gaussian), each with closed
form derivatives of any order, so that the circular orbit coefficients,
which need the sixth derivative of V, are evaluated without numerical
differentiation.

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

"""
import logging
import math
from dataclasses import dataclass, field, replace

import numpy as np
from numpy.polynomial import hermite_e

from .errors import ConfigurationError, DomainError, SingularPointError
from .util import potential_defaults, potential_kinds

logger = logging.getLogger(__name__)

# default working range
R_LO = 1.0e-3
R_HI = 1.0e3


# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class PowerTerm:
   """coef * r**exponent"""

   coef: float
   exponent: float

   def derivative(self, r, order=0):
      factor = 1.0
      for j in range(order):
         factor *= self.exponent - j
      if factor == 0.0:
         return 0.0 * r
      return self.coef * factor * r ** (self.exponent - order)

   def scaled(self, s):
      return replace(self, coef=s * self.coef)


# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class LogTerm:
   """coef * ln(r)"""

   coef: float

   def derivative(self, r, order=0):
      if order == 0:
         return self.coef * np.log(r)
      sign = -1.0 if order % 2 == 0 else 1.0
      return sign * self.coef * math.factorial(order - 1) * r ** (-order)

   def scaled(self, s):
      return replace(self, coef=s * self.coef)


# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class GaussianTerm:
   """-depth * exp(-(r - center)**2 / (2 width**2))

   The k-th derivative is (-1/width)**k He_k(x) times the term, with He_k the
   probabilists' Hermite polynomial and x = (r - center)/width.
   """

   depth: float
   center: float
   width: float

   def derivative(self, r, order=0):
      x = (r - self.center) / self.width
      coefs = [0.0] * order + [1.0]
      return (-self.depth * (-1.0 / self.width) ** order * hermite_e.hermeval(x, coefs)
              * np.exp(-0.5 * x * x))

   def scaled(self, s):
      return replace(self, depth=s * self.depth)


# ---------------------------------------------------------------------------
def limit_ell_star(terms):
   """ell* = -2 lim_{r->0} r^2 V(r), the angular momentum squared above which
   V + ell/(2 r^2) is confining at the centre. Returns +-inf when r^2 V
   diverges."""
   powers = [t for t in terms if isinstance(t, PowerTerm) and t.coef != 0.0]
   if not powers:
      return 0.0
   lowest = min(t.exponent for t in powers)
   coef = sum(t.coef for t in powers if t.exponent == lowest)
   if lowest + 2.0 > 0.0 or coef == 0.0:
      return 0.0
   if lowest + 2.0 == 0.0:
      return -2.0 * coef
   return -math.copysign(math.inf, coef)


# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class Potential:
   """Analytic radial potential V(r) on the working range (r_lo, r_hi).

   The potential is the sum of its terms; `derivative(r, k)` gives the k-th
   radial derivative for scalars or numpy arrays.
   """

   name: str
   terms: tuple
   ell_star: float = 0.0
   r_lo: float = R_LO
   r_hi: float = R_HI
   params: dict = field(default_factory=dict, hash=False, compare=False)

   def __post_init__(self):
      if not 0.0 < self.r_lo < self.r_hi:
         raise ConfigurationError('Working range must satisfy 0 < r_lo < r_hi, got (%g, %g)'
                                  % (self.r_lo, self.r_hi), 'range')

   def __call__(self, r):
      return self.derivative(r, 0)

   def derivative(self, r, order=0):
      """Return d^order V / dr^order at r."""
      total = 0.0
      for term in self.terms:
         total = total + term.derivative(r, order)
      return total

   def derivatives(self, r, order=5):
      """Return [V, V', ..., V^(order)] at the scalar r."""
      return np.array([self.derivative(r, k) for k in range(order + 1)])

   def in_range(self, r):
      slack = 1e-12 * self.r_hi
      return bool(np.all((r >= self.r_lo - slack) & (r <= self.r_hi + slack)))

   def check_range(self, r):
      if not self.in_range(r):
         raise DomainError('Radius outside the working range (%g, %g) of %s'
                           % (self.r_lo, self.r_hi, self.name))

   def g(self, r):
      return g_of(self, r)

   def scaled(self, s):
      """Return s * V for s > 0."""
      if s <= 0.0:
         raise DomainError('Scale factor must be positive, got %g' % s)
      return replace(self, terms=tuple(t.scaled(s) for t in self.terms),
                     ell_star=s * self.ell_star, name='%g*%s' % (s, self.name))

   def with_range(self, r_lo, r_hi):
      return replace(self, r_lo=r_lo, r_hi=r_hi)

   def __str__(self):
      lprint = lambda x, y: '%24s: %s\n' % (x, y)
      out = lprint('Potential', self.name)
      if self.name in potential_kinds:
         out += lprint('Form', potential_kinds[self.name][0])
      for key in sorted(self.params):
         out += lprint(key, self.params[key])
      out += lprint('ell*', self.ell_star)
      out += lprint('Working range', '(%g, %g)' % (self.r_lo, self.r_hi))
      return out


# ---------------------------------------------------------------------------
def _parameters(kind, params):
   """Complete and validate the parameter map of a built-in kind."""
   if kind not in potential_kinds:
      raise ConfigurationError('Unknown potential kind %r (expected one of %s)'
                               % (kind, ', '.join(sorted(potential_kinds))), 'kind')
   _, required, optional = potential_kinds[kind]
   for key in params:
      if key not in required and key not in optional:
         raise ConfigurationError('Unknown parameter %r for potential %s' % (key, kind), key)
   values = dict(potential_defaults.get(kind, {}))
   for key in required:
      if key not in params:
         raise ConfigurationError('Potential %s needs parameter %r' % (kind, key), key)
   values.update(params)
   for key, value in values.items():
      if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
         raise ConfigurationError('Parameter %r must be a finite number, got %r' % (key, value), key)
      values[key] = float(value)
   return values


def make_builtin(kind, params=None, r_range=None):
   """Build a built-in potential.

   Parameters
   ----------
   kind : str
      one of kepler, harmonic, power_law, log, lennard_jones,
      lennard_jones_gauss.
   params : dict
      named real parameters of the kind (see `util.potential_kinds`).
   r_range : (float, float), optional
      working range, defaults to (1e-3, 1e3).
   """
   values = _parameters(kind, dict(params or {}))

   if kind == 'kepler':
      if values['k'] <= 0.0:
         raise ConfigurationError('kepler needs k > 0', 'k')
      terms = (PowerTerm(-values['k'], -1.0),)
   elif kind == 'harmonic':
      if values['k'] <= 0.0:
         raise ConfigurationError('harmonic needs k > 0', 'k')
      terms = (PowerTerm(values['k'], 2.0),)
   elif kind == 'power_law':
      c = values['c']
      if c == -1.0:
         raise ConfigurationError('power_law needs exponent c != -1 (use kind log)', 'c')
      terms = (PowerTerm(values['k'] / (c + 1.0), c + 1.0),)
      if values['offset'] != 0.0:
         terms += (PowerTerm(values['offset'], 0.0),)
   elif kind == 'log':
      terms = (LogTerm(values['k']),)
   elif kind == 'lennard_jones':
      eps, sigma = values['epsilon'], values['sigma']
      if eps <= 0.0 or sigma <= 0.0:
         raise ConfigurationError('lennard_jones needs epsilon, sigma > 0', 'epsilon' if eps <= 0.0 else 'sigma')
      terms = (PowerTerm(4.0 * eps * sigma**12, -12.0), PowerTerm(-4.0 * eps * sigma**6, -6.0))
   else:
      eps, sigma, width = values['epsilon'], values['sigma'], values['width']
      if eps <= 0.0 or sigma <= 0.0 or width <= 0.0:
         raise ConfigurationError('lennard_jones_gauss needs epsilon, sigma, width > 0', 'width')
      terms = (PowerTerm(eps * sigma**12, -12.0), PowerTerm(-2.0 * eps * sigma**6, -6.0),
               GaussianTerm(values['depth'], values['center'], width))

   r_lo, r_hi = r_range if r_range is not None else (R_LO, R_HI)
   p = Potential(kind, terms, limit_ell_star(terms), float(r_lo), float(r_hi), values)
   logger.debug('Built potential %s with params %s', kind, values)
   return p


# ---------------------------------------------------------------------------
def g_of(p, r):
   """Return g(r) = r V''(r) / V'(r)."""
   p.check_range(r)
   d1 = p.derivative(r, 1)
   d2 = p.derivative(r, 2)
   if d1 == 0.0 or abs(d1) <= 1e-14 * abs(r * d2):
      raise SingularPointError('V\'(r) vanishes at r = %g' % r, r)
   return r * d2 / d1


def g_derivatives(p, r, order=4):
   """Return [g, g', ..., g^(order)] at r from the analytic V derivatives.

   With u = V''/V', V'' = u V' is differentiated by Leibniz' rule to give u^(k)
   recursively; then g^(k) = r u^(k) + k u^(k-1).
   """
   p.check_range(r)
   dv = p.derivatives(r, order + 2)
   num = dv[2:]
   den = dv[1:]
   if den[0] == 0.0:
      raise SingularPointError('V\'(r) vanishes at r = %g' % r, r)
   u = np.zeros(order + 1)
   for k in range(order + 1):
      acc = num[k]
      for j in range(k):
         acc -= math.comb(k, j) * u[j] * den[k - j]
      u[k] = acc / den[0]
   g = np.empty(order + 1)
   g[0] = r * u[0]
   for k in range(1, order + 1):
      g[k] = r * u[k] + k * u[k - 1]
   return g


# ---------------------------------------------------------------------------
@dataclass
class HypothesisReport:
   """Outcome of the hypothesis checks on a potential."""

   name: str
   ell_star: float
   h1: bool
   h2: bool
   h2_witness: float
   h3_counts: dict
   sup_r3dV: float

   @property
   def passed(self):
      return self.h1 and self.h2

   @property
   def h1_note(self):
      """How (H1) holds or fails for the value of ell*."""
      if self.ell_star == -math.inf:
         return 'ell* = -inf: holds, V_eff -> +inf at the centre for every ell >= 0'
      if self.ell_star == math.inf:
         return 'ell* = +inf: fails, r^2 V -> -inf and no ell confines the centre'
      return 'finite ell*'

   def as_dict(self):
      return {'potential': self.name, 'ell_star': self.ell_star, 'H1': self.h1, 'H1_note': self.h1_note,
              'H2': self.h2, 'H2_witness': self.h2_witness, 'sup_r3dV': self.sup_r3dV,
              'H3_root_counts': {repr(k): v for k, v in self.h3_counts.items()}}

   def __str__(self):
      lprint = lambda x, y: '%24s: %s\n' % (x, y)
      out = lprint('Potential', self.name)
      out += lprint('ell*', self.ell_star)
      out += lprint('(H1) finite limit', '%s (%s)' % (self.h1, self.h1_note))
      out += lprint('(H2) r^3 V\' > max(0,ell*)', '%s (witness r = %g)' % (self.h2, self.h2_witness))
      for ell, count in self.h3_counts.items():
         out += lprint('(H3) roots at ell=%.4g' % ell, count)
      return out


def probe_grid(p, n=4096):
   return np.geomspace(p.r_lo, p.r_hi, n)


def check_hypotheses(p, probe=None, n_ell=8):
   """Check (H1)-(H3) on a sorted probe grid. Failures are reported, not
   raised; the (H3) root counts are evidence only."""
   r = probe_grid(p) if probe is None else np.asarray(probe, dtype=float)
   s = r**3 * p.derivative(r, 1)
   threshold = max(0.0, p.ell_star)

   # ell* = -inf passes: the centrifugal barrier is not needed
   h1 = p.ell_star < math.inf
   imax = int(np.argmax(s))
   # r^3 V' equal to ell* up to round-off is not a strict maximum
   h2 = bool(s[imax] > threshold + 1e-12 * max(1.0, abs(s[imax])))
   witness = float(r[imax]) if h2 else math.nan

   counts = {}
   if h2:
      lo = threshold if threshold > 0.0 else 1e-6 * s[imax]
      for ell in np.geomspace(lo, s[imax], n_ell + 2)[1:-1]:
         f = s - ell
         counts[float(ell)] = int(np.count_nonzero(np.sign(f[:-1]) * np.sign(f[1:]) < 0))

   report = HypothesisReport(p.name, p.ell_star, h1, h2, witness, counts, float(s[imax]))
   if not report.passed:
      logger.warning('Potential %s fails the hypotheses: H1=%s H2=%s', p.name, h1, h2)
   return report
