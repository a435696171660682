#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""
CENTRALFORCE: Action-angle analysis of central force Hamiltonians

quasiconvexity file. Contains the Arnold determinant
D = -h11 w2^2 + 2 h12 w1 w2 - h22 w1^2 of h(I1, I2), the Burgers residual of
nu = w1/w2, grid maps of the quasiconvexity verdict, the divergence of D
above a maximum and the non-constancy test of nu.

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .ProgressDisplay import ProgressDisplay
from .actions import action_G, action_point, fit_log_asymptotics, invert_h, radial_integrals
from .errors import DomainError
from .util import MAXIMUM, MINIMUM

logger = logging.getLogger(__name__)

TOL_D = 1e-7
HESSIAN_STEP = 1e-4
BERTRAND_SPREAD = 1e-6
RATIO_TOL = 0.1
W1_TOL = 0.05


# ---------------------------------------------------------------------------
@dataclass(eq=False)
class ArnoldSample:
   point: object
   hessian: np.ndarray
   D: float
   D_normalized: float
   quasiconvex: bool
   burgers_residual: float
   accurate: bool = True

   def recompute_D(self):
      h = self.hessian
      w1, w2 = self.point.omega1, self.point.omega2
      return -h[0, 0] * w2 * w2 + 2.0 * h[0, 1] * w1 * w2 - h[1, 1] * w1 * w1


def determinant(hessian, omega1, omega2):
   return (-hessian[0, 0] * omega2**2 + 2.0 * hessian[0, 1] * omega1 * omega2
           - hessian[1, 1] * omega1**2)


def _omega(chart, I1, I2):
   pt = action_point(chart, invert_h(chart, I1, I2), I2)
   return np.array([pt.omega1, pt.omega2]), pt.accurate


def arnold_determinant(chart, I1, I2, tol_D=TOL_D, step=HESSIAN_STEP):
   """Arnold determinant at the action point (I1, I2).

   The Hessian of h is obtained by 4-point central differences of the
   frequencies, with one step in both actions; h12 is the mean of the two
   mixed differences.
   """
   point = action_point(chart, invert_h(chart, I1, I2), I2)
   scale = I1 + I2
   delta = step * scale
   accurate = point.accurate
   if I1 - 2.0 * delta <= 0.0:
      delta = 0.2 * I1
      accurate = False
      logger.debug('Hessian step shrunk to %g near I1 = 0', delta)

   columns = []
   for axis in (0, 1):
      values = []
      for k in (-2.0, -1.0, 1.0, 2.0):
         shift = np.array([I1, I2])
         shift[axis] += k * delta
         w, ok = _omega(chart, *shift)
         values.append(w)
         accurate = accurate and ok
      columns.append((values[0] - 8.0 * values[1] + 8.0 * values[2] - values[3]) / (12.0 * delta))
   d1, d2 = columns
   h12 = 0.5 * (d1[1] + d2[0])
   hessian = np.array([[d1[0], h12], [h12, d2[1]]])

   w1, w2 = point.omega1, point.omega2
   D = determinant(hessian, w1, w2)
   norm = math.hypot(w1, w2)
   D_normalized = D * scale / norm**3 if norm > 0.0 else math.nan

   if abs(w2) > 1e-14 * norm:
      dnu1 = (hessian[0, 0] * w2 - w1 * hessian[0, 1]) / (w2 * w2)
      dnu2 = (hessian[0, 1] * w2 - w1 * hessian[1, 1]) / (w2 * w2)
      burgers = dnu1 - (w1 / w2) * dnu2
   else:
      burgers = math.nan

   return ArnoldSample(point, hessian, D, D_normalized, bool(norm > 0.0 and abs(D_normalized) > tol_D),
                       burgers, accurate)


# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class FormComponents:
   """Terms of the Arnold determinant written with W1 = 1/(dG/dEbar) in the
   coordinates (Ebar, I2), Ebar = E - V0(I2) measured from the bottom."""

   Ebar: float
   I2: float
   W1: float
   dW1_dE: float
   dW1_dI2: float
   d2G_dI2: float
   dV0: float
   d2V0: float

   @property
   def D(self):
      return (-self.W1 * self.dW1_dE * self.dV0**2 + 2.0 * self.W1 * self.dW1_dI2 * self.dV0
              + self.W1**3 * self.d2G_dI2 - self.W1**2 * self.d2V0)


def _four_point(f, x, h):
   return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)


def _w1(chart, ebar, I2):
   vals, _ = radial_integrals(chart, chart.bottom_level(I2) + ebar, I2, ('period',))
   return math.pi / vals['period']


def _gbar_dI2(chart, ebar, I2):
   """dG/dI2 at fixed Ebar, a regular integral even above a maximum."""
   vals, _ = radial_integrals(chart, chart.bottom_level(I2) + ebar, I2, ('bar',))
   return vals['bar'] / math.pi


def bottom_derivatives(chart, I2):
   """dV0/dI2 = I2/r0^2 and d2V0/dI2^2 along the bottom branch."""
   cp = chart.bottom_point(I2)
   p = chart.potential
   r0 = cp.r0
   dr0 = 2.0 * I2 / (3.0 * r0**2 * p.derivative(r0, 1) + r0**3 * p.derivative(r0, 2))
   return I2 / r0**2, 1.0 / r0**2 - 2.0 * I2 / r0**3 * dr0


def arnold_from_actions_form(chart, Ebar, I2, e_step=1e-3, i_step=1e-4):
   """Arnold determinant from W1 and G in (Ebar, I2) coordinates.

   Derivatives in Ebar use the relative step e_step, derivatives in I2 at
   fixed Ebar the relative step i_step, both with 4-point stencils.
   """
   if Ebar <= 0.0:
      raise DomainError('Ebar must be positive, got %g' % Ebar)
   h_i = i_step * I2
   dV0, d2V0 = bottom_derivatives(chart, I2)
   comps = FormComponents(
      Ebar=Ebar, I2=I2,
      W1=_w1(chart, Ebar, I2),
      dW1_dE=_four_point(lambda e: _w1(chart, e, I2), Ebar, e_step * Ebar),
      dW1_dI2=_four_point(lambda i2: _w1(chart, Ebar, i2), I2, h_i),
      d2G_dI2=_four_point(lambda i2: _gbar_dI2(chart, Ebar, i2), I2, h_i),
      dV0=dV0, d2V0=d2V0)
   return comps


# ---------------------------------------------------------------------------
@dataclass(eq=False)
class ArnoldMap:
   I2: np.ndarray
   I1: np.ndarray
   samples: list
   zero_set: list = field(default_factory=list)
   tol_D: float = TOL_D

   @property
   def D_normalized(self):
      return np.array([[s.D_normalized for s in row] for row in self.samples])

   @property
   def near_zero_fraction(self):
      return float(np.mean(np.abs(self.D_normalized) <= self.tol_D))

   @property
   def degraded(self):
      return sum(not s.accurate for row in self.samples for s in row)

   def rows(self, chart_index=0):
      out = []
      for row in self.samples:
         for s in row:
            out.append((chart_index, s.point.I1, s.point.I2, s.point.E, s.D, s.D_normalized, s.quasiconvex,
                        s.burgers_residual, s.accurate))
      return out

   def as_dict(self):
      return {'n2': len(self.I2), 'n1': self.I1.shape[1], 'near_zero_fraction': self.near_zero_fraction,
              'degraded_cells': self.degraded, 'all_near_zero': bool(self.near_zero_fraction == 1.0),
              'zero_set': [list(pt) for pt in self.zero_set]}


def _map_row(chart, I2, I1_values, tol_D):
   return [arnold_determinant(chart, I1, I2, tol_D) for I1 in I1_values]


def _edge_zero(chart, a, b, fa, fb, tol_D):
   """One bisection on the edge (a, b) with a sign change, then linear
   interpolation inside the half that keeps it."""
   m = 0.5 * (a + b)
   fm = arnold_determinant(chart, m[0], m[1], tol_D).D_normalized
   if fa * fm <= 0.0:
      b, fb = m, fm
   else:
      a, fa = m, fm
   t = fa / (fa - fb) if fa != fb else 0.5
   return tuple(float(v) for v in a + t * (b - a))


def quasiconvexity_map(chart, n1, n2, momentum_fractions=(0.1, 0.9), energy_fractions=(0.1, 0.9), tol_D=TOL_D,
                       jobs=1, progress=False):
   """Arnold samples on an n2 x n1 grid inside the chart.

   Rows are at fixed I2; along each row I1 runs evenly between the actions of
   the two energy fractions. The zero set of D is traced through sign changes
   along grid edges whose endpoints are not both below tol_D.
   """
   lo, hi = chart.interval.lo, chart.interval.hi
   I2 = lo + np.linspace(*momentum_fractions, n2) * (hi - lo)
   I1 = np.empty((n2, n1))
   for j, i2 in enumerate(I2):
      e_lo, e_hi = chart.denormalize(energy_fractions[0], i2), chart.denormalize(energy_fractions[1], i2)
      I1[j] = np.linspace(action_G(chart, e_lo, i2), action_G(chart, e_hi, i2), n1)

   if progress:
      display = ProgressDisplay(n2, label='arnold')
   samples = []
   if jobs > 1:
      with ProcessPoolExecutor(max_workers=jobs) as pool:
         futures = [pool.submit(_map_row, chart, I2[j], I1[j], tol_D) for j in range(n2)]
         for j, fut in enumerate(futures):
            samples.append(fut.result())
            if progress:
               display.update(j + 1)
   else:
      for j in range(n2):
         samples.append(_map_row(chart, I2[j], I1[j], tol_D))
         if progress:
            display.update(j + 1)
   if progress:
      display.kill()

   result = ArnoldMap(I2, I1, samples, tol_D=tol_D)
   D = result.D_normalized
   for j in range(n2):
      for i in range(n1):
         for dj, di in ((0, 1), (1, 0)):
            jj, ii = j + dj, i + di
            if jj >= n2 or ii >= n1:
               continue
            fa, fb = D[j, i], D[jj, ii]
            if fa * fb < 0.0 and max(abs(fa), abs(fb)) > tol_D:
               a = np.array([I1[j, i], I2[j]])
               b = np.array([I1[jj, ii], I2[jj]])
               result.zero_set.append(_edge_zero(chart, a, b, fa, fb, tol_D))
   logger.info('Arnold map of chart %d: %d zero-set points, near-zero fraction %.3f', chart.index,
               len(result.zero_set), result.near_zero_fraction)
   return result


# ---------------------------------------------------------------------------
@dataclass
class DivergenceReport:
   I2: float
   lam: float
   dV0: float
   Ebar: list
   D: list
   model: list
   prefactor: float
   pair_ratios: list
   model_pair_ratios: list
   monotone: bool
   inconclusive: bool
   W1: list
   ratio_ok: bool = False
   W1_fitted: list = field(default_factory=list)
   W1_leading: list = field(default_factory=list)
   W1_deviation: float = math.nan
   W1_leading_deviation: float = math.nan
   fit_residual: float = math.nan

   @property
   def W1_ok(self):
      return bool(self.W1_deviation < W1_TOL)

   def as_dict(self):
      return {'I2': self.I2, 'lambda': self.lam, 'dV0_dI2': self.dV0, 'Ebar': self.Ebar, 'D': self.D,
              'model': self.model, 'prefactor': self.prefactor, 'pair_ratios': self.pair_ratios,
              'model_pair_ratios': self.model_pair_ratios, 'ratio_ok': self.ratio_ok, 'monotone': self.monotone,
              'inconclusive': self.inconclusive, 'W1': self.W1, 'W1_fitted': self.W1_fitted,
              'W1_leading': self.W1_leading, 'W1_deviation': self.W1_deviation,
              'W1_leading_deviation': self.W1_leading_deviation, 'W1_ok': self.W1_ok,
              'fit_residual': self.fit_residual}


def max_bottom_divergence(chart, I2, E_samples=None):
   """Arnold determinant along Ebar -> 0 above a maximum bottom, compared with
   pi^2 lambda^2 (dV0/dI2)^2 / (Ebar ln^3 Ebar).

   Each sample Ebar is paired with Ebar/2 for the ratio test, which passes
   when the two smallest samples are within RATIO_TOL of the model ratios.
   W1 is compared with 1/(dI1/dEbar) of the logarithmic fit of I1, and with
   the leading term -pi lambda/ln Ebar, whose deviation is only reported.
   """
   if chart.bottom_kind != MAXIMUM:
      raise DomainError('Divergence analysis needs a chart bottomed by a maximum')
   lo, hi = chart.energy_range(I2)
   span = hi - lo
   if E_samples is None:
      E_samples = span * np.array([1e-3, 1e-4, 1e-5, 1e-6])
   lam = chart.bottom_point(I2).lam
   dV0, _ = bottom_derivatives(chart, I2)
   inconclusive = abs(dV0) <= 1e-8 * max(abs(lo), 1.0)
   if inconclusive:
      logger.warning('dV0/dI2 vanishes at I2 = %g; divergence test inconclusive', I2)

   model = lambda e: math.pi**2 * lam**2 * dV0**2 / (e * math.log(e) ** 3)
   ebar, D, W1, pairs, model_pairs = [], [], [], [], []
   for e in E_samples:
      comps = arnold_from_actions_form(chart, e, I2)
      half = arnold_from_actions_form(chart, 0.5 * e, I2).D
      ebar.append(float(e))
      D.append(comps.D)
      W1.append(comps.W1)
      pairs.append(abs(half) / abs(comps.D))
      model_pairs.append(model(0.5 * e) / model(e))
   mod = [model(e) for e in ebar]
   ratios = [d / m for d, m in zip(D, mod)] if not inconclusive else [math.nan]
   order = np.argsort(ebar)[::-1]
   absD = np.abs(np.array(D))[order]
   smallest = order[::-1][:2]
   ratio_ok = not inconclusive and all(abs(pairs[k] / model_pairs[k] - 1.0) <= RATIO_TOL for k in smallest)

   fit = fit_log_asymptotics(chart, I2, residual_tol=math.inf)
   fitted = [fit.W1_at(e) for e in ebar]
   leading = [-math.pi * lam / math.log(e) for e in ebar]
   deviation = max(abs(w / f - 1.0) for w, f in zip(W1, fitted))
   leading_deviation = max(abs(w / f - 1.0) for w, f in zip(W1, leading))

   report = DivergenceReport(I2=I2, lam=lam, dV0=dV0, Ebar=ebar, D=D, model=mod,
                             prefactor=float(np.median(ratios)), pair_ratios=pairs, model_pair_ratios=model_pairs,
                             monotone=bool(np.all(np.diff(absD) > 0.0)), inconclusive=bool(inconclusive), W1=W1,
                             ratio_ok=bool(ratio_ok), W1_fitted=fitted, W1_leading=leading,
                             W1_deviation=float(deviation), W1_leading_deviation=float(leading_deviation),
                             fit_residual=fit.residual)
   logger.info('Divergence at I2 = %g: prefactor %.4g, monotone %s, ratios %s', I2, report.prefactor,
               report.monotone, 'pass' if report.ratio_ok else 'fail')
   if not report.W1_ok:
      logger.warning('W1 differs from the logarithmic fit by %.2g%% at I2 = %g', 100 * deviation, I2)
   logger.info('W1 differs from -pi lambda/ln Ebar by %.2g%% at I2 = %g', 100 * leading_deviation, I2)
   return report


# ---------------------------------------------------------------------------
@dataclass
class BertrandVerdict:
   I2: float
   nu: list
   spread: float
   degenerate: bool

   @property
   def verdict(self):
      return 'degenerate' if self.degenerate else 'non-degenerate'

   def as_dict(self):
      return {'I2': self.I2, 'nu_min': min(self.nu), 'nu_max': max(self.nu), 'spread': self.spread,
              'verdict': self.verdict, 'apsidal_angles': [math.pi / v for v in self.nu]}


def bertrand_nonconstancy(chart, I2, n=32, energy_fractions=(0.05, 0.95), threshold=BERTRAND_SPREAD):
   """Spread of nu = w1/w2 over an energy sweep at fixed I2; the chart is
   degenerate (all nearby orbits closed) iff the spread is below threshold."""
   if chart.bottom_kind != MINIMUM:
      raise DomainError('Bertrand test needs a chart bottomed by a minimum')
   nu = [action_point(chart, chart.denormalize(x, I2), I2).nu for x in np.linspace(*energy_fractions, n)]
   spread = max(nu) - min(nu)
   verdict = BertrandVerdict(I2, nu, spread, bool(spread < threshold))
   logger.info('Bertrand test at I2 = %g: spread %.3g -> %s', I2, spread, verdict.verdict)
   return verdict
