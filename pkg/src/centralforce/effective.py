#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""
CENTRALFORCE: Action-angle analysis of central force Hamiltonians

effective file. Contains the effective potential V_eff(r, ell) =
V(r) + ell/(2 r^2), its critical points (circular orbits) and the
decomposition of the angular momentum range into intervals on which the
critical points keep their number, kinds and level ordering.

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .ProgressDisplay import ProgressDisplay
from .errors import AnalysisError, DomainError, HypothesisViolation
from .potentials import check_hypotheses, probe_grid
from .util import MAXIMUM, MINIMUM

logger = logging.getLogger(__name__)

TOL_GRAD = 1e-10
TOL_NONDEG = 1e-8
GRID_POINTS = 4096
CUT_FRACTION = 1e-4
RTOL = 4.0 * np.finfo(float).eps


# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class CriticalPoint:
   """A circular orbit: critical point r0 of V_eff(., ell)."""

   r0: float
   ell: float
   kind: str
   level: float
   curvature: float
   degenerate: bool = False

   @property
   def lam(self):
      """sqrt(-curvature) at a maximum."""
      return math.sqrt(-self.curvature) if self.curvature < 0.0 else math.nan

   def __str__(self):
      return ('%s at r0 = %.12g (ell = %.8g, level = %.12g, curvature = %.6g%s)'
              % (self.kind, self.r0, self.ell, self.level, self.curvature,
                 ', degenerate' if self.degenerate else ''))


# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class MomentumInterval:
   """Open p_theta interval (lo, hi) on which the critical point branches keep
   their number, order and kinds and the critical levels keep their order
   (V^inf included)."""

   lo: float
   hi: float
   kinds: tuple
   level_order: tuple
   levels_distinct: bool = True
   tol_nondeg: float = TOL_NONDEG
   tol_grad: float = TOL_GRAD

   @property
   def mid(self):
      return 0.5 * (self.lo + self.hi)

   def contains(self, p_theta):
      return self.lo <= p_theta <= self.hi

   def critical_points(self, p, p_theta):
      """Critical point branches at p_theta, sorted by radius."""
      if not self.contains(p_theta):
         raise DomainError('p_theta = %g outside the momentum interval (%g, %g)' % (p_theta, self.lo, self.hi))
      points = find_critical_points(p, p_theta * p_theta, tol_nondeg=self.tol_nondeg, tol_grad=self.tol_grad)
      if tuple(cp.kind for cp in points) != self.kinds:
         raise AnalysisError('Branch structure changed inside (%g, %g) at p_theta = %g'
                             % (self.lo, self.hi, p_theta))
      return points

   def __str__(self):
      return '(%.10g, %.10g): %s' % (self.lo, self.hi, ', '.join(self.kinds))


# ---------------------------------------------------------------------------
def veff(p, r, ell):
   if ell < 0.0:
      raise DomainError('ell must be non-negative, got %g' % ell)
   p.check_range(r)
   return p.derivative(r, 0) + ell / (2.0 * r * r)


def veff_dr(p, r, ell):
   p.check_range(r)
   return p.derivative(r, 1) - ell / r**3


def veff_dr2(p, r, ell):
   p.check_range(r)
   return p.derivative(r, 2) + 3.0 * ell / r**4


@lru_cache(maxsize=64)
def _log_grid(r_lo, r_hi, n):
   return np.geomspace(r_lo, r_hi, n)


# ---------------------------------------------------------------------------
def v_infinity(p):
   """Estimate V^inf = lim V(r), r -> inf, or +inf.

   The tail r V'(r) is matched to a power r^-alpha between r_hi/2 and r_hi;
   a decaying tail is integrated to infinity, otherwise V^inf = +inf.
   """
   r1 = p.r_hi
   r2 = 0.5 * r1
   t1 = r1 * p.derivative(r1, 1)
   t2 = r2 * p.derivative(r2, 1)
   if t1 == 0.0:
      return float(p(r1))
   if t1 * t2 > 0.0 and abs(t1) < abs(t2):
      alpha = math.log(abs(t2) / abs(t1)) / math.log(2.0)
      if alpha > 1e-3:
         return float(p(r1) + t1 / alpha)
   if t1 < 0.0:
      # V decreases without bound; nothing is bounded from above
      logger.warning('Potential %s decreases along the tail; V^inf taken as -inf', p.name)
      return -math.inf
   return math.inf


def _momentum_range(p, cap):
   """(L_m, L_M) and whether each end is an attained extremum of r^3 V'."""
   report = check_hypotheses(p)
   if not report.passed:
      raise HypothesisViolation('Potential %s fails the hypotheses (H1=%s, H2=%s)'
                                % (p.name, report.h1, report.h2))
   if cap <= 0.0:
      raise DomainError('Momentum cap must be positive, got %g' % cap)

   r = probe_grid(p)
   s = r**3 * p.derivative(r, 1)
   floor = max(0.0, p.ell_star)
   r3dv = lambda x: x**3 * p.derivative(x, 1)

   imin = int(np.argmin(s))
   low, low_attained = floor, False
   if 0 < imin < len(r) - 1:
      res = minimize_scalar(r3dv, bounds=(r[imin - 1], r[imin + 1]), method='bounded',
                            options={'xatol': 1e-12 * r[imin]})
      if float(res.fun) > floor:
         low, low_attained = float(res.fun), True

   imax = int(np.argmax(s))
   high, high_attained = cap, False
   if 0 < imax < len(r) - 1:
      res = minimize_scalar(lambda x: -r3dv(x), bounds=(r[imax - 1], r[imax + 1]), method='bounded',
                            options={'xatol': 1e-12 * r[imax]})
      high, high_attained = math.sqrt(-float(res.fun)), True

   if high * high <= low:
      raise HypothesisViolation('Empty angular momentum range for %s' % p.name)
   return math.sqrt(low), high, low_attained, high_attained


def momentum_range(p, cap):
   """Return (L_m, L_M), the range of the angular momentum modulus.

   The extremes of r^3 V' found at the ends of the working range are treated
   as open-ended: a minimum there gives L_m^2 = max(0, ell*), a maximum there
   gives L_M = cap.
   """
   L_m, L_M, _, _ = _momentum_range(p, cap)
   logger.info('Momentum range of %s: (%.10g, %.10g)', p.name, L_m, L_M)
   return L_m, L_M


# ---------------------------------------------------------------------------
@lru_cache(maxsize=8192)
def _critical_points(p, ell, n_grid, tol_nondeg, tol_grad):
   r = _log_grid(p.r_lo, p.r_hi, n_grid)
   f = r**3 * p.derivative(r, 1) - ell
   func = lambda x: x**3 * p.derivative(x, 1) - ell

   roots = []
   for i in np.nonzero(f == 0.0)[0]:
      roots.append(float(r[i]))
   for i in np.nonzero(f[:-1] * f[1:] < 0.0)[0]:
      roots.append(brentq(func, r[i], r[i + 1], xtol=1e-15 * r[i], rtol=RTOL))

   points = []
   for r0 in sorted(roots):
      dv = p.derivative(r0, 1)
      if abs(r0**3 * dv - ell) > tol_grad * max(ell, 1.0):
         logger.warning("Circular orbit at r0 = %.12g misses r^3 V' = ell = %g by %.3g", r0, ell, r0**3 * dv - ell)
      curvature = p.derivative(r0, 2) + 3.0 * ell / r0**4
      level = p.derivative(r0, 0) + ell / (2.0 * r0 * r0)
      kind = MINIMUM if curvature > 0.0 else MAXIMUM
      degenerate = abs(curvature) <= tol_nondeg * abs(dv) / r0
      points.append(CriticalPoint(r0, ell, kind, float(level), float(curvature), bool(degenerate)))
   return tuple(points)


def find_critical_points(p, ell, n_grid=GRID_POINTS, tol_nondeg=TOL_NONDEG, tol_grad=TOL_GRAD):
   """All roots of r^3 V'(r) = ell in the working range, sorted by radius.

   Roots are bracketed by sign changes on a log grid and refined by Brent's
   method. Degenerate points carry `degenerate=True`; callers skip that ell.
   A refined root whose residual exceeds tol_grad * max(ell, 1) is logged.
   """
   if ell < 0.0:
      raise DomainError('ell must be non-negative, got %g' % ell)
   return _critical_points(p, float(ell), int(n_grid), float(tol_nondeg), float(tol_grad))


def critical_level_slope(p, cp):
   """d/d(ell) of the critical level V_eff(r0(ell), ell), i.e. 1/(2 r0^2)."""
   return 1.0 / (2.0 * cp.r0 * cp.r0)


def branch_rows(p, p_theta_values):
   """Rows (p_theta, ell, branch, r0, kind, level, curvature) for the CSV
   emitter of critical point branches."""
   rows = []
   for pt in p_theta_values:
      for i, cp in enumerate(find_critical_points(p, pt * pt)):
         rows.append((pt, cp.ell, i, cp.r0, cp.kind, cp.level, cp.curvature))
   return rows


# ---------------------------------------------------------------------------
def _signature(p, p_theta, v_inf, tols):
   points = find_critical_points(p, p_theta * p_theta, **tols)
   kinds = tuple(cp.kind for cp in points)
   degenerate = any(cp.degenerate for cp in points)
   levels = [cp.level for cp in points]
   if math.isfinite(v_inf):
      levels.append(v_inf)
   order = tuple(int(i) for i in np.argsort(levels, kind='stable'))
   return kinds, degenerate, order


def _locate_cut(p, a, b, sig_a, v_inf, tol, tols):
   """Bisect (a, b) for the first point where the signature leaves sig_a."""
   while b - a > tol:
      m = 0.5 * (a + b)
      if _signature(p, m, v_inf, tols) == sig_a:
         a = m
      else:
         b = m
   return 0.5 * (a + b)


def _levels_distinct(p, p_theta, v_inf, tols):
   levels = sorted([cp.level for cp in find_critical_points(p, p_theta * p_theta, **tols)]
                   + ([v_inf] if math.isfinite(v_inf) else []))
   scale = max([abs(x) for x in levels] + [1.0])
   return all(b - a > 1e-12 * scale for a, b in zip(levels[:-1], levels[1:]))


def decompose_momentum_intervals(p, n_samples=256, cap=10.0, cut_fraction=CUT_FRACTION, progress=False,
                                 tol_nondeg=TOL_NONDEG, tol_grad=TOL_GRAD):
   """Split (L_m, L_M) into intervals with a fixed critical point structure.

   Cuts are placed wherever the number or kinds of critical points change, a
   degenerate point appears, or two critical levels (or a level and V^inf)
   exchange order between consecutive samples. Intervals are shrunk by
   cut_fraction * (L_M - L_m) away from each located cut and from an end of
   (L_m, L_M) that is an attained extremum of r^3 V'; open-ended ends are kept.
   """
   if n_samples < 64:
      raise DomainError('decompose_momentum_intervals needs n_samples >= 64, got %d' % n_samples)
   L_m, L_M, low_attained, high_attained = _momentum_range(p, cap)
   logger.info('Momentum range of %s: (%.10g, %.10g)', p.name, L_m, L_M)
   tols = {'tol_nondeg': tol_nondeg, 'tol_grad': tol_grad}
   v_inf = v_infinity(p)
   span = L_M - L_m
   delta = cut_fraction * span
   samples = L_m + (np.arange(n_samples) + 0.5) / n_samples * span

   if progress:
      display = ProgressDisplay(n_samples)
   sigs = []
   for i, pt in enumerate(samples):
      sigs.append(_signature(p, pt, v_inf, tols))
      if progress:
         display.update(i + 1)
   if progress:
      display.kill()

   # runs of constant signature, bounded by located cuts; an open end is
   # checked for a change before the first (or after the last) sample
   edges = [L_m]
   run_sigs = [sigs[0]]
   if not low_attained:
      sig_end = _signature(p, L_m, v_inf, tols)
      if sig_end != sigs[0]:
         edges.append(_locate_cut(p, L_m, samples[0], sig_end, v_inf, 1e-12 * span, tols))
         run_sigs = [sig_end, sigs[0]]
   for i in range(n_samples - 1):
      if sigs[i + 1] != sigs[i]:
         edges.append(_locate_cut(p, samples[i], samples[i + 1], sigs[i], v_inf, 1e-12 * span, tols))
         run_sigs.append(sigs[i + 1])
   if not high_attained:
      sig_end = _signature(p, L_M, v_inf, tols)
      if sig_end != sigs[-1]:
         edges.append(_locate_cut(p, samples[-1], L_M, sigs[-1], v_inf, 1e-12 * span, tols))
         run_sigs.append(sig_end)
   edges.append(L_M)
   shrink = [delta] * len(edges)
   shrink[0] = delta if low_attained else 0.0
   shrink[-1] = delta if high_attained else 0.0

   intervals = []
   for k, (kinds, degenerate, order) in enumerate(run_sigs):
      lo, hi = edges[k] + shrink[k], edges[k + 1] - shrink[k + 1]
      if not kinds or degenerate or lo >= hi:
         continue
      mid = 0.5 * (lo + hi)
      intervals.append(MomentumInterval(float(lo), float(hi), kinds, order,
                                        _levels_distinct(p, mid, v_inf, tols), tol_nondeg, tol_grad))

   if not intervals:
      raise AnalysisError('No admissible momentum interval found for %s' % p.name)
   for iv in intervals:
      logger.info('Momentum interval %s', iv)
   return intervals
