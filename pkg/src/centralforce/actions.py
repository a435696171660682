#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""
CENTRALFORCE: Action-angle analysis of central force Hamiltonians

actions file. Contains the ActionChart class, one domain of the planar
problem on which the radial action I1 = G(E, I2) is defined, and the
operations on it: turning points, the action integral, the frequencies,
the inversion E = h(I1, I2) and the logarithmic asymptotics of I1 above a
maximum of the effective potential.

The spatial problem reuses the planar charts with I2 = |L|.

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .effective import RTOL
from .errors import AsymptoticsMismatch, ChartError, DomainError
from .quadrature import QUAD_RTOL, integrate, integrate_graded
from .util import MAXIMUM, MINIMUM, TOP_INFINITY, TOP_MAXIMUM, TOP_UNBOUNDED

logger = logging.getLogger(__name__)

ENERGY_SPAN = 4.0
NEGATIVE_TOL = 1e-8
LOG_WINDOW = (1e-3, 1e-8)
LOG_RESIDUAL = 1e-6


# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class ActionChart:
   """One connected family of bounded radial motions over a momentum interval.

   The bottom is a critical point branch (a minimum, or a maximum where two
   wells have merged); the component is bounded by the walls `left_wall`
   (a maximum branch, or the centre when None) and `right_wall` (a maximum
   branch, or the open tail when None). Its energies run from the bottom level
   to the top: a maximum branch, V^inf, or a finite window above the bottom
   when the component never opens.
   """

   potential: object
   interval: object
   bottom: int
   bottom_kind: str
   inner_left: int
   inner_right: int
   left_wall: Optional[int]
   right_wall: Optional[int]
   top: Optional[int]
   top_kind: str
   v_inf: float
   energy_span: float = ENERGY_SPAN
   index: int = 0
   quad_rtol: float = QUAD_RTOL

   def points(self, I2):
      return self.interval.critical_points(self.potential, I2)

   def bottom_point(self, I2):
      return self.points(I2)[self.bottom]

   def bottom_level(self, I2):
      return self.bottom_point(I2).level

   def top_level(self, I2):
      pts = self.points(I2)
      ell = I2 * I2
      p = self.potential
      if self.top_kind == TOP_MAXIMUM:
         top = pts[self.top].level
      elif self.top_kind == TOP_INFINITY:
         top = self.v_inf
      else:
         bottom = pts[self.bottom].level
         top = bottom + self.energy_span * max(abs(bottom), 1.0)
      if self.left_wall is None:
         top = min(top, p(p.r_lo) + ell / (2.0 * p.r_lo**2))
      if self.right_wall is None:
         top = min(top, p(p.r_hi) + ell / (2.0 * p.r_hi**2))
      return float(top)

   def energy_range(self, I2):
      return self.bottom_level(I2), self.top_level(I2)

   def normalize(self, E, I2):
      """Affine map of the energy range at I2 onto (0, 1)."""
      lo, hi = self.energy_range(I2)
      return (E - lo) / (hi - lo)

   def denormalize(self, x, I2):
      lo, hi = self.energy_range(I2)
      return lo + x * (hi - lo)

   def __str__(self):
      lprint = lambda x, y: '%24s: %s\n' % (x, y)
      out = lprint('Chart', self.index)
      out += lprint('Momentum interval', '(%.10g, %.10g)' % (self.interval.lo, self.interval.hi))
      out += lprint('Bottom', '%s (branch %d)' % (self.bottom_kind, self.bottom))
      out += lprint('Walls', '%s / %s' % ('centre' if self.left_wall is None else 'branch %d' % self.left_wall,
                                           'tail' if self.right_wall is None else 'branch %d' % self.right_wall))
      top = 'branch %d' % self.top if self.top_kind == TOP_MAXIMUM else self.top_kind
      out += lprint('Top', top)
      return out


# ---------------------------------------------------------------------------
def _merge_tree(points, v_inf):
   """Charts of a single momentum value from the merge tree of the wells.

   Sweeping the energy upwards, the wells on both sides of a maximum merge at
   its level; a component touching a sink (the open tail above V^inf, or the
   centre when the first critical point is a maximum) stops being bounded.
   """
   n = len(points)
   sink = -1
   comps = {}
   owner = {}
   for i, cp in enumerate(points):
      if cp.kind == MINIMUM:
         cid = len(comps)
         comps[cid] = dict(bottom=i, bottom_kind=MINIMUM, inner_left=i, inner_right=i,
                           left_wall=i - 1 if i > 0 else None, right_wall=i + 1 if i + 1 < n else None,
                           members={i})
         owner[i] = cid

   events = [(cp.level, i) for i, cp in enumerate(points) if cp.kind == MAXIMUM]
   if math.isfinite(v_inf):
      events.append((v_inf, None))
   events.sort(key=lambda e: e[0])

   charts = []
   alive = set(comps)

   def close(cid, top, top_kind):
      chart = dict(comps[cid])
      chart.pop('members')
      charts.append(dict(chart, top=top, top_kind=top_kind))
      alive.discard(cid)
      for m in comps[cid]['members']:
         owner[m] = sink

   for level, i in events:
      if i is None:
         last = n - 1
         if n and points[last].kind == MINIMUM and owner.get(last, sink) in alive:
            close(owner[last], None, TOP_INFINITY)
         continue
      lc = owner.get(i - 1, sink) if i > 0 else sink
      rc = owner.get(i + 1, sink) if i + 1 < n else sink
      if lc in alive and rc in alive:
         left, right = comps[lc], comps[rc]
         members = left['members'] | right['members']
         close(lc, i, TOP_MAXIMUM)
         close(rc, i, TOP_MAXIMUM)
         cid = len(comps)
         comps[cid] = dict(bottom=i, bottom_kind=MAXIMUM, inner_left=left['inner_left'],
                           inner_right=right['inner_right'], left_wall=left['left_wall'],
                           right_wall=right['right_wall'], members=members)
         alive.add(cid)
         for m in members:
            owner[m] = cid
      elif lc in alive:
         close(lc, i, TOP_MAXIMUM)
      elif rc in alive:
         close(rc, i, TOP_MAXIMUM)

   for cid in sorted(alive):
      chart = dict(comps[cid])
      chart.pop('members')
      charts.append(dict(chart, top=None, top_kind=TOP_UNBOUNDED))
   return charts


def build_charts(p, interval, v_inf, energy_span=ENERGY_SPAN, first_index=0, quad_rtol=QUAD_RTOL):
   """All action charts over one momentum interval; quad_rtol is the relative
   tolerance of their radial quadratures."""
   points = interval.critical_points(p, interval.mid)
   charts = []
   for k, desc in enumerate(_merge_tree(points, v_inf)):
      charts.append(ActionChart(p, interval, v_inf=v_inf, energy_span=energy_span, index=first_index + k,
                                quad_rtol=quad_rtol, **desc))
   for chart in charts:
      logger.debug('Built chart\n%s', chart)
   return charts


def build_all_charts(p, intervals, v_inf, energy_span=ENERGY_SPAN, quad_rtol=QUAD_RTOL):
   charts = []
   for interval in intervals:
      charts.extend(build_charts(p, interval, v_inf, energy_span, first_index=len(charts), quad_rtol=quad_rtol))
   return charts


# ---------------------------------------------------------------------------
def turning_points(chart, E, I2):
   """The two roots of V_eff(r, I2^2) = E bounding the chart's component."""
   pts = chart.points(I2)
   bottom = pts[chart.bottom].level
   top = chart.top_level(I2)
   if not bottom <= E <= top:
      raise DomainError('E = %.12g outside the chart energy range (%.12g, %.12g) at I2 = %g' % (E, bottom, top, I2))
   if chart.bottom_kind == MINIMUM and E == bottom:
      r0 = pts[chart.bottom].r0
      return r0, r0

   p = chart.potential
   ell = I2 * I2
   f = lambda r: p(r) + ell / (2.0 * r * r) - E

   a = p.r_lo if chart.left_wall is None else pts[chart.left_wall].r0
   b = pts[chart.inner_left].r0
   c = pts[chart.inner_right].r0
   d = p.r_hi if chart.right_wall is None else pts[chart.right_wall].r0
   fa, fb, fc, fd = f(a), f(b), f(c), f(d)
   if fa < 0.0 or fb > 0.0 or fc > 0.0 or fd < 0.0:
      raise ChartError('Turning points of chart %d not bracketed at E = %.12g, I2 = %g' % (chart.index, E, I2))
   r_min = a if fa == 0.0 else (b if fb == 0.0 else brentq(f, a, b, xtol=1e-300, rtol=RTOL))
   r_max = d if fd == 0.0 else (c if fc == 0.0 else brentq(f, c, d, xtol=1e-300, rtol=RTOL))
   return r_min, r_max


def radial_integrals(chart, E, I2, rows):
   """Radial integrals over one half period, as a dict keyed by row name.

   rows: 'action' (int p dr), 'period' (int dr/p), 'angle' (int dr/(r^2 p)),
   'bar' (int I2 (1/r0^2 - 1/r^2)/p dr, r0 the bottom). The substitution
   r = r_min + (r_max - r_min) sin^2(phi) removes the endpoint square roots.
   """
   r1, r2 = turning_points(chart, E, I2)
   delta = r2 - r1
   if delta <= 0.0:
      return {name: 0.0 for name in rows}, True

   p = chart.potential
   ell = I2 * I2
   pts = chart.points(I2)
   cp = pts[chart.bottom]
   scale = abs(E) + abs(chart.top_level(I2) - cp.level)

   def integrand(phi):
      s = np.sin(phi)
      c = np.cos(phi)
      r = r1 + delta * s * s
      jac = 2.0 * delta * s * c
      q = 2.0 * (E - p(r) - ell / (2.0 * r * r))
      if np.any(q < -NEGATIVE_TOL * scale):
         raise ChartError('Negative kinetic energy %.3g inside chart %d at E = %.12g, I2 = %g'
                          % (q.min(), chart.index, E, I2))
      root = np.sqrt(np.maximum(q, 0.0))
      inv = jac / np.maximum(root, 1e-300)
      out = []
      for name in rows:
         if name == 'action':
            out.append(root * jac)
         elif name == 'period':
            out.append(inv)
         elif name == 'angle':
            out.append(inv / (r * r))
         else:
            out.append(I2 * (1.0 / cp.r0**2 - 1.0 / (r * r)) * inv)
      return np.vstack(out)

   if chart.bottom_kind == MAXIMUM:
      phi0 = math.asin(math.sqrt(min(max((cp.r0 - r1) / delta, 0.0), 1.0)))
      ebar = max(E - cp.level, 0.0)
      width_r = math.sqrt(2.0 * ebar) / cp.lam
      width = 0.1 * width_r / (delta * max(math.sin(2.0 * phi0), 1e-300))
      values, ok = integrate_graded(integrand, 0.0, 0.5 * math.pi, phi0, width, rtol=chart.quad_rtol)
   else:
      values, ok = integrate(integrand, 0.0, 0.5 * math.pi, rtol=chart.quad_rtol)
   return dict(zip(rows, (float(v) for v in values))), ok


# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class ActionPoint:
   I1: float
   I2: float
   E: float
   omega1: float
   omega2: float
   nu: float
   accurate: bool = True


def action_G(chart, E, I2):
   """I1 = G(E, I2) = (1/pi) int sqrt(2 (E - V_eff(r, I2^2))) dr."""
   vals, _ = radial_integrals(chart, E, I2, ('action',))
   return vals['action'] / math.pi


def apsidal_angle(chart, E, I2):
   """Angle swept between consecutive pericentre and apocentre, pi/nu."""
   vals, _ = radial_integrals(chart, E, I2, ('angle',))
   return I2 * vals['angle']


def _stencil(f, x, h, inside):
   """First derivative: central 4-point, or one-sided 3-point (flagged)."""
   if inside(x - 2.0 * h) and inside(x + 2.0 * h):
      return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h), True
   if inside(x + 2.0 * h):
      return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h), False
   if inside(x - 2.0 * h):
      return (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h), False
   raise DomainError('No room for a finite difference step %g at %g' % (h, x))


def _frequencies_difference(chart, E, I2, tol=None):
   tol = chart.quad_rtol if tol is None else tol
   lo, hi = chart.energy_range(I2)
   span = hi - lo
   h_e = max(1e-6 * span, np.cbrt(tol) * span)
   dG_dE, ok_e = _stencil(lambda e: action_G(chart, e, I2), E, h_e, lambda e: lo <= e <= hi)

   def inside(i2):
      if not chart.interval.contains(i2):
         return False
      lo2, hi2 = chart.energy_range(i2)
      return lo2 <= E <= hi2

   h_i = max(1e-6 * I2, np.cbrt(tol) * I2)
   dG_dI2, ok_i = _stencil(lambda i2: action_G(chart, E, i2), I2, h_i, inside)
   omega1 = 1.0 / dG_dE
   return omega1, -dG_dI2 * omega1, ok_e and ok_i


def action_point(chart, E, I2, method='quadrature'):
   """Actions and frequencies at (E, I2).

   The quadrature method writes dG/dE = T/pi and dG/dI2 = -(I2/pi) A with
   T = int dr/p, A = int dr/(r^2 p); then omega1 = pi/T, omega2 = I2 A/T.
   In energy measured from a maximum bottom the same omega2 reads
   -omega1 dG/dI2 + dV0/dI2.
   """
   lo, hi = chart.energy_range(I2)
   if not lo < E <= hi:
      raise DomainError('Frequencies need E strictly above the chart bottom, got E = %.12g (bottom %.12g)' % (E, lo))
   if method == 'quadrature':
      vals, ok = radial_integrals(chart, E, I2, ('action', 'period', 'angle'))
      I1 = vals['action'] / math.pi
      omega1 = math.pi / vals['period']
      omega2 = I2 * vals['angle'] / vals['period']
   elif method == 'difference':
      I1 = action_G(chart, E, I2)
      omega1, omega2, ok = _frequencies_difference(chart, E, I2)
   else:
      raise DomainError('Unknown frequency method %r' % method)
   nu = omega1 / omega2 if omega2 != 0.0 else math.inf
   if not ok:
      logger.warning('Frequencies of chart %d degraded at E = %.12g, I2 = %g', chart.index, E, I2)
   return ActionPoint(I1, I2, E, omega1, omega2, nu, ok)


def frequencies(chart, E, I2, method='quadrature'):
   """Return (omega1, omega2) = (dh/dI1, dh/dI2) at (E, I2)."""
   pt = action_point(chart, E, I2, method)
   return pt.omega1, pt.omega2


# ---------------------------------------------------------------------------
@lru_cache(maxsize=4096)
def _action_range(chart, I2):
   lo, hi = chart.energy_range(I2)
   g_lo = 0.0 if chart.bottom_kind == MINIMUM else action_G(chart, lo, I2)
   g_hi = action_G(chart, hi, I2)
   return lo, hi, g_lo, g_hi


def action_range(chart, I2):
   """(G at the bottom, G at the top) at I2."""
   _, _, g_lo, g_hi = _action_range(chart, I2)
   return g_lo, g_hi


def invert_h(chart, I1, I2):
   """Energy E = h(I1, I2) solving G(E, I2) = I1 (G increases with E)."""
   lo, hi, g_lo, g_hi = _action_range(chart, I2)
   if not g_lo <= I1 <= g_hi:
      raise DomainError('I1 = %g outside the chart action range (%g, %g) at I2 = %g' % (I1, g_lo, g_hi, I2))
   if I1 == g_lo:
      return lo
   if I1 == g_hi:
      return hi
   return brentq(lambda e: action_G(chart, e, I2) - I1, lo, hi, xtol=1e-300, rtol=RTOL)


def initial_state(chart, I1, I2, inclination=0.0):
   """Cartesian (x, p) at the inner turning point of the torus (I1, I2); the
   orbital plane is tilted by `inclination` about the x axis."""
   E = invert_h(chart, I1, I2)
   r_min, _ = turning_points(chart, E, I2)
   v = I2 / r_min
   return np.array([r_min, 0.0, 0.0, 0.0, v * math.cos(inclination), v * math.sin(inclination)])


def action_grid(chart, n1, n2, momentum_fractions=(0.1, 0.9), energy_fractions=(0.1, 0.9), method='quadrature'):
   """ActionPoints on an n2 x n1 grid of (I2, normalized energy)."""
   lo, hi = chart.interval.lo, chart.interval.hi
   rows = []
   for f2 in np.linspace(*momentum_fractions, n2):
      I2 = lo + f2 * (hi - lo)
      rows.append([action_point(chart, chart.denormalize(x, I2), I2, method)
                   for x in np.linspace(*energy_fractions, n1)])
   return rows


# ---------------------------------------------------------------------------
@dataclass
class LogAsymptotics:
   """Fit of I1(Ebar) = -(Ebar + q Ebar^2)/(pi lambda) ln Ebar + G1(Ebar) at a
   maximum bottom, G1 a quadratic in Ebar."""

   I2: float
   Lambda_leading: float
   q: float
   lambda_fit: float
   lambda_curvature: float
   I10: float
   I10_direct: float
   residual: float
   Ebar: np.ndarray
   I1: np.ndarray
   coefficients: tuple = ()
   span: float = 1.0

   @property
   def lambda_check(self):
      return self.lambda_fit

   @property
   def lambda_error(self):
      return abs(self.lambda_fit / self.lambda_curvature - 1.0)

   def W1_at(self, ebar):
      """W1 = 1/(dI1/dEbar) of the fitted form at ebar."""
      c0, c1, _, c3, c4 = self.coefficients
      x = ebar / self.span
      lx = math.log(x)
      slope = -c0 * (lx + 1.0) - c1 * x * (2.0 * lx + 1.0) + c3 + 2.0 * c4 * x
      return self.span / slope

   def as_dict(self):
      return {'I2': self.I2, 'Lambda_leading': self.Lambda_leading, 'q': self.q, 'lambda_fit': self.lambda_fit,
              'lambda_curvature': self.lambda_curvature, 'I10': self.I10, 'I10_direct': self.I10_direct,
              'residual': self.residual}


def fit_log_asymptotics(chart, I2, E_samples=None, residual_tol=LOG_RESIDUAL):
   """Least-squares fit of the logarithmic behaviour of I1 above a maximum.

   E_samples are energies Ebar above the bottom (default: geometric from
   1e-3 to 1e-8 of the energy range, floored at 1e-9 of it).
   """
   if chart.bottom_kind != MAXIMUM:
      raise DomainError('Logarithmic asymptotics need a chart bottomed by a maximum')
   cp = chart.bottom_point(I2)
   lo, hi = chart.energy_range(I2)
   span = hi - lo
   if E_samples is None:
      ebar = span * np.geomspace(LOG_WINDOW[0], LOG_WINDOW[1], 24)
   else:
      ebar = np.asarray(E_samples, dtype=float)
   ebar = ebar[ebar >= 1e-9 * span]
   if len(ebar) < 8:
      raise DomainError('Logarithmic fit needs at least 8 samples above the floor')

   I1 = np.array([action_G(chart, lo + e, I2) for e in ebar])
   x = ebar / span
   basis = np.column_stack([-x * np.log(x), -x * x * np.log(x), np.ones_like(x), x, x * x])
   norms = np.abs(basis).max(axis=0)
   coef, *_ = np.linalg.lstsq(basis / norms, I1, rcond=None)
   coef = coef / norms
   fitted = basis @ coef

   a_lead = coef[0] / span
   result = LogAsymptotics(I2=I2, Lambda_leading=a_lead, q=coef[1] / (coef[0] * span),
                           lambda_fit=1.0 / (math.pi * a_lead), lambda_curvature=cp.lam, I10=coef[2],
                           I10_direct=action_G(chart, lo, I2),
                           residual=float(np.sqrt(np.mean((fitted - I1) ** 2)) / max(abs(coef[2]), 1e-300)),
                           Ebar=ebar, I1=I1, coefficients=tuple(float(c) for c in coef), span=float(span))
   logger.info('Log fit at I2 = %g: lambda %.8g (curvature %.8g), I10 %.10g (direct %.10g)', I2,
               result.lambda_fit, result.lambda_curvature, result.I10, result.I10_direct)
   if result.residual > residual_tol:
      raise AsymptoticsMismatch('Logarithmic fit residual %.3g exceeds %.3g at I2 = %g'
                                % (result.residual, residual_tol, I2))
   if result.lambda_error > 0.01:
      logger.warning('Fitted lambda differs from the curvature by %.2g%%', 100 * result.lambda_error)
   return result
