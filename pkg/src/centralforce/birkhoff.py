#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""
CENTRALFORCE: Action-angle analysis of central force Hamiltonians

birkhoff file. Contains the expansion nu = nu0 + nu1 I1 + nu2 I1^2 + ... of
the frequency ratio about a stable circular orbit, written in terms of
g = r V''/V' and its derivatives, the right-hand sides G1, G2 of the
degeneracy equations, a numeric check of the expansion against the action
integrals and the scan for the homogeneous exponents whose orbits are all
closed.

In the formulas below a = r0 g', b = r0^2 g'', c = r0^3 g''', d = r0^4 g''''.

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .actions import action_point
from .errors import DomainError, SingularPointError, TranscriptionError
from .potentials import g_derivatives, make_builtin
from .util import MINIMUM

logger = logging.getLogger(__name__)

FD_STEP = 1e-4
FIT_WINDOW = (1e-5, 1e-3)
FIT_TOLERANCES = (1e-3, 1e-2, 5e-2)
SCAN_RADII = (0.5, 1.0, 2.0)
ROOT_XTOL = 1e-12
COMPLEX_STEP = 1e-30


# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class CircularOrbitData:
   """Local data of the potential at a circular orbit of radius r0."""

   r0: float
   Vp: float
   g0: float
   g1: float = 0.0
   g2: float = 0.0
   g3: float = 0.0
   g4: float = 0.0

   def __post_init__(self):
      if not self.r0 > 0.0 or not self.Vp > 0.0:
         raise DomainError('Circular orbit data needs r0 > 0 and V\'(r0) > 0, got r0 = %g, V\' = %g'
                           % (self.r0, self.Vp))

   @classmethod
   def homogeneous(cls, exponent, r0=1.0, Vp=1.0):
      """Data of V' = k r^exponent, for which g is the constant exponent."""
      return cls(r0, Vp, exponent)

   @property
   def R(self):
      """dr0/dI2 along the branch of circular orbits."""
      return 2.0 / ((3.0 + self.g0) * math.sqrt(self.r0 * self.Vp))

   @property
   def a(self):
      return self.r0 * self.g1

   @property
   def b(self):
      return self.r0**2 * self.g2

   @property
   def c(self):
      return self.r0**3 * self.g3

   @property
   def d(self):
      return self.r0**4 * self.g4

   def __str__(self):
      lprint = lambda x, y: '%24s: %s\n' % (x, y)
      out = lprint('r0', self.r0)
      out += lprint('V\'(r0)', self.Vp)
      for k, value in enumerate((self.g0, self.g1, self.g2, self.g3, self.g4)):
         out += lprint('g' + "'" * k, value)
      return out


def circular_orbit_data(p, r0):
   """Evaluate V' and g, ..., g'''' at r0 from the analytic derivatives of p."""
   try:
      g = g_derivatives(p, r0, order=4)
   except SingularPointError as err:
      raise DomainError(str(err)) from err
   data = CircularOrbitData(float(r0), float(p.derivative(r0, 1)), *(float(x) for x in g))
   if 3.0 + data.g0 <= 0.0:
      raise DomainError('3 + g = %g <= 0 at r0 = %g: not a stable circular orbit' % (3.0 + data.g0, r0))
   return data


# ---------------------------------------------------------------------------
# numerators, written out term by term


def nu1_numerator(g, a, b):
   return 36 + 9*b - g**2*(a + 26) + g*(3*b + 7*a + 6) + 30*a - 5*a**2 - 2*g**4 - 14*g**3


def nu2_numerator(g, a, b, c, d):
   return (-235*a**4 + 2604*a**3 + 4*g**6*(17*a + 759) + g**5*(-84*b + 600*a + 13408)
           + 54*a**2*(25*b - 142) - 27*(17*b**2 - 456*b - 24*(d + 12*c - 62))
           + g**4*(-48*c - 1344*b + 129*a**2 + 624*a + 33500) - 108*a*(14*c + 101*b + 260)
           + 2*g**3*(699*a**2 + a*(81*b - 4732) + 12*(d - 6*c - 296*b + 1705))
           - g**2*(94*a**3 - 4053*a**2 + 3*(17*b**2 + 4680*b - 36*(2*d + 12*c + 11))
                   + 12*a*(14*c + 20*b + 3291))
           + 2*g*(293*a**3 + 9*a**2*(25*b + 28) - 9*(-36*d - 360*c + 17*b**2 + 198*b + 2904)
                  - 9*a*(56*c + 323*b + 3216))
           + 20*g**8 + 376*g**7)


# the same numerators as polynomials in g, coefficients lowest degree first


def nu1_numerator_horner(g, a, b):
   coefs = (36 + 9*b + 30*a - 5*a*a,
            6 + 3*b + 7*a,
            -(a + 26),
            -14,
            -2)
   return _horner(coefs, g)


def nu2_numerator_horner(g, a, b, c, d):
   a2, a3 = a * a, a * a * a
   coefs = (-235*a2*a2 + 2604*a3 + 1350*a2*b - 7668*a2 - 459*b*b + 12312*b + 648*d + 7776*c - 40176
            - 1512*a*c - 10908*a*b - 28080*a,
            586*a3 + 450*a2*b + 504*a2 + 648*d + 6480*c - 306*b*b - 3564*b - 52272 - 1008*a*c
            - 5814*a*b - 57888*a,
            -94*a3 + 4053*a2 - 51*b*b - 14040*b + 216*d + 1296*c + 1188 - 168*a*c - 240*a*b - 39492*a,
            1398*a2 + 162*a*b - 9464*a + 24*d - 144*c - 7104*b + 40920,
            -48*c - 1344*b + 129*a2 + 624*a + 33500,
            -84*b + 600*a + 13408,
            68*a + 3036,
            376,
            20)
   return _horner(coefs, g)


def _horner(coefs, x):
   acc = 0.0 * x
   for coef in reversed(coefs):
      acc = acc * x + coef
   return acc


def _denominators(data):
   s = data.g0 + 3.0
   den1 = 24.0 * data.r0**1.5 * s * s * math.sqrt(data.Vp)
   den2 = 2304.0 * data.r0**3 * s**4.5 * data.Vp
   return den1, den2


def nu_coefficients(data):
   """Return (nu0, nu1, nu2) at a stable circular orbit."""
   if 3.0 + data.g0 <= 0.0:
      raise DomainError('3 + g = %g <= 0: not a stable circular orbit' % (3.0 + data.g0))
   den1, den2 = _denominators(data)
   nu0 = math.sqrt(3.0 + data.g0)
   nu1 = nu1_numerator(data.g0, data.a, data.b) / den1
   nu2 = nu2_numerator(data.g0, data.a, data.b, data.c, data.d) / den2
   return nu0, nu1, nu2


def nu_coefficients_horner(data):
   """nu_coefficients evaluated through the Horner forms in g."""
   if 3.0 + data.g0 <= 0.0:
      raise DomainError('3 + g = %g <= 0: not a stable circular orbit' % (3.0 + data.g0))
   den1, den2 = _denominators(data)
   nu0 = math.sqrt(3.0 + data.g0)
   nu1 = nu1_numerator_horner(data.g0, data.a, data.b) / den1
   nu2 = nu2_numerator_horner(data.g0, data.a, data.b, data.c, data.d) / den2
   return nu0, nu1, nu2


def cleared_residual(g, a=0.0, b=0.0):
   """nu1 - G1 multiplied by 24 r0^(3/2) (g+3)^2 sqrt(V').

   G1 = g'/((3+g) sqrt(r0 V')) in closed form, hence the term 24 a (g+3).
   For constant g this is -2 (g-1)(g+2)(g+3)^2.
   """
   return nu1_numerator(g, a, b) - 24 * a * (g + 3)


def transcription_fuzz(n=100, seed=0, rtol=1e-12):
   """Compare both evaluations of nu1, nu2 on random data.

   g is drawn in (-3, 2], the scaled derivatives a..d in [-10, 10], r0 in
   [0.1, 10] and V' in (0, 10]. The discrepancy is measured against the
   size of the largest term of the numerators. Returns the largest scaled
   discrepancy; raises TranscriptionError above rtol.
   """
   rng = np.random.default_rng(seed)
   worst = 0.0
   for _ in range(n):
      g = rng.uniform(-3.0, 2.0)
      if g == -3.0:
         g = 2.0
      r0 = rng.uniform(0.1, 10.0)
      vp = rng.uniform(1e-3, 10.0)
      a, b, c, d = rng.uniform(-10.0, 10.0, size=4)
      data = CircularOrbitData(r0, vp, g, a / r0, b / r0**2, c / r0**3, d / r0**4)
      one = np.array(nu_coefficients(data))
      two = np.array(nu_coefficients_horner(data))
      den1, den2 = _denominators(data)
      size = 1.0 + abs(g) + abs(a) + abs(b) + abs(c) + abs(d)
      scale = np.array([1.0, 5e2 * (1.0 + abs(g))**4 * size**2 / den1, 5e4 * (1.0 + abs(g))**8 * size**4 / den2])
      worst = max(worst, float(np.max(np.abs(one - two) / scale)))
   logger.info('Transcription fuzz over %d samples: largest scaled discrepancy %.3g', n, worst)
   if worst > rtol:
      raise TranscriptionError('Evaluations of nu1, nu2 disagree by %.3g (scaled) on random data' % worst)
   return worst


# ---------------------------------------------------------------------------
def _four_point(values, h):
   fm2, fm1, fp1, fp2 = values
   return (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h)


@dataclass(frozen=True)
class ConsistencyTerms:
   """Right-hand sides of the degeneracy equations and their residuals."""

   r0: float
   nu0: float
   nu1: float
   nu2: float
   G1: float
   G2: float
   G1_closed: float
   accurate: bool

   @property
   def res1(self):
      return self.nu1 - self.G1

   @property
   def res2(self):
      return self.nu2 - self.G2

   def as_dict(self):
      return {'r0': self.r0, 'nu0': self.nu0, 'nu1': self.nu1, 'nu2': self.nu2, 'G1': self.G1, 'G2': self.G2,
              'G1_closed': self.G1_closed, 'res1': self.res1, 'res2': self.res2, 'accurate': self.accurate}


def rhs_G1_G2(p, r0, step=FD_STEP):
   """G1 = R nu0 dnu0/dr0 and G2 = (R/2)(nu1 dnu0/dr0 + nu0 dnu1/dr0).

   The r0 derivatives are 4-point central differences with step step*r0 of
   nu0, nu1 evaluated from the analytic derivatives at the displaced radii.
   They are flagged inaccurate when they disagree with the 2-point
   differences by more than 1e-4 relative.
   """
   data = circular_orbit_data(p, r0)
   nu0, nu1, nu2 = nu_coefficients(data)
   h = step * r0
   shifted = [nu_coefficients(circular_orbit_data(p, r0 + k * h))[:2] for k in (-2, -1, 1, 2)]
   n0 = [s[0] for s in shifted]
   n1 = [s[1] for s in shifted]
   dnu0 = _four_point(n0, h)
   dnu1 = _four_point(n1, h)

   accurate = True
   for four, vals in ((dnu0, n0), (dnu1, n1)):
      two = (vals[2] - vals[1]) / (2.0 * h)
      scale = max(abs(four), abs(nu0) / r0, 1e-300)
      if abs(four - two) > 1e-4 * scale:
         accurate = False
   if not accurate:
      logger.warning('Finite differences of nu0, nu1 at r0 = %g are inaccurate', r0)

   R = data.R
   G1 = R * nu0 * dnu0
   G2 = 0.5 * R * (nu1 * dnu0 + nu0 * dnu1)
   G1_closed = data.g1 / ((3.0 + data.g0) * math.sqrt(data.r0 * data.Vp))
   return ConsistencyTerms(float(r0), nu0, nu1, nu2, G1, G2, G1_closed, accurate)


# ---------------------------------------------------------------------------
@dataclass
class ExpansionCheck:
   I2: float
   r0: float
   closed: tuple
   fitted: tuple
   half_window: tuple
   window: tuple
   condition: float
   agree: tuple
   inconclusive: bool = False

   def as_dict(self):
      return {'I2': self.I2, 'r0': self.r0, 'closed_form': list(self.closed), 'fitted': list(self.fitted),
              'half_window_fit': list(self.half_window), 'window': list(self.window),
              'condition': self.condition, 'agree': list(self.agree), 'inconclusive': self.inconclusive}


def _fit(I1, nu, scale):
   x = I1 / scale
   A = np.vander(x, 4, increasing=True)
   coef, _, _, sv = np.linalg.lstsq(A, nu, rcond=None)
   cond = float(sv[0] / sv[-1]) if sv[-1] > 0.0 else math.inf
   return tuple(float(coef[k] / scale**k) for k in range(3)), cond


def numeric_expansion_check(chart, I2, window=FIT_WINDOW, n=24, tolerances=FIT_TOLERANCES, max_shrink=3):
   """Fit nu(I1) at fixed I2 by a cubic in I1 over window*I2 and compare the
   first three coefficients with nu_coefficients.

   A second fit over the lower half of the window estimates the truncation
   error. The window shrinks when the fit is ill-conditioned; after
   max_shrink attempts the check is flagged inconclusive.
   """
   if chart.bottom_kind != MINIMUM:
      raise DomainError('Expansion check needs a chart bottomed by a minimum')
   cp = chart.bottom_point(I2)
   data = circular_orbit_data(chart.potential, cp.r0)
   closed = nu_coefficients(data)
   omega_r = math.sqrt(cp.curvature)
   e_lo, e_hi = chart.energy_range(I2)

   lo, hi = window
   for attempt in range(max_shrink + 1):
      targets = np.linspace(lo, hi, n) * I2
      ebar = np.minimum(targets * omega_r, 0.5 * (e_hi - e_lo))
      points = [action_point(chart, e_lo + e, I2) for e in ebar]
      I1 = np.array([pt.I1 for pt in points])
      nu = np.array([pt.nu for pt in points])
      fitted, cond = _fit(I1, nu, hi * I2)
      half, _ = _fit(I1[: n // 2 + 1], nu[: n // 2 + 1], hi * I2)
      if cond <= 1e10:
         break
      logger.debug('Fit condition %.3g at window (%g, %g); shrinking', cond, lo, hi)
      lo, hi = 0.5 * lo, 0.5 * hi
   inconclusive = cond > 1e10

   agree = []
   for k, (c_val, f_val, tol) in enumerate(zip(closed, fitted, tolerances)):
      scale = max(abs(c_val), abs(closed[0]) / I2**k)
      agree.append(bool(abs(f_val - c_val) <= tol * scale))
   report = ExpansionCheck(I2, cp.r0, tuple(closed), fitted, half, (lo, hi), cond, tuple(agree), inconclusive)
   logger.info('Expansion check at I2 = %g: closed %s, fitted %s', I2, closed, fitted)
   return report


# ---------------------------------------------------------------------------
@dataclass
class ExponentReport:
   scan: tuple
   step: float
   roots: list
   excluded: dict = field(default_factory=dict)
   res2: dict = field(default_factory=dict)
   r0_spread: float = 0.0

   @property
   def admissible(self):
      return [c for c in self.roots if c not in self.excluded]

   def as_dict(self):
      return {'scan': list(self.scan), 'step': self.step, 'roots': self.roots, 'admissible': self.admissible,
              'excluded': {repr(k): v for k, v in self.excluded.items()},
              'res2_at_roots': {repr(k): v for k, v in self.res2.items()}, 'r0_spread': self.r0_spread}


def homogeneous_potential(exponent):
   """A potential with V' = r^exponent, so that g is the constant exponent."""
   if abs(exponent + 1.0) < 1e-9:
      return make_builtin('log', {'k': 1.0}, r_range=(1e-2, 1e2))
   return make_builtin('power_law', {'k': 1.0, 'c': float(exponent)}, r_range=(1e-2, 1e2))


def _r0_spread(exponent):
   p = homogeneous_potential(exponent)
   vals = []
   for r0 in SCAN_RADII:
      g = g_derivatives(p, r0, order=1)
      vals.append(cleared_residual(g[0], r0 * g[1]))
   ref = cleared_residual(float(exponent))
   return max(abs(v - ref) for v in vals) / (1.0 + abs(ref))


def _refine(f, a, b, fa, fb):
   if fa == 0.0:
      return a
   if fb == 0.0:
      return b
   return brentq(f, a, b, xtol=ROOT_XTOL, rtol=4.0 * np.finfo(float).eps)


def find_degenerate_exponents(scan=(-3.5, 2.0), step=1e-3, check_every=50, tol=1e-8):
   """Constant exponents g = c for which nu1 = G1.

   The cleared residual is scanned on a grid; sign changes are refined by
   Brent's method, and tangent roots through the sign changes of its
   derivative (complex step) where the residual itself vanishes. Every
   check_every-th node the residual is recomputed from a homogeneous
   potential at three radii; a spread above tol raises TranscriptionError.
   """
   lo, hi = scan
   if lo > -3.5 or hi < 2.0:
      raise DomainError('Exponent scan must cover [-3.5, 2], got (%g, %g)' % (lo, hi))
   if not 0.0 < step <= 1e-3:
      raise DomainError('Exponent scan step must be in (0, 1e-3], got %g' % step)

   nodes = np.linspace(lo, hi, int(math.ceil((hi - lo) / step)) + 1)
   res = cleared_residual(nodes)
   slope_f = lambda c: (cleared_residual(complex(c, COMPLEX_STEP))).imag / COMPLEX_STEP
   slope = np.array([slope_f(c) for c in nodes])
   scale = 1.0 + np.max(np.abs(res))

   spread = 0.0
   for c in nodes[::check_every]:
      spread = max(spread, _r0_spread(c))
   if spread > tol:
      raise TranscriptionError('Cleared residual depends on r0 (spread %.3g) for homogeneous potentials' % spread)

   candidates = []
   for i in range(len(nodes) - 1):
      if res[i] * res[i + 1] <= 0.0 and not (res[i] == 0.0 and i > 0 and res[i - 1] == 0.0):
         candidates.append(_refine(cleared_residual, nodes[i], nodes[i + 1], res[i], res[i + 1]))
      if slope[i] * slope[i + 1] < 0.0:
         c = _refine(slope_f, nodes[i], nodes[i + 1], slope[i], slope[i + 1])
         if abs(cleared_residual(c)) <= 1e-9 * scale:
            candidates.append(c)

   roots = []
   for c in sorted(candidates):
      if not roots or c - roots[-1] > 1e-7:
         roots.append(float(c))
   spread = max([spread] + [_r0_spread(c) for c in roots])

   report = ExponentReport((lo, hi), step, roots, r0_spread=spread)
   for c in roots:
      if 3.0 + c <= 1e-7:
         # r^3 V' is constant: no strict maximum above ell*
         report.excluded[c] = 'fails H2 (nu0 = 0)'
         continue
      terms = rhs_G1_G2(homogeneous_potential(c), 1.0)
      report.res2[c] = terms.res2
   logger.info('Degenerate exponents in (%g, %g): %s', lo, hi, roots)
   return report
