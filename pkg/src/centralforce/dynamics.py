#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""
CENTRALFORCE: Action-angle analysis of central force Hamiltonians

dynamics file. Contains the perturbations P(x), a batched kick-drift-kick
leapfrog for H + eps P in Cartesian coordinates, the drift of |L| and H along
the flow, sweeps over eps and the fast-slow system
(1/eps) H(x, p) + |ps|^2/2 + Omega^2 |xs|^2/2 + kappa xs_1 |x|^2.

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, DomainError
from .util import coupling_kinds, perturbation_defaults, perturbation_kinds

logger = logging.getLogger(__name__)

STEP_FACTOR = 0.05
SHELL = (0.1, 10.0)
HORIZON_PERIODS = 1e6
SAMPLES = 1000


# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class Perturbation:
   """Analytic perturbation P(x) with its gradient, for (m, 3) arrays."""

   kind: str
   params: dict = field(default_factory=dict, hash=False, compare=False)

   def value(self, x):
      a = self.params.get('amplitude', 1.0)
      if self.kind == 'anisotropic_quadratic':
         return a * (x[:, 0] ** 2 - x[:, 1] ** 2)
      if self.kind == 'central':
         return a * np.sum(x * x, axis=1)
      if self.kind == 'fixed_dipole':
         rho = np.maximum(np.linalg.norm(x, axis=1), self.params['r_floor'])
         return a * x[:, 0] / rho**3
      diff = x[:, None, :] - self._centers()[None, :, :]
      bumps = np.exp(-0.5 * np.sum(diff * diff, axis=2) / self.params['width'] ** 2)
      return bumps @ self._amplitudes()

   def gradient(self, x):
      a = self.params.get('amplitude', 1.0)
      grad = np.zeros_like(x)
      if self.kind == 'anisotropic_quadratic':
         grad[:, 0] = 2.0 * a * x[:, 0]
         grad[:, 1] = -2.0 * a * x[:, 1]
      elif self.kind == 'central':
         grad = 2.0 * a * x
      elif self.kind == 'fixed_dipole':
         r = np.linalg.norm(x, axis=1)
         floor = self.params['r_floor']
         inside = r <= floor
         rs = np.where(inside, 1.0, r)
         grad = -3.0 * a * (x[:, 0] / rs**5)[:, None] * x
         grad[:, 0] += a / rs**3
         grad[inside] = 0.0
         grad[inside, 0] = a / floor**3
      else:
         w2 = self.params['width'] ** 2
         diff = x[:, None, :] - self._centers()[None, :, :]
         bumps = np.exp(-0.5 * np.sum(diff * diff, axis=2) / w2) * self._amplitudes()[None, :]
         grad = -np.einsum('mk,mkj->mj', bumps, diff) / w2
      return grad

   def _centers(self):
      return np.asarray(self.params['centers'], dtype=float).reshape(-1, 3)

   def _amplitudes(self):
      return np.asarray(self.params['amplitudes'], dtype=float)

   def __str__(self):
      return '%s: %s' % (self.kind, perturbation_kinds[self.kind])


def make_perturbation(kind, params=None, seed=None):
   """Build a perturbation, filling in the default parameters.

   A user_grid without `centers` draws n_bumps centres uniformly in the cube
   [-extent, extent]^3 and unit amplitudes from the generator seeded by seed.
   """
   if kind not in perturbation_kinds:
      raise ConfigurationError('Unknown perturbation kind %r (expected one of %s)'
                               % (kind, ', '.join(sorted(perturbation_kinds))), 'kind')
   params = dict(params or {})
   allowed = set(perturbation_defaults[kind]) | ({'centers', 'amplitudes'} if kind == 'user_grid' else set())
   for key in params:
      if key not in allowed:
         raise ConfigurationError('Unknown parameter %r for perturbation %s' % (key, kind), key)
   values = dict(perturbation_defaults[kind])
   values.update(params)

   if kind == 'user_grid':
      if 'centers' not in values:
         rng = np.random.default_rng(seed)
         n = int(values['n_bumps'])
         values['centers'] = rng.uniform(-values['extent'], values['extent'], size=(n, 3)).tolist()
      centers = np.asarray(values['centers'], dtype=float)
      if centers.ndim != 2 or centers.shape[1] != 3:
         raise ConfigurationError('user_grid centers must be a list of 3-vectors', 'centers')
      values.setdefault('amplitudes', [1.0] * len(centers))
      if len(values['amplitudes']) != len(centers):
         raise ConfigurationError('user_grid needs one amplitude per centre', 'amplitudes')
      if values['width'] <= 0.0:
         raise ConfigurationError('user_grid width must be positive', 'width')
   if kind == 'fixed_dipole' and values['r_floor'] <= 0.0:
      raise ConfigurationError('fixed_dipole r_floor must be positive', 'r_floor')
   return Perturbation(kind, values)


@dataclass(frozen=True)
class FastSlowCoupling:
   """Slow oscillator of dimension n coupled to the fast system through |x|."""

   kind: str = 'harmonic_slow'
   n: int = 1
   omega: float = 1.0
   kappa: float = 0.1

   def __post_init__(self):
      if self.kind not in coupling_kinds:
         raise ConfigurationError('Unknown coupling kind %r (expected one of %s)'
                                  % (self.kind, ', '.join(sorted(coupling_kinds))), 'kind')
      if self.n < 1:
         raise ConfigurationError('Slow subsystem needs n >= 1, got %d' % self.n, 'n')

   @property
   def strength(self):
      return 0.0 if self.kind == 'decoupled' else self.kappa


# ---------------------------------------------------------------------------
@dataclass(eq=False)
class DriftRecord:
   times: np.ndarray
   L_abs: np.ndarray
   H_vals: np.ndarray
   eps: float
   max_drift_L: float
   max_drift_H: float
   energy_error: float
   escaped: bool = False
   escape_time: float = math.nan
   max_tilt: float = 0.0

   def as_dict(self):
      return {'eps': self.eps, 'max_drift_L': self.max_drift_L, 'max_drift_H': self.max_drift_H,
              'energy_error': self.energy_error, 'escaped': self.escaped, 'escape_time': self.escape_time,
              'max_tilt': self.max_tilt, 'samples': len(self.times),
              'T': float(self.times[-1]) if len(self.times) else 0.0}

   def rows(self):
      return [(self.eps, t, L, H) for t, L, H in zip(self.times, self.L_abs, self.H_vals)]


def angular_momentum(x, p):
   return np.linalg.norm(np.cross(x, p), axis=-1)


def plane_tilt(x, p, normal):
   """Component of L = x ^ p transverse to the unit vector normal."""
   L = np.cross(x, p)
   return np.linalg.norm(L - (L @ normal)[..., None] * normal, axis=-1)


def _plane_normal(x0p0):
   L0 = np.cross(x0p0[:3], x0p0[3:6])
   norm = np.linalg.norm(L0)
   return L0 / norm if norm > 0.0 else np.array([0.0, 0.0, 1.0])


def energy(pot, x, p):
   """Unperturbed H = |p|^2/2 + V(|x|) for (m, 3) arrays."""
   return 0.5 * np.sum(p * p, axis=-1) + pot(np.linalg.norm(x, axis=-1))


def max_frequency(pot, x0p0):
   """Largest of the radial, angular and central frequencies at the initial
   point: sqrt|V'' + 3 L^2/r^4|, L/r^2, sqrt|V'/r|."""
   z = np.asarray(x0p0, dtype=float)
   x, p = z[:3], z[3:6]
   r = float(np.linalg.norm(x))
   L = float(np.linalg.norm(np.cross(x, p)))
   return max(math.sqrt(abs(pot.derivative(r, 2) + 3.0 * L * L / r**4)), L / r**2,
              math.sqrt(abs(pot.derivative(r, 1) / r)))


def default_time_step(pot, x0p0):
   return STEP_FACTOR / max_frequency(pot, x0p0)


def default_horizon(pot, x0p0):
   """Fixed horizon 1e6/omega0 with omega0 the fastest frequency at x0p0."""
   return HORIZON_PERIODS / max_frequency(pot, x0p0)


def default_shell(x0p0):
   r = float(np.linalg.norm(np.asarray(x0p0, dtype=float)[:3]))
   return SHELL[0] * r, SHELL[1] * r


# ---------------------------------------------------------------------------
def _leapfrog(q, p, force, scale, dt, nsteps, stride, observe, outside):
   """Kick-drift-kick steps of a batch of trajectories.

   force(q) is -dH/dq, scale the factor of p in dq/dt and outside(q) the mask
   of rows beyond the shell. Rows that leave the shell are frozen. Returns
   (times, observations, escape_step).
   """
   m = q.shape[0]
   active = np.ones(m, dtype=bool)
   escape_step = np.full(m, -1)
   times = [0.0]
   samples = [observe(q, p)]
   f = force(q)
   for step in range(1, nsteps + 1):
      p[active] += 0.5 * dt * f[active]
      q[active] += dt * scale * p[active]
      f = force(q)
      p[active] += 0.5 * dt * f[active]
      out = outside(q) & active
      if np.any(out):
         escape_step[out] = step
         active &= ~out
      if step % stride == 0 or step == nsteps:
         times.append(step * dt)
         samples.append(observe(q, p))
      if not np.any(active):
         break
   return np.array(times), [np.array(s) for s in zip(*samples)], escape_step


def _check_step(pot, x0p0, dt):
   if dt is None:
      return default_time_step(pot, x0p0)
   if dt <= 0.0:
      raise DomainError('Time step must be positive, got %g' % dt)
   if dt * max_frequency(pot, x0p0) > STEP_FACTOR * (1.0 + 1e-12):
      raise DomainError('Time step %g does not resolve the fastest frequency %g' % (dt, max_frequency(pot, x0p0)))
   return dt


def _records(times, obs, escape_step, eps_values, dt):
   L, H, Heps, tilt = obs
   records = []
   for k, eps in enumerate(eps_values):
      n = len(times)
      escaped = escape_step[k] >= 0
      if escaped:
         n = int(np.searchsorted(times, escape_step[k] * dt - 0.5 * dt))
         n = max(n, 1)
      records.append(DriftRecord(times[:n], L[:n, k], H[:n, k], float(eps),
                                 float(np.max(np.abs(L[:n, k] - L[0, k]))),
                                 float(np.max(np.abs(H[:n, k] - H[0, k]))),
                                 float(np.max(np.abs(Heps[:n, k] - Heps[0, k]))),
                                 bool(escaped), float(escape_step[k] * dt) if escaped else math.nan,
                                 float(np.max(tilt[:n, k]))))
   return records


def integrate_batch(pot, pert, eps_values, x0p0, T, dt=None, shell=None, n_samples=SAMPLES):
   """Integrate H + eps P from the same initial datum for each eps at once."""
   eps = np.asarray(eps_values, dtype=float)
   z = np.asarray(x0p0, dtype=float)
   if z.shape != (6,):
      raise DomainError('Initial datum must be a 6-vector, got shape %s' % (z.shape,))
   if T <= 0.0:
      raise DomainError('Horizon must be positive, got %g' % T)
   dt = _check_step(pot, z, dt)
   nsteps = int(math.ceil(T / dt))
   dt = T / nsteps
   stride = max(1, nsteps // n_samples)
   r_in, r_out = shell if shell is not None else default_shell(z)

   q = np.tile(z[:3], (len(eps), 1))
   p = np.tile(z[3:], (len(eps), 1))

   def force(x):
      r = np.linalg.norm(x, axis=1)
      return -(pot.derivative(r, 1) / r)[:, None] * x - eps[:, None] * pert.gradient(x)

   normal = _plane_normal(z)

   def observe(x, v):
      H = energy(pot, x, v)
      return angular_momentum(x, v), H, H + eps * pert.value(x), plane_tilt(x, v, normal)

   def outside(x):
      r = np.linalg.norm(x, axis=1)
      return (r < r_in) | (r > r_out)

   logger.debug('Leapfrog: %d steps of %g for eps %s', nsteps, dt, eps)
   times, obs, escape_step = _leapfrog(q, p, force, 1.0, dt, nsteps, stride, observe, outside)
   records = _records(times, obs, escape_step, eps, dt)
   for rec in records:
      if rec.escaped:
         logger.warning('Trajectory with eps = %g left the shell (%g, %g) at t = %g', rec.eps, r_in, r_out,
                        rec.escape_time)
   return records


def integrate_perturbed(pot, pert, eps, x0p0, T, dt=None, shell=None, n_samples=SAMPLES):
   """Drift of |L| and H along H + eps P over (0, T).

   The step defaults to 0.05/omega_max at the initial point; trajectories
   leaving the shell (default (0.1 r, 10 r) about the initial radius) stop
   and record the escape time.
   """
   return integrate_batch(pot, pert, [eps], x0p0, T, dt, shell, n_samples)[0]


def reverse_check(pot, pert, eps, x0p0, T, dt=None):
   """Integrate over T, flip the momenta, integrate over T and flip again.

   Returns the largest deviation from x0p0 relative to max(|x0|, |p0|).
   """
   z = np.asarray(x0p0, dtype=float)
   dt = _check_step(pot, z, dt)
   nsteps = int(math.ceil(T / dt))
   dt = T / nsteps
   q = z[None, :3].copy()
   p = z[None, 3:].copy()
   e = np.array([eps], dtype=float)

   def force(x):
      r = np.linalg.norm(x, axis=1)
      return -(pot.derivative(r, 1) / r)[:, None] * x - e[:, None] * pert.gradient(x)

   never = lambda x: np.zeros(len(x), dtype=bool)
   blank = lambda x, v: ()
   _leapfrog(q, p, force, 1.0, dt, nsteps, nsteps, blank, never)
   p = -p
   _leapfrog(q, p, force, 1.0, dt, nsteps, nsteps, blank, never)
   p = -p
   back = np.concatenate([q[0], p[0]])
   scale = max(np.linalg.norm(z[:3]), np.linalg.norm(z[3:]))
   return float(np.max(np.abs(back - z)) / scale)


# ---------------------------------------------------------------------------
@dataclass
class ScalingReport:
   eps: list
   drift_L: list
   drift_H: list
   slope_L: float
   slope_H: float
   T: float
   excluded: dict = field(default_factory=dict)
   records: list = field(default_factory=list, repr=False)

   def as_dict(self):
      return {'eps': self.eps, 'drift_L': self.drift_L, 'drift_H': self.drift_H, 'slope_L': self.slope_L,
              'slope_H': self.slope_H, 'T': self.T, 'excluded': {repr(k): v for k, v in self.excluded.items()},
              'bound_direction_L': bool(self.slope_L >= 0.25), 'bound_direction_H': bool(self.slope_H >= 0.25)}


def _slope(eps, drift):
   pairs = [(e, d) for e, d in zip(eps, drift) if e > 0.0 and d > 0.0]
   if len(pairs) < 2:
      return math.nan
   x, y = zip(*pairs)
   return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def eps_scaling_sweep(pot, pert, x0p0, eps_list, T=None, dt=None, shell=None, jobs=1):
   """Drift against eps on a common horizon, with the fitted log-log slopes.

   T defaults to 1e6/omega0. Escaped runs are excluded from the fits.
   """
   eps_list = [float(e) for e in eps_list]
   if T is None:
      T = default_horizon(pot, x0p0)
   if jobs > 1:
      with ProcessPoolExecutor(max_workers=jobs) as pool:
         futures = [pool.submit(integrate_perturbed, pot, pert, e, x0p0, T, dt, shell) for e in eps_list]
         records = [fut.result() for fut in futures]
   else:
      records = integrate_batch(pot, pert, eps_list, x0p0, T, dt, shell)

   report = ScalingReport([], [], [], math.nan, math.nan, float(T), records=records)
   for rec in records:
      if rec.escaped:
         report.excluded[rec.eps] = 'escaped at t = %g' % rec.escape_time
         continue
      report.eps.append(rec.eps)
      report.drift_L.append(rec.max_drift_L)
      report.drift_H.append(rec.max_drift_H)
   report.slope_L = _slope(report.eps, report.drift_L)
   report.slope_H = _slope(report.eps, report.drift_H)
   logger.info('Drift slopes over eps %s: L %.3f, H %.3f', report.eps, report.slope_L, report.slope_H)
   return report


# ---------------------------------------------------------------------------
def integrate_fast_slow(pot, coupling, eps, z0, T, dt=None, shell=None, n_samples=SAMPLES):
   """Integrate (1/eps) H(x, p) + P(x, xs, ps) from z0 = (x, p, xs, ps).

   The step is 0.05 eps/omega_max; the record holds |L| and the fast energy
   H = |p|^2/2 + V, energy_error the deviation of the full Hamiltonian.
   """
   n = coupling.n
   z = np.asarray(z0, dtype=float)
   if z.shape != (6 + 2 * n,):
      raise DomainError('Fast-slow datum must have %d entries, got shape %s' % (6 + 2 * n, z.shape))
   if eps <= 0.0:
      raise DomainError('Fast-slow scale eps must be positive, got %g' % eps)
   fast = z[:6]
   if dt is None:
      dt = eps * default_time_step(pot, fast)
   if dt <= 0.0 or T <= 0.0:
      raise DomainError('Time step and horizon must be positive, got dt = %g, T = %g' % (dt, T))
   nsteps = int(math.ceil(T / dt))
   dt = T / nsteps
   stride = max(1, nsteps // n_samples)
   r_in, r_out = shell if shell is not None else default_shell(fast)
   kappa, omega2 = coupling.strength, coupling.omega**2

   q = np.concatenate([z[:3], z[6:6 + n]])[None, :]
   p = np.concatenate([z[3:6], z[6 + n:]])[None, :]
   scale = np.concatenate([np.full(3, 1.0 / eps), np.ones(n)])
   normal = _plane_normal(fast)

   def force(y):
      x, xs = y[:, :3], y[:, 3:]
      r = np.linalg.norm(x, axis=1)
      out = np.empty_like(y)
      out[:, :3] = -(pot.derivative(r, 1) / (eps * r))[:, None] * x - 2.0 * kappa * xs[:, :1] * x
      out[:, 3:] = -omega2 * xs
      out[:, 3] -= kappa * r * r
      return out

   def observe(y, v):
      x, xs = y[:, :3], y[:, 3:]
      vx, vs = v[:, :3], v[:, 3:]
      H = energy(pot, x, vx)
      full = (H / eps + 0.5 * np.sum(vs * vs, axis=1) + 0.5 * omega2 * np.sum(xs * xs, axis=1)
              + kappa * xs[:, 0] * np.sum(x * x, axis=1))
      return angular_momentum(x, vx), H, full, plane_tilt(x, vx, normal)

   def outside(y):
      r = np.linalg.norm(y[:, :3], axis=1)
      return (r < r_in) | (r > r_out)

   logger.debug('Fast-slow leapfrog: %d steps of %g, eps = %g', nsteps, dt, eps)
   times, obs, escape_step = _leapfrog(q, p, force, scale, dt, nsteps, stride, observe, outside)
   record = _records(times, obs, escape_step, [eps], dt)[0]
   if record.escaped:
      logger.warning('Fast-slow trajectory left the shell at t = %g', record.escape_time)
   return record
