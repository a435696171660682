#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""
CENTRALFORCE: Action-angle analysis of central force Hamiltonians

quadrature file. Contains Gauss-Legendre rules with order doubling and a
composite rule on panels graded geometrically towards an interior point.
Integrands are vectorized and may return several rows at once.

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

"""
import logging
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

logger = logging.getLogger(__name__)

QUAD_RTOL = 1e-11


@lru_cache(maxsize=32)
def gauss_legendre(n):
   """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]."""
   x, w = roots_legendre(n)
   return x, w


def fixed(func, a, b, n):
   """n-point Gauss-Legendre estimate of the integral of func over [a, b]."""
   x, w = gauss_legendre(n)
   half = 0.5 * (b - a)
   values = np.asarray(func(0.5 * (a + b) + half * x))
   return half * (values @ w)


def _close(new, old, rtol):
   new = np.atleast_1d(new)
   old = np.atleast_1d(old)
   return bool(np.all(np.abs(new - old) <= rtol * np.maximum(np.abs(new), 1e-300)))


def integrate(func, a, b, nmin=256, nmax=8192, rtol=QUAD_RTOL):
   """Integrate with nmin nodes, doubling until two estimates agree to rtol.

   Returns (value, converged).
   """
   n = nmin
   prev = fixed(func, a, b, n)
   while n < nmax:
      n *= 2
      cur = fixed(func, a, b, n)
      if _close(cur, prev, rtol):
         return cur, True
      prev = cur
   logger.warning('Quadrature on [%g, %g] not converged with %d nodes', a, b, n)
   return prev, False


def graded_breakpoints(a, b, c, width, ratio=0.4):
   """Panel edges on [a, b] accumulating geometrically at the interior point c
   until the innermost panel is narrower than width."""
   width = max(width, 1e-14 * (b - a))
   left = [c]
   d = c - a
   while d > width:
      d *= ratio
      left.append(c - d)
   right = [c]
   d = b - c
   while d > width:
      d *= ratio
      right.append(c + d)
   return [a] + sorted(left[1:]) + [c] + sorted(right[1:]) + [b]


def integrate_graded(func, a, b, c, width, order=24, rtol=QUAD_RTOL, max_doublings=3):
   """Composite Gauss-Legendre over panels graded towards c.

   Resolves integrands that vary on the scale `width` around c. Returns
   (value, converged).
   """
   edges = graded_breakpoints(a, b, c, width)
   edges = [e for i, e in enumerate(edges) if i == 0 or e > edges[i - 1]]

   def composite(n):
      return sum(fixed(func, lo, hi, n) for lo, hi in zip(edges[:-1], edges[1:]))

   n = order
   prev = composite(n)
   for _ in range(max_doublings):
      n *= 2
      cur = composite(n)
      if _close(cur, prev, rtol):
         return cur, True
      prev = cur
   logger.warning('Graded quadrature on [%g, %g] about %g not converged', a, b, c)
   return prev, False
