#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""
CENTRALFORCE: Action-angle analysis of central force Hamiltonians

utilities file. Contains the lookup tables used to describe potentials,
perturbations and the columns of the emitted tables.

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

"""

# dict describing the built-in potential kinds: (formula, required, optional)
potential_kinds = {
   'kepler'              : ('-k/r', ('k',), ()),
   'harmonic'            : ('k r^2', ('k',), ()),
   'power_law'           : ('k r^(c+1)/(c+1) + offset', ('k', 'c'), ('offset',)),
   'log'                 : ('k ln r', ('k',), ()),
   'lennard_jones'       : ('4 epsilon [(sigma/r)^12 - (sigma/r)^6]', (),
                            ('epsilon', 'sigma')),
   'lennard_jones_gauss' : ('epsilon [(sigma/r)^12 - 2 (sigma/r)^6]'
                            ' - depth exp(-(r-center)^2/(2 width^2))', (),
                            ('epsilon', 'sigma', 'depth', 'center', 'width')),
}

# default parameter values for the optional parameters
potential_defaults = {
   'power_law'           : {'offset': 0.0},
   'lennard_jones'       : {'epsilon': 1.0, 'sigma': 1.0},
   'lennard_jones_gauss' : {'epsilon': 1.0, 'sigma': 1.0, 'depth': 1.5,
                            'center': 1.47, 'width': 0.02**0.5},
}

# dict describing the perturbation kinds
perturbation_kinds = {
   'anisotropic_quadratic' : 'amplitude (x^2 - y^2)',
   'fixed_dipole'          : 'amplitude x/|x|^3, |x| floored at r_floor',
   'user_grid'             : 'sum of gaussian bumps at user supplied centres',
   'central'               : 'amplitude |x|^2',
}

# default parameters of the perturbation kinds
perturbation_defaults = {
   'anisotropic_quadratic' : {'amplitude': 1.0},
   'fixed_dipole'          : {'amplitude': 1.0, 'r_floor': 0.1},
   'user_grid'             : {'width': 0.5, 'n_bumps': 4, 'extent': 2.0},
   'central'               : {'amplitude': 1.0},
}

# slow-subsystem couplings of the fast-slow system
coupling_kinds = {
   'harmonic_slow' : 'Omega^2 |xs|^2/2 + kappa xs_1 |x|^2',
   'decoupled'     : 'Omega^2 |xs|^2/2',
}

# critical point kinds
MINIMUM = 'minimum'
MAXIMUM = 'maximum'

# chart top kinds
TOP_MAXIMUM = 'maximum'
TOP_INFINITY = 'infinity'
TOP_UNBOUNDED = 'unbounded'

# units of every emitted column
units = {
   'p_theta'          : 'angular momentum',
   'ell'              : 'angular momentum^2',
   'branch'           : 'index',
   'r0'               : 'length',
   'kind'             : 'label',
   'level'            : 'energy',
   'curvature'        : 'energy/length^2',
   'chart'            : 'index',
   'E'                : 'energy',
   'Ebar'             : 'energy',
   'I1'               : 'action',
   'I2'               : 'action',
   'omega1'           : '1/time',
   'omega2'           : '1/time',
   'nu'               : 'dimensionless',
   'D'                : '1/(time^3 action)',
   'D_normalized'     : 'dimensionless',
   'quasiconvex'      : 'boolean',
   'burgers_residual' : '1/action',
   'accurate'         : 'boolean',
   'eps'              : 'dimensionless',
   't'                : 'time',
   'L_abs'            : 'angular momentum',
   'H'                : 'energy',
   'nu0'              : 'dimensionless',
   'nu1'              : '1/action',
   'nu2'              : '1/action^2',
   'G1'               : '1/action',
   'G2'               : '1/action^2',
   'res1'             : '1/action',
   'res2'             : '1/action^2',
}
