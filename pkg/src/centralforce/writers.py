#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""
CENTRALFORCE: Action-angle analysis of central force Hamiltonians

writers file. Contains the CSV and JSON emitters. CSV floats are written with
repr so that reruns are byte-identical; each CSV gets a `<name>.units.json`
sidecar. JSON keys are sorted and non-finite floats are written as strings.

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

"""
import csv
import json
import logging
import math
import os
from dataclasses import asdict, is_dataclass

import numpy as np

from .util import units

logger = logging.getLogger(__name__)


def _cell(value):
   if isinstance(value, (bool, np.bool_)):
      return 'true' if value else 'false'
   if isinstance(value, (int, np.integer)):
      return str(int(value))
   if isinstance(value, (float, np.floating)):
      return repr(float(value))
   return str(value)


def jsonable(obj):
   """Convert obj to plain JSON types: numpy scalars and arrays, tuples and
   dataclasses are unpacked; nan and +-inf become strings."""
   if isinstance(obj, dict):
      return {str(k): jsonable(v) for k, v in obj.items()}
   if isinstance(obj, (list, tuple)):
      return [jsonable(v) for v in obj]
   if isinstance(obj, np.ndarray):
      return [jsonable(v) for v in obj.tolist()]
   if is_dataclass(obj) and not isinstance(obj, type):
      return jsonable(obj.as_dict() if hasattr(obj, 'as_dict') else asdict(obj))
   if isinstance(obj, (bool, np.bool_)):
      return bool(obj)
   if isinstance(obj, (int, np.integer)):
      return int(obj)
   if isinstance(obj, (float, np.floating)):
      value = float(obj)
      if math.isnan(value):
         return 'nan'
      if math.isinf(value):
         return 'inf' if value > 0.0 else '-inf'
      return value
   if obj is None or isinstance(obj, str):
      return obj
   return str(obj)


def write_json(path, obj):
   text = json.dumps(jsonable(obj), sort_keys=True, indent=3, allow_nan=False)
   with open(path, 'w') as f:
      f.write(text + '\n')
   logger.info('Wrote %s', path)
   return path


def units_path(path):
   root, _ = os.path.splitext(path)
   return root + '.units.json'


def write_csv(path, header, rows):
   """Write rows under header and the units sidecar. Returns both paths."""
   with open(path, 'w', newline='') as f:
      writer = csv.writer(f, lineterminator='\n')
      writer.writerow(header)
      for row in rows:
         if len(row) != len(header):
            raise ValueError('Row of %d values for %d columns in %s' % (len(row), len(header), path))
         writer.writerow([_cell(v) for v in row])
   logger.info('Wrote %s (%d rows)', path, len(rows))
   side = write_json(units_path(path), {'columns': list(header),
                                        'units': {name: units.get(name, 'unknown') for name in header}})
   return path, side
