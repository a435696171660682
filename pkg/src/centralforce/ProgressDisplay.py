#!/usr/bin/python3
# Copyright (c) 2026, the centralforce developers.
# Licensed under the Apache License, Version 2.0; see LICENSE.md.
"""
CENTRALFORCE: Action-angle analysis of central force Hamiltonians

progress display file. Draws a bar on stderr while a grid sweep or an
epsilon sweep advances.

Date Created: 19-OCT-2026
Last Modified: 19-OCT-2026

"""

import sys

# ---------------------------------------------------------------------------
class ProgressDisplay:
   """
      Progress bar for long sweeps. Example usage:

      bar = ProgressDisplay(len(rows), label='arnold')
      for i, row in enumerate(rows):
         ...
         bar.update(i + 1)
      bar.kill()
   """

   def __init__(self, total, width=30, char='#', label='', stream=None):
      """ class constructor """
      self.total = max(int(total), 1)
      self.width = width
      self.char = char
      self.stream = sys.stderr if stream is None else stream
      self.drawn = 0
      self.stream.write('%8s [' % label[:8] + ' ' * width + ']\r%8s [' % label[:8])
      self.stream.flush()

   def update(self, done):
      """ advance the bar to `done` completed items """
      target = min(int(done * self.width / self.total), self.width)
      if target > self.drawn:
         self.stream.write(self.char * (target - self.drawn))
         self.stream.flush()
         self.drawn = target

   def kill(self):
      self.update(self.total)
      self.stream.write(']\n')
      self.stream.flush()

# ---------------------------------------------------------------------------
