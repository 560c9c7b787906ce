#!/usr/bin/env python
# -*- coding: utf-8 -*-

# This Source Code Form is subject to the terms of the
# Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
# with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

import os
import sys

if os.name == 'posix':
  UP_CURSOR_CODE = "\033[A"
  CLEAN_ROW_CODE = "\033[K"

  def cleanLastRows(amount, file=None):
    file = file or sys.stdout
    file.write((UP_CURSOR_CODE + CLEAN_ROW_CODE) * amount)
    file.flush()

else:
  # no cursor control: the next row is simply printed below
  def cleanLastRows(amount, file=None):
    pass


class ProgressLine:
  """Single console row showing simulation progress, rewritten in place."""

  def __init__(self, label, file=None, every=50):
    self.label = label
    self.file = file or sys.stdout
    self.every = every
    self.shown = False
    self.enabled = hasattr(self.file, 'isatty') and self.file.isatty()

  def __call__(self, done, total):
    if not self.enabled or (done % self.every and done != total):
      return
    if self.shown:
      cleanLastRows(1, self.file)
    self.file.write("{0}: tick {1}/{2} ({3:.0f}%)\n".format(self.label, done, total, 100.0 * done / total))
    self.file.flush()
    self.shown = True
