#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Suite of unit-tests for testing anseroid
"""

# This Source Code Form is subject to the terms of the
# Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
# with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

from tests.helpers import (createRavenAero, createRavenParams, createLeader, createRecord,
                           scenarioDocument, writeScenario, SCENARIO_DIR)
