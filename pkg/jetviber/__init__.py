# -*- jetviber -*-
# encoding: utf-8

"""
jetviber - variational bivectors and Schouten brackets on PDE jet spaces
Copyright (C) 2024 the jetviber developers
    The MIT License (MIT), see LICENSE.txt
"""
__all__ = [
    "jetcore",
    "operators",
    "equations",
    "schouten",
    "search",
    "lang",
    "report",
    "fixtures",
    "cli",
    "utils",
]

import os
import sys

if not hasattr(sys, "version_info") or sys.version_info < (3, 9):
    raise RuntimeError("jetviber requires Python 3.9 or later.")

# Set version
version_path = os.path.join(os.path.dirname(__file__), "version.txt")
with open(version_path, "r") as version_file:
    __version__ = version_file.read().strip()

# Imports of individual modules
import jetviber.jetcore
import jetviber.operators
import jetviber.equations
import jetviber.schouten
import jetviber.search
import jetviber.lang
import jetviber.report
import jetviber.fixtures
import jetviber.utils
from jetviber.lang import load_session
from jetviber.schouten import Bivector, check_bivector, schouten_bracket
