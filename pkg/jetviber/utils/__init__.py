#!/usr/bin/env python
"""
Exact linear algebra and sample generators used by the search and fixture code.
"""

# jetviber - jet-space calculus for variational bivectors
# Copyright (C) 2024 the jetviber developers
#     The MIT License (MIT), see LICENSE.txt
