#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# IterLab Command Line Interface (CLI)
#
# Copyright (C) 2025 The IterLab Developers
#
# This program is free software; you can redistribute it and/or modify it
# under the terms of the GNU Lesser General Public License as published by
# the Free Software Foundation; either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE

# Type il.py --help for command help.
#
# Successfully executed commands return zero (0) to the command line; a
# configuration problem returns 2 and a numerical failure returns 3.
#
# Drop a configuration file in your home directory:
#    mkdir -p ~/.config/iterlab
#    cp config.yaml ~/.config/iterlab
#
# A typical session:
#
#   # Print Dottie's number to 40 digits
#   il.py dottie --digits 40
#
#   # Solve the expansion of x - x^3 and save it
#   il.py expand --map "x - x^3" --out series.json
#
#   # Iterate the same map (-v shows a progress bar)
#   il.py -v orbit --map "x - x^3" --x0 1/2 --checkpoints "10^2..10^6" \
#       --digits 30 --out orbit.json
#
#   # Recover the constant C the orbit was started with
#   il.py extract --series series.json --orbit orbit.json
#
#   # The limit of u_k / rho^k for a geometrically converging orbit
#   il.py rate --map "logistic(3/2)" --u0 1/12
#
#   # Reproduce every published constant
#   il.py reproduce --profile fast

# This monkey patching must be done before anything else
import gevent.monkey
gevent.monkey.patch_all()

import sys
from os.path import abspath
from os.path import dirname

# Path
try:
    from iterlab.CommandLine import cli

except ImportError:
    sys.path.insert(0, dirname(dirname(abspath(__file__))))
    from iterlab.CommandLine import cli


if __name__ == '__main__':

    cli(obj={})
