# -*- coding: utf-8 -*-
#
# IterLab Orbit CLI Plugin
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
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License for more details.

# Iterates a map from a starting value:
#   il.py orbit --map "logistic(2)" --x0 1/3 --checkpoints 1..20
#   il.py -v orbit --map "x - x^3" --x0 1/2 --checkpoints "10^2..10^6" \
#       --out orbit.json

import click
import sys

from os.path import abspath
from os.path import dirname

try:
    from iterlab.Commands import common_options

except ImportError:
    # Path
    sys.path.insert(0, dirname(dirname(dirname(dirname(abspath(__file__))))))
    from iterlab.Commands import common_options

from iterlab.Commands import invoke

ITERLAB_CLI_PLUGINS = 'orbit'


@click.command(name='orbit')
@click.pass_obj
@click.option('--map', 'map_text', default=None,
              help='The map; a polynomial in x or a named map such as cos.')
@click.option('--x0', default=None,
              help='The starting value (a decimal or p/q).')
@click.option('--K', 'K', default=None,
              help='The last index (1000000, 1e6 or 10^6).')
@click.option('--checkpoints', default=None,
              help='The indexes to sample (such as 10^2..10^6).')
@common_options
def orbit(ctx, map_text, x0, K, checkpoints, **kwargs):
    """
    Iterate a map and sample its orbit.

    Use -v to watch the progress of a long orbit.
    """
    invoke(ctx, 'orbit', map=map_text, x0=x0, K=K,
           checkpoints=checkpoints, **kwargs)
