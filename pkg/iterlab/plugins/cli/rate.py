# -*- coding: utf-8 -*-
#
# IterLab Geometric Rate CLI Plugin
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

# Computes the limit of u_k/rho^k for a map converging geometrically:
#   il.py rate --map "logistic(3/2)" --u0 1/12

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

ITERLAB_CLI_PLUGINS = 'rate'


@click.command(name='rate')
@click.pass_obj
@click.option('--map', 'map_text', default=None,
              help='The map; a polynomial in x or a named map such as cos.')
@click.option('--u0', default=None,
              help='The starting distance from the fixed point.')
@common_options
def rate(ctx, map_text, u0, **kwargs):
    """
    Compute the geometric convergence constant of an orbit.
    """
    invoke(ctx, 'rate', map=map_text, u0=u0, **kwargs)
