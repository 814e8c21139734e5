# -*- coding: utf-8 -*-
#
# IterLab Expansion CLI Plugin
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

# Solves the asymptotic expansion of the orbit of a map with a parabolic
# fixed point:
#   il.py expand --map "x - x^3" --cutoff-halves 8
#   il.py expand --map popa_g --degree 9 --out popa.json

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

ITERLAB_CLI_PLUGINS = 'expand'


@click.command(name='expand')
@click.pass_obj
@click.option('--map', 'map_text', default=None,
              help='The map; a polynomial in x or a named map such as cos.')
@click.option('--cutoff-halves', type=int, default=None,
              help='Carry the expansion through k^(-N/2).')
@click.option('--degree', type=int, default=None,
              help='The Taylor degree of the map model.')
@common_options
def expand(ctx, map_text, cutoff_halves, degree, **kwargs):
    """
    Solve the asymptotic series of an orbit.

    Every coefficient is a polynomial in the free constant C; those the
    Taylor model is still too short to fix are marked transient.
    """
    invoke(ctx, 'expand', map=map_text, cutoff_halves=cutoff_halves,
           degree=degree, **kwargs)
