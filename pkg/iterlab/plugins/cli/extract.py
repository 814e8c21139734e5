# -*- coding: utf-8 -*-
#
# IterLab Extraction CLI Plugin
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

# Recovers the free constant C of an expansion from an orbit:
#   il.py extract --series series.json --orbit orbit.json

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

ITERLAB_CLI_PLUGINS = 'extract'


@click.command(name='extract')
@click.pass_obj
@click.option('--series', 'series_path', default=None,
              help='A JSON file written by the expand command.')
@click.option('--orbit', 'orbit_path', default=None,
              help='A JSON file written by the orbit command.')
@click.option('--K', 'K', default=None,
              help='Extract at this sample only.')
@common_options
def extract(ctx, series_path, orbit_path, K, **kwargs):
    """
    Extract the constant C from an orbit.

    With no --K, every sample at or beyond k=100 is used and the
    estimates are checked for agreement.
    """
    invoke(ctx, 'extract', series_path=series_path, orbit_path=orbit_path,
           K=K, **kwargs)
