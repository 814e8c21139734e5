# -*- coding: utf-8 -*-
#
# IterLab Dottie CLI Plugin
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

ITERLAB_CLI_PLUGINS = 'dottie'


@click.command(name='dottie')
@click.pass_obj
@common_options
def dottie(ctx, **kwargs):
    """
    Print Dottie's number (the fixed point of cos).
    """
    invoke(ctx, 'dottie', **kwargs)
