# -*- coding: utf-8 -*-
#
# IterLab Reproduction CLI Plugin
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

# Recomputes every published constant and compares it with the reference:
#   il.py reproduce
#   il.py -v reproduce --full --threads 8 --out report.json
#
# The process exits with 3 if any entry failed.

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

ITERLAB_CLI_PLUGINS = 'reproduce'


@click.command(name='reproduce')
@click.pass_obj
@click.option('--profile', type=click.Choice(('fast', 'full')),
              default=None, help='The fast or full profile.')
@click.option('--fast', is_flag=True, default=False,
              help='Short for --profile fast.')
@click.option('--full', is_flag=True, default=False,
              help='Short for --profile full.')
@click.option('--threads', type=int, default=None,
              help='The number of entries run at once.')
@common_options
def reproduce(ctx, profile, fast, full, threads, **kwargs):
    """
    Reproduce the published constants.
    """
    if fast and full:
        raise click.UsageError('--fast and --full are mutually exclusive')

    if fast:
        profile = 'fast'

    elif full:
        profile = 'full'

    invoke(ctx, 'reproduce', threads=threads, profile=profile, **kwargs)
