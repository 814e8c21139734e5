# -*- coding: utf-8 -*-
#
# A plugin declaring a single command (used by the tests)
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

ITERLAB_CLI_PLUGINS = 'toolbox_count'


@click.command(name='count')
@click.argument('n', type=int)
def toolbox_count(n):
    """
    Count to n
    """
    click.echo(' '.join(str(i) for i in range(1, n + 1)))


def toolbox_helper():
    # not a click command; never added
    pass
