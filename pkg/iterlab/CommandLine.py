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
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License for more details.
#
# The commands themselves live in plugins; every .py file found in one of
# the DEFAULT_CLI_PLUGIN_DIRECTORIES that declares ITERLAB_CLI_PLUGINS is
# loaded and its command is attached to the `cli` group below.
#
# ITERLAB_CLI_PLUGINS names the click command defined in the plugin:
#     ITERLAB_CLI_PLUGINS = 'reproduce'

import sys
import click

from os.path import basename
from os.path import isdir

from .Settings import CLI_PLUGINS_MAPPING
from .Settings import DEFAULT_CLI_PLUGIN_DIRECTORIES
from .Settings import Settings
from .Errors import ConfigError
from .Utils import scan_pylib
from .Utils import load_pylib

import logging
from .Logging import ITERLAB_LOGGER
from .Logging import ITERLAB_CLI
from .Logging import add_handler
from .Logging import set_verbosity
logger = logging.getLogger(ITERLAB_CLI)


# General Options
@click.group()
@click.option('--config', '-c',
              help='Specify configuration file.')
@click.option('--verbose', '-v', count=True,
              help='Verbose mode.')
@click.pass_context
def cli(ctx, config, verbose):
    if ctx.obj is None:
        ctx.obj = {}

    ctx.obj['verbose'] = verbose

    # Logging goes to stderr so that JSON written to stdout stays clean
    _logger = logging.getLogger(ITERLAB_LOGGER)
    if not _logger.handlers:
        add_handler(_logger, sendto=False)

    # Handle Verbosity
    set_verbosity(verbose)

    try:
        # Settings() for storing and retrieving settings
        ctx.obj['Settings'] = Settings(cfg_file=config)

    except ConfigError as e:
        logger.error(str(e))
        sys.exit(e.exit_code)


def load_plugins(group, paths=None):
    """
    Scans the paths specified for command line plugins and adds the
    commands they declare to the click group.

    Returns the sorted list of command names added.
    """
    if paths is None:
        paths = DEFAULT_CLI_PLUGIN_DIRECTORIES

    plugins = scan_pylib(paths=[d for d in paths if isdir(d)])
    if not plugins:
        return []

    added = set()
    for k, v in sorted(plugins.items()):
        for _pyfile in sorted(v):
            obj = load_pylib('_ilcli_%s' % k, _pyfile)
            if obj is None or not hasattr(obj, CLI_PLUGINS_MAPPING):
                continue

            # 1-1 mapping of a function
            mapping = getattr(obj, CLI_PLUGINS_MAPPING)
            _click_func = getattr(obj, mapping, None) \
                if isinstance(mapping, str) else None

            if not isinstance(_click_func, click.Command):
                logger.warning('Ignoring bad plugin %s' % (
                    basename(_pyfile),
                ))
                continue

            group.add_command(_click_func)
            added.add(_click_func.name)

    return sorted(added)


# Dynamically Build CLI List
load_plugins(cli)


def main():
    cli(obj={})


if __name__ == '__main__':
    main()
