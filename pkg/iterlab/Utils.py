# -*- coding: utf-8 -*-
#
# A collection of common utilities used throughout iterlab
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

import re
import errno
from os import listdir
from os import makedirs
from os.path import isdir
from os.path import isfile
from os.path import join
from os.path import dirname
from os.path import abspath
from os.path import basename
from os.path import expanduser
from importlib.util import module_from_spec
from importlib.util import spec_from_file_location

from .Errors import ConfigError

import logging
from .Logging import ITERLAB_ENGINE
logger = logging.getLogger(ITERLAB_ENGINE)

STRING_DELIMITERS = r'[\[\]\;,\s]+'

DEFAULT_PYLIB_IGNORE_LIST = (
    # Any item begining with an underscore
    re.compile(r'^_.*'),
)

PYTHON_MODULE_RE = re.compile(r'^(?P<fname>[^_].+)\.py$')

# An index may be written as 1000000, 1e6, 10^6, 10**6 or 2^20
INDEX_RE = re.compile(
    r'^\s*((?P<base>[0-9]+)\s*(\^|\*\*)\s*(?P<power>[0-9]+)|'
    r'(?P<mantissa>[0-9]+)[eE]\+?(?P<exp>[0-9]+)|'
    r'(?P<int>[0-9]+))\s*$'
)

# A range of indexes:  1..3  or  10^4..10^7 (every decade)
INDEX_RANGE_RE = re.compile(r'^\s*(?P<lo>[^.]+)\.\.(?P<hi>[^.]+)\s*$')


def mkdir(name, perm=0o775):
    """
    A more contained wrapper to directory management
    """
    attempt = 3
    if isdir(name):
        return True

    while attempt > 0:
        try:
            makedirs(name, perm)
            logger.debug('Created directory: %s' % name)
            return True

        except OSError as e:
            if e.errno == errno.EEXIST:
                # directory exists; this is okay
                return isdir(name)

            logger.debug('Created directory %s exception: %s' % (
                name, e,
            ))

        # racing condition; just try again
        attempt -= 1

    # To many attempts... fail
    # ... fall through...
    return False


def parse_list(*args):
    """
    Take a string list and break it into a delimited
    list of arguments. This funciton also supports
    the processing of a list of delmited strings and will
    always return a unique set of arguments. Duplicates are
    always combined in the final results.

    Hence: parse_list('10^4, 10^5; 10^6') becomes:
        ['10^4', '10^5', '10^6']

    The parsing is very forgiving and accepts spaces, commas, brackets
    and semicolons as delimiters.  Order is preserved.
    """

    result = []
    for arg in args:
        if isinstance(arg, str):
            result += re.split(STRING_DELIMITERS, arg)

        elif isinstance(arg, (list, tuple, set)):
            for _arg in arg:
                # A list inside a list? - use recursion
                result += parse_list(_arg)

        elif arg is not None:
            # Convert whatever it is to a string and work with it
            result += parse_list(str(arg))

    # make the list unique while preserving the order it was specified in
    # and eliminate any empty entries
    unique = []
    for entry in result:
        if entry and entry not in unique:
            unique.append(entry)
    return unique


def parse_index(arg):
    """
    Parses an orbit index written as an integer (1000000), in scientific
    form (1e6) or as a power (10^6, 2^20, 10**6).

    A ConfigError is thrown if the content could not be parsed or if the
    index is negative.
    """
    if isinstance(arg, bool):
        raise ConfigError('%r is not an index' % arg)

    if isinstance(arg, int):
        if arg < 0:
            raise ConfigError('negative index %d' % arg)
        return arg

    if isinstance(arg, float) and arg.is_integer() and arg >= 0:
        return int(arg)

    result = INDEX_RE.match(str(arg))
    if not result:
        raise ConfigError('could not parse the index %r' % (arg, ))

    if result.group('base'):
        return int(result.group('base')) ** int(result.group('power'))

    if result.group('mantissa'):
        return int(result.group('mantissa')) * 10 ** int(result.group('exp'))

    return int(result.group('int'))


def parse_checkpoints(*args):
    """
    Parses a list of checkpoints into a sorted list of unique positive
    integers.

    Entries may be separate indexes ('1, 2, 3') or ranges.  A range of
    small numbers ('1..3') expands to every integer in it while a range of
    powers ('10^4..10^7' or '2^10..2^20') expands to every power of the
    same base between its bounds.

    Hence: parse_checkpoints('10^4..10^7') becomes:
        [10000, 100000, 1000000, 10000000]
    """
    result = set()
    for entry in parse_list(*args):
        match = INDEX_RANGE_RE.match(entry)
        if not match:
            result.add(parse_index(entry))
            continue

        lo = INDEX_RE.match(match.group('lo'))
        hi = INDEX_RE.match(match.group('hi'))
        if not lo or not hi:
            raise ConfigError('could not parse the range %r' % entry)

        if lo.group('base') and hi.group('base') \
                and lo.group('base') == hi.group('base'):
            # a range of powers
            base = int(lo.group('base'))
            for power in range(int(lo.group('power')),
                               int(hi.group('power')) + 1):
                result.add(base ** power)
            continue

        _lo = parse_index(match.group('lo'))
        _hi = parse_index(match.group('hi'))
        if _hi < _lo:
            raise ConfigError('the range %r is empty' % entry)

        if _hi - _lo > 100000:
            # Expanding this would be silly; it is almost certainly a
            # mistake
            raise ConfigError('the range %r is too wide' % entry)

        result.update(range(_lo, _hi + 1))

    if 0 in result:
        raise ConfigError('checkpoints must be positive')

    return sorted(result)


def scan_pylib(paths, ignore_re=DEFAULT_PYLIB_IGNORE_LIST):
    """
    A simple function that scans specified paths for .py files
    it returns a dictionary of files it scanned using the paths
    specified.

    You can optionally specify a list of items you wish to
    ignore from the matched results.  This allows you to filter
    content. By default, anything starting with an underscore
    is skipped.

    The list of module names found is returned:
        {
            'foo' : set(
               '/absolute/path/to/foo.py',
               '/another_path/to/another/foo.py',
            ),
            'bob' : set(
                '/absolute/path/to/bob.py',
            ),
        }
    """
    # Module paths
    rpaths = {}

    def store(path, filename):
        """
        Attempts to store module
        """
        result = PYTHON_MODULE_RE.match(filename)
        if not result:
            # Not our type of file
            return False

        if next((True for r in ignore_re
                 if r.match(result.group('fname')) is not None), False):
            # we matched an element from our ignore list
            return False

        if result.group('fname') not in rpaths:
            rpaths[result.group('fname')] = set()

        # Store unique entry
        rpaths[result.group('fname')].add(join(path, filename))

        return True

    for _path in parse_list(paths):
        path = abspath(expanduser(_path))
        try:
            if isfile(path):
                # we're being passed a module directly
                store(dirname(path), basename(path))

            else:
                # We're dealing with a directory
                for filename in sorted(listdir(path)):
                    store(path, filename)

        except (OSError, IOError) as e:
            # We failed, do not return an empty set; just abort
            # out right
            logger.debug('scan_pylib(%s) exception: %s' % (path, e))
            return None

    return rpaths


def load_pylib(module_name, filepath=None):
    """
    Loads a python module presumable retreived by the
    scan_pylib() function call.

    module_name should be the name of the module path
    you want to import from within the file.

    ie:
        load_pylib('plugin.test', '/path/to/plugin.py')

    If the filepath is None, then the module_name is
    expected to be the full path to the module in question
    to be loaded.

    """

    if filepath is None:
        if not isfile(module_name):
            return None

        # this is an allowed setting
        filepath = module_name

        match = PYTHON_MODULE_RE.match(basename(filepath))
        if not match:
            return None

        module_name = match.group('fname')

        # fall through for loading

    try:
        spec = spec_from_file_location(module_name, filepath)
        module = module_from_spec(spec)
        spec.loader.exec_module(module)
        return module

    except ImportError as e:
        # Could not load module
        logger.warning(
            'Failed to import from dynamic module: %s (reason: %s)' % (
                filepath,
                str(e),
            )
        )

    except (IOError, OSError) as e:
        # Could not load module
        logger.warning(
            'Failed to load dynamic module: %s (reason: %s)' % (
                filepath,
                str(e),
            )
        )

    # We failed if we get here
    return None
