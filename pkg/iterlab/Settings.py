# -*- coding: utf-8 -*-
#
# Centralized Settings and Configuration
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
# A Sample configuration (config.yaml) might look like this:
#   global:
#       # Leave unset to use 256 bits (or $ITERLAB_PRECISION)
#       precision_bits: 320
#       # The greenlets the reproduce suite runs its entries with
#       threads: 4
#       output: text
#
#   run:
#       map: 'x - 18x^3 - 27x^4'
#       x0: 1/12
#       checkpoints: 10^4..10^6
#       cutoff_halves: 8
#       digits: 25
#
# Every key found in the file must be one we know about; anything else is
# treated as a mistake and the configuration is rejected.

import yaml

from os import name as os_name
from os.path import join
from os.path import isfile
from os.path import dirname
from os.path import abspath
from os.path import expanduser
from yaml.error import YAMLError
from copy import deepcopy

from .BigReal import default_precision
from .BigReal import precision_for_digits
from .BigReal import parse_decimal
from .MapSpec import parse_map
from .Utils import parse_checkpoints
from .Utils import parse_index
from .Errors import ConfigError

# Logging
import logging
from .Logging import ITERLAB_CLI
logger = logging.getLogger(ITERLAB_CLI)

# Library path for global usage
ITERLAB_ROOT = join(dirname(abspath(__file__)))

# Root path
if os_name == 'nt':
    ROOT = 'C:\\'
else:
    ROOT = '/'

# The Configuration Directory
DEFAULT_BASE_DIR = join(expanduser('~'), '.config', 'iterlab')

# Possible Configuration Paths
DEFAULT_CONFIG_FILE_PATHS = (
    join(DEFAULT_BASE_DIR, 'config.yaml'),
    join(expanduser('~'), 'iterlab', 'config.yaml'),
    join(expanduser('~'), '.iterlab', 'config.yaml'),
    join(ROOT, 'etc', 'iterlab', 'config.yaml'),
    join(ROOT, 'etc', 'iterlab.yaml'),
)

# The published constants and the digit targets of the reproduce suite
REFERENCE_FILE = join(ITERLAB_ROOT, 'var', 'reference.yaml')

# Plugin Keyword mapping:
CLI_PLUGINS_MAPPING = 'ITERLAB_CLI_PLUGINS'

# Plugin Directory
DEFAULT_CLI_PLUGIN_DIRECTORIES = (
    # Main System
    join(ITERLAB_ROOT, 'plugins', 'cli'),
    # Other directories we check
    join(ROOT, 'etc', 'iterlab', 'plugins', 'cli'),
    join(DEFAULT_BASE_DIR, 'plugins', 'cli'),
    join(expanduser('~'), '.iterlab', 'plugins', 'cli'),
)

# The commands a RunConfig can be built for
COMMANDS = ('expand', 'orbit', 'extract', 'rate', 'dottie', 'reproduce')

# The supported output formats
OUTPUT_FORMATS = ('text', 'json')

# The most digits anything is ever asked for
MAX_DIGITS = 50

# Global Variables mapped to their defaults if not found.
DEFAULT_GLOBAL_VARIABLES = {
    # The working precision in bits; None defers to $ITERLAB_PRECISION
    # and then to 256 bits
    'precision_bits': None,

    # Default number of greenlets to spawn for the reproduce suite
    'threads': 4,

    # text or json
    'output': 'text',
}

GLOBAL_KEY = 'global'

# Run Variables mapped to their defaults if not found.
DEFAULT_RUN_VARIABLES = {
    # The map (see parse_map() for the grammar)
    'map': None,

    # The starting value of an orbit
    'x0': None,

    # The starting value of a geometric product in branch coordinates
    'u0': None,

    # The last index of an orbit
    'K': None,

    # The orbit indexes reported
    'checkpoints': None,

    # The expansion is carried through k^(-cutoff_halves/2)
    'cutoff_halves': 8,

    # The degree of the Taylor model of a transcendental map; None picks
    # cutoff_halves + 2
    'degree': None,

    'digits': 25,

    # Where a JSON copy of the result is written
    'out_path': None,

    # The files the extract command reads
    'series_path': None,
    'orbit_path': None,

    # The reproduce suite profile; fast or full
    'profile': 'fast',

    # Overrides the global output format
    'output': None,

    # Overrides the global precision
    'precision_bits': None,
}

RUN_KEY = 'run'

# A Parsed Configuration Shell
VALID_SETTINGS_ENTRY = {
    GLOBAL_KEY: DEFAULT_GLOBAL_VARIABLES,
    RUN_KEY: DEFAULT_RUN_VARIABLES,
}

# The reproduce suite profiles
PROFILES = ('fast', 'full')


def _check_keys(section, content, defaults, source):
    """
    Rejects any key in content we have no default for
    """
    if content is None:
        return {}

    if not isinstance(content, dict):
        raise ConfigError(
            'the [%s] section of %s is not a mapping' % (section, source))

    unknown = sorted(set(content.keys()) - set(defaults.keys()))
    if unknown:
        raise ConfigError('unknown key(s) in the [%s] section of %s: %s' % (
            section, source, ', '.join(str(k) for k in unknown)))

    return content


class Settings(object):
    """
    The settings read from a YAML configuration file.

    If no configuration file is specified, then the default paths are
    checked instead; when none of them exist the defaults apply.  A
    configuration file that can not be parsed or that holds keys we do not
    know about throws a ConfigError.
    """

    def __init__(self, cfg_file=None):

        # The data read from the configuration file
        self.cfg_data = deepcopy(VALID_SETTINGS_ENTRY)

        # Is valid flag
        self._is_valid = False

        # Store first matched configuration file found
        if not cfg_file:
            cfg_file = next((path for path in DEFAULT_CONFIG_FILE_PATHS
                             if isfile(path)), None)

        self.cfg_file = None
        self.read(cfg_file)

    def is_valid(self):
        """
        Returns True if the information loaded is valid and false if it isn't
        """
        return self._is_valid

    def _read_yaml(self, cfg_file):
        """
        Loads the configuration file passed in and returns the merged
        settings.
        """
        _cfg_data = deepcopy(VALID_SETTINGS_ENTRY)

        if cfg_file is None:
            logger.debug('There was no YAML config file specified')
            return _cfg_data

        cfg_file = abspath(expanduser(cfg_file))
        if not isfile(cfg_file):
            raise ConfigError(
                "The YAML config file '%s' was not found." % cfg_file)

        try:
            with open(cfg_file, 'r') as f:
                cfg_data = yaml.safe_load(f)

            logger.debug('Successfully parsed YAML configuration from %s' % (
                cfg_file,
            ))

        except YAMLError as e:
            logger.debug('%s' % (str(e)))
            raise ConfigError(
                'Failed to parse YAML configuration from %s' % cfg_file)

        except IOError as e:
            logger.debug('%s' % (str(e)))
            raise ConfigError(
                'Failed to access YAML configuration from %s' % cfg_file)

        if cfg_data is None:
            # An empty file
            return _cfg_data

        if not isinstance(cfg_data, dict):
            raise ConfigError(
                'Invalid YAML configuration structure in %s' % cfg_file)

        unknown = sorted(set(cfg_data.keys()) - set(VALID_SETTINGS_ENTRY))
        if unknown:
            raise ConfigError('unknown section(s) in %s: %s' % (
                cfg_file, ', '.join(str(k) for k in unknown)))

        for section, defaults in VALID_SETTINGS_ENTRY.items():
            _cfg_data[section].update(_check_keys(
                section, cfg_data.get(section), defaults, cfg_file))

        return _cfg_data

    def read(self, cfg_file=None):
        """
        Load our configuration from the file specified.
        """
        self._is_valid = False
        self.cfg_data = self._read_yaml(cfg_file)
        self.cfg_file = cfg_file

        _global = self.cfg_data[GLOBAL_KEY]
        if _global['output'] not in OUTPUT_FORMATS:
            raise ConfigError('unsupported output format %r' % (
                _global['output'], ))

        try:
            _global['threads'] = int(_global['threads'])

        except (TypeError, ValueError):
            raise ConfigError('threads must be an integer')

        if _global['threads'] < 1:
            raise ConfigError('threads must be at least 1')

        if _global['precision_bits'] is not None:
            _global['precision_bits'] = _parse_precision(
                _global['precision_bits'])

        self._is_valid = True
        return True

    @property
    def precision_bits(self):
        """
        The working precision; the configured value or else the default
        (which honours $ITERLAB_PRECISION)
        """
        bits = self.cfg_data[GLOBAL_KEY]['precision_bits']
        return bits if bits is not None else default_precision()

    @property
    def threads(self):
        return self.cfg_data[GLOBAL_KEY]['threads']

    @property
    def output(self):
        return self.cfg_data[GLOBAL_KEY]['output']

    @property
    def run(self):
        """
        The [run] section
        """
        return self.cfg_data[RUN_KEY]


def _parse_precision(value):
    try:
        bits = int(value)

    except (TypeError, ValueError):
        raise ConfigError('precision_bits %r is not an integer' % (value, ))

    if bits < 64:
        raise ConfigError('precision_bits must be at least 64 (found %d)' %
                          bits)
    return bits


class RunConfig(object):
    """
    Everything a single command needs to run; built from the [run] section
    of the settings with the command line flags applied over top.
    """

    def __init__(self, command, threads=None, **kwargs):

        if command not in COMMANDS:
            raise ConfigError('unsupported command %r' % (command, ))

        unknown = sorted(set(kwargs.keys()) - set(DEFAULT_RUN_VARIABLES))
        if unknown:
            raise ConfigError('unknown option(s): %s' % ', '.join(unknown))

        self.command = command
        self.threads = int(threads or DEFAULT_GLOBAL_VARIABLES['threads'])

        content = DEFAULT_RUN_VARIABLES.copy()
        content.update(kwargs)

        self.output = content['output'] or 'text'
        if self.output not in OUTPUT_FORMATS:
            raise ConfigError('unsupported output format %r' % (
                self.output, ))

        try:
            self.digits = int(content['digits'])

        except (TypeError, ValueError):
            raise ConfigError('digits %r is not an integer' % (
                content['digits'], ))

        if not 1 <= self.digits <= MAX_DIGITS:
            raise ConfigError(
                'digits must lie between 1 and %d (found %d)' % (
                    MAX_DIGITS, self.digits))

        try:
            self.cutoff_halves = int(content['cutoff_halves'])

        except (TypeError, ValueError):
            raise ConfigError('cutoff_halves %r is not an integer' % (
                content['cutoff_halves'], ))

        if self.cutoff_halves < 1:
            raise ConfigError('cutoff_halves must be at least 1')

        self.degree = None
        if content['degree'] is not None:
            self.degree = parse_index(content['degree'])
            if self.degree < 1:
                raise ConfigError('degree must be at least 1')

        self.precision_bits = None
        if content['precision_bits'] is not None:
            self.precision_bits = _parse_precision(content['precision_bits'])

        self.map = None
        if content['map'] is not None:
            self.map = parse_map(str(content['map']))

        # Starting values are kept as text until the precision is known
        self.x0 = None if content['x0'] is None else str(content['x0'])
        self.u0 = None if content['u0'] is None else str(content['u0'])
        for name in ('x0', 'u0'):
            value = getattr(self, name)
            if value is not None:
                # validate
                parse_decimal(value, 64)

        self.K = None
        if content['K'] is not None:
            self.K = parse_index(content['K'])

        self.checkpoints = None
        if content['checkpoints'] is not None:
            self.checkpoints = parse_checkpoints(content['checkpoints'])

        self.out_path = content['out_path']
        self.series_path = content['series_path']
        self.orbit_path = content['orbit_path']

        self.profile = content['profile']
        if self.profile not in PROFILES:
            raise ConfigError('unsupported profile %r' % (self.profile, ))

    @classmethod
    def from_sources(cls, settings, command, **flags):
        """
        Merges the [run] section of settings with the flags specified;
        flags that are None are treated as unset and flags always win.
        """
        content = {}
        if settings is not None:
            content.update(settings.run)
            if content.get('output') is None:
                content['output'] = settings.output
            if content.get('precision_bits') is None:
                content['precision_bits'] = \
                    settings.cfg_data[GLOBAL_KEY]['precision_bits']

        content.update({k: v for k, v in flags.items() if v is not None})

        return cls(
            command,
            threads=settings.threads if settings is not None else None,
            **content)

    @property
    def json(self):
        return self.output == 'json'

    def resolve_precision(self, digits=None):
        """
        Returns the explicit precision if one was given; otherwise the
        default, raised far enough to carry the digits requested.
        """
        if self.precision_bits is not None:
            return self.precision_bits

        return max(default_precision(),
                   precision_for_digits(digits or self.digits))

    @property
    def fast(self):
        return self.profile == 'fast'

    def __repr__(self):
        return '<RunConfig command=%s map=%s />' % (
            self.command, self.map.description if self.map else None)
