# -*- coding: utf-8 -*-
#
# A base testing class/library to help set some common testing vars
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

import sys
if 'threading' in sys.modules:
    #  gevent patching since pytests import
    #  the sys library before we do.
    del sys.modules['threading']

import gevent.monkey
gevent.monkey.patch_all()

import unittest
import yaml

from os.path import join
from os.path import isdir
from os.path import dirname
from os.path import abspath
from tempfile import gettempdir
from getpass import getuser
from shutil import rmtree

try:
    from iterlab.Utils import mkdir

except ImportError:
    sys.path.insert(0, dirname(dirname(abspath(__file__))))
    from iterlab.Utils import mkdir

from iterlab.BigReal import BigReal
from iterlab.BigReal import digits_agreement

# Logging
import logging
from iterlab.Logging import add_handler
from iterlab.Logging import ITERLAB_LOGGER

# Silence Logging for Tests (uncomment and/or comment as needed)
# By default having them off is nice because then you can run
# $> pytest -s
#
#add_handler(logging.getLogger(ITERLAB_LOGGER), sendto=None)


class TestBase(unittest.TestCase):

    def setUp(self):
        """Prepare some workable paths to make the rest of testing easier"""
        self.config_file = join(
            dirname(abspath(__file__)),
            'var',
            'config.yaml',
        )
        with open(self.config_file, 'r') as stream:
            self.config = yaml.safe_load(stream)

        self.test_dir = join(
            gettempdir(),
            'iterlab-test-%s' % getuser(),
        )

        self.out_dir = join(self.test_dir, 'out')
        self.tmp_dir = join(self.test_dir, 'tmp')

        # Prepare our variable path
        self.var_dir = join(abspath(dirname(__file__)), 'var')

        if isdir(self.test_dir):
            rmtree(self.test_dir)

        mkdir(self.test_dir, 0o700)
        mkdir(self.tmp_dir, 0o700)
        mkdir(self.out_dir, 0o700)

    def tearDown(self):
        self.cleanup()

    def assert_digits(self, value, expected, digits):
        """
        Asserts that value agrees with expected (a BigReal, a decimal string
        or a rational 'p/q') on at least the number of significant digits
        specified.
        """
        if not isinstance(expected, BigReal):
            expected = BigReal(expected, value.precision_bits)

        agreed = digits_agreement(value, expected)
        assert agreed >= digits, \
            '%s agrees with %s on %d digit(s); %d expected' % (
                value, expected, agreed, digits)

    def cleanup(self):
        """Remove the temporary directory"""
        try:
            rmtree(self.test_dir)
        except OSError:
            pass


if __name__ == '__main__':
    unittest.main()
