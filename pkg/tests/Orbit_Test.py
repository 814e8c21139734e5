# -*- coding: utf-8 -*-
#
# Test the high precision iteration engine
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

from os.path import dirname
from os.path import abspath

try:
    from tests.TestBase import TestBase

except ImportError:
    sys.path.insert(0, dirname(dirname(abspath(__file__))))
    from tests.TestBase import TestBase

from fractions import Fraction

import pytest

from iterlab.BigReal import BigReal
from iterlab.MapSpec import Coordinates
from iterlab.Orbit import OrbitRequest
from iterlab.Orbit import OrbitResult
from iterlab.Orbit import iterate_map
from iterlab.Orbit import orbit_precision
from iterlab.Orbit import default_checkpoints
from iterlab.Orbit import split_parity
from iterlab.Orbit import closed_form_logistic2
from iterlab.Errors import BasinError
from iterlab.Errors import ConfigError
from iterlab.Errors import DomainError

PREC = 256


class Orbit_Test(TestBase):
    """
    Test orbits of our maps
    """

    def test_precision_and_checkpoints(self):
        """
        The working precision grows with the digits and the orbit length
        """
        # ceil(20 log2 10) + log2(1024) + 64
        assert orbit_precision(20, 1024) == 67 + 10 + 64
        assert orbit_precision(20, 1) == orbit_precision(20, 2)

        assert default_checkpoints(10) == [1, 2, 4, 8, 10]
        assert default_checkpoints(16) == [1, 2, 4, 8, 16]
        with pytest.raises(ConfigError):
            default_checkpoints(0)

    def test_request(self):
        """
        Orbit requests validate their schedule
        """
        req = OrbitRequest('x - x^3', '1/2', K_max=100, precision_bits=PREC)
        assert req.K_max == 100
        assert req.checkpoints[-1] == 100
        assert req.coordinates == Coordinates.RAW
        assert req.branch is True

        req = OrbitRequest(
            'logistic(3):above', '0.1', checkpoints=[50, 10, 10],
            precision_bits=PREC)
        assert req.K_max == 50
        assert req.checkpoints == [10, 50]
        assert req.coordinates == Coordinates.BRANCH

        with pytest.raises(ConfigError):
            OrbitRequest('x - x^3', '0.5')

        with pytest.raises(ConfigError):
            OrbitRequest('x - x^3', '0.5', K_max=10, checkpoints=[20])

        with pytest.raises(ConfigError):
            OrbitRequest('x - x^3', '0.5', checkpoints=[-1, 5])

        with pytest.raises(ConfigError):
            OrbitRequest('x - x^3', '0.5', K_max=5, coordinates='polar')

    def test_logistic2_closed_form(self):
        """
        x_k = (1 - (1 - 2 x0)^(2^k)) / 2
        """
        x0 = Fraction(1, 10)
        assert closed_form_logistic2(x0, 0, PREC) == BigReal(x0, PREC)
        self.assert_digits(closed_form_logistic2(x0, 1, PREC), '0.18', 70)
        self.assert_digits(closed_form_logistic2(x0, 2, PREC), '0.2952', 70)

        # the power drops out long before 2^20
        late = closed_form_logistic2(x0, 1000, PREC)
        assert late == BigReal('1/2', PREC)

        with pytest.raises(DomainError):
            closed_form_logistic2(x0, -1, PREC)

        with pytest.raises(DomainError):
            closed_form_logistic2(0, 3, PREC)

        with pytest.raises(DomainError):
            closed_form_logistic2(x0, (1 << 20) + 1, PREC)

    def test_logistic2_orbit(self):
        """
        Iterating logistic(2) agrees with its closed form
        """
        calls = []

        def progress(k, total):
            calls.append((k, total))

        req = OrbitRequest(
            'logistic(2)', '0.1', checkpoints=[0, 1, 2, 5],
            precision_bits=PREC)
        result = iterate_map(req, progress=progress)

        assert result.checkpoints == [0, 1, 2, 5]
        assert result.coordinates == Coordinates.RAW
        assert result.value_at(0) == BigReal('0.1', PREC)
        for k in (1, 2, 5):
            self.assert_digits(
                result.value_at(k),
                closed_form_logistic2(BigReal('0.1', PREC), k, PREC), 70)

        # the final report is always made
        assert calls[-1] == (5, 5)

        with pytest.raises(KeyError):
            result.value_at(3)

    def test_fast_path(self):
        """
        Polynomials with a unit slope are carried in scaled integers
        """
        req = OrbitRequest('x - x^3', '1/2', K_max=64, precision_bits=PREC)
        result = iterate_map(req)
        assert result.checkpoints == [1, 2, 4, 8, 16, 32, 64]

        x = BigReal('1/2', PREC + 64)
        expected = {}
        for k in range(1, 65):
            x = x - x ** 3
            expected[k] = x

        for k, value in result.samples:
            self.assert_digits(value, expected[k].with_precision(PREC), 65)

        # the orbit decreases
        values = [v for _, v in result.samples]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_branch_orbit(self):
        """
        The double step of logistic(3) about 2/3 is s - 18s^3 - 27s^4
        """
        checkpoints = [1, 4, 16, 40]
        branch = iterate_map(OrbitRequest(
            'logistic(3):above', '0.1', checkpoints=checkpoints,
            precision_bits=PREC))
        local = iterate_map(OrbitRequest(
            'x - 18x^3 - 27x^4', '0.1', checkpoints=checkpoints,
            precision_bits=PREC))

        assert branch.coordinates == Coordinates.BRANCH
        for k in checkpoints:
            self.assert_digits(branch.value_at(k), local.value_at(k), 60)

        # one step by hand: 0.1 - 0.018 - 0.0027
        self.assert_digits(local.value_at(1), '0.0793', 70)

    def test_basin(self):
        """
        Orbits must stay in their basin
        """
        with pytest.raises(BasinError):
            iterate_map(OrbitRequest(
                'x - x^3', '-0.1', K_max=4, precision_bits=PREC))

        with pytest.raises(BasinError):
            # repelling
            iterate_map(OrbitRequest(
                'x + x^3', '0.1', K_max=4, precision_bits=PREC))

        with pytest.raises(BasinError):
            iterate_map(OrbitRequest(
                'logistic(2)', '1.5', K_max=4, precision_bits=PREC))

        with pytest.raises(BasinError):
            iterate_map(OrbitRequest(
                'popa_g', '0', K_max=4, precision_bits=PREC))

    def test_result(self):
        """
        Orbit results survive their JSON form
        """
        result = iterate_map(OrbitRequest(
            'popa_g', '0.5', K_max=8, precision_bits=PREC))
        assert len(result) == 4

        content = result.to_dict(60)
        assert content['map'] == 'popa_g'
        assert content['precision_bits'] == PREC
        assert len(content['samples']) == 4

        copy = OrbitResult.from_dict(content)
        assert copy.description == result.description
        assert copy.digest == result.digest
        assert copy.checkpoints == result.checkpoints
        for k in copy.checkpoints:
            self.assert_digits(copy.value_at(k), result.value_at(k), 58)

        odd, even = split_parity(result.samples)
        assert [k for k, _ in odd] == [1]
        assert [k for k, _ in even] == [2, 4, 8]
