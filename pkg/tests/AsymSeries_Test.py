# -*- coding: utf-8 -*-
#
# Test the asymptotic series algebra
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
from iterlab.CPoly import CPoly
from iterlab.PowerSeries import PowerSeries
from iterlab.AsymSeries import AsymSeries
from iterlab.AsymSeries import GrowthSeries
from iterlab.AsymSeries import logpow_cap
from iterlab.AsymSeries import shift_reexpand
from iterlab.AsymSeries import substitute_into_map
from iterlab.AsymSeries import asym_eval
from iterlab.AsymSeries import asym_reciprocal
from iterlab.AsymSeries import format_series
from iterlab.Errors import PreconditionError
from iterlab.Errors import InconsistencyError

PREC = 192


def const(value):
    return CPoly.constant(Fraction(value), PREC)


class AsymSeries_Test(TestBase):
    """
    Test the term algebra of asymptotic series
    """

    def test_term_inventory(self):
        """
        Terms must decay and respect the logarithm and C caps
        """
        assert logpow_cap(1) == 0
        assert logpow_cap(2) == 0
        assert logpow_cap(3) == 1
        assert logpow_cap(8) == 3

        s = AsymSeries({
            (1, 0): const(1),
            (3, 1): const(2),
            (3, 0): CPoly([0, 1], PREC),
            (4, 0): const(0),
        }, 4, PREC)

        # zero coefficients are not stored
        assert len(s) == 3

        # largest magnitude first; ln(k) beats a constant at equal powers
        assert s.keys() == [(1, 0), (3, 1), (3, 0)]
        assert s.leading_term().halves == 1
        assert s.c_degree() == 1
        assert s.max_abs_coefficient() == 2
        assert s.coefficient(7, 0).is_zero()

        with pytest.raises(PreconditionError):
            # a constant term does not decay
            AsymSeries({(0, 0): const(1)}, 4, PREC)

        with pytest.raises(PreconditionError):
            AsymSeries({(5, 0): const(1)}, 4, PREC)

        with pytest.raises(PreconditionError):
            AsymSeries({(3, -1): const(1)}, 4, PREC)

        with pytest.raises(InconsistencyError):
            AsymSeries({(3, 2): const(1)}, 4, PREC)

        with pytest.raises(InconsistencyError):
            AsymSeries({(3, 0): CPoly([0, 0, 1], PREC)}, 4, PREC)

        # Growth series carry no caps
        g = GrowthSeries({(-1, 0): const(1), (0, 3): const(1)}, 2, PREC)
        assert g.keys() == [(-1, 0), (0, 3)]

    def test_algebra(self):
        """
        Sums, products, truncation and substitution
        """
        a = AsymSeries({(1, 0): const(1), (2, 0): const(1)}, 4, PREC)
        b = AsymSeries({(1, 0): const(1), (2, 0): const(-1)}, 4, PREC)

        assert (a + b).keys() == [(1, 0)]
        assert (a + b).coefficient(1) == const(2)
        assert (a - b).keys() == [(2, 0)]
        assert (-a).coefficient(2) == const(-1)
        assert a.scale(3).coefficient(1) == const(3)

        # (x + y)(x - y) = x^2 - y^2 with x = k^(-1/2), y = k^-1
        product = a.multiply(b, 4)
        assert product.keys() == [(2, 0), (4, 0)]
        assert product.coefficient(4) == const(-1)

        # cut at k^(-3/2)
        product = a.multiply(b, 3)
        assert product.keys() == [(2, 0)]

        assert a.truncate(1).keys() == [(1, 0)]
        assert a.truncate(1).cutoff_halves == 1

        s = AsymSeries({(3, 0): CPoly([1, 2], PREC)}, 4, PREC)
        assert s.substitute_C(3).coefficient(3) == const(7)

        assert a == AsymSeries.from_dict(a.to_dict(), PREC)
        assert a != b

    def test_shift_reexpand(self):
        """
        The series at k + 1 written about k
        """
        s = AsymSeries({(1, 0): const(1)}, 5, PREC)
        shifted = shift_reexpand(s)

        # (1 + 1/k)^(-1/2) = 1 - 1/(2k) + 3/(8k^2)
        assert shifted.keys() == [(1, 0), (3, 0), (5, 0)]
        assert shifted.coefficient(3) == const('-1/2')
        assert shifted.coefficient(5) == const('3/8')

        # ln(k + 1) (k + 1)^(-3/2) = (ln k + 1/k)(1 - 3/(2k)) k^(-3/2)
        s = AsymSeries({(3, 1): const(1)}, 5, PREC)
        shifted = shift_reexpand(s)
        assert shifted.coefficient(3, 1) == const(1)
        assert shifted.coefficient(5, 1) == const('-3/2')
        assert shifted.coefficient(5, 0) == const(1)

        # C rides along linearly
        s = AsymSeries({(3, 0): CPoly([0, 2], PREC)}, 5, PREC)
        shifted = shift_reexpand(s)
        assert shifted.coefficient(5) == CPoly([0, -3], PREC)

        with pytest.raises(PreconditionError):
            shift_reexpand(s, 3)

    def test_substitute_into_map(self):
        """
        f(s) for a power series f
        """
        local_map = PowerSeries([0, 1, 0, -1], 3, PREC)
        s = AsymSeries({(1, 0): const(1)}, 3, PREC)

        result = substitute_into_map(local_map, s)
        assert result.keys() == [(1, 0), (3, 0)]
        assert result.coefficient(3) == const(-1)

        # the zero series maps to zero
        assert substitute_into_map(
            local_map, AsymSeries({}, 3, PREC)).is_zero()

        with pytest.raises(PreconditionError):
            substitute_into_map(PowerSeries([1, 1], 3, PREC), s)

        with pytest.raises(PreconditionError):
            substitute_into_map(
                local_map, AsymSeries({(2, 0): const(1)}, 3, PREC))

    def test_asym_eval(self):
        """
        Numerical evaluation
        """
        s = AsymSeries({
            (1, 0): const(1),
            (3, 0): CPoly([0, 1], PREC),
        }, 3, PREC)

        # 1/2 + C/8 at k = 4
        assert asym_eval(s, 4) == Fraction(1, 2)
        assert asym_eval(s, 4, 2) == Fraction(3, 4)
        assert asym_eval(s, 4).precision_bits == PREC

        s = AsymSeries({(3, 1): const(1)}, 3, PREC)
        expected = BigReal(100, PREC).ln() / 1000
        self.assert_digits(asym_eval(s, 100), expected, 50)

        # growing terms
        g = GrowthSeries({(-1, 0): const(2), (0, 0): const(-1)}, 1, PREC)
        assert asym_eval(g, 9) == 5

        with pytest.raises(PreconditionError):
            asym_eval(s, 1)

    def test_reciprocal(self):
        """
        1/s for s = k^(-1/2)/2 + k^-1/4
        """
        s = AsymSeries({
            (1, 0): const('1/2'),
            (2, 0): const('1/4'),
        }, 3, PREC)

        # 2 k^(1/2) - 1 + k^(-1/2)/2
        r = asym_reciprocal(s)
        assert isinstance(r, GrowthSeries)
        assert r.keys() == [(-1, 0), (0, 0), (1, 0)]
        assert r.coefficient(-1) == const(2)
        assert r.coefficient(0) == const(-1)
        assert r.coefficient(1) == const('1/2')

        with pytest.raises(PreconditionError):
            asym_reciprocal(AsymSeries({(2, 0): const(1)}, 3, PREC))

        with pytest.raises(PreconditionError):
            asym_reciprocal(AsymSeries({}, 3, PREC))

    def test_format_series(self):
        """
        The human readable rendering
        """
        s = AsymSeries({
            (1, 0): const('1/6'),
            (2, 0): const('-1/24'),
        }, 2, PREC)
        assert format_series(s) == \
            '0.166666666667*k^(-1/2) - 0.0416666666667*k^-1'

        s = AsymSeries({
            (1, 0): const('-1'),
            (3, 1): const('1/2'),
            (3, 0): CPoly([0, 1], PREC),
        }, 3, PREC)
        assert format_series(s, 3) == \
            '-1.00*k^(-1/2) + 0.500*ln(k)*k^(-3/2) + (1.00*C)*k^(-3/2)'

        assert format_series(AsymSeries({}, 3, PREC)) == '0'
        assert str(s) == format_series(s)
