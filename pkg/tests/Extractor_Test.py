# -*- coding: utf-8 -*-
#
# Test the extraction of the free constant
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

import pytest

from iterlab.BigReal import BigReal
from iterlab.MapSpec import parse_map
from iterlab.Matcher import solve_expansion
from iterlab.AsymSeries import asym_eval
from iterlab.Orbit import OrbitResult
from iterlab.Extractor import Verdict
from iterlab.Extractor import StabilityReport
from iterlab.Extractor import scalar_equation
from iterlab.Extractor import extract_constant
from iterlab.Extractor import stability_scan
from iterlab.Errors import PreconditionError

PREC = 256

U_MAP = 'x - 18x^3 - 27x^4'

# The value of C our synthetic orbits are built from
C_TRUE = '0.375'


class Extractor_Test(TestBase):
    """
    Recover C from samples built out of a known series
    """

    def setUp(self):
        super(Extractor_Test, self).setUp()
        model = parse_map(U_MAP).taylor_at_fixed_point(4, PREC)
        self.series = solve_expansion(
            model, 8, PREC, exact_map=True).series

    def sample(self, K, C=C_TRUE, extra=None):
        value = asym_eval(self.series, K, BigReal(C, PREC))
        if extra is not None:
            value = value + extra
        return value

    def test_scalar_equation(self):
        """
        Q(C) vanishes at the C the sample was built from
        """
        K = 1000
        Q = scalar_equation(self.series, K, self.sample(K))
        assert Q.degree >= 1
        residue = abs(Q.evaluate(BigReal(C_TRUE, PREC)))
        assert residue < BigReal(2, PREC) ** -(PREC - 16)

    def test_extract_constant(self):
        """
        C comes back out of a single sample
        """
        for K in (100, 1000, 100000):
            estimate = extract_constant(self.series, K, self.sample(K))
            assert estimate.K == K
            assert estimate.series_cutoff_halves == 8
            self.assert_digits(estimate.C, C_TRUE, 50)

            # the linear guess is already close
            assert abs(estimate.initial_guess - estimate.C) < 1

        content = estimate.to_dict(30)
        assert content['K'] == 100000
        assert content['C'].startswith('0.37500000000000000000')

        # negative values of C work just as well
        estimate = extract_constant(
            self.series, 1000, self.sample(1000, C='-1.25'))
        self.assert_digits(estimate.C, '-1.25', 50)

    def test_bad_extractions(self):
        """
        Extraction needs a large enough index and a series holding C
        """
        with pytest.raises(PreconditionError):
            extract_constant(self.series, 50, self.sample(50))

        with pytest.raises(PreconditionError):
            extract_constant(
                self.series.substitute_C(BigReal(C_TRUE, PREC)), 1000,
                self.sample(1000))

    def test_stable_scan(self):
        """
        Estimates that converge give a stable verdict
        """
        # a term beyond the cutoff pulls the estimate at small K away
        samples = [(10, self.sample(10))]
        for K in (100, 1000, 10000, 100000):
            samples.append(
                (K, self.sample(K, extra=BigReal(K, PREC) ** -5)))

        orbit = OrbitResult(U_MAP, samples, PREC)
        report = stability_scan(self.series, orbit)

        # K=10 lies below the extraction threshold and is skipped
        assert [e.K for e in report.estimates] == [100, 1000, 10000, 100000]
        assert report.failures == []
        assert report.verdict == Verdict.STABLE
        assert report.stable is True

        digits = [d for _, d in report.agreed_digits]
        assert digits == sorted(digits)
        assert digits[-1] >= 12
        assert report.agreed_digits[0][0] == (100, 1000)

        self.assert_digits(report.final.C, C_TRUE, 15)

        content = report.to_dict(30)
        copy = StabilityReport.from_dict(content, PREC)
        assert copy.verdict == Verdict.STABLE
        assert copy.agreed_digits == report.agreed_digits
        assert [e.K for e in copy.estimates] == [100, 1000, 10000, 100000]

    def test_drifting_scan(self):
        """
        Estimates that wander give a drifting verdict
        """
        samples = [
            (100, self.sample(100, C='0.375')),
            (1000, self.sample(1000, C='0.5')),
            (10000, self.sample(10000, C='0.375')),
        ]

        report = stability_scan(
            self.series, OrbitResult(U_MAP, samples, PREC))
        assert report.verdict == Verdict.DRIFTING
        assert report.stable is False
        assert [d for _, d in report.agreed_digits] == [0, 0]

    def test_bad_scans(self):
        """
        A scan needs three usable checkpoints over two decades
        """
        two = [(K, self.sample(K)) for K in (100, 10000)]
        with pytest.raises(PreconditionError):
            stability_scan(self.series, OrbitResult(U_MAP, two, PREC))

        narrow = [(K, self.sample(K)) for K in (100, 200, 400, 800)]
        with pytest.raises(PreconditionError):
            stability_scan(self.series, OrbitResult(U_MAP, narrow, PREC))
