# -*- coding: utf-8 -*-
#
# Test the asymptotic expansion solver
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

import random
from fractions import Fraction

import pytest

from iterlab.BigReal import BigReal
from iterlab.MapSpec import parse_map
from iterlab.CPoly import CPoly
from iterlab.AsymSeries import AsymSeries
from iterlab.PowerSeries import PowerSeries
from iterlab.PowerSeries import kindred_transform
from iterlab.Matcher import Finality
from iterlab.Matcher import ExpansionResult
from iterlab.Matcher import solve_expansion
from iterlab.Matcher import residual_report
from iterlab.Matcher import preface_coefficients
from iterlab.Matcher import compare_fits
from iterlab.Errors import PreconditionError

PREC = 256

# u_(k+1) = u_k - 18u_k^3 - 27u_k^4 and its mirror image
U_MAP = 'x - 18x^3 - 27x^4'
V_MAP = 'x - 18x^3 + 27x^4'

# Every coefficient of the u series through k^-4; each entry lists the
# constant part and the coefficients of C, C^2, ...
U_SERIES = {
    (1, 0): ['1/6'],
    (2, 0): ['-1/24'],
    (3, 1): ['-11/192'],
    (3, 0): ['0', '1'],
    (4, 1): ['11/384'],
    (4, 0): ['-5/384', '-1/2'],
    (5, 2): ['121/4096'],
    (5, 1): ['-121/3072', '-33/32'],
    (5, 0): ['77/3072', '11/16', '9'],
    (6, 2): ['-121/6144'],
    (6, 1): ['77/2048', '11/16'],
    (6, 0): ['-139/6144', '-21/32', '-6'],
    (7, 3): ['-6655/393216'],
    (7, 2): ['1331/24576', '1815/2048'],
    (7, 1): ['-2299/32768', '-121/64', '-495/32'],
    (7, 0): ['2293/73728', '627/512', '33/2', '90'],
    (8, 3): ['1331/98304'],
    (8, 2): ['-10285/196608', '-363/512'],
    (8, 1): ['297/4096', '935/512', '99/8'],
    (8, 0): ['-9959/294912', '-81/64', '-255/16', '-72'],
}


def solve(text, cutoff_halves, degree=None):
    spec = parse_map(text)
    if degree is None:
        degree = spec.polynomial_degree
    model = spec.taylor_at_fixed_point(degree, PREC)
    return solve_expansion(
        model, cutoff_halves, PREC, exact_map=spec.is_exact_polynomial)


class Matcher_Test(TestBase):
    """
    Test the matching of asymptotic series against local maps
    """

    def test_u_series(self):
        """
        The leading coefficients of the u series
        """
        result = solve(U_MAP, 8)
        assert result.cutoff_halves == 8
        assert result.map_degree == 4
        assert result.precision_bits == PREC

        expected = {
            (1, 0): '1/6',
            (2, 0): '-1/24',
            (3, 1): '-11/192',
            (4, 1): '11/384',
            (4, 0): '-5/384',
        }
        for (halves, logpow), value in expected.items():
            self.assert_digits(
                result.coefficient(halves, logpow)[0], value, 60)

        # C itself sits at k^(-3/2)
        assert result.coefficient(3, 0).coeffs == [0, 1]

        # and it enters k^-2 with slope -1/2
        self.assert_digits(result.coefficient(4, 0)[1], '-1/2', 60)

        self.assert_digits(
            result.coefficient(8, 0)[0], '-9959/294912', 30)

        # every coefficient of a polynomial map is final
        assert set(result.finality.values()) == set([Finality.FINAL])
        assert result.transient() == []

        # the series satisfies the map to the working precision
        assert result.residual_max < BigReal(2, PREC) ** -(PREC - 64)
        assert residual_report(
            parse_map(U_MAP).taylor_at_fixed_point(4, PREC),
            result.series) == result.residual_max

    def test_displayed_coefficients(self):
        """
        Both series match every coefficient polynomial through k^-4
        """
        tiny = BigReal(2, PREC) ** -(PREC - 100)
        for text, flip in ((U_MAP, False), (V_MAP, True)):
            result = solve(text, 8)
            assert sorted(result.series.keys()) == sorted(U_SERIES.keys())

            for (halves, logpow), expected in U_SERIES.items():
                solved = result.coefficient(halves, logpow)
                for d in range(len(expected), solved.degree + 1):
                    assert abs(solved[d]) < tiny

                for d, value in enumerate(expected):
                    value = BigReal(value, PREC)
                    if flip and halves % 2 == 0:
                        # the mirror image flips the even levels
                        value = -value

                    if value.is_zero():
                        assert abs(solved[d]) < tiny

                    else:
                        self.assert_digits(solved[d], value, 30)

    def test_v_series(self):
        """
        Flipping the sign of the quartic term flips the even levels
        """
        u = solve(U_MAP, 4)
        v = solve(V_MAP, 4)

        self.assert_digits(v.coefficient(4, 0)[0], '5/384', 60)
        self.assert_digits(v.coefficient(2, 0)[0], '1/24', 60)
        self.assert_digits(
            v.coefficient(1, 0)[0], u.coefficient(1, 0)[0], 60)
        self.assert_digits(
            v.coefficient(3, 1)[0], u.coefficient(3, 1)[0], 60)

    def test_leading_terms(self):
        """
        The quintic part already fixes the ln(k) k^(-3/2) term
        """
        result = solve('x - x^3 + (1/2)x^4 + (2/3)x^5', 3)
        root2 = BigReal(2, PREC).sqrt()

        self.assert_digits(result.coefficient(1, 0)[0], 1 / root2, 60)
        self.assert_digits(result.coefficient(2, 0)[0], '1/4', 60)
        self.assert_digits(
            result.coefficient(3, 1)[0], -7 / (root2 * 48), 60)
        assert result.coefficient(3, 0).coeffs == [0, 1]
        assert sorted(result.series.keys()) == [
            (1, 0), (2, 0), (3, 0), (3, 1)]

    def test_kindred_maps(self):
        """
        s -> -f(-s) flips the sign of the even levels of the whole series
        """
        tiny = BigReal(2, PREC) ** -(PREC - 100)
        for text in (U_MAP, 'x - 2x^3 + 3x^4 - x^5 + (1/2)x^6',
                     'x - (1/2)x^3 - x^4 + 2x^5'):
            spec = parse_map(text)
            model = spec.taylor_at_fixed_point(spec.polynomial_degree, PREC)
            lhs = solve_expansion(model, 8, PREC, exact_map=True)
            rhs = solve_expansion(
                kindred_transform(model), 8, PREC, exact_map=True)

            keys = set(lhs.series.keys()) | set(rhs.series.keys())
            assert len(keys) > 10
            for halves, logpow in keys:
                q = lhs.coefficient(halves, logpow)
                r = rhs.coefficient(halves, logpow)
                for d in range(max(q.degree, r.degree) + 1):
                    expected = q[d] if halves % 2 else -q[d]
                    assert abs(r[d] - expected) < tiny

    def test_preface_closed_forms(self):
        """
        The closed forms agree with the solver for a general quintic and
        sextic part
        """
        text = 'x - 2x^3 + 3x^4 - x^5 + (1/2)x^6'
        result = solve(text, 4)
        closed = preface_coefficients(2, 3, -1, Fraction(1, 2), PREC)

        tiny = BigReal(2, PREC) ** -(PREC - 80)
        for key, cpoly in closed.items():
            solved = result.coefficient(*key)
            for d in range(cpoly.degree + 1):
                self.assert_digits(solved[d], cpoly[d], 60)

            # nothing beyond the closed form's C-degree
            assert abs(solved[cpoly.degree + 1]) < tiny

        # and the u series by hand
        closed = preface_coefficients(18, -27, precision_bits=PREC)
        self.assert_digits(closed[(4, 0)][0], '-5/384', 60)
        self.assert_digits(closed[(4, 0)][1], '-1/2', 60)
        self.assert_digits(closed[(1, 0)][0], '1/6', 60)

        with pytest.raises(PreconditionError):
            preface_coefficients(0, 1, precision_bits=PREC)

    def test_preface_random_maps(self):
        """
        The closed forms hold for arbitrary a > 0, b, d and e
        """
        rng = random.Random(20250321)
        tiny = BigReal(2, PREC) ** -(PREC - 100)

        def draw():
            return Fraction(rng.randint(-6, 6), 2)

        for _ in range(5):
            a = Fraction(rng.randint(1, 6), 2)
            b, d, e = draw(), draw(), draw()

            model = PowerSeries([0, 1, 0, -a, b, d, e], 6, PREC)
            result = solve_expansion(model, 4, PREC, exact_map=True)
            closed = preface_coefficients(a, b, d, e, PREC)

            for key, cpoly in closed.items():
                solved = result.coefficient(*key)
                for n in range(max(cpoly.degree, solved.degree) + 1):
                    if abs(cpoly[n]) < tiny:
                        assert abs(solved[n]) < tiny

                    else:
                        self.assert_digits(solved[n], cpoly[n], 25)

    def test_residual_detects_changes(self):
        """
        Moving any single coefficient by 1/1000 breaks the match
        """
        model = parse_map(U_MAP).taylor_at_fixed_point(4, PREC)
        result = solve(U_MAP, 8)
        assert result.residual_max < BigReal(2, PREC) ** -(PREC - 48)

        step = BigReal('0.001', PREC)
        limit = BigReal('0.0001', PREC)
        for key, coeff in result.series.items():
            for d in range(coeff.degree + 1):
                if coeff[d].is_zero():
                    continue

                values = list(coeff.coeffs)
                values[d] = values[d] + step

                terms = dict(result.series.terms)
                terms[key] = CPoly(values, PREC)
                changed = AsymSeries(terms, 8, PREC)
                assert residual_report(model, changed) > limit, \
                    'C^%d at %r went unnoticed' % (d, key)

    def test_transient_coefficients(self):
        """
        A truncated Taylor model only fixes the low levels
        """
        result = solve('popa_g', 8, degree=6)
        assert result.map_degree == 6
        assert result.finality[(4, 0)] == Finality.FINAL
        assert result.finality[(4, 1)] == Finality.FINAL
        assert result.finality[(5, 0)] == Finality.TRANSIENT
        assert result.finality[(8, 3)] == Finality.TRANSIENT
        assert (5, 0) in result.transient()
        assert (4, 0) not in result.transient()

    def test_septic_coefficients(self):
        """
        The degree 7 fit of y/(1 + y ln(1 + y)) through k^-4
        """
        result = solve('popa_g', 8, degree=7)
        tiny = BigReal(2, PREC) ** -(PREC - 100)
        root2 = BigReal(2, PREC).sqrt()

        def q(text, scale=1):
            return BigReal(text, PREC) * scale

        r = 1 / root2

        # None marks a constant part pinned separately below
        expected = {
            (1, 0): [r],
            (2, 0): [q('1/4')],
            (3, 1): [q('-7/48', r)],
            (3, 0): [q(0), q(1)],
            (4, 1): [q('-7/96')],
            (4, 0): [q('-1/32'), r],
            (5, 2): [q('49/1536', r)],
            (5, 1): [q('-49/1152', r), q('-7/16')],
            (5, 0): [q('-11/5760', r), q('7/24'), q(3, r)],
            (6, 2): [q('49/2304')],
            (6, 1): [q('-7/2304'), q('-7/12', r)],
            (6, 0): [None, q('1/24', r), q(2)],
            (7, 3): [q('-1715/221184', r)],
            (7, 2): [q('343/13824', r), q('245/1536')],
            (7, 1): [q('-203/18432', r), q('-49/144'), q('-35/16', r)],
            (7, 0): [None, q('29/384'), q(7, r) / 3, q(5)],
            (8, 3): [q('-343/55296')],
            (8, 2): [q('833/110592'), q('49/192', r)],
            (8, 1): [None, q('-119/576', r), q('-7/4')],
            (8, 0): [None, q('-779/3600', r), q('17/24'), q(4, root2)],
        }

        assert sorted(result.series.keys()) == sorted(expected.keys())
        for key, values in expected.items():
            solved = result.coefficient(*key)
            for n, value in enumerate(values):
                if value is None:
                    continue

                if value.is_zero():
                    assert abs(solved[n]) < tiny

                else:
                    self.assert_digits(solved[n], value, 30)

        # the constant parts that differ from the hand computed values
        self.assert_digits(result.coefficient(6, 0)[0], '0.04157986111', 9)
        self.assert_digits(result.coefficient(8, 0)[0], '0.1214344618', 9)

    def test_compare_fits(self):
        """
        The x^8 term of y/(1 + y ln(1 + y)) only moves q(6,0)
        """
        lower = solve('popa_g', 6, degree=7)
        higher = solve('popa_g', 6, degree=8)

        changes = compare_fits(lower, higher)
        tiny = BigReal(2, PREC) ** -(PREC - 80)
        for key, delta in changes.items():
            if key == (6, 0):
                self.assert_digits(delta, '5/144', 50)
            else:
                assert delta < tiny

        # the constant moves down; the C part stays put
        shift = higher.coefficient(6, 0) - lower.coefficient(6, 0)
        self.assert_digits(shift[0], '-5/144', 50)

    def test_expansion_result(self):
        """
        The JSON form keeps the series and its status
        """
        result = solve(U_MAP, 5)
        content = result.to_dict(40)
        assert content['map_degree'] == 4
        assert len(content['finality']) == len(result.finality)

        copy = ExpansionResult.from_dict(content, PREC)
        assert copy.finality == result.finality
        assert copy.map_degree == 4
        self.assert_digits(
            copy.coefficient(4, 0)[0], result.coefficient(4, 0)[0], 38)

    def test_bad_maps(self):
        """
        Only x - a x^3 + ... with a > 0 can be expanded
        """
        def model(*coeffs):
            return PowerSeries(coeffs, 4, PREC)

        with pytest.raises(PreconditionError):
            # a slope that is not 1
            solve_expansion(model(0, '1/2', '-3/2'), 4, PREC)

        with pytest.raises(PreconditionError):
            # an x^2 term
            solve_expansion(model(0, 1, -1), 4, PREC)

        with pytest.raises(PreconditionError):
            # repelling
            solve_expansion(model(0, 1, 0, 1), 4, PREC)

        with pytest.raises(PreconditionError):
            solve_expansion(PowerSeries([0, 1], 2, PREC), 4, PREC)

        with pytest.raises(PreconditionError):
            solve_expansion(model(0, 1, 0, -1), 2, PREC)
