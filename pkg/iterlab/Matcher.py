# -*- coding: utf-8 -*-
#
# The matching-coefficient solver for gap-2 recurrences
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
"""
Given a local map  P(x) = x - a x^3 + b x^4 + d x^5 + e x^6 + ...  the orbit
u_(k+1) = P(u_k) decays like

    u_k = q_1 k^(-1/2) + q_2 k^(-1) + (q_31 ln k + C) k^(-3/2) + ...

Every coefficient except the one of k^(-3/2) (the free constant C) is
found by asking the shifted series u(k+1) to equal P(u(k)) term by term.

The defect E = u(k+1) - P(u(k)) at k^(-(h+2)/2) ln(k)^j is linear in
the level h unknowns:  (3-h)/2 * q_hj + (j+1) * q_h(j+1) + (terms known
from the levels below).  The levels are therefore solved in increasing h
and, within a level, from the highest power of ln(k) down.  Level 3 is
the one exception; its slope vanishes, which leaves q_30 free (that is C)
while q_31 is fixed by the equation at ln(k)^0.
"""
from .BigReal import BigReal
from .BigReal import digits_for_precision
from .BigReal import format_decimal
from .BigReal import parse_decimal
from .CPoly import CPoly
from .AsymSeries import AsymSeries
from .AsymSeries import logpow_cap
from .AsymSeries import shift_reexpand
from .AsymSeries import substitute_into_map
from .Errors import PreconditionError
from .Errors import SingularStepError

import logging
from .Logging import ITERLAB_SERIES
logger = logging.getLogger(ITERLAB_SERIES)


class Finality(object):
    """
    A coefficient is final once the map's Taylor model is long enough
    that higher order terms of the map can no longer change it.
    """
    FINAL = 'final'
    TRANSIENT = 'transient'


# The number of bits below the working precision a residual may reach
RESIDUAL_SLACK_BITS = 48


def residual_tolerance(precision_bits, scale=1):
    """
    Returns scale * 2^-(precision - 48)
    """
    return BigReal(scale, precision_bits) / \
        (2 ** (precision_bits - RESIDUAL_SLACK_BITS))


class ExpansionResult(object):
    """
    The outcome of solve_expansion()
    """

    def __init__(self, series, finality, residual_max, map_degree,
                 exact_map=False):
        # The AsymSeries with C left symbolic
        self.series = series

        # (halves, logpow) -> Finality
        self.finality = finality

        # The largest defect left in the matching equations
        self.residual_max = residual_max

        # The Taylor degree the map was carried to
        self.map_degree = map_degree

        # True if the map was an exact polynomial
        self.exact_map = exact_map

    @property
    def cutoff_halves(self):
        return self.series.cutoff_halves

    @property
    def precision_bits(self):
        return self.series.precision_bits

    def coefficient(self, halves, logpow=0):
        return self.series.coefficient(halves, logpow)

    def transient(self):
        """
        Returns the sorted list of (halves, logpow) marked transient
        """
        return sorted(
            k for k, v in self.finality.items() if v == Finality.TRANSIENT)

    def to_dict(self, digits=None):
        if digits is None:
            digits = digits_for_precision(self.precision_bits)

        content = self.series.to_dict(digits)
        content['finality'] = [{
            'halves': halves,
            'logpow': logpow,
            'status': self.finality[(halves, logpow)],
        } for halves, logpow in sorted(self.finality.keys())]
        content['residual_max'] = format_decimal(self.residual_max, digits)
        content['map_degree'] = self.map_degree
        return content

    @classmethod
    def from_dict(cls, content, precision_bits=None):
        series = AsymSeries.from_dict(content, precision_bits)
        finality = {
            (int(e['halves']), int(e['logpow'])): e['status']
            for e in content.get('finality', [])}

        return cls(
            series, finality,
            parse_decimal(content.get('residual_max', '0'),
                          series.precision_bits),
            int(content.get('map_degree', 0)))

    def __repr__(self):
        return '<ExpansionResult cutoff_halves=%d map_degree=%d />' % (
            self.cutoff_halves, self.map_degree)


def _defect(local_map, terms, cutoff_halves, precision_bits):
    """
    Returns u(k+1) - P(u(k)) through cutoff_halves along with the size of
    the largest coefficient that went into it.
    """
    series = AsymSeries(terms, cutoff_halves, precision_bits)
    shifted = shift_reexpand(series, cutoff_halves)
    mapped = substitute_into_map(local_map, series, cutoff_halves)

    scale = max(
        shifted.max_abs_coefficient(), mapped.max_abs_coefficient(),
        BigReal(1, precision_bits))
    return shifted - mapped, scale


def _check_local_map(local_map, precision_bits):
    """
    Verifies the map has the form x - a x^3 + ...  and returns a
    """
    tolerance = residual_tolerance(precision_bits)

    if local_map.trunc_degree < 3:
        raise PreconditionError(
            'the local map must be carried through x^3 at least')

    if abs(local_map[0]) > tolerance:
        raise PreconditionError('the local map must fix 0')

    if abs(local_map[1] - 1) > tolerance:
        raise PreconditionError(
            'the local map must have a unit linear coefficient (found %s)' %
            format_decimal(local_map[1], 12))

    if abs(local_map[2]) > tolerance:
        raise PreconditionError(
            'the local map has an x^2 term; only gap-2 maps are supported')

    a = -local_map[3]
    if a.sign() <= 0:
        raise PreconditionError(
            'the local map requires a positive a in x - a x^3 (found %s)' %
            format_decimal(a, 12))

    return a


def solve_expansion(local_map, cutoff_halves, precision_bits=None,
                    exact_map=False):
    """
    Solves for the asymptotic expansion of the orbit of local_map through
    k^(-cutoff_halves/2).

    local_map must read  x - a x^3 + b x^4 + ...  with a > 0.  The result
    carries every coefficient as a CPoly in the free constant C (which is
    the coefficient of k^(-3/2) itself).

    Coefficients at levels h with map_degree >= h + 2 are final; the rest
    are transient unless exact_map is set (the map is a polynomial, so
    there are no higher order terms to add).
    """
    if precision_bits is None:
        precision_bits = local_map.precision_bits

    cutoff_halves = int(cutoff_halves)
    if cutoff_halves < 3:
        raise PreconditionError('the cutoff must be at least 3 halves')

    a = _check_local_map(local_map, precision_bits)
    map_degree = local_map.trunc_degree

    logger.info('Solving the expansion of a degree %d map through '
                'k^(-%d/2)' % (map_degree, cutoff_halves))

    # Leading term
    q1 = (a * 2).sqrt()
    q1 = BigReal(1, precision_bits) / q1
    terms = {(1, 0): CPoly.constant(q1, precision_bits)}

    for halves in range(2, cutoff_halves + 1):
        level = halves + 2
        cap = logpow_cap(halves)

        defect, scale = _defect(local_map, terms, level, precision_bits)
        tolerance = residual_tolerance(precision_bits, scale)

        # Equations beyond the level's log cap hold no unknown; they must
        # be satisfied already
        highest = 0 if halves == 3 else cap
        for logpow in range(highest + 1, logpow_cap(level) + 1):
            residue = defect.coefficient(level, logpow).max_abs()
            if residue > tolerance:
                raise SingularStepError(
                    'the equation at ln(k)^%d k^(-%d/2) cannot be matched '
                    '(defect %s); the expansion basis is deficient' % (
                        logpow, level, format_decimal(residue, 6)))

        if halves == 3:
            # The free constant; its matching slope vanishes so it has
            # no part in the level 5 equations
            terms[(3, 0)] = CPoly.monomial(1, precision_bits)
            terms[(3, 1)] = -defect.coefficient(level, 0)
            logger.debug('q(3,1) = %s' % terms[(3, 1)])
            continue

        slope = BigReal(3 - halves, precision_bits) / 2
        above = CPoly([], precision_bits)
        for logpow in range(cap, -1, -1):
            # E = r0 + slope * q(h,j) + (j+1) * q(h,j+1) = 0
            rhs = defect.coefficient(level, logpow) + \
                above.scale(logpow + 1)
            value = (-rhs).scale(1 / slope)
            if not value.is_zero():
                terms[(halves, logpow)] = value

            logger.debug('q(%d,%d) = %s' % (halves, logpow, value))
            above = value

    series = AsymSeries(terms, cutoff_halves, precision_bits)

    finality = {}
    for halves in range(1, cutoff_halves + 1):
        status = Finality.FINAL if exact_map or map_degree >= halves + 2 \
            else Finality.TRANSIENT

        for logpow in range(logpow_cap(halves) + 1):
            finality[(halves, logpow)] = status

    residual_max = residual_report(local_map, series)
    logger.info('Expansion solved; residual %s' % format_decimal(
        residual_max, 6))

    return ExpansionResult(
        series, finality, residual_max, map_degree, exact_map=exact_map)


def residual_report(local_map, series):
    """
    Returns the largest coefficient (over every term and C-degree) of
    u(k+1) - P(u(k)).

    The defect is carried two halves past the series cutoff; those two
    levels still hold no unknown beyond the cutoff, so a change to any
    coefficient of the series shows up in the report.
    """
    if series.is_zero():
        return BigReal(0, series.precision_bits)

    cutoff_halves = series.cutoff_halves + 2
    defect = shift_reexpand(series, cutoff_halves) - \
        substitute_into_map(local_map, series, cutoff_halves)

    return defect.max_abs_coefficient()


def preface_coefficients(a, b, d=0, e=0, precision_bits=None):
    """
    The closed forms of the leading coefficients for the map
    x - a x^3 + b x^4 + d x^5 + e x^6 + ...

    Returns a dictionary (halves, logpow) -> CPoly:
        (1,0) = 1/sqrt(2a)
        (2,0) = b/(2a^2)
        (3,1) = (-3a^3 + 2b^2 + 2ad)/(8 sqrt(2) a^(7/2))
        (3,0) = C
        (4,1) = (-3a^3 b + 2b^3 + 2abd)/(8a^5)
        (4,0) = (a^3 b - 3b^3 - 3abd - a^2 e)/(4a^5) + sqrt(2) b/a^(3/2) C
    """
    a = BigReal(a, precision_bits)
    precision_bits = a.precision_bits
    b = BigReal(b, precision_bits)
    d = BigReal(d, precision_bits)
    e = BigReal(e, precision_bits)

    if a.sign() <= 0:
        raise PreconditionError('a must be positive')

    root2 = BigReal(2, precision_bits).sqrt()
    root_a = a.sqrt()

    def const(value):
        return CPoly.constant(value, precision_bits)

    return {
        (1, 0): const(1 / (root2 * root_a)),
        (2, 0): const(b / (a ** 2 * 2)),
        (3, 1): const(
            (a ** 3 * -3 + b ** 2 * 2 + a * d * 2) /
            (root2 * a ** 3 * root_a * 8)),
        (3, 0): CPoly.monomial(1, precision_bits),
        (4, 1): const(
            (a ** 3 * b * -3 + b ** 3 * 2 + a * b * d * 2) / (a ** 5 * 8)),
        (4, 0): CPoly([
            (a ** 3 * b - b ** 3 * 3 - a * b * d * 3 - a ** 2 * e) /
            (a ** 5 * 4),
            root2 * b / (a * root_a),
        ], precision_bits),
    }


def compare_fits(lower, higher):
    """
    Compares two ExpansionResults of the same map computed from Taylor
    models of different degrees.

    Returns a dictionary (halves, logpow) -> BigReal holding the largest
    coefficient change (over the C-degrees) for every term the two share.
    """
    cutoff_halves = min(lower.cutoff_halves, higher.cutoff_halves)
    changes = {}
    for halves in range(1, cutoff_halves + 1):
        for logpow in range(logpow_cap(halves) + 1):
            delta = higher.coefficient(halves, logpow) - \
                lower.coefficient(halves, logpow)
            changes[(halves, logpow)] = delta.max_abs()

    return changes
