# -*- coding: utf-8 -*-
#
# Asymptotic series over the basis ln(k)^j * k^(-h/2)
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
An asymptotic series is a finite sum of terms

    coeff * ln(k)^j * k^(-h/2)

where the coefficient is a CPoly (a polynomial in the free constant C).
The pair (h, j) is referred to as (halves, logpow) throughout.

AsymSeries holds decaying terms only (h >= 1) and enforces the term
inventory of gap-2 expansions: j <= (h-1)//2 and a C-degree of at most
(h-1)//2.  GrowthSeries (the reciprocal of an AsymSeries) may hold
growing and constant terms (h <= 0) and carries no such caps.
"""
from math import comb
from fractions import Fraction
from functools import lru_cache

from .BigReal import BigReal
from .BigReal import default_precision
from .BigReal import digits_for_precision
from .BigReal import format_decimal
from .CPoly import CPoly
from .Errors import PreconditionError
from .Errors import InconsistencyError

import logging
from .Logging import ITERLAB_SERIES
logger = logging.getLogger(ITERLAB_SERIES)

# Extra bits carried while summing a series numerically
EVAL_GUARD_BITS = 64


def logpow_cap(halves):
    """
    The largest power of ln(k) (and of C) a decaying term at k^(-h/2)
    may carry.
    """
    return max(0, (halves - 1) // 2)


class AsymTerm(object):
    """
    A single term  coeff * ln(k)^logpow * k^(-halves/2)
    """

    __slots__ = ('halves', 'logpow', 'coeff')

    def __init__(self, halves, logpow, coeff):
        self.halves = halves
        self.logpow = logpow
        self.coeff = coeff

    def __iter__(self):
        return iter((self.halves, self.logpow, self.coeff))

    def __repr__(self):
        return '<AsymTerm halves=%d logpow=%d coeff="%s" />' % (
            self.halves, self.logpow, self.coeff)


class TermSeries(object):
    """
    The term algebra shared by AsymSeries and GrowthSeries.

    terms maps (halves, logpow) to a non zero CPoly; every stored halves
    value is at most cutoff_halves.
    """

    def __init__(self, terms=None, cutoff_halves=0, precision_bits=None):
        if precision_bits is None:
            precision_bits = default_precision()

        self.cutoff_halves = int(cutoff_halves)
        self.precision_bits = precision_bits
        self.terms = {}

        for key, coeff in (terms or {}).items():
            halves, logpow = key
            if not isinstance(coeff, CPoly):
                coeff = CPoly.constant(coeff, precision_bits)

            if coeff.is_zero():
                continue

            if halves > self.cutoff_halves:
                raise PreconditionError(
                    'term k^(-%d/2) lies beyond the cutoff %d' % (
                        halves, self.cutoff_halves))

            if logpow < 0:
                raise PreconditionError('negative power of ln(k)')

            self._check(halves, logpow, coeff)
            self.terms[(int(halves), int(logpow))] = coeff

    def _check(self, halves, logpow, coeff):
        """
        Validate a term; nothing to check by default
        """
        return True

    def _new(self, terms, cutoff_halves=None):
        """
        Returns a series of the same type
        """
        return type(self)(
            terms,
            self.cutoff_halves if cutoff_halves is None else cutoff_halves,
            self.precision_bits)

    def coefficient(self, halves, logpow=0):
        """
        Returns the CPoly stored at (halves, logpow); zero if absent
        """
        return self.terms.get(
            (halves, logpow), CPoly([], self.precision_bits))

    def keys(self):
        """
        The (halves, logpow) pairs sorted by decreasing magnitude:
        ascending halves and, within a halves value, descending logpow.
        """
        return sorted(self.terms.keys(), key=lambda k: (k[0], -k[1]))

    def items(self):
        return [(key, self.terms[key]) for key in self.keys()]

    def __iter__(self):
        for (halves, logpow), coeff in self.items():
            yield AsymTerm(halves, logpow, coeff)

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def leading_term(self):
        """
        Returns the term of largest magnitude (None for the zero series)
        """
        keys = self.keys()
        if not keys:
            return None
        halves, logpow = keys[0]
        return AsymTerm(halves, logpow, self.terms[keys[0]])

    def __add__(self, other):
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            terms[key] = terms[key] + coeff if key in terms else coeff
        return self._new(terms, max(self.cutoff_halves, other.cutoff_halves))

    def __sub__(self, other):
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            terms[key] = terms[key] - coeff if key in terms else -coeff
        return self._new(terms, max(self.cutoff_halves, other.cutoff_halves))

    def __neg__(self):
        return self._new({k: -c for k, c in self.terms.items()})

    def scale(self, factor):
        """
        Multiplies every coefficient by a scalar or a CPoly
        """
        return self._new({k: c * factor for k, c in self.terms.items()})

    def multiply(self, other, cutoff_halves):
        """
        The product of two series keeping terms through cutoff_halves
        """
        terms = {}
        for (h1, j1), c1 in self.terms.items():
            for (h2, j2), c2 in other.terms.items():
                halves = h1 + h2
                if halves > cutoff_halves:
                    continue

                key = (halves, j1 + j2)
                product = c1 * c2
                terms[key] = terms[key] + product if key in terms else product

        return self._new(terms, cutoff_halves)

    def truncate(self, cutoff_halves):
        return self._new(
            {k: c for k, c in self.terms.items() if k[0] <= cutoff_halves},
            cutoff_halves)

    def substitute_C(self, value):
        """
        Returns the series with a numeric value substituted for C; every
        coefficient becomes a constant CPoly.
        """
        return self._new({
            k: CPoly.constant(c.evaluate(value), self.precision_bits)
            for k, c in self.terms.items()})

    def c_degree(self):
        """
        The largest power of C found in the series
        """
        return max((c.degree for c in self.terms.values()), default=-1)

    def max_abs_coefficient(self):
        """
        The largest coefficient magnitude over every term and C-degree
        """
        return max(
            (c.max_abs() for c in self.terms.values()),
            default=BigReal(0, self.precision_bits))

    def to_dict(self, digits=None):
        if digits is None:
            digits = digits_for_precision(self.precision_bits)

        return {
            'cutoff_halves': self.cutoff_halves,
            'terms': [{
                'halves': halves,
                'logpow': logpow,
                'cpoly': coeff.to_list(digits),
            } for (halves, logpow), coeff in sorted(self.terms.items())],
        }

    @classmethod
    def from_dict(cls, content, precision_bits=None):
        if precision_bits is None:
            precision_bits = default_precision()

        terms = {}
        for entry in content.get('terms', []):
            terms[(int(entry['halves']), int(entry['logpow']))] = \
                CPoly.from_list(entry['cpoly'], precision_bits)

        return cls(terms, content['cutoff_halves'], precision_bits)

    def __eq__(self, other):
        if not isinstance(other, TermSeries):
            return NotImplemented
        return self.cutoff_halves == other.cutoff_halves and \
            self.terms == other.terms

    __hash__ = None

    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return '<%s terms=%d cutoff_halves=%d />' % (
            type(self).__name__, len(self.terms), self.cutoff_halves)


class AsymSeries(TermSeries):
    """
    A decaying asymptotic series; every term has halves >= 1 and
    respects the logarithm and C-degree caps.
    """

    def _check(self, halves, logpow, coeff):
        if halves < 1:
            raise PreconditionError(
                'an asymptotic series term must decay (halves=%d)' % halves)

        cap = logpow_cap(halves)
        if logpow > cap:
            raise InconsistencyError(
                'ln(k)^%d at k^(-%d/2) exceeds the log power cap %d' % (
                    logpow, halves, cap))

        if coeff.degree > cap:
            raise InconsistencyError(
                'C^%d at k^(-%d/2) exceeds the C-degree cap %d' % (
                    coeff.degree, halves, cap))

        return True


class GrowthSeries(TermSeries):
    """
    A series that may also hold growing (halves < 0) and constant
    (halves = 0) terms, as produced by asym_reciprocal().
    """
    pass


@lru_cache(maxsize=1024)
def _shift_table(halves, logpow, depth):
    """
    Returns the exact expansion of  (1 + t)^(-h/2) * (ln k + L(t))^j  where
    t = 1/k and L(t) = ln(1 + t), as a list of (m, i, coefficient) where
    the coefficient multiplies  t^m * ln(k)^(j - i).  Powers of t above
    depth are dropped.
    """
    # binomial series of (1 + t)^(-h/2)
    exponent = Fraction(-halves, 2)
    binom = [Fraction(1)]
    for m in range(1, depth + 1):
        binom.append(binom[-1] * (exponent - m + 1) / m)

    # Mercator series of ln(1 + t)
    mercator = [Fraction(0)] + [
        Fraction((-1) ** (m + 1), m) for m in range(1, depth + 1)]

    def multiply(a, b):
        result = [Fraction(0)] * (depth + 1)
        for x, av in enumerate(a):
            if not av:
                continue
            for y, bv in enumerate(b[:depth + 1 - x]):
                result[x + y] += av * bv
        return result

    table = []
    power = [Fraction(1)] + [Fraction(0)] * depth
    for i in range(logpow + 1):
        if i > 0:
            power = multiply(power, mercator)

        product = multiply(binom, power)
        weight = comb(logpow, i)
        for m, value in enumerate(product):
            if value:
                table.append((m, i, value * weight))

    return tuple(table)


def shift_reexpand(s, cutoff_halves=None):
    """
    Returns the series of s evaluated at k+1 re-expanded about k:

        ln(k+1)^j (k+1)^(-h/2)
            = k^(-h/2) (1 + 1/k)^(-h/2) (ln k + ln(1 + 1/k))^j

    truncated at cutoff_halves.  The expansion is linear in each
    coefficient so CPoly coefficients shift exactly as numbers do.
    """
    if cutoff_halves is None:
        cutoff_halves = s.cutoff_halves

    if cutoff_halves < s.cutoff_halves:
        raise PreconditionError(
            'cannot shift a series with cutoff %d into cutoff %d' % (
                s.cutoff_halves, cutoff_halves))

    terms = {}
    for (halves, logpow), coeff in s.terms.items():
        # each power of 1/k moves the term two halves down
        depth = (cutoff_halves - halves) // 2
        if depth < 0:
            continue

        for m, i, value in _shift_table(halves, logpow, depth):
            key = (halves + 2 * m, logpow - i)
            contribution = coeff.scale(value)
            terms[key] = terms[key] + contribution \
                if key in terms else contribution

    return s._new(terms, cutoff_halves)


def substitute_into_map(local_map, s, cutoff_halves=None):
    """
    Returns local_map(s) truncated at cutoff_halves; local_map is a
    PowerSeries with a zero constant term and s an AsymSeries whose
    leading term decays like k^(-1/2).

    Powers of s are built by repeated truncated multiplication; the map's
    coefficients beyond its truncation degree are taken to be zero.
    """
    if cutoff_halves is None:
        cutoff_halves = s.cutoff_halves

    if not local_map[0].is_zero():
        raise PreconditionError(
            'the local map must have a zero constant term')

    lead = s.leading_term()
    if lead is not None and lead.halves != 1:
        raise PreconditionError(
            'the series must lead with k^(-1/2) (found k^(-%d/2))' %
            lead.halves)

    result = s._new({}, cutoff_halves)
    if lead is None:
        return result

    power = s.truncate(cutoff_halves)
    for n in range(1, min(local_map.trunc_degree, cutoff_halves) + 1):
        if n > 1:
            power = power.multiply(s, cutoff_halves)

        if not local_map[n].is_zero():
            result = result + power.scale(local_map[n])

    return result


def asym_eval(s, k, C_value=0):
    """
    Evaluates the series numerically at the index k with C_value
    substituted for C.

    Terms are summed from the largest to the smallest magnitude with
    EVAL_GUARD_BITS extra bits and the total is rounded back to the
    series' precision.
    """
    if int(k) < 2:
        raise PreconditionError('a series is evaluated at k >= 2 only')

    precision_bits = s.precision_bits
    working = precision_bits + EVAL_GUARD_BITS

    k = BigReal(int(k), working)
    C_value = BigReal(C_value, working)
    lnk = k.ln()
    root = k.sqrt()
    inv_root = 1 / root

    total = BigReal(0, working)
    for (halves, logpow), coeff in s.items():
        value = coeff.evaluate(C_value).with_precision(working)
        if value.is_zero():
            continue

        if halves >= 0:
            scale = inv_root ** halves
        else:
            scale = root ** (-halves)

        total = total + value * scale * (lnk ** logpow)

    return total.with_precision(precision_bits)


def asym_reciprocal(s):
    """
    Returns 1/s as a GrowthSeries.

    With s = q k^(-1/2) (1 + R) the reciprocal is
    (k^(1/2)/q) (1 - R + R^2 - ...); the result leads with k^(1/2) and
    carries cutoff_halves - 1 half steps beyond it.
    """
    lead = s.leading_term()
    if lead is None or lead.halves != 1 or lead.logpow != 0 or \
            lead.coeff.degree != 0:
        raise PreconditionError(
            'the reciprocal requires a leading term q*k^(-1/2) with a '
            'non-zero constant q')

    precision_bits = s.precision_bits
    q = lead.coeff[0]

    # R is measured relative to the leading term
    depth = s.cutoff_halves - 1
    rel = GrowthSeries({
        (halves - 1, logpow): coeff.scale(1 / q)
        for (halves, logpow), coeff in s.terms.items() if halves > 1
    }, depth, precision_bits)

    one = GrowthSeries({(0, 0): CPoly.constant(1, precision_bits)},
                       depth, precision_bits)

    # 1 - R + R^2 - ... ; R carries at least one half step so depth
    # powers suffice
    total = one
    power = one
    for n in range(1, depth + 1):
        power = power.multiply(-rel, depth)
        if power.is_zero():
            break
        total = total + power

    # multiply through by k^(1/2)/q
    result = GrowthSeries({
        (halves - 1, logpow): coeff.scale(1 / q)
        for (halves, logpow), coeff in total.terms.items()
    }, depth - 1, precision_bits)

    logger.debug('reciprocal series: %s' % format_series(result))
    return result


def _format_power(halves):
    """
    Renders k^(-h/2)
    """
    if halves == 0:
        return ''

    if halves % 2 == 0:
        return 'k^%d' % (-halves // 2)
    return 'k^(%d/2)' % (-halves)


def format_series(s, digits=12):
    """
    Returns a human readable rendering of a series, largest terms first:

        0.166666666667*k^(-1/2) - 0.0416666666667*k^-1 + ...
    """
    if s.is_zero():
        return '0'

    parts = []
    for (halves, logpow), coeff in s.items():
        factors = []
        if logpow == 1:
            factors.append('ln(k)')
        elif logpow > 1:
            factors.append('ln(k)^%d' % logpow)

        power = _format_power(halves)
        if power:
            factors.append(power)

        if coeff.degree == 0:
            value = coeff[0]
            text = format_decimal(abs(value), digits)
            sign = '-' if value.sign() < 0 else '+'

        else:
            text = '(%s)' % coeff.format(digits)
            sign = '+'

        parts.append((sign, '*'.join([text] + factors)))

    rendered = ('-' if parts[0][0] == '-' else '') + parts[0][1]
    for sign, text in parts[1:]:
        rendered += ' %s %s' % (sign, text)

    return rendered
