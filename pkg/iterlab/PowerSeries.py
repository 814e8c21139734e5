# -*- coding: utf-8 -*-
#
# Truncated formal power series
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

from fractions import Fraction

from .BigReal import BigReal
from .BigReal import default_precision
from .BigReal import digits_for_precision
from .BigReal import format_decimal
from .BigReal import parse_decimal
from .Errors import PreconditionError
from .Errors import DomainError

import logging
from .Logging import ITERLAB_SERIES
logger = logging.getLogger(ITERLAB_SERIES)

# The operations ps_arith() supports
ARITH_OPERATIONS = ('add', 'sub', 'mul', 'compose', 'divide')

# The functions ps_elementary() supports
ELEMENTARY_FUNCTIONS = ('log1p', 'cos', 'sin', 'exp')


class PowerSeries(object):
    """
    A truncated power series  c_0 + c_1 x + ... + c_n x^n + O(x^(n+1))

    coeffs always holds trunc_degree + 1 BigReal values; index n is the
    coefficient of x^n.  Objects are never modified once created; every
    operation returns a new series.
    """

    def __init__(self, coeffs, trunc_degree=None, precision_bits=None):
        """
        Initialize the series from a list of coefficients.  Anything a
        BigReal accepts may be used as a coefficient.

        If trunc_degree is larger than the coefficients provided, the
        remaining coefficients are zero; if it is smaller the list is cut.
        """
        coeffs = list(coeffs)
        if precision_bits is None:
            precision_bits = next(
                (c.precision_bits for c in coeffs
                 if isinstance(c, BigReal)), default_precision())

        if trunc_degree is None:
            trunc_degree = max(len(coeffs) - 1, 0)

        if trunc_degree < 0:
            raise PreconditionError(
                'negative truncation degree %d' % trunc_degree)

        self.precision_bits = precision_bits
        self.trunc_degree = int(trunc_degree)

        zero = BigReal(0, precision_bits)
        self.coeffs = [
            c if isinstance(c, BigReal) else BigReal(c, precision_bits)
            for c in coeffs[:self.trunc_degree + 1]]
        self.coeffs += [zero] * (self.trunc_degree + 1 - len(self.coeffs))

    @classmethod
    def identity(cls, trunc_degree, precision_bits=None):
        """
        The series x
        """
        return cls([0, 1], trunc_degree, precision_bits)

    @classmethod
    def constant(cls, value, trunc_degree, precision_bits=None):
        return cls([value], trunc_degree, precision_bits)

    def __getitem__(self, n):
        """
        Returns the coefficient of x^n; anything past the truncation
        degree is unknown and treated as zero.
        """
        if 0 <= n <= self.trunc_degree:
            return self.coeffs[n]
        return BigReal(0, self.precision_bits)

    def __len__(self):
        return self.trunc_degree + 1

    def __iter__(self):
        return iter(self.coeffs)

    def degree(self):
        """
        Returns the index of the highest nonzero coefficient (-1 for zero)
        """
        for n in range(self.trunc_degree, -1, -1):
            if not self.coeffs[n].is_zero():
                return n
        return -1

    def valuation(self):
        """
        Returns the index of the lowest nonzero coefficient or None if the
        series is zero through its truncation.
        """
        for n, c in enumerate(self.coeffs):
            if not c.is_zero():
                return n
        return None

    def truncate(self, trunc_degree):
        """
        Returns the series cut down to the specified degree
        """
        return PowerSeries(
            self.coeffs, min(trunc_degree, self.trunc_degree),
            self.precision_bits)

    def extend(self, trunc_degree):
        """
        Returns the series with its truncation raised; only meaningful
        for exact polynomials (the new coefficients are zero).
        """
        return PowerSeries(
            self.coeffs, max(trunc_degree, self.trunc_degree),
            self.precision_bits)

    def scale(self, factor):
        return PowerSeries(
            [c * factor for c in self.coeffs], self.trunc_degree,
            self.precision_bits)

    def evaluate(self, x):
        """
        Evaluates the polynomial part of the series at x (Horner)
        """
        result = BigReal(0, self.precision_bits)
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def derivative(self):
        if self.trunc_degree == 0:
            return PowerSeries([0], 0, self.precision_bits)
        return PowerSeries(
            [self.coeffs[n] * n for n in range(1, self.trunc_degree + 1)],
            self.trunc_degree - 1, self.precision_bits)

    def __add__(self, other):
        return ps_arith(self, other, 'add')

    def __sub__(self, other):
        return ps_arith(self, other, 'sub')

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return ps_arith(self, other, 'mul')
        return self.scale(other)

    __rmul__ = __mul__

    def __neg__(self):
        return self.scale(-1)

    def __call__(self, inner):
        """
        Composition; self(inner)
        """
        return ps_arith(self, inner, 'compose')

    def to_dict(self, digits=None):
        """
        Returns the JSON form of the series
        """
        if digits is None:
            digits = digits_for_precision(self.precision_bits)

        return {
            'trunc_degree': self.trunc_degree,
            'coeffs': [format_decimal(c, digits) for c in self.coeffs],
        }

    @classmethod
    def from_dict(cls, content, precision_bits=None):
        if precision_bits is None:
            precision_bits = default_precision()

        return cls(
            [parse_decimal(c, precision_bits) for c in content['coeffs']],
            content['trunc_degree'], precision_bits)

    def __str__(self):
        terms = []
        for n, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            terms.append('%s*x^%d' % (format_decimal(c, 12), n))
        return '%s + O(x^%d)' % (
            ' + '.join(terms) if terms else '0', self.trunc_degree + 1)

    def __repr__(self):
        return '<PowerSeries trunc_degree=%d precision_bits=%d />' % (
            self.trunc_degree, self.precision_bits)


def _multiply(a, b, trunc_degree, precision_bits):
    """
    Cauchy product of two coefficient lists cut at trunc_degree
    """
    zero = BigReal(0, precision_bits)
    result = [zero] * (trunc_degree + 1)
    for i, ai in enumerate(a[:trunc_degree + 1]):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b[:trunc_degree + 1 - i]):
            if bj.is_zero():
                continue
            result[i + j] = result[i + j] + ai * bj
    return result


def _reciprocal(b, trunc_degree, precision_bits):
    """
    Coefficients of 1/b cut at trunc_degree; b[0] must be nonzero
    """
    if b[0].is_zero():
        raise PreconditionError(
            'the reciprocal of a series with zero constant term')

    inv = 1 / b[0]
    result = [inv]
    for n in range(1, trunc_degree + 1):
        acc = BigReal(0, precision_bits)
        for i in range(1, n + 1):
            acc = acc + b[i] * result[n - i]
        result.append(-acc * inv)
    return result


def ps_arith(a, b, op):
    """
    Truncated arithmetic between two power series.

    op is one of:
        add, sub, mul : the usual ring operations
        compose       : a(b(x)); b must have a zero constant term
        divide        : a / b; b must have a nonzero constant term

    The result is carried to the smaller of the two truncation degrees.
    """
    if op not in ARITH_OPERATIONS:
        raise PreconditionError('unsupported series operation %r' % (op, ))

    precision_bits = min(a.precision_bits, b.precision_bits)
    trunc_degree = min(a.trunc_degree, b.trunc_degree)
    size = trunc_degree + 1

    if op == 'add':
        return PowerSeries(
            [a.coeffs[n] + b.coeffs[n] for n in range(size)],
            trunc_degree, precision_bits)

    if op == 'sub':
        return PowerSeries(
            [a.coeffs[n] - b.coeffs[n] for n in range(size)],
            trunc_degree, precision_bits)

    if op == 'mul':
        return PowerSeries(
            _multiply(a.coeffs, b.coeffs, trunc_degree, precision_bits),
            trunc_degree, precision_bits)

    if op == 'divide':
        return PowerSeries(
            _multiply(
                a.coeffs,
                _reciprocal(b.coeffs, trunc_degree, precision_bits),
                trunc_degree, precision_bits),
            trunc_degree, precision_bits)

    # compose
    if not b.coeffs[0].is_zero():
        raise PreconditionError(
            'the inner series of a composition must have a zero '
            'constant term')

    # Horner's rule in the ring of truncated series; b^n vanishes past
    # the truncation so the outer coefficients above it never matter
    result = [BigReal(0, precision_bits)] * size
    for n in range(trunc_degree, -1, -1):
        result = _multiply(result, b.coeffs, trunc_degree, precision_bits)
        result[0] = result[0] + a.coeffs[n]

    return PowerSeries(result, trunc_degree, precision_bits)


def _elementary_coefficients(kind, trunc_degree, precision_bits):
    """
    Taylor coefficients about zero of log1p, cos, sin and exp
    """
    coeffs = []
    factorial = 1
    for n in range(trunc_degree + 1):
        if n > 0:
            factorial *= n

        if kind == 'log1p':
            value = Fraction(0) if n == 0 else Fraction((-1) ** (n + 1), n)

        elif kind == 'exp':
            value = Fraction(1, factorial)

        elif kind == 'cos':
            value = Fraction(0) if n % 2 else \
                Fraction((-1) ** (n // 2), factorial)

        else:
            # sin
            value = Fraction(0) if not n % 2 else \
                Fraction((-1) ** ((n - 1) // 2), factorial)

        coeffs.append(BigReal(value, precision_bits))

    return PowerSeries(coeffs, trunc_degree, precision_bits)


def ps_elementary(kind, inner):
    """
    Returns the Taylor coefficients of kind(inner(x)).

    log1p allows any constant term c above -1 (it is expanded as
    ln(1+c) + log1p(t/(1+c))); cos, sin and exp allow any constant term and
    are expanded with the addition formulas about it.
    """
    if kind not in ELEMENTARY_FUNCTIONS:
        raise PreconditionError(
            'unsupported elementary function %r' % (kind, ))

    precision_bits = inner.precision_bits
    trunc_degree = inner.trunc_degree
    c = inner.coeffs[0]
    t = PowerSeries(
        [BigReal(0, precision_bits)] + inner.coeffs[1:],
        trunc_degree, precision_bits)

    if kind == 'log1p':
        if c <= -1:
            raise DomainError('log1p of a series whose constant term is %s'
                              % format_decimal(c, 12))

        series = _elementary_coefficients(
            'log1p', trunc_degree, precision_bits)

        if c.is_zero():
            return ps_arith(series, t, 'compose')

        shifted = ps_arith(series, t.scale(1 / (c + 1)), 'compose')
        return shifted + PowerSeries.constant(
            c.ln1p(), trunc_degree, precision_bits)

    if kind == 'exp':
        series = ps_arith(
            _elementary_coefficients('exp', trunc_degree, precision_bits),
            t, 'compose')
        return series if c.is_zero() else series.scale(c.exp())

    cos_t = ps_arith(
        _elementary_coefficients('cos', trunc_degree, precision_bits),
        t, 'compose')
    sin_t = ps_arith(
        _elementary_coefficients('sin', trunc_degree, precision_bits),
        t, 'compose')

    if c.is_zero():
        return cos_t if kind == 'cos' else sin_t

    if kind == 'cos':
        # cos(c + t) = cos(c)cos(t) - sin(c)sin(t)
        return cos_t.scale(c.cos()) - sin_t.scale(c.sin())

    # sin(c + t) = sin(c)cos(t) + cos(c)sin(t)
    return cos_t.scale(c.sin()) + sin_t.scale(c.cos())


def ps_reversion(s):
    """
    Returns the compositional inverse t of s, so that s(t(x)) = x through
    the truncation degree.

    The inverse is built one coefficient at a time; the coefficient of x^n
    in s(t) is linear in t_n (with slope s_1) once the lower coefficients
    are in place.
    """
    if not s.coeffs[0].is_zero():
        raise PreconditionError(
            'series reversion requires a zero constant term')

    if s.trunc_degree < 1 or s.coeffs[1].is_zero():
        raise PreconditionError(
            'series reversion requires a nonzero linear coefficient')

    precision_bits = s.precision_bits
    trunc_degree = s.trunc_degree
    inv = 1 / s.coeffs[1]

    coeffs = [BigReal(0, precision_bits), inv]
    for n in range(2, trunc_degree + 1):
        coeffs.append(BigReal(0, precision_bits))
        trial = ps_arith(
            s, PowerSeries(coeffs, n, precision_bits), 'compose')
        coeffs[n] = -trial.coeffs[n] * inv
        logger.debug('reversion coefficient x^%d = %s' % (
            n, format_decimal(coeffs[n], 12)))

    return PowerSeries(coeffs, trunc_degree, precision_bits)


def kindred_transform(s):
    """
    Returns the series of x -> -s(-x); the coefficient of x^n is multiplied
    by (-1)^(n+1).  Applying it twice gives back the original series.
    """
    if not s.coeffs[0].is_zero():
        raise PreconditionError(
            'the kindred transform requires a zero constant term')

    return PowerSeries(
        [c if n % 2 else -c for n, c in enumerate(s.coeffs)],
        s.trunc_degree, s.precision_bits)
