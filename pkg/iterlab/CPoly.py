# -*- coding: utf-8 -*-
#
# Polynomials in the free expansion constant C
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

from .BigReal import BigReal
from .BigReal import default_precision
from .BigReal import format_decimal
from .BigReal import parse_decimal


class CPoly(object):
    """
    A polynomial  c_0 + c_1 C + c_2 C^2 + ...  with BigReal coefficients.

    Trailing zero coefficients are always trimmed; the zero polynomial has
    an empty coefficient list (and a degree of -1).
    """

    __slots__ = ('coeffs', 'precision_bits')

    def __init__(self, coeffs=None, precision_bits=None):
        coeffs = list(coeffs or [])
        if precision_bits is None:
            precision_bits = next(
                (c.precision_bits for c in coeffs
                 if isinstance(c, BigReal)), default_precision())

        coeffs = [
            c if isinstance(c, BigReal) else BigReal(c, precision_bits)
            for c in coeffs]

        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()

        self.coeffs = coeffs
        self.precision_bits = precision_bits

    @classmethod
    def constant(cls, value, precision_bits=None):
        return cls([value], precision_bits)

    @classmethod
    def monomial(cls, power=1, precision_bits=None):
        """
        Returns C^power
        """
        return cls([0] * power + [1], precision_bits)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, d):
        """
        Returns the coefficient of C^d
        """
        if 0 <= d < len(self.coeffs):
            return self.coeffs[d]
        return BigReal(0, self.precision_bits)

    def __add__(self, other):
        if not isinstance(other, CPoly):
            other = CPoly.constant(other, self.precision_bits)

        size = max(len(self.coeffs), len(other.coeffs))
        return CPoly(
            [self[d] + other[d] for d in range(size)],
            min(self.precision_bits, other.precision_bits))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, CPoly):
            other = CPoly.constant(other, self.precision_bits)

        size = max(len(self.coeffs), len(other.coeffs))
        return CPoly(
            [self[d] - other[d] for d in range(size)],
            min(self.precision_bits, other.precision_bits))

    def __neg__(self):
        return CPoly([-c for c in self.coeffs], self.precision_bits)

    def scale(self, factor):
        """
        Multiplies every coefficient by a scalar
        """
        return CPoly([c * factor for c in self.coeffs], self.precision_bits)

    def __mul__(self, other):
        if not isinstance(other, CPoly):
            return self.scale(other)

        if self.is_zero() or other.is_zero():
            return CPoly([], min(self.precision_bits, other.precision_bits))

        precision_bits = min(self.precision_bits, other.precision_bits)
        result = [BigReal(0, precision_bits)] * (
            len(self.coeffs) + len(other.coeffs) - 1)

        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                result[i + j] = result[i + j] + a * b

        return CPoly(result, precision_bits)

    __rmul__ = __mul__

    def evaluate(self, value):
        """
        Substitutes a numeric value for C (Horner)
        """
        result = BigReal(0, self.precision_bits)
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def derivative(self):
        """
        The derivative with respect to C
        """
        return CPoly(
            [self.coeffs[d] * d for d in range(1, len(self.coeffs))],
            self.precision_bits)

    def max_abs(self):
        """
        Returns the largest coefficient magnitude
        """
        return max(
            (abs(c) for c in self.coeffs),
            default=BigReal(0, self.precision_bits))

    def to_list(self, digits):
        return [format_decimal(c, digits) for c in self.coeffs]

    @classmethod
    def from_list(cls, content, precision_bits=None):
        if precision_bits is None:
            precision_bits = default_precision()

        return cls(
            [parse_decimal(c, precision_bits) for c in content],
            precision_bits)

    def __eq__(self, other):
        if not isinstance(other, CPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def format(self, digits=12):
        """
        Returns a compact human readable form:  0.25 - 0.5*C + 9*C^2
        """
        if not self.coeffs:
            return '0'

        terms = []
        for d, c in enumerate(self.coeffs):
            if c.is_zero():
                continue

            text = format_decimal(abs(c), digits)
            if d == 1:
                text += '*C'
            elif d > 1:
                text += '*C^%d' % d

            if not terms:
                terms.append(('-' if c.sign() < 0 else '') + text)
            else:
                terms.append(('- ' if c.sign() < 0 else '+ ') + text)

        return ' '.join(terms)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return '<CPoly degree=%d value="%s" />' % (self.degree, self.format())
