# -*- coding: utf-8 -*-
#
# An arbitrary precision real number with an explicit precision
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
BigReal wraps a raw mpmath.libmp value together with the number of bits
it was rounded to.  Every operation is handed its precision explicitly so
the global mpmath context is never consulted (nor changed); this keeps
values safe to share between greenlets.
"""
import math
from os import environ
from fractions import Fraction

from mpmath.libmp import ComplexResult
from mpmath.libmp import fzero
from mpmath.libmp import fone
from mpmath.libmp import round_nearest
from mpmath.libmp import from_int
from mpmath.libmp import from_rational
from mpmath.libmp import from_str
from mpmath.libmp import from_float
from mpmath.libmp import to_str
from mpmath.libmp import to_float
from mpmath.libmp import to_rational
from mpmath.libmp import to_digits_exp
from mpmath.libmp import normalize
from mpmath.libmp import mpf_add
from mpmath.libmp import mpf_sub
from mpmath.libmp import mpf_mul
from mpmath.libmp import mpf_div
from mpmath.libmp import mpf_neg
from mpmath.libmp import mpf_abs
from mpmath.libmp import mpf_cmp
from mpmath.libmp import mpf_sign
from mpmath.libmp import mpf_sqrt
from mpmath.libmp import mpf_pow_int
from mpmath.libmp import mpf_log
from mpmath.libmp import mpf_exp
from mpmath.libmp import mpf_cos
from mpmath.libmp import mpf_sin

from .Errors import DomainError
from .Errors import ConfigError

# The environment variable that overrides the default working precision
PRECISION_ENV = 'ITERLAB_PRECISION'

# The precision used when nothing else was asked for
DEFAULT_PRECISION_BITS = 256

# Guard bits added on top of the bits needed to express the digits asked for
DEFAULT_GUARD_BITS = 64

# Fixed point notation is used while the decimal exponent stays within this
MAX_FIXED_EXPONENT = 40

# log2(10)
LOG2_10 = math.log(10, 2)


def default_precision():
    """
    Returns the default working precision in bits; the ITERLAB_PRECISION
    environment variable (when set) takes priority.
    """
    value = environ.get(PRECISION_ENV)
    if not value:
        return DEFAULT_PRECISION_BITS

    try:
        bits = int(value)

    except ValueError:
        raise ConfigError(
            '%s=%r is not an integer' % (PRECISION_ENV, value))

    if bits < 16:
        raise ConfigError('%s=%d is too small' % (PRECISION_ENV, bits))

    return bits


def precision_for_digits(digits, guard=DEFAULT_GUARD_BITS):
    """
    Returns the number of bits required to carry the specified number of
    decimal digits plus our guard bits.
    """
    return int(math.ceil(digits * LOG2_10)) + guard


def digits_for_precision(precision_bits):
    """
    The number of decimal digits a precision can faithfully represent.
    """
    return max(1, int(math.floor(precision_bits / LOG2_10)))


def _is_finite(mpf):
    """
    Returns True if the raw value is finite
    """
    return bool(mpf[1]) or mpf == fzero


class BigReal(object):
    """
    An immutable arbitrary precision real number.

    The value is rounded (to nearest) to precision_bits on construction
    and every arithmetic operation is correctly rounded to the smaller of
    its operands' precisions.  Python integers and Fractions are accepted
    as operands too; they take on the precision of the BigReal they are
    combined with.

    Non finite values are never allowed to exist; an attempt to create
    one throws a DomainError.
    """

    __slots__ = ('_mpf', 'precision_bits')

    def __init__(self, value=0, precision_bits=None):
        """
        Initialize a BigReal from an int, a Fraction, a float, a decimal
        string (also accepting 'p/q'), another BigReal or a raw libmp
        tuple.
        """
        if precision_bits is None:
            precision_bits = value.precision_bits \
                if isinstance(value, BigReal) else default_precision()

        precision_bits = int(precision_bits)
        if precision_bits < 2:
            raise DomainError(
                'precision of %d bits is not supported' % precision_bits)

        if isinstance(value, BigReal):
            mpf = normalize(*(value._mpf + (precision_bits, round_nearest))) \
                if value._mpf[1] else value._mpf

        elif isinstance(value, bool):
            raise DomainError('a boolean is not a real number')

        elif isinstance(value, int):
            mpf = from_int(value, precision_bits, round_nearest)

        elif isinstance(value, Fraction):
            mpf = from_rational(
                value.numerator, value.denominator,
                precision_bits, round_nearest)

        elif isinstance(value, float):
            if math.isnan(value) or math.isinf(value):
                raise DomainError('%r is not a finite value' % value)
            mpf = from_float(value, 53, round_nearest)
            if mpf[1]:
                mpf = normalize(*(mpf + (precision_bits, round_nearest)))

        elif isinstance(value, str):
            mpf = _parse(value, precision_bits)

        elif isinstance(value, tuple) and len(value) == 4:
            mpf = value
            if mpf[1]:
                mpf = normalize(*(mpf + (precision_bits, round_nearest)))

        else:
            raise DomainError(
                'unsupported BigReal source %s' % type(value).__name__)

        if not _is_finite(mpf):
            raise DomainError('%s is not a finite value' % (value, ))

        self._mpf = mpf
        self.precision_bits = precision_bits

    @classmethod
    def _wrap(cls, mpf, precision_bits):
        """
        Wraps a raw value that was already rounded to precision_bits
        """
        if not _is_finite(mpf):
            raise DomainError('operation produced a non-finite value')

        obj = cls.__new__(cls)
        obj._mpf = mpf
        obj.precision_bits = precision_bits
        return obj

    @classmethod
    def from_fraction(cls, numerator, denominator=1, precision_bits=None):
        """
        Create a BigReal from a rational number.
        """
        if denominator == 0:
            raise DomainError('division by zero')
        return cls(Fraction(numerator, denominator), precision_bits)

    @property
    def mpf(self):
        """
        Returns the raw libmp value
        """
        return self._mpf

    def _coerce(self, other):
        """
        Returns the raw value of other along with the precision the
        operation should be rounded to.
        """
        if isinstance(other, BigReal):
            return other._mpf, min(self.precision_bits, other.precision_bits)

        if isinstance(other, (int, Fraction, float)) \
                and not isinstance(other, bool):
            return BigReal(other, self.precision_bits)._mpf, \
                self.precision_bits

        return None, None

    def with_precision(self, precision_bits):
        """
        Returns the same value carried at another precision; lowering the
        precision rounds, raising it is exact.
        """
        return BigReal(self, precision_bits)

    def __add__(self, other):
        mpf, prec = self._coerce(other)
        if mpf is None:
            return NotImplemented
        return BigReal._wrap(
            mpf_add(self._mpf, mpf, prec, round_nearest), prec)

    __radd__ = __add__

    def __sub__(self, other):
        mpf, prec = self._coerce(other)
        if mpf is None:
            return NotImplemented
        return BigReal._wrap(
            mpf_sub(self._mpf, mpf, prec, round_nearest), prec)

    def __rsub__(self, other):
        mpf, prec = self._coerce(other)
        if mpf is None:
            return NotImplemented
        return BigReal._wrap(
            mpf_sub(mpf, self._mpf, prec, round_nearest), prec)

    def __mul__(self, other):
        mpf, prec = self._coerce(other)
        if mpf is None:
            return NotImplemented
        return BigReal._wrap(
            mpf_mul(self._mpf, mpf, prec, round_nearest), prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        mpf, prec = self._coerce(other)
        if mpf is None:
            return NotImplemented
        if mpf == fzero:
            raise DomainError('division by zero')
        return BigReal._wrap(
            mpf_div(self._mpf, mpf, prec, round_nearest), prec)

    def __rtruediv__(self, other):
        mpf, prec = self._coerce(other)
        if mpf is None:
            return NotImplemented
        if self._mpf == fzero:
            raise DomainError('division by zero')
        return BigReal._wrap(
            mpf_div(mpf, self._mpf, prec, round_nearest), prec)

    def __pow__(self, n):
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        if n < 0 and self._mpf == fzero:
            raise DomainError('zero raised to a negative power')
        return BigReal._wrap(
            mpf_pow_int(self._mpf, n, self.precision_bits, round_nearest),
            self.precision_bits)

    def __neg__(self):
        return BigReal._wrap(mpf_neg(self._mpf), self.precision_bits)

    def __pos__(self):
        return self

    def __abs__(self):
        return BigReal._wrap(mpf_abs(self._mpf), self.precision_bits)

    def sqrt(self):
        """
        Returns the correctly rounded square root.
        """
        try:
            return BigReal._wrap(
                mpf_sqrt(self._mpf, self.precision_bits, round_nearest),
                self.precision_bits)

        except ComplexResult:
            raise DomainError('square root of a negative value')

    def ln(self):
        """
        Returns the natural logarithm.
        """
        if mpf_sign(self._mpf) <= 0:
            raise DomainError('logarithm of a non-positive value')

        return BigReal._wrap(
            mpf_log(self._mpf, self.precision_bits, round_nearest),
            self.precision_bits)

    def ln1p(self):
        """
        Returns ln(1 + x); the sum is formed exactly before the logarithm
        is taken so small values keep all of their bits.
        """
        arg = mpf_add(fone, self._mpf)
        if mpf_sign(arg) <= 0:
            raise DomainError('ln1p of a value not above -1')

        return BigReal._wrap(
            mpf_log(arg, self.precision_bits, round_nearest),
            self.precision_bits)

    def exp(self):
        return BigReal._wrap(
            mpf_exp(self._mpf, self.precision_bits, round_nearest),
            self.precision_bits)

    def cos(self):
        return BigReal._wrap(
            mpf_cos(self._mpf, self.precision_bits, round_nearest),
            self.precision_bits)

    def sin(self):
        return BigReal._wrap(
            mpf_sin(self._mpf, self.precision_bits, round_nearest),
            self.precision_bits)

    def sign(self):
        """
        Returns -1, 0 or 1
        """
        return mpf_sign(self._mpf)

    def is_zero(self):
        return self._mpf == fzero

    def to_fraction(self):
        """
        Returns the exact binary value as a Fraction
        """
        p, q = to_rational(self._mpf)
        return Fraction(int(p), int(q))

    def _cmp(self, other):
        mpf, _ = self._coerce(other)
        if mpf is None:
            return None
        return mpf_cmp(self._mpf, mpf)

    def __eq__(self, other):
        result = self._cmp(other)
        if result is None:
            return NotImplemented
        return result == 0

    def __ne__(self, other):
        result = self._cmp(other)
        if result is None:
            return NotImplemented
        return result != 0

    def __lt__(self, other):
        result = self._cmp(other)
        if result is None:
            return NotImplemented
        return result < 0

    def __le__(self, other):
        result = self._cmp(other)
        if result is None:
            return NotImplemented
        return result <= 0

    def __gt__(self, other):
        result = self._cmp(other)
        if result is None:
            return NotImplemented
        return result > 0

    def __ge__(self, other):
        result = self._cmp(other)
        if result is None:
            return NotImplemented
        return result >= 0

    def __hash__(self):
        return hash(self.to_fraction())

    def __float__(self):
        return to_float(self._mpf)

    def __bool__(self):
        return self._mpf != fzero

    def __str__(self):
        return format_decimal(self, digits_for_precision(self.precision_bits))

    def __repr__(self):
        return '<BigReal value=%s precision_bits=%d />' % (
            format_decimal(self, 20), self.precision_bits)


def _parse(text, precision_bits):
    """
    Parses a decimal literal or a 'p/q' rational into a raw value
    """
    # Accept the unicode minus sign
    text = text.strip().replace(u'−', '-').replace('_', '')
    if not text:
        raise ConfigError('an empty string is not a number')

    try:
        if '/' in text:
            num, den = text.split('/', 1)
            num = Fraction(num.strip())
            den = Fraction(den.strip())
            if den == 0:
                raise ConfigError('%r divides by zero' % text)
            value = num / den
            return from_rational(
                value.numerator, value.denominator,
                precision_bits, round_nearest)

        return from_str(text, precision_bits, round_nearest)

    except ValueError:
        raise ConfigError('could not parse the number %r' % text)


def parse_decimal(text, precision_bits=None):
    """
    The inverse of format_decimal(); also accepts simple rationals ('1/12').
    """
    return BigReal(text, precision_bits)


def format_decimal(x, digits):
    """
    Formats x with the number of significant digits specified.

    Fixed point notation is used unless the decimal exponent exceeds 40 in
    magnitude.  Trailing zeros are kept so the digit count is visible.
    """
    digits = int(digits)
    if digits < 1:
        raise DomainError('at least one digit must be requested')

    if x.is_zero():
        return '0.' + '0' * max(1, digits - 1)

    return to_str(
        x.mpf, digits, strip_zeros=False,
        min_fixed=-(MAX_FIXED_EXPONENT + 1),
        max_fixed=MAX_FIXED_EXPONENT + 1,
    )


def decimal_exponent(x):
    """
    Returns the decimal exponent e of x, so that 10^e <= |x| < 10^(e+1)
    (up to the truncation applied to the last digit)
    """
    _, _, exponent = to_digits_exp(x.mpf, 8)
    return exponent


def digits_agreement(x, y):
    """
    Returns the count of leading significant decimal digits on which x
    and y agree.

    The agreement is the number of decimal places between the leading
    digit of the larger of |x| and |y| and the first digit of |x - y|,
    capped at what the smaller of the two precisions can represent.  It
    does not depend on the digit strings themselves, so 0.4999...97 and
    1/2 agree as closely as their difference says they do, and two values
    rounded (or truncated) from the same decimal expansion agree on every
    printed digit.

    Zero is returned when the signs differ.
    """
    cap = digits_for_precision(min(x.precision_bits, y.precision_bits))

    if x.sign() != y.sign():
        return 0

    if x.is_zero():
        # both are zero
        return cap

    diff = mpf_sub(x.mpf, y.mpf)
    if diff == fzero:
        return cap

    _, _, x_exp = to_digits_exp(x.mpf, 8)
    _, _, y_exp = to_digits_exp(y.mpf, 8)
    _, _, d_exp = to_digits_exp(mpf_abs(diff), 8)
    return max(0, min(cap, max(x_exp, y_exp) - d_exp))
