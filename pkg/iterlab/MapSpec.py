# -*- coding: utf-8 -*-
#
# The description of a one dimensional recurrence map
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

import re
import hashlib
from fractions import Fraction

from .BigReal import BigReal
from .BigReal import default_precision
from .BigReal import format_decimal
from .PowerSeries import PowerSeries
from .PowerSeries import ps_arith
from .PowerSeries import ps_elementary
from .PowerSeries import kindred_transform
from .Roots import dottie_number
from .Errors import ConfigError
from .Errors import FixedPointError
from .Errors import PreconditionError

import logging
from .Logging import ITERLAB_SERIES
logger = logging.getLogger(ITERLAB_SERIES)


class MapKind(object):
    """
    The map families we know how to iterate and expand
    """
    POLYNOMIAL = 'polynomial'
    LOGISTIC = 'logistic'
    COS_ONCE = 'cos_once'
    POPA_G = 'popa_g'
    POPA_G_ELL = 'popa_g_ell'


MAP_KINDS = (
    MapKind.POLYNOMIAL,
    MapKind.LOGISTIC,
    MapKind.COS_ONCE,
    MapKind.POPA_G,
    MapKind.POPA_G_ELL,
)


class Orientation(object):
    """
    The branch a double step map follows
    """
    # the iterates approach the fixed point from above
    ABOVE = 'above'

    # the iterates approach the fixed point from below
    BELOW = 'below'

    # single step map; no branch
    NONE = 'none'


class Coordinates(object):
    """
    raw: the value x_k itself
    branch: the local coordinate s measured from the fixed point
    """
    RAW = 'raw'
    BRANCH = 'branch'


# The suffixes that select the step and branch
STEP_SUFFIXES = {
    'single': (False, Orientation.NONE),
    'above': (True, Orientation.ABOVE),
    'below': (True, Orientation.BELOW),
}

NAMED_MAP_RE = re.compile(
    r'^(?P<name>logistic|cos|cos_once|popa_g|popa_g_ell)'
    r'(\((?P<arg>[^()]+)\))?$', re.IGNORECASE)

POLY_TERM_RE = re.compile(
    r'(?P<sign>[+-])?'
    r'(?:\((?P<pcoef>[^()]+)\)|'
    r'(?P<coef>[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?(?:/[0-9]+)?))?'
    r'\*?'
    r'(?P<var>[xysu](?:(?:\^|\*\*)(?P<power>[0-9]+))?)?'
)

SUPERSCRIPTS = {
    u'⁰': '0', u'¹': '1', u'²': '2', u'³': '3', u'⁴': '4',
    u'⁵': '5', u'⁶': '6', u'⁷': '7', u'⁸': '8', u'⁹': '9',
}

SUPERSCRIPT_RE = re.compile(u'[%s]+' % ''.join(SUPERSCRIPTS.keys()))


def _parse_rational(text):
    """
    Parses a map parameter such as 3, 5/2 or 2.5 into a Fraction
    """
    try:
        return Fraction(text.strip().replace(u'−', '-'))

    except (ValueError, ZeroDivisionError):
        raise ConfigError('could not parse the map parameter %r' % text)


def parse_polynomial(text):
    """
    Parses a polynomial written in one variable (x, y, s or u) into a list
    of Fractions ordered by ascending degree.

    Hence: parse_polynomial('x - 18x^3 - 27x^4') becomes:
        [0, 1, 0, -18, -27]

    Unicode minus signs and superscript exponents are accepted as are
    parenthesized rationals ('(1/2)x^4').
    """
    content = text.replace(u'−', '-').replace(u'·', '*')
    content = SUPERSCRIPT_RE.sub(
        lambda m: '^' + ''.join(SUPERSCRIPTS[c] for c in m.group(0)),
        content)
    content = re.sub(r'\s+', '', content)

    if not content:
        raise ConfigError('an empty polynomial')

    coeffs = {}
    pos = 0
    while pos < len(content):
        match = POLY_TERM_RE.match(content, pos)
        if not match or match.end() == pos or \
                not (match.group('coef') or match.group('pcoef')
                     or match.group('var')):
            raise ConfigError(
                'could not parse the polynomial %r near %r' % (
                    text, content[pos:]))

        if pos > 0 and not match.group('sign'):
            raise ConfigError(
                'missing operator in the polynomial %r near %r' % (
                    text, content[pos:]))

        coef = match.group('coef') or match.group('pcoef')
        value = _parse_rational(coef) if coef else Fraction(1)
        if match.group('sign') == '-':
            value = -value

        if match.group('var'):
            power = int(match.group('power')) \
                if match.group('power') is not None else 1
        else:
            power = 0

        coeffs[power] = coeffs.get(power, Fraction(0)) + value
        pos = match.end()

    degree = max(coeffs.keys())
    return [coeffs.get(n, Fraction(0)) for n in range(degree + 1)]


class MapSpec(object):
    """
    A one dimensional recurrence map x_(k+1) = f(x_k) along with the
    metadata needed to work with it about its attracting fixed point.

    kind is one of MAP_KINDS:
        polynomial : coeffs about 0 (already a local map; its fixed point
                     is 0)
        logistic   : lambda * x * (1 - x), fixed point (lambda - 1)/lambda
        cos_once   : cos(x), fixed point Dottie's number
        popa_g     : y/(1 + y*ln(1+y)), fixed point 0
        popa_g_ell : y/(1 + y^ell * ln(1+y)), fixed point 0

    double_step selects f(f(x)) instead of f(x); the orientation then picks
    the branch the local coordinate follows:
        above : s -> f(f(mu + s)) - mu
        below : s -> mu - f(f(mu - s))
    and a single step map uses s -> f(mu + s) - mu.
    """

    def __init__(self, kind, coeffs=None, lam=None, ell=None,
                 double_step=False, orientation=Orientation.NONE):

        if kind not in MAP_KINDS:
            raise ConfigError('unsupported map kind %r' % (kind, ))

        if orientation not in (
                Orientation.ABOVE, Orientation.BELOW, Orientation.NONE):
            raise ConfigError('unsupported orientation %r' % (orientation, ))

        if bool(double_step) != (orientation != Orientation.NONE):
            raise ConfigError(
                'a branch orientation goes with (and only with) a double '
                'step map')

        self.kind = kind
        self.double_step = bool(double_step)
        self.orientation = orientation

        # Parameters are kept as exact rationals
        self.coeffs = None
        self.lam = None
        self.ell = None

        if kind == MapKind.POLYNOMIAL:
            if not coeffs:
                raise ConfigError('a polynomial map requires coefficients')

            self.coeffs = [Fraction(c) for c in coeffs]
            while len(self.coeffs) > 2 and self.coeffs[-1] == 0:
                self.coeffs.pop()

            if self.coeffs[0] != 0:
                raise ConfigError(
                    'a polynomial map is taken about its fixed point 0; '
                    'its constant term must vanish')

        elif kind == MapKind.LOGISTIC:
            if lam is None:
                raise ConfigError('a logistic map requires lambda')

            self.lam = Fraction(lam)
            if self.lam <= 0:
                raise ConfigError('lambda must be positive')

        elif kind == MapKind.POPA_G_ELL:
            if ell is None or int(ell) != ell or int(ell) < 1:
                raise ConfigError('popa_g_ell requires an integer ell >= 1')

            self.ell = int(ell)

    @property
    def fixed_point_tag(self):
        """
        The symbolic form of the fixed point
        """
        if self.kind == MapKind.LOGISTIC:
            return u'(λ−1)/λ'

        if self.kind == MapKind.COS_ONCE:
            return 'dottie'

        return '0'

    @property
    def is_local(self):
        """
        True if the raw and branch coordinates coincide (the fixed point is
        0 and the map is single step).
        """
        return not self.double_step and self.kind in (
            MapKind.POLYNOMIAL, MapKind.POPA_G, MapKind.POPA_G_ELL)

    @property
    def is_exact_polynomial(self):
        """
        True if the local map is a polynomial; its Taylor series is then
        exact once taken to the polynomial's degree.
        """
        return self.kind in (MapKind.POLYNOMIAL, MapKind.LOGISTIC)

    @property
    def polynomial_degree(self):
        """
        Returns the degree of the local map if it is a polynomial (None
        otherwise)
        """
        if self.kind == MapKind.POLYNOMIAL:
            degree = len(self.coeffs) - 1

        elif self.kind == MapKind.LOGISTIC:
            degree = 2

        else:
            return None

        return degree * degree if self.double_step else degree

    def fixed_point(self, precision_bits=None):
        """
        Resolves the fixed point to the precision specified.
        """
        if precision_bits is None:
            precision_bits = default_precision()

        if self.kind == MapKind.LOGISTIC:
            # closed form
            return BigReal((self.lam - 1) / self.lam, precision_bits)

        if self.kind == MapKind.COS_ONCE:
            mu = dottie_number(precision_bits)
            defect = abs(mu.cos() - mu)
            threshold = BigReal(1, precision_bits) / \
                (2 ** (precision_bits - 16))
            if defect >= threshold:
                raise FixedPointError(
                    'the cosine fixed point was only resolved to %s' %
                    format_decimal(defect, 6))
            return mu

        return BigReal(0, precision_bits)

    def evaluate(self, x):
        """
        Applies the map once in raw coordinates; f(x)
        """
        if self.kind == MapKind.POLYNOMIAL:
            result = BigReal(0, x.precision_bits)
            for c in reversed(self.coeffs):
                result = result * x + c
            return result

        if self.kind == MapKind.LOGISTIC:
            return x * (1 - x) * self.lam

        if self.kind == MapKind.COS_ONCE:
            return x.cos()

        if self.kind == MapKind.POPA_G:
            return x / (x * x.ln1p() + 1)

        # popa_g_ell
        return x / ((x ** self.ell) * x.ln1p() + 1)

    def step(self, x):
        """
        Applies the map in raw coordinates; once, or twice for a double
        step map.
        """
        if self.double_step:
            return self.evaluate(self.evaluate(x))
        return self.evaluate(x)

    def local(self, s, mu=None):
        """
        Applies the map in branch coordinates.  The fixed point may be
        provided when it has already been resolved.
        """
        if self.is_local:
            return self.evaluate(s)

        if mu is None:
            mu = self.fixed_point(s.precision_bits)

        if self.orientation == Orientation.BELOW:
            return mu - self.step(mu - s)

        return self.step(mu + s) - mu

    def to_branch(self, x, mu=None):
        """
        Converts a raw coordinate to the branch coordinate
        """
        if self.is_local:
            return x

        if mu is None:
            mu = self.fixed_point(x.precision_bits)

        if self.orientation == Orientation.BELOW:
            return mu - x
        return x - mu

    def from_branch(self, s, mu=None):
        """
        Converts a branch coordinate back to the raw coordinate
        """
        if self.is_local:
            return s

        if mu is None:
            mu = self.fixed_point(s.precision_bits)

        if self.orientation == Orientation.BELOW:
            return mu - s
        return mu + s

    def _single_series(self, degree, precision_bits, mu):
        """
        Returns the Taylor series of f(mu + s) - mu in s before the
        constant term is checked.
        """
        if self.kind == MapKind.POLYNOMIAL:
            return PowerSeries(
                self.coeffs[:degree + 1], degree, precision_bits)

        if self.kind == MapKind.LOGISTIC:
            # f(mu + s) - mu = (2 - lambda)s - lambda s^2 exactly
            return PowerSeries(
                [0, 2 - self.lam, -self.lam], degree, precision_bits)

        s = PowerSeries.identity(degree, precision_bits)

        if self.kind == MapKind.COS_ONCE:
            shifted = s + PowerSeries.constant(mu, degree, precision_bits)
            return ps_elementary('cos', shifted) - \
                PowerSeries.constant(mu, degree, precision_bits)

        # y/(1 + y^ell ln(1+y)) about y = 0
        ell = 1 if self.kind == MapKind.POPA_G else self.ell
        log_part = ps_elementary('log1p', s)
        power = s
        for _ in range(ell - 1):
            power = power * s

        denominator = PowerSeries.constant(1, degree, precision_bits) + \
            power * log_part
        return ps_arith(s, denominator, 'divide')

    def taylor_at_fixed_point(self, degree, precision_bits=None):
        """
        Returns the local map in the branch coordinate s as a PowerSeries
        carried through the degree specified.

        The constant term is computed and then clamped to an exact zero
        provided it lies below 2^-(precision - 16); anything larger means
        the fixed point was wrong and a FixedPointError is thrown.
        """
        if precision_bits is None:
            precision_bits = default_precision()

        degree = int(degree)
        if degree < 1:
            raise PreconditionError(
                'a Taylor model requires a degree of at least 1')

        mu = self.fixed_point(precision_bits)
        single = self._single_series(degree, precision_bits, mu)

        threshold = BigReal(1, precision_bits) / (2 ** (precision_bits - 16))
        residue = single.coeffs[0]
        if abs(residue) >= threshold:
            raise FixedPointError(
                '%s does not vanish at its fixed point (residue %s)' % (
                    self.description, format_decimal(residue, 6)))

        single = PowerSeries(
            [0] + single.coeffs[1:], degree, precision_bits)

        if not self.double_step:
            result = single

        else:
            result = ps_arith(single, single, 'compose')
            if self.orientation == Orientation.BELOW:
                result = kindred_transform(result)

        logger.debug('Taylor model of %s through degree %d: %s' % (
            self.description, degree, result))
        return result

    @property
    def description(self):
        """
        The canonical text form; parse_map() accepts it back
        """
        if self.kind == MapKind.POLYNOMIAL:
            terms = []
            for n, c in enumerate(self.coeffs):
                if c == 0:
                    continue

                sign = '-' if c < 0 else '+'
                mag = abs(c)
                coef = '' if mag == 1 and n > 0 else (
                    '(%s)' % mag if mag.denominator != 1 else '%s' % mag)

                if n == 0:
                    var = ''
                elif n == 1:
                    var = 'x'
                else:
                    var = 'x^%d' % n

                terms.append('%s %s%s' % (sign, coef, var))

            body = ' '.join(terms) if terms else '+ 0'
            body = body[2:] if body.startswith('+ ') else '-' + body[2:]

        elif self.kind == MapKind.LOGISTIC:
            body = 'logistic(%s)' % self.lam

        elif self.kind == MapKind.POPA_G_ELL:
            body = 'popa_g_ell(%d)' % self.ell

        else:
            body = self.kind

        if self.double_step:
            return '%s:%s' % (body, self.orientation)
        return body

    @property
    def digest(self):
        """
        A short hash of the description used to label orbits
        """
        return hashlib.sha256(
            self.description.encode('utf-8')).hexdigest()[:16]

    def to_dict(self):
        return {
            'description': self.description,
            'kind': self.kind,
            'double_step': self.double_step,
            'orientation': self.orientation,
            'fixed_point': self.fixed_point_tag,
            'digest': self.digest,
        }

    def __eq__(self, other):
        if not isinstance(other, MapSpec):
            return NotImplemented
        return self.description == other.description

    def __hash__(self):
        return hash(self.description)

    def __str__(self):
        return self.description

    def __repr__(self):
        return '<MapSpec description="%s" />' % self.description


def parse_map(text):
    """
    Parses the text form of a map into a MapSpec.

    The body is one of:
        logistic(<lambda>)   ie: logistic(3), logistic(5/2)
        cos                  the cosine map (also cos_once)
        popa_g               y/(1 + y*ln(1+y))
        popa_g_ell(<ell>)    y/(1 + y^ell*ln(1+y))
        <polynomial>         ie: x - 18x^3 - 27x^4

    and may be followed by :single, :above or :below.
    """
    if isinstance(text, MapSpec):
        return text

    if not isinstance(text, str) or not text.strip():
        raise ConfigError('no map was specified')

    body, _, suffix = text.strip().rpartition(':')
    if not body:
        body, suffix = suffix, 'single'

    suffix = suffix.strip().lower()
    if suffix not in STEP_SUFFIXES:
        raise ConfigError('unsupported map suffix %r' % suffix)

    double_step, orientation = STEP_SUFFIXES[suffix]
    body = body.strip()

    match = NAMED_MAP_RE.match(body)
    if match:
        name = match.group('name').lower()
        arg = match.group('arg')

        if name == 'logistic':
            if arg is None:
                raise ConfigError('logistic() requires lambda')
            return MapSpec(
                MapKind.LOGISTIC, lam=_parse_rational(arg),
                double_step=double_step, orientation=orientation)

        if name == 'popa_g_ell':
            if arg is None:
                raise ConfigError('popa_g_ell() requires ell')
            ell = _parse_rational(arg)
            if ell.denominator != 1:
                raise ConfigError('ell must be an integer')
            return MapSpec(
                MapKind.POPA_G_ELL, ell=int(ell),
                double_step=double_step, orientation=orientation)

        if arg is not None:
            raise ConfigError('%s takes no parameter' % name)

        kind = MapKind.COS_ONCE if name.startswith('cos') else MapKind.POPA_G
        return MapSpec(
            kind, double_step=double_step, orientation=orientation)

    try:
        coeffs = parse_polynomial(body)

    except ConfigError:
        raise ConfigError('could not parse the map %r' % text)

    return MapSpec(
        MapKind.POLYNOMIAL, coeffs=coeffs,
        double_step=double_step, orientation=orientation)
