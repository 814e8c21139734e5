# -*- coding: utf-8 -*-
#
# High precision iteration of one dimensional maps
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

import math
from fractions import Fraction

from gevent import sleep

from mpmath.libmp import ComplexResult
from mpmath.libmp import fzero
from mpmath.libmp import fone
from mpmath.libmp import round_nearest
from mpmath.libmp import from_rational
from mpmath.libmp import mpf_add
from mpmath.libmp import mpf_sub
from mpmath.libmp import mpf_mul
from mpmath.libmp import mpf_div
from mpmath.libmp import mpf_cmp
from mpmath.libmp import mpf_log
from mpmath.libmp import mpf_cos
from mpmath.libmp import mpf_pow_int

from .BigReal import BigReal
from .BigReal import LOG2_10
from .BigReal import default_precision
from .BigReal import digits_for_precision
from .BigReal import format_decimal
from .BigReal import parse_decimal
from .MapSpec import MapKind
from .MapSpec import Coordinates
from .MapSpec import Orientation
from .MapSpec import parse_map
from .Errors import BasinError
from .Errors import ConfigError
from .Errors import DomainError

import logging
from .Logging import ITERLAB_ENGINE
logger = logging.getLogger(ITERLAB_ENGINE)

# The progress callback is invoked (and other greenlets are given a chance
# to run) every time this many steps were taken
PROGRESS_INTERVAL = 1 << 20

# Extra bits carried by the integer fast path on top of the precision and
# the log2(K) round-off allowance
FAST_PATH_GUARD_BITS = 16

# The largest k closed_form_logistic2() accepts
MAX_CLOSED_FORM_INDEX = 1 << 20


def orbit_precision(digits, K):
    """
    Returns the working precision needed to carry an orbit to index K
    while keeping the digits specified:
        ceil(D log2 10) + ceil(log2 K) + 64
    """
    return int(math.ceil(digits * LOG2_10)) + \
        int(math.ceil(math.log(max(K, 2), 2))) + 64


def default_checkpoints(K):
    """
    Returns every power of two up to K along with K itself
    """
    K = int(K)
    if K < 1:
        raise ConfigError('an orbit requires at least one step')

    result = set([K])
    power = 1
    while power <= K:
        result.add(power)
        power <<= 1
    return sorted(result)


class OrbitRequest(object):
    """
    Describes an orbit to compute.

    x0 is given in the coordinates specified; by default a double step map
    is iterated in its branch coordinate (s measured from the fixed point)
    and every other map in raw coordinates.  The two coincide for maps
    taken about 0 (polynomials and the popa maps).
    """

    def __init__(self, map, x0, K_max=None, checkpoints=None,
                 precision_bits=None, coordinates=None):

        self.map = parse_map(map)

        if precision_bits is None:
            precision_bits = default_precision()
        self.precision_bits = int(precision_bits)

        if not isinstance(x0, BigReal):
            x0 = BigReal(x0, self.precision_bits)
        self.x0 = x0.with_precision(self.precision_bits)

        if checkpoints is None:
            if K_max is None:
                raise ConfigError('an orbit requires K or checkpoints')
            checkpoints = default_checkpoints(K_max)

        checkpoints = sorted(set(int(k) for k in checkpoints))
        if not checkpoints:
            raise ConfigError('an orbit requires at least one checkpoint')

        if checkpoints[0] < 0:
            raise ConfigError('checkpoints can not be negative')

        if K_max is None:
            K_max = checkpoints[-1]

        K_max = int(K_max)
        if checkpoints[-1] > K_max:
            raise ConfigError(
                'checkpoint %d lies beyond K=%d' % (checkpoints[-1], K_max))

        self.K_max = K_max
        self.checkpoints = checkpoints

        if coordinates is None:
            coordinates = Coordinates.BRANCH \
                if self.map.double_step else Coordinates.RAW

        if coordinates not in (Coordinates.RAW, Coordinates.BRANCH):
            raise ConfigError('unsupported coordinates %r' % (coordinates, ))

        self.coordinates = coordinates

    @property
    def branch(self):
        """
        True if the orbit lives in a branch coordinate; such orbits must
        decrease towards 0.
        """
        return self.coordinates == Coordinates.BRANCH or self.map.is_local

    def __repr__(self):
        return '<OrbitRequest map="%s" K=%d checkpoints=%d />' % (
            self.map, self.K_max, len(self.checkpoints))


class OrbitResult(object):
    """
    The sampled values of an orbit
    """

    def __init__(self, description, samples, precision_bits, digest=None,
                 coordinates=Coordinates.RAW):

        # The map description
        self.description = description

        # A list of (k, BigReal)
        self.samples = list(samples)

        self.precision_bits = precision_bits
        self.coordinates = coordinates

        self.digest = digest if digest is not None \
            else parse_map(description).digest

    @property
    def checkpoints(self):
        return [k for k, _ in self.samples]

    def value_at(self, k):
        """
        Returns the sample stored for index k
        """
        for _k, value in self.samples:
            if _k == k:
                return value

        raise KeyError('no sample stored for k=%d' % k)

    def to_dict(self, digits=None):
        if digits is None:
            digits = digits_for_precision(self.precision_bits)

        return {
            'map': self.description,
            'digest': self.digest,
            'coordinates': self.coordinates,
            'precision_bits': self.precision_bits,
            'samples': [{
                'k': k,
                'value': format_decimal(value, digits),
            } for k, value in self.samples],
        }

    @classmethod
    def from_dict(cls, content):
        precision_bits = int(content['precision_bits'])
        return cls(
            content['map'],
            [(int(s['k']), parse_decimal(s['value'], precision_bits))
             for s in content['samples']],
            precision_bits,
            digest=content.get('digest'),
            coordinates=content.get('coordinates', Coordinates.RAW),
        )

    def __len__(self):
        return len(self.samples)

    def __repr__(self):
        return '<OrbitResult map="%s" samples=%d />' % (
            self.description, len(self.samples))


def split_parity(samples):
    """
    Splits (k, value) samples into the odd and even indexed subsequences;
    returns the tuple (odd, even).
    """
    odd = [(k, v) for k, v in samples if k % 2]
    even = [(k, v) for k, v in samples if not k % 2]
    return odd, even


def _raw_function(spec, prec):
    """
    Returns a function applying the map once to a raw libmp value at the
    precision specified.
    """
    rnd = round_nearest

    if spec.kind == MapKind.POLYNOMIAL:
        coeffs = [from_rational(c.numerator, c.denominator, prec, rnd)
                  for c in reversed(spec.coeffs)]

        def func(x):
            acc = fzero
            for c in coeffs:
                acc = mpf_add(mpf_mul(acc, x, prec, rnd), c, prec, rnd)
            return acc

    elif spec.kind == MapKind.LOGISTIC:
        lam = from_rational(
            spec.lam.numerator, spec.lam.denominator, prec, rnd)

        def func(x):
            return mpf_mul(
                mpf_mul(x, mpf_sub(fone, x, prec, rnd), prec, rnd),
                lam, prec, rnd)

    elif spec.kind == MapKind.COS_ONCE:
        def func(x):
            return mpf_cos(x, prec, rnd)

    else:
        ell = 1 if spec.kind == MapKind.POPA_G else spec.ell

        def func(y):
            # y / (1 + y^ell ln(1 + y)); 1 + y is formed exactly
            log = mpf_log(mpf_add(fone, y), prec, rnd)
            power = y if ell == 1 else mpf_pow_int(y, ell, prec, rnd)
            return mpf_div(
                y, mpf_add(fone, mpf_mul(power, log, prec, rnd), prec, rnd),
                prec, rnd)

    if not spec.double_step:
        return func

    def twice(x):
        return func(func(x))

    return twice


def _branch_function(spec, prec):
    """
    Returns a function applying the double step map once in its branch
    coordinate.  The raw value sits next to the fixed point so it is
    handled at twice the precision before the branch coordinate is rounded
    back.
    """
    working = 2 * prec + 64
    mu = spec.fixed_point(working).mpf
    step = _raw_function(spec, working)
    below = spec.orientation == Orientation.BELOW

    def func(s):
        if below:
            return mpf_sub(mu, step(mpf_sub(mu, s)), prec, round_nearest)
        return mpf_sub(step(mpf_add(mu, s)), mu, prec, round_nearest)

    return func


def _fast_path(spec):
    """
    Returns True if the map is a polynomial with a unit linear term; such
    orbits decay algebraically and can be carried in scaled integers.
    """
    return spec.kind == MapKind.POLYNOMIAL and not spec.double_step and \
        len(spec.coeffs) > 1 and spec.coeffs[1] == 1


def _report(progress, k, K_max):
    """
    Reports on our progress and gives other greenlets a chance to run
    """
    logger.debug('Orbit at step %d of %d' % (k, K_max))
    if progress is not None:
        progress(k, K_max)
    sleep(0)


def _iterate_fixed_point(req, progress):
    """
    Steps a polynomial map in integers scaled by 2^F with
        F = precision + ceil(log2 K) + 16
    rounding to nearest after every product.
    """
    spec = req.map
    F = req.precision_bits + \
        int(math.ceil(math.log(max(req.K_max, 2), 2))) + \
        FAST_PATH_GUARD_BITS
    half = 1 << (F - 1)

    def scaled(value):
        # round(value * 2^F) for a Fraction
        num = value.numerator << F
        return (2 * num + value.denominator) // (2 * value.denominator)

    # Horner coefficients from the highest degree down to the linear one;
    # the constant term is zero
    coeffs = [scaled(c) for c in reversed(spec.coeffs[1:])]

    U = scaled(req.x0.to_fraction())
    U0 = U
    if U <= 0:
        raise BasinError(
            'the orbit of %s must start above 0' % spec.description)

    samples = []
    checkpoints = list(req.checkpoints)
    index = 0
    if checkpoints[0] == 0:
        samples.append((0, req.x0))
        index = 1

    one = 1 << F
    for k in range(1, req.K_max + 1):
        acc = coeffs[0]
        for c in coeffs[1:]:
            acc = ((acc * U + half) >> F) + c
        V = (acc * U + half) >> F

        if V <= 0 or V > U0 or (V >= U and U < one):
            raise BasinError(
                'the orbit of %s left (0, x0] or stopped decreasing at '
                'step %d' % (spec.description, k))
        U = V

        if index < len(checkpoints) and k == checkpoints[index]:
            samples.append((k, BigReal(Fraction(U, one), req.precision_bits)))
            index += 1

        if not k % PROGRESS_INTERVAL:
            _report(progress, k, req.K_max)

    return samples


def _iterate_mpf(req, progress):
    """
    Steps any map on raw libmp values at a fixed precision
    """
    spec = req.map
    prec = req.precision_bits

    if req.coordinates == Coordinates.BRANCH and not spec.is_local:
        step = _branch_function(spec, prec)
    else:
        step = _raw_function(spec, prec)

    branch = req.branch
    logistic = spec.kind == MapKind.LOGISTIC and not branch

    x = req.x0.mpf
    x0 = x
    if branch and mpf_cmp(x, fzero) <= 0:
        raise BasinError(
            'the orbit of %s must start above 0' % spec.description)

    if logistic and (mpf_cmp(x, fzero) <= 0 or mpf_cmp(x, fone) >= 0):
        raise BasinError('a logistic orbit must start inside (0, 1)')

    samples = []
    checkpoints = list(req.checkpoints)
    index = 0
    if checkpoints[0] == 0:
        samples.append((0, req.x0))
        index = 1

    for k in range(1, req.K_max + 1):
        try:
            y = step(x)

        except (ComplexResult, ZeroDivisionError) as e:
            raise DomainError(
                'the orbit of %s left the domain of the map at step %d '
                '(%s)' % (spec.description, k, e))

        if not y[1] and y != fzero:
            raise DomainError(
                'the orbit of %s produced a non-finite value at step %d' %
                (spec.description, k))

        if branch:
            if mpf_cmp(y, fzero) <= 0 or mpf_cmp(y, x0) > 0 or (
                    mpf_cmp(y, x) >= 0 and mpf_cmp(x, fone) < 0):
                raise BasinError(
                    'the orbit of %s left (0, x0] or stopped decreasing at '
                    'step %d' % (spec.description, k))

        elif logistic:
            if mpf_cmp(y, fzero) <= 0 or mpf_cmp(y, fone) >= 0:
                raise BasinError(
                    'the orbit of %s left (0, 1) at step %d' % (
                        spec.description, k))
        x = y

        if index < len(checkpoints) and k == checkpoints[index]:
            samples.append((k, BigReal(x, prec)))
            index += 1

        if not k % PROGRESS_INTERVAL:
            _report(progress, k, req.K_max)

    return samples


def iterate_map(req, progress=None):
    """
    Computes the orbit described by an OrbitRequest and returns its
    OrbitResult.

    progress (when specified) is called as progress(k, K_max) every
    PROGRESS_INTERVAL steps and once the orbit is complete.

    Branch coordinate orbits must remain inside (0, x0] and decrease
    (once below 1); logistic orbits in raw coordinates must remain inside
    (0, 1).  Leaving these basins throws a BasinError.
    """
    logger.info('Iterating %s from %s to K=%d at %d bits' % (
        req.map, format_decimal(req.x0, 12), req.K_max, req.precision_bits))

    if _fast_path(req.map):
        samples = _iterate_fixed_point(req, progress)

    else:
        samples = _iterate_mpf(req, progress)

    _report(progress, req.K_max, req.K_max)

    return OrbitResult(
        req.map.description, samples, req.precision_bits,
        digest=req.map.digest,
        coordinates=Coordinates.BRANCH if req.branch else Coordinates.RAW,
    )


def closed_form_logistic2(x0, k, precision_bits=None):
    """
    Returns x_k for the logistic map with lambda = 2:

        x_k = (1 - (1 - 2 x0)^(2^k)) / 2

    The power is formed by k squarings carried with k extra bits; once it
    drops below the working precision it can no longer change the result
    and the squaring stops.
    """
    if not isinstance(x0, BigReal):
        x0 = BigReal(x0, precision_bits)

    if precision_bits is None:
        precision_bits = x0.precision_bits

    k = int(k)
    if k < 0:
        raise DomainError('the index must not be negative')

    if k > MAX_CLOSED_FORM_INDEX:
        raise DomainError('2^%d is beyond the supported exponent range' % k)

    if x0 <= 0 or x0 >= 1:
        raise DomainError('the closed form requires 0 < x0 < 1')

    working = precision_bits + k + 16
    base = 1 - x0.with_precision(working) * 2
    floor = BigReal(1, working) / (2 ** (precision_bits + 8))

    power = base
    for _ in range(k):
        if abs(power) < floor:
            break
        power = power * power

    if abs(power) < floor and k > 0:
        power = BigReal(0, working)

    return ((1 - power) / 2).with_precision(precision_bits)
