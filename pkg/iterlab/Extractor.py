# -*- coding: utf-8 -*-
#
# Extraction of the free constant C from far orbit samples
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

from .BigReal import BigReal
from .BigReal import digits_agreement
from .BigReal import digits_for_precision
from .BigReal import format_decimal
from .BigReal import parse_decimal
from .CPoly import CPoly
from .AsymSeries import EVAL_GUARD_BITS
from .Roots import safeguarded_newton
from .Errors import IterLabError
from .Errors import PreconditionError
from .Errors import RootSelectionError

import logging
from .Logging import ITERLAB_ENGINE
logger = logging.getLogger(ITERLAB_ENGINE)

# The smallest index an extraction is attempted at
MIN_EXTRACTION_INDEX = 100

# The root must lie this close to the initial guess
MAX_ROOT_DISTANCE = 1

# A stable scan ends with at least this many agreed digits
DEFAULT_STABLE_DIGITS = 6


class Verdict(object):
    """
    The outcome of a stability scan
    """
    STABLE = 'stable'
    DRIFTING = 'drifting'


class ConstantEstimate(object):
    """
    The value of C obtained from the orbit sample at index K
    """

    def __init__(self, C, K, poly_residual, series_cutoff_halves,
                 initial_guess=None):
        self.C = C
        self.K = K

        # The value of the scalar equation at C
        self.poly_residual = poly_residual

        self.series_cutoff_halves = series_cutoff_halves

        # The guess the root was searched for around
        self.initial_guess = initial_guess

    def to_dict(self, digits=None):
        if digits is None:
            digits = digits_for_precision(self.C.precision_bits)

        return {
            'K': self.K,
            'C': format_decimal(self.C, digits),
            'poly_residual': format_decimal(self.poly_residual, 6),
            'series_cutoff_halves': self.series_cutoff_halves,
        }

    def __repr__(self):
        return '<ConstantEstimate K=%d C=%s />' % (
            self.K, format_decimal(self.C, 20))


class StabilityReport(object):
    """
    The C estimates over a schedule of checkpoints and their agreement
    """

    def __init__(self, estimates, agreed_digits, verdict, failures=None):
        # A list of ConstantEstimate objects in increasing K
        self.estimates = estimates

        # A list of ((K_lo, K_hi), digits)
        self.agreed_digits = agreed_digits

        self.verdict = verdict

        # A list of (K, reason) for the checkpoints we could not use
        self.failures = failures or []

    @property
    def stable(self):
        return self.verdict == Verdict.STABLE

    @property
    def final(self):
        """
        The estimate taken at the largest index
        """
        return self.estimates[-1] if self.estimates else None

    def to_dict(self, digits=None):
        return {
            'verdict': self.verdict,
            'estimates': [{
                'K': e.K,
                'C': format_decimal(
                    e.C, digits or digits_for_precision(e.C.precision_bits)),
            } for e in self.estimates],
            'agreed_digits': [{
                'K_lo': lo,
                'K_hi': hi,
                'digits': d,
            } for (lo, hi), d in self.agreed_digits],
            'failures': [{
                'K': k,
                'reason': reason,
            } for k, reason in self.failures],
        }

    @classmethod
    def from_dict(cls, content, precision_bits=None):
        estimates = [
            ConstantEstimate(
                parse_decimal(e['C'], precision_bits), int(e['K']),
                BigReal(0, precision_bits), None)
            for e in content.get('estimates', [])]

        agreed = [
            ((int(e['K_lo']), int(e['K_hi'])), int(e['digits']))
            for e in content.get('agreed_digits', [])]

        failures = [
            (int(e['K']), e['reason']) for e in content.get('failures', [])]

        return cls(estimates, agreed, content['verdict'], failures)

    def __repr__(self):
        return '<StabilityReport verdict=%s estimates=%d />' % (
            self.verdict, len(self.estimates))


def scalar_equation(series, K, value):
    """
    Returns the polynomial Q in C with  Q(C) = series(K; C) - value
    """
    precision_bits = series.precision_bits
    working = precision_bits + EVAL_GUARD_BITS

    k = BigReal(int(K), working)
    lnk = k.ln()
    inv_root = 1 / k.sqrt()

    Q = CPoly.constant(-value.with_precision(working), working)
    for (halves, logpow), coeff in series.items():
        factor = (inv_root ** halves) * (lnk ** logpow)
        Q = Q + CPoly(
            [c.with_precision(working) * factor for c in coeff.coeffs],
            working)

    return Q


def extract_constant(series, K, value, precision_bits=None):
    """
    Solves  series(K; C) = value  for the free constant C.

    The equation is a polynomial in C (of degree 3 or less for cutoffs up
    to 8).  Its leading behaviour is linear with slope K^(-3/2), giving the
    initial guess

        C0 = (value - series(K; 0)) * K^(3/2)

    and the real root nearest C0 is refined by safeguarded Newton.  A
    RootSelectionError is thrown if no root lies within 1 of C0.
    """
    if precision_bits is None:
        precision_bits = series.precision_bits

    K = int(K)
    if K < MIN_EXTRACTION_INDEX:
        raise PreconditionError(
            'extraction requires K >= %d (found %d)' % (
                MIN_EXTRACTION_INDEX, K))

    if series.c_degree() < 1:
        raise PreconditionError(
            'the series does not depend on the free constant C')

    if not isinstance(value, BigReal):
        value = BigReal(value, precision_bits)

    Q = scalar_equation(series, K, value)
    dQ = Q.derivative()
    working = Q.precision_bits

    scale = BigReal(K, working) * BigReal(K, working).sqrt()
    C0 = -Q[0] * scale

    def func(C):
        return Q.evaluate(C), dQ.evaluate(C)

    # Find the smallest symmetric bracket about C0 holding a sign change
    root = None
    if Q.evaluate(C0).is_zero():
        root = C0

    else:
        radius = BigReal(1, working) / 1024
        while radius <= MAX_ROOT_DISTANCE:
            lo = C0 - radius
            hi = C0 + radius
            if Q.evaluate(lo).sign() != Q.evaluate(hi).sign():
                tolerance = (abs(C0) + 1) / (2 ** (precision_bits - 8))
                root = safeguarded_newton(
                    func, lo, hi, tolerance, guess=C0)
                break
            radius = radius * 2

    if root is None:
        raise RootSelectionError(
            'no real root within %d of the initial guess %s at K=%d' % (
                MAX_ROOT_DISTANCE, format_decimal(C0, 12), K))

    residual = abs(Q.evaluate(root))
    C = root.with_precision(precision_bits)

    logger.debug('C(K=%d) = %s (initial guess %s, residual %s)' % (
        K, format_decimal(C, 25), format_decimal(C0, 12),
        format_decimal(residual, 4)))

    return ConstantEstimate(
        C, K, residual.with_precision(precision_bits),
        series.cutoff_halves,
        initial_guess=C0.with_precision(precision_bits))


def stability_scan(series, orbit, min_digits=DEFAULT_STABLE_DIGITS):
    """
    Extracts C at every checkpoint of an orbit (from K = 100 on) and
    measures how many digits consecutive estimates agree on.

    The verdict is stable if the agreement never decreases along the
    schedule and ends with at least min_digits digits; drifting otherwise.

    A failed extraction is recorded and the scan goes on; an error is only
    thrown if every checkpoint failed.
    """
    samples = [(k, v) for k, v in orbit.samples
               if k >= MIN_EXTRACTION_INDEX]

    if len(samples) < 3:
        raise PreconditionError(
            'a stability scan requires 3 checkpoints of K >= %d' %
            MIN_EXTRACTION_INDEX)

    if math.log10(samples[-1][0]) - math.log10(samples[0][0]) < 2:
        raise PreconditionError(
            'the checkpoints of a stability scan must span 2 decades')

    estimates = []
    failures = []
    first_error = None
    for k, value in samples:
        try:
            estimates.append(extract_constant(series, k, value))

        except IterLabError as e:
            logger.warning('Extraction at K=%d failed: %s' % (k, e))
            failures.append((k, str(e)))
            if first_error is None:
                first_error = e

    if not estimates:
        raise first_error

    agreed = []
    for lo, hi in zip(estimates, estimates[1:]):
        agreed.append(((lo.K, hi.K), digits_agreement(lo.C, hi.C)))

    digits = [d for _, d in agreed]
    if digits and all(a <= b for a, b in zip(digits, digits[1:])) \
            and digits[-1] >= min_digits:
        verdict = Verdict.STABLE

    else:
        verdict = Verdict.DRIFTING

    logger.info('Stability scan over %d checkpoint(s): %s (%s)' % (
        len(samples), verdict, ', '.join(str(d) for d in digits)))

    return StabilityReport(estimates, agreed, verdict, failures)
