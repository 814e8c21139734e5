# -*- coding: utf-8 -*-
#
# The exceptions raised by the IterLab library
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


class ExitCode(object):
    """
    A Simple lookup table that maps the exception families to the exit
    status returned by the command line tool.
    """
    SUCCESS = 0

    # Bad configuration file, unknown key, unparsable map or number
    CONFIG_ERROR = 2

    # Propagated failure from one of the numerical modules
    NUMERICAL_ERROR = 3


class IterLabError(Exception):
    """
    The base of every exception raised by iterlab.

    Each error carries a short machine readable reason (a slug such as
    'fixed-point' or 'basin') along with a human readable message.  The
    string form is always a single line:  '<reason>: <message>'
    """

    # The reason used when none is specified
    reason = 'error'

    # The exit status the command line tool maps this error to
    exit_code = ExitCode.NUMERICAL_ERROR

    def __init__(self, message='', reason=None):
        super(IterLabError, self).__init__(message)
        self.message = ' '.join(str(message).split())
        if reason is not None:
            self.reason = reason

    def __str__(self):
        if not self.message:
            return self.reason
        return '%s: %s' % (self.reason, self.message)


class ConfigError(IterLabError):
    """
    Bad configuration; unknown keys, out of range values, unparsable
    map descriptions or numbers.
    """
    reason = 'config'
    exit_code = ExitCode.CONFIG_ERROR


class NumericalError(IterLabError):
    """
    The base of all failures detected while computing.
    """
    reason = 'numerical'


class PreconditionError(NumericalError):
    """
    An operation was handed input that violates its contract
    (ie: a composition inner series with a constant term).
    """
    reason = 'precondition'


class DomainError(NumericalError):
    """
    A value left the domain of a function (log of a non-positive value,
    non-finite result, etc).
    """
    reason = 'domain'


class FixedPointError(NumericalError):
    """
    A fixed point could not be resolved to the working precision.
    """
    reason = 'fixed-point'


class SingularStepError(NumericalError):
    """
    A matching equation could not be solved for its unknown; this points
    at a deficiency in the expansion basis.
    """
    reason = 'singular-step'


class InconsistencyError(NumericalError):
    """
    An internal invariant failed (ie: a logarithm power above its cap).
    """
    reason = 'inconsistent'


class BasinError(NumericalError):
    """
    An orbit left the basin it was required to stay in.
    """
    reason = 'basin'


class RootSelectionError(NumericalError):
    """
    No real root could be found near the initial guess.
    """
    reason = 'root-selection'


class ConvergenceError(NumericalError):
    """
    An iterative process failed to converge within its budget.
    """
    reason = 'convergence'
