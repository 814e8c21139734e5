# -*- coding: utf-8 -*-
#
# The reproduction suite; recomputes every published constant
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

import json
import time
import yaml

from gevent.event import AsyncResult
from gevent.lock import Semaphore
from gevent.pool import Pool

from .BigReal import BigReal
from .BigReal import default_precision
from .BigReal import digits_agreement
from .BigReal import format_decimal
from .BigReal import parse_decimal
from .BigReal import precision_for_digits
from .MapSpec import parse_map
from .PowerSeries import ps_reversion
from .AsymSeries import asym_eval
from .AsymSeries import asym_reciprocal
from .Matcher import solve_expansion
from .Matcher import preface_coefficients
from .Matcher import compare_fits
from .Orbit import OrbitRequest
from .Orbit import OrbitResult
from .Orbit import iterate_map
from .Orbit import closed_form_logistic2
from .Extractor import extract_constant
from .Extractor import stability_scan
from .Thron import dottie
from .Thron import bound_scan
from .Thron import geometric_limit
from .Settings import REFERENCE_FILE
from .Settings import PROFILES
from .Errors import ConfigError
from .Errors import InconsistencyError
from .Errors import IterLabError

import logging
from .Logging import ITERLAB_CLI
logger = logging.getLogger(ITERLAB_CLI)

# The digits the exact (rational) comparisons are carried to
SERIES_DIGITS = 30

# The maps the suite works with
U_MAP = 'x - 18x^3 - 27x^4'
V_MAP = 'x - 18x^3 + 27x^4'
POPA_MAP = 'popa_g'

# The series-vs-orbit decay is observed at 4^6 .. 4^10
DECAY_INDEXES = tuple(4 ** n for n in range(6, 11))

# |series - u_k| must shrink at least this much per quadrupling of k
DECAY_FACTOR = 15

# logistic(2) iterates stay within 2^-(precision - this) of the closed form
LAMBDA2_GUARD_BITS = 160


class EntryKind(object):
    """
    How a computed value is judged against its reference
    """
    # The leading digits must agree
    MATCH = 'match'

    # The computed value must stay below the reference
    UPPER_BOUND = 'upper_bound'

    # The computed value must reach the reference
    LOWER_BOUND = 'lower_bound'

    # The computed text must equal the reference
    VERDICT = 'verdict'


ENTRY_KINDS = (
    EntryKind.MATCH,
    EntryKind.UPPER_BOUND,
    EntryKind.LOWER_BOUND,
    EntryKind.VERDICT,
)


class ReferenceEntry(object):
    """
    A published value (or a note describing a computed reference) and the
    digit targets it must be reproduced to.
    """

    def __init__(self, label, section=None, value=None, digits=None,
                 kind=EntryKind.MATCH, note=None):

        if kind not in ENTRY_KINDS:
            raise ConfigError('entry %s has an unsupported kind %r' % (
                label, kind))

        self.label = label
        self.section = section
        self.value = None if value is None else str(value)
        self.kind = kind
        self.note = note

        self.digits = {}
        for profile in PROFILES:
            try:
                self.digits[profile] = int((digits or {}).get(profile, 0))

            except (TypeError, ValueError):
                raise ConfigError('entry %s has a bad digit target' % label)

    def __repr__(self):
        return '<ReferenceEntry label=%s />' % self.label


def load_reference(path=None):
    """
    Loads the reference file and returns the tuple (profiles, entries)
    """
    if path is None:
        path = REFERENCE_FILE

    try:
        with open(path, 'r') as f:
            content = yaml.safe_load(f)

    except (IOError, yaml.YAMLError) as e:
        logger.debug('%s' % str(e))
        raise ConfigError('Failed to load the reference file %s' % path)

    if not isinstance(content, dict) or \
            not isinstance(content.get('entries'), list):
        raise ConfigError('Invalid reference file structure in %s' % path)

    profiles = content.get('profiles') or {}
    for profile in PROFILES:
        if profile not in profiles or 'K' not in profiles[profile]:
            raise ConfigError(
                'the reference file does not define the %s profile' %
                profile)

    entries = []
    seen = set()
    for item in content['entries']:
        if not isinstance(item, dict) or 'label' not in item:
            raise ConfigError('an entry of %s has no label' % path)

        unknown = set(item.keys()) - set(
            ('label', 'section', 'value', 'digits', 'kind', 'note'))
        if unknown:
            raise ConfigError('unknown key(s) in entry %s: %s' % (
                item['label'], ', '.join(sorted(unknown))))

        if item['label'] in seen:
            raise ConfigError('entry %s is defined twice' % item['label'])
        seen.add(item['label'])

        entries.append(ReferenceEntry(**item))

    return profiles, entries


class ReproEntry(object):
    """
    The outcome of a single entry of the suite
    """

    def __init__(self, label, published_value, computed, digits_matched,
                 target, passed, runtime_seconds=0.0, error=None):
        self.label = label
        self.published_value = published_value
        self.computed = computed
        self.digits_matched = digits_matched
        self.target = target
        self.passed = passed
        self.runtime_seconds = runtime_seconds

        # The one line reason the entry failed to compute (if it did)
        self.error = error

    def to_dict(self, timings=False):
        content = {
            'label': self.label,
            'published_value': self.published_value,
            'computed': self.computed,
            'digits_matched': self.digits_matched,
            'target': self.target,
            'passed': self.passed,
        }

        if self.error is not None:
            content['error'] = self.error

        if timings:
            content['runtime_seconds'] = round(self.runtime_seconds, 3)

        return content

    def __repr__(self):
        return '<ReproEntry label=%s passed=%s />' % (
            self.label, self.passed)


class ReproReport(object):
    """
    The outcome of a run of the suite; it passes if every entry does.
    """

    def __init__(self, entries, profile):
        self.entries = entries
        self.profile = profile

    @property
    def passed(self):
        return all(e.passed for e in self.entries)

    @property
    def overall(self):
        return 'pass' if self.passed else 'fail'

    def to_dict(self, timings=False):
        return {
            'profile': self.profile,
            'overall': self.overall,
            'entries': [e.to_dict(timings=timings) for e in self.entries],
        }

    def to_json(self, timings=False):
        """
        The same report always renders to the same bytes unless timings
        are included.
        """
        return json.dumps(
            self.to_dict(timings=timings), sort_keys=True, indent=2)

    def table(self):
        """
        Returns the digit-match table as a list of lines
        """
        lines = ['%-26s %-30s %-30s %6s %6s %8s %s' % (
            'label', 'published', 'computed', 'digits', 'target',
            'seconds', 'status')]

        for e in self.entries:
            lines.append('%-26s %-30s %-30s %6d %6d %8.2f %s' % (
                e.label, e.published_value[:30], (e.computed or '-')[:30],
                e.digits_matched, e.target, e.runtime_seconds,
                'pass' if e.passed else 'FAIL'))

            if e.error:
                lines.append('    %s' % e.error)

        lines.append('overall: %s' % self.overall)
        return lines

    def __repr__(self):
        return '<ReproReport profile=%s entries=%d overall=%s />' % (
            self.profile, len(self.entries), self.overall)


class ReproSuite(object):
    """
    Runs the entries of the reference file.

    Entries run as greenlets of a pool; the orbits and expansions they
    share are computed once (the first entry to need one computes it and
    the others wait for it).  Results are assembled in the order the
    reference file declares them.
    """

    def __init__(self, profile='fast', precision_bits=None, threads=4,
                 reference_file=None, on_entry=None):

        if profile not in PROFILES:
            raise ConfigError('unsupported profile %r' % (profile, ))

        self.profile = profile
        self.threads = max(1, int(threads))

        if precision_bits is None:
            precision_bits = max(
                default_precision(), precision_for_digits(SERIES_DIGITS))
        self.precision_bits = int(precision_bits)

        profiles, self.entries = load_reference(reference_file)
        self.K = int(profiles[profile]['K'])

        # Called as on_entry(ReproEntry) as every entry completes
        self.on_entry = on_entry

        # Shared computations; key -> AsyncResult
        self._cache = {}
        self._cache_lock = Semaphore(value=1)

        # Completed entries are reported one at a time
        self._output_lock = Semaphore(value=1)

    def _cached(self, key, fn, *args):
        """
        Returns fn(*args) computing it only the first time key is asked
        for.
        """
        with self._cache_lock:
            result = self._cache.get(key)
            owner = result is None
            if owner:
                result = AsyncResult()
                self._cache[key] = result

        if owner:
            try:
                result.set(fn(*args))

            except Exception as e:
                result.set_exception(e)

        return result.get()

    #
    # Shared computations
    #

    def theta(self):
        return self._cached('theta', dottie, self.precision_bits)

    def _decades(self, K):
        result = []
        power = 100
        while power <= K:
            result.append(power)
            power *= 10
        return result

    def orbit(self, name):
        """
        Returns one of the orbits the suite extracts from
        """
        def compute():
            if name in ('u', 'v'):
                K = max(self.K, DECAY_INDEXES[-1])
                checkpoints = set(self._decades(K)) | set(DECAY_INDEXES)
                checkpoints.add(self.K)
                req = OrbitRequest(
                    U_MAP if name == 'u' else V_MAP,
                    '1/12' if name == 'u' else '1/6',
                    K_max=K, checkpoints=checkpoints,
                    precision_bits=self.precision_bits)

            else:
                checkpoints = set(self._decades(self.K))
                checkpoints.add(self.K)
                req = OrbitRequest(
                    POPA_MAP, 1, K_max=self.K, checkpoints=checkpoints,
                    precision_bits=self.precision_bits)

            return iterate_map(req)

        return self._cached(('orbit', name), compute)

    def expansion(self, text, degree, cutoff_halves=8):
        """
        Returns the ExpansionResult of a map from its Taylor model of the
        degree specified
        """
        def compute():
            spec = parse_map(text)
            model = spec.taylor_at_fixed_point(degree, self.precision_bits)
            return solve_expansion(
                model, cutoff_halves, self.precision_bits,
                exact_map=spec.is_exact_polynomial)

        return self._cached(
            ('expansion', text, degree, cutoff_halves), compute)

    def constant(self, orbit_name, text, degree, K=None):
        """
        Returns the ConstantEstimate extracted from an orbit
        """
        def compute():
            orbit = self.orbit(orbit_name)
            k = orbit.checkpoints[-1] if K is None else K
            series = self.expansion(text, degree).series
            return extract_constant(series, k, orbit.value_at(k))

        return self._cached(('constant', orbit_name, text, degree, K),
                            compute)

    def product(self, text, u0):
        def compute():
            return geometric_limit(
                parse_map(text), u0, target_digits=25,
                precision_bits=self.precision_bits)

        return self._cached(('product', text, str(u0)), compute)

    #
    # Entries; each returns the tuple (computed, reference) with the
    # reference left as None when the file supplies it
    #

    def _entry_theta(self):
        return self.theta(), None

    def _entry_one_minus_theta_squared(self):
        theta = self.theta()
        return 1 - theta * theta, None

    def _entry_dottie_above(self):
        return self.product('cos:above', 1 - self.theta()).limit, None

    def _entry_dottie_below(self):
        return self.product('cos:below', self.theta()).limit, None

    def _entry_dottie_ratio(self):
        theta = self.theta()
        above = self.product('cos:above', 1 - theta).limit
        below = self.product('cos:below', theta).limit
        return above / below, (1 - theta * theta).sqrt()

    def _entry_dottie_bound_above(self):
        report = bound_scan(parse_map('cos:above'), 10, 10000)
        if report.sup_estimate <= BigReal('0.25', 64):
            raise InconsistencyError(
                'the scanned sup %s is implausibly small' % format_decimal(
                    report.sup_estimate, 12))
        return report.sup_estimate, None

    def _entry_dottie_bound_below(self):
        return bound_scan(parse_map('cos:below'), 10, 10000).sup_estimate, \
            None

    def _entry_logistic_3_2(self):
        return self.product('logistic(3/2)', '1/6').limit, None

    def _entry_logistic_5_2_above(self):
        return self.product('logistic(5/2):above', '1/40').limit, None

    def _entry_logistic_5_2_below(self):
        return self.product('logistic(5/2):below', '1/10').limit, None

    def _entry_logistic_5_2_ratio(self):
        above = self.product('logistic(5/2):above', '1/40').limit
        below = self.product('logistic(5/2):below', '1/10').limit
        return above / below, None

    def _entry_lambda2_closed_form(self):
        # the largest |iterate - closed form| against 2^-(precision - 160)
        worst = BigReal(0, self.precision_bits)
        for j in range(1, 11):
            x0 = BigReal.from_fraction(j, 11, self.precision_bits)
            orbit = iterate_map(OrbitRequest(
                'logistic(2)', x0, checkpoints=range(0, 21),
                precision_bits=self.precision_bits))

            for k, value in orbit.samples:
                expected = closed_form_logistic2(x0, k, self.precision_bits)
                worst = max(worst, abs(value - expected))

        return worst, BigReal(2, self.precision_bits) ** -(
            self.precision_bits - LAMBDA2_GUARD_BITS)

    def _entry_lambda2_half(self):
        orbit = iterate_map(OrbitRequest(
            'logistic(2)', '1/2', checkpoints=[20],
            precision_bits=self.precision_bits))
        return orbit.value_at(20), None

    def _entry_lambda2_exp(self):
        one = BigReal(1, self.precision_bits)
        x0 = (1 - (-one).exp()) / 2
        orbit = iterate_map(OrbitRequest(
            'logistic(2)', x0, checkpoints=[5],
            precision_bits=self.precision_bits))
        return orbit.value_at(5), (1 - (-one * 32).exp()) / 2

    def _entry_reversion(self):
        model = parse_map(U_MAP).taylor_at_fixed_point(
            5, self.precision_bits)
        inverse = ps_reversion(model)

        worst = None
        for degree, expected in ((3, 18), (4, 27), (5, 972)):
            expected = BigReal(expected, self.precision_bits)
            agreed = digits_agreement(inverse[degree], expected)
            if worst is None or agreed < worst[0]:
                worst = (agreed, inverse[degree], expected)

        return worst[1], worst[2]

    def _entry_u_series_4_0(self):
        return self.expansion(U_MAP, 4).coefficient(4, 0)[0], None

    def _entry_u_series_4_0_slope(self):
        return self.expansion(U_MAP, 4).coefficient(4, 0)[1], None

    def _entry_u_series_8_0(self):
        return self.expansion(U_MAP, 4).coefficient(8, 0)[0], None

    def _entry_v_series_4_0(self):
        return self.expansion(V_MAP, 4).coefficient(4, 0)[0], None

    def _entry_preface_4_0(self):
        closed = preface_coefficients(
            18, -27, precision_bits=self.precision_bits)
        return self.expansion(U_MAP, 4).coefficient(4, 0)[0], \
            closed[(4, 0)][0]

    def _entry_C_o(self):
        return self.constant('u', U_MAP, 4, self.K).C, None

    def _entry_C_e(self):
        return self.constant('v', V_MAP, 4, self.K).C, None

    def _entry_decay(self):
        orbit = self.orbit('u')
        series = self.expansion(U_MAP, 4).series
        C = self.constant('u', U_MAP, 4).C
        K = orbit.checkpoints[-1]

        distances = []
        for k in DECAY_INDEXES:
            if k >= K:
                break
            distances.append(
                abs(asym_eval(series, k, C) - orbit.value_at(k)))

        if len(distances) < 2:
            raise InconsistencyError(
                'the orbit is too short to observe the decay')

        ratios = [a / b for a, b in zip(distances, distances[1:])]
        logger.debug('series-vs-orbit decay ratios: %s' % ', '.join(
            format_decimal(r, 4) for r in ratios))
        return min(ratios), None

    def _entry_popa_C(self):
        return self.constant('popa', POPA_MAP, 7).C, None

    def _entry_popa_C_degree9(self):
        return self.constant('popa', POPA_MAP, 9).C, None

    def _scan(self, degree, cutoff_halves):
        orbit = self.orbit('popa')
        far = OrbitResult(
            orbit.description,
            [(k, v) for k, v in orbit.samples if k >= 10000],
            orbit.precision_bits, digest=orbit.digest,
            coordinates=orbit.coordinates)

        series = self.expansion(POPA_MAP, degree, cutoff_halves).series
        return stability_scan(series, far)

    def _entry_popa_stable(self):
        return self._scan(7, 8).verdict, None

    def _entry_popa_drift(self):
        return self._scan(4, 4).verdict, None

    def _entry_septic_transient(self):
        changes = compare_fits(
            self.expansion(POPA_MAP, 7), self.expansion(POPA_MAP, 8))

        tolerance = BigReal(1, self.precision_bits) / (
            2 ** (self.precision_bits - 64))
        for (halves, logpow), change in changes.items():
            if halves <= 6 and (halves, logpow) != (6, 0) and \
                    change > tolerance:
                raise InconsistencyError(
                    'the x^8 coefficient moved q(%d,%d) by %s' % (
                        halves, logpow, format_decimal(change, 6)))

        return changes[(6, 0)], BigReal.from_fraction(
            5, 144, self.precision_bits)

    def _reciprocal(self):
        return self._cached(
            'reciprocal', asym_reciprocal,
            self.expansion(POPA_MAP, 7).series)

    def _entry_reciprocal_sqrt2(self):
        return self._reciprocal().coefficient(-1, 0)[0], \
            BigReal(2, self.precision_bits).sqrt()

    def _entry_reciprocal_log(self):
        root2 = BigReal(2, self.precision_bits).sqrt()
        return self._reciprocal().coefficient(1, 1)[0], 7 / (root2 * 24)

    def _entry_reciprocal_constant(self):
        coeff = self._reciprocal().coefficient(1, 0)
        slope = coeff[1]
        if digits_agreement(slope, BigReal(-2, self.precision_bits)) < \
                SERIES_DIGITS:
            raise InconsistencyError(
                'the C slope of the k^(-1/2) term is %s (not -2)' %
                format_decimal(slope, 12))

        root2 = BigReal(2, self.precision_bits).sqrt()
        return coeff[0], 1 / (root2 * 4)

    def _entry_reciprocal_eval(self):
        k = 1000000
        orbit = self.orbit('popa')
        C = self.constant('popa', POPA_MAP, 7).C
        return asym_eval(self._reciprocal(), k, C), 1 / orbit.value_at(k)

    #
    # Running
    #

    def _judge(self, entry, computed, reference):
        """
        Returns the tuple (published_value, computed, digits, passed)
        """
        target = entry.digits[self.profile]

        if entry.kind == EntryKind.VERDICT:
            expected = entry.value if reference is None else reference
            return expected, computed, 0, computed == expected

        if reference is None:
            reference = parse_decimal(entry.value, self.precision_bits)

        published_value = entry.value if entry.value is not None \
            else format_decimal(reference, SERIES_DIGITS)

        text = format_decimal(computed, SERIES_DIGITS)

        if entry.kind == EntryKind.UPPER_BOUND:
            return published_value, text, 0, computed < reference

        if entry.kind == EntryKind.LOWER_BOUND:
            return published_value, text, 0, computed >= reference

        digits = digits_agreement(computed, reference)
        return published_value, text, digits, digits >= target

    def run_entry(self, entry):
        """
        Computes a single entry; failures are recorded, never thrown.
        """
        fn = getattr(self, '_entry_%s' % entry.label, None)
        started = time.monotonic()
        if fn is None:
            result = ReproEntry(
                entry.label, entry.value or '', None, 0,
                entry.digits[self.profile], False,
                error='unknown entry %s' % entry.label)

        else:
            try:
                computed, reference = fn()
                published_value, text, digits, passed = \
                    self._judge(entry, computed, reference)

                result = ReproEntry(
                    entry.label, published_value, text, digits,
                    entry.digits[self.profile], passed)

            except IterLabError as e:
                logger.warning('Entry %s failed: %s' % (entry.label, e))
                result = ReproEntry(
                    entry.label, entry.value or '', None, 0,
                    entry.digits[self.profile], False, error=str(e))

        result.runtime_seconds = time.monotonic() - started
        logger.info('%s: %s (%d digits) in %.2fs' % (
            entry.label, 'pass' if result.passed else 'FAIL',
            result.digits_matched, result.runtime_seconds))

        if self.on_entry is not None:
            with self._output_lock:
                self.on_entry(result)

        return result

    def run(self, labels=None):
        """
        Runs the suite (or the entries named by labels) and returns a
        ReproReport.
        """
        entries = self.entries
        if labels:
            known = set(e.label for e in entries)
            unknown = [l for l in labels if l not in known]
            if unknown:
                raise ConfigError('unknown entries: %s' % ', '.join(unknown))
            entries = [e for e in entries if e.label in labels]

        logger.info('Running %d entries (%s profile, %d bits, %d '
                    'greenlets)' % (len(entries), self.profile,
                                    self.precision_bits, self.threads))

        pool = Pool(self.threads)
        results = pool.map(self.run_entry, entries)

        return ReproReport(list(results), self.profile)


def reproduce(profile='fast', precision_bits=None, threads=4, labels=None,
              reference_file=None, on_entry=None):
    """
    Runs the reproduction suite and returns its ReproReport
    """
    suite = ReproSuite(
        profile=profile, precision_bits=precision_bits, threads=threads,
        reference_file=reference_file, on_entry=on_entry)

    return suite.run(labels=labels)
