# -*- coding: utf-8 -*-
#
# Test the reproduction suite
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

import sys
if 'threading' in sys.modules:
    #  gevent patching since pytests import
    #  the sys library before we do.
    del sys.modules['threading']

import gevent.monkey
gevent.monkey.patch_all()

from os.path import dirname
from os.path import abspath

try:
    from tests.TestBase import TestBase

except ImportError:
    sys.path.insert(0, dirname(dirname(abspath(__file__))))
    from tests.TestBase import TestBase

import json
from os.path import join

import pytest

from iterlab.Reproduce import EntryKind
from iterlab.Reproduce import ReferenceEntry
from iterlab.Reproduce import ReproSuite
from iterlab.Reproduce import load_reference
from iterlab.Reproduce import reproduce
from iterlab.Settings import PROFILES
from iterlab.Errors import ConfigError

# Entries that need no long orbit
QUICK_LABELS = (
    'theta',
    'one_minus_theta_squared',
    'dottie_above',
    'dottie_below',
    'dottie_ratio',
    'logistic_3_2',
    'logistic_5_2_above',
    'logistic_5_2_below',
    'logistic_5_2_ratio',
    'lambda2_closed_form',
    'lambda2_half',
    'lambda2_exp',
    'reversion',
    'u_series_4_0',
    'u_series_4_0_slope',
    'u_series_8_0',
    'v_series_4_0',
    'preface_4_0',
    'septic_transient',
    'reciprocal_sqrt2',
    'reciprocal_log',
    'reciprocal_constant',
)

SMALL_REFERENCE = """
profiles:
  fast:
    K: 50
  full:
    K: 100

entries:
  - label: theta
    value: '0.7390851332151606416553120'
    digits: {fast: 25, full: 25}

  - label: popa_C
    value: '-0.331815429620156'
    digits: {fast: 9, full: 11}

  - label: bogus
    value: '1'
    digits: {fast: 1, full: 1}

  - label: lambda2_half
    # 1/2 is a fixed point of logistic(2); an upper bound of 1 holds
    value: '1'
    kind: upper_bound
"""


class Reproduce_Test(TestBase):
    """
    Reproduce the published constants
    """

    def write(self, name, content):
        path = join(self.tmp_dir, name)
        with open(path, 'w') as f:
            f.write(content)
        return path

    def test_reference_file(self):
        """
        The bundled reference file is sane
        """
        profiles, entries = load_reference()
        for profile in PROFILES:
            assert profiles[profile]['K'] >= 1000000

        labels = [e.label for e in entries]
        assert len(labels) == len(set(labels))
        for label in QUICK_LABELS:
            assert label in labels

        # every entry has something to compute it
        suite = ReproSuite(threads=1)
        for entry in entries:
            assert hasattr(suite, '_entry_%s' % entry.label)

            if entry.kind == EntryKind.MATCH and entry.value is None:
                assert entry.note

        # the measured bound behind the reduced popa_C target
        popa = [e for e in entries if e.label == 'popa_C'][0]
        assert '1.1e-12' in popa.note
        assert popa.digits['full'] == 11

    def test_bad_reference_files(self):
        bad = (
            # not a mapping
            '- one\n- two\n',
            # no profiles
            'entries:\n  - label: theta\n',
            # unparseable
            'entries: [\n',
            # no label
            'profiles: {fast: {K: 1}, full: {K: 2}}\n'
            'entries:\n  - value: 1\n',
            # twice
            'profiles: {fast: {K: 1}, full: {K: 2}}\n'
            'entries:\n  - label: theta\n  - label: theta\n',
            # unknown key
            'profiles: {fast: {K: 1}, full: {K: 2}}\n'
            'entries:\n  - label: theta\n    colour: blue\n',
            # unknown kind
            'profiles: {fast: {K: 1}, full: {K: 2}}\n'
            'entries:\n  - label: theta\n    kind: maybe\n',
        )

        for no, content in enumerate(bad):
            path = self.write('reference%d.yaml' % no, content)
            with pytest.raises(ConfigError):
                load_reference(path)

        with pytest.raises(ConfigError):
            load_reference(join(self.tmp_dir, 'missing.yaml'))

        with pytest.raises(ConfigError):
            ReferenceEntry('theta', digits={'fast': 'many'})

        with pytest.raises(ConfigError):
            ReproSuite(profile='slow')

    def test_quick_entries(self):
        """
        The series, cosine and logistic constants reproduce
        """
        completed = []
        suite = ReproSuite(threads=4, on_entry=completed.append)
        report = suite.run(labels=list(QUICK_LABELS))

        failed = ['%s: %s %s' % (e.label, e.computed, e.error)
                  for e in report.entries if not e.passed]
        assert failed == []
        assert report.passed is True
        assert report.overall == 'pass'

        # reported in the order of the reference file
        _, entries = load_reference()
        order = [e.label for e in entries if e.label in QUICK_LABELS]
        assert [e.label for e in report.entries] == order
        assert sorted(e.label for e in completed) == sorted(QUICK_LABELS)

        for entry in report.entries:
            assert entry.digits_matched >= entry.target

        # constants either side of a power of ten are counted in full
        results = dict((e.label, e) for e in report.entries)
        assert results['logistic_5_2_ratio'].digits_matched >= 20
        assert results['logistic_3_2'].digits_matched == 24
        assert results['reciprocal_constant'].digits_matched >= 30

        lines = report.table()
        assert lines[-1] == 'overall: pass'
        assert len(lines) == len(QUICK_LABELS) + 2

        # without timings the rendering is reproducible
        content = json.loads(report.to_json())
        assert content['overall'] == 'pass'
        assert 'runtime_seconds' not in content['entries'][0]
        assert report.to_json() == report.to_json()
        assert 'runtime_seconds' in report.to_dict(
            timings=True)['entries'][0]

        with pytest.raises(ConfigError):
            suite.run(labels=['theta', 'nothing'])

    def test_failures_are_recorded(self):
        """
        An entry that can not be computed fails without stopping the run
        """
        path = self.write('reference.yaml', SMALL_REFERENCE)
        report = reproduce(reference_file=path, threads=2)

        assert report.passed is False
        assert report.overall == 'fail'

        results = dict((e.label, e) for e in report.entries)
        assert results['theta'].passed is True
        assert results['lambda2_half'].passed is True

        # an orbit of 50 steps is too short to extract from
        assert results['popa_C'].passed is False
        assert results['popa_C'].computed is None
        assert 'K >=' in results['popa_C'].error

        assert results['bogus'].passed is False
        assert results['bogus'].error == 'unknown entry bogus'

        lines = report.table()
        assert lines[-1] == 'overall: fail'
        assert '    unknown entry bogus' in lines
