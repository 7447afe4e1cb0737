"""
tests/test_config_and_rate_counter.py - Tests for settings, logging setup and
the throughput counter

Run:
    python -m pytest tests/test_config_and_rate_counter.py -v
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

import json
import logging
import tempfile
import unittest

from utils.config import DEFAULT_CONFIG_PATH, Config
from utils.logger import configure_logging, get_logger
from utils.rate_counter import RateCounter


class TestConfig(unittest.TestCase):

    def test_defaults(self) -> None:
        c = Config()
        self.assertEqual(c.get('oracle.max_enumeration_order'), 6)
        self.assertEqual(c.get('oracle.max_isomorphism_order'), 12)
        self.assertEqual(c.get('factorization.trial_division_bound'), 1_000_000)
        self.assertIsNone(c.get('no.such.key'))
        self.assertEqual(c.get('no.such.key', 3), 3)

    def test_shipped_settings_match_defaults(self) -> None:
        shipped = json.loads(DEFAULT_CONFIG_PATH.read_text(encoding='utf-8'))
        self.assertEqual(shipped, Config._DEFAULTS)

    def test_file_overrides_single_key(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'settings.json'
            path.write_text(json.dumps({'oracle': {'max_isomorphism_order': 10}}), encoding='utf-8')
            c = Config(path)
        self.assertEqual(c.get('oracle.max_isomorphism_order'), 10)
        self.assertEqual(c.get('oracle.max_enumeration_order'), 6)

    def test_invalid_json_falls_back(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'settings.json'
            path.write_text('{oops', encoding='utf-8')
            with self.assertLogs('walkdgs.config', 'WARNING'):
                c = Config(path)
        self.assertEqual(c.get('runner.jobs'), 1)

    def test_missing_file_falls_back(self) -> None:
        with self.assertLogs('walkdgs.config', 'WARNING'):
            c = Config('/nonexistent/settings.json')
        self.assertTrue(c.get('search.enumerate_mates'))

    def test_set(self) -> None:
        c = Config()
        c.set('runner.jobs', 4)
        self.assertEqual(c.get('runner.jobs'), 4)


class TestLogging(unittest.TestCase):

    def tearDown(self) -> None:
        configure_logging('WARNING')

    def test_child_names(self) -> None:
        self.assertEqual(get_logger('engine.walk').name, 'walkdgs.engine.walk')
        self.assertEqual(get_logger('walkdgs').name, 'walkdgs')

    def test_file_handler(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'logs' / 'run.log'
            root = configure_logging('info', str(path))
            get_logger('test').info('hello')
            for h in root.handlers:
                h.flush()
            self.assertEqual(root.level, logging.INFO)
            self.assertIn('| hello', path.read_text(encoding='utf-8'))
            configure_logging('WARNING')


class TestRateCounter(unittest.TestCase):

    @staticmethod
    def _clock(times):
        it = iter(times)
        return lambda: next(it)

    def test_initial(self) -> None:
        rc = RateCounter()
        self.assertEqual(rc.rate, 0.0)
        self.assertEqual(rc.count, 0)

    def test_single_update_has_no_rate(self) -> None:
        rc = RateCounter(clock=self._clock([1.0]))
        rc.update()
        self.assertEqual(rc.rate, 0.0)
        self.assertEqual(rc.count, 1)

    def test_rate(self) -> None:
        rc = RateCounter(clock=self._clock([0.0, 0.5, 1.0]))
        for _ in range(3):
            rc.update()
        self.assertAlmostEqual(rc.rate, 2.0)

    def test_window(self) -> None:
        rc = RateCounter(window=2, clock=self._clock([0.0, 1.0, 1.5]))
        for _ in range(3):
            rc.update()
        self.assertAlmostEqual(rc.rate, 2.0)
        self.assertEqual(rc.count, 3)

    def test_zero_elapsed(self) -> None:
        rc = RateCounter(clock=self._clock([2.0, 2.0]))
        rc.update()
        rc.update()
        self.assertEqual(rc.rate, 0.0)


if __name__ == '__main__':
    unittest.main(verbosity=2)
