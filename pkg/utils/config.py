"""
Module: config.py
Description: Dot-key configuration loader. Reads a JSON settings file and
             merges it over built-in defaults.

utils/config.py - Settings Manager

Centralises the oracle bounds, factorization parameters, runner and
certificate options. Library functions take these as keyword arguments;
main.py reads them here and passes them down.
"""

from __future__ import annotations

import json
from pathlib import Path

from utils.logger import get_logger

log = get_logger('config')

DEFAULT_CONFIG_PATH = Path(__file__).parent.parent / 'config' / 'settings.json'


class Config:
    """Centralised configuration manager with sensible defaults."""

    _DEFAULTS = {
        'oracle': {
            'max_isomorphism_order': 12,
            'max_enumeration_order': 6,
        },
        'factorization': {
            'trial_division_bound': 1_000_000,
            'rho_seed': 1,
        },
        'search': {
            'enumerate_mates': True,
        },
        'runner': {
            'jobs': 1,
        },
        'certificates': {
            'output_dir': 'certificates',
            'timestamp': True,
        },
        'logging': {
            'level': 'WARNING',
            'file': None,
        },
    }

    def __init__(self, config_path: str | Path | None = None):
        self._flat: dict = {}
        self._flatten(self._DEFAULTS, '', self._flat)

        if config_path is not None:
            self._load_file(Path(config_path))

    # ------------------------------------------------------------------
    # Public API
    # ------------------------------------------------------------------

    def get(self, key: str, default=None):
        """Return value for a dot-separated key, e.g. 'oracle.max_enumeration_order'."""
        return self._flat.get(key, default)

    def set(self, key: str, value) -> None:
        """Override a setting at runtime."""
        self._flat[key] = value

    # ------------------------------------------------------------------
    # Internal helpers
    # ------------------------------------------------------------------

    @staticmethod
    def _flatten(nested: dict, prefix: str, result: dict) -> None:
        """Recursively flatten a nested dict to dot-separated keys."""
        for k, v in nested.items():
            full_key = f'{prefix}.{k}' if prefix else k
            if isinstance(v, dict):
                Config._flatten(v, full_key, result)
            else:
                result[full_key] = v

    def _load_file(self, path: Path) -> None:
        """Merge settings from a JSON file (overrides defaults)."""
        try:
            with open(path, 'r', encoding='utf-8') as fh:
                data = json.load(fh)
            self._flatten(data, '', self._flat)
            log.debug('loaded settings from %s', path)
        except FileNotFoundError:
            log.warning('config file not found: %s, using defaults', path)
        except json.JSONDecodeError as exc:
            log.warning('invalid JSON in %s: %s, using defaults', path, exc)
        except OSError as exc:
            log.warning('could not load %s: %s', path, exc)
