"""
Module: logger.py
Description: Logging setup for walkdgs. Library modules ask for a named child
             of the 'walkdgs' logger; only the CLI decides where records go.

utils/logger.py - Logging

configure_logging() installs a stderr handler and, when a log file is
configured, a UTF-8 file handler with the '%(asctime)s | %(message)s' layout.
Calling it again replaces the handlers it installed earlier.
"""

from __future__ import annotations

import logging
from pathlib import Path

ROOT_LOGGER_NAME = 'walkdgs'
FILE_FORMAT = '%(asctime)s | %(message)s'
STREAM_FORMAT = '[%(levelname)s] %(name)s: %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

_root: logging.Logger | None = None


def _root_logger() -> logging.Logger:
    """Return the package root logger, initialising on first call."""
    global _root
    if _root is not None:
        return _root
    _root = logging.getLogger(ROOT_LOGGER_NAME)
    _root.propagate = False
    if not _root.handlers:
        _root.addHandler(logging.NullHandler())
    return _root


def get_logger(name: str) -> logging.Logger:
    """Child logger of 'walkdgs' for a module name such as 'engine.walk'."""
    root = _root_logger()
    return root.getChild(name) if name and name != ROOT_LOGGER_NAME else root


def configure_logging(level: str | int = 'WARNING', log_file: str | None = None) -> logging.Logger:
    root = _root_logger()
    root.setLevel(level if isinstance(level, int) else level.upper())
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()

    sh = logging.StreamHandler()
    sh.setFormatter(logging.Formatter(STREAM_FORMAT))
    root.addHandler(sh)

    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        fh = logging.FileHandler(str(path), encoding='utf-8')
        fh.setFormatter(logging.Formatter(FILE_FORMAT, datefmt=DATE_FORMAT))
        root.addHandler(fh)

    return root
