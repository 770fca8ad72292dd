"""Shared helpers: logging, error raising and dotted-path resolution."""

import importlib
import logging

from corpus_prep.exceptions import ConfigurationError, ValidationError

LOGGER_ROOT = "corpus_prep"
_configured = False


def logger(module=None):
    """Return the namespaced logger for a module, configuring the root handler once."""
    global _configured
    root = logging.getLogger(LOGGER_ROOT)
    if not _configured:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
        root.addHandler(handler)
        root.setLevel(logging.INFO)
        root.propagate = False
        _configured = True

    if not module:
        return root
    return root.getChild(module)


def set_log_level(level):
    """Set the level of every corpus_prep logger."""
    logger().setLevel(level)


def log_error(message, module=None):
    """Log a recoverable per-item failure."""
    logger(module or "errors").error(message)


def throw(message, exc=ValidationError):
    """Raise `exc` with `message`."""
    raise exc(message)


def get_attr(path):
    """Resolve a dotted path such as `corpus_prep.filters.text_filters.remove_images`."""
    module_name, _, attr = path.rpartition(".")
    if not module_name:
        throw(f"Invalid dotted path: {path}", ConfigurationError)
    try:
        module = importlib.import_module(module_name)
    except ImportError as e:
        throw(f"Cannot import {module_name}: {e}", ConfigurationError)
    try:
        return getattr(module, attr)
    except AttributeError:
        throw(f"{module_name} has no attribute {attr}", ConfigurationError)
