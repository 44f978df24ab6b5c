"""
Logging for mfcas. The configuration is read once from log_config.yaml; every
logger handed out lives under the "mfcas" namespace, so a single level change
on that logger (``set_verbosity``) covers the whole package.
"""
import logging
import logging.config

import yaml

from mfcas import conf

PACKAGE_LOGGER = "mfcas"


def _read_config(path=None) -> dict:
    with open(path or conf.GENERAL["LOG_CONFIG_FILE"], "r") as f:
        return yaml.safe_load(f)


logging.config.dictConfig(_read_config())


def get_logger(name: str = None) -> logging.Logger:
    """
    Returns a logger under the mfcas namespace.

    Args:
        name: a module name (usually ``__name__``). Names outside the package
            are nested below "mfcas"; None gives the package logger.
    """
    if not name or name == PACKAGE_LOGGER:
        return logging.getLogger(PACKAGE_LOGGER)
    if not name.startswith(PACKAGE_LOGGER + "."):
        name = f"{PACKAGE_LOGGER}.{name}"
    return logging.getLogger(name)


def set_verbosity(verbose: bool) -> None:
    """INFO messages of the package reach the console when verbose, WARNING otherwise."""
    get_logger().setLevel(logging.INFO if verbose else logging.WARNING)
