"""Configuration shared by the command-line tool and the web app.

Settings are held in a flask.Config and loaded in three steps, each of which
may override values from the previous one:
  - The defaults in DEFAULT_SETTINGS.
  - Environment variables that start with the prefix LIESYM_, with the prefix
      dropped.  If LIESYM_DEFAULT_DEGREE is defined, for instance, the setting
      DEFAULT_DEGREE takes its value.  flask converts values to more specific
      types than strings where it can.
  - If the environment variable LIE_SYMMETRY_SETTINGS is defined, its value
      should be the path to a settings file such as app_settings.py.
"""
import logging
import os
from pathlib import Path

from flask import Config

DEFAULT_SETTINGS = {
    'DEFAULT_DEGREE': 4,
    'EXPONENT_BOUND': 64,
    'THREADS': 1,
    'PRUNE_CONSEQUENCES': True,
    'LOG_LEVEL': 'WARNING',
    'MAX_SWEEP_DEGREE': 8
}
ENV_PREFIX = 'LIESYM'
SETTINGS_ENVVAR = 'LIE_SYMMETRY_SETTINGS'

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def configure(config):
    """Load the default settings and the overrides into a flask.Config."""
    config.from_mapping(DEFAULT_SETTINGS)
    config.from_prefixed_env(prefix=ENV_PREFIX)
    if os.environ.get(SETTINGS_ENVVAR):
        config.from_envvar(SETTINGS_ENVVAR)
    return config


def load_settings():
    """Settings for a command-line run."""
    return configure(Config(Path(__file__).parent))


def configure_logging(level):
    """Send log records of the package to stderr at the given level."""
    logging.basicConfig(format=LOG_FORMAT, level=logging.WARNING)
    logging.getLogger('lie_symmetry').setLevel(level)
