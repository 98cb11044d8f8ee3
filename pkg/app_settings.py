"""Override the default settings of the app and of the command-line tool.

This module defines a set of key-value pairs that can override the default
settings in lie_symmetry.settings.DEFAULT_SETTINGS.  For example, if the
environment variable

LIE_SYMMETRY_SETTINGS

is defined to contain the path to the current file, the function call

config.from_envvar('LIE_SYMMETRY_SETTINGS')

will override the default settings with those defined in the current module.
"""
DEFAULT_DEGREE = 3
THREADS = 2
LOG_LEVEL = 'INFO'
