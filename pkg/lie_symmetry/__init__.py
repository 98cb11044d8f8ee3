"""App factory that generates instances of the app.

The package computes Lie point symmetries of the system
u_y = F1*u_x + F2*u_x^2 + F3*u_x^3, u_xxx = G exactly.  The same analyses
are available from the command line (see cli) and over HTTP.
"""
from flask import Flask, jsonify

from .analysis import COMMANDS
from .analysis_views import analysis_views
from .cli import cli
from .settings import configure


def load_configuration(app):
    """Load the app's configuration.

    A default configuration (settings.DEFAULT_SETTINGS) is first loaded.  It
    is modified in two consecutive steps:
      - Environment variables that start with the prefix LIESYM_ are added to
          the configuration, with the prefix dropped.
      - If the environment variable LIE_SYMMETRY_SETTINGS is defined, its value
          should be the path to a configuration file such as app_settings.py.

    Note that each step can override previously defined configuration values.
    """
    configure(app.config)


def register_blueprints(app, blueprints):
    """Register a sequence of blueprints on the app.

    Args:
        app:  Application on which blueprints will be registered
        blueprints:  Iterable of blueprints
    """
    for blueprint in blueprints:
        app.register_blueprint(blueprint)


def create_app():
    """Generate an instance of the app."""
    app = Flask(__name__)
    load_configuration(app)
    app.logger.setLevel(app.config['LOG_LEVEL'])

    register_blueprints(app, [analysis_views])
    app.cli.add_command(cli, name='liesym')

    @app.route('/')
    def index():
        return jsonify(analyses=[f'/analyses/{command}'
                                 for command in COMMANDS])

    return app
