"""Views that run analyses and return their JSON documents."""
from flask import Blueprint, current_app, make_response

from .analysis import SCHEMA_VERSION, analyze
from .errors import ParseError
from .reports import render_json
from .request_parameters import parse_analysis_params

analysis_views = Blueprint('analyses', __name__, url_prefix='/analyses')

# Exit status of an analysis -> HTTP status of the response.
HTTP_STATUSES = {
    0: 200,
    1: 200,
    2: 400,
    3: 422,
    4: 500
}


def run_analysis(command):
    """Parse the request, run the analysis and return its JSON document.

    A verification failure (exit status 1) is a successful request whose
    document reports the failure, so it is returned with HTTP status 200.
    """
    try:
        outcome = analyze(parse_analysis_params(command))
        status, document = outcome.status, outcome.document
    except ParseError as error:
        status = error.exit_status
        document = {'schema': SCHEMA_VERSION, 'command': command,
                    'system': None, 'result': None,
                    'diagnostics': [str(error)]}
    document['exit_status'] = status
    if status == 4:
        current_app.logger.error('%s: %s', command, document['diagnostics'])
    return _make_analysis_response(document, HTTP_STATUSES[status])


def _make_analysis_response(document, http_status):
    response = make_response(render_json(document), http_status)
    response.headers['Content-Type'] = 'application/json'
    return response


@analysis_views.route('/detgen', methods=['POST'])
def run_detgen():
    return run_analysis('detgen')


@analysis_views.route('/solve', methods=['POST'])
def run_solve():
    return run_analysis('solve')


@analysis_views.route('/algebra', methods=['POST'])
def run_algebra():
    return run_analysis('algebra')


@analysis_views.route('/closure', methods=['POST'])
def run_closure():
    return run_analysis('closure')


@analysis_views.route('/verify', methods=['POST'])
def run_verify():
    """Check the vector field sent in the field vector_field."""
    return run_analysis('verify')
