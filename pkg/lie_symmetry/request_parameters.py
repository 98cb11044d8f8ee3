"""Functions for handling the parameters of HTTP analysis requests."""
from flask import current_app, request

from .analysis import AnalysisRequest
from .errors import ParseError

# Request field -> AnalysisRequest attribute.
ANALYSIS_PARAM_NAMES = {
    'system': 'system_text',
    'vector_field': 'vector_field_text',
    'basis': 'basis_text',
    'degree': 'degree',
    'point': 'point'
}


def _request_fields():
    """Fields of a JSON body, or of a form when the body is not JSON."""
    if request.is_json:
        body = request.get_json(silent=True)
        if not isinstance(body, dict):
            raise ParseError('the request body must be a JSON object')
        return body
    fields = {key: request.form.getlist(key) for key in request.form}
    for key, value in fields.items():
        if len(value) == 1 and key != 'point':
            fields[key] = value[0]
    return fields


def _parse_point(value):
    if isinstance(value, str):
        value = value.split()
    return tuple(str(coordinate) for coordinate in value)


def parse_analysis_params(command):
    """Convert the fields sent with an analysis request into an
    AnalysisRequest.

    Fields may be sent as a JSON object or as form data.  Example body:
        {
            "system": "F1 = 0\\nF2 = 1\\nF3 = 0\\nG = 0",
            "degree": 3
        }
    The point of a closure check is a list of three rationals, or a single
    string with the coordinates separated by spaces.

    Args:
        command:  Name of the analysis, one of analysis.COMMANDS

    Returns:
        AnalysisRequest using the app's settings for unspecified values

    Raises:
        ParseError:  If a field is missing or malformed
    """
    fields = _request_fields()
    if not fields.get('system'):
        raise ParseError('the field system is required')
    params = {attribute: fields[name]
              for name, attribute in ANALYSIS_PARAM_NAMES.items()
              if fields.get(name) not in (None, '', [])}
    try:
        params['degree'] = int(params.get('degree',
                                          current_app.config['DEFAULT_DEGREE']))
    except (TypeError, ValueError) as error:
        raise ParseError(f'invalid degree: {error}') from error
    if 'point' in params:
        params['point'] = _parse_point(params['point'])
    return AnalysisRequest(
        command=command,
        threads=current_app.config['THREADS'],
        prune_consequences=current_app.config['PRUNE_CONSEQUENCES'],
        exponent_bound=current_app.config['EXPONENT_BOUND'],
        **params
    )
