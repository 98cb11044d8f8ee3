"""Run one analysis on system and vector-field texts.

The command-line tool and the web app both describe an analysis with an
AnalysisRequest and receive a versioned document (a JSON-compatible
dictionary) together with the exit status of the run.
"""
from dataclasses import dataclass
from fractions import Fraction
import logging

from .closure import complete_table, reconstruct_check
from .detgen import cross_check_reference, determining_equations
from .errors import (IncompleteTableError, LieSymmetryError, NotClosedError,
                     ParseError)
from .expr import DEFAULT_EXPONENT_BOUND
from .liealg import is_symmetry, jacobi_check, structure_constants
from .parser import parse_system, parse_vector_field, parse_vector_fields
from .prolong import DISPLAYED_PROLONGATIONS, VectorField, prolong_coefficient
from .solver import symmetry_basis, sweep

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

COMMANDS = ('detgen', 'solve', 'algebra', 'closure', 'verify')

DEFAULT_POINT = ('1', '1', '1')


@dataclass
class AnalysisRequest:
    """Inputs of one analysis.

    Attributes:
        command:  One of COMMANDS
        system_text:  Contents of a .sys file
        vector_field_text:  Contents of a .vf file (verify, closure --check)
        basis_text:  Contents of a multi-block .vf file (algebra --basis)
        degree:  Ansatz degree, at least 1
        sweep:  Pair (min degree, max degree) or None
        point:  Triple of rational strings, or None
        cross_check:  Compare with the published equations (detgen)
        show_prolongation:  Include prolongation coefficients (detgen)
        threads:  Worker threads
        prune_consequences:  Prune equations that are derivatives of others
        exponent_bound:  Largest exponent accepted by the parser
    """
    command: str
    system_text: str
    vector_field_text: str = None
    basis_text: str = None
    degree: int = 4
    sweep: tuple = None
    point: tuple = None
    cross_check: bool = False
    show_prolongation: bool = False
    threads: int = 1
    prune_consequences: bool = True
    exponent_bound: int = DEFAULT_EXPONENT_BOUND

    def validate(self):
        if self.command not in COMMANDS:
            raise ParseError(f'unknown command {self.command!r}')
        if self.degree < 1:
            raise ParseError(f'degree must be at least 1, not {self.degree}')
        if self.sweep is not None and not 1 <= self.sweep[0] <= self.sweep[1]:
            raise ParseError(f'invalid sweep range {self.sweep[0]} '
                             f'{self.sweep[1]}')


@dataclass
class AnalysisOutcome:
    status: int
    document: dict


def parse_point(values):
    """Parse three rational strings such as ('2', '1/3', '-1')."""
    if values is None:
        values = DEFAULT_POINT
    if len(values) != 3:
        raise ParseError(f'a point needs three coordinates, not {len(values)}')
    try:
        return tuple(Fraction(str(value)) for value in values)
    except (ValueError, ZeroDivisionError) as error:
        raise ParseError(f'invalid point coordinate: {error}') from error


def _field_document(field):
    return {'xi': str(field.xi), 'tau': str(field.tau), 'phi': str(field.phi)}


def _run_detgen(request, system):
    determining_system = determining_equations(
        system, request.prune_consequences, request.threads)
    result = {
        'equations': [{'expression': str(equation.expression),
                       'origins': [str(origin) for origin in equation.origins]}
                      for equation in determining_system.equations],
        'consequences': [str(consequence) for consequence
                         in determining_system.consequences]
    }
    if request.show_prolongation:
        symbolic = VectorField.symbolic_field()
        result['prolongation'] = {
            label: str(prolong_coefficient(symbolic, index))
            for label, index in DISPLAYED_PROLONGATIONS.items()}
    if request.cross_check:
        report = cross_check_reference(system, request.threads)
        result['cross_check'] = {
            'agrees': report.agrees,
            'comparisons': [{
                'name': comparison.name,
                'agrees': comparison.agrees,
                'scale': str(comparison.scale),
                'differences': comparison.differences.to_dict('records')
            } for comparison in report.comparisons],
            'text': str(report)
        }
    return 0, result


def _run_solve(request, system):
    if request.sweep is not None:
        outcome = sweep(system, *request.sweep, threads=request.threads)
        top = max(outcome.bases)
        return 0, {
            'dimensions': {str(degree): dimension for degree, dimension
                           in outcome.dimensions.items()},
            'stacked_rank': outcome.stacked_rank,
            'stable': outcome.is_stable,
            'degree': top,
            'dimension': len(outcome.bases[top]),
            'basis': [_field_document(field) for field in outcome.bases[top]]
        }
    basis = symmetry_basis(system, request.degree, request.threads)
    return 0, {'degree': request.degree, 'dimension': len(basis),
               'basis': [_field_document(field) for field in basis]}


def _run_algebra(request, system):
    if request.basis_text is not None:
        basis = parse_vector_fields(request.basis_text,
                                    request.exponent_bound)
    else:
        basis = symmetry_basis(system, request.degree, request.threads)
    constants = structure_constants(basis, request.threads)
    return 0, {
        'dimension': constants.dimension,
        'basis': [_field_document(field) for field in basis],
        'structure_constants': [[i + 1, j + 1, k + 1, str(value)]
                                for i, j, k, value in constants.nonzero()],
        'closed': True,
        'antisymmetric': constants.is_antisymmetric(),
        'jacobi': jacobi_check(constants)
    }


def _run_closure(request, system):
    table = complete_table(system)
    result = {
        'reduced': len(table.reduced_symbols),
        'entries': {str(symbol): str(table.entries[symbol])
                    for symbol in sorted(table.reduced_symbols,
                                         key=lambda symbol: symbol.sort_key)},
        'pivots': [str(pivot) for pivot in table.pivots],
        'constraints': [str(constraint) for constraint in table.constraints]
    }
    status = 0
    if request.vector_field_text is not None:
        field = parse_vector_field(request.vector_field_text,
                                   request.exponent_bound)
        point = parse_point(request.point)
        report = reconstruct_check(system, field, point, table)
        result['reconstruction'] = {
            'point': [str(value) for value in point],
            'holds': report.holds,
            'comparisons': [
                {**record, 'equal': bool(record['equal'])}
                for record in report.comparisons.to_dict('records')]
        }
        if not report.holds:
            status = 1
    return status, result


def _run_verify(request, system):
    if request.vector_field_text is None:
        raise ParseError('verify needs a vector field')
    field = parse_vector_field(request.vector_field_text,
                               request.exponent_bound)
    determining_system = determining_equations(
        system, request.prune_consequences, request.threads)
    verdict = is_symmetry(system, field, determining_system)
    return (0 if verdict.holds else 1), {
        'field': _field_document(field),
        'symmetry': verdict.holds,
        'violations': [{'equation': str(equation.expression),
                        'residual': str(residual)}
                       for equation, residual in verdict.violations]
    }


RUNNERS = {
    'detgen': _run_detgen,
    'solve': _run_solve,
    'algebra': _run_algebra,
    'closure': _run_closure,
    'verify': _run_verify
}


def _error_result(error):
    if isinstance(error, IncompleteTableError):
        return {'unreduced': [str(symbol) for symbol in error.unreduced]}
    if isinstance(error, NotClosedError):
        return {'pair': [error.i + 1, error.j + 1],
                'residual': _field_document(error.residual)}
    return None


def analyze(request):
    """Run the pipeline for one command.

    Returns:
        AnalysisOutcome whose document has the fields schema, command,
        system, result and diagnostics.  Errors of the package are turned
        into diagnostics and their exit statuses.
    """
    document = {'schema': SCHEMA_VERSION, 'command': request.command,
                'system': None, 'result': None, 'diagnostics': []}
    try:
        request.validate()
        system = parse_system(request.system_text, request.exponent_bound)
        document['system'] = system.to_text()
        status, document['result'] = RUNNERS[request.command](request, system)
    except LieSymmetryError as error:
        logger.info('%s failed: %s', request.command, error)
        status = error.exit_status
        document['result'] = _error_result(error)
        document['diagnostics'].append(str(error))
    return AnalysisOutcome(status, document)
