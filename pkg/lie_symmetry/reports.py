"""Render analysis documents as plain-text or JSON reports."""
import json

import pandas as pd

from .prolong import COMPONENT_NAMES

SECTION_HEADINGS = {
    'prolongation': '# prolongation coefficients',
    'cross_check': '# comparison with the published forms',
    'pivots': 'pivots:',
    'constraints': 'constraints:',
    'reconstruction': 'reconstruction at ({point}): {verdict}'
}


def render_json(document):
    """The document as indented JSON with sorted keys."""
    return json.dumps(document, indent=2, sort_keys=True) + '\n'


def render_text(document):
    """The human-readable report of an analysis document.

    A document whose result is missing (the run failed before producing one)
    renders as its diagnostics only.
    """
    lines = []
    result = document['result']
    if result is not None and document['diagnostics'] == []:
        lines = TEXT_RENDERERS[document['command']](result)
    elif result is not None:
        lines = _partial_result_lines(result)
    lines += [f'error: {message}' for message in document['diagnostics']]
    return '\n'.join(lines) + '\n'


def field_lines(field):
    return [f'{name} = {field[name]}' for name in COMPONENT_NAMES]


def _basis_lines(basis):
    lines = []
    for field in basis:
        lines.append('')
        lines += field_lines(field)
    return lines


def _verdict(value):
    return 'true' if value else 'false'


################################################################################
# One renderer per command
################################################################################
def _detgen_lines(result):
    lines = [f'[{", ".join(equation["origins"])}] {equation["expression"]} = 0'
             for equation in result['equations']]
    lines += result['consequences']
    if 'prolongation' in result:
        lines += ['', SECTION_HEADINGS['prolongation']]
        lines += [f'phi^({label}) = {coefficient}' for label, coefficient
                  in result['prolongation'].items()]
    if 'cross_check' in result:
        lines += ['', SECTION_HEADINGS['cross_check']]
        lines += result['cross_check']['text'].splitlines()
    return lines


def _solve_lines(result):
    lines = []
    if 'dimensions' in result:
        table = pd.DataFrame({'degree': list(result['dimensions']),
                              'dimension': list(result['dimensions'].values())})
        lines += table.to_string(index=False).splitlines()
        lines += [f'stacked rank: {result["stacked_rank"]}',
                  f'stable: {_verdict(result["stable"])}', '']
        lines.append(f'basis at degree {result["degree"]}')
    lines.append(f'dimension: {result["dimension"]}')
    return lines + _basis_lines(result['basis'])


def _algebra_lines(result):
    lines = [f'dimension: {result["dimension"]}']
    lines += [f'{i} {j} {k}: {value}'
              for i, j, k, value in result['structure_constants']]
    lines += [f'closed: {_verdict(result["closed"])}',
              f'antisymmetric: {_verdict(result["antisymmetric"])}',
              f'jacobi: {_verdict(result["jacobi"])}']
    return lines


def _closure_lines(result):
    lines = [f'{symbol} = {entry}' for symbol, entry in result['entries'].items()]
    lines.append(f'reduced: {result["reduced"]}')
    for key in ('pivots', 'constraints'):
        if result[key]:
            lines.append(SECTION_HEADINGS[key])
            lines += [f'  {item}' for item in result[key]]
    if 'reconstruction' in result:
        reconstruction = result['reconstruction']
        lines.append(SECTION_HEADINGS['reconstruction'].format(
            point=', '.join(reconstruction['point']),
            verdict='all equal' if reconstruction['holds'] else 'MISMATCH'))
        table = pd.DataFrame(reconstruction['comparisons'],
                             columns=['symbol', 'predicted', 'direct', 'equal'])
        if not reconstruction['holds']:
            table = table[~table['equal']]
        lines += table.to_string(index=False).splitlines()
    return lines


def _verify_lines(result):
    lines = [f'symmetry: {_verdict(result["symmetry"])}']
    lines += [f'violated: {violation["equation"]} = 0 '
              f'(residual {violation["residual"]})'
              for violation in result['violations']]
    return lines


def _partial_result_lines(result):
    """Details attached to a failed run."""
    if 'unreduced' in result:
        return ['unreduced: ' + ', '.join(result['unreduced'])]
    if 'pair' in result:
        i, j = result['pair']
        return [f'bracket of fields {i} and {j} leaves the span; residual:'] \
            + field_lines(result['residual'])
    return []


TEXT_RENDERERS = {
    'detgen': _detgen_lines,
    'solve': _solve_lines,
    'algebra': _algebra_lines,
    'closure': _closure_lines,
    'verify': _verify_lines
}
