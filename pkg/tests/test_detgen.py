import pytest

from lie_symmetry.detgen import (
    cross_check_reference, determining_equations, field_residuals, on_shell)
from lie_symmetry.errors import DegenerateSystemError
from lie_symmetry.expr import (MAX_FUNCTION_ORDER, U1, U11, U111, U112, U12,
                               U2, Expr, FnDeriv, RhsDeriv, primitive)
from lie_symmetry.parser import parse_expr, parse_system
from lie_symmetry.pde_system import PdeSystem
from lie_symmetry.prolong import VectorField
from lie_symmetry.reference_transcriptions import MODEL_SYSTEM_EQUATIONS

u1, u11 = Expr.from_atom(U1), Expr.from_atom(U11)

# The published list of the model system, with its duplicate tau_u dropped
# and phi_x + xi_y replaced by the equation the invariance conditions give.
CORRECTED_MODEL_EQUATIONS = (
    [text for text in MODEL_SYSTEM_EQUATIONS[:-1] if text != 'phi_x + xi_y']
    + ['2*phi_x + xi_y'])


def test_on_shell_values_for_the_model_system(model_system):
    bindings = dict(on_shell(model_system))
    assert list(bindings) == [U112, U111, U12, U2]
    assert bindings[U2] == u1 * u1
    assert bindings[U12] == 2 * u1 * u11
    assert bindings[U112] == 2 * u11 * u11
    assert bindings[U111].is_zero


def test_model_system_equations(model_equations):
    expected = {primitive(parse_expr(text))[0]
                for text in CORRECTED_MODEL_EQUATIONS}
    assert len(model_equations) == 13
    assert set(model_equations.expressions) == expected


def test_derivative_consequences_are_pruned(model_equations):
    pruned = {str(consequence.equation.expression)
              for consequence in model_equations.consequences}
    assert pruned == {'tau_u_u', 'tau_u_u_u'}
    for consequence in model_equations.consequences:
        assert str(consequence).startswith('# ')
    unpruned = determining_equations(PdeSystem.model(),
                                     prune_consequences=False)
    assert len(unpruned) == 15


def test_pruning_respects_the_derivative_order_budget(model_system):
    equations = determining_equations(model_system, prune_consequences=True)
    assert max(equation.order for equation in equations.all_equations()) == 3
    for consequence in equations.consequences:
        assert (consequence.source.order + len(consequence.variables)
                <= MAX_FUNCTION_ORDER)


def coefficient_of(expr, text):
    (monomial,) = parse_expr(text).terms
    return expr.terms.get(monomial, 0)


def test_generic_first_condition_coefficient_of_u1():
    equations = determining_equations(PdeSystem.generic(),
                                      prune_consequences=False)
    coefficient = equations.stratum_coefficients('cond1', 0)[1]
    xi_y = coefficient_of(coefficient, 'xi_y')
    assert xi_y != 0
    assert coefficient_of(coefficient, 'F1*xi_x') == -xi_y
    assert coefficient_of(coefficient, 'F1^2*tau_x') == -xi_y
    assert coefficient_of(coefficient, 'F1_x*xi') == xi_y
    assert coefficient_of(coefficient, 'F2*phi_x') == 2 * xi_y
    assert coefficient_of(coefficient, 'F1*phi_u') == 0


def test_equations_are_linear_homogeneous_and_primitive(model_equations):
    for equation in model_equations.all_equations():
        assert primitive(equation.expression)[0] == equation.expression
        for monomial in equation.expression.terms:
            unknowns = [(atom, exponent) for atom, exponent in monomial
                        if isinstance(atom, FnDeriv)]
            assert len(unknowns) == 1 and unknowns[0][1] == 1


def test_provenance_tags(model_equations):
    phi_y = next(equation for equation in model_equations
                 if str(equation.expression) == 'phi_y')
    assert phi_y.tag == '[cond1 : u11^0 u1^0]'
    assert str(phi_y) == '[cond1 : u11^0 u1^0] phi_y = 0'


def test_output_does_not_depend_on_threads(model_system, model_equations):
    threaded = determining_equations(model_system, threads=3)
    assert threaded.equations == model_equations.equations
    assert threaded.consequences == model_equations.consequences


def test_generic_system_keeps_right_hand_sides():
    equations = determining_equations(PdeSystem.generic())
    atoms = set()
    for expression in equations.expressions:
        atoms |= expression.atoms_of_type(RhsDeriv)
    assert RhsDeriv('F2') in atoms
    assert len(equations) > 13


def test_concrete_system_with_variable_coefficients(data_dir):
    system = parse_system((data_dir / 'generic_smoke.sys').read_text())
    equations = determining_equations(system)
    assert len(equations) > 0
    assert all(not expression.atoms_of_type(RhsDeriv)
               for expression in equations.expressions)


def test_degenerate_system():
    with pytest.raises(DegenerateSystemError):
        PdeSystem(0, 0, 0, 0)


def test_published_generators_have_zero_residuals(model_equations,
                                                  generators):
    for field in generators:
        for _, residual in field_residuals(model_equations, field):
            assert residual.is_zero


def test_residuals_of_a_non_symmetry(model_equations):
    field = VectorField(0, 0, parse_expr('y'))
    violations = [(str(equation.expression), residual)
                  for equation, residual in field_residuals(model_equations,
                                                            field)
                  if not residual.is_zero]
    assert violations == [('phi_y', Expr.constant(1))]


def test_cross_check_of_the_model_system(model_system):
    report = cross_check_reference(model_system)
    by_name = {comparison.name: comparison
               for comparison in report.comparisons}
    assert by_name['on-shell u12'].agrees
    assert by_name['on-shell u112'].agrees
    assert by_name['cond1 : u11^0'].agrees
    assert by_name['cond1 : u11^0'].scale == 1
    assert by_name['cond2 : u11^2'].agrees
    assert by_name['cond2 : u11^2'].scale == -3
    listed = report.equation_list
    assert listed.missing == (primitive(parse_expr('phi_x + xi_y'))[0],)
    assert listed.unmatched == (primitive(parse_expr('2*phi_x + xi_y'))[0],)
    assert listed.duplicates == (parse_expr('tau_u'),)
    assert not report.agrees


def test_cross_check_reports_the_mixed_binding_of_the_generic_system():
    report = cross_check_reference(PdeSystem.generic())
    disagreeing = [comparison for comparison in report.comparisons
                   if not comparison.agrees]
    assert [comparison.name for comparison in disagreeing] == [
        'on-shell u112']
    # The published binding halves the F1_x_u*u1^2 term; every other
    # coefficient agrees.
    rows = disagreeing[0].differences.to_dict('records')
    assert len(rows) == 1
    assert parse_expr(rows[0]['monomial']) == parse_expr('F1_x_u*u1^2')
    assert (rows[0]['generated'], rows[0]['published']) == ('2', '1')
    assert disagreeing[0].scale == 1
    assert report.equation_list is None
