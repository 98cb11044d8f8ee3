from hypothesis import given, settings
import pytest

from lie_symmetry.errors import ExprError
from lie_symmetry.expr import (U1, U11, U111, U12, U2, X, Expr, FnDeriv,
                               JetVar, replace, total_derivative)
from lie_symmetry.parser import parse_expr
from lie_symmetry.prolong import (DISPLAYED_PROLONGATIONS, VectorField,
                                  apply_pr3, prolong_coefficient)

from conftest import vector_fields

u1, u2, u11, u12, u111 = (Expr.from_atom(jet)
                          for jet in (U1, U2, U11, U12, U111))
x = Expr.from_atom(X)


def jet(index):
    return Expr.from_atom(JetVar(index))


def fn(name, *variables):
    return Expr.from_atom(FnDeriv(name, variables))


def test_first_order_coefficients():
    symbolic = VectorField.symbolic_field()
    assert prolong_coefficient(symbolic, 'x') == (
        fn('phi', 'x') + u1 * fn('phi', 'u')
        - u1 * (fn('xi', 'x') + u1 * fn('xi', 'u'))
        - u2 * (fn('tau', 'x') + u1 * fn('tau', 'u')))
    assert prolong_coefficient(symbolic, '2') == (
        fn('phi', 'y') + u2 * fn('phi', 'u')
        - u1 * (fn('xi', 'y') + u2 * fn('xi', 'u'))
        - u2 * (fn('tau', 'y') + u2 * fn('tau', 'u')))


def test_displayed_coefficients_stay_in_the_third_jet():
    symbolic = VectorField.symbolic_field()
    for multi_index in DISPLAYED_PROLONGATIONS.values():
        assert prolong_coefficient(symbolic, multi_index).max_jet_order() <= 3


def test_translation_has_trivial_prolongation():
    translation = VectorField(1, 0, 0)
    for multi_index in DISPLAYED_PROLONGATIONS.values():
        assert prolong_coefficient(translation, multi_index).is_zero


def test_scaling_of_x():
    scaling = VectorField(x, 0, 0)
    assert prolong_coefficient(scaling, 'x') == -u1
    assert prolong_coefficient(scaling, 'xx') == -2 * u11
    assert prolong_coefficient(scaling, 'xxx') == -3 * u111
    assert prolong_coefficient(scaling, 'xy') == -u12
    assert apply_pr3(scaling, u2 - u1 * u1) == 2 * u1 * u1


def test_order_limits():
    with pytest.raises(ExprError):
        prolong_coefficient(VectorField(x, 0, 0), '1111')
    with pytest.raises(ExprError):
        apply_pr3(VectorField(x, 0, 0), Expr.from_atom(JetVar('1112')))


def test_vector_field_validation_and_arithmetic():
    with pytest.raises(ExprError):
        VectorField(u1, 0, 0)
    first = VectorField(x, 1, 0)
    second = VectorField(1, 0, x)
    assert first + second == VectorField(x + 1, 1, x)
    assert 2 * first - first == first
    assert first.to_text() == 'xi = x\ntau = 1\nphi = 0'
    with pytest.raises(ExprError):
        first + VectorField.symbolic_field()


@settings(max_examples=1000, deadline=None)
@given(vector_fields, vector_fields)
def test_prolongation_is_linear_in_the_field(first, second):
    for multi_index in ('1', '2', '11', '12', '111', '112'):
        assert prolong_coefficient(first + second, multi_index) == (
            prolong_coefficient(first, multi_index)
            + prolong_coefficient(second, multi_index))


@settings(max_examples=1000, deadline=None)
@given(vector_fields)
def test_concrete_prolongation_is_the_symbolic_one_evaluated(field):
    symbolic = VectorField.symbolic_field()
    for multi_index in ('11', '112'):
        generic = prolong_coefficient(symbolic, multi_index)
        bindings = field.derivative_bindings(generic.atoms())
        assert replace(generic, bindings) == prolong_coefficient(field,
                                                                 multi_index)


def drop_tau(expr):
    taus = [atom for atom in expr.atoms_of_type(FnDeriv)
            if atom.function == 'tau']
    return replace(expr, dict.fromkeys(taus, 0))


def test_second_order_coefficient_matches_the_expanded_formula():
    expected = parse_expr(
        'phi_x_x + (2*phi_x_u - xi_x_x)*u1 - tau_x_x*u2'
        ' + (phi_u_u - 2*xi_x_u)*u1^2 - 2*tau_x_u*u1*u2 - xi_u_u*u1^3'
        ' - tau_u_u*u1^2*u2 + (phi_u - 2*xi_x)*u11 - 2*tau_x*u12'
        ' - 3*xi_u*u1*u11 - tau_u*u2*u11 - 2*tau_u*u1*u12')
    assert prolong_coefficient(VectorField.symbolic_field(), 'xx') == expected


def test_third_order_coefficient_without_tau_matches_the_ode_formula():
    expected = parse_expr(
        'phi_x_x_x + (3*phi_x_x_u - xi_x_x_x)*u1'
        ' + 3*(phi_x_u_u - xi_x_x_u)*u1^2 + (phi_u_u_u - 3*xi_x_u_u)*u1^3'
        ' - xi_u_u_u*u1^4 + 3*(phi_x_u - xi_x_x)*u11'
        ' + 3*(phi_u_u - 3*xi_x_u)*u1*u11 - 6*xi_u_u*u1^2*u11'
        ' - 3*xi_u*u11^2 + (phi_u - 3*xi_x)*u111 - 4*xi_u*u1*u111')
    generic = prolong_coefficient(VectorField.symbolic_field(), 'xxx')
    assert drop_tau(generic) == expected


@pytest.mark.parametrize('index', ['', '1', '2', '11', '12', '22'])
def test_coefficients_follow_the_prolongation_recursion(index):
    symbolic = VectorField.symbolic_field()
    lower = (symbolic.phi if not index
             else prolong_coefficient(symbolic, index))
    for axis, digit in (('x', '1'), ('y', '2')):
        expected = (total_derivative(lower, axis)
                    - jet(index + '1') * total_derivative(symbolic.xi, axis)
                    - jet(index + '2') * total_derivative(symbolic.tau, axis))
        assert prolong_coefficient(symbolic, index + digit) == expected
