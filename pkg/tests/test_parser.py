from fractions import Fraction

import pytest

from lie_symmetry.errors import DegenerateSystemError, ParseError
from lie_symmetry.expr import U, U1, X, Y, Expr, FnDeriv, JetVar
from lie_symmetry.parser import (parse_expr, parse_system, parse_vector_field,
                                 parse_vector_fields, tokenize)
from lie_symmetry.pde_system import MODEL_SYSTEM_TEXT, PdeSystem
from lie_symmetry.prolong import VectorField

x, y, u = (Expr.from_atom(atom) for atom in (X, Y, U))


def test_expressions_are_expanded():
    assert parse_expr('x^2/2 - 2*y*u') == (x * x).scaled(Fraction(1, 2)) \
        - 2 * y * u
    assert parse_expr('2*(x + y)') == 2 * x + 2 * y
    assert parse_expr('-(x - y)') == y - x
    assert parse_expr('x/(1/2)') == 2 * x
    assert parse_expr('(x + 1)^2') == x * x + 2 * x + 1


def test_symbol_names():
    assert parse_expr('u112') == Expr.from_atom(JetVar('112'))
    assert parse_expr('u21') == Expr.from_atom(JetVar('12'))
    assert parse_expr('xi_u_x') == Expr.from_atom(FnDeriv('xi', ('x', 'u')))


@pytest.mark.parametrize('text', ['x/y', 'x/0', 'x +', 'z', '2 3', 'x^0',
                                  'xi_u1', 'u13', 'x^65', '(x'])
def test_malformed_expressions(text):
    with pytest.raises(ParseError):
        parse_expr(text)


def test_exponent_bound_is_configurable():
    assert parse_expr('x^3', exponent_bound=3) == x * x * x
    with pytest.raises(ParseError):
        parse_expr('x^3', exponent_bound=2)


def test_errors_carry_spans():
    with pytest.raises(ParseError) as info:
        tokenize('x + $')
    assert (info.value.span.line, info.value.span.column) == (1, 5)
    with pytest.raises(ParseError) as info:
        parse_system('F1 = 0\nF2 = 1\nF3 = 0\nG = z\n')
    assert (info.value.span.line, info.value.span.column) == (4, 5)
    assert 'line 4, column 5' in str(info.value)


def test_model_system_file():
    assert parse_system(MODEL_SYSTEM_TEXT) == PdeSystem.model()
    assert parse_system('F1 = 0 F2 = 1 F3 = 0 G = 0') == PdeSystem.model()


def test_system_fields_may_use_their_arguments_only():
    system = parse_system('F1 = x*u\nF2 = 1 + y\nF3 = u1\nG = u*u1^2')
    assert system.F3 == Expr.from_atom(U1)
    with pytest.raises(ParseError):
        parse_system('F1 = u1\nF2 = 1\nF3 = 0\nG = 0')
    with pytest.raises(ParseError):
        parse_system('F1 = 0\nF2 = 1\nF3 = 0\nG = u11')


@pytest.mark.parametrize('text', [
    'F1 = 0\nF2 = 1\nF3 = 0',
    'F1 = 0\nF1 = 0\nF2 = 1\nF3 = 0\nG = 0',
    'F1 = 0\nF2 = 1\nF3 = 0\nG = 0\nxi = 1',
    'F1 0\nF2 = 1\nF3 = 0\nG = 0'
])
def test_malformed_system_files(text):
    with pytest.raises(ParseError):
        parse_system(text)


def test_degenerate_system_file():
    with pytest.raises(DegenerateSystemError):
        parse_system('F1 = x\nF2 = u - u\nF3 = 0\nG = 0')


def test_vector_field_files():
    field = parse_vector_field('# scaling\nxi = x/2\ntau = y\nphi = 0\n')
    assert field == VectorField(x.scaled(Fraction(1, 2)), y, Expr())
    fields = parse_vector_fields('xi = 1 tau = 0 phi = 0\n'
                                 'xi = 0 tau = 1 phi = 0\n'
                                 'phi = u xi = 0 tau = 0\n')
    assert [field.components for field in fields] == [
        (Expr.constant(1), Expr(), Expr()),
        (Expr(), Expr.constant(1), Expr()),
        (Expr(), Expr(), u)]


@pytest.mark.parametrize('text', [
    'xi = 1 tau = 0',
    'xi = 1 tau = 0 phi = u1',
    'xi = 1 tau = 0 phi = 0 xi = 0 tau = 1 phi = 0',
    ''
])
def test_malformed_vector_field_files(text):
    with pytest.raises(ParseError):
        parse_vector_field(text)


def test_file_level_errors_point_at_the_end_of_input():
    with pytest.raises(ParseError) as info:
        parse_system('F1 = 0\nF2 = 1\nF3 = 0\n')
    assert 'missing assignment for G' in str(info.value)
    assert (info.value.span.line, info.value.span.column) == (4, 1)
    with pytest.raises(ParseError) as info:
        parse_system('F1 = 0\nF2 = 1\nF3 = 0\nG 0\n')
    assert (info.value.span.line, info.value.span.column) == (4, 3)
    with pytest.raises(ParseError) as info:
        parse_vector_fields('# nothing here\n')
    assert info.value.span is not None
    with pytest.raises(ParseError) as info:
        parse_vector_field('xi = 1\ntau = 0\nphi = 0\nxi = 0\ntau = 1\n'
                           'phi = 0')
    assert 'expected one vector field, found 2' in str(info.value)
    assert (info.value.span.line, info.value.span.column) == (6, 8)
