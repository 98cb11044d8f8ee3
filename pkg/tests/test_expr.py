from fractions import Fraction

from hypothesis import given, settings, strategies as st
import pytest
import sympy

from lie_symmetry.errors import ExprError
from lie_symmetry.expr import (
    ONE, U, U1, U11, U2, U12, X, Y, ZERO, Expr, FnDeriv, JetVar, RationalFn,
    RhsDeriv, collect, evaluate, normalize, pdiff, primitive, serialize,
    substitute, total_derivative)
from lie_symmetry.parser import parse_expr

from conftest import base_polynomials

x, y, u = (Expr.from_atom(atom) for atom in (X, Y, U))
u1, u11, u2 = (Expr.from_atom(atom) for atom in (U1, U11, U2))
xi = Expr.from_atom(FnDeriv('xi'))
f3 = Expr.from_atom(RhsDeriv('F3'))


def product(factors):
    result = ONE
    for factor in factors:
        result = result * factor
    return result


jet_polynomials = st.lists(
    st.sampled_from([x, u, u1, u11, u2, xi, f3, Expr.constant(2)]),
    min_size=1, max_size=3).map(product)


def as_sympy(expr):
    return sympy.sympify(serialize(expr).replace('^', '**'))


def test_serialize_orders_terms_and_writes_rationals():
    assert serialize(ZERO) == '0'
    assert serialize(x.scaled(Fraction(3, 4))) == '3/4*x'
    assert serialize(y - x) == '-x + y'
    assert serialize(x - y) == 'x - y'
    assert serialize(u1 * u1 * xi - 3) == '-3 + u1^2*xi'


def test_jet_indices_are_unordered():
    assert JetVar('21') == JetVar('12')
    assert str(JetVar('211')) == 'u112'
    assert str(FnDeriv('xi', ('u', 'x'))) == 'xi_x_u'


def test_invalid_atoms_are_rejected():
    with pytest.raises(ExprError):
        JetVar('13')
    with pytest.raises(ExprError):
        FnDeriv('xi', ('u1',))
    with pytest.raises(ExprError):
        RhsDeriv('F1', ('u1',))


def test_normalize_expands_and_respects_the_exponent_bound():
    tree = ('*', ('+', X, Y), ('-', X, Y))
    assert normalize(tree) == x * x - y * y
    assert normalize(normalize(tree)) == normalize(tree)
    with pytest.raises(ExprError):
        normalize(('^', X, 65))
    with pytest.raises(ExprError):
        normalize(('^', X, 3), exponent_bound=2)


def test_partial_derivatives_of_function_atoms():
    assert pdiff(xi, 'x') == Expr.from_atom(FnDeriv('xi', ('x',)))
    assert pdiff(xi, 'u1') == ZERO
    assert pdiff(f3, 'u1') == Expr.from_atom(RhsDeriv('F3', ('u1',)))
    assert pdiff(Expr.from_atom(RhsDeriv('F1')), 'u1') == ZERO
    assert pdiff(u1 * u1, U1) == 2 * u1


def test_total_derivatives():
    assert total_derivative(u, 'x') == u1
    assert total_derivative(u1, 'x') == u11
    assert total_derivative(u1, 'y') == Expr.from_atom(U12)
    assert total_derivative(xi, 'x') == (
        Expr.from_atom(FnDeriv('xi', ('x',)))
        + u1 * Expr.from_atom(FnDeriv('xi', ('u',))))
    assert total_derivative(f3, 'x') == (
        Expr.from_atom(RhsDeriv('F3', ('x',)))
        + u1 * Expr.from_atom(RhsDeriv('F3', ('u',)))
        + u11 * Expr.from_atom(RhsDeriv('F3', ('u1',))))
    with pytest.raises(ExprError):
        total_derivative(Expr.from_atom(JetVar('1111')), 'x')


def test_substitute_follows_chains_and_detects_cycles():
    bindings = {U12: u2 * u1, U2: x}
    assert substitute(Expr.from_atom(U12), bindings) == x * u1
    with pytest.raises(ExprError):
        substitute(u1, {U1: u11, U11: u1})
    with pytest.raises(ExprError):
        substitute(x, {X: y})


def test_collect_splits_by_powers():
    collected = collect(x * u1 * u1 + 3 * u1 + 5, [U1])
    assert collected == {(0,): Expr.constant(5), (1,): Expr.constant(3),
                         (2,): x}
    assert list(collected) == [(0,), (1,), (2,)]
    assert collect(ZERO, [U1]) == {}


def test_evaluate_is_exact():
    value = evaluate(x * x.scaled(Fraction(1, 3)) + y,
                     {X: Fraction(1, 2), Y: 2})
    assert value == Fraction(25, 12)
    with pytest.raises(ExprError):
        evaluate(x + u, {X: 1})


def test_primitive_scaling():
    expr = x.scaled(Fraction(-2, 3)) + y.scaled(Fraction(4, 3))
    scaled, scale = primitive(expr)
    assert scaled == x - 2 * y
    assert scale == Fraction(-3, 2)
    assert primitive(ZERO) == (ZERO, 1)


def test_rational_functions():
    assert RationalFn(x * y, x * x) == RationalFn(y, x)
    assert RationalFn(x, 2) == RationalFn(x.scaled(Fraction(1, 2)))
    assert RationalFn(x, 2).is_polynomial
    reduced = RationalFn(x * x - y * y, x - y).reduced()
    assert reduced.is_polynomial
    assert reduced.numerator == x + y
    assert RationalFn(1, x).pdiff('x') == RationalFn(-1, x * x)
    assert RationalFn(x, y).evaluate({X: 3, Y: 4}) == Fraction(3, 4)
    with pytest.raises(ExprError):
        RationalFn(x, 0)
    with pytest.raises(ExprError):
        RationalFn(1, x - 1).evaluate({X: 1})


################################################################################
# Properties
################################################################################
@settings(max_examples=1000, deadline=None)
@given(base_polynomials, base_polynomials, base_polynomials)
def test_ring_identities(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert a - a == ZERO


@settings(max_examples=1000, deadline=None)
@given(base_polynomials, st.sampled_from(['x', 'y', 'u']))
def test_partial_derivative_matches_sympy(a, variable):
    expected = sympy.diff(as_sympy(a), sympy.Symbol(variable))
    assert sympy.expand(as_sympy(pdiff(a, variable)) - expected) == 0


@settings(max_examples=1000, deadline=None)
@given(jet_polynomials, jet_polynomials, st.sampled_from(['x', 'y']))
def test_total_derivative_is_a_derivation(a, b, axis):
    assert total_derivative(a * b, axis) == (total_derivative(a, axis) * b
                                             + a * total_derivative(b, axis))


@settings(max_examples=1000, deadline=None)
@given(jet_polynomials)
def test_total_derivatives_commute(a):
    first = total_derivative(total_derivative(a, 'x'), 'y')
    second = total_derivative(total_derivative(a, 'y'), 'x')
    assert first == second


@settings(max_examples=1000, deadline=None)
@given(base_polynomials)
def test_serialized_text_parses_back(a):
    assert parse_expr(serialize(a)) == a


@settings(max_examples=1000, deadline=None)
@given(jet_polynomials, st.sampled_from(['x', 'y', 'u', 'u1']),
       st.sampled_from(['x', 'y', 'u', 'u1']))
def test_partial_derivatives_commute(a, first, second):
    assert pdiff(pdiff(a, first), second) == pdiff(pdiff(a, second), first)


@settings(max_examples=1000, deadline=None)
@given(jet_polynomials, base_polynomials, base_polynomials)
def test_evaluation_after_substitution(a, b, c):
    point = {X: Fraction(1, 2), Y: -1, U: 2, U1: 3,
             FnDeriv('xi'): 5, RhsDeriv('F3'): Fraction(-1, 3)}
    bindings = {U11: b, U2: c}
    extended = dict(point)
    extended[U11] = evaluate(b, point)
    extended[U2] = evaluate(c, point)
    assert evaluate(substitute(a, bindings), point) == evaluate(a, extended)
