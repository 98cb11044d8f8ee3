from fractions import Fraction
import time

import pytest

from lie_symmetry.closure import (
    INITIAL_COEFFICIENTS, LinearForm, Pivot, ReductionTable, _Completion,
    complete_table, derivative_symbols, initial_relations, reconstruct_check)
from lie_symmetry.detgen import DeterminingSystem, Origin
from lie_symmetry.errors import (ExprError, PivotVanishesError,
                                 SingularPointError)
from lie_symmetry.expr import (U, X, Y, Expr, FnDeriv, RationalFn, evaluate,
                               primitive)
from lie_symmetry.parser import parse_expr, parse_system
from lie_symmetry.pde_system import PdeSystem
from lie_symmetry.prolong import VectorField
from lie_symmetry.solver import Span


def symbol(name, *variables):
    return FnDeriv(name, variables)


@pytest.fixture(scope='module')
def model_table(model_system, model_equations):
    return complete_table(model_system, model_equations)


def test_derivative_symbols():
    symbols = derivative_symbols()
    assert len(symbols) == 60
    assert len(set(symbols) - set(INITIAL_COEFFICIENTS)) == 50
    assert symbols[0] == symbol('xi')


def test_linear_forms():
    form = LinearForm.from_expr(parse_expr('2*x*xi_x - phi_u'))
    assert form.coefficient(symbol('xi', 'x')) == RationalFn(
        2 * Expr.from_atom(X))
    assert form.pdiff('x') == LinearForm.from_expr(
        parse_expr('2*xi_x + 2*x*xi_x_x - phi_x_u'))
    assert form.monic() == LinearForm.from_expr(
        parse_expr('phi_u - 2*x*xi_x'))
    with pytest.raises(ExprError):
        LinearForm.from_expr(parse_expr('xi*tau'))
    with pytest.raises(ExprError):
        LinearForm.from_expr(parse_expr('xi + 1'))


def test_initial_relations_of_the_model_system(model_system,
                                               model_equations):
    solved = dict(initial_relations(model_system, model_equations))
    assert list(solved) == [symbol('tau', 'u'), symbol('tau', 'y'),
                            symbol('xi', 'u'), symbol('xi', 'y'),
                            symbol('phi', 'y')]
    assert solved[symbol('tau', 'u')].is_zero
    assert solved[symbol('tau', 'y')] == LinearForm(
        {symbol('xi', 'x'): 2, symbol('phi', 'u'): -1})
    assert solved[symbol('xi', 'u')] == LinearForm({symbol('tau', 'x'): -2})
    assert solved[symbol('xi', 'y')] == LinearForm({symbol('phi', 'x'): -2})
    assert solved[symbol('phi', 'y')].is_zero


def test_reduction_table_of_the_model_system(model_table):
    assert len(model_table.reduced_symbols) == 50
    assert model_table.constraints == ()
    for name in ('xi', 'tau'):
        assert model_table.entries[symbol(name, 'x', 'x', 'x')].is_zero
    assert model_table.entries[symbol('phi', 'x', 'x', 'x')].is_zero
    for entry in model_table.entries.values():
        assert set(entry.symbols()) <= set(INITIAL_COEFFICIENTS)
    assert len(model_table.lines()) == 50


def test_reconstruction_of_the_general_solution(model_system, model_table,
                                                general_solution):
    for field in general_solution:
        for point in [(1, 1, 1), (2, Fraction(-1, 3), 5)]:
            report = reconstruct_check(model_system, field, point, model_table)
            assert report.holds, str(report)
            assert len(report.comparisons) == 60


def test_reconstruction_exposes_a_non_symmetry(model_system, model_table):
    report = reconstruct_check(model_system, VectorField(0, 0, parse_expr('y')),
                               (1, 1, 1), model_table)
    assert not report.holds
    assert 'phi_y' in list(report.mismatches['symbol'])


def test_singular_point():
    table = ReductionTable({}, pivots=(Pivot(symbol('xi', 'y'),
                                             Expr.from_atom(X)),))
    with pytest.raises(SingularPointError):
        reconstruct_check(PdeSystem.model(), VectorField(1, 0, 0), (0, 1, 1),
                          table)


def test_only_concrete_systems_are_completed():
    with pytest.raises(ExprError):
        complete_table(PdeSystem.generic())


@pytest.fixture(scope='module')
def smoke_system(data_dir):
    return parse_system((data_dir / 'generic_smoke.sys').read_text())


@pytest.fixture(scope='module')
def smoke_table(smoke_system):
    start = time.perf_counter()
    table = complete_table(smoke_system)
    assert time.perf_counter() - start < 120
    return table


@pytest.fixture(scope='module')
def shifted_system():
    return parse_system('F1 = 0\nF2 = x + 1\nF3 = 1\nG = 0\n')


def test_reduction_table_of_a_system_with_variable_coefficients(smoke_table):
    assert len(smoke_table.reduced_symbols) == 50
    for entry in smoke_table.entries.values():
        assert set(entry.symbols()) <= set(INITIAL_COEFFICIENTS)
    for constraint in smoke_table.constraints:
        assert set(constraint.symbols()) <= set(INITIAL_COEFFICIENTS)


def test_table_is_sound_for_known_symmetries(smoke_system, smoke_table):
    # Neither right-hand side depends on x or y.
    for field in (VectorField(1, 0, 0), VectorField(0, 1, 0)):
        for point in [(Fraction(1, 3), 2, Fraction(7, 5)),
                      (5, -3, Fraction(11, 4))]:
            report = reconstruct_check(smoke_system, field, point, smoke_table)
            assert report.holds, str(report)


def test_divisions_by_the_coefficient_of_u1_squared_are_recorded(
        shifted_system):
    table = complete_table(shifted_system)
    shift = primitive(parse_expr('2 + 2*x'))[0]
    assert shift in [pivot.polynomial for pivot in table.pivots]
    assert all(not pivot.polynomial.is_constant for pivot in table.pivots)
    with pytest.raises(SingularPointError):
        reconstruct_check(shifted_system, VectorField(0, 1, 0), (-1, 0, 0),
                          table)
    report = reconstruct_check(shifted_system, VectorField(0, 1, 0),
                               (2, 1, 3), table)
    assert report.holds, str(report)


def test_initial_data_determine_the_symmetry(general_solution):
    point = {X: Fraction(2), Y: Fraction(1, 3), U: Fraction(-1)}
    initial_data = [tuple(evaluate(field.derivative(symbol), point)
                          for symbol in INITIAL_COEFFICIENTS)
                    for field in general_solution]
    assert Span(initial_data).rank == len(general_solution) == 10


def test_vanishing_pivot_names_the_general_coefficient(model_system):
    empty = DeterminingSystem(model_system, ())
    with pytest.raises(PivotVanishesError) as info:
        complete_table(model_system, empty)
    assert info.value.symbol == symbol('tau', 'u')
    assert info.value.origin == Origin('cond2', 2, 1)
    assert info.value.pivot == primitive(parse_expr('F2'))[0]
    assert 'F2' in str(info.value)
    assert 'cond2 : u11^2 u1^1' in str(info.value)


def test_redundant_constraints_are_dropped():
    completion = _Completion()
    first = LinearForm.from_expr(parse_expr('xi_x - phi_u'))
    second = LinearForm.from_expr(parse_expr('x*tau_x + phi'))
    assert completion.absorb(first)
    assert completion.absorb(second)
    assert not completion.absorb(first.scaled(3) - second.scaled(
        RationalFn(parse_expr('y'))))
    assert not completion.absorb(first + second)
    assert len(completion.constraints) == 2
    assert len(completion.derivative_relations()) == 6
