"""Reduction of all derivatives of xi, tau, phi to ten initial coefficients.

Every symmetry of the system is determined by the values of
    xi, tau, phi, xi_x, tau_x, phi_x, phi_u, xi_x_x, tau_x_x, phi_x_x
at a point.  This module makes the statement explicit for a given system: it
expresses each derivative of xi, tau, phi of order at most 3 as a linear form
over those ten symbols, with rational-function coefficients in x, y, u.

The completion is a Gaussian elimination over the field of rational functions.
Relations come from the determining equations and from their derivatives;
each relation is solved for its highest unsolved symbol, where symbols are
ranked by (order, number of y, number of u, name).  Divisions are recorded as
pivot obligations.
"""
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
import logging

import pandas as pd

from .detgen import Origin, determining_equations
from .errors import (ExprError, IncompleteTableError, PivotVanishesError,
                     SingularPointError)
from .expr import (BASE_VARIABLES, FUNCTION_NAMES, ONE, VARIABLE_ORDER, X, Y,
                   U, Expr, FnDeriv, RationalFn, evaluate, make_monomial,
                   primitive, serialize)
from .pde_system import PdeSystem

logger = logging.getLogger(__name__)

INITIAL_COEFFICIENTS = (
    FnDeriv('xi'),
    FnDeriv('tau'),
    FnDeriv('phi'),
    FnDeriv('xi', ('x',)),
    FnDeriv('tau', ('x',)),
    FnDeriv('phi', ('x',)),
    FnDeriv('phi', ('u',)),
    FnDeriv('xi', ('x', 'x')),
    FnDeriv('tau', ('x', 'x')),
    FnDeriv('phi', ('x', 'x'))
)
INITIAL_SET = frozenset(INITIAL_COEFFICIENTS)

# The first-order derivatives that the lowest strata determine, with the
# coefficient each is read from, in the order they are solved.
INITIAL_STEPS = (
    (FnDeriv('tau', ('u',)), Origin('cond2', 2, 1)),
    (FnDeriv('tau', ('y',)), Origin('cond1', 0, 2)),
    (FnDeriv('xi', ('u',)), Origin('cond2', 2, 0)),
    (FnDeriv('xi', ('y',)), Origin('cond1', 0, 1)),
    (FnDeriv('phi', ('y',)), Origin('cond1', 0, 0))
)

MAX_ORDER = 3


def derivative_symbols(max_order=MAX_ORDER):
    """All derivatives of xi, tau, phi of order at most max_order."""
    return sorted((FnDeriv(function, variables)
                   for function in FUNCTION_NAMES
                   for order in range(max_order + 1)
                   for variables in combinations_with_replacement(
                       BASE_VARIABLES, order)),
                  key=lambda symbol: symbol.sort_key)


def symbol_rank(symbol):
    """Elimination rank: the highest-ranked unknown of a relation is solved."""
    return (symbol.order, symbol.count('y'), symbol.count('u'),
            FUNCTION_NAMES.index(symbol.function),
            tuple(VARIABLE_ORDER.index(variable)
                  for variable in symbol.variables))


def _tidy(value):
    if value.denominator == ONE:
        return value
    return value.reduced()


class LinearForm:
    """Linear combination of FnDeriv symbols with RationalFn coefficients.

    A LinearForm stands either for the right side of a table entry or, as a
    relation, for an expression that vanishes.
    """
    __slots__ = ('coefficients',)

    def __init__(self, coefficients=None):
        self.coefficients = {symbol: RationalFn.coerce(value)
                             for symbol, value in (coefficients or {}).items()}
        self.coefficients = {symbol: value for symbol, value
                             in self.coefficients.items() if not value.is_zero}

    @classmethod
    def from_expr(cls, expr):
        """Read a relation off an Expr that is linear in FnDeriv atoms."""
        parts = {}
        for monomial, coefficient in expr.terms.items():
            rest = {}
            symbol = None
            for atom, exponent in monomial:
                if isinstance(atom, FnDeriv):
                    if symbol is not None or exponent != 1:
                        raise ExprError(f'{expr} is not linear in the '
                                        'derivatives of xi, tau, phi')
                    symbol = atom
                else:
                    rest[atom] = exponent
            if symbol is None:
                raise ExprError(f'{expr} has a term free of xi, tau, phi')
            parts.setdefault(symbol, {})[make_monomial(rest)] = coefficient
        return cls({symbol: Expr(terms) for symbol, terms in parts.items()})

    @classmethod
    def of_symbol(cls, symbol):
        return cls({symbol: ONE})

    @property
    def is_zero(self):
        return not self.coefficients

    def symbols(self):
        return sorted(self.coefficients, key=lambda symbol: symbol.sort_key)

    def coefficient(self, symbol):
        return self.coefficients.get(symbol, RationalFn(0))

    def __add__(self, other):
        coefficients = dict(self.coefficients)
        for symbol, value in other.coefficients.items():
            if symbol in coefficients:
                coefficients[symbol] = _tidy(coefficients[symbol] + value)
            else:
                coefficients[symbol] = value
        return LinearForm(coefficients)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, factor):
        factor = RationalFn.coerce(factor)
        return LinearForm({symbol: _tidy(value * factor)
                           for symbol, value in self.coefficients.items()})

    def without(self, symbol):
        return LinearForm({other: value for other, value
                           in self.coefficients.items() if other != symbol})

    def substitute(self, symbol, form):
        """Replace symbol by a LinearForm."""
        if symbol not in self.coefficients:
            return self
        return self.without(symbol) + form.scaled(self.coefficients[symbol])

    def pdiff(self, variable):
        result = LinearForm()
        for symbol, value in self.coefficients.items():
            result = result + LinearForm({
                symbol: _tidy(value.pdiff(variable)),
                symbol.extended(variable): value})
        return result

    def evaluate(self, values, point):
        """Evaluate with symbol values and a point for the coefficients."""
        return sum((value.evaluate(point) * Fraction(values[symbol])
                    for symbol, value in self.coefficients.items()),
                   Fraction(0))

    def monic(self):
        """Scale so that the coefficient of the highest symbol is 1."""
        if self.is_zero:
            return self
        leading = max(self.coefficients, key=symbol_rank)
        return self.scaled(RationalFn(1) / self.coefficients[leading])

    def __eq__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return (self - other).is_zero

    __hash__ = None

    def __str__(self):
        polynomial = Expr()
        rational = []
        for symbol in self.symbols():
            value = self.coefficients[symbol]
            if value.is_polynomial:
                polynomial = polynomial + value.numerator * Expr.from_atom(
                    symbol)
            else:
                rational.append(f'({serialize(value.numerator)})/'
                                f'({serialize(value.denominator)})*{symbol}')
        pieces = [] if polynomial.is_zero and rational else [str(polynomial)]
        return ' + '.join(pieces + rational)

    def __repr__(self):
        return f"LinearForm('{self}')"


@dataclass(frozen=True)
class Pivot:
    """A polynomial the reduction divides by; it must not vanish."""
    symbol: FnDeriv
    polynomial: Expr

    def __str__(self):
        return f'{self.polynomial} != 0 (solving for {self.symbol})'


@dataclass(frozen=True)
class ReductionTable:
    """Derivatives of xi, tau, phi expressed over the initial coefficients.

    Attributes:
        entries:  Dictionary FnDeriv -> LinearForm over INITIAL_COEFFICIENTS;
            the initial coefficients map to themselves
        pivots:  Tuple of Pivot obligations
        constraints:  Tuple of LinearForms over the initial coefficients that
            vanish for every symmetry
    """
    entries: dict
    pivots: tuple = ()
    constraints: tuple = ()

    @property
    def reduced_symbols(self):
        return [symbol for symbol in self.entries if symbol not in INITIAL_SET]

    def lines(self):
        return [f'{symbol} = {self.entries[symbol]}'
                for symbol in sorted(self.reduced_symbols,
                                     key=lambda symbol: symbol.sort_key)]

    def __str__(self):
        return '\n'.join(self.lines())


def _relation_from(determining_system, origin):
    coefficients = determining_system.stratum_coefficients(origin.condition,
                                                           origin.u11_power)
    coefficient = coefficients.get(origin.u1_power, Expr())
    return LinearForm.from_expr(primitive(coefficient)[0])


def _solve_for(relation, symbol):
    """Solve a relation for one symbol; returns (form, pivot)."""
    pivot = relation.coefficient(symbol)
    form = relation.without(symbol).scaled(RationalFn(-1) / pivot)
    return form, pivot


def _initial_steps(system, determining_system):
    solved = []
    for symbol, origin in INITIAL_STEPS:
        relation = _relation_from(determining_system, origin)
        for previous, form, _ in solved:
            relation = relation.substitute(previous, form)
        pivot = relation.coefficient(symbol)
        if pivot.is_zero:
            general = (_generic_pivots().get(symbol) if system.is_concrete
                       else None)
            raise PivotVanishesError(symbol, general, origin)
        form, _ = _solve_for(relation, symbol)
        logger.debug('%s = %s (from %s)', symbol, form, origin)
        solved.append((symbol, form, pivot))
    return solved


@lru_cache(maxsize=1)
def _generic_pivots():
    generic = PdeSystem.generic()
    steps = _initial_steps(
        generic, determining_equations(generic, prune_consequences=False))
    return {symbol: primitive(pivot.numerator)[0]
            for symbol, _, pivot in steps}


def initial_relations(system, determining_system=None):
    """Solve the lowest strata for tau_u, tau_y, xi_u, xi_y and phi_y.

    Args:
        system:  PdeSystem, concrete or generic
        determining_system:  Precomputed DeterminingSystem, if any

    Returns:
        List of (FnDeriv, LinearForm) in solving order

    Raises:
        PivotVanishesError:  If a symbol is absent from the coefficient it is
            read from
    """
    if determining_system is None:
        determining_system = determining_equations(system)
    return [(symbol, form) for symbol, form, _
            in _initial_steps(system, determining_system)]


class _Completion:
    """Mutable elimination state of complete_table.

    Unknowns are solved in `solved`.  Relations among the initial
    coefficients alone are kept in echelon form in `constraint_forms`, keyed
    by their leading symbol, so there are never more than ten of them.
    """

    def __init__(self):
        self.solved = {}
        self.pivots = []
        self.constraint_forms = {}
        self.constraint_relations = []
        self.differentiated = set()

    def record_pivot(self, symbol, pivot):
        for polynomial in (pivot.numerator, pivot.denominator):
            if polynomial.is_constant:
                continue
            polynomial = primitive(polynomial)[0]
            if all(polynomial != other.polynomial for other in self.pivots):
                self.pivots.append(Pivot(symbol, polynomial))

    def reduce(self, relation):
        for symbol in relation.symbols():
            if symbol in self.solved:
                relation = relation.substitute(symbol, self.solved[symbol])
        return relation

    def absorb(self, relation):
        """Add a relation; returns True if it carried new information."""
        relation = self.reduce(relation)
        if relation.is_zero:
            return False
        unknowns = [symbol for symbol in relation.symbols()
                    if symbol not in INITIAL_SET]
        if not unknowns:
            return self.absorb_constraint(relation)
        target = max(unknowns, key=symbol_rank)
        form, pivot = _solve_for(relation, target)
        self.record_pivot(target, pivot)
        for symbol, other in self.solved.items():
            self.solved[symbol] = other.substitute(target, form)
        self.solved[target] = form
        return True

    def absorb_constraint(self, relation):
        for leader, form in self.constraint_forms.items():
            relation = relation.substitute(leader, form)
        if relation.is_zero:
            return False
        leader = max(relation.symbols(), key=symbol_rank)
        form, pivot = _solve_for(relation, leader)
        self.record_pivot(leader, pivot)
        for other, other_form in self.constraint_forms.items():
            self.constraint_forms[other] = other_form.substitute(leader, form)
        self.constraint_forms[leader] = form
        self.constraint_relations.append(relation)
        logger.info('constraint among initial coefficients: %s = 0',
                    relation.monic())
        return True

    @property
    def constraints(self):
        leaders = sorted(self.constraint_forms,
                         key=lambda symbol: symbol.sort_key)
        return tuple(LinearForm.of_symbol(leader)
                     - self.constraint_forms[leader] for leader in leaders)

    def derivative_relations(self):
        """Derivatives of the solved entries and constraints of order <= 2."""
        relations = []
        sources = [(symbol, LinearForm.of_symbol(symbol) - form)
                   for symbol, form in self.solved.items()
                   if symbol.order <= MAX_ORDER - 1]
        sources += [(index, constraint) for index, constraint
                    in enumerate(self.constraint_relations)]
        for key, relation in sources:
            for variable in BASE_VARIABLES:
                if (key, variable) in self.differentiated:
                    continue
                self.differentiated.add((key, variable))
                relations.append(relation.pdiff(variable))
        return relations

    def is_final(self, symbol):
        return all(other in INITIAL_SET
                   for other in self.solved[symbol].symbols())


def complete_table(system, determining_system=None, max_order=MAX_ORDER):
    """Express every derivative of xi, tau, phi of order <= 3 over the ten
    initial coefficients.

    Args:
        system:  Concrete PdeSystem
        determining_system:  Precomputed DeterminingSystem, if any
        max_order:  Highest derivative order in the table (3)

    Returns:
        ReductionTable

    Raises:
        PivotVanishesError:  If an initial step degenerates
        IncompleteTableError:  If some symbols cannot be reduced
    """
    if not system.is_concrete:
        raise ExprError('the reduction table is built for concrete systems')
    if max_order != MAX_ORDER:
        raise ValueError(f'the reduction table covers order {MAX_ORDER}')
    if determining_system is None:
        determining_system = determining_equations(system)
    completion = _Completion()
    queue = deque()
    for symbol, form, pivot in _initial_steps(system, determining_system):
        completion.record_pivot(symbol, pivot)
        queue.append(LinearForm.of_symbol(symbol) - form)
    queue.extend(LinearForm.from_expr(equation.expression)
                 for equation in determining_system.all_equations())
    rounds = 0
    while queue:
        rounds += 1
        while queue:
            completion.absorb(queue.popleft())
        queue.extend(completion.derivative_relations())
    logger.info('completion finished after %d rounds; %d symbols solved',
                rounds, len(completion.solved))

    entries = {symbol: LinearForm.of_symbol(symbol)
               for symbol in INITIAL_COEFFICIENTS}
    unreduced = []
    for symbol in derivative_symbols(max_order):
        if symbol in INITIAL_SET:
            continue
        if symbol in completion.solved and completion.is_final(symbol):
            entries[symbol] = completion.solved[symbol]
        else:
            unreduced.append(symbol)
    table = ReductionTable(entries, tuple(completion.pivots),
                           completion.constraints)
    if unreduced:
        raise IncompleteTableError(unreduced, table)
    return table


################################################################################
# Pointwise reconstruction
################################################################################
@dataclass(frozen=True)
class ReconstructionReport:
    """Predicted versus directly computed derivatives at a point.

    Attributes:
        point:  Tuple (x0, y0, u0) of Fractions
        comparisons:  DataFrame with columns symbol, predicted, direct, equal
    """
    point: tuple
    comparisons: pd.DataFrame

    @property
    def holds(self):
        return bool(self.comparisons['equal'].all())

    @property
    def mismatches(self):
        return self.comparisons[~self.comparisons['equal']]

    def __str__(self):
        coordinates = ', '.join(str(value) for value in self.point)
        verdict = 'all equal' if self.holds else 'MISMATCH'
        return (f'reconstruction at ({coordinates}): {verdict}\n'
                + self.comparisons.to_string(index=False))


def reconstruct_check(system, vector_field, point, table=None):
    """Compare the table's predictions with a field's actual derivatives.

    Args:
        system:  Concrete PdeSystem
        vector_field:  Concrete VectorField, normally a symmetry of system
        point:  Sequence (x0, y0, u0) of rationals
        table:  Precomputed ReductionTable of system, if any

    Returns:
        ReconstructionReport covering every derivative of order <= 3

    Raises:
        SingularPointError:  If a pivot obligation fails at the point
    """
    if table is None:
        table = complete_table(system)
    point = tuple(Fraction(value) for value in point)
    bindings = dict(zip((X, Y, U), point))
    vanishing = [pivot for pivot in table.pivots
                 if evaluate(pivot.polynomial, bindings) == 0]
    if vanishing:
        raise SingularPointError(point, vanishing)

    def direct(symbol):
        return evaluate(vector_field.derivative(symbol), bindings)

    initial_values = {symbol: direct(symbol) for symbol in INITIAL_COEFFICIENTS}
    rows = []
    for symbol in derivative_symbols():
        try:
            predicted = table.entries[symbol].evaluate(initial_values,
                                                       bindings)
        except ExprError as error:
            raise SingularPointError(point, [str(error)]) from error
        actual = direct(symbol)
        rows.append({'symbol': str(symbol), 'predicted': str(predicted),
                     'direct': str(actual), 'equal': predicted == actual})
    return ReconstructionReport(point, pd.DataFrame(
        rows, columns=['symbol', 'predicted', 'direct', 'equal']))
