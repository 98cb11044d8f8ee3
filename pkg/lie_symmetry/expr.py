"""Exact canonical-form symbolic expressions.

An Expr is a finite sum of monomials with nonzero rational coefficients.
Monomials are products of atoms raised to positive integer powers.  There are
four kinds of atoms:
  - BaseVar:  the base variables x, y and u
  - JetVar:  the jet coordinates u_J, where J is a sorted multi-index over the
      axes x (digit 1) and y (digit 2), e.g. u1, u2, u11, u112
  - FnDeriv:  derivatives of the unknown components xi, tau, phi of a vector
      field, e.g. xi_x_u
  - RhsDeriv:  derivatives of the right-hand sides F1, F2, F3, G of the PDE
      system, e.g. F3_u1

Expressions are kept fully expanded and canonical, so two expressions are equal
if and only if their term dictionaries are equal.  In particular an expression
vanishes identically if and only if it is the empty sum.  Expressions are
immutable and division-free; quotients live in RationalFn.
"""
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, lcm
import numbers
from types import MappingProxyType

import sympy

from .errors import ExprError

# Differentiation variables in canonical order.  The variable u1 is the jet
# coordinate u_x, on which F3 and G depend in addition to x, y, u.
VARIABLE_ORDER = ('x', 'y', 'u', 'u1')

BASE_VARIABLES = ('x', 'y', 'u')

FUNCTION_NAMES = ('xi', 'tau', 'phi')

RHS_ARGUMENTS = {
    'F1': ('x', 'y', 'u'),
    'F2': ('x', 'y', 'u'),
    'F3': ('x', 'y', 'u', 'u1'),
    'G': ('x', 'y', 'u', 'u1')
}
RHS_NAMES = tuple(RHS_ARGUMENTS)

# Digits used in jet multi-indices for the two independent variables.
AXIS_DIGITS = {'x': '1', 'y': '2'}

# The prolongation transiently creates jets of order 4, which must cancel.
MAX_JET_ORDER = 4
MAX_FUNCTION_ORDER = 4

DEFAULT_EXPONENT_BOUND = 64


def _sorted_variables(variables):
    for variable in variables:
        if variable not in VARIABLE_ORDER:
            raise ExprError(f'unknown differentiation variable {variable!r}')
    return tuple(sorted(variables, key=VARIABLE_ORDER.index))


################################################################################
# Atoms
################################################################################
@dataclass(frozen=True)
class BaseVar:
    """One of the base variables x, y, u."""
    name: str

    def __post_init__(self):
        if self.name not in BASE_VARIABLES:
            raise ExprError(f'{self.name!r} is not a base variable')

    @cached_property
    def sort_key(self):
        return (0, BASE_VARIABLES.index(self.name))

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class JetVar:
    """Jet coordinate u_J.

    The multi-index is stored as a sorted string of axis digits, so that the
    coordinates u12 and u21 are the same atom.
    """
    index: str

    def __post_init__(self):
        index = ''.join(sorted(self.index))
        if not 1 <= len(index) <= MAX_JET_ORDER or set(index) - {'1', '2'}:
            raise ExprError(f'invalid jet multi-index {self.index!r}')
        object.__setattr__(self, 'index', index)

    @property
    def order(self):
        return len(self.index)

    @cached_property
    def sort_key(self):
        return (1, len(self.index), self.index)

    def extended(self, axis):
        """Return the jet coordinate u_{J+axis}."""
        return JetVar(self.index + AXIS_DIGITS[axis])

    @classmethod
    def from_axes(cls, axes):
        """Build u_J from a sequence of axes such as ('x', 'x', 'y')."""
        return cls(''.join(AXIS_DIGITS[axis] for axis in axes))

    @property
    def axes(self):
        return tuple('x' if digit == '1' else 'y' for digit in self.index)

    def __str__(self):
        return 'u' + self.index


@dataclass(frozen=True)
class FnDeriv:
    """Derivative of xi, tau or phi with respect to a multiset of x, y, u.

    An empty multiset denotes the function itself.
    """
    function: str
    variables: tuple = ()

    def __post_init__(self):
        if self.function not in FUNCTION_NAMES:
            raise ExprError(f'unknown vector-field component {self.function!r}')
        variables = _sorted_variables(self.variables)
        if 'u1' in variables:
            raise ExprError(f'{self.function} does not depend on u1')
        if len(variables) > MAX_FUNCTION_ORDER:
            raise ExprError(f'derivative of {self.function} of order '
                            f'{len(variables)} exceeds the order budget')
        object.__setattr__(self, 'variables', variables)

    @property
    def order(self):
        return len(self.variables)

    def count(self, variable):
        return self.variables.count(variable)

    @cached_property
    def sort_key(self):
        return (2, FUNCTION_NAMES.index(self.function), len(self.variables),
                tuple(VARIABLE_ORDER.index(v) for v in self.variables))

    def extended(self, variable):
        return FnDeriv(self.function, self.variables + (variable,))

    def __str__(self):
        return self.function + ''.join('_' + v for v in self.variables)


@dataclass(frozen=True)
class RhsDeriv:
    """Derivative of one of the right-hand sides F1, F2, F3, G."""
    function: str
    variables: tuple = ()

    def __post_init__(self):
        if self.function not in RHS_ARGUMENTS:
            raise ExprError(f'unknown right-hand side {self.function!r}')
        variables = _sorted_variables(self.variables)
        for variable in variables:
            if variable not in RHS_ARGUMENTS[self.function]:
                raise ExprError(f'{self.function} does not depend on '
                                f'{variable}')
        object.__setattr__(self, 'variables', variables)

    @cached_property
    def sort_key(self):
        return (3, RHS_NAMES.index(self.function), len(self.variables),
                tuple(VARIABLE_ORDER.index(v) for v in self.variables))

    def depends_on(self, variable):
        return variable in RHS_ARGUMENTS[self.function]

    def extended(self, variable):
        return RhsDeriv(self.function, self.variables + (variable,))

    def __str__(self):
        return self.function + ''.join('_' + v for v in self.variables)


X = BaseVar('x')
Y = BaseVar('y')
U = BaseVar('u')
U1 = JetVar('1')
U2 = JetVar('2')
U11 = JetVar('11')
U12 = JetVar('12')
U111 = JetVar('111')
U112 = JetVar('112')


def _as_variable(variable):
    """Accept 'x', 'y', 'u', 'u1' or an atom and return the atom."""
    if isinstance(variable, (BaseVar, JetVar)):
        return variable
    if variable in BASE_VARIABLES:
        return BaseVar(variable)
    if variable == 'u1':
        return U1
    raise ExprError(f'cannot differentiate with respect to {variable!r}')


################################################################################
# Monomials
################################################################################
# A monomial is a tuple of (atom, exponent) pairs sorted by the atom ordering.
# The empty tuple is the monomial 1.
def _atom_sort_key(item):
    return item[0].sort_key


def make_monomial(powers):
    """Build a canonical monomial from a mapping atom -> exponent."""
    return tuple(sorted(((atom, exponent)
                         for atom, exponent in powers.items() if exponent),
                        key=_atom_sort_key))


def monomial_product(first, second):
    if not first:
        return second
    if not second:
        return first
    powers = dict(first)
    for atom, exponent in second:
        powers[atom] = powers.get(atom, 0) + exponent
    return make_monomial(powers)


def monomial_sort_key(monomial):
    return tuple((atom.sort_key, exponent) for atom, exponent in monomial)


def _format_monomial(monomial):
    return '*'.join(str(atom) if exponent == 1 else f'{atom}^{exponent}'
                    for atom, exponent in monomial)


################################################################################
# Expressions
################################################################################
class Expr:
    """Immutable canonical polynomial over atoms with rational coefficients."""
    __slots__ = ('_terms', '_hash')

    def __init__(self, terms=()):
        if isinstance(terms, Mapping):
            terms = terms.items()
        collected = {}
        for monomial, coefficient in terms:
            collected[monomial] = (collected.get(monomial, 0)
                                   + Fraction(coefficient))
        self._terms = {monomial: coefficient
                       for monomial, coefficient in collected.items()
                       if coefficient != 0}
        self._hash = None

    @classmethod
    def constant(cls, value):
        return cls({(): Fraction(value)})

    @classmethod
    def from_atom(cls, atom, exponent=1):
        return cls({((atom, exponent),): 1})

    @classmethod
    def coerce(cls, value):
        if isinstance(value, Expr):
            return value
        if isinstance(value, (BaseVar, JetVar, FnDeriv, RhsDeriv)):
            return cls.from_atom(value)
        if isinstance(value, numbers.Rational):
            return cls.constant(value)
        raise ExprError(f'cannot convert {value!r} to an expression')

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def sorted_terms(self):
        return sorted(self._terms.items(),
                      key=lambda item: monomial_sort_key(item[0]))

    @property
    def is_zero(self):
        return not self._terms

    @property
    def is_constant(self):
        return all(not monomial for monomial in self._terms)

    @property
    def constant_value(self):
        """Return the coefficient of the monomial 1."""
        return self._terms.get((), Fraction(0))

    def atoms(self):
        return frozenset(atom for monomial in self._terms
                         for atom, _ in monomial)

    def atoms_of_type(self, atom_type):
        return frozenset(atom for atom in self.atoms()
                         if isinstance(atom, atom_type))

    def max_jet_order(self):
        return max((atom.order for atom in self.atoms_of_type(JetVar)),
                   default=0)

    def scaled(self, factor):
        factor = Fraction(factor)
        if factor == 0:
            return ZERO
        return Expr({monomial: coefficient * factor
                     for monomial, coefficient in self._terms.items()})

    def __add__(self, other):
        if not isinstance(other, Expr):
            try:
                other = Expr.coerce(other)
            except ExprError:
                return NotImplemented
        terms = dict(self._terms)
        for monomial, coefficient in other._terms.items():
            terms[monomial] = terms.get(monomial, 0) + coefficient
        return Expr(terms)

    __radd__ = __add__

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        if not isinstance(other, Expr):
            try:
                other = Expr.coerce(other)
            except ExprError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, numbers.Rational):
            return self.scaled(other)
        if not isinstance(other, Expr):
            try:
                other = Expr.coerce(other)
            except ExprError:
                return NotImplemented
        terms = {}
        for first, first_coefficient in self._terms.items():
            for second, second_coefficient in other._terms.items():
                monomial = monomial_product(first, second)
                terms[monomial] = (terms.get(monomial, 0)
                                   + first_coefficient * second_coefficient)
        return Expr(terms)

    __rmul__ = __mul__

    def power(self, exponent, exponent_bound=DEFAULT_EXPONENT_BOUND):
        if not isinstance(exponent, numbers.Integral) or exponent < 0:
            raise ExprError(f'exponent {exponent!r} is not a non-negative '
                            'integer')
        if exponent > exponent_bound:
            raise ExprError(f'exponent {exponent} exceeds the bound '
                            f'{exponent_bound}')
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __pow__(self, exponent):
        return self.power(exponent)

    def __eq__(self, other):
        if isinstance(other, numbers.Rational):
            other = Expr.constant(other)
        if not isinstance(other, Expr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        return serialize(self)

    def __repr__(self):
        return f"Expr('{serialize(self)}')"


ZERO = Expr()
ONE = Expr.constant(1)


def serialize(expr):
    """Return the canonical text of an expression, e.g.
    '-3*xi_u*u11^2 + phi_u*u111'.

    Monomials are ordered by the atom ordering; coefficients are written as
    integers or p/q.  The text is accepted by parser.parse_expr.
    """
    if expr.is_zero:
        return '0'
    pieces = []
    for monomial, coefficient in expr.sorted_terms():
        if not monomial:
            text = str(coefficient)
        elif coefficient == 1:
            text = _format_monomial(monomial)
        elif coefficient == -1:
            text = '-' + _format_monomial(monomial)
        else:
            text = f'{coefficient}*{_format_monomial(monomial)}'
        if not pieces:
            pieces.append(text)
        elif text.startswith('-'):
            pieces.append(' - ' + text[1:])
        else:
            pieces.append(' + ' + text)
    return ''.join(pieces)


def normalize(tree, exponent_bound=DEFAULT_EXPONENT_BOUND):
    """Expand a raw expression tree into canonical form.

    Args:
        tree:  An Expr, an atom, a rational number, or a tuple whose first
            element is an operator:
              - ('+', a, b, ...) and ('*', a, b, ...)
              - ('-', a) for negation and ('-', a, b) for subtraction
              - ('^', a, k) for a positive integer k
        exponent_bound:  Largest exponent accepted; larger exponents signal
            malformed input

    Returns:
        Canonical Expr.  normalize is idempotent.
    """
    if not isinstance(tree, tuple):
        return Expr.coerce(tree)
    operator, *operands = tree
    if operator == '^':
        base, exponent = operands
        if not isinstance(exponent, numbers.Integral) or exponent < 1:
            raise ExprError(f'exponent {exponent!r} is not a positive integer')
        return normalize(base, exponent_bound).power(exponent, exponent_bound)
    values = [normalize(operand, exponent_bound) for operand in operands]
    if operator == '+':
        return sum(values, ZERO)
    if operator == '*':
        result = ONE
        for value in values:
            result = result * value
        return result
    if operator == '-' and len(values) == 1:
        return -values[0]
    if operator == '-' and len(values) == 2:
        return values[0] - values[1]
    raise ExprError(f'malformed expression tree node {operator!r}')


################################################################################
# Differentiation
################################################################################
def _derive(expr, atom_derivative):
    """Apply a derivation determined by its values on atoms.

    Args:
        expr:  Expression to differentiate
        atom_derivative:  Function mapping an atom to its derivative (an Expr),
            or to None when the derivative is zero

    Returns:
        The derivative of expr, computed with the product rule
    """
    cache = {}
    terms = {}
    for monomial, coefficient in expr.terms.items():
        for position, (atom, exponent) in enumerate(monomial):
            if atom not in cache:
                cache[atom] = atom_derivative(atom)
            derivative = cache[atom]
            if derivative is None:
                continue
            powers = dict(monomial)
            powers[atom] = exponent - 1
            rest = make_monomial(powers)
            factor = coefficient * exponent
            for other, other_coefficient in derivative.terms.items():
                product = monomial_product(rest, other)
                terms[product] = (terms.get(product, 0)
                                  + factor * other_coefficient)
    return Expr(terms)


def pdiff(expr, variable):
    """Formal partial derivative with respect to x, y, u, u1 or a jet atom.

    Jet coordinates are independent of each other and of the base variables.
    Derivatives of xi, tau, phi are extended for x, y, u and vanish for jet
    variables.  Derivatives of F3 and G are also extended for u1, while those
    of F1 and F2 vanish for u1.
    """
    variable = _as_variable(variable)

    def atom_derivative(atom):
        if isinstance(atom, (BaseVar, JetVar)):
            return ONE if atom == variable else None
        if isinstance(atom, FnDeriv):
            if isinstance(variable, BaseVar):
                return Expr.from_atom(atom.extended(variable.name))
            return None
        name = variable.name if isinstance(variable, BaseVar) else str(variable)
        if atom.depends_on(name):
            return Expr.from_atom(atom.extended(name))
        return None

    return _derive(expr, atom_derivative)


def total_derivative(expr, axis):
    """Total derivative D_x or D_y on the jet space.

    Args:
        expr:  Expression whose jet variables have order at most 3
        axis:  'x' or 'y'

    Returns:
        The total derivative, which may contain jets of order 4
    """
    if axis not in AXIS_DIGITS:
        raise ExprError(f'total derivative along {axis!r} is not defined')
    if expr.max_jet_order() > MAX_JET_ORDER - 1:
        raise ExprError('total derivative of an order-4 jet exhausts the '
                        'jet-order budget')
    first_jet = Expr.from_atom(JetVar(AXIS_DIGITS[axis]))
    mixed_jet = Expr.from_atom(JetVar('1' + AXIS_DIGITS[axis]))

    def atom_derivative(atom):
        if isinstance(atom, BaseVar):
            if atom.name == 'u':
                return first_jet
            return ONE if atom.name == axis else None
        if isinstance(atom, JetVar):
            return Expr.from_atom(atom.extended(axis))
        derivative = (Expr.from_atom(atom.extended(axis))
                      + first_jet * Expr.from_atom(atom.extended('u')))
        if isinstance(atom, RhsDeriv) and atom.depends_on('u1'):
            derivative = derivative + mixed_jet * Expr.from_atom(
                atom.extended('u1'))
        return derivative

    return _derive(expr, atom_derivative)


################################################################################
# Substitution, coefficient collection and evaluation
################################################################################
def replace(expr, mapping):
    """Replace atoms by expressions simultaneously (single pass).

    Args:
        expr:  Expression in which atoms are replaced
        mapping:  Mapping from atoms to Exprs (or numbers)
    """
    mapping = {atom: Expr.coerce(value) for atom, value in mapping.items()}
    power_cache = {}
    result = {}
    for monomial, coefficient in expr.terms.items():
        kept = []
        factor = None
        for atom, exponent in monomial:
            if atom not in mapping:
                kept.append((atom, exponent))
                continue
            key = (atom, exponent)
            if key not in power_cache:
                power_cache[key] = mapping[atom].power(exponent,
                                                       max(exponent, 1))
            factor = (power_cache[key] if factor is None
                      else factor * power_cache[key])
        if factor is None:
            result[monomial] = result.get(monomial, 0) + coefficient
            continue
        kept = tuple(kept)
        for other, other_coefficient in factor.terms.items():
            product = monomial_product(kept, other)
            result[product] = (result.get(product, 0)
                               + coefficient * other_coefficient)
    return Expr(result)


def substitute(expr, bindings):
    """Replace jet variables by expressions until none of them remains.

    Args:
        expr:  Expression to rewrite
        bindings:  Mapping (or iterable of pairs) from JetVar atoms to
            Exprs.  Values may contain lower bound jets, which are replaced in
            later passes; a binding chain that never terminates is cyclic.

    Returns:
        Renormalized expression free of bound atoms
    """
    bindings = dict(bindings)
    for atom in bindings:
        if not isinstance(atom, JetVar):
            raise ExprError(f'on-shell bindings must bind jet variables, '
                            f'not {atom}')
    # Highest jet order first, so each pass removes the longest chains.
    ordered = {atom: bindings[atom]
               for atom in sorted(bindings, key=lambda atom: atom.sort_key,
                                  reverse=True)}
    bound = frozenset(ordered)
    result = expr
    for _ in range(len(ordered) + 1):
        if not result.atoms() & bound:
            return result
        result = replace(result, ordered)
    raise ExprError('cyclic on-shell bindings: '
                    + ', '.join(str(atom) for atom in result.atoms() & bound))


def collect(expr, variables):
    """Collect an expression in powers of the given atoms.

    Args:
        expr:  Expression to split
        variables:  List of atoms

    Returns:
        Dictionary mapping exponent tuples (one entry per variable) to
        coefficient Exprs free of the variables, sorted by exponent tuple.
        The zero expression gives an empty dictionary.
    """
    variables = list(variables)
    collected = {}
    for monomial, coefficient in expr.terms.items():
        powers = dict(monomial)
        exponents = tuple(powers.pop(variable, 0) for variable in variables)
        collected.setdefault(exponents, {})
        rest = make_monomial(powers)
        collected[exponents][rest] = coefficient
    return {exponents: Expr(collected[exponents])
            for exponents in sorted(collected)}


def evaluate(expr, point):
    """Evaluate an expression exactly.

    Args:
        expr:  Expression to evaluate
        point:  Mapping from atoms to rational values; every atom of expr must
            be bound

    Returns:
        Fraction
    """
    total = Fraction(0)
    for monomial, coefficient in expr.terms.items():
        value = coefficient
        for atom, exponent in monomial:
            if atom not in point:
                raise ExprError(f'unbound atom {atom} in evaluation')
            value *= Fraction(point[atom]) ** exponent
        total += value
    return total


def primitive(expr):
    """Scale a nonzero expression to integer coefficients with gcd 1 and a
    positive leading coefficient.

    Returns:
        Tuple (primitive expression, scale), where primitive = scale * expr
    """
    if expr.is_zero:
        return expr, Fraction(1)
    coefficients = [coefficient for _, coefficient in expr.sorted_terms()]
    denominator = lcm(*(coefficient.denominator for coefficient in coefficients))
    numerators = [coefficient * denominator for coefficient in coefficients]
    divisor = gcd(*(int(numerator) for numerator in numerators))
    scale = Fraction(denominator, divisor)
    if coefficients[0] < 0:
        scale = -scale
    return expr.scaled(scale), scale


################################################################################
# Rational functions
################################################################################
class RationalFn:
    """Quotient of two expressions over base variables and RhsDeriv atoms.

    Equality is decided by cross-multiplication; the representative need not
    be reduced.  Constant denominators are folded into the numerator.
    """
    __slots__ = ('numerator', 'denominator')

    def __init__(self, numerator, denominator=1):
        numerator = Expr.coerce(numerator)
        denominator = Expr.coerce(denominator)
        if denominator.is_zero:
            raise ExprError('rational function with zero denominator')
        if denominator.is_constant:
            numerator = numerator.scaled(1 / denominator.constant_value)
            denominator = ONE
        self.numerator = numerator
        self.denominator = denominator

    @classmethod
    def coerce(cls, value):
        if isinstance(value, RationalFn):
            return value
        return cls(value)

    @property
    def is_zero(self):
        return self.numerator.is_zero

    @property
    def is_polynomial(self):
        return self.denominator == ONE

    def __add__(self, other):
        other = RationalFn.coerce(other)
        if self.denominator == other.denominator:
            return RationalFn(self.numerator + other.numerator,
                              self.denominator)
        return RationalFn(self.numerator * other.denominator
                          + other.numerator * self.denominator,
                          self.denominator * other.denominator)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-RationalFn.coerce(other))

    def __mul__(self, other):
        other = RationalFn.coerce(other)
        return RationalFn(self.numerator * other.numerator,
                          self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RationalFn.coerce(other)
        if other.is_zero:
            raise ExprError('division by a zero rational function')
        return RationalFn(self.numerator * other.denominator,
                          self.denominator * other.numerator)

    def __eq__(self, other):
        try:
            other = RationalFn.coerce(other)
        except ExprError:
            return NotImplemented
        return (self.numerator * other.denominator
                == other.numerator * self.denominator)

    def __hash__(self):
        # Unreduced representatives of equal functions may differ.
        return hash(self.is_zero)

    def pdiff(self, variable):
        numerator = pdiff(self.numerator, variable)
        denominator = pdiff(self.denominator, variable)
        if denominator.is_zero:
            return RationalFn(numerator, self.denominator)
        return RationalFn(numerator * self.denominator
                          - self.numerator * denominator,
                          self.denominator * self.denominator)

    def replace(self, mapping):
        return RationalFn(replace(self.numerator, mapping),
                          replace(self.denominator, mapping))

    def evaluate(self, point):
        denominator = evaluate(self.denominator, point)
        if denominator == 0:
            raise ExprError(f'denominator {self.denominator} vanishes')
        return evaluate(self.numerator, point) / denominator

    def reduced(self):
        """Return an equal rational function with common factors cancelled."""
        if self.denominator == ONE or self.numerator.is_zero:
            return self
        return RationalFn(*_cancel(self.numerator, self.denominator))

    def __str__(self):
        if self.denominator == ONE:
            return serialize(self.numerator)
        return f'({serialize(self.numerator)})/({serialize(self.denominator)})'

    def __repr__(self):
        return f"RationalFn('{self}')"


@lru_cache(maxsize=8192)
def _cancel(numerator, denominator):
    symbols = {}
    numerator = _to_sympy(numerator, symbols)
    denominator = _to_sympy(denominator, symbols)
    numerator, denominator = sympy.fraction(
        sympy.cancel(numerator / denominator))
    return _from_sympy(numerator, symbols), _from_sympy(denominator, symbols)


def _to_sympy(expr, symbols):
    total = sympy.Integer(0)
    for monomial, coefficient in expr.terms.items():
        term = sympy.Rational(coefficient.numerator, coefficient.denominator)
        for atom, exponent in monomial:
            symbol = sympy.Symbol(str(atom))
            symbols[symbol] = atom
            term *= symbol ** exponent
        total += term
    return total


def _from_sympy(value, symbols):
    generators = sorted(symbols, key=lambda symbol: symbols[symbol].sort_key)
    if not generators:
        rational = sympy.Rational(value)
        return Expr.constant(Fraction(int(rational.p), int(rational.q)))
    polynomial = sympy.Poly(value, *generators, domain='QQ')
    terms = {}
    for exponents, coefficient in polynomial.terms():
        powers = {symbols[generator]: exponent
                  for generator, exponent in zip(generators, exponents)}
        coefficient = sympy.Rational(coefficient)
        terms[make_monomial(powers)] = Fraction(int(coefficient.p),
                                                int(coefficient.q))
    return Expr(terms)
