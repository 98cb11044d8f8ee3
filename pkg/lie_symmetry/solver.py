"""Exact solution of the determining system under a polynomial ansatz.

Each component of the vector field is replaced by a polynomial of bounded
total degree with unknown coefficients.  The determining equations then become
a homogeneous linear system over the rationals, whose kernel is the space of
polynomial symmetries of that degree.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
import logging
from math import gcd, lcm

import numpy as np
import pandas as pd

from .detgen import determining_equations, field_residuals
from .errors import ExprError, KernelInvariantError
from .expr import BASE_VARIABLES, BaseVar, Expr, FnDeriv, RhsDeriv, make_monomial
from .prolong import COMPONENT_NAMES, VectorField
from .workers import parallel_map

logger = logging.getLogger(__name__)

BASE_ATOMS = tuple(BaseVar(name) for name in BASE_VARIABLES)


@dataclass(frozen=True, order=True)
class ColumnLabel:
    """Coefficient of x^i y^j u^k in one component of the vector field."""
    sort_key: tuple
    function: str
    exponents: tuple

    @classmethod
    def of(cls, function, exponents):
        i, j, k = exponents
        return cls((COMPONENT_NAMES.index(function), i + j + k, -i, -j),
                   function, tuple(exponents))

    @property
    def degree(self):
        return sum(self.exponents)

    def monomial(self):
        return Expr({make_monomial(dict(zip(BASE_ATOMS, self.exponents))): 1})

    def __str__(self):
        return f'{self.function}[{self.monomial()}]'


def ansatz_monomials(degree):
    """Exponent triples (i, j, k) with i + j + k <= degree, ordered by total
    degree, then by decreasing powers of x and y."""
    return [(i, j, total - i - j)
            for total in range(degree + 1)
            for i in range(total, -1, -1)
            for j in range(total - i, -1, -1)]


def column_labels(degree):
    return tuple(ColumnLabel.of(function, exponents)
                 for function in COMPONENT_NAMES
                 for exponents in ansatz_monomials(degree))


@dataclass(frozen=True)
class LinearSystem:
    """Homogeneous linear system with sparse rows.

    Attributes:
        rows:  Tuple of dictionaries column index -> nonzero Fraction
        column_labels:  Tuple of ColumnLabels, one per column
    """
    rows: tuple
    column_labels: tuple

    @property
    def shape(self):
        return (len(self.rows), len(self.column_labels))

    def to_dense(self):
        """The coefficient matrix as a numpy array of Fractions."""
        matrix = np.full(self.shape, Fraction(0), dtype=object)
        for index, row in enumerate(self.rows):
            for column, value in row.items():
                matrix[index, column] = value
        return matrix


def _falling_factorial(n, k):
    result = 1
    for offset in range(k):
        result *= n - offset
    return result


def _equation_rows(expression, labels_by_function):
    """Rows contributed by one determining equation."""
    rows = {}
    for monomial, coefficient in expression.terms.items():
        powers = [0, 0, 0]
        unknown = None
        for atom, exponent in monomial:
            if isinstance(atom, FnDeriv):
                unknown = atom
            elif isinstance(atom, BaseVar):
                powers[BASE_VARIABLES.index(atom.name)] = exponent
            else:
                raise ExprError(f'the polynomial ansatz needs a concrete '
                                f'system; found {atom}')
        orders = [unknown.count(variable) for variable in BASE_VARIABLES]
        for column, exponents in labels_by_function[unknown.function]:
            factor = 1
            for exponent, order in zip(exponents, orders):
                factor *= _falling_factorial(exponent, order)
            if factor == 0:
                continue
            key = tuple(exponent - order + power for exponent, order, power
                        in zip(exponents, orders, powers))
            row = rows.setdefault(key, {})
            row[column] = row.get(column, 0) + coefficient * factor
    return {key: {column: value for column, value in row.items() if value}
            for key, row in rows.items()}


def build_linear_system(determining_system, degree, threads=1):
    """Substitute the polynomial ansatz into every determining equation.

    Args:
        determining_system:  DeterminingSystem of a concrete PdeSystem
        degree:  Total-degree bound d >= 1 of the ansatz
        threads:  Worker threads (one task per equation)

    Returns:
        LinearSystem with one row per (equation, monomial in x, y, u)
    """
    if degree < 1:
        raise ValueError(f'ansatz degree must be at least 1, not {degree}')
    labels = column_labels(degree)
    labels_by_function = {function: [] for function in COMPONENT_NAMES}
    for column, label in enumerate(labels):
        labels_by_function[label.function].append((column, label.exponents))
    equations = determining_system.all_equations()
    for equation in equations:
        if equation.expression.atoms_of_type(RhsDeriv):
            raise ExprError('the polynomial ansatz needs a concrete system')
    per_equation = parallel_map(
        lambda equation: _equation_rows(equation.expression,
                                        labels_by_function),
        equations, threads)
    rows = []
    for equation_rows in per_equation:
        for key in sorted(equation_rows):
            if equation_rows[key]:
                rows.append(equation_rows[key])
    linear_system = LinearSystem(tuple(rows), labels)
    logger.debug('linear system of shape %s at degree %d', linear_system.shape,
                 degree)
    return linear_system


################################################################################
# Exact elimination
################################################################################
def _integer_row(row):
    """Scale a sparse rational row to coprime integers."""
    denominator = lcm(*(Fraction(value).denominator for value in row.values()))
    integers = {column: int(Fraction(value) * denominator)
                for column, value in row.items() if value}
    return _primitive_part(integers)


def _primitive_part(row):
    divisor = gcd(*row.values())
    if divisor > 1:
        return {column: value // divisor for column, value in row.items()}
    return row


def _forward_eliminate(rows, columns):
    """Fraction-free forward elimination.

    The pivot of each column is the entry of smallest bit length, ties broken
    by the earlier row.  Rows are kept primitive instead of dividing by the
    previous pivot.

    Args:
        rows:  List of sparse rational rows
        columns:  Column keys in processing order

    Returns:
        List of (pivot column, integer row) in processing order
    """
    active = [(index, _integer_row(row)) for index, row in enumerate(rows)
              if row]
    pivots = []
    for column in columns:
        candidates = [entry for entry in active if column in entry[1]]
        if not candidates:
            continue
        pivot_index, pivot_row = min(
            candidates,
            key=lambda entry: (abs(entry[1][column]).bit_length(), entry[0]))
        pivot_value = pivot_row[column]
        remaining = []
        for index, row in active:
            if index == pivot_index:
                continue
            if column in row:
                factor = row[column]
                combined = {key: value * pivot_value for key, value in row.items()}
                for key, value in pivot_row.items():
                    combined[key] = combined.get(key, 0) - factor * value
                row = {key: value for key, value in combined.items() if value}
                if not row:
                    continue
                row = _primitive_part(row)
            remaining.append((index, row))
        active = remaining
        pivots.append((column, pivot_row))
    return pivots


def row_reduce(rows, columns=None):
    """Reduced row echelon form of sparse rational rows.

    Args:
        rows:  List of dictionaries column key -> rational
        columns:  Column keys in order; defaults to the sorted union of keys

    Returns:
        List of (pivot column, row) with Fraction entries, each pivot equal to
        1 and zero in every other pivot column
    """
    if columns is None:
        columns = sorted({key for row in rows for key in row})
    pivots = _forward_eliminate(rows, columns)
    reduced = [(column, {key: Fraction(value, row[column])
                         for key, value in row.items()})
               for column, row in pivots]
    for position in range(len(reduced) - 1, -1, -1):
        column, pivot_row = reduced[position]
        for earlier in range(position):
            other_column, other = reduced[earlier]
            factor = other.get(column)
            if not factor:
                continue
            for key, value in pivot_row.items():
                other[key] = other.get(key, 0) - factor * value
            reduced[earlier] = (other_column,
                                {key: value for key, value in other.items()
                                 if value})
    return reduced


def nullspace(linear_system):
    """Exact basis of the kernel of a LinearSystem.

    Returns:
        List of tuples of Fractions, one entry per column, in reduced echelon
        form; empty for a trivial kernel
    """
    columns = list(range(len(linear_system.column_labels)))
    reduced = row_reduce(list(linear_system.rows), columns)
    pivot_columns = {column for column, _ in reduced}
    basis = []
    for free in columns:
        if free in pivot_columns:
            continue
        vector = [Fraction(0)] * len(columns)
        vector[free] = Fraction(1)
        for column, row in reduced:
            vector[column] = -row.get(free, Fraction(0))
        basis.append(vector)
    echelon = row_reduce([dict(enumerate(vector)) for vector in basis],
                         columns)
    return [tuple(row.get(column, Fraction(0)) for column in columns)
            for _, row in echelon]


################################################################################
# Spans of vectors
################################################################################
class Span:
    """Exact span of finitely many sparse vectors.

    Vectors are dictionaries from sortable keys to rationals (or anything
    vector_of accepts, such as VectorFields).
    """

    def __init__(self, vectors):
        self.vectors = [vector_of(vector) for vector in vectors]
        self.keys = sorted({key for vector in self.vectors for key in vector})

    @cached_property
    def _tracked_echelon(self):
        """Echelon rows, each with its combination of the input vectors."""
        rows = []
        for index, vector in enumerate(self.vectors):
            row = {('v', key): Fraction(value) for key, value in vector.items()}
            row[('c', index)] = Fraction(1)
            rows.append(row)
        columns = ([('v', key) for key in self.keys]
                   + [('c', index) for index in range(len(self.vectors))])
        return [(column[1], row) for column, row in row_reduce(rows, columns)
                if column[0] == 'v']

    @property
    def rank(self):
        return len(self._tracked_echelon)

    @property
    def is_independent(self):
        return self.rank == len(self.vectors)

    def decompose(self, target):
        """Split a vector into a combination of the spanning vectors and a
        remainder.

        Returns:
            Tuple (coordinates, residual): a list with one Fraction per
            spanning vector, and a sparse dictionary that is empty if and only
            if target lies in the span
        """
        residual = {key: Fraction(value)
                    for key, value in vector_of(target).items() if value}
        coordinates = [Fraction(0)] * len(self.vectors)
        for pivot, row in self._tracked_echelon:
            factor = residual.get(pivot)
            if not factor:
                continue
            for (kind, key), value in row.items():
                if kind == 'v':
                    residual[key] = residual.get(key, 0) - factor * value
                else:
                    coordinates[key] += factor * value
            residual = {key: value for key, value in residual.items() if value}
        return coordinates, residual

    def contains(self, target):
        return not self.decompose(target)[1]

    def __len__(self):
        return len(self.vectors)


def vector_of(value):
    """Sparse coordinate dictionary of a vector, VectorField or sequence."""
    if isinstance(value, VectorField):
        return field_vector(value)
    if isinstance(value, dict):
        return {key: entry for key, entry in value.items() if entry}
    return {index: entry for index, entry in enumerate(value) if entry}


def field_vector(field):
    """Coordinates of a concrete field: ColumnLabel -> Fraction."""
    vector = {}
    for function, component in zip(COMPONENT_NAMES, field.components):
        for monomial, coefficient in component.terms.items():
            powers = dict(monomial)
            exponents = tuple(powers.get(atom, 0) for atom in BASE_ATOMS)
            vector[ColumnLabel.of(function, exponents)] = coefficient
    return vector


def field_from_vector(vector, labels):
    """Vector field whose ansatz coefficients are the entries of vector."""
    components = {function: {} for function in COMPONENT_NAMES}
    for value, label in zip(vector, labels):
        if value:
            monomial = make_monomial(dict(zip(BASE_ATOMS, label.exponents)))
            components[label.function][monomial] = value
    return VectorField(*(Expr(components[function])
                         for function in COMPONENT_NAMES))


def field_from_residual(residual):
    """Vector field from a sparse ColumnLabel dictionary."""
    labels = sorted(residual)
    return field_from_vector([residual[label] for label in labels], labels)


################################################################################
# Symmetry algebra
################################################################################
def symmetry_basis(system, degree, threads=1, determining_system=None):
    """Basis of the polynomial symmetries of bounded degree.

    Args:
        system:  Concrete PdeSystem
        degree:  Total-degree bound of the ansatz
        threads:  Worker threads
        determining_system:  Precomputed DeterminingSystem of system, if any

    Returns:
        List of VectorFields, each verified against every determining equation
    """
    if determining_system is None:
        determining_system = determining_equations(system, threads=threads)
    linear_system = build_linear_system(determining_system, degree, threads)
    kernel = nullspace(linear_system)
    basis = [field_from_vector(vector, linear_system.column_labels)
             for vector in kernel]
    for index, field in enumerate(basis):
        for equation, residual in field_residuals(determining_system, field):
            if not residual.is_zero:
                raise KernelInvariantError(
                    f'basis field {index + 1} violates {equation.expression} '
                    f'= 0 (residual {residual})')
    logger.info('degree %d: %d symmetries', degree, len(basis))
    return basis


@dataclass(frozen=True)
class SweepResult:
    """Dimension of the polynomial symmetry space as a function of degree.

    Attributes:
        bases:  Dictionary degree -> list of VectorFields
        stacked_rank:  Rank of all bases taken together
    """
    bases: dict
    stacked_rank: int

    @property
    def dimensions(self):
        return {degree: len(basis) for degree, basis in self.bases.items()}

    @property
    def is_stable(self):
        dimensions = set(self.dimensions.values())
        return len(dimensions) == 1 and self.stacked_rank in dimensions

    def to_frame(self):
        return pd.DataFrame({'degree': list(self.dimensions),
                             'dimension': list(self.dimensions.values())})


def sweep(system, min_degree, max_degree, threads=1):
    """Solve at every degree from min_degree to max_degree."""
    if not 1 <= min_degree <= max_degree:
        raise ValueError(f'invalid degree range {min_degree}..{max_degree}')
    determining_system = determining_equations(system, threads=threads)
    bases = {degree: symmetry_basis(system, degree, threads,
                                    determining_system)
             for degree in range(min_degree, max_degree + 1)}
    stacked = Span([field for basis in bases.values() for field in basis])
    return SweepResult(bases, stacked.rank)
