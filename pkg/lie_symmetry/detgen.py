"""On-shell substitution and the determining system of a PdeSystem.

The invariance condition of each equation of the system is the third
prolongation of the symbolic vector field applied to the equation, restricted
to solutions.  After replacing u2, u12, u111 and u112 by their on-shell values,
the conditions are polynomials in u11 and u1 whose coefficients must vanish
separately.  Each coefficient is a determining equation: a linear homogeneous
relation among the derivatives of xi, tau, phi.
"""
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
import logging

import pandas as pd

from .errors import KernelInvariantError
from .expr import (U1, U2, U11, U12, U111, U112, BASE_VARIABLES,
                   MAX_FUNCTION_ORDER, Expr, FnDeriv, JetVar, collect,
                   monomial_sort_key, pdiff, primitive, replace, substitute,
                   total_derivative)
from .parser import parse_expr
from .pde_system import PdeSystem, specialize
from .prolong import VectorField, apply_pr3
from .reference_transcriptions import (DETERMINING_STRATA,
                                       MODEL_SYSTEM_EQUATIONS,
                                       ON_SHELL_BINDINGS)
from .workers import parallel_map

logger = logging.getLogger(__name__)

CONDITIONS = ('cond1', 'cond2')

# Derivatives (as multisets of x, y, u) tried when pruning consequences.
PRUNING_DERIVATIVES = tuple(
    variables for order in (1, 2)
    for variables in combinations_with_replacement(BASE_VARIABLES, order))


@dataclass(frozen=True)
class Origin:
    """Where a determining equation comes from.

    Attributes:
        condition:  'cond1' (invariance of u2 = F) or 'cond2' (of u111 = G)
        u11_power, u1_power:  Exponents of the monomial it is the
            coefficient of
    """
    condition: str
    u11_power: int
    u1_power: int

    @property
    def sort_key(self):
        return (CONDITIONS.index(self.condition), -self.u11_power,
                self.u1_power)

    def __str__(self):
        return f'{self.condition} : u11^{self.u11_power} u1^{self.u1_power}'


@dataclass(frozen=True)
class DeterminingEquation:
    expression: Expr
    origins: tuple

    @property
    def tag(self):
        return '[' + ', '.join(str(origin) for origin in self.origins) + ']'

    @property
    def order(self):
        return equation_order(self.expression)

    def __str__(self):
        return f'{self.tag} {self.expression} = 0'


@dataclass(frozen=True)
class Consequence:
    """An equation that is a derivative of a lower-order equation.

    Attributes:
        equation:  The pruned DeterminingEquation
        source:  The DeterminingEquation it is derived from
        variables:  The derivative taken, e.g. ('u',)
    """
    equation: DeterminingEquation
    source: DeterminingEquation
    variables: tuple

    def __str__(self):
        derivative = ''.join('_' + variable for variable in self.variables)
        return (f'# {self.equation.expression} = 0 follows from '
                f'd{derivative} of {self.source.expression} = 0')


@dataclass(frozen=True)
class DeterminingSystem:
    """Determining equations of a PdeSystem.

    Attributes:
        system:  The PdeSystem
        equations:  Tuple of DeterminingEquations, in provenance order
        consequences:  Tuple of Consequences removed from equations
        strata:  Dictionary (condition, u11 power) -> Expr, the coefficient of
            that power of u11 with u1 still present
    """
    system: PdeSystem
    equations: tuple
    consequences: tuple = ()
    strata: dict = field(default_factory=dict, compare=False)

    @property
    def expressions(self):
        return [equation.expression for equation in self.equations]

    def all_equations(self):
        """Equations including pruned consequences."""
        return (list(self.equations)
                + [consequence.equation for consequence in self.consequences])

    def stratum_coefficients(self, condition, u11_power):
        """Coefficients of the powers of u1 in one stratum.

        Returns:
            Dictionary u1 power -> Expr
        """
        stratum = self.strata.get((condition, u11_power), Expr())
        return {exponents[0]: coefficient for exponents, coefficient
                in collect(stratum, [U1]).items()}

    def __len__(self):
        return len(self.equations)

    def __iter__(self):
        return iter(self.equations)


def equation_order(expr):
    return max((atom.order for atom in expr.atoms_of_type(FnDeriv)), default=0)


def on_shell(system):
    """On-shell values of the jets that occur in the invariance conditions.

    Args:
        system:  PdeSystem

    Returns:
        List of (JetVar, Expr) pairs, highest jet first: u112, u111, u12, u2
    """
    rhs = system.first_equation_rhs()
    solved = {U2: rhs, U111: system.G}
    mixed = substitute(total_derivative(rhs, 'x'), solved)
    mixed_third = substitute(total_derivative(mixed, 'x'), solved)
    return [(U112, mixed_third), (U111, system.G), (U12, mixed), (U2, rhs)]


def invariance_conditions(system, threads=1):
    """Prolonged invariance conditions restricted to solutions.

    Returns:
        Dictionary condition -> Expr in u1, u11 and the derivatives of xi,
        tau, phi
    """
    symbolic = VectorField.symbolic_field()
    bindings = dict(on_shell(system))
    equations = {
        'cond1': Expr.from_atom(U2) - system.first_equation_rhs(),
        'cond2': Expr.from_atom(U111) - system.G
    }

    def restricted(condition):
        value = substitute(apply_pr3(symbolic, equations[condition]), bindings)
        remaining = value.atoms_of_type(JetVar) - {U1, U11}
        if remaining:
            raise KernelInvariantError(
                f'jets {", ".join(sorted(map(str, remaining)))} remain in '
                f'{condition} after on-shell substitution')
        return value

    return dict(zip(CONDITIONS, parallel_map(restricted, CONDITIONS, threads)))


def _check_linear(expr, origin):
    for monomial in expr.terms:
        degree = sum(exponent for atom, exponent in monomial
                     if isinstance(atom, FnDeriv))
        if degree != 1:
            raise KernelInvariantError(f'equation from {origin} is not linear '
                                       f'homogeneous in xi, tau, phi: {expr}')


def determining_equations(system, prune_consequences=True, threads=1):
    """Generate the determining system.

    Args:
        system:  PdeSystem, concrete or generic
        prune_consequences:  Move equations that are derivatives of lower-order
            equations to DeterminingSystem.consequences
        threads:  Worker threads for the two invariance conditions

    Returns:
        DeterminingSystem
    """
    conditions = invariance_conditions(system, threads)
    strata = {}
    collected = []
    for condition in CONDITIONS:
        by_u11 = collect(conditions[condition], [U11])
        for (u11_power,) in sorted(by_u11, reverse=True):
            stratum = by_u11[(u11_power,)]
            strata[(condition, u11_power)] = stratum
            for (u1_power,), coefficient in collect(stratum, [U1]).items():
                origin = Origin(condition, u11_power, u1_power)
                _check_linear(coefficient, origin)
                collected.append((origin, coefficient))
    logger.debug('%d strata, %d raw coefficients', len(strata), len(collected))

    collected.sort(key=lambda item: item[0].sort_key)
    merged = {}
    for origin, coefficient in collected:
        expression, _ = primitive(coefficient)
        merged.setdefault(expression, []).append(origin)
    equations = [DeterminingEquation(expression, tuple(origins))
                 for expression, origins in merged.items()]

    consequences = []
    if prune_consequences:
        equations, consequences = prune(equations)
    logger.info('%d determining equations, %d consequences pruned',
                len(equations), len(consequences))
    return DeterminingSystem(system, tuple(equations), tuple(consequences),
                             strata)


def prune(equations):
    """Separate equations that are derivatives of other equations.

    Args:
        equations:  List of DeterminingEquations in primitive scaling

    Returns:
        Tuple (kept equations, list of Consequences)
    """
    derived = {}
    for equation in equations:
        headroom = MAX_FUNCTION_ORDER - equation.order
        for variables in PRUNING_DERIVATIVES:
            if len(variables) > headroom:
                continue
            value = equation.expression
            for variable in variables:
                value = pdiff(value, variable)
            if value.is_zero:
                continue
            derived.setdefault(primitive(value)[0], (equation, variables))
    kept = []
    consequences = []
    for equation in equations:
        source = derived.get(equation.expression)
        if source is None or source[0] is equation:
            kept.append(equation)
        else:
            consequences.append(Consequence(equation, *source))
    return kept, consequences


def field_residuals(determining_system, vector_field):
    """Evaluate the determining equations on a concrete vector field.

    Returns:
        List of (DeterminingEquation, residual Expr over x, y, u); the field
        is a symmetry if and only if every residual is zero
    """
    residuals = []
    for equation in determining_system.all_equations():
        bindings = vector_field.derivative_bindings(
            equation.expression.atoms())
        residuals.append((equation, replace(equation.expression, bindings)))
    return residuals


################################################################################
# Comparison with the published forms
################################################################################
@dataclass(frozen=True)
class Comparison:
    """Generated expression versus a published transcription.

    Attributes:
        name:  What was compared, e.g. 'cond2 : u11^2'
        agrees:  True if generated = scale * published
        scale:  Rational factor shared by most common monomials
        differences:  DataFrame with columns monomial, generated, published
            (published coefficients multiplied by scale)
    """
    name: str
    agrees: bool
    scale: object
    differences: pd.DataFrame

    def __str__(self):
        verdict = 'agree' if self.agrees else 'differ'
        text = f'{self.name}: {verdict} (scale {self.scale})'
        if not self.agrees:
            text += '\n' + self.differences.to_string(index=False)
        return text


@dataclass(frozen=True)
class ListComparison:
    """Generated equations versus a published list, up to rational scale."""
    missing: tuple
    unmatched: tuple
    duplicates: tuple

    @property
    def agrees(self):
        return not self.missing and not self.unmatched

    def __str__(self):
        lines = ['published list: '
                 + ('agree' if self.agrees else 'differ')]
        lines += [f'  published, not generated: {expr} = 0'
                  for expr in self.missing]
        lines += [f'  generated, not published: {expr} = 0'
                  for expr in self.unmatched]
        lines += [f'  listed more than once: {expr} = 0'
                  for expr in self.duplicates]
        return '\n'.join(lines)


@dataclass(frozen=True)
class CrossCheckReport:
    comparisons: tuple
    equation_list: ListComparison = None

    @property
    def agrees(self):
        return (all(comparison.agrees for comparison in self.comparisons)
                and (self.equation_list is None or self.equation_list.agrees))

    def __str__(self):
        parts = [str(comparison) for comparison in self.comparisons]
        if self.equation_list is not None:
            parts.append(str(self.equation_list))
        return '\n'.join(parts)


def compare_expressions(name, generated, published):
    """Compare two expressions up to a rational scale.

    The scale is the ratio shared by most common monomials, so a single
    mistyped coefficient shows up as a single difference.

    Returns:
        Comparison
    """
    ratios = Counter(coefficient / published.terms[monomial]
                     for monomial, coefficient in generated.sorted_terms()
                     if monomial in published.terms)
    scale = ratios.most_common(1)[0][0] if ratios else 1
    scaled = published.scaled(scale)
    difference = generated - scaled
    rows = []
    for monomial, _ in sorted(difference.terms.items(),
                              key=lambda item: monomial_sort_key(item[0])):
        term = Expr({monomial: 1})
        rows.append({'monomial': str(term),
                     'generated': str(generated.terms.get(monomial, 0)),
                     'published': str(scaled.terms.get(monomial, 0))})
    differences = pd.DataFrame(rows,
                               columns=['monomial', 'generated', 'published'])
    return Comparison(name, difference.is_zero, scale, differences)


def compare_equation_list(expressions, published):
    """Compare generated equations with a published list up to scale."""
    generated = [primitive(expr)[0] for expr in expressions]
    seen = []
    duplicates = []
    for text in published:
        expr = primitive(parse_expr(text))[0]
        if expr in seen:
            duplicates.append(expr)
        else:
            seen.append(expr)
    missing = tuple(expr for expr in seen if expr not in generated)
    unmatched = tuple(expr for expr in generated if expr not in seen)
    return ListComparison(missing, unmatched, tuple(duplicates))


def cross_check_reference(system, threads=1):
    """Compare generated bindings and strata with the published forms.

    The published forms are written for the generic system and specialized to
    the given one.  For the model system the published equation list is
    compared as well.

    Returns:
        CrossCheckReport (informative; disagreements do not raise)
    """
    comparisons = []
    bindings = dict(on_shell(system))
    for name, text in ON_SHELL_BINDINGS.items():
        jet = JetVar(name[1:])
        published = specialize(parse_expr(text), system)
        comparisons.append(compare_expressions(f'on-shell {name}',
                                               bindings[jet], published))
    determining_system = determining_equations(system, threads=threads)
    for (condition, u11_power), text in DETERMINING_STRATA.items():
        generated = determining_system.strata.get((condition, u11_power),
                                                  Expr())
        published = specialize(parse_expr(text), system)
        comparisons.append(compare_expressions(
            f'{condition} : u11^{u11_power}', generated, published))
    equation_list = None
    if system == PdeSystem.model():
        equation_list = compare_equation_list(determining_system.expressions,
                                              MODEL_SYSTEM_EQUATIONS)
    report = CrossCheckReport(tuple(comparisons), equation_list)
    logger.info('cross-check: %s', 'agree' if report.agrees else 'differ')
    return report
