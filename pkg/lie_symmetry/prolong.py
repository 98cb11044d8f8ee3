"""Vector fields V = xi*d/dx + tau*d/dy + phi*d/du and their prolongations."""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import numbers

from .errors import ExprError, KernelInvariantError
from .expr import (AXIS_DIGITS, U1, U2, ZERO, BaseVar, Expr, FnDeriv, JetVar,
                   RhsDeriv, pdiff, total_derivative)

COMPONENT_NAMES = ('xi', 'tau', 'phi')

# Multi-indices shown by `detgen --show-prolongation`, labelled by axes.
DISPLAYED_PROLONGATIONS = {
    'x': '1',
    'y': '2',
    'xx': '11',
    'xy': '12',
    'xxx': '111',
    'xxy': '112'
}


@dataclass(frozen=True)
class VectorField:
    """Point vector field on (x, y, u).

    Concrete fields have polynomial components over x, y, u.  The symbolic
    field has the unknown functions xi, tau, phi as components.
    """
    xi: Expr
    tau: Expr
    phi: Expr
    symbolic: bool = False

    def __post_init__(self):
        for name in COMPONENT_NAMES:
            object.__setattr__(self, name, Expr.coerce(getattr(self, name)))
        if self.symbolic:
            if self.components != tuple(Expr.from_atom(FnDeriv(name))
                                        for name in COMPONENT_NAMES):
                raise ExprError('the symbolic field must have components '
                                'xi, tau, phi')
            return
        for name, component in zip(COMPONENT_NAMES, self.components):
            for atom in component.atoms():
                if not isinstance(atom, BaseVar):
                    raise ExprError(f'component {name} of a point vector field '
                                    f'may only depend on x, y, u, not {atom}')

    @classmethod
    def symbolic_field(cls):
        return cls(*(Expr.from_atom(FnDeriv(name)) for name in COMPONENT_NAMES),
                   symbolic=True)

    @classmethod
    def from_components(cls, components):
        """Build a concrete field from a mapping name -> Expr."""
        return cls(*(components.get(name, ZERO) for name in COMPONENT_NAMES))

    @property
    def components(self):
        return (self.xi, self.tau, self.phi)

    @property
    def is_zero(self):
        return all(component.is_zero for component in self.components)

    def component(self, name):
        return getattr(self, name)

    def derivative(self, atom):
        """Value of an FnDeriv atom (e.g. xi_x_u) for a concrete field."""
        if self.symbolic:
            return Expr.from_atom(atom)
        value = self.component(atom.function)
        for variable in atom.variables:
            value = pdiff(value, variable)
        return value

    def derivative_bindings(self, atoms):
        """Map each FnDeriv atom among atoms to its value for this field."""
        return {atom: self.derivative(atom) for atom in atoms
                if isinstance(atom, FnDeriv)}

    def apply(self, expr):
        """Apply xi*d/dx + tau*d/dy + phi*d/du to an expression."""
        return (self.xi * pdiff(expr, 'x') + self.tau * pdiff(expr, 'y')
                + self.phi * pdiff(expr, 'u'))

    def _require_concrete(self, other):
        if self.symbolic or other.symbolic:
            raise ExprError('arithmetic is defined for concrete fields only')

    def __add__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        self._require_concrete(other)
        return VectorField(*(first + second for first, second
                             in zip(self.components, other.components)))

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self + (-other)

    def __mul__(self, factor):
        if not isinstance(factor, numbers.Rational):
            return NotImplemented
        self._require_concrete(self)
        return VectorField(*(component.scaled(Fraction(factor))
                             for component in self.components))

    __rmul__ = __mul__

    def to_text(self):
        """The .vf serialization, one assignment per line."""
        return '\n'.join(f'{name} = {component}' for name, component
                         in zip(COMPONENT_NAMES, self.components))

    def __str__(self):
        return ' '.join(f'{name} = {component}' for name, component
                        in zip(COMPONENT_NAMES, self.components))


def _as_jet(multi_index):
    if isinstance(multi_index, JetVar):
        return multi_index
    if all(axis in AXIS_DIGITS for axis in multi_index):
        return JetVar.from_axes(multi_index)
    return JetVar(multi_index)


@lru_cache(maxsize=512)
def _prolong_coefficient(field, jet):
    characteristic = (field.phi - field.xi * Expr.from_atom(U1)
                      - field.tau * Expr.from_atom(U2))
    derivative = characteristic
    for axis in jet.axes:
        derivative = total_derivative(derivative, axis)
    coefficient = (derivative
                   + field.xi * Expr.from_atom(jet.extended('x'))
                   + field.tau * Expr.from_atom(jet.extended('y')))
    if coefficient.max_jet_order() > 3:
        raise KernelInvariantError(f'order-4 jets survive in the prolongation '
                                   f'coefficient for u{jet.index}')
    return coefficient


def prolong_coefficient(field, multi_index):
    """Coefficient of d/du_J in the prolongation of a vector field.

    Computed from the characteristic Q = phi - xi*u1 - tau*u2 as
    D_J(Q) + xi*u_{J+x} + tau*u_{J+y}.

    Args:
        field:  VectorField, symbolic or concrete
        multi_index:  JetVar, digit string such as '112', or axes such as
            'xxy'; order 1 to 3

    Returns:
        Expr with jets of order at most 3
    """
    jet = _as_jet(multi_index)
    if jet.order > 3:
        raise ExprError(f'prolongation coefficients are computed up to order '
                        f'3, not for u{jet.index}')
    return _prolong_coefficient(field, jet)


def apply_pr3(field, expr):
    """Apply the third prolongation of a vector field to an expression.

    Args:
        field:  VectorField
        expr:  Expr with jets of order at most 3

    Returns:
        xi*e_x + tau*e_y + phi*e_u + sum over jets J of phi^J * e_{u_J}
    """
    if expr.max_jet_order() > 3:
        raise ExprError('the third prolongation acts on jets up to order 3')
    result = field.apply(expr)
    jets = set(expr.atoms_of_type(JetVar))
    # F3 and G depend on u1 even where u1 does not occur explicitly.
    if any(atom.depends_on('u1') for atom in expr.atoms_of_type(RhsDeriv)):
        jets.add(U1)
    for jet in sorted(jets, key=lambda jet: jet.sort_key):
        result = result + prolong_coefficient(field, jet) * pdiff(expr, jet)
    return result
