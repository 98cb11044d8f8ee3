"""The PDE system u2 = F1*u1 + F2*u1^2 + F3*u1^3, u111 = G."""
from dataclasses import dataclass

from .errors import DegenerateSystemError, ExprError
from .expr import (ONE, RHS_ARGUMENTS, U1, ZERO, Expr, RhsDeriv, pdiff,
                   replace)

MODEL_SYSTEM_TEXT = '''\
# u2 = u1^2, u111 = 0
F1 = 0
F2 = 1
F3 = 0
G = 0
'''


@dataclass(frozen=True)
class PdeSystem:
    """Right-hand sides of the system.

    Attributes:
        F1, F2:  Exprs over x, y, u
        F3, G:  Exprs over x, y, u, u1
    A generic system keeps each right-hand side as its RhsDeriv atom.
    """
    F1: Expr
    F2: Expr
    F3: Expr
    G: Expr

    def __post_init__(self):
        for name in RHS_ARGUMENTS:
            object.__setattr__(self, name, Expr.coerce(getattr(self, name)))
        if self.F2.is_zero:
            raise DegenerateSystemError('F2 vanishes identically')

    @classmethod
    def model(cls):
        """The model system u2 = u1^2, u111 = 0."""
        return cls(ZERO, ONE, ZERO, ZERO)

    @classmethod
    def generic(cls):
        """The system with unspecified right-hand sides."""
        return cls(*(Expr.from_atom(RhsDeriv(name)) for name in RHS_ARGUMENTS))

    @property
    def is_concrete(self):
        return not any(self.rhs(name).atoms_of_type(RhsDeriv)
                       for name in RHS_ARGUMENTS)

    def rhs(self, name):
        return getattr(self, name)

    def first_equation_rhs(self):
        """F = F1*u1 + F2*u1^2 + F3*u1^3."""
        u1 = Expr.from_atom(U1)
        return self.F1 * u1 + self.F2 * u1 ** 2 + self.F3 * u1 ** 3

    def rhs_derivative(self, atom):
        """Value of a RhsDeriv atom in this system."""
        value = self.rhs(atom.function)
        for variable in atom.variables:
            value = pdiff(value, variable)
        return value

    def to_text(self):
        return '\n'.join(f'{name} = {self.rhs(name)}' for name in RHS_ARGUMENTS)

    def __str__(self):
        return self.to_text()


def specialize(expr, system):
    """Replace RhsDeriv atoms by the derivatives of the system's right-hand
    sides.

    Args:
        expr:  Expr (or RationalFn) written for the generic system
        system:  PdeSystem, concrete or generic

    Returns:
        The same kind of object, specialized to the system
    """
    atoms = (expr.atoms() if isinstance(expr, Expr)
             else expr.numerator.atoms() | expr.denominator.atoms())
    mapping = {}
    for atom in atoms:
        if isinstance(atom, RhsDeriv):
            mapping[atom] = system.rhs_derivative(atom)
    if not mapping:
        return expr
    if isinstance(expr, Expr):
        return replace(expr, mapping)
    try:
        return expr.replace(mapping)
    except ExprError as error:
        raise DegenerateSystemError(
            f'denominator vanishes after specialization: {error}') from error
