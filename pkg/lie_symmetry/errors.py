"""Exceptions raised by the symbolic pipeline.

Every exception carries the exit status that the command-line front end uses
when the exception ends a run:
  - 1:  a verification failed (the input is well formed, but the claim being
      checked does not hold)
  - 2:  the input could not be parsed
  - 3:  the input violates a nondegeneracy condition
Internal invariant violations use status 4, which is never expected in a
correct build.
"""


class LieSymmetryError(Exception):
    """Base class of all errors raised by the package."""
    exit_status = 4


class ExprError(LieSymmetryError):
    """Malformed expression, unbound atom, or exhausted jet-order budget."""
    exit_status = 2


class ParseError(LieSymmetryError):
    """Syntax error in an expression, system file or vector-field file.

    Attributes:
        message:  Human-readable description of the problem
        span:  SourceSpan of the offending token; errors about the file as a
            whole (e.g., a missing assignment) point at its end
    """
    exit_status = 2

    def __init__(self, message, span=None):
        self.message = message
        self.span = span
        if span is not None:
            message = f'{message} at {span}'
        super().__init__(message)


class DegenerateSystemError(LieSymmetryError):
    """The coefficient F2 of u1^2 vanishes identically."""
    exit_status = 3


class PivotVanishesError(LieSymmetryError):
    """A divisor required by the elimination is identically zero.

    Attributes:
        symbol:  Derivative symbol the elimination was solving for
        pivot:  The pivot as a polynomial in F1, F2, F3, G and their
            derivatives, which the given system makes vanish, or None when
            it is unknown
        origin:  Origin of the coefficient the symbol was read from, or None
    """
    exit_status = 3

    def __init__(self, symbol, pivot=None, origin=None):
        self.symbol = symbol
        self.pivot = pivot
        self.origin = origin
        message = f'cannot solve for {symbol}: its coefficient vanishes'
        if origin is not None:
            message += f' in {origin}'
        if pivot is not None:
            message += f'; in general the coefficient is {pivot}'
        super().__init__(message)


class SingularPointError(LieSymmetryError):
    """A pivot obligation of the reduction table fails at a chosen point."""
    exit_status = 3

    def __init__(self, point, pivots):
        self.point = point
        self.pivots = pivots
        listed = ', '.join(str(pivot) for pivot in pivots)
        super().__init__(f'pivots vanish at the point {point}: {listed}; '
                         'choose a different point')


class NotClosedError(LieSymmetryError):
    """The bracket of two basis fields leaves the span of the basis.

    Attributes:
        i, j:  Zero-based indices of the basis fields
        residual:  VectorField left over after projecting the bracket onto
            the span of the basis
    """
    exit_status = 1

    def __init__(self, i, j, residual):
        self.i = i
        self.j = j
        self.residual = residual
        super().__init__(f'bracket of basis fields {i + 1} and {j + 1} is not '
                         f'in the span; residual {residual}')


class LinearDependenceError(LieSymmetryError):
    """A list of vector fields given as a basis is linearly dependent."""
    exit_status = 1


class IncompleteTableError(LieSymmetryError):
    """Some derivative symbols could not be expressed over the initial
    coefficients.

    Attributes:
        unreduced:  Sorted list of the FnDeriv atoms left unreduced
        table:  The partial ReductionTable built before completion stalled
    """
    exit_status = 1

    def __init__(self, unreduced, table=None):
        self.unreduced = unreduced
        self.table = table
        listed = ', '.join(str(symbol) for symbol in unreduced)
        super().__init__(f'{len(unreduced)} derivative symbols could not be '
                         f'reduced: {listed}')


class KernelInvariantError(LieSymmetryError):
    """An internal invariant of the symbolic kernel was violated."""
    exit_status = 4
