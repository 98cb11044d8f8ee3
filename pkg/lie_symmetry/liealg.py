"""Lie brackets, structure constants and symmetry verification."""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
import logging

import numpy as np
import pandas as pd

from .detgen import determining_equations, field_residuals
from .errors import ExprError, LinearDependenceError, NotClosedError
from .prolong import VectorField
from .solver import Span, field_from_residual
from .workers import parallel_map

logger = logging.getLogger(__name__)


def bracket(first, second):
    """Commutator [V, W] of two concrete vector fields.

    Each component is V(W^i) - W(V^i), where a field acts on functions as
    xi*d/dx + tau*d/dy + phi*d/du.
    """
    if first.symbolic or second.symbolic:
        raise ExprError('brackets are defined for concrete vector fields only')
    return VectorField(*(first.apply(w) - second.apply(v) for v, w
                         in zip(first.components, second.components)))


@dataclass(frozen=True)
class StructureConstants:
    """Structure constants c[i, j, k] with [e_i, e_j] = sum_k c[i, j, k] e_k.

    Attributes:
        basis:  Tuple of VectorFields e_1, ..., e_n
        tensor:  numpy array of shape (n, n, n) holding Fractions
    """
    basis: tuple
    tensor: np.ndarray

    @property
    def dimension(self):
        return len(self.basis)

    def nonzero(self):
        """Nonzero constants with i < j, as 0-based (i, j, k, value)."""
        size = self.dimension
        return [(i, j, k, self.tensor[i, j, k])
                for i in range(size) for j in range(i + 1, size)
                for k in range(size) if self.tensor[i, j, k] != 0]

    def to_frame(self):
        """Nonzero constants as a DataFrame with 1-based indices."""
        rows = [{'i': i + 1, 'j': j + 1, 'k': k + 1, 'c': str(value)}
                for i, j, k, value in self.nonzero()]
        return pd.DataFrame(rows, columns=['i', 'j', 'k', 'c'])

    def is_antisymmetric(self):
        return bool(np.all(self.tensor == -self.tensor.transpose(1, 0, 2)))

    def lines(self):
        return [f'{i + 1} {j + 1} {k + 1}: {value}'
                for i, j, k, value in self.nonzero()]


def structure_constants(basis, threads=1):
    """Express every bracket of basis fields in the basis.

    Args:
        basis:  List of linearly independent concrete VectorFields
        threads:  Worker threads for the pairwise brackets

    Returns:
        StructureConstants

    Raises:
        LinearDependenceError:  If the fields are linearly dependent
        NotClosedError:  If some bracket leaves the span of the basis
    """
    basis = tuple(basis)
    span = Span(basis)
    if not span.is_independent:
        raise LinearDependenceError(f'the {len(basis)} basis fields span a '
                                    f'space of dimension {span.rank}')
    size = len(basis)
    tensor = np.full((size, size, size), Fraction(0), dtype=object)
    pairs = list(combinations(range(size), 2))
    brackets = parallel_map(lambda pair: bracket(basis[pair[0]],
                                                 basis[pair[1]]),
                            pairs, threads)
    for (i, j), value in zip(pairs, brackets):
        coordinates, residual = span.decompose(value)
        if residual:
            raise NotClosedError(i, j, field_from_residual(residual))
        for k, coordinate in enumerate(coordinates):
            tensor[i, j, k] = coordinate
            tensor[j, i, k] = -coordinate
    logger.debug('%d brackets expressed in a basis of size %d', len(pairs),
                 size)
    return StructureConstants(basis, tensor)


def jacobi_check(constants):
    """Check the Jacobi identity on structure constants.

    Args:
        constants:  StructureConstants, or a numpy array of shape (n, n, n)

    Returns:
        True if sum_m c[i,j,m] c[m,k,l] + c[j,k,m] c[m,i,l]
        + c[k,i,m] c[m,j,l] vanishes for all i, j, k, l
    """
    tensor = getattr(constants, 'tensor', constants)
    if tensor.size == 0:
        return True
    # composed[i, j, k, l] = sum_m c[i, j, m] c[m, k, l]
    composed = np.tensordot(tensor, tensor, axes=([2], [0]))
    cyclic = (composed + composed.transpose(1, 2, 0, 3)
              + composed.transpose(2, 0, 1, 3))
    return bool(np.all(cyclic == 0))


@dataclass(frozen=True)
class SymmetryVerdict:
    """Outcome of checking a vector field against the determining system.

    Attributes:
        holds:  True if the field is a symmetry
        violations:  List of (DeterminingEquation, nonzero residual Expr)
    """
    holds: bool
    violations: list

    def __bool__(self):
        return self.holds


def is_symmetry(system, vector_field, determining_system=None):
    """Check whether a concrete vector field is a symmetry of a system.

    Args:
        system:  PdeSystem
        vector_field:  Concrete VectorField
        determining_system:  Precomputed DeterminingSystem of system, if any

    Returns:
        SymmetryVerdict
    """
    if vector_field.symbolic:
        raise ExprError('only concrete vector fields can be verified')
    if determining_system is None:
        determining_system = determining_equations(system)
    violations = [(equation, residual) for equation, residual
                  in field_residuals(determining_system, vector_field)
                  if not residual.is_zero]
    return SymmetryVerdict(not violations, violations)
