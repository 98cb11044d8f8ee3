"""Shared fixtures and hypothesis strategies."""
from fractions import Fraction
from pathlib import Path

from hypothesis import strategies as st
import pytest

from lie_symmetry.detgen import determining_equations
from lie_symmetry.expr import U, X, Y, Expr, make_monomial
from lie_symmetry.parser import parse_expr
from lie_symmetry.pde_system import PdeSystem
from lie_symmetry.prolong import VectorField
from lie_symmetry.reference_transcriptions import (
    MODEL_SYSTEM_GENERAL_SOLUTION, MODEL_SYSTEM_GENERATORS)

DATA_DIR = Path(__file__).parent / 'data'


def field_from_strings(components):
    return VectorField(*(parse_expr(text) for text in components))


@pytest.fixture(scope='session')
def data_dir():
    return DATA_DIR


@pytest.fixture(scope='session')
def model_system():
    return PdeSystem.model()


@pytest.fixture(scope='session')
def model_equations(model_system):
    return determining_equations(model_system)


@pytest.fixture(scope='session')
def generators():
    return [field_from_strings(components)
            for components in MODEL_SYSTEM_GENERATORS]


@pytest.fixture(scope='session')
def general_solution():
    return [field_from_strings(components)
            for components in MODEL_SYSTEM_GENERAL_SOLUTION]


################################################################################
# Strategies
################################################################################
exponents = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def _base_polynomial(terms):
    return Expr({make_monomial({X: i, Y: j, U: k}): coefficient
                 for (i, j, k), coefficient in terms.items()})


base_polynomials = st.dictionaries(exponents, coefficients,
                                   max_size=4).map(_base_polynomial)

small_polynomials = st.dictionaries(
    st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(0, 1)),
    st.integers(-3, 3).map(Fraction), max_size=3).map(_base_polynomial)

vector_fields = st.builds(VectorField, small_polynomials, small_polynomials,
                          small_polynomials)
