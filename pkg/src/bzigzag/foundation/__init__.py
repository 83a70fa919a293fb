"""Rational scalars, the root polynomial ring and exact linear algebra."""
from .rational import Rational, to_rational, parse_rational, format_rational
from .polynomial import (
    Realisation, Polynomial, cartan_entry, coxeter_m, simple_reflection_act,
    word_act, demazure, monomials, parse_polynomial, format_polynomial,
)
from .linalg import (
    Matrix, zeros, identity, from_rows, from_sparse, to_sparse, solve_linear,
    kernel_basis, kernel_matrix, rank, inverse, is_invertible, sparse_kernel,
    SparseEliminator,
)

CoxeterWord = tuple
from .laurent import Laurent
