"""Images of the diagrammatic Rouquier complexes F_s and E_s."""
from __future__ import annotations

from ..komplex import BoundedComplex, atomize_only, find_chain_isomorphism, rouquier_complex
from ..pieces import full_piece
from .diagram import dot_end, dot_start
from .evaluate import evaluate_matrix


def soergel_rouquier(n: int, j: int, sign: str = "+") -> BoundedComplex:
    """F_s (sign '+'): U_j in degree 0 -> B(1) in degree 1 by the dot_end map.

    E_s (sign '-'): B(-1) in degree -1 -> U_j in degree 0 by the dot_start map.
    """
    if not 1 <= j <= n:
        raise IndexError(f"index {j} out of range 1..{n}")
    if sign in ("+", 1, "plus"):
        return BoundedComplex(n, {0: [full_piece(n, (j,))], 1: [full_piece(n, (), 1)]},
                              {0: {(0, 0): evaluate_matrix(dot_end(j), n)}})
    if sign in ("-", -1, "minus"):
        return BoundedComplex(n, {-1: [full_piece(n, (), -1)], 0: [full_piece(n, (j,))]},
                              {-1: {(0, 0): evaluate_matrix(dot_start(j), n)}})
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def matching_rouquier(n: int, j: int, sign: str = "+") -> BoundedComplex:
    """R_j[-1](1) for '+', R'_j[1](-1) for '-'."""
    if sign in ("+", 1, "plus"):
        return rouquier_complex(n, j, "+").shift(-1).twist(1)
    return rouquier_complex(n, j, "-").shift(1).twist(-1)


def compare_with_rouquier(n: int, j: int, sign: str = "+", seed: int = 0):
    """Search for a chain isomorphism after splitting both complexes into atoms.

    Splitting is a change of basis in each degree, so an isomorphism of the
    atomized complexes is one of the originals.  Returns (ChainMap or None,
    failure bound).
    """
    C = atomize_only(soergel_rouquier(n, j, sign))
    D = atomize_only(matching_rouquier(n, j, sign))
    return find_chain_isomorphism(C, D, seed)
