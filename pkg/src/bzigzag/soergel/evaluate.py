"""The functor from diagrams to bimodule maps.

Words go to tensor products of the U_j, generators to signed structure maps,
every 2m-valent vertex to zero, and a polynomial box to multiplication by the
image of the polynomial in the centre of B.  The scalars attached to dots and
trivalent vertices are parameters; the defaults are the solved values.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from flint import fmpq, fmpq_mat

from .. import chains
from ..bimod import BimoduleMap, GradedBimodule
from ..foundation.polynomial import Polynomial
from ..zigzag import build_algebra
from .diagram import Diagram


@dataclass(frozen=True)
class Scalars:
    """Per-colour scalars: split a_j, dot_end b_j, dot_start c_j, merge d_j."""

    def a(self, j: int) -> fmpq:
        return fmpq(1 if j % 2 else -1)

    def b(self, j: int) -> fmpq:
        return fmpq(1 if j % 2 else -1)

    def c(self, j: int) -> fmpq:
        return fmpq(1)

    def d(self, j: int) -> fmpq:
        return fmpq(1)


SOLVED = Scalars()


def polynomial_image(f: Polynomial, n: int):
    """Image of f under a_k -> root_image(k), an element of the centre of B."""
    alg = build_algebra(n)
    roots = {}
    out = alg.zero()
    for exps, c in f.terms.items():
        term = alg.unit() * c
        for k, e in enumerate(exps, start=1):
            if e == 0:
                continue
            if k > n:
                raise ValueError(f"variable a{k} out of range for rank {n}")
            if k not in roots:
                roots[k] = alg.root_image(k)
            for _ in range(e):
                term = term * roots[k]
        out = out + term
    return out


def _generator_matrix(t: Diagram, n: int, sc: Scalars) -> fmpq_mat:
    op = t.op
    if op == "id":
        return chains.identity_map(chains.chain(n, t.dom))
    if op == "crossing":
        return fmpq_mat(chains.chain(n, t.cod).dim, chains.chain(n, t.dom).dim)
    if op == "poly":
        return chains.central_map(n, polynomial_image(t.args[0], n))
    j = t.args[0]
    if op == "dot_end":
        return chains.multiply_map(n, j) * sc.b(j)
    if op == "dot_start":
        return chains.coproduct_map(n, j) * sc.c(j)
    if op == "split":
        return chains.split_map(n, j) * sc.a(j)
    if op == "merge":
        return chains.merge_map(n, j) * sc.d(j)
    raise ValueError(f"unknown generator {op!r}")


@lru_cache(maxsize=4096)
def _matrix(t: Diagram, n: int, sc: Scalars) -> fmpq_mat:
    if t.op == "comp":
        outer, inner = t.parts
        return _matrix(outer, n, sc) * _matrix(inner, n, sc)
    if t.op == "tens":
        f, g = t.parts
        return chains.tensor_maps(n, _matrix(f, n, sc), f.dom, f.cod, _matrix(g, n, sc), g.dom, g.cod)
    if t.op == "lin":
        out = fmpq_mat(chains.chain(n, t.cod).dim, chains.chain(n, t.dom).dim)
        for c, p in t.parts:
            if c != 0:
                out += _matrix(p, n, sc) * c
        return out
    return _generator_matrix(t, n, sc)


def evaluation_rank(t: Diagram, n: int | None) -> int:
    need = max(t.colours | {2})
    if n is None:
        return need
    if need > n and t.colours:
        raise ValueError(f"diagram uses colour {max(t.colours)} beyond rank {n}")
    return n


def evaluate(t: Diagram, n: int | None = None, scalars: Scalars = SOLVED) -> BimoduleMap:
    """Bimodule map of a diagram at rank n (default: the largest colour used, at least 2)."""
    n = evaluation_rank(t, n)
    src = GradedBimodule.from_word(n, t.dom)
    tgt = GradedBimodule.from_word(n, t.cod)
    return BimoduleMap(src, tgt, _matrix(t, n, scalars), t.degree)


def evaluate_matrix(t: Diagram, n: int | None = None, scalars: Scalars = SOLVED) -> fmpq_mat:
    return _matrix(t, evaluation_rank(t, n), scalars)
