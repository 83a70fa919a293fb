"""Catalogue of the defining relations of the type B diagram category.

Each relation is a family of equalities between diagrams indexed by a colour
assignment.  ``check_relation`` evaluates both sides at rank n and compares
the matrices exactly.  A right-hand side of ``None`` means the zero map.
"""
from __future__ import annotations

import itertools
import time
from collections import deque
from dataclasses import dataclass
from typing import Callable, Sequence

from ..foundation.polynomial import (
    Polynomial, coxeter_m, demazure, format_polynomial, monomials, simple_reflection_act,
)
from ..foundation.linalg import is_zero
from .diagram import (
    Diagram, DiagramTypeError, alternating, barbell, cap, comp, crossing, cup, dot_end, dot_start,
    dotted_vertex, identity, jw2, jw3, lin, merge, mirror, needle, poly, split, tens,
)
from .evaluate import SOLVED, Scalars, evaluate_matrix, polynomial_image

Equality = tuple[str, Diagram, Diagram | None]


@dataclass(frozen=True)
class Relation:
    ident: str
    title: str
    pattern: str
    build: Callable[..., list[Equality]]
    uses_rank: bool = False  # build takes n as a keyword


class RelationError(ValueError):
    """Colour assignment does not instantiate the relation's pattern at this rank."""


# colour patterns


def _distant(s, t):
    return s != t and coxeter_m(s, t) == 2


PATTERNS = {
    "one": (1, lambda c, n: True),
    "m2": (2, lambda c, n: _distant(*c)),
    "m3": (2, lambda c, n: c[0] != c[1] and coxeter_m(*c) == 3),
    "m4": (2, lambda c, n: c[0] != c[1] and coxeter_m(*c) == 4),
    "B2xA1": (3, lambda c, n: {c[0], c[1]} == {1, 2} and c[2] >= 4),
    "A2xA1": (3, lambda c, n: coxeter_m(c[0], c[1]) == 3 and _distant(c[0], c[2]) and _distant(c[1], c[2])),
    "A1xA1xA1": (3, lambda c, n: c[0] < c[1] < c[2] and all(_distant(x, y) for x, y in itertools.combinations(c, 2))),
    "A3": (3, lambda c, n: c[0] >= 2 and c[1] == c[0] + 1 and c[2] == c[0] + 2),
    "B3": (3, lambda c, n: tuple(c) == (1, 2, 3)),
}


def admissible(pattern: str, colours: Sequence[int], n: int) -> bool:
    size, ok = PATTERNS[pattern]
    return (len(colours) == size and all(1 <= c <= n for c in colours)
            and len(set(colours)) == size and ok(tuple(colours), n))


def instances(pattern: str, n: int) -> list[tuple[int, ...]]:
    size, _ = PATTERNS[pattern]
    return [c for c in itertools.permutations(range(1, n + 1), size) if admissible(pattern, c, n)]


# one-colour relations


def _barbell(s):
    from ..foundation.polynomial import Polynomial as P
    return [(f"barbell {s}", barbell(s), poly(P.root(s, s)))]


def forcing_polynomials(n: int) -> list[Polynomial]:
    """The spanning set {1} u {a_k} u {a_k a_l} used for polynomial forcing."""
    return [Polynomial.constant(n, 1)] + monomials(n, 1) + monomials(n, 2)


def _forcing(s, *, n):
    out = []
    for f in forcing_polynomials(n):
        lhs = tens(poly(f), identity(s))
        terms = [(1, tens(identity(s), poly(simple_reflection_act(s, f))))]
        df = demazure(s, f)
        if not df.is_zero():
            terms.append((1, comp(dot_start(s), poly(df), dot_end(s))))
        out.append((f"forcing {s} f={format_polynomial(f)}", lhs, lin(terms)))
    return out


def _needle(s):
    return [(f"needle {s}", needle(s), None),
            (f"nilpotent {s}", comp(merge(s), split(s)), None)]


def _frobenius_h(s):
    i = identity(s)
    h = comp(split(s), merge(s))
    return [(f"H=I left {s}", comp(tens(i, merge(s)), tens(split(s), i)), h),
            (f"H=I right {s}", comp(tens(merge(s), i), tens(i, split(s))), h)]


def _frobenius_unit(s):
    i = identity(s)
    return [(f"unit left {s}", comp(merge(s), tens(dot_start(s), i)), i),
            (f"unit right {s}", comp(merge(s), tens(i, dot_start(s))), i),
            (f"counit left {s}", comp(tens(dot_end(s), i), split(s)), i),
            (f"counit right {s}", comp(tens(i, dot_end(s)), split(s)), i)]


def _assoc(s):
    i = identity(s)
    return [(f"associativity {s}", comp(merge(s), tens(merge(s), i)), comp(merge(s), tens(i, merge(s))))]


def _coassoc(s):
    i = identity(s)
    return [(f"coassociativity {s}", comp(tens(split(s), i), split(s)), comp(tens(i, split(s)), split(s)))]


def _counit(s):
    return _frobenius_unit(s)[2:]


def _unit(s):
    return _frobenius_unit(s)[:2]


def _biadjoint(s):
    i = identity(s)
    return [(f"zigzag left {s}", comp(tens(i, cap(s)), tens(cup(s), i)), i),
            (f"zigzag right {s}", comp(tens(cap(s), i), tens(i, cup(s))), i)]


def _rotate_merge(s):
    i = identity(s)
    return [(f"merge by rotation left {s}", comp(tens(cap(s), i), tens(i, split(s))), merge(s)),
            (f"merge by rotation right {s}", comp(tens(i, cap(s)), tens(split(s), i)), merge(s))]


def _rotate_split(s):
    i = identity(s)
    return [(f"split by rotation left {s}", comp(tens(i, merge(s)), tens(cup(s), i)), split(s)),
            (f"split by rotation right {s}", comp(tens(merge(s), i), tens(i, cup(s))), split(s))]


def _rotate_dot_end(s):
    return [(f"dot_end by rotation left {s}", comp(cap(s), tens(dot_start(s), identity(s))), dot_end(s)),
            (f"dot_end by rotation right {s}", comp(cap(s), tens(identity(s), dot_start(s))), dot_end(s))]


def _rotate_dot_start(s):
    return [(f"dot_start by rotation left {s}", comp(tens(dot_end(s), identity(s)), cup(s)), dot_start(s)),
            (f"dot_start by rotation right {s}", comp(tens(identity(s), dot_end(s)), cup(s)), dot_start(s))]


# two-colour relations


def _two_colour_assoc(s, t):
    """A merge feeding the 2m-valent vertex equals the vertex pushed through to a merge on top."""
    m = coxeter_m(s, t)
    bottom = alternating(s, t, m)
    lhs = comp(crossing(s, t), tens(merge(s), identity(*bottom[1:])))
    top_t = alternating(t, s, m)
    last = top_t[-1]
    rhs = comp(tens(identity(*top_t[:-1]), merge(last)),
               tens(crossing(s, t), identity(last)),
               tens(identity(s), crossing(s, t)))
    return [(f"two-colour associativity ({s},{t})", lhs, rhs)]


def _dot_crossing_m2(s, t):
    return [(f"dot through crossing ({s},{t})",
             comp(crossing(s, t), tens(dot_start(s), identity(t))), tens(identity(t), dot_start(s)))]


def _dot_vertex(s, t):
    rhs = jw2(s, t) if coxeter_m(s, t) == 3 else jw3(s, t)
    lhs = dotted_vertex(s, t)
    return [(f"dotted vertex ({s},{t})", lhs, rhs),
            (f"dotted vertex mirrored ({s},{t})", mirror(lhs), mirror(rhs))]


# Zamolodchikov relations: two chains of braid moves between reduced words


def _moves(word: tuple, colours: Sequence[int]):
    for s in colours:
        for t in colours:
            if s == t:
                continue
            m = coxeter_m(s, t)
            alt = alternating(s, t, m)
            for p in range(len(word) - m + 1):
                if word[p:p + m] == alt:
                    yield p, s, t, word[:p] + alternating(t, s, m) + word[p + m:]


def _move_path(start: tuple, goal: tuple, colours: Sequence[int], reverse: bool) -> list[tuple]:
    prev = {start: None}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        if w == goal:
            break
        moves = list(_moves(w, colours))
        if reverse:
            moves.reverse()
        for p, s, t, nxt in moves:
            if nxt not in prev:
                prev[nxt] = (w, p, s, t)
                queue.append(nxt)
    if goal not in prev:
        raise RelationError(f"{goal} is not reachable from {start} by braid moves")
    path = []
    w = goal
    while prev[w] is not None:
        w0, p, s, t = prev[w]
        path.append((w0, p, s, t))
        w = w0
    return path[::-1]


def _path_term(start: tuple, path) -> Diagram:
    steps = []
    for w, p, s, t in path:
        m = coxeter_m(s, t)
        parts = [crossing(s, t)]
        if p:
            parts.insert(0, identity(*w[:p]))
        if p + m < len(w):
            parts.append(identity(*w[p + m:]))
        steps.append(tens(*parts))
    return comp(*reversed(steps)) if steps else identity(*start)


def _zamolodchikov(start: tuple, goal: tuple, label: str) -> list[Equality]:
    colours = sorted(set(start))
    p1 = _move_path(start, goal, colours, reverse=False)
    p2 = _move_path(start, goal, colours, reverse=True)
    if p1 == p2:
        raise RelationError(f"only one braid-move path found for {label}")
    return [(label, _path_term(start, p1), _path_term(start, p2))]


def _zam_b2a1(s, t, u):
    return _zamolodchikov((u, s, t, s, t), (t, s, t, s, u), f"Zamolodchikov B2xA1 ({s},{t},{u})")


def _zam_a2a1(s, t, u):
    return _zamolodchikov((u, s, t, s), (t, s, t, u), f"Zamolodchikov A2xA1 ({s},{t},{u})")


def _zam_a1a1a1(s, t, u):
    return _zamolodchikov((s, t, u), (u, t, s), f"Zamolodchikov A1xA1xA1 ({s},{t},{u})")


def _zam_a3(s, t, u):
    return _zamolodchikov((s, t, s, u, t, s), (u, t, u, s, t, u), f"Zamolodchikov A3 ({s},{t},{u})")


def _zam_b3(s, t, u):
    return _zamolodchikov((s, t, u) * 3, (u, t, s) * 3, f"Zamolodchikov B3 ({s},{t},{u})")


CATALOGUE: dict[str, Relation] = {r.ident: r for r in [
    Relation("3.1", "barbell", "one", _barbell),
    Relation("3.2", "polynomial forcing", "one", _forcing, uses_rank=True),
    Relation("3.3", "needle", "one", _needle),
    Relation("3.4", "Frobenius associativity", "one", _frobenius_h),
    Relation("3.5", "Frobenius unit", "one", _frobenius_unit),
    Relation("3.6", "two-colour associativity m=3", "m3", _two_colour_assoc),
    Relation("3.7", "two-colour associativity m=4", "m4", _two_colour_assoc),
    Relation("3.8", "dot through a 4-valent crossing", "m2", _dot_crossing_m2),
    Relation("3.9", "dotted 6-valent vertex", "m3", _dot_vertex),
    Relation("3.10", "dotted 8-valent vertex", "m4", _dot_vertex),
    Relation("3.11", "Zamolodchikov B2xA1", "B2xA1", _zam_b2a1),
    Relation("3.12", "Zamolodchikov A2xA1", "A2xA1", _zam_a2a1),
    Relation("3.13", "Zamolodchikov A1xA1xA1", "A1xA1xA1", _zam_a1a1a1),
    Relation("3.14", "Zamolodchikov A3", "A3", _zam_a3),
    Relation("3.15", "Zamolodchikov B3", "B3", _zam_b3),
    Relation("3.16", "associativity", "one", _assoc),
    Relation("3.17", "coassociativity", "one", _coassoc),
    Relation("3.18", "counit", "one", _counit),
    Relation("3.19", "unit", "one", _unit),
    Relation("3.20", "biadjointness", "one", _biadjoint),
    Relation("3.21", "merge is a rotated split", "one", _rotate_merge),
    Relation("3.22", "split is a rotated merge", "one", _rotate_split),
    Relation("3.23", "dot_end is a rotated dot_start", "one", _rotate_dot_end),
    Relation("3.24", "dot_start is a rotated dot_end", "one", _rotate_dot_start),
]}


def relation_ids() -> list[str]:
    return sorted(CATALOGUE, key=lambda r: tuple(int(x) for x in r.split(".")))


def _normalise_id(ident) -> str:
    ident = str(ident).strip().strip("()")
    if ident not in CATALOGUE:
        raise KeyError(f"unknown relation {ident!r}")
    return ident


def equalities(ident, colours: Sequence[int], n: int) -> list[Equality]:
    rel = CATALOGUE[_normalise_id(ident)]
    colours = tuple(colours)
    if not admissible(rel.pattern, colours, n):
        raise RelationError(f"colours {colours} do not instantiate pattern {rel.pattern} "
                            f"of relation {rel.ident} at rank {n}")
    if rel.uses_rank:
        return rel.build(*colours, n=n)
    return rel.build(*colours)


@dataclass
class RelationResult:
    ident: str
    colours: tuple
    n: int
    failures: list[str]
    zero_sides: int
    checked: int
    seconds: float

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def name(self) -> str:
        return f"relation {self.ident} colours {self.colours} n={self.n}"


def run_relation(ident, colours: Sequence[int], n: int, scalars: Scalars = SOLVED) -> RelationResult:
    t0 = time.perf_counter()
    failures = []
    zeros = 0
    eqs = equalities(ident, colours, n)
    for label, lhs, rhs in eqs:
        if rhs is not None and (lhs.dom, lhs.cod, lhs.degree) != (rhs.dom, rhs.cod, rhs.degree):
            raise DiagramTypeError(f"{label}: the two sides have different boundaries or degrees")
        L = evaluate_matrix(lhs, n, scalars)
        diff = L if rhs is None else L - evaluate_matrix(rhs, n, scalars)
        if not is_zero(diff):
            failures.append(label)
        elif is_zero(L):
            zeros += 1
    return RelationResult(_normalise_id(ident), tuple(colours), n, failures, zeros, len(eqs),
                          time.perf_counter() - t0)


def check_relation(ident, colours, n: int | None = None, scalars: Scalars = SOLVED) -> bool:
    """True when every equality of the relation holds for these colours at rank n.

    ``colours`` may be a single index; n defaults to max(colours, 2)
    (5 is the smallest rank for three pairwise distant colours).
    """
    if isinstance(colours, int):
        colours = (colours,)
    colours = tuple(colours)
    if n is None:
        n = max(max(colours), 2)
    return run_relation(ident, colours, n, scalars).ok


def minimal_rank(ident) -> int | None:
    """Smallest rank at which the relation has an instance (up to 8)."""
    rel = CATALOGUE[_normalise_id(ident)]
    for n in range(2, 9):
        if instances(rel.pattern, n):
            return n
    return None


def relation_suite(n: int, idents: Sequence[str] | None = None, scalars: Scalars = SOLVED
                   ) -> tuple[list[RelationResult], list[str]]:
    """Run every instance at rank n; returns results and the ids with no instance."""
    results, skipped = [], []
    for ident in idents or relation_ids():
        insts = instances(CATALOGUE[ident].pattern, n)
        if not insts:
            skipped.append(ident)
        for c in insts:
            results.append(run_relation(ident, c, n, scalars))
    return results, skipped


def degree_four_images_vanish(n: int) -> bool:
    """Every monomial of polynomial degree 2 (grading 4) maps to zero in B."""
    return all(polynomial_image(f, n).is_zero() for f in monomials(n, 2))
