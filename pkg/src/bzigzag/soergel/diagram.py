"""Soergel diagrams as terms of a free monoidal category.

A term is a generator, a vertical composite ``comp(outer, inner)`` (inner is
applied first, diagrams read bottom to top), a horizontal juxtaposition
``tens(left, right)`` or a rational linear combination ``lin``.  Objects are
words in the colours 1..n.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from flint import fmpq

from ..foundation.polynomial import Polynomial, cartan_entry as a, coxeter_m, format_polynomial
from ..foundation.rational import format_rational, to_rational

GENERATORS = ("id", "dot_start", "dot_end", "split", "merge", "crossing", "poly")


class DiagramTypeError(ValueError):
    """Ill-typed diagram: mismatched boundary words, degrees or arity."""


@dataclass(frozen=True)
class Diagram:
    op: str
    args: tuple = ()
    parts: tuple = ()
    dom: tuple = ()
    cod: tuple = ()
    degree: int = 0

    def __str__(self):
        return to_text(self)

    @property
    def colours(self) -> set[int]:
        out = set(self.dom) | set(self.cod)
        if self.op in ("id", "dot_start", "dot_end", "split", "merge", "crossing"):
            out |= set(self.args)
        for p in self.parts:
            out |= p.colours if isinstance(p, Diagram) else p[1].colours
        return out


def alternating(s: int, t: int, m: int) -> tuple[int, ...]:
    return tuple(s if i % 2 == 0 else t for i in range(m))


def _colour(j) -> int:
    if not isinstance(j, int) or isinstance(j, bool) or j < 1:
        raise DiagramTypeError(f"colours are positive integers, got {j!r}")
    return j


def identity(*word: int) -> Diagram:
    w = tuple(_colour(j) for j in word)
    return Diagram("id", w, (), w, w, 0)


def dot_start(j: int) -> Diagram:
    return Diagram("dot_start", (_colour(j),), (), (), (j,), 1)


def dot_end(j: int) -> Diagram:
    return Diagram("dot_end", (_colour(j),), (), (j,), (), 1)


def split(j: int) -> Diagram:
    return Diagram("split", (_colour(j),), (), (j,), (j, j), -1)


def merge(j: int) -> Diagram:
    return Diagram("merge", (_colour(j),), (), (j, j), (j,), -1)


def crossing(s: int, t: int) -> Diagram:
    """The 2m-valent vertex from the alternating word starting at s to the one starting at t."""
    _colour(s), _colour(t)
    if s == t:
        raise DiagramTypeError(f"crossing needs two distinct colours, got ({s},{t})")
    m = coxeter_m(s, t)
    return Diagram("crossing", (s, t), (), alternating(s, t, m), alternating(t, s, m), 0)


def poly(f: Polynomial) -> Diagram:
    if f.is_zero():
        raise DiagramTypeError("a polynomial box needs a nonzero polynomial")
    d = f.degree()
    if d is None:
        raise DiagramTypeError(f"polynomial {format_polynomial(f)} is not homogeneous")
    # store over the smallest ring containing f so equal boxes compare equal
    k = max((i + 1 for e in f.terms for i, x in enumerate(e) if x), default=1)
    if k != f.nvars:
        f = Polynomial(k, {tuple(e[:k]) + (0,) * (k - len(e[:k])): c for e, c in f.terms.items()})
    return Diagram("poly", (f,), (), (), (), d)


def comp(*terms: Diagram) -> Diagram:
    """Vertical composite; the rightmost term is applied first."""
    if not terms:
        raise DiagramTypeError("comp needs at least one term")
    out = terms[-1]
    for outer in reversed(terms[:-1]):
        if outer.dom != out.cod:
            raise DiagramTypeError(
                f"cannot compose: {to_text(outer)} expects {_word(outer.dom)} "
                f"but {to_text(out)} produces {_word(out.cod)}")
        out = Diagram("comp", (), (outer, out), out.dom, outer.cod, outer.degree + out.degree)
    return out


def tens(*terms: Diagram) -> Diagram:
    if not terms:
        raise DiagramTypeError("tens needs at least one term")
    out = terms[0]
    for right in terms[1:]:
        out = Diagram("tens", (), (out, right), out.dom + right.dom, out.cod + right.cod,
                      out.degree + right.degree)
    return out


def lin(pairs: Sequence[tuple[object, Diagram]]) -> Diagram:
    """Rational combination of diagrams sharing boundary and degree."""
    pairs = tuple((to_rational(c), t) for c, t in pairs)
    if not pairs:
        raise DiagramTypeError("lin needs at least one term")
    t0 = pairs[0][1]
    for _, t in pairs[1:]:
        if (t.dom, t.cod) != (t0.dom, t0.cod):
            raise DiagramTypeError(
                f"lin terms disagree on boundary: {_word(t0.dom)}->{_word(t0.cod)} "
                f"versus {_word(t.dom)}->{_word(t.cod)} in {to_text(t)}")
        if t.degree != t0.degree:
            raise DiagramTypeError(f"lin terms disagree on degree: {t0.degree} versus {t.degree}")
    return Diagram("lin", (), pairs, t0.dom, t0.cod, t0.degree)


# macros


def cap(j: int) -> Diagram:
    return comp(dot_end(j), merge(j))


def cup(j: int) -> Diagram:
    return comp(split(j), dot_start(j))


def barbell(j: int) -> Diagram:
    return comp(dot_end(j), dot_start(j))


def broken(j: int) -> Diagram:
    """The strand j cut into two dotted halves (degree 2)."""
    return comp(dot_start(j), dot_end(j))


def needle(j: int) -> Diagram:
    return comp(dot_end(j), merge(j), split(j))


def jw2(s: int, t: int) -> Diagram:
    """Right side of the dot relation for the 6-valent vertex s,t (m = 3).

    Boundary: s t s -> t s, degree 1.
    """
    if coxeter_m(s, t) != 3:
        raise DiagramTypeError(f"jw2 needs colours with m = 3, got ({s},{t})")
    straight = tens(dot_end(s), identity(t, s))
    bent = comp(tens(dot_start(t), identity(s)), merge(s), tens(identity(s), dot_end(t), identity(s)))
    return lin([(1, straight), (fmpq(-1, a(t, s)), bent)])


def jw3(s: int, t: int) -> Diagram:
    """Right side of the dot relation for the 8-valent vertex s,t (m = 4).

    Boundary: s t s t -> t s t, degree 1.
    """
    if coxeter_m(s, t) != 4:
        raise DiagramTypeError(f"jw3 needs colours with m = 4, got ({s},{t})")
    den = fmpq(a(s, t) * a(t, s) - 1)
    d1 = tens(dot_end(s), identity(t, s, t))
    d2 = comp(tens(identity(t), dot_start(s), identity(t)), split(t), merge(t),
              tens(dot_end(s), identity(t), dot_end(s), identity(t)))
    d3 = comp(tens(dot_start(t), identity(s, t)), tens(merge(s), identity(t)),
              tens(identity(s), dot_end(t), identity(s, t)))
    d4 = comp(tens(identity(t), dot_start(s), identity(t)), split(t), tens(dot_end(s), identity(t)),
              tens(merge(s), identity(t)), tens(identity(s), dot_end(t), identity(s, t)))
    d5 = comp(tens(dot_start(t), identity(s, t)), tens(identity(s), merge(t)),
              tens(identity(s, t), dot_end(s), identity(t)))
    return lin([(1, d1), (-a(s, t) / den, d2), (-a(t, s) / den, d3), (1 / den, d4), (1 / den, d5)])


def dotted_vertex(s: int, t: int) -> Diagram:
    """The 2m-valent vertex s,t with a dot on its rightmost output strand."""
    m = coxeter_m(s, t)
    top = alternating(t, s, m)
    return comp(tens(identity(*top[:-1]), dot_end(top[-1])), crossing(s, t))


MACROS = {
    "cap": (1, cap), "cup": (1, cup), "barbell": (1, barbell), "broken": (1, broken),
    "needle": (1, needle), "jw2": (2, jw2), "jw3": (2, jw3), "dotted_vertex": (2, dotted_vertex),
}


def mirror(t: Diagram) -> Diagram:
    """Flip a diagram upside down."""
    flips = {"dot_start": dot_end, "dot_end": dot_start, "split": merge, "merge": split}
    if t.op in flips:
        return flips[t.op](t.args[0])
    if t.op == "crossing":
        return crossing(t.args[1], t.args[0])
    if t.op in ("id", "poly"):
        return t
    if t.op == "comp":
        return comp(mirror(t.parts[1]), mirror(t.parts[0]))
    if t.op == "tens":
        return tens(mirror(t.parts[0]), mirror(t.parts[1]))
    return lin([(c, mirror(p)) for c, p in t.parts])


def _word(w: tuple) -> str:
    return "(" + ",".join(map(str, w)) + ")" if w else "()"


def to_text(t: Diagram) -> str:
    """Text form that parses back to an equal term."""
    if t.op == "poly":
        return f"poly({format_polynomial(t.args[0])})"
    if t.op in ("comp", "tens"):
        return f"{t.op}({to_text(t.parts[0])}, {to_text(t.parts[1])})"
    if t.op == "lin":
        return "lin(" + ", ".join(f"{format_rational(c)}: {to_text(p)}" for c, p in t.parts) + ")"
    return f"{t.op}(" + ", ".join(map(str, t.args)) + ")"
