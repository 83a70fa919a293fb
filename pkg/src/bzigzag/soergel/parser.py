"""Recursive-descent parser for the diagram language.

    term ::= name '(' args ')'
           | 'comp(' term ',' term ')' | 'tens(' term ',' term ')'
           | 'lin(' coeff ':' term (',' coeff ':' term)* ')'

``comp`` and ``tens`` also accept more than two terms.  Generators take
integer colours; ``poly(...)`` (alias ``polybox``) takes a polynomial in
``a1 .. an``.  Macros: cap, cup, barbell, broken, needle (one colour) and
jw2, jw3, dotted_vertex (two colours).
"""
from __future__ import annotations

import re

from ..foundation.polynomial import parse_polynomial
from ..foundation.rational import parse_rational
from . import diagram as D

_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_INT = re.compile(r"[+-]?\d+")
_COEFF = re.compile(r"[+-]?\d+(?:/\d+)?")
_VAR = re.compile(r"a(\d+)")

_SIMPLE = {
    "dot_start": (1, D.dot_start), "dot_end": (1, D.dot_end),
    "split": (1, D.split), "merge": (1, D.merge), "crossing": (2, D.crossing),
}


class DiagramSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.message, self.text, self.pos = message, text, pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str, pos: int | None = None):
        raise DiagramSyntaxError(msg, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def match(self, rx: re.Pattern, what: str) -> str:
        self.skip()
        m = rx.match(self.text, self.pos)
        if not m:
            self.error(f"expected {what}")
        self.pos = m.end()
        return m.group(0)

    def term(self) -> D.Diagram:
        start = self.pos
        self.skip()
        start = self.pos
        name = self.match(_NAME, "a generator name")
        self.expect("(")
        try:
            if name in ("comp", "tens"):
                parts = [self.term()]
                while self.peek() == ",":
                    self.pos += 1
                    parts.append(self.term())
                self.expect(")")
                if len(parts) < 2:
                    self.error(f"{name} needs at least two terms", start)
                return (D.comp if name == "comp" else D.tens)(*parts)
            if name == "lin":
                pairs = [self.lin_item()]
                while self.peek() == ",":
                    self.pos += 1
                    pairs.append(self.lin_item())
                self.expect(")")
                return D.lin(pairs)
            if name in ("poly", "polybox"):
                return D.poly(self.polynomial())
            ints = self.integers()
            if name == "id":
                return D.identity(*ints)
            if name in _SIMPLE or name in D.MACROS:
                arity, fn = _SIMPLE.get(name) or D.MACROS[name]
                if len(ints) != arity:
                    self.error(f"{name} takes {arity} colour(s), got {len(ints)}", start)
                return fn(*ints)
        except D.DiagramTypeError as exc:
            raise DiagramSyntaxError(f"type error in {self.text[start:self.pos].strip()!r}: {exc}",
                                     self.text, start) from None
        self.error(f"unknown generator {name!r}", start)

    def lin_item(self):
        c = parse_rational(self.match(_COEFF, "a rational coefficient"))
        self.expect(":")
        return c, self.term()

    def integers(self) -> list[int]:
        out = []
        if self.peek() == ")":
            self.pos += 1
            return out
        while True:
            out.append(int(self.match(_INT, "an integer colour")))
            if self.peek() == ",":
                self.pos += 1
                continue
            self.expect(")")
            return out

    def polynomial(self):
        start = self.pos
        depth = 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    break
                depth -= 1
            self.pos += 1
        else:
            self.error("unterminated polynomial", start)
        body = self.text[start:self.pos]
        self.pos += 1
        nvars = max([int(v) for v in _VAR.findall(body)] or [1])
        try:
            return parse_polynomial(body, nvars)
        except ValueError as exc:
            raise DiagramSyntaxError(f"bad polynomial: {exc}", self.text, start) from None


def parse_diagram(text: str) -> D.Diagram:
    """Parse one diagram; raises DiagramSyntaxError with the offending position."""
    p = _Parser(text)
    t = p.term()
    if p.peek():
        p.error("trailing input")
    return t


def parse_diagram_file(text: str) -> tuple[D.Diagram, tuple | None]:
    """Parse a diagram file: optional ``object: <word>`` header, then one term.

    The header word (colours separated by spaces or commas) must equal the
    domain of the term.
    """
    lines = text.splitlines()
    declared = None
    body_start = 0
    for i, line in enumerate(lines):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        if s.startswith("object:"):
            spec = s[len("object:"):].replace(",", " ").split()
            declared = tuple(int(x) for x in spec)
            body_start = i + 1
        break
    body = "\n".join(lines[body_start:])
    body = "\n".join(ln for ln in body.splitlines() if not ln.strip().startswith("#"))
    t = parse_diagram(body)
    if declared is not None and declared != t.dom:
        raise D.DiagramTypeError(f"header declares object {declared} but the term starts at {t.dom}")
    return t, declared
