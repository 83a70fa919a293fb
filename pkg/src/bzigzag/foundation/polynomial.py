"""The polynomial ring of the type B realisation and its Coxeter group action.

Variables ``a1 .. an`` stand for the simple roots; each has degree 2.  The
realisation is the non-symmetric one with ``a_{1,2} = -1`` and
``a_{2,1} = -2``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from flint import fmpq

from .rational import format_rational, parse_rational, to_rational


def cartan_entry(i: int, j: int) -> int:
    """Pairing of the i-th coroot with the j-th root (1-based)."""
    if i == j:
        return 2
    if i == 1 and j == 2:
        return -1
    if i == 2 and j == 1:
        return -2
    if i >= 2 and j >= 2 and abs(i - j) == 1:
        return -1
    return 0


def coxeter_m(s: int, t: int) -> int:
    """Order of s*t in W(B_n)."""
    if s == t:
        return 1
    if {s, t} == {1, 2}:
        return 4
    if abs(s - t) == 1:
        return 3
    return 2


@dataclass(frozen=True)
class Realisation:
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")

    @property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        return tuple(tuple(cartan_entry(i, j) for j in range(1, n + 1)) for i in range(1, n + 1))

    def a(self, i: int, j: int) -> int:
        self._check(i)
        self._check(j)
        return cartan_entry(i, j)

    def _check(self, i: int):
        if not 1 <= i <= self.rank:
            raise IndexError(f"generator index {i} out of range 1..{self.rank}")


class Polynomial:
    """Sparse polynomial in the simple roots with rational coefficients.

    ``terms`` maps exponent tuples of length ``nvars`` to nonzero fmpq.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError("exponent vector has wrong length")
            c = to_rational(c)
            if c != 0:
                clean[exps] = clean.get(exps, fmpq(0)) + c
                if clean[exps] == 0:
                    del clean[exps]
        self.terms = clean

    # construction helpers
    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def root(cls, nvars: int, i: int, coeff=1) -> "Polynomial":
        if not 1 <= i <= nvars:
            raise IndexError(f"variable a{i} out of range")
        e = [0] * nvars
        e[i - 1] = 1
        return cls(nvars, {tuple(e): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | None:
        """Grading degree (twice the polynomial degree); None if not homogeneous or zero."""
        degs = {2 * sum(e) for e in self.terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def __eq__(self, other):
        if isinstance(other, (int, fmpq)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different rings")
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, fmpq(0)) + c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, fmpq(0)) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def substitute(self, images: list["Polynomial"]) -> "Polynomial":
        """Ring homomorphism sending variable i to ``images[i-1]``."""
        out = Polynomial.zero(self.nvars)
        for exps, c in self.terms.items():
            term = Polynomial.constant(self.nvars, c)
            for i, k in enumerate(exps):
                if k:
                    term = term * images[i] ** k
            out = out + term
        return out

    def divide_by_root(self, i: int) -> "Polynomial":
        """Exact division by the variable a_i; raises if not divisible."""
        out = {}
        for e, c in self.terms.items():
            if e[i - 1] == 0:
                raise ArithmeticError(f"polynomial not divisible by a{i}")
            e2 = list(e)
            e2[i - 1] -= 1
            out[tuple(e2)] = c
        return Polynomial(self.nvars, out)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)


@lru_cache(maxsize=None)
def _reflection_images(n: int, i: int) -> tuple:
    return tuple(
        Polynomial.root(n, j) - Polynomial.root(n, i, cartan_entry(i, j)) for j in range(1, n + 1)
    )


def simple_reflection_act(i: int, f: Polynomial) -> Polynomial:
    """s_i(f), using s_i(a_j) = a_j - a_{i,j} a_i."""
    if not 1 <= i <= f.nvars:
        raise IndexError(f"generator index {i} out of range 1..{f.nvars}")
    return f.substitute(list(_reflection_images(f.nvars, i)))


def word_act(word: Iterable[int], f: Polynomial) -> Polynomial:
    """Action of the Coxeter word s_{w1} s_{w2} ... (rightmost letter acts first)."""
    for i in reversed(list(word)):
        f = simple_reflection_act(i, f)
    return f


def demazure(i: int, f: Polynomial) -> Polynomial:
    """Demazure operator (f - s_i f) / a_i; lowers the grading by 2."""
    g = f - simple_reflection_act(i, f)
    return g.divide_by_root(i)


def monomials(nvars: int, poly_degree: int) -> list[Polynomial]:
    """All monic monomials of the given polynomial degree (grading 2*poly_degree)."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), poly_degree):
        e = [0] * nvars
        for k in combo:
            e[k] += 1
        out.append(Polynomial(nvars, {tuple(e): 1}))
    return out


# text format: 2*a1 - 1*a2^2

_TERM_RE = re.compile(r"\s*([+-]?)\s*([^+-]+)")
_VAR_RE = re.compile(r"^a(\d+)(?:\^(\d+))?$")


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    src = text.strip()
    if not src:
        raise ValueError("empty polynomial")
    out = Polynomial.zero(nvars)
    pos = 0
    first = True
    while pos < len(src):
        m = _TERM_RE.match(src, pos)
        if not m or (not first and not m.group(1)):
            raise ValueError(f"bad polynomial syntax at position {pos}: {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        factors = [p.strip() for p in m.group(2).split("*")]
        coeff = fmpq(sign)
        exps = [0] * nvars
        for k, fac in enumerate(factors):
            vm = _VAR_RE.match(fac)
            if vm:
                idx = int(vm.group(1))
                if not 1 <= idx <= nvars:
                    raise ValueError(f"variable a{idx} out of range 1..{nvars}")
                exps[idx - 1] += int(vm.group(2) or 1)
            elif k == 0:
                coeff *= parse_rational(fac)
            else:
                raise ValueError(f"bad factor {fac!r} in {text!r}")
        out = out + Polynomial(nvars, {tuple(exps): coeff})
        pos = m.end()
        first = False
    return out


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    keys = sorted(f.terms, key=lambda e: (sum(e), tuple(-x for x in e)))
    parts = []
    for e in keys:
        c = f.terms[e]
        sign = "-" if c < 0 else "+"
        body = format_rational(abs(c))
        for i, k in enumerate(e):
            if k == 1:
                body += f"*a{i + 1}"
            elif k > 1:
                body += f"*a{i + 1}^{k}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text
