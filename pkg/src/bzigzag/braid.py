"""Braid words, their complexes, relation campaigns and decategorified matrices.

A word is a tuple of nonzero integers: ``j`` for the generator acting by R_j
and ``-j`` for its inverse (R'_j).  Text form: ``"s1 s2 S1"`` with upper case
for inverses.  Words act left factor outermost, so the complex of ``w1 w2``
is ``C(w1) (x) C(w2)``.
"""
from __future__ import annotations

import re
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .bimod import GradedBimodule, direct_sum, find_isomorphism, zero_bimodule
from .foundation.laurent import Laurent
from .komplex import (
    BoundedComplex, apply_to_module, complex_tensor, homotopy_equivalent, minimize,
    module_complex, rouquier_complex, unit_complex,
)

_TOKEN = re.compile(r"\s*([sS])(\d+)\s*")


def parse_word(text: str, n: int | None = None) -> tuple[int, ...]:
    """Parse ``"s1 S2 s3"`` (also ``"s1S2s3"``) into signed indices."""
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad braid word at position {pos}: {text[pos:pos + 8]!r}")
        j = int(m.group(2))
        out.append(j if m.group(1) == "s" else -j)
        pos = m.end()
    word = tuple(out)
    if n is not None:
        check_word(word, n)
    return word


def check_word(word: Sequence[int], n: int):
    for x in word:
        if x == 0 or abs(x) > n:
            raise IndexError(f"generator {x} out of range for rank {n}")


def format_word(word: Sequence[int]) -> str:
    return " ".join(f"s{x}" if x > 0 else f"S{-x}" for x in word)


def inverse_word(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(word))


def generator_complex(n: int, x: int) -> BoundedComplex:
    return rouquier_complex(n, abs(x), "+" if x > 0 else "-")


def word_to_complex(n: int, word: Sequence[int], reduce: bool = True) -> BoundedComplex:
    """Tensor product of the generator complexes; with ``reduce`` each partial product is minimized."""
    check_word(word, n)
    C = unit_complex(n)
    for x in word:
        C = complex_tensor(C, generator_complex(n, x))
        if reduce:
            C = minimize(C).complex
    return C


def word_on_module(n: int, word: Sequence[int], k: int, reduce: bool = True) -> BoundedComplex:
    """The word acting on P_k, computed right to left on complexes of left modules."""
    check_word(word, n)
    if reduce:
        return _reduced_on_module(n, tuple(word), k)
    M = module_complex(n, k)
    for x in reversed(word):
        M = complex_tensor(generator_complex(n, x), M)
    return M


@lru_cache(maxsize=16384)
def _reduced_on_module(n: int, word: tuple, k: int) -> BoundedComplex:
    # words sharing a suffix share the minimized partial complex
    if not word:
        return module_complex(n, k)
    return minimize(complex_tensor(generator_complex(n, word[0]), _reduced_on_module(n, word[1:], k))).complex


# relation campaigns


@dataclass
class Check:
    name: str
    status: str  # "pass", "fail" or "skip"
    detail: str = ""
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail,
                "seconds": round(self.seconds, 3)}


def braid_relation_instances(n: int) -> list[tuple[str, tuple, tuple]]:
    """(label, lhs, rhs) for every defining relation at rank n."""
    out = [("four-term (1,2)", (1, 2, 1, 2), (2, 1, 2, 1))]
    for j in range(1, n + 1):
        for k in range(j + 2, n + 1):
            out.append((f"commute ({j},{k})", (j, k), (k, j)))
    for j in range(2, n):
        out.append((f"three-term ({j},{j + 1})", (j, j + 1, j), (j + 1, j, j + 1)))
    return out


def verify_braid_relations(n: int, seed: int = 0, modules: bool = True,
                           bimodules: bool = True) -> list[Check]:
    checks = []
    for label, lhs, rhs in braid_relation_instances(n):
        C, D = word_to_complex(n, lhs), word_to_complex(n, rhs)
        if bimodules:
            t = time.perf_counter()
            v = homotopy_equivalent(C, D, seed)
            checks.append(Check(f"braid {label} bimodules", "pass" if v.equivalent else "fail",
                                v.reason, time.perf_counter() - t))
        if modules:
            for k in range(1, n + 1):
                t = time.perf_counter()
                v = homotopy_equivalent(apply_to_module(C, k), apply_to_module(D, k), seed)
                checks.append(Check(f"braid {label} on P{k}", "pass" if v.equivalent else "fail",
                                    v.reason, time.perf_counter() - t))
    return checks


# decategorification


class LaurentMatrix:
    """Square matrix of Laurent polynomials, rows and columns indexed by P_1..P_n."""

    def __init__(self, rows: Sequence[Sequence[Laurent]]):
        self.rows = [list(r) for r in rows]
        self.size = len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "LaurentMatrix":
        return cls([[Laurent.one() if i == j else Laurent() for j in range(n)] for i in range(n)])

    def __getitem__(self, ij) -> Laurent:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list[Laurent]:
        return [r[j] for r in self.rows]

    def __mul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = Laurent()
                for k in range(n):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LaurentMatrix(out)

    def __eq__(self, other):
        return isinstance(other, LaurentMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def to_json(self) -> list:
        return [[e.to_json() for e in r] for r in self.rows]

    def __str__(self):
        cells = [[str(e) for e in r] for r in self.rows]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(w) for c in r) + " ]" for r in cells)

    __repr__ = __str__


def module_class(C: BoundedComplex) -> list[Laurent]:
    """Euler class of a complex of projectives, as coefficients of [P_1], ..., [P_n]."""
    out = [Laurent() for _ in range(C.n)]
    for i, keys in C.keys().items():
        sign = -1 if i % 2 else 1
        for key, mult in keys.items():
            _, a, d = key
            out[a - 1] = out[a - 1] + Laurent({d: sign * mult})
    return out


def decat_matrix(n: int, word: Sequence[int]) -> LaurentMatrix:
    """Column k is the class of the word acting on P_k; [M(m)] = v^{-m}[M]."""
    return _decat_matrix(n, tuple(word))


@lru_cache(maxsize=8192)
def _decat_matrix(n: int, word: tuple) -> LaurentMatrix:
    cols = [module_class(word_on_module(n, word, k)) for k in range(1, n + 1)]
    return LaurentMatrix([[cols[j][i] for j in range(n)] for i in range(n)])


def generator_matrix(n: int, x: int) -> LaurentMatrix:
    return decat_matrix(n, (x,))


def word_matrix(n: int, word: Sequence[int]) -> LaurentMatrix:
    """Product of generator matrices (multiplicativity makes this equal to decat_matrix)."""
    out = LaurentMatrix.identity(n)
    for x in word:
        out = out * generator_matrix(n, x)
    return out


# Temperley-Lieb checks


def _U_word(n: int, word: Sequence[int]) -> GradedBimodule:
    return GradedBimodule.from_word(n, tuple(word))


def tl_check(n: int, seed: int = 0) -> list[Check]:
    checks = []

    def record(name, fn):
        t = time.perf_counter()
        ok, detail = fn()
        checks.append(Check(name, "pass" if ok else "fail", detail, time.perf_counter() - t))

    vv = Laurent({1: 1, -1: 1})
    for j in range(1, n + 1):
        def square(j=j):
            lhs = _U_word(n, (j, j))
            Uj = _U_word(n, (j,))
            rhs = direct_sum([Uj.shift(1), Uj.shift(-1)])
            iso = find_isomorphism(lhs, rhs, seed)
            dims = lhs.graded_dimension() == vv * Uj.graded_dimension()
            return iso.found and dims, iso.reason
        record(f"tl square U{j}U{j}", square)
    for j in range(1, n + 1):
        for k in range(j + 2, n + 1):
            def far(j=j, k=k):
                lhs = _U_word(n, (j, k))
                iso = find_isomorphism(lhs, zero_bimodule(n), seed)
                return iso.found and lhs.graded_dimension().is_zero(), iso.reason
            record(f"tl far U{j}U{k}", far)
    for j in range(2, n + 1):
        for k in (j - 1, j + 1):
            if k < 2 or k > n:
                continue
            def three(j=j, k=k):
                # U_j U_k U_j is isomorphic to U_j; it is not isomorphic to U_k
                lhs = _U_word(n, (j, k, j))
                rhs = _U_word(n, (j,))
                iso = find_isomorphism(lhs, rhs, seed)
                return iso.found and lhs.graded_dimension() == rhs.graded_dimension(), iso.reason
            record(f"tl three U{j}U{k}U{j}", three)
    for j, k in ((1, 2), (2, 1)):
        def four(j=j, k=k):
            lhs = _U_word(n, (j, k, j, k))
            jk = _U_word(n, (j, k))
            iso = find_isomorphism(lhs, direct_sum([jk, jk]), seed)
            return iso.found and lhs.graded_dimension() == jk.graded_dimension() * 2, iso.reason
        record(f"tl four U{j}U{k}U{j}U{k}", four)
    return checks


def all_words(n: int, max_len: int) -> Iterable[tuple[int, ...]]:
    letters = [x for j in range(1, n + 1) for x in (j, -j)]
    frontier = [()]
    for _ in range(max_len + 1):
        nxt = []
        for w in frontier:
            yield w
            nxt.extend(w + (x,) for x in letters)
        frontier = nxt
