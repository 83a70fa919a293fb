"""Tensor words of the bimodules U_j in an explicit normal form.

For a word ``w = (k1, ..., kr)`` the bimodule ``U_{k1} (x)_B ... (x)_B U_{kr}``
is, up to the grading shift by ``r``,

    B e_{k1} (x)_{K_{k1}} e_{k1} B e_{k2} (x)_{K_{k2}} ... (x)_{K_{kr}} e_{kr} B

and every element is a combination of tuples ``(p_0, ..., p_r)`` of basis
paths.  In normal form every factor before a complex tensor symbol is an
undecorated path; a decoration is moved across the symbol by multiplying the
next factor by ``ie`` on the left.  The empty word is the regular bimodule.

A chain may also be cut on the right by an idempotent ``e_end``; this gives
the left module ``W (x)_B P_end`` used when braid complexes act on
projectives.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from flint import fmpq, fmpq_mat

from .zigzag import BasisPath, ZigzagAlgebra, build_algebra

Vector = dict  # basis index -> fmpq


class Chain:
    def __init__(self, algebra: ZigzagAlgebra, word: Sequence[int], end: int | None = None):
        self.algebra = alg = algebra
        self.word = tuple(word)
        self.end = end
        n = alg.n
        for k in self.word:
            if not 1 <= k <= n:
                raise IndexError(f"letter {k} out of range 1..{n}")
        if end is not None and not 1 <= end <= n:
            raise IndexError(f"end vertex {end} out of range 1..{n}")
        self.r = r = len(self.word)
        paths = alg.basis

        def ok_end(p):
            return end is None or p.target == end

        factors = []
        if r == 0:
            factors.append([i for i, p in enumerate(paths) if ok_end(p)])
        else:
            for i in range(r):
                k = self.word[i]
                prev = self.word[i - 1] if i else None
                factors.append([
                    idx for idx, p in enumerate(paths)
                    if p.target == k and (prev is None or p.source == prev)
                    and not (k >= 2 and p.decorated)
                ])
            last = self.word[-1]
            factors.append([i for i, p in enumerate(paths) if p.source == last and ok_end(p)])
        self.factors = factors
        self.basis: list[tuple[int, ...]] = list(itertools.product(*factors))
        self.index = {t: i for i, t in enumerate(self.basis)}
        self.dim = len(self.basis)
        degs = alg.degrees
        self.degrees = [sum(degs[p] for p in t) - r for t in self.basis]
        self.left_vertices = [alg.sources[t[0]] for t in self.basis]
        self.right_vertices = [alg.targets[t[-1]] for t in self.basis]
        self._norm_cache: dict[tuple, tuple | None] = {}
        self._left_cache: dict[int, list] = {}
        self._right_cache: dict[int, list] = {}

    def __repr__(self):
        tail = f", end={self.end}" if self.end is not None else ""
        return f"Chain(n={self.algebra.n}, word={self.word}{tail}, dim={self.dim})"

    def name(self) -> str:
        if not self.word:
            return "B" if self.end is None else f"P{self.end}"
        core = "".join(f"U{k}" for k in self.word)
        return core if self.end is None else f"{core}P{self.end}"

    # normal form

    def normalize(self, raw: tuple) -> tuple[int, int] | None:
        """Index and sign of the normal form of a raw tuple, or None if it is zero."""
        hit = self._norm_cache.get(raw, False)
        if hit is not False:
            return hit
        res = self._normalize(raw)
        self._norm_cache[raw] = res
        return res

    def _normalize(self, raw: tuple):
        alg = self.algebra
        word = self.word
        if len(raw) != self.r + 1:
            raise ValueError("tuple length does not match the word")
        t = list(raw)
        sign = 1
        for i in range(self.r):
            k = word[i]
            if alg.targets[t[i]] != k or alg.sources[t[i + 1]] != k:
                return None
            if k >= 2 and alg.basis[t[i]].decorated:
                t[i] = _undecorated(alg, t[i])
                ie = alg.ie_index(k)
                prod = int(alg.table[ie, t[i + 1]])
                if prod < 0:
                    return None
                sign *= int(alg.signs[ie, t[i + 1]])
                t[i + 1] = prod
        if self.end is not None and alg.targets[t[-1]] != self.end:
            return None
        key = tuple(t)
        idx = self.index.get(key)
        if idx is None:
            raise AssertionError(f"normal form {key} missing from {self!r}")
        return idx, sign

    def vector(self, terms: Iterable[tuple[tuple, object]]) -> Vector:
        """Normalize a combination of raw tuples into a sparse vector."""
        out: dict[int, fmpq] = {}
        for raw, c in terms:
            hit = self.normalize(tuple(raw))
            if hit is None:
                continue
            i, s = hit
            v = out.get(i, 0) + (c if s > 0 else -c)
            if v == 0:
                out.pop(i, None)
            else:
                out[i] = v
        return out

    # actions

    def _left_ops(self, g: int) -> list:
        ops = self._left_cache.get(g)
        if ops is None:
            alg = self.algebra
            ops = []
            for t in self.basis:
                c = int(alg.table[g, t[0]])
                if c < 0:
                    ops.append(None)
                    continue
                hit = self.normalize((c,) + t[1:])
                if hit is None:
                    ops.append(None)
                else:
                    ops.append((hit[0], hit[1] * int(alg.signs[g, t[0]])))
            self._left_cache[g] = ops
        return ops

    def _right_ops(self, g: int) -> list:
        if self.end is not None:
            raise ValueError("a cut chain is only a left module")
        ops = self._right_cache.get(g)
        if ops is None:
            alg = self.algebra
            ops = []
            for t in self.basis:
                c = int(alg.table[t[-1], g])
                if c < 0:
                    ops.append(None)
                    continue
                hit = self.normalize(t[:-1] + (c,))
                if hit is None:
                    ops.append(None)
                else:
                    ops.append((hit[0], hit[1] * int(alg.signs[t[-1], g])))
            self._right_cache[g] = ops
        return ops

    def act_left(self, g: int, vec: Mapping[int, fmpq]) -> Vector:
        return _apply_ops(self._left_ops(g), vec)

    def act_right(self, vec: Mapping[int, fmpq], g: int) -> Vector:
        return _apply_ops(self._right_ops(g), vec)

    def act_left_element(self, a, vec) -> Vector:
        out: dict[int, fmpq] = {}
        for g, c in a.coeffs.items():
            _axpy(out, c, self.act_left(g, vec))
        return out

    def act_right_element(self, vec, a) -> Vector:
        out: dict[int, fmpq] = {}
        for g, c in a.coeffs.items():
            _axpy(out, c, self.act_right(vec, g))
        return out

    def left_matrix(self, g: int) -> fmpq_mat:
        return _ops_matrix(self._left_ops(g), self.dim)

    def right_matrix(self, g: int) -> fmpq_mat:
        return _ops_matrix(self._right_ops(g), self.dim)

    # generating tuples: first factor e_{k1}, last factor e_{kr} or ie_{kr}

    def generator_tuples(self) -> list[int]:
        alg = self.algebra
        if self.r == 0:
            if self.end is None:
                return [self.index[(alg.idempotent(j),)] for j in range(1, alg.n + 1)]
            return [self.index[(alg.idempotent(self.end),)]]
        first = alg.idempotent(self.word[0])
        out = []
        for i, t in enumerate(self.basis):
            if t[0] != first:
                continue
            if self.end is None:
                p = alg.basis[t[-1]]
                if p.kind not in ("E", "IE"):
                    continue
            out.append(i)
        return out


def _undecorated(alg: ZigzagAlgebra, idx: int) -> int:
    p = alg.basis[idx]
    return alg.index[BasisPath(p.kind[1:], p.j, p.k)]


def _apply_ops(ops, vec) -> Vector:
    out: dict[int, fmpq] = {}
    for i, c in vec.items():
        hit = ops[i]
        if hit is None:
            continue
        j, s = hit
        v = out.get(j, 0) + (c if s > 0 else -c)
        if v == 0:
            out.pop(j, None)
        else:
            out[j] = v
    return out


def _axpy(out: dict, c, vec: Mapping):
    for j, v in vec.items():
        nv = out.get(j, 0) + c * v
        if nv == 0:
            out.pop(j, None)
        else:
            out[j] = nv


def _ops_matrix(ops, dim) -> fmpq_mat:
    m = fmpq_mat(dim, dim)
    for col, hit in enumerate(ops):
        if hit is not None:
            m[hit[0], col] = hit[1]
    return m


@lru_cache(maxsize=4096)
def chain(n: int, word: tuple, end: int | None = None) -> Chain:
    return Chain(build_algebra(n), word, end)


# maps between chains


def map_from_function(src: Chain, tgt: Chain, fn: Callable[[tuple], Iterable[tuple[tuple, object]]]) -> fmpq_mat:
    """Matrix of the linear map sending basis tuple t to the combination fn(t)."""
    m = fmpq_mat(tgt.dim, src.dim)
    for col, t in enumerate(src.basis):
        for row, v in tgt.vector(fn(t)).items():
            m[row, col] = v
    return m


def sparse_columns(m: fmpq_mat) -> list[list[tuple[int, fmpq]]]:
    cols: list[list] = [[] for _ in range(m.ncols())]
    c = m.ncols()
    if c == 0:
        return cols
    for k, v in enumerate(m.entries()):
        if v != 0:
            i, j = divmod(k, c)
            cols[j].append((i, v))
    return cols


def _path_product(alg: ZigzagAlgebra, a: int, b: int):
    c = int(alg.table[a, b])
    if c < 0:
        return None
    return c, int(alg.signs[a, b])


def multiply_map(n: int, j: int) -> fmpq_mat:
    """x (x) y -> xy from U_j to B (degree +1)."""
    src, tgt = chain(n, (j,)), chain(n, ())
    alg = src.algebra

    def fn(t):
        hit = _path_product(alg, t[0], t[1])
        if hit:
            yield (hit[0],), fmpq(hit[1])
    return map_from_function(src, tgt, fn)


def coproduct_terms(alg: ZigzagAlgebra, j: int) -> list[tuple[int, int, fmpq]]:
    """The element gamma_j(1) as (x, y, coefficient) triples of path indices."""
    n = alg.n
    terms = [
        (alg.path(BasisPath("X", j)), alg.idempotent(j), fmpq(1)),
        (alg.idempotent(j), alg.path(BasisPath("X", j)), fmpq(1)),
    ]
    if j == 1:
        terms.append((alg.path(BasisPath("A", 2, 1)), alg.path(BasisPath("A", 1, 2)), fmpq(1)))
        terms.append((alg.path(BasisPath("IA", 2, 1)), alg.path(BasisPath("IA", 1, 2)), fmpq(-1)))
    else:
        for k in (j - 1, j + 1):
            if 1 <= k <= n:
                terms.append((alg.path(BasisPath("A", k, j)), alg.path(BasisPath("A", j, k)), fmpq(1)))
    return terms


def coproduct_map(n: int, j: int) -> fmpq_mat:
    """p -> p gamma_j(1) from B to U_j (degree +1)."""
    src, tgt = chain(n, ()), chain(n, (j,))
    alg = src.algebra
    terms = coproduct_terms(alg, j)

    def fn(t):
        for x, y, c in terms:
            hit = _path_product(alg, t[0], x)
            if hit:
                yield (hit[0], y), c * hit[1]
    return map_from_function(src, tgt, fn)


def split_map(n: int, j: int) -> fmpq_mat:
    """x (x) y -> x (x) e_j (x) y from U_j to U_jU_j (degree -1)."""
    src, tgt = chain(n, (j,)), chain(n, (j, j))
    e = src.algebra.idempotent(j)
    return map_from_function(src, tgt, lambda t: [((t[0], e, t[1]), fmpq(1))])


def merge_map(n: int, j: int) -> fmpq_mat:
    """x (x) m (x) y -> x (x) tau(m) y with tau(X_j) = e_j (degree -1)."""
    src, tgt = chain(n, (j, j)), chain(n, (j,))
    alg = src.algebra
    x_idx = alg.path(BasisPath("X", j))
    ix_idx = alg.index.get(BasisPath("IX", j)) if j >= 2 else None
    ie_idx = alg.ie_index(j)

    def fn(t):
        if t[1] == x_idx:
            yield (t[0], t[2]), fmpq(1)
        elif ix_idx is not None and t[1] == ix_idx:
            hit = _path_product(alg, ie_idx, t[2])
            if hit:
                yield (t[0], hit[0]), fmpq(hit[1])
    return map_from_function(src, tgt, fn)


def central_map(n: int, z) -> fmpq_mat:
    """Multiplication by a central element z on B."""
    src = chain(n, ())
    alg = src.algebra

    def fn(t):
        for g, c in z.coeffs.items():
            hit = _path_product(alg, t[0], g)
            if hit:
                yield (hit[0],), c * hit[1]
    return map_from_function(src, src, fn)


def identity_map(c: Chain) -> fmpq_mat:
    m = fmpq_mat(c.dim, c.dim)
    for i in range(c.dim):
        m[i, i] = 1
    return m


def tensor_right(f: fmpq_mat, n: int, w_src: tuple, w_tgt: tuple, w2: tuple,
                 end: int | None = None) -> fmpq_mat:
    """f (x) id_{w2}: chain(w_src + w2) -> chain(w_tgt + w2), optionally cut at ``end``.

    ``f`` is a bimodule map between the uncut chains of ``w_src`` and ``w_tgt``.
    """
    if not w2 and end is None:
        return f
    c_src, c_tgt = chain(n, w_src), chain(n, w_tgt)
    s_big, t_big = chain(n, w_src + w2, end), chain(n, w_tgt + w2, end)
    cols = sparse_columns(f)
    r1 = len(w_src)
    out = fmpq_mat(t_big.dim, s_big.dim)
    for col, t in enumerate(s_big.basis):
        j = c_src.index[t[:r1 + 1]]
        tail = t[r1 + 1:]
        acc: dict[int, fmpq] = {}
        for row, v in cols[j]:
            hit = t_big.normalize(c_tgt.basis[row] + tail)
            if hit is None:
                continue
            i, s = hit
            acc[i] = acc.get(i, 0) + (v if s > 0 else -v)
        for i, v in acc.items():
            if v != 0:
                out[i, col] = v
    return out


def tensor_left(n: int, w1: tuple, g: fmpq_mat, w_src: tuple, w_tgt: tuple,
                end: int | None = None) -> fmpq_mat:
    """id_{w1} (x) g: chain(w1 + w_src) -> chain(w1 + w_tgt), optionally cut at ``end``."""
    if not w1:
        return g
    c_src, c_tgt = chain(n, w_src, end), chain(n, w_tgt, end)
    s_big, t_big = chain(n, w1 + w_src, end), chain(n, w1 + w_tgt, end)
    cols = sparse_columns(g)
    r1 = len(w1)
    out = fmpq_mat(t_big.dim, s_big.dim)
    for col, t in enumerate(s_big.basis):
        j = c_src.index[t[r1:]]
        head = t[:r1]
        acc: dict[int, fmpq] = {}
        for row, v in cols[j]:
            hit = t_big.normalize(head + c_tgt.basis[row])
            if hit is None:
                continue
            i, s = hit
            acc[i] = acc.get(i, 0) + (v if s > 0 else -v)
        for i, v in acc.items():
            if v != 0:
                out[i, col] = v
    return out


def tensor_maps(n: int, f: fmpq_mat, f_src: tuple, f_tgt: tuple,
                g: fmpq_mat, g_src: tuple, g_tgt: tuple) -> fmpq_mat:
    """f (x) g = (f (x) id)(id (x) g): chain(f_src+g_src) -> chain(f_tgt+g_tgt)."""
    right = tensor_left(n, f_src, g, g_src, g_tgt)
    left = tensor_right(f, n, f_src, f_tgt, g_tgt)
    return left * right


def restrict_to_end(m: fmpq_mat, src: Chain, tgt: Chain, end: int) -> fmpq_mat:
    """Restriction of a bimodule map to the left modules W e_end."""
    s_cut, t_cut = chain(src.algebra.n, src.word, end), chain(tgt.algebra.n, tgt.word, end)
    rows = [tgt.index[t] for t in t_cut.basis]
    cols = [src.index[t] for t in s_cut.basis]
    out = fmpq_mat(len(rows), len(cols))
    if not rows or not cols:
        return out
    ent = m.entries()
    c = m.ncols()
    for b, j in enumerate(cols):
        for a, i in enumerate(rows):
            v = ent[i * c + j]
            if v != 0:
                out[a, b] = v
    return out
