"""Finite-dimensional graded (B_n, B_n)-bimodules with explicit action matrices.

A :class:`GradedBimodule` stores a graded basis whose vectors are homogeneous
for the idempotents on each side, plus the matrices of the algebra action by
every basis path.  Either side may be absent, so the same class carries the
one-sided projectives and plain graded vector spaces such as ``_jP (x)_B P_k``.

Tensor products are computed generically as quotients of ground-field tensor
products; the chains module gives the same bimodules in a closed normal form,
and the test suite checks the two against each other.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from flint import fmpq, fmpq_mat

from . import chains
from .foundation.laurent import Laurent
from .foundation.linalg import (
    SparseEliminator, block_matrix, identity, is_invertible, is_zero, sparse_kernel,
    to_sparse, from_sparse,
)
from .foundation.rational import format_rational, parse_rational
from .pieces import Piece, full_piece
from .zigzag import OneSidedModule, ZigzagAlgebra, build_algebra

NAMED_KINDS = ("beta", "gamma", "alpha_split", "delta_merge", "epsilon")


class GradedBimodule:
    """Graded bimodule over the zigzag algebra with lazily built action matrices.

    ``left_vertex[i]`` is the vertex a with ``e_a v_i = v_i`` (None without a
    left action); likewise ``right_vertex``.  ``left`` and ``right`` map a
    basis-path index to the action matrix, or are None for a missing side.
    ``scalar`` optionally holds the ``K_j`` action of ``ie_j`` on a free side,
    as ``(j, matrix)``.
    """

    def __init__(self, algebra: ZigzagAlgebra, degrees: Sequence[int],
                 left_vertex: Sequence[int | None], right_vertex: Sequence[int | None],
                 left: Callable[[int], fmpq_mat] | None = None,
                 right: Callable[[int], fmpq_mat] | None = None,
                 name: str = "", scalar: tuple[int, fmpq_mat] | None = None,
                 piece: Piece | None = None):
        self.algebra = algebra
        self.degrees = list(degrees)
        self.left_vertex = list(left_vertex)
        self.right_vertex = list(right_vertex)
        self._left_fn = left
        self._right_fn = right
        self._left: dict[int, fmpq_mat] = {}
        self._right: dict[int, fmpq_mat] = {}
        self.name = name
        self.scalar = scalar
        self.piece = piece

    # construction

    @classmethod
    def from_piece(cls, p: Piece, name: str | None = None) -> "GradedBimodule":
        alg = p.chain.algebra
        labels = p.labels
        right = None if p.end is not None else p.right_matrix
        return cls(alg, [d for _, _, d in labels], [a for a, _, _ in labels],
                   [b if p.end is None else None for _, b, _ in labels],
                   p.left_matrix, right, name or p.describe(), piece=p)

    @classmethod
    def from_word(cls, n: int, word: Sequence[int], shift: int = 0) -> "GradedBimodule":
        """U_{k1} (x) ... (x) U_{kr} (shift), in the chain normal form."""
        return cls.from_piece(full_piece(n, tuple(word), shift))

    @classmethod
    def from_one_sided(cls, m: OneSidedModule) -> "GradedBimodule":
        alg = m.algebra
        idx = list(m.basis)
        degs = [alg.degrees[b] for b in idx]

        def act(g):
            return m.action_matrix(g)

        scalar = (m.j, m.ie_matrix) if m.j >= 2 else None
        if m.side == "left":
            return cls(alg, degs, [alg.sources[b] for b in idx], [None] * len(idx),
                       left=act, name=f"P{m.j}", scalar=scalar)
        return cls(alg, degs, [None] * len(idx), [alg.targets[b] for b in idx],
                   right=act, name=f"{m.j}P", scalar=scalar)

    # basic data

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def has_left(self) -> bool:
        return self._left_fn is not None

    @property
    def has_right(self) -> bool:
        return self._right_fn is not None

    def left(self, g: int) -> fmpq_mat:
        if self._left_fn is None:
            raise ValueError(f"{self.name or 'module'} has no left action")
        m = self._left.get(g)
        if m is None:
            m = self._left[g] = self._left_fn(g)
        return m

    def right(self, g: int) -> fmpq_mat:
        if self._right_fn is None:
            raise ValueError(f"{self.name or 'module'} has no right action")
        m = self._right.get(g)
        if m is None:
            m = self._right[g] = self._right_fn(g)
        return m

    def graded_dimension(self) -> Laurent:
        counts: dict[int, int] = {}
        for d in self.degrees:
            counts[d] = counts.get(d, 0) + 1
        return Laurent(counts)

    def label_counts(self) -> dict[tuple, int]:
        out: dict[tuple, int] = {}
        for lab in zip(self.left_vertex, self.right_vertex, self.degrees):
            out[lab] = out.get(lab, 0) + 1
        return out

    def shift(self, k: int) -> "GradedBimodule":
        """M(k): degrees drop by k."""
        piece = None
        if self.piece is not None:
            from .pieces import shift_piece
            piece = shift_piece(self.piece, k)
        out = GradedBimodule(self.algebra, [d - k for d in self.degrees], self.left_vertex,
                             self.right_vertex, self._left_fn, self._right_fn,
                             f"{self.name}({k})" if k else self.name, self.scalar, piece)
        out._left, out._right = self._left, self._right
        return out

    def identity(self) -> "BimoduleMap":
        return BimoduleMap(self, self, identity(self.dim), 0)

    def verify(self) -> bool:
        """Unital, associative, bimodule and degree axioms checked on all basis paths."""
        alg = self.algebra
        sides = [s for s, ok in (("L", self.has_left), ("R", self.has_right)) if ok]
        for s in sides:
            act = self.left if s == "L" else self.right
            unit = fmpq_mat(self.dim, self.dim)
            for j in range(1, alg.n + 1):
                unit += act(alg.idempotent(j))
            if unit != identity(self.dim):
                return False
            for g in range(alg.dim):
                M = act(g)
                for (i, k), _ in to_sparse(M).items():
                    if self.degrees[i] != self.degrees[k] + alg.degrees[g]:
                        return False
            for g in range(alg.dim):
                for h in range(alg.dim):
                    hit = alg.products.get((g, h))
                    prod = fmpq_mat(self.dim, self.dim) if hit is None else hit[1] * act(hit[0])
                    if s == "L" and act(g) * act(h) != prod:
                        return False
                    if s == "R" and act(h) * act(g) != prod:
                        return False
        if len(sides) == 2:
            for g in alg.generators():
                for h in alg.generators():
                    if self.left(g) * self.right(h) != self.right(h) * self.left(g):
                        return False
        return True

    # serialization

    def to_json(self) -> dict:
        alg = self.algebra
        out = {"n": alg.n, "name": self.name, "degrees": self.degrees,
               "left_vertex": self.left_vertex, "right_vertex": self.right_vertex}
        for side, ok, act in (("left", self.has_left, self.left), ("right", self.has_right, self.right)):
            if ok:
                out[side] = {alg.basis[g].name: _triplets(act(g)) for g in range(alg.dim)}
        return out

    @classmethod
    def from_json(cls, data: dict) -> "GradedBimodule":
        alg = build_algebra(data["n"])
        dim = len(data["degrees"])
        mats = {}
        for side in ("left", "right"):
            if side in data:
                mats[side] = {alg.path(name): _from_triplets(t, dim, dim) for name, t in data[side].items()}
        return cls(alg, data["degrees"], data["left_vertex"], data["right_vertex"],
                   mats["left"].__getitem__ if "left" in mats else None,
                   mats["right"].__getitem__ if "right" in mats else None,
                   data.get("name", ""))

    def __repr__(self):
        return f"GradedBimodule({self.name or '?'}, dim={self.dim}, gdim={self.graded_dimension()})"


def _triplets(m: fmpq_mat) -> list:
    return [[i, j, format_rational(v)] for (i, j), v in sorted(to_sparse(m).items())]


def _from_triplets(t: list, rows: int, cols: int) -> fmpq_mat:
    return from_sparse(rows, cols, {(i, j): parse_rational(v) for i, j, v in t})


def regular(n: int) -> GradedBimodule:
    return GradedBimodule.from_word(n, ())


def U(n: int, j: int, shift: int = 0) -> GradedBimodule:
    return GradedBimodule.from_word(n, (j,), shift)


def zero_bimodule(n: int) -> GradedBimodule:
    z = lambda g: fmpq_mat(0, 0)  # noqa: E731
    return GradedBimodule(build_algebra(n), [], [], [], z, z, "0")


def direct_sum(mods: Sequence[GradedBimodule]) -> GradedBimodule:
    if not mods:
        raise ValueError("direct sum of nothing")
    alg = mods[0].algebra
    sizes = [m.dim for m in mods]

    def combine(side):
        if not all(getattr(m, "has_" + side) for m in mods):
            return None

        def act(g):
            return block_matrix(sizes, sizes, {(i, i): getattr(m, side)(g) for i, m in enumerate(mods)})
        return act

    return GradedBimodule(alg, [d for m in mods for d in m.degrees],
                          [v for m in mods for v in m.left_vertex],
                          [v for m in mods for v in m.right_vertex],
                          combine("left"), combine("right"),
                          " + ".join(m.name for m in mods))


# maps


@dataclass
class BimoduleMap:
    source: GradedBimodule
    target: GradedBimodule
    matrix: fmpq_mat
    degree: int = 0

    def __post_init__(self):
        if self.matrix.nrows() != self.target.dim or self.matrix.ncols() != self.source.dim:
            raise ValueError("map matrix has the wrong shape")

    def compose(self, other: "BimoduleMap") -> "BimoduleMap":
        """self o other."""
        if other.target.dim != self.source.dim:
            raise ValueError("maps are not composable")
        return BimoduleMap(other.source, self.target, self.matrix * other.matrix,
                           self.degree + other.degree)

    __matmul__ = compose

    def __add__(self, other: "BimoduleMap") -> "BimoduleMap":
        return BimoduleMap(self.source, self.target, self.matrix + other.matrix, self.degree)

    def __sub__(self, other: "BimoduleMap") -> "BimoduleMap":
        return BimoduleMap(self.source, self.target, self.matrix - other.matrix, self.degree)

    def __rmul__(self, c) -> "BimoduleMap":
        return BimoduleMap(self.source, self.target, self.matrix * fmpq(c) if not isinstance(c, fmpq) else self.matrix * c, self.degree)

    def is_zero(self) -> bool:
        return is_zero(self.matrix)

    def is_invertible(self) -> bool:
        return is_invertible(self.matrix)

    def is_bimodule_map(self) -> bool:
        M, N, f = self.source, self.target, self.matrix
        for (i, k), _ in to_sparse(f).items():
            if N.degrees[i] != M.degrees[k] + self.degree:
                return False
            if M.has_left and (N.left_vertex[i] != M.left_vertex[k]):
                return False
            if M.has_right and (N.right_vertex[i] != M.right_vertex[k]):
                return False
        alg = M.algebra
        for g in alg.generators():
            if M.has_left and N.left(g) * f != f * M.left(g):
                return False
            if M.has_right and N.right(g) * f != f * M.right(g):
                return False
        return True

    def to_json(self) -> dict:
        return {"source": self.source.name, "target": self.target.name, "degree": self.degree,
                "rows": self.matrix.nrows(), "cols": self.matrix.ncols(),
                "entries": _triplets(self.matrix)}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# tensor products


class _Quotient:
    """Basis of a quotient of a coordinate space by a span of sparse relators.

    The kept coordinates are the lexicographically earliest ones independent
    modulo the relators; ``reduce`` writes any coordinate in that basis.
    """

    def __init__(self, size: int, relators):
        elim = SparseEliminator(size, pivot="max")
        for r in relators:
            elim.add(r)
        elim._back_substitute()
        self.free = [i for i in range(size) if i not in elim.pivots]
        self.pos = {c: k for k, c in enumerate(self.free)}
        self._pivots = elim.pivots

    def reduce(self, i: int) -> dict[int, fmpq]:
        k = self.pos.get(i)
        if k is not None:
            return {k: fmpq(1)}
        row = self._pivots[i]
        return {self.pos[c]: -v for c, v in row.items() if c != i}


def _columns(m: fmpq_mat) -> list[list[tuple[int, fmpq]]]:
    return chains.sparse_columns(m)


def _induced_action(q: _Quotient, pairs: list[tuple[int, int]], index: dict, act: fmpq_mat,
                    side: int) -> fmpq_mat:
    cols = _columns(act)
    out = fmpq_mat(len(q.free), len(q.free))
    for col, pi in enumerate(q.free):
        pair = pairs[pi]
        acc: dict[int, fmpq] = {}
        for row, v in cols[pair[side]]:
            new = (row, pair[1]) if side == 0 else (pair[0], row)
            k = index.get(new)
            if k is None:
                continue
            for t, c in q.reduce(k).items():
                acc[t] = acc.get(t, 0) + v * c
        for t, v in acc.items():
            if v != 0:
                out[t, col] = v
    return out


def _tensor_quotient(M: GradedBimodule, N: GradedBimodule, compatible, relators_for, name: str):
    pairs = [(a, b) for a in range(M.dim) for b in range(N.dim) if compatible(a, b)]
    index = {p: i for i, p in enumerate(pairs)}
    q = _Quotient(len(pairs), relators_for(pairs, index))
    degs = [M.degrees[pairs[i][0]] + N.degrees[pairs[i][1]] for i in q.free]
    lv = [M.left_vertex[pairs[i][0]] for i in q.free]
    rv = [N.right_vertex[pairs[i][1]] for i in q.free]
    left = (lambda g: _induced_action(q, pairs, index, M.left(g), 0)) if M.has_left else None
    right = (lambda g: _induced_action(q, pairs, index, N.right(g), 1)) \
        if N.has_right else None
    return GradedBimodule(M.algebra, degs, lv, rv, left, right, name)


def tensor_over_algebra(M: GradedBimodule, N: GradedBimodule) -> GradedBimodule:
    """M (x)_B N as the quotient by m.g (x) n - m (x) g.n."""
    if M.algebra != N.algebra:
        raise ValueError("tensor factors live over different algebras")
    if not (M.has_right and N.has_left):
        raise ValueError("need a right action on the left factor and a left action on the right factor")
    alg = M.algebra

    def compatible(a, b):
        return M.right_vertex[a] == N.left_vertex[b]

    def relators(pairs, index):
        for g in alg.generators():
            mg = _columns(M.right(g))
            gn = _columns(N.left(g))
            for a in range(M.dim):
                for b in range(N.dim):
                    row: dict[int, fmpq] = {}
                    for a2, v in mg[a]:
                        k = index.get((a2, b))
                        if k is not None:
                            row[k] = row.get(k, 0) + v
                    for b2, v in gn[b]:
                        k = index.get((a, b2))
                        if k is not None:
                            row[k] = row.get(k, 0) - v
                    row = {k: v for k, v in row.items() if v != 0}
                    if row:
                        yield row

    return _tensor_quotient(M, N, compatible, relators, f"{M.name}*{N.name}")


def tensor_over_scalars(M: GradedBimodule | OneSidedModule, N: GradedBimodule | OneSidedModule,
                        j: int) -> GradedBimodule:
    """M (x)_{K_j} N; for j >= 2 the quotient identifies m.ie (x) n with m (x) ie.n."""
    if isinstance(M, OneSidedModule):
        M = GradedBimodule.from_one_sided(M)
    if isinstance(N, OneSidedModule):
        N = GradedBimodule.from_one_sided(N)
    if M.algebra != N.algebra:
        raise ValueError("tensor factors live over different algebras")
    alg = M.algebra
    for X in (M, N):
        if X.scalar is not None and X.scalar[0] != j:
            raise ValueError(f"scalar structure of index {X.scalar[0]} does not match {j}")

    def ie_of(X, side):
        if X.scalar is not None:
            return X.scalar[1]
        ie = alg.ie_index(j)
        return X.right(ie) if side == "right" else X.left(ie)

    def relators(pairs, index):
        if j == 1:
            return
        mi = _columns(ie_of(M, "right"))
        ni = _columns(ie_of(N, "left"))
        for a in range(M.dim):
            for b in range(N.dim):
                row: dict[int, fmpq] = {}
                for a2, v in mi[a]:
                    k = index[(a2, b)]
                    row[k] = row.get(k, 0) + v
                for b2, v in ni[b]:
                    k = index[(a, b2)]
                    row[k] = row.get(k, 0) - v
                row = {k: v for k, v in row.items() if v != 0}
                if row:
                    yield row

    return _tensor_quotient(M, N, lambda a, b: True, relators, f"{M.name}*{N.name}")


def U_generic(n: int, j: int) -> GradedBimodule:
    """U_j built from the projectives by the scalar tensor quotient (cross-check of the normal form)."""
    from .zigzag import projective
    alg = build_algebra(n)
    out = tensor_over_scalars(projective(alg, j, "left"), projective(alg, j, "right"), j).shift(1)
    out.name = f"U{j}"
    return out


# hom spaces


def hom_space(M: GradedBimodule, N: GradedBimodule, d: int = 0) -> list[BimoduleMap]:
    """Basis of the maps M -> N raising degrees by d that commute with every available action."""
    if M.algebra != N.algebra:
        raise ValueError("modules live over different algebras")
    alg = M.algebra
    use_left, use_right = M.has_left and N.has_left, M.has_right and N.has_right

    def ok(t, s):
        if N.degrees[t] != M.degrees[s] + d:
            return False
        if use_left and N.left_vertex[t] != M.left_vertex[s]:
            return False
        if use_right and N.right_vertex[t] != M.right_vertex[s]:
            return False
        return True

    unknowns = [(t, s) for s in range(M.dim) for t in range(N.dim) if ok(t, s)]
    if not unknowns:
        return []
    uidx = {u: i for i, u in enumerate(unknowns)}
    by_src: dict[int, list[int]] = {}
    by_tgt: dict[int, list[int]] = {}
    for t, s in unknowns:
        by_src.setdefault(s, []).append(t)
        by_tgt.setdefault(t, []).append(s)
    rows = []
    for g in alg.generators():
        for act_M, act_N in ((M.left, N.left) if use_left else (None, None),
                             (M.right, N.right) if use_right else (None, None)):
            if act_M is None:
                continue
            AN = _columns(act_N(g))  # AN[t] = [(t2, v)] : N.g[t2, t]
            AM_rows = _rows(act_M(g))  # AM_rows[s] = [(s0, v)] : M.g[s, s0]
            # (AN phi - phi AM)[t2, s0] = sum_t AN[t2,t] phi[t,s0] - sum_s phi[t2,s] AM[s,s0]
            eqs: dict[tuple[int, int], dict[int, fmpq]] = {}
            for (t, s0), k in uidx.items():
                for t2, v in AN[t]:
                    e = eqs.setdefault((t2, s0), {})
                    e[k] = e.get(k, 0) + v
            for (t2, s), k in uidx.items():
                for s0, v in AM_rows[s]:
                    e = eqs.setdefault((t2, s0), {})
                    e[k] = e.get(k, 0) - v
            for e in eqs.values():
                e = {k: v for k, v in e.items() if v != 0}
                if e:
                    rows.append(e)
    kernel = sparse_kernel(rows, len(unknowns))
    out = []
    for vec in kernel:
        m = fmpq_mat(N.dim, M.dim)
        for k, v in vec.items():
            t, s = unknowns[k]
            m[t, s] = v
        out.append(BimoduleMap(M, N, m, d))
    return out


def _rows(m: fmpq_mat) -> list[list[tuple[int, fmpq]]]:
    """rows[i] = [(j, m[i, j]) nonzero]."""
    return chains.sparse_columns(m.transpose())


# isomorphisms


@dataclass
class IsoResult:
    """Outcome of an isomorphism search.

    ``certified`` is True when the answer is exact: a verified invertible map,
    or a proof that none exists.  Otherwise ``failure_bound`` bounds the
    probability that an isomorphism exists but every random trial missed it.
    """
    map: BimoduleMap | None
    certified: bool
    failure_bound: float = 0.0
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.map is not None

    def __bool__(self):
        return self.found


def find_isomorphism(M: GradedBimodule, N: GradedBimodule, seed: int = 0,
                     trials: int = 20, sample: int = 10 ** 6) -> IsoResult:
    if M is N:
        return IsoResult(M.identity(), True, reason="identical modules")
    if M.label_counts() != N.label_counts():
        return IsoResult(None, True, reason="graded dimensions differ")
    if M.dim == 0:
        return IsoResult(BimoduleMap(M, N, fmpq_mat(0, 0), 0), True, reason="both zero")
    basis = hom_space(M, N, 0)
    if not basis:
        return IsoResult(None, True, reason="no degree-0 maps")
    rng = random.Random(seed)
    for _ in range(trials):
        m = fmpq_mat(N.dim, M.dim)
        for f in basis:
            m += rng.randrange(1, sample + 1) * f.matrix
        if is_invertible(m):
            return IsoResult(BimoduleMap(M, N, m, 0), True, reason="invertible random combination")
    bound = min(1.0, M.dim / sample) ** trials
    return IsoResult(None, False, bound, f"{trials} random combinations were singular")


# the named maps


def _word_module(n: int, word: tuple, shift: int) -> GradedBimodule:
    return GradedBimodule.from_word(n, word, shift)


def named_map(kind: str, j: int, n: int) -> BimoduleMap:
    """The structure maps, with their natural sources and targets:

    beta         U_j      -> B        (x (x) y -> xy), degree 1
    gamma        B        -> U_j      (1 -> the coproduct element), degree 1
    alpha_split  U_j      -> U_j U_j  (e (x) e -> e (x) e (x) e), degree -1
    delta_merge  U_j U_j  -> U_j      (contracts the middle loop), degree -1
    epsilon      B        -> B        (multiplication by the image of the root), degree 2
    """
    if not 1 <= j <= n:
        raise IndexError(f"index {j} out of range 1..{n}")
    if kind == "beta":
        src, tgt, m, d = (j,), (), chains.multiply_map(n, j), 1
    elif kind == "gamma":
        src, tgt, m, d = (), (j,), chains.coproduct_map(n, j), 1
    elif kind == "alpha_split":
        src, tgt, m, d = (j,), (j, j), chains.split_map(n, j), -1
    elif kind == "delta_merge":
        src, tgt, m, d = (j, j), (j,), chains.merge_map(n, j), -1
    elif kind == "epsilon":
        alg = build_algebra(n)
        src, tgt, m, d = (), (), chains.central_map(n, alg.root_image(j)), 2
    else:
        raise ValueError(f"unknown map kind {kind!r}; expected one of {NAMED_KINDS}")
    return BimoduleMap(_word_module(n, src, 0), _word_module(n, tgt, 0), m, d)
