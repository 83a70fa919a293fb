"""Bounded cochain complexes of bimodules (or left modules) built from pieces.

Term ``i`` of a :class:`BoundedComplex` is a direct sum of :class:`Piece`
summands; the differential from term ``i`` to term ``i + 1`` is stored as a
sparse dict of blocks ``(target summand, source summand) -> matrix`` in piece
coordinates.  Minimization splits every summand into atoms and cancels
nonzero blocks between atoms of the same key (such blocks are invertible).
"""
from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field

from flint import fmpq, fmpq_mat

from . import _kernels
from .chains import multiply_map, coproduct_map, tensor_left, tensor_right
from .foundation.laurent import Laurent
from .foundation.linalg import (
    block_matrix, identity, inverse, is_invertible, is_zero, sparse_kernel, submatrix, to_sparse,
)
from .foundation.rational import format_rational
from .pieces import (
    Piece, compress, compress_b, compress_q, decompose, format_key, full_piece,
    hom_matrices, hom_parameters, lift, restrict_piece, shift_piece, tensor_pieces,
)

Blocks = dict  # (target index, source index) -> fmpq_mat


class BoundedComplex:
    def __init__(self, n: int, terms: dict[int, list[Piece]], diffs: dict[int, Blocks] | None = None):
        self.n = n
        self.terms = {i: list(ps) for i, ps in sorted(terms.items()) if ps}
        self.diffs: dict[int, Blocks] = {}
        for i, blocks in (diffs or {}).items():
            kept = {k: m for k, m in blocks.items() if not is_zero(m)}
            if kept:
                if i not in self.terms or i + 1 not in self.terms:
                    raise ValueError(f"differential out of degree {i} has no source or target term")
                self.diffs[i] = kept

    # structure

    @property
    def degrees(self) -> list[int]:
        return sorted(self.terms)

    @property
    def is_left_module(self) -> bool:
        return any(p.end is not None for ps in self.terms.values() for p in ps)

    def term(self, i: int) -> list[Piece]:
        return self.terms.get(i, [])

    def sizes(self, i: int) -> list[int]:
        return [p.dim for p in self.term(i)]

    def dim(self, i: int) -> int:
        return sum(self.sizes(i))

    def total_dim(self) -> int:
        return sum(self.dim(i) for i in self.terms)

    def differential(self, i: int) -> fmpq_mat:
        """The differential out of degree i as one matrix on the summed coordinates."""
        return block_matrix(self.sizes(i + 1), self.sizes(i), self.diffs.get(i, {}))

    def d_squared_zero(self) -> bool:
        for i in self.terms:
            if i + 1 in self.diffs and i in self.diffs:
                if not is_zero(self.differential(i + 1) * self.differential(i)):
                    return False
        return True

    def graded_dimensions(self) -> dict[int, Laurent]:
        out = {}
        for i, ps in self.terms.items():
            tot = Laurent()
            for p in ps:
                tot = tot + p.graded_dimension()
            out[i] = tot
        return out

    def keys(self) -> dict[int, Counter]:
        """Multiset of atom keys per degree (after splitting into atoms)."""
        out = {}
        for i, ps in self.terms.items():
            c = Counter()
            for p in ps:
                for x in decompose(p):
                    c[x.key] += 1
            out[i] = c
        return out

    def is_unit(self) -> bool:
        """True when this is (isomorphic to) the regular bimodule in degree 0, unshifted."""
        k = self.keys()
        return list(k) == [0] and k[0] == Counter({("B", 0): 1})

    # shifts

    def shift(self, k: int) -> "BoundedComplex":
        """C[k]: term i of the result is term i + k of C; differentials pick up (-1)^k."""
        sign = -1 if k % 2 else 1
        return BoundedComplex(self.n, {i - k: ps for i, ps in self.terms.items()},
                              {i - k: {t: sign * m for t, m in b.items()} for i, b in self.diffs.items()})

    def twist(self, m: int) -> "BoundedComplex":
        """C(m): every term shifted in internal degree."""
        return BoundedComplex(self.n, {i: [shift_piece(p, m) for p in ps] for i, ps in self.terms.items()},
                              self.diffs)

    # display and serialization

    def describe(self) -> str:
        parts = []
        for i, ps in self.terms.items():
            labels = []
            for p in ps:
                labels.append(format_key(p.key) if p.is_atom else p.describe())
            parts.append(f"[{i}] " + " + ".join(labels) + f"  (gdim {self.graded_dimensions()[i]})")
        return "\n".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": {str(i): [{"word": list(p.word), "end": p.end, "shift": p.shift, "dim": p.dim,
                                "key": format_key(p.key) if p.is_atom else None,
                                "graded_dimension": p.graded_dimension().to_json()} for p in ps]
                      for i, ps in self.terms.items()},
            "differentials": {str(i): [{"target": t, "source": s, "entries": _triplets(m)}
                                       for (t, s), m in sorted(b.items())]
                              for i, b in sorted(self.diffs.items())},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __repr__(self):
        return f"BoundedComplex(n={self.n}, degrees={self.degrees}, dims={[self.dim(i) for i in self.degrees]})"


def _triplets(m: fmpq_mat) -> list:
    return [[i, j, format_rational(v)] for (i, j), v in sorted(to_sparse(m).items())]


# basic complexes


def unit_complex(n: int) -> BoundedComplex:
    return BoundedComplex(n, {0: [full_piece(n, ())]})


def module_complex(n: int, k: int, shift: int = 0) -> BoundedComplex:
    """The projective P_k in degree 0."""
    return BoundedComplex(n, {0: [full_piece(n, (), shift, end=k)]})


def zero_complex(n: int) -> BoundedComplex:
    return BoundedComplex(n, {})


def rouquier_complex(n: int, j: int, sign: str = "+") -> BoundedComplex:
    """R_j (sign '+'): U_j(-1) -> B in degrees -1, 0 via multiplication.

    R'_j (sign '-'): B -> U_j(1) in degrees 0, 1 via the coproduct element.
    """
    if not 1 <= j <= n:
        raise IndexError(f"index {j} out of range 1..{n}")
    if sign in ("+", 1, "plus"):
        return BoundedComplex(n, {-1: [full_piece(n, (j,), -1)], 0: [full_piece(n, ())]},
                              {-1: {(0, 0): multiply_map(n, j)}})
    if sign in ("-", -1, "minus"):
        return BoundedComplex(n, {0: [full_piece(n, ())], 1: [full_piece(n, (j,), 1)]},
                              {0: {(0, 0): coproduct_map(n, j)}})
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


# tensor products


def _tensor_block(p1: Piece, f: fmpq_mat | None, q1: Piece, p2: Piece, g: fmpq_mat | None, q2: Piece,
                  src: Piece, tgt: Piece) -> fmpq_mat:
    """(f (x) g) restricted to the summands src -> tgt; None for f or g means identity."""
    n = p1.n
    end = p2.end
    if f is None:
        G = lift(g, p2, q2)
        M = tensor_left(n, p1.word, G, p2.word, q2.word, end)
    else:
        F = lift(f, p1, q1)
        M = tensor_right(F, n, p1.word, q1.word, p2.word, end)
    return compress(M, src, tgt)


def complex_tensor(C: BoundedComplex, D: BoundedComplex) -> BoundedComplex:
    """Total complex of C (x)_B D with d(x (x) y) = dx (x) y + (-1)^i x (x) dy."""
    if C.n != D.n:
        raise ValueError("complexes over different algebras")
    if C.is_left_module:
        raise ValueError("the left factor must be a complex of bimodules")
    n = C.n
    terms: dict[int, list[Piece]] = {}
    index: dict[tuple, tuple[int, int]] = {}  # (i, s, j, t) -> (total degree, position)
    for i, ps in C.terms.items():
        for j, qs in D.terms.items():
            for s, p in enumerate(ps):
                for t, q in enumerate(qs):
                    piece = tensor_pieces(p, q)
                    if piece.dim == 0:
                        continue
                    lst = terms.setdefault(i + j, [])
                    index[(i, s, j, t)] = (i + j, len(lst))
                    lst.append(piece)
    diffs: dict[int, Blocks] = {}

    def put(src_key, tgt_key, block):
        if is_zero(block):
            return
        k, a = index[src_key]
        _, b = index[tgt_key]
        blocks = diffs.setdefault(k, {})
        blocks[(b, a)] = blocks[(b, a)] + block if (b, a) in blocks else block

    for (i, s, j, t), (k, a) in index.items():
        p, q = C.terms[i][s], D.terms[j][t]
        src = terms[k][a]
        for (s2, s1), f in C.diffs.get(i, {}).items():
            if s1 != s or (i + 1, s2, j, t) not in index:
                continue
            tgt = terms[k + 1][index[(i + 1, s2, j, t)][1]]
            put((i, s, j, t), (i + 1, s2, j, t), _tensor_block(p, f, C.terms[i + 1][s2], q, None, q, src, tgt))
        sign = -1 if i % 2 else 1
        for (t2, t1), g in D.diffs.get(j, {}).items():
            if t1 != t or (i, s, j + 1, t2) not in index:
                continue
            tgt = terms[k + 1][index[(i, s, j + 1, t2)][1]]
            blk = _tensor_block(p, None, p, q, g, D.terms[j + 1][t2], src, tgt)
            put((i, s, j, t), (i, s, j + 1, t2), sign * blk if sign < 0 else blk)
    return BoundedComplex(n, terms, diffs)


def direct_sum_complex(C: BoundedComplex, D: BoundedComplex) -> BoundedComplex:
    terms, diffs = {}, {}
    for i in set(C.terms) | set(D.terms):
        terms[i] = C.term(i) + D.term(i)
    for i in set(C.diffs) | set(D.diffs):
        off_s, off_t = len(C.term(i)), len(C.term(i + 1))
        b = dict(C.diffs.get(i, {}))
        for (t, s), m in D.diffs.get(i, {}).items():
            b[(t + off_t, s + off_s)] = m
        diffs[i] = b
    return BoundedComplex(C.n, terms, diffs)


# chain maps


@dataclass
class ChainMap:
    """Degree-0 chain map given by blocks per cohomological degree."""
    source: BoundedComplex
    target: BoundedComplex
    blocks: dict[int, Blocks]

    def matrix(self, i: int) -> fmpq_mat:
        return block_matrix(self.target.sizes(i), self.source.sizes(i), self.blocks.get(i, {}))

    def is_chain_map(self) -> bool:
        for i in set(self.source.terms) | set(self.target.terms):
            lhs = self.target.differential(i) * self.matrix(i)
            rhs = self.matrix(i + 1) * self.source.differential(i)
            if lhs != rhs:
                return False
        return True

    def is_isomorphism(self) -> bool:
        degs = set(self.source.terms) | set(self.target.terms)
        return self.is_chain_map() and all(is_invertible(self.matrix(i)) for i in degs)


# minimization


class _Graph:
    """Mutable atom-level differential used by Gaussian elimination."""

    def __init__(self):
        self.deg: dict[int, int] = {}
        self.atom: dict[int, Piece] = {}
        self.dout: dict[int, dict[int, fmpq_mat]] = {}
        self.din: dict[int, dict[int, fmpq_mat]] = {}

    def add(self, aid: int, deg: int, atom: Piece):
        self.deg[aid] = deg
        self.atom[aid] = atom
        self.dout[aid] = {}
        self.din[aid] = {}

    def set(self, y: int, x: int, m: fmpq_mat):
        if is_zero(m):
            self.dout[x].pop(y, None)
            self.din[y].pop(x, None)
        else:
            self.dout[x][y] = m
            self.din[y][x] = m

    def remove(self, a: int):
        for y in self.dout.pop(a):
            self.din[y].pop(a, None)
        for x in self.din.pop(a):
            self.dout[x].pop(a, None)
        del self.deg[a], self.atom[a]


@dataclass
class MinimizeResult:
    """A minimal complex with, on request, homotopy-equivalence witnesses.

    ``to_min[i]`` and ``from_min[i]`` are the chain maps between the input and
    the minimal complex; ``homotopy[i]`` maps input degree i + 1 to degree i,
    with ``1 - from_min o to_min = d h + h d`` on the input.
    """
    complex: BoundedComplex
    source: BoundedComplex
    to_min: dict[int, fmpq_mat] | None = None
    from_min: dict[int, fmpq_mat] | None = None
    homotopy: dict[int, fmpq_mat] | None = None
    cancellations: int = 0

    def verify(self) -> bool:
        """Exact check of the chain-map and homotopy identities."""
        if self.to_min is None:
            raise ValueError("minimization ran without witnesses")
        C, M = self.source, self.complex
        degs = sorted(set(C.terms) | set(M.terms))

        def get(d, i, rows, cols):
            m = d.get(i)
            return m if m is not None else fmpq_mat(rows, cols)

        for i in degs:
            F_i = get(self.to_min, i, M.dim(i), C.dim(i))
            F_n = get(self.to_min, i + 1, M.dim(i + 1), C.dim(i + 1))
            G_i = get(self.from_min, i, C.dim(i), M.dim(i))
            G_n = get(self.from_min, i + 1, C.dim(i + 1), M.dim(i + 1))
            if M.differential(i) * F_i != F_n * C.differential(i):
                return False
            if C.differential(i) * G_i != G_n * M.differential(i):
                return False
            H_i = get(self.homotopy, i, C.dim(i), C.dim(i + 1))
            H_p = get(self.homotopy, i - 1, C.dim(i - 1), C.dim(i))
            lhs = identity(C.dim(i)) - G_i * F_i
            rhs = C.differential(i - 1) * H_p + H_i * C.differential(i)
            if lhs != rhs:
                return False
        return True


def atomize(C: BoundedComplex) -> tuple[BoundedComplex, dict[int, fmpq_mat], dict[int, fmpq_mat]]:
    """Split every summand into atoms; returns the atomized complex and the two change-of-basis maps."""
    terms: dict[int, list[Piece]] = {}
    where: dict[tuple[int, int], list[tuple[int, Piece]]] = {}
    for i, ps in C.terms.items():
        lst: list[Piece] = []
        for s, p in enumerate(ps):
            where[(i, s)] = []
            for x in decompose(p):
                where[(i, s)].append((len(lst), x))
                lst.append(x)
        terms[i] = lst

    def qmat(x, p):
        return identity(p.dim) if (x is p or x.full) else compress_q(x, p)

    def bmat(x, p):
        return identity(p.dim) if (x is p or x.full) else compress_b(x, p)

    diffs: dict[int, Blocks] = {}
    for i, blocks in C.diffs.items():
        out: Blocks = {}
        for (t, s), m in blocks.items():
            p_s, p_t = C.terms[i][s], C.terms[i + 1][t]
            for xi, x in where[(i, s)]:
                right = m * bmat(x, p_s)
                for yi, y in where[(i + 1, t)]:
                    b = qmat(y, p_t) * right
                    if not is_zero(b):
                        out[(yi, xi)] = b
        diffs[i] = out
    A = BoundedComplex(C.n, terms, diffs)
    to_at, from_at = {}, {}
    for i, ps in C.terms.items():
        tb, fb = {}, {}
        for s, p in enumerate(ps):
            for xi, x in where[(i, s)]:
                tb[(xi, s)] = qmat(x, p)
                fb[(s, xi)] = bmat(x, p)
        to_at[i] = block_matrix(A.sizes(i), C.sizes(i), tb)
        from_at[i] = block_matrix(C.sizes(i), A.sizes(i), fb)
    return A, to_at, from_at


def minimize(C: BoundedComplex, seed: int | None = None, witnesses: bool = False) -> MinimizeResult:
    """Cancel every invertible atom-to-atom differential block.

    Degrees are processed in ascending order; a cancellation in degree i only
    changes blocks inside degree i, so one pass suffices.  ``seed`` shuffles
    the order in which candidate pairs are tried.
    """
    A, to_at, from_at = atomize(C) if witnesses else (atomize_only(C), None, None)
    g = _Graph()
    ids: dict[tuple[int, int], int] = {}
    for i, ps in A.terms.items():
        for s, p in enumerate(ps):
            aid = len(ids)
            ids[(i, s)] = aid
            g.add(aid, i, p)
    for i, blocks in A.diffs.items():
        for (t, s), m in blocks.items():
            g.set(ids[(i + 1, t)], ids[(i, s)], m)

    if witnesses:
        # F[a] = {orig: block} (row of F for current atom a); G[a] = {orig: block} (column)
        F = {a: {a: identity(g.atom[a].dim)} for a in g.atom}
        G = {a: {a: identity(g.atom[a].dim)} for a in g.atom}
        H: dict[tuple[int, int], fmpq_mat] = {}  # (orig in degree i, orig in degree i+1)
    rng = random.Random(seed) if seed is not None else None
    count = 0
    for i in A.degrees:
        while True:
            xs = [a for a, d in g.deg.items() if d == i]
            if rng is not None:
                rng.shuffle(xs)
            pair = None
            for x in xs:
                ys = [y for y in sorted(g.dout[x]) if g.atom[y].key == g.atom[x].key]
                if ys:
                    pair = (x, rng.choice(ys) if rng is not None else ys[0])
                    break
            if pair is None:
                break
            x, y = pair
            phi_inv = inverse(g.dout[x][y])
            outs = {y2: m for y2, m in g.dout[x].items() if y2 != y}
            ins = {x2: m for x2, m in g.din[y].items() if x2 != x}
            for y2, dy2x in outs.items():
                a = dy2x * phi_inv
                for x2, dyx2 in ins.items():
                    old = g.dout[x2].get(y2)
                    upd = a * dyx2
                    g.set(y2, x2, old - upd if old is not None else -upd)
            if witnesses:
                for y2, dy2x in outs.items():
                    a = dy2x * phi_inv
                    row = F[y2]
                    for o, m in F[y].items():
                        row[o] = row[o] - a * m if o in row else -(a * m)
                for x2, dyx2 in ins.items():
                    b = phi_inv * dyx2
                    col = G[x2]
                    for o, m in G[x].items():
                        col[o] = col[o] - m * b if o in col else -(m * b)
                for ox, gm in G[x].items():
                    left = gm * phi_inv
                    for oy, fm in F[y].items():
                        k = (ox, oy)
                        H[k] = H[k] + left * fm if k in H else left * fm
                for a_ in (x, y):
                    F.pop(a_)
                    G.pop(a_)
            g.remove(x)
            g.remove(y)
            count += 1

    new_terms: dict[int, list[Piece]] = {}
    pos: dict[int, int] = {}
    for a in sorted(g.atom):
        lst = new_terms.setdefault(g.deg[a], [])
        pos[a] = len(lst)
        lst.append(g.atom[a])
    new_diffs: dict[int, Blocks] = {}
    for x, outs in g.dout.items():
        for y, m in outs.items():
            new_diffs.setdefault(g.deg[x], {})[(pos[y], pos[x])] = m
    M = BoundedComplex(C.n, new_terms, new_diffs)
    res = MinimizeResult(M, C, cancellations=count)
    if witnesses:
        orig_pos = {aid: s for (i, s), aid in ids.items()}
        to_min, from_min, hom = {}, {}, {}
        for i in set(A.terms) | set(M.terms):
            fb, gb = {}, {}
            for a, row in F.items():
                if g.deg[a] != i:
                    continue
                for o, m in row.items():
                    fb[(pos[a], orig_pos[o])] = m
                for o, m in G[a].items():
                    gb[(orig_pos[o], pos[a])] = m
            Fi = block_matrix(M.sizes(i), A.sizes(i), fb)
            Gi = block_matrix(A.sizes(i), M.sizes(i), gb)
            to_min[i] = Fi * to_at[i] if i in to_at else Fi
            from_min[i] = from_at[i] * Gi if i in from_at else Gi
        by_deg: dict[int, Blocks] = {}
        deg_of = {aid: i for (i, s), aid in ids.items()}
        for (ox, oy), m in H.items():
            by_deg.setdefault(deg_of[ox], {})[(orig_pos[ox], orig_pos[oy])] = m
        for i, blocks in by_deg.items():
            Hi = block_matrix(A.sizes(i), A.sizes(i + 1), blocks)
            hom[i] = from_at[i] * Hi * to_at[i + 1]
        res.to_min, res.from_min, res.homotopy = to_min, from_min, hom
    return res


def atomize_only(C: BoundedComplex) -> BoundedComplex:
    if all(p.is_atom for ps in C.terms.values() for p in ps):
        return C
    return atomize(C)[0]


def minimal(C: BoundedComplex, seed: int | None = None) -> BoundedComplex:
    return minimize(C, seed).complex


# homotopy equivalence


@dataclass
class Verdict:
    """Answer of :func:`homotopy_equivalent`.

    ``certified`` marks exact answers: "yes" with a verified chain isomorphism
    between minimal forms, or "no" because the minimal forms have different
    atom content in some degree.  An uncertified "no" carries a bound on the
    probability that an isomorphism was missed.
    """
    equivalent: bool
    certified: bool
    reason: str
    witness: ChainMap | None = None
    failure_bound: float = 0.0
    minimal: tuple | None = field(default=None, repr=False)

    def __bool__(self):
        return self.equivalent


def chain_map_space(C: BoundedComplex, D: BoundedComplex) -> list[ChainMap]:
    """Basis of the degree-0 chain maps C -> D, for complexes whose summands are atoms."""
    params = []  # (degree, target idx, source idx, matrix)
    for i, xs in C.terms.items():
        for yi, y in enumerate(D.term(i)):
            for xi, x in enumerate(xs):
                W = hom_parameters(x, y)
                if W.ncols():
                    for m in hom_matrices(x, y, W):
                        params.append((i, yi, xi, m))
    if not params:
        return []
    # equations: for each degree i, D.d f_i - f_{i+1} C.d = 0, one row per block entry
    rows: dict[tuple, dict[int, fmpq]] = {}

    def add(eq, m, k, sign):
        for (r, c), v in to_sparse(m).items():
            row = rows.setdefault(eq + (r, c), {})
            row[k] = row.get(k, 0) + (v if sign > 0 else -v)

    for k, (i, yi, xi, m) in enumerate(params):
        for (y2, y1), dm in D.diffs.get(i, {}).items():
            if y1 == yi:
                add((i, y2, xi), dm * m, k, 1)
        for (x2, x1), cm in C.diffs.get(i - 1, {}).items():
            if x2 == xi:
                add((i - 1, yi, x1), m * cm, k, -1)
    kernel = sparse_kernel([{k: v for k, v in r.items() if v != 0} for r in rows.values()], len(params))
    out = []
    for vec in kernel:
        blocks: dict[int, Blocks] = {}
        for k, c in vec.items():
            i, yi, xi, m = params[k]
            b = blocks.setdefault(i, {})
            b[(yi, xi)] = b[(yi, xi)] + c * m if (yi, xi) in b else c * m
        out.append(ChainMap(C, D, blocks))
    return out


def _random_combination(basis: list[ChainMap], rng: random.Random, sample: int) -> ChainMap:
    C, D = basis[0].source, basis[0].target
    blocks: dict[int, Blocks] = {}
    for f in basis:
        c = rng.randrange(1, sample + 1)
        for i, bl in f.blocks.items():
            tgt = blocks.setdefault(i, {})
            for k, m in bl.items():
                tgt[k] = tgt[k] + c * m if k in tgt else c * m
    return ChainMap(C, D, blocks)


def _invertible(m: fmpq_mat) -> bool:
    if m.nrows() != m.ncols():
        return False
    if m.nrows() == 0:
        return True
    red = _kernels.fmpq_to_mod_p(m)
    if red is not None and _kernels.rank_mod_p(red) == m.nrows():
        return True  # full rank mod p implies full rank over Q
    return is_invertible(m)


def find_chain_isomorphism(C: BoundedComplex, D: BoundedComplex, seed: int = 0, trials: int = 20,
                           sample: int = 10 ** 6) -> tuple[ChainMap | None, float]:
    """Random search for an invertible chain map between atom complexes."""
    degs = sorted(set(C.terms) | set(D.terms))
    if any(C.dim(i) != D.dim(i) for i in degs):
        return None, 0.0
    if all(C.dim(i) == 0 for i in degs):
        return ChainMap(C, D, {}), 0.0
    basis = chain_map_space(C, D)
    if not basis:
        return None, 0.0
    rng = random.Random(seed)
    for _ in range(trials):
        f = _random_combination(basis, rng, sample)
        if all(_invertible(f.matrix(i)) for i in degs):
            return f, 0.0
    total = max(C.total_dim(), 1)
    return None, min(1.0, total / sample) ** trials


def homotopy_equivalent(C: BoundedComplex, D: BoundedComplex, seed: int = 0) -> Verdict:
    Cm = minimize(C, seed).complex
    Dm = minimize(D, seed).complex
    kc, kd = Cm.keys(), Dm.keys()
    if kc != kd:
        diff = sorted(set(kc) ^ set(kd) | {i for i in set(kc) & set(kd) if kc[i] != kd[i]})
        return Verdict(False, True, f"minimal forms differ in degrees {diff}", minimal=(Cm, Dm))
    f, bound = find_chain_isomorphism(Cm, Dm, seed)
    if f is None:
        if bound == 0.0:
            return Verdict(False, True, "no chain maps between minimal forms", minimal=(Cm, Dm))
        return Verdict(False, False, "random chain maps were not invertible", failure_bound=bound,
                       minimal=(Cm, Dm))
    if not f.is_isomorphism():
        raise AssertionError("chain isomorphism failed exact verification")
    return Verdict(True, True, "invertible chain map between minimal forms", witness=f, minimal=(Cm, Dm))


# restriction to projectives


def apply_to_module(C: BoundedComplex, k: int) -> BoundedComplex:
    """C (x)_B P_k as a complex of left modules."""
    if C.is_left_module:
        raise ValueError("complex is already a complex of left modules")
    terms = {i: [restrict_piece(p, k) for p in ps] for i, ps in C.terms.items()}
    diffs: dict[int, Blocks] = {}
    for i, blocks in C.diffs.items():
        out: Blocks = {}
        for (t, s), m in blocks.items():
            ps, pt = C.terms[i][s], C.terms[i + 1][t]
            cs, ct = terms[i][s], terms[i + 1][t]
            if cs.dim == 0 or ct.dim == 0:
                continue
            M = lift(m, ps, pt)
            rows = [pt.chain.index[u] for u in ct.chain.basis]
            cols = [ps.chain.index[u] for u in cs.chain.basis]
            out[(t, s)] = compress(submatrix(M, rows, cols), cs, ct)
        diffs[i] = out
    # drop zero summands and reindex
    keep = {i: [s for s, p in enumerate(ps) if p.dim] for i, ps in terms.items()}
    new_terms = {i: [terms[i][s] for s in keep[i]] for i in terms}
    re = {i: {s: a for a, s in enumerate(keep[i])} for i in terms}
    new_diffs = {i: {(re[i + 1][t], re[i][s]): m for (t, s), m in b.items()} for i, b in diffs.items()}
    return BoundedComplex(C.n, new_terms, new_diffs)
