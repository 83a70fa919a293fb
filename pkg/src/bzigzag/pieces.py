"""Direct summands of tensor words and their splitting into indecomposables.

A :class:`Piece` is a graded sub-bimodule (or left submodule) of a shifted
chain, given by an embedding ``B`` and a bimodule projection ``Q`` with
``QB = 1``.  Every chain is ``P_a (x) V (x) _bP`` for a middle
``(K_a, K_b)``-bimodule ``V``; splitting ``V`` into simple pieces splits the
chain into indecomposables (atoms).  Atoms of the same key are isomorphic and
atoms of different keys are not, and a nonzero degree-0 map between atoms of
the same key is invertible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from flint import fmpq, fmpq_mat

from .chains import Chain, chain, identity_map, tensor_left, tensor_right
from .foundation.linalg import (
    SparseEliminator, column_space_basis, inverse, sparse_kernel, submatrix,
)

# atom types of the middle simple bimodule
RR, RC, CR, CC, CC_BAR = "RR", "RC", "CR", "CC", "CCbar"


@dataclass(eq=False)
class Piece:
    chain: Chain
    shift: int = 0
    B: fmpq_mat | None = None  # chain coords x piece coords; None = whole chain
    Q: fmpq_mat | None = None
    key: tuple | None = None
    # atoms only: generator vector (chain coords) and one (p, sigma, q) per basis vector
    gen: dict | None = None
    model: list | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.chain.algebra.n

    @property
    def word(self) -> tuple:
        return self.chain.word

    @property
    def end(self):
        return self.chain.end

    @property
    def full(self) -> bool:
        return self.B is None

    @property
    def dim(self) -> int:
        return self.chain.dim if self.B is None else self.B.ncols()

    @property
    def is_atom(self) -> bool:
        return self.key is not None

    def embedding(self) -> fmpq_mat:
        return identity_map(self.chain) if self.B is None else self.B

    def projection(self) -> fmpq_mat:
        return identity_map(self.chain) if self.Q is None else self.Q

    def idempotent(self) -> fmpq_mat:
        if self.B is None:
            return identity_map(self.chain)
        return self.B * self.Q

    @cached_property
    def labels(self) -> list[tuple[int, int, int]]:
        """(left vertex, right vertex, degree) of each basis vector."""
        c = self.chain
        if self.B is None:
            return [(c.left_vertices[i], c.right_vertices[i], c.degrees[i] - self.shift)
                    for i in range(c.dim)]
        out = []
        cols = self.B.ncols()
        for j in range(cols):
            i = next(i for i in range(c.dim) if self.B[i, j] != 0)
            out.append((c.left_vertices[i], c.right_vertices[i], c.degrees[i] - self.shift))
        return out

    def graded_dimension(self):
        from .foundation.laurent import Laurent
        counts: dict[int, int] = {}
        for _, _, d in self.labels:
            counts[d] = counts.get(d, 0) + 1
        return Laurent(counts)

    def left_matrix(self, g: int) -> fmpq_mat:
        m = self._cache.get(("L", g))
        if m is None:
            m = self.chain.left_matrix(g)
            if self.B is not None:
                m = self.Q * m * self.B
            self._cache[("L", g)] = m
        return m

    def right_matrix(self, g: int) -> fmpq_mat:
        m = self._cache.get(("R", g))
        if m is None:
            m = self.chain.right_matrix(g)
            if self.B is not None:
                m = self.Q * m * self.B
            self._cache[("R", g)] = m
        return m

    def describe(self) -> str:
        base = self.chain.name()
        if self.shift:
            base += f"({self.shift})"
        if self.key is not None and not self.full:
            base += f"[{format_key(self.key)}]"
        return base


def format_key(key: tuple) -> str:
    if key[0] == "B":
        return f"B<{key[1]}>"
    if key[0] == "P":
        return f"P{key[1]}<{key[2]}>"
    a, b, typ, d = key
    return f"{a}{typ}{b}<{d}>"


def shifted_key(key: tuple, k: int) -> tuple:
    """Key of the atom after an extra grading shift (k) (degrees drop by k)."""
    return key[:-1] + (key[-1] - k,)


def full_piece(n: int, word: tuple, shift: int = 0, end: int | None = None) -> Piece:
    return Piece(chain(n, tuple(word), end), shift)


def piece_from_idempotent(c: Chain, shift: int, E: fmpq_mat) -> Piece:
    """The image of a bimodule idempotent on a chain, with its projection."""
    cols = column_space_basis(E)
    if len(cols) == c.dim:
        return Piece(c, shift)
    B = submatrix(E, list(range(c.dim)), cols)
    return Piece(c, shift, B, _projection_for(B, E))


def _projection_for(B: fmpq_mat, E: fmpq_mat) -> fmpq_mat:
    """Q with QB = 1 and BQ = E, given that the columns of B span the image of E."""
    k = B.ncols()
    if k == 0:
        return fmpq_mat(0, E.ncols())
    rows = column_space_basis(B.transpose())
    sub = submatrix(B, rows, list(range(k)))
    return inverse(sub) * submatrix(E, rows, list(range(E.ncols())))


def shift_piece(p: Piece, k: int) -> Piece:
    """The piece with an extra grading shift (k)."""
    key = shifted_key(p.key, k) if p.key is not None else None
    return Piece(p.chain, p.shift + k, p.B, p.Q, key, p.gen, p.model)


def tensor_pieces(p1: Piece, p2: Piece) -> Piece:
    """The summand p1 (x)_B p2 of chain(word1 + word2)."""
    n = p1.n
    if p1.end is not None:
        raise ValueError("left factor of a tensor product must be a bimodule piece")
    c = chain(n, p1.word + p2.word, p2.end)
    shift = p1.shift + p2.shift
    if p1.full and p2.full:
        return Piece(c, shift)
    if not p1.word:
        return _with_shift(p2, shift, c)
    if not p2.word and p2.end is None:
        return _with_shift(p1, shift, c)
    E = tensor_piece_map(p1, p1.idempotent(), p1, p2, p2.idempotent(), p2, chain_level=True)
    return piece_from_idempotent(c, shift, E)


def _with_shift(p: Piece, shift: int, c: Chain) -> Piece:
    if p.chain is not c:
        raise AssertionError("unexpected chain mismatch")
    key = shifted_key(p.key, shift - p.shift) if p.key is not None else None
    return Piece(c, shift, p.B, p.Q, key, p.gen, p.model)


def tensor_piece_map(s1: Piece, f: fmpq_mat, t1: Piece, s2: Piece, g: fmpq_mat, t2: Piece,
                     chain_level: bool = False) -> fmpq_mat:
    """f (x) g : s1 (x) s2 -> t1 (x) t2, for f, g given in piece coordinates.

    With ``chain_level`` the maps are already chain matrices and the result
    is returned on the ambient chains.
    """
    n = s1.n
    end = s2.end
    if chain_level:
        F, G = f, g
    else:
        F = t1.embedding() * f * s1.projection() if not (s1.full and t1.full) else f
        G = t2.embedding() * g * s2.projection() if not (s2.full and t2.full) else g
    right = tensor_left(n, s1.word, G, s2.word, t2.word, end)
    left = tensor_right(F, n, s1.word, t1.word, t2.word, end)
    M = left * right
    if chain_level:
        return M
    src, tgt = tensor_pieces(s1, s2), tensor_pieces(t1, t2)
    return compress(M, src, tgt)


def compress(M: fmpq_mat, src: Piece, tgt: Piece) -> fmpq_mat:
    """Chain-level map restricted to piece coordinates."""
    if not src.full:
        M = M * src.B
    if not tgt.full:
        M = tgt.Q * M
    return M


def lift(f: fmpq_mat, src: Piece, tgt: Piece) -> fmpq_mat:
    """Piece-coordinate map extended to the ambient chains (zero on complements)."""
    if not src.full:
        f = f * src.Q
    if not tgt.full:
        f = tgt.B * f
    return f


def restrict_piece(p: Piece, end: int) -> Piece:
    """The left module p e_end."""
    c = p.chain
    cut = chain(p.n, c.word, end)
    if p.full:
        return Piece(cut, p.shift)
    rows = [c.index[t] for t in cut.basis]
    E = submatrix(p.idempotent(), rows, rows)
    return piece_from_idempotent(cut, p.shift, E)


# splitting into atoms


class _Span:
    def __init__(self, dim: int):
        self.elim = SparseEliminator(dim)

    def add(self, vec: dict) -> bool:
        return self.elim.add(vec)


def _vec_of_column(M: fmpq_mat, j: int) -> dict:
    return {i: M[i, j] for i in range(M.nrows()) if M[i, j] != 0}


def _col_of_vec(vec: dict, dim: int) -> fmpq_mat:
    m = fmpq_mat(dim, 1)
    for i, v in vec.items():
        m[i, 0] = v
    return m


def _scale_add(a: dict, b: dict, cb) -> dict:
    out = dict(a)
    for i, v in b.items():
        nv = out.get(i, 0) + cb * v
        if nv == 0:
            out.pop(i, None)
        else:
            out[i] = nv
    return out


def decompose(p: Piece) -> list[Piece]:
    """Split a piece into atoms.  Cached on the piece."""
    hit = p._cache.get("atoms")
    if hit is not None:
        return hit
    if p.is_atom:
        atoms = [p]
    elif p.dim == 0:
        atoms = []
    else:
        atoms = _decompose(p)
    p._cache["atoms"] = atoms
    return atoms


def _decompose(p: Piece) -> list[Piece]:
    c = p.chain
    alg = c.algebra
    if c.r == 0:
        # B and P_k are indecomposable
        if c.end is None:
            key = ("B", -p.shift)
            gen = {i: fmpq(1) for i in c.generator_tuples()}
        else:
            key = ("P", c.end, -p.shift)
            gen = {c.generator_tuples()[0]: fmpq(1)}
        model = [(t[0], "id", None) for t in c.basis]
        return [Piece(c, p.shift, p.B, p.Q, key, gen, model)]

    a = c.word[0]
    b = c.word[-1] if c.end is None else None
    ie_a = alg.ie_index(a)
    ie_b = alg.ie_index(b) if b is not None else None

    def L(v):
        return c.act_left(ie_a, v)

    def R(v):
        return c.act_right(v, ie_b)

    # generating subspace V of the piece, as chain vectors
    gens = c.generator_tuples()
    if p.full:
        vs = [{i: fmpq(1)} for i in gens]
    else:
        E = p.idempotent()
        span = _Span(c.dim)
        vs = []
        for i in gens:
            v = _vec_of_column(E, i)
            if v and span.add(dict(v)):
                vs.append(v)
    by_deg: dict[int, list[dict]] = {}
    for v in vs:
        d = c.degrees[next(iter(v))]
        by_deg.setdefault(d, []).append(v)

    if c.end is not None:
        typ_fixed = "C" if a >= 2 else "R"
    else:
        typ_fixed = {(False, False): RR, (False, True): RC, (True, False): CR, (True, True): None}[(a >= 2, b >= 2)]

    simples: list[tuple[str, dict, int]] = []  # (type, generator, degree)
    for d in sorted(by_deg):
        group = by_deg[d]
        if typ_fixed in (RR, "R"):
            span = _Span(c.dim)
            for v in group:
                if span.add(dict(v)):
                    simples.append((typ_fixed, v, d))
        elif typ_fixed == RC:
            span = _Span(c.dim)
            for v in group:
                if span.add(dict(v)):
                    span.add(R(v))
                    simples.append((RC, v, d))
        elif typ_fixed in (CR, "C"):
            span = _Span(c.dim)
            for v in group:
                if span.add(dict(v)):
                    span.add(L(v))
                    simples.append((typ_fixed, v, d))
        else:
            half = fmpq(1, 2)
            for typ, sgn in ((CC, -1), (CC_BAR, 1)):
                span = _Span(c.dim)
                for v in group:
                    u = _scale_add({i: x * half for i, x in v.items()}, L(R(v)), half * sgn)
                    if u and span.add(dict(u)):
                        span.add(L(u))
                        simples.append((typ, u, d))

    atoms_raw = []
    for typ, g, d in simples:
        if c.end is not None:
            key = ("P", a, d - p.shift)
            sigmas = ["id", "L"] if typ == "C" else ["id"]
            qs = [None]
        else:
            key = (a, b, typ, d - p.shift)
            sigmas = {RR: ["id"], RC: ["id", "R"], CR: ["id", "L"], CC: ["id", "L"], CC_BAR: ["id", "L"]}[typ]
            qs = c.factors[-1]
        sig_vecs = {"id": g}
        if "L" in sigmas:
            sig_vecs["L"] = L(g)
        if "R" in sigmas:
            sig_vecs["R"] = R(g)
        span = _Span(c.dim)
        cols, model = [], []
        for t0 in c.factors[0]:
            for s in sigmas:
                left = c.act_left(t0, sig_vecs[s])
                if not left:
                    continue
                for q in qs:
                    x = left if q is None else c.act_right(left, q)
                    if x and span.add(dict(x)):
                        cols.append(x)
                        model.append((t0, s, q))
        atoms_raw.append((key, g, cols, model))

    total = sum(len(cols) for _, _, cols, _ in atoms_raw)
    if total != p.dim:
        raise AssertionError(f"atom dimensions {total} do not fill the piece of dimension {p.dim}")
    # change of basis inside the piece
    Pmat = fmpq_mat(c.dim, total)
    off = 0
    for _, _, cols, _ in atoms_raw:
        for j, x in enumerate(cols):
            for i, v in x.items():
                Pmat[i, off + j] = v
        off += len(cols)
    inner = Pmat if p.full else p.Q * Pmat
    inv = inverse(inner)
    if not p.full:
        inv = inv * p.Q
    atoms = []
    off = 0
    for key, g, cols, model in atoms_raw:
        k = len(cols)
        Bk = submatrix(Pmat, list(range(c.dim)), list(range(off, off + k)))
        Qk = submatrix(inv, list(range(off, off + k)), list(range(c.dim)))
        atoms.append(Piece(c, p.shift, Bk, Qk, key, g, model))
        off += k
    return atoms


def atom_change_of_basis(p: Piece) -> tuple[list[Piece], fmpq_mat, fmpq_mat]:
    """Atoms of p and the maps piece -> (direct sum of atoms) and back, in piece coordinates."""
    atoms = decompose(p)
    if len(atoms) == 1 and atoms[0] is p:
        from .foundation.linalg import identity
        return atoms, identity(p.dim), identity(p.dim)
    from .foundation.linalg import vstack, hstack
    to_atoms = vstack([compress_q(x, p) for x in atoms], p.dim)
    from_atoms = hstack([compress_b(x, p) for x in atoms], p.dim)
    return atoms, to_atoms, from_atoms


def compress_q(atom: Piece, p: Piece) -> fmpq_mat:
    """Atom projection expressed on piece coordinates."""
    return atom.Q if p.full else atom.Q * p.B


def compress_b(atom: Piece, p: Piece) -> fmpq_mat:
    return atom.B if p.full else p.Q * atom.B


# degree-0 homs out of an atom


def _sigma_apply(target: Piece, sigma: str, w: fmpq_mat, a: int, b: int | None) -> fmpq_mat:
    alg = target.chain.algebra
    if sigma == "id":
        return w
    if sigma == "L":
        return target.left_matrix(alg.ie_index(a)) * w
    return target.right_matrix(alg.ie_index(b)) * w


def hom_parameters(x: Piece, target: Piece) -> fmpq_mat:
    """Basis (as columns, target coordinates) of admissible images of x's generator."""
    if not x.is_atom:
        raise ValueError("hom parameters need an atom as source")
    alg = target.chain.algebra
    key = x.key
    labels = target.labels
    if key[0] == "B":
        deg = key[1]
        cand = [i for i, (l, r, d) in enumerate(labels) if l == r and d == deg]
    elif key[0] == "P":
        _, a, deg = key
        cand = [i for i, (l, r, d) in enumerate(labels) if l == a and d == deg]
    else:
        a, b, typ, deg = key
        cand = [i for i, (l, r, d) in enumerate(labels) if l == a and r == b and d == deg]
    if not cand:
        return fmpq_mat(target.dim, 0)
    pos = {i: k for k, i in enumerate(cand)}
    constraints: list[fmpq_mat] = []
    if key[0] == "B":
        for g in alg.generators():
            constraints.append(target.left_matrix(g) - target.right_matrix(g))
    elif key[0] != "P" and key[2] in (CC, CC_BAR):
        sgn = -1 if key[2] == CC else 1
        La = target.left_matrix(alg.ie_index(key[0]))
        Rb = target.right_matrix(alg.ie_index(key[1]))
        constraints.append(La + sgn * Rb)
    if not constraints:
        basis = [{i: fmpq(1)} for i in cand]
    else:
        rows = []
        for C in constraints:
            sub = submatrix(C, list(range(C.nrows())), cand)
            for r in range(sub.nrows()):
                row = {k: sub[r, k] for k in range(len(cand)) if sub[r, k] != 0}
                if row:
                    rows.append(row)
        ker = sparse_kernel(rows, len(cand))
        basis = [{cand[k]: v for k, v in vec.items()} for vec in ker]
    out = fmpq_mat(target.dim, len(basis))
    for j, vec in enumerate(basis):
        for i, v in vec.items():
            out[i, j] = v
    return out


def hom_matrices(x: Piece, target: Piece, W: fmpq_mat) -> list[fmpq_mat]:
    """For each column w of W, the matrix (target x source) of the map sending x's generator to w."""
    key = x.key
    if key[0] == "B" or key[0] == "P":
        a, b = None, None
    else:
        a, b = key[0], key[1]
    if key[0] == "P":
        a = key[1]
    k = W.ncols()
    mats = [fmpq_mat(target.dim, x.dim) for _ in range(k)]
    sig_cache: dict[str, fmpq_mat] = {}
    for col, (p, s, q) in enumerate(x.model):
        sw = sig_cache.get(s)
        if sw is None:
            sw = _sigma_apply(target, s, W, a, b)
            sig_cache[s] = sw
        y = target.left_matrix(p) * sw
        if q is not None:
            y = target.right_matrix(q) * y
        for i in range(target.dim):
            for j in range(k):
                v = y[i, j]
                if v != 0:
                    mats[j][i, col] = v
    return mats
