"""Exact linear algebra over the rationals.

Dense work goes through ``flint.fmpq_mat`` (whose echelon routines are
fraction-free internally).  Large, very sparse systems such as hom-space
constraints go through :class:`SparseEliminator`.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from flint import fmpq, fmpq_mat, fmpz_mat

from .rational import to_rational

Matrix = fmpq_mat


def zeros(rows: int, cols: int) -> fmpq_mat:
    return fmpq_mat(rows, cols)


def identity(n: int) -> fmpq_mat:
    m = fmpq_mat(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def from_rows(rows: Sequence[Sequence], cols: int | None = None) -> fmpq_mat:
    r = len(rows)
    c = cols if cols is not None else (len(rows[0]) if rows else 0)
    flat = [to_rational(x) for row in rows for x in row]
    if len(flat) != r * c:
        raise ValueError("ragged row data")
    return fmpq_mat(r, c, flat) if r and c else fmpq_mat(r, c)


def from_sparse(rows: int, cols: int, entries: Mapping[tuple[int, int], object]) -> fmpq_mat:
    m = fmpq_mat(rows, cols)
    for (i, j), v in entries.items():
        m[i, j] = v
    return m


def to_sparse(m: fmpq_mat) -> dict[tuple[int, int], fmpq]:
    out = {}
    c = m.ncols()
    for k, v in enumerate(m.entries()):
        if v != 0:
            out[divmod(k, c)] = v
    return out


def column_vector(values: Sequence) -> fmpq_mat:
    return from_rows([[v] for v in values], 1)


def column(m: fmpq_mat, j: int) -> list[fmpq]:
    return [m[i, j] for i in range(m.nrows())]


def is_zero(m: fmpq_mat) -> bool:
    return all(v == 0 for v in m.entries())


def submatrix(m: fmpq_mat, rows: Sequence[int], cols: Sequence[int]) -> fmpq_mat:
    out = fmpq_mat(len(rows), len(cols))
    if not rows or not cols:
        return out
    ent = m.entries()
    c = m.ncols()
    for a, i in enumerate(rows):
        base = i * c
        for b, j in enumerate(cols):
            v = ent[base + j]
            if v != 0:
                out[a, b] = v
    return out


def hstack(blocks: Sequence[fmpq_mat], rows: int | None = None) -> fmpq_mat:
    if rows is None:
        rows = blocks[0].nrows() if blocks else 0
    out = fmpq_mat(rows, sum(b.ncols() for b in blocks))
    off = 0
    for b in blocks:
        if b.nrows() != rows:
            raise ValueError("hstack: row counts differ")
        _paste(out, b, 0, off)
        off += b.ncols()
    return out


def vstack(blocks: Sequence[fmpq_mat], cols: int | None = None) -> fmpq_mat:
    if cols is None:
        cols = blocks[0].ncols() if blocks else 0
    out = fmpq_mat(sum(b.nrows() for b in blocks), cols)
    off = 0
    for b in blocks:
        if b.ncols() != cols:
            raise ValueError("vstack: column counts differ")
        _paste(out, b, off, 0)
        off += b.nrows()
    return out


def block_matrix(row_sizes: Sequence[int], col_sizes: Sequence[int],
                 blocks: Mapping[tuple[int, int], fmpq_mat]) -> fmpq_mat:
    """Assemble a matrix from a sparse dict of (block row, block col) -> block."""
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    out = fmpq_mat(roff[-1], coff[-1])
    for (i, j), b in blocks.items():
        if b.nrows() != row_sizes[i] or b.ncols() != col_sizes[j]:
            raise ValueError(f"block ({i},{j}) has wrong shape")
        _paste(out, b, roff[i], coff[j])
    return out


def _paste(dst: fmpq_mat, src: fmpq_mat, r0: int, c0: int):
    c = src.ncols()
    if not c:
        return
    for k, v in enumerate(src.entries()):
        if v != 0:
            i, j = divmod(k, c)
            dst[r0 + i, c0 + j] = v


def rank(m: fmpq_mat) -> int:
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return m.rref()[1]


def is_invertible(m: fmpq_mat) -> bool:
    if m.nrows() != m.ncols():
        return False
    if m.nrows() == 0:
        return True
    return m.det() != 0


def inverse(m: fmpq_mat) -> fmpq_mat:
    if m.nrows() != m.ncols():
        raise ValueError("inverse of a non-square matrix")
    if m.nrows() == 0:
        return fmpq_mat(0, 0)
    return m.inv()


def _integral_rows(a: fmpq_mat) -> fmpz_mat:
    """Scale each row by its denominator lcm; the row space (and kernel) is unchanged."""
    r, c = a.nrows(), a.ncols()
    ent = a.entries()
    out = []
    for i in range(r):
        row = ent[i * c:(i + 1) * c]
        den = 1
        for v in row:
            q = int(v.q)
            if q != 1:
                den = den * q // _gcd(den, q)
        out.extend(int(v.p) * (den // int(v.q)) for v in row)
    return fmpz_mat(r, c, out)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def kernel_basis(a: fmpq_mat) -> list[list[fmpq]]:
    """Basis of {x : a x = 0}, each vector a list of fmpq."""
    r, c = a.nrows(), a.ncols()
    if c == 0:
        return []
    if r == 0:
        return [[fmpq(int(i == j)) for i in range(c)] for j in range(c)]
    ns, nullity = _integral_rows(a).nullspace()
    return [[fmpq(ns[i, j]) for i in range(c)] for j in range(nullity)]


def kernel_matrix(a: fmpq_mat) -> fmpq_mat:
    """Kernel basis as the columns of a matrix."""
    vecs = kernel_basis(a)
    out = fmpq_mat(a.ncols(), len(vecs))
    for j, v in enumerate(vecs):
        for i, x in enumerate(v):
            if x != 0:
                out[i, j] = x
    return out


def solve_linear(a: fmpq_mat, b: Sequence) -> list[fmpq] | None:
    """One solution of a x = b, or None when the system is inconsistent."""
    r, c = a.nrows(), a.ncols()
    if len(b) != r:
        raise ValueError(f"right-hand side has length {len(b)}, expected {r}")
    aug = fmpq_mat(r, c + 1)
    _paste(aug, a, 0, 0)
    for i, v in enumerate(b):
        aug[i, c] = to_rational(v)
    if r == 0:
        return [fmpq(0)] * c
    red, rk = aug.rref()
    x = [fmpq(0)] * c
    for i in range(rk):
        lead = next(j for j in range(c + 1) if red[i, j] != 0)
        if lead == c:
            return None
        x[lead] = red[i, c]
    return x


def column_space_basis(m: fmpq_mat) -> list[int]:
    """Indices of the leftmost linearly independent columns."""
    if m.nrows() == 0 or m.ncols() == 0:
        return []
    red, rk = m.rref()
    piv = []
    j = 0
    for i in range(rk):
        while red[i, j] == 0:
            j += 1
        piv.append(j)
        j += 1
    return piv


class SparseEliminator:
    """Incremental row reduction of sparse rational equations.

    Rows are dicts ``{column: coefficient}``; feeding rows builds an echelon
    form, and :meth:`kernel` returns a basis of the solution space of the
    homogeneous system in ``ncols`` unknowns.
    """

    def __init__(self, ncols: int, pivot: str = "min"):
        self.ncols = ncols
        self._pick = min if pivot == "min" else max
        self.pivots: dict[int, dict[int, fmpq]] = {}
        self.order: list[int] = []

    def add(self, row: Mapping[int, object]) -> bool:
        """Reduce ``row`` and keep it if independent; returns True if kept."""
        r = {k: to_rational(v) for k, v in row.items() if v != 0}
        while True:
            hit = next((k for k in r if k in self.pivots), None)
            if hit is None:
                break
            f = r[hit]
            for k, v in self.pivots[hit].items():
                nv = r.get(k, 0) - f * v
                if nv == 0:
                    r.pop(k, None)
                else:
                    r[k] = nv
        if not r:
            return False
        p = self._pick(r)
        inv = 1 / r[p]
        self.pivots[p] = {k: v * inv for k, v in r.items()}
        self.order.append(p)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _back_substitute(self):
        done: dict[int, dict[int, fmpq]] = {}
        for p in reversed(self.order):
            r = dict(self.pivots[p])
            for k in [k for k in r if k in done and k != p]:
                f = r[k]
                for kk, v in done[k].items():
                    nv = r.get(kk, 0) - f * v
                    if nv == 0:
                        r.pop(kk, None)
                    else:
                        r[kk] = nv
            done[p] = r
        self.pivots = done

    def kernel(self) -> list[dict[int, fmpq]]:
        self._back_substitute()
        free = [j for j in range(self.ncols) if j not in self.pivots]
        uses: dict[int, list[tuple[int, fmpq]]] = {f: [] for f in free}
        for p, r in self.pivots.items():
            for k, v in r.items():
                if k != p:
                    uses[k].append((p, v))
        out = []
        for f in free:
            vec = {f: fmpq(1)}
            for p, v in uses[f]:
                vec[p] = -v
            out.append(vec)
        return out


def sparse_kernel(rows: Iterable[Mapping[int, object]], ncols: int) -> list[dict[int, fmpq]]:
    elim = SparseEliminator(ncols)
    for r in rows:
        elim.add(r)
    return elim.kernel()
