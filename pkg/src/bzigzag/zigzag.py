"""The type B zigzag algebra: canonical basis, multiplication table, projectives.

Paths are read left to right, so ``(j|k)`` starts at ``j`` and ends at
``k`` and ``e_a x e_b`` is nonzero exactly when ``x`` runs from ``a`` to
``b``.  Every basis path is an undecorated core (an idempotent, an arrow or
a loop ``X_j``) possibly decorated once by ``ie``.  Decorations commute with
cores and square to ``-1``; the decorated loop at vertex 1 vanishes.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np
from flint import fmpq

from .foundation.laurent import Laurent
from .foundation.linalg import from_sparse
from .foundation.rational import format_rational, parse_rational, to_rational


@dataclass(frozen=True, order=True)
class BasisPath:
    """A canonical basis path.  ``kind`` is one of E, IE, A, IA, X, IX."""

    kind: str
    j: int
    k: int = 0

    def __post_init__(self):
        base = self.kind.lstrip("I")
        if self.kind not in ("E", "IE", "A", "IA", "X", "IX") or self.j < 1:
            raise ValueError(f"invalid basis path {self.kind}{self.j}")
        if base == "A" and abs(self.j - self.k) != 1:
            raise ValueError(f"arrow {self.j}->{self.k} joins non-adjacent vertices")
        if self.kind in ("IE", "IX") and self.j < 2:
            raise ValueError(f"{self.kind.lower()}1 is not a basis path")

    @property
    def core(self) -> tuple:
        base = self.kind.lstrip("I")
        return (base, self.j, self.k) if base == "A" else (base, self.j)

    @property
    def decorated(self) -> int:
        return 1 if self.kind.startswith("I") else 0

    @property
    def degree(self) -> int:
        return {"E": 0, "A": 1, "X": 2}[self.kind.lstrip("I")]

    @property
    def source(self) -> int:
        return self.j

    @property
    def target(self) -> int:
        return self.k if self.kind.lstrip("I") == "A" else self.j

    @property
    def name(self) -> str:
        base = self.kind.lstrip("I").lower()
        prefix = "i" if self.decorated else ""
        if base == "a":
            return f"{prefix}a{self.j}_{self.k}"
        return f"{prefix}{base}{self.j}"

    def __str__(self):
        return self.name


_NAME_RE = re.compile(r"^(i?)(e|x)(\d+)$|^(i?)a(\d+)_(\d+)$")


def parse_path_name(name: str) -> BasisPath:
    m = _NAME_RE.match(name.strip())
    if not m:
        raise ValueError(f"unknown basis path name {name!r}")
    if m.group(2):
        return BasisPath(("I" if m.group(1) else "") + m.group(2).upper(), int(m.group(3)))
    return BasisPath(("I" if m.group(4) else "") + "A", int(m.group(5)), int(m.group(6)))


def canonical_basis(n: int) -> list[BasisPath]:
    """All 8n-6 basis paths, grouped by degree then by vertex."""
    out = []
    for j in range(1, n + 1):
        out.append(BasisPath("E", j))
        if j >= 2:
            out.append(BasisPath("IE", j))
    for j in range(1, n + 1):
        for k in (j - 1, j + 1):
            if 1 <= k <= n:
                out.append(BasisPath("A", j, k))
                out.append(BasisPath("IA", j, k))
    for j in range(1, n + 1):
        out.append(BasisPath("X", j))
        if j >= 2:
            out.append(BasisPath("IX", j))
    return out


def _core_product(c1: tuple, c2: tuple):
    """Product of undecorated cores, or None when it vanishes."""
    if c1[0] == "E":
        return c2
    if c2[0] == "E":
        return c1
    if c1[0] == "A" and c2[0] == "A" and c1[1] == c2[2]:
        return ("X", c1[1])
    return None


def _path_of(core: tuple, decorated: int) -> BasisPath | None:
    kind = ("I" if decorated else "") + core[0]
    if decorated and core[0] in ("E", "X") and core[1] == 1:
        return None
    return BasisPath(kind, *core[1:])


class ZigzagAlgebra:
    """The type B zigzag algebra on vertices 1..n with a precomputed table."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("the type B zigzag algebra needs n >= 2")
        self.n = n
        self.basis = canonical_basis(n)
        self.index = {p: i for i, p in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.degrees = [p.degree for p in self.basis]
        self.sources = [p.source for p in self.basis]
        self.targets = [p.target for p in self.basis]
        d = self.dim
        # table[a, b] = index of the product path or -1; signs[a, b] = +-1
        self.table = np.full((d, d), -1, dtype=np.int64)
        self.signs = np.zeros((d, d), dtype=np.int64)
        self.products: dict[tuple[int, int], tuple[int, int]] = {}
        for a, pa in enumerate(self.basis):
            for b, pb in enumerate(self.basis):
                if pa.target != pb.source:
                    continue
                core = _core_product(pa.core, pb.core)
                if core is None:
                    continue
                eps = pa.decorated + pb.decorated
                sign = -1 if eps >= 2 else 1
                path = _path_of(core, eps % 2)
                if path is None:
                    continue
                c = self.index[path]
                self.table[a, b] = c
                self.signs[a, b] = sign
                self.products[(a, b)] = (c, sign)
        self.left_out: list[list[tuple[int, int, int]]] = [[] for _ in range(d)]
        self.right_out: list[list[tuple[int, int, int]]] = [[] for _ in range(d)]
        for (a, b), (c, s) in self.products.items():
            # left_out[g]: b -> g*b ; right_out[g]: a -> a*g
            self.left_out[a].append((b, c, s))
            self.right_out[b].append((a, c, s))

    def __repr__(self):
        return f"ZigzagAlgebra(n={self.n})"

    def __eq__(self, other):
        return isinstance(other, ZigzagAlgebra) and other.n == self.n

    def __hash__(self):
        return hash(("ZigzagAlgebra", self.n))

    # element helpers

    def path(self, spec) -> int:
        """Index of a basis path given as BasisPath, name string or index."""
        if isinstance(spec, int):
            return spec
        if isinstance(spec, str):
            spec = parse_path_name(spec)
        try:
            return self.index[spec]
        except KeyError:
            raise ValueError(f"{spec} is not a basis path for n = {self.n}") from None

    def element(self, coeffs: Mapping | str | BasisPath | int = None) -> "AlgebraElement":
        if coeffs is None:
            return AlgebraElement(self, {})
        if isinstance(coeffs, (str, BasisPath, int)):
            return AlgebraElement(self, {self.path(coeffs): fmpq(1)})
        return AlgebraElement(self, {self.path(k): to_rational(v) for k, v in coeffs.items()})

    def e(self, j: int) -> "AlgebraElement":
        return self.element(BasisPath("E", j))

    def ie(self, j: int) -> "AlgebraElement":
        return self.element(BasisPath("IE", j))

    def arrow(self, j: int, k: int) -> "AlgebraElement":
        return self.element(BasisPath("A", j, k))

    def loop(self, j: int) -> "AlgebraElement":
        return self.element(BasisPath("X", j))

    def unit(self) -> "AlgebraElement":
        return AlgebraElement(self, {self.index[BasisPath("E", j)]: fmpq(1) for j in range(1, self.n + 1)})

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def multiply(self, a: "AlgebraElement", b: "AlgebraElement") -> "AlgebraElement":
        if a.algebra != self or b.algebra != self:
            raise ValueError("operands belong to different algebras")
        out: dict[int, fmpq] = {}
        for i, x in a.coeffs.items():
            for j, y in b.coeffs.items():
                hit = self.products.get((i, j))
                if hit is None:
                    continue
                c, s = hit
                v = out.get(c, 0) + (x * y if s > 0 else -(x * y))
                if v == 0:
                    out.pop(c, None)
                else:
                    out[c] = v
        return AlgebraElement(self, out)

    def generators(self) -> list[int]:
        """Indices of arrows and ie_j: these together with the e_j generate."""
        return [i for i, p in enumerate(self.basis) if p.kind == "A" or p.kind == "IE"]

    def idempotent(self, j: int) -> int:
        return self.index[BasisPath("E", j)]

    def ie_index(self, j: int) -> int | None:
        return self.index.get(BasisPath("IE", j)) if j >= 2 else None

    def scalar_field(self, j: int) -> str:
        return "R" if j == 1 else "C"

    def root_image(self, j: int) -> "AlgebraElement":
        """Central element that the simple root alpha_{s_j} is sent to.

        (-1)^{j+1} (2X_j + X_{j-1} + X_{j+1}) with absent neighbours omitted;
        for j = 1 the combination is 2X_1 + 2X_2.
        """
        if not 1 <= j <= self.n:
            raise IndexError(f"vertex {j} out of range 1..{self.n}")
        if j == 1:
            return self.element({BasisPath("X", 1): 2, BasisPath("X", 2): 2})
        sign = 1 if j % 2 == 1 else -1
        coeffs = {BasisPath("X", j): 2 * sign}
        for k in (j - 1, j + 1):
            if 1 <= k <= self.n:
                coeffs[BasisPath("X", k)] = sign
        return self.element(coeffs)

    def left_matrix(self, a: "AlgebraElement", indices: list[int] | None = None):
        """Matrix of x -> a*x on the span of the given basis indices (default all)."""
        return self._action_matrix(a, indices, left=True)

    def right_matrix(self, a: "AlgebraElement", indices: list[int] | None = None):
        return self._action_matrix(a, indices, left=False)

    def _action_matrix(self, a, indices, left):
        idx = list(range(self.dim)) if indices is None else list(indices)
        pos = {b: i for i, b in enumerate(idx)}
        entries: dict[tuple[int, int], fmpq] = {}
        for col, b in enumerate(idx):
            bel = AlgebraElement(self, {b: fmpq(1)})
            prod = self.multiply(a, bel) if left else self.multiply(bel, a)
            for c, v in prod.coeffs.items():
                if c not in pos:
                    raise ValueError("action leaves the given subspace")
                entries[(pos[c], col)] = v
        return from_sparse(len(idx), len(idx), entries)


class AlgebraElement:
    """Rational combination of basis paths (stored by basis index)."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: ZigzagAlgebra, coeffs: Mapping[int, fmpq]):
        self.algebra = algebra
        self.coeffs = {i: to_rational(v) for i, v in coeffs.items() if v != 0}

    def __add__(self, other):
        self._same(other)
        out = dict(self.coeffs)
        for i, v in other.coeffs.items():
            out[i] = out.get(i, 0) + v
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgebraElement(self.algebra, {i: -v for i, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        c = to_rational(other)
        return AlgebraElement(self.algebra, {i: v * c for i, v in self.coeffs.items()})

    def __rmul__(self, other):
        c = to_rational(other)
        return AlgebraElement(self.algebra, {i: v * c for i, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.algebra.n, frozenset(self.coeffs.items())))

    def _same(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra != self.algebra:
            raise ValueError("operands belong to different algebras")

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int | None:
        degs = {self.algebra.degrees[i] for i in self.coeffs}
        return degs.pop() if len(degs) == 1 else None

    def to_json(self) -> dict[str, str]:
        basis = self.algebra.basis
        return {basis[i].name: format_rational(v) for i, v in sorted(self.coeffs.items())}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, algebra: ZigzagAlgebra, data: Mapping[str, str]) -> "AlgebraElement":
        return cls(algebra, {algebra.path(k): parse_rational(v) for k, v in data.items()})

    def __repr__(self):
        if not self.coeffs:
            return "0"
        basis = self.algebra.basis
        return " + ".join(f"{format_rational(v)}*{basis[i].name}" for i, v in sorted(self.coeffs.items()))


@lru_cache(maxsize=None)
def build_algebra(n: int) -> ZigzagAlgebra:
    return ZigzagAlgebra(n)


@dataclass(frozen=True)
class OneSidedModule:
    """A one-sided projective ``B e_j`` (left) or ``e_j B`` (right).

    The scalar field ``K_j`` acts from the opposite side; for j >= 2 the
    imaginary unit is stored as ``ie_matrix``, multiplication by ``ie_j``.
    """

    algebra: ZigzagAlgebra
    j: int
    side: str
    basis: tuple[int, ...]

    @property
    def scalar_field(self) -> str:
        return self.algebra.scalar_field(self.j)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def graded_dimension(self) -> Laurent:
        out: dict[int, int] = {}
        for b in self.basis:
            d = self.algebra.degrees[b]
            out[d] = out.get(d, 0) + 1
        return Laurent(out)

    def action_matrix(self, g) -> object:
        """Matrix of the algebra action by ``g`` (left for left modules)."""
        alg = self.algebra
        el = g if isinstance(g, AlgebraElement) else alg.element(g)
        if self.side == "left":
            return alg.left_matrix(el, list(self.basis))
        return alg.right_matrix(el, list(self.basis))

    @property
    def ie_matrix(self):
        """Scalar action of the imaginary unit, or None over the reals."""
        if self.j == 1:
            return None
        alg = self.algebra
        ie = alg.ie(self.j)
        if self.side == "left":
            return alg.right_matrix(ie, list(self.basis))
        return alg.left_matrix(ie, list(self.basis))


def projective(algebra: ZigzagAlgebra, j: int, side: str = "left") -> OneSidedModule:
    if not 1 <= j <= algebra.n:
        raise IndexError(f"projective index {j} out of range 1..{algebra.n}")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if side == "left":
        basis = tuple(i for i, p in enumerate(algebra.basis) if p.target == j)
    else:
        basis = tuple(i for i, p in enumerate(algebra.basis) if p.source == j)
    return OneSidedModule(algebra, j, side, basis)


def paths_between(algebra: ZigzagAlgebra, a: int | None, b: int | None) -> list[int]:
    """Basis indices of paths from a to b (None means unrestricted)."""
    return [i for i, p in enumerate(algebra.basis)
            if (a is None or p.source == a) and (b is None or p.target == b)]
