"""Polynomial equations on the functor's scalars and their solution.

Unknowns: a_j (split), b_j (dot_end), c_j (dot_start), d_j (merge) and f_k^j,
the coefficient of X_k in the image of the root a_j.  Each equation is stored
as a sympy expression that must vanish.
"""
from __future__ import annotations

from dataclasses import dataclass

import sympy

from ..foundation.polynomial import cartan_entry


def _sym(name: str, *idx) -> sympy.Symbol:
    return sympy.Symbol(name + "_" + "_".join(map(str, idx)))


def a(j):
    return _sym("a", j)


def b(j):
    return _sym("b", j)


def c(j):
    return _sym("c", j)


def d(j):
    return _sym("d", j)


def f(k, j):
    """Coefficient of X_k in the image of the j-th root."""
    return _sym("f", k, j)


@dataclass(frozen=True)
class Equation:
    source: str
    label: str
    expr: sympy.Expr

    def residual(self, values: dict) -> sympy.Expr:
        return sympy.simplify(self.expr.subs(values))


@dataclass
class CoefficientLedger:
    n: int
    equations: list[Equation]

    def unknowns(self) -> list[sympy.Symbol]:
        return sorted(set().union(*(e.expr.free_symbols for e in self.equations)), key=str)


def build_ledger(n: int = 5) -> CoefficientLedger:
    """All equations at rank n (n >= 3 so that the 6-valent family is present)."""
    A = lambda s, t: sympy.Integer(cartan_entry(s, t))
    eqs: list[Equation] = []

    def add(source, lhs, rhs):
        eqs.append(Equation(source, f"{lhs} = {rhs}", sympy.expand(lhs - rhs)))

    # barbell: beta_j gamma_j(1) scaled by b_j c_j is the image of a_j
    add("3.1", f(1, 1), 2 * b(1) * c(1))
    add("3.1", f(2, 1), 2 * b(1) * c(1))
    for j in range(2, n + 1):
        add("3.1", f(j, j), 2 * b(j) * c(j))
        for k in (j - 1, j + 1):
            if 1 <= k <= n:
                add("3.1", f(k, j), b(j) * c(j))
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            if abs(j - k) > 1:
                add("3.1", f(k, j), 0)
    # polynomial forcing for a_j and the strand of colour k
    add("3.2", f(1, 1), 2 * b(1) * c(1))
    add("3.2", f(2, 1), -2 * b(2) * c(2))
    for j in range(2, n + 1):
        add("3.2", f(j, j), 2 * b(j) * c(j))
    for j in range(1, n + 1):
        for k in (j - 1, j + 1):
            if 1 <= k <= n and (j, k) != (2, 1):
                add("3.2", f(j, k), -b(j) * c(j))
    # dotted 6-valent vertex
    for j in range(2, n + 1):
        for k in (j - 1, j + 1):
            if 2 <= k <= n:
                add("3.9", d(k) * b(j) * c(j), -b(k))
    # dotted 8-valent vertex, red (1) then blue (2) on the left
    a12, a21 = A(1, 2), A(2, 1)
    t2 = -a12 * b(1) ** 2 * d(2) * a(2) * c(1)
    red = [b(1), t2, -a21 * b(2) * d(1) * c(2), b(2) * d(1) * b(1) * a(2) * c(1), b(1) * d(2) * c(2)]
    add("3.10 red", sum(red), 0)
    add("3.10 red", red[0] + red[1], 0)
    add("3.10 red", red[1] + red[3], 0)
    add("3.10 red", red[1] + red[4], 0)
    blue = [b(2), -a21 * b(2) ** 2 * d(1) * a(1) * c(2), -a12 * b(1) * d(2) * c(1),
            b(1) * d(2) * a(1) * b(2) * c(2), b(2) * d(1) * c(1)]
    add("3.10 blue", sum(blue), 0)
    add("3.10 blue", blue[0] + blue[2], 0)
    add("3.10 blue", blue[2] + blue[3], 0)
    add("3.10 blue", blue[2] + blue[4], 0)
    for j in range(1, n + 1):
        add("3.18", a(j) * b(j), 1)
        add("3.19", c(j) * d(j), 1)
        add("3.20", a(j) * b(j) * c(j) * d(j), 1)
        add("3.21", a(j) * b(j) * d(j), d(j))
        add("3.22", a(j) * c(j) * d(j), a(j))
        add("3.23", b(j) * c(j) * d(j), b(j))
        add("3.24", a(j) * b(j) * c(j), c(j))
    return CoefficientLedger(n, eqs)


def solution(n: int = 5) -> dict:
    sign = lambda j: 1 if j % 2 else -1
    vals = {}
    for j in range(1, n + 1):
        vals[a(j)] = vals[b(j)] = sign(j)
        vals[c(j)] = vals[d(j)] = 1
        for k in range(1, n + 1):
            if j == 1 and k in (1, 2):
                v = 2
            elif k == j:
                v = 2 * sign(j)
            elif abs(k - j) == 1:
                v = sign(j)
            else:
                v = 0
            vals[f(k, j)] = v
    return vals


@dataclass
class LedgerReport:
    rows: list[tuple[str, str, sympy.Expr]]

    @property
    def ok(self) -> bool:
        return all(r == 0 for _, _, r in self.rows)

    def failures(self) -> list[tuple[str, str, sympy.Expr]]:
        return [row for row in self.rows if row[2] != 0]


def verify_coefficient_ledger(n: int = 5) -> LedgerReport:
    """Residual of every ledger equation under the stored solution."""
    led = build_ledger(n)
    vals = solution(n)
    return LedgerReport([(e.source, e.label, e.residual(vals)) for e in led.equations])


def root_image_coefficients(n: int) -> dict:
    """f_k^j read off from the algebra's root images, for comparison with the solution."""
    from ..zigzag import BasisPath, build_algebra
    alg = build_algebra(n)
    out = {}
    for j in range(1, n + 1):
        z = alg.root_image(j)
        for k in range(1, n + 1):
            out[f(k, j)] = int(z.coeffs.get(alg.path(BasisPath("X", k)), 0))
    return out
