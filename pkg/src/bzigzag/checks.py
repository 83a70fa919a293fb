"""Verification suites shared by the CLI and the acceptance tests.

Each suite returns a list of :class:`Check` records; nothing here raises on a
failed check.
"""
from __future__ import annotations

import time
from typing import Callable

from . import _kernels
from .bimod import (
    GradedBimodule, hom_space, named_map, regular, tensor_over_algebra,
)
from .braid import (
    Check, all_words, braid_relation_instances, decat_matrix, inverse_word, tl_check,
    verify_braid_relations, LaurentMatrix,
)
from .foundation.laurent import Laurent
from .foundation.linalg import identity, is_zero
from .zigzag import BasisPath, build_algebra, projective

SUITES = ("algebra", "tensor", "tl", "braid", "soergel", "ledger")


def _timed(name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    t = time.perf_counter()
    try:
        ok, detail = fn()
        status = "pass" if ok else "fail"
    except Exception as exc:  # a crashing check is a failed check
        status, detail = "fail", f"{type(exc).__name__}: {exc}"
    return Check(name, status, detail, time.perf_counter() - t)


# algebra


def expected_dimension(n: int) -> int:
    return 8 * n - 6


def _relations_hold(n: int) -> tuple[bool, str]:
    alg = build_algebra(n)
    e, ie, arr, X = alg.e, alg.ie, alg.arrow, alg.loop
    bad = []
    for j in range(1, n + 1):
        nbrs = [k for k in (j - 1, j + 1) if 1 <= k <= n]
        for k in nbrs:
            if arr(j, k) * arr(k, j) != X(j):
                bad.append(f"2.4 at {j},{k}")
        if j >= 2 and ie(j) * ie(j) != -e(j):
            bad.append(f"2.6 at {j}")
    for j in range(2, n):
        if not (arr(j - 1, j) * arr(j, j + 1)).is_zero() or not (arr(j + 1, j) * arr(j, j - 1)).is_zero():
            bad.append(f"2.5 at {j}")
    for j in range(3, n + 1):
        if ie(j - 1) * arr(j - 1, j) != arr(j - 1, j) * ie(j):
            bad.append(f"2.7 at {j}")
        if ie(j) * arr(j, j - 1) != arr(j, j - 1) * ie(j - 1):
            bad.append(f"2.8 at {j}")
    if not (arr(1, 2) * ie(2) * arr(2, 1)).is_zero():
        bad.append("2.9")
    if ie(2) * X(2) != X(2) * ie(2):
        bad.append("2.10")
    return not bad, "all defining relations hold" if not bad else "failed: " + ", ".join(bad)


def _centre(n: int) -> tuple[bool, str]:
    alg = build_algebra(n)
    for j in range(1, n + 1):
        z = alg.root_image(j)
        if alg.left_matrix(z) != alg.right_matrix(z):
            return False, f"root image {j} is not central"
    return True, "root images are central"


def _grading(n: int) -> tuple[bool, str]:
    alg = build_algebra(n)
    for (a, b), (c, _) in alg.products.items():
        if alg.degrees[c] != alg.degrees[a] + alg.degrees[b]:
            return False, f"product of {alg.basis[a]} and {alg.basis[b]} breaks the grading"
    return True, "grading is additive"


def _projectives(n: int) -> tuple[bool, str]:
    alg = build_algebra(n)
    total = sum(projective(alg, j).dim for j in range(1, n + 1))
    for j in range(2, n + 1):
        m = projective(alg, j).ie_matrix
        if not is_zero(m * m + identity(m.nrows())):
            return False, f"ie_{j} does not square to -1 on P_{j}"
    return total == alg.dim, f"left projectives have total dimension {total}"


def algebra_checks(n: int) -> list[Check]:
    alg = build_algebra(n)
    out = [_timed(f"algebra dimension n={n}",
                  lambda: (alg.dim == expected_dimension(n), f"dim = {alg.dim}"))]
    out.append(_timed(f"algebra associativity n={n}", lambda: (
        (d := _kernels.associativity_defects(alg.table, alg.signs)) == 0, f"{d} defective triples")))
    out.append(_timed(f"algebra defining relations n={n}", lambda: _relations_hold(n)))
    out.append(_timed(f"algebra grading n={n}", lambda: _grading(n)))
    out.append(_timed(f"algebra centre n={n}", lambda: _centre(n)))
    out.append(_timed(f"algebra projectives n={n}", lambda: _projectives(n)))
    return out


# tensor products and hom spaces


def tensor_table_expected(j: int, k: int) -> Laurent:
    if j == k:
        return Laurent({0: 1, 2: 1}) if j == 1 else Laurent({0: 2, 2: 2})
    if abs(j - k) == 1:
        return Laurent({1: 2})
    return Laurent()


def tensor_table_dimension(n: int, j: int, k: int) -> Laurent:
    alg = build_algebra(n)
    M = GradedBimodule.from_one_sided(projective(alg, j, "right"))
    N = GradedBimodule.from_one_sided(projective(alg, k, "left"))
    return tensor_over_algebra(M, N).graded_dimension()


def hom_item_dimensions(n: int) -> dict[str, int]:
    """Dimensions of the hom spaces of items (1)-(5) for every j."""
    B = regular(n)
    out = {}
    for j in range(1, n + 1):
        U = GradedBimodule.from_word(n, (j,))
        UU = GradedBimodule.from_word(n, (j, j))
        out[f"(1) j={j}"] = len(hom_space(U, B, 1))
        out[f"(2) j={j}"] = len(hom_space(B, U, 1))
        out[f"(3) j={j}"] = len(hom_space(U, UU, -1))
        out[f"(4) j={j}"] = len(hom_space(UU, U, -1))
    out["(5)"] = len(hom_space(B, B, 2))
    return out


def hom_item_expected(n: int) -> dict[str, int]:
    out = {}
    for j in range(1, n + 1):
        for item in ("(1)", "(2)", "(3)", "(4)"):
            out[f"{item} j={j}"] = 1 if j == 1 else 2
    out["(5)"] = 2 * n - 1
    return out


def one_sided_endomorphisms(n: int, j: int, degrees=range(-3, 4)) -> dict[int, int]:
    """Dimension of right-module maps from the right projective at j to itself, by degree."""
    alg = build_algebra(n)
    M = GradedBimodule.from_one_sided(projective(alg, j, "right"))
    return {d: len(hom_space(M, M, d)) for d in degrees}


def _named_maps_ok(n: int) -> tuple[bool, str]:
    for j in range(1, n + 1):
        for kind in ("beta", "gamma", "alpha_split", "delta_merge", "epsilon"):
            f = named_map(kind, j, n)
            if f.is_zero() or not f.is_bimodule_map():
                return False, f"{kind} {j} is not a nonzero bimodule map"
        comp = named_map("delta_merge", j, n) @ named_map("alpha_split", j, n)
        if not comp.is_zero():
            return False, f"merge after split is nonzero for {j}"
        barbell = named_map("beta", j, n) @ named_map("gamma", j, n)
        eps = named_map("epsilon", j, n)
        sign = 1 if j % 2 else -1
        if barbell.matrix * sign != eps.matrix:
            return False, f"beta gamma differs from the root image for {j}"
    return True, "named maps are bimodule maps; merge o split = 0; beta o gamma matches"


def tensor_checks(n: int) -> list[Check]:
    out = []
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            def one(j=j, k=k):
                got, want = tensor_table_dimension(n, j, k), tensor_table_expected(j, k)
                return got == want, f"graded dimension {got}"
            out.append(_timed(f"tensor jP(x)P_k j={j} k={k} n={n}", one))

    def hom():
        got, want = hom_item_dimensions(n), hom_item_expected(n)
        bad = [key for key in want if got.get(key) != want[key]]
        return not bad, "all hom dimensions match" if not bad else f"mismatch at {bad}: {got}"
    out.append(_timed(f"tensor hom dimensions n={n}", hom))
    out.append(_timed(f"tensor named maps n={n}", lambda: _named_maps_ok(n)))

    def endo():
        bad = []
        for j in range(1, n + 1):
            dims = one_sided_endomorphisms(n, j)
            want = {d: (1 if j == 1 else 2) if d in (0, 2) else 0 for d in dims}
            if dims != want:
                bad.append((j, dims))
        return not bad, "End(jP) is K_j in degrees 0 and 2 only" if not bad else f"unexpected: {bad}"
    out.append(_timed(f"tensor one-sided endomorphisms n={n}", endo))
    return out


# braid group, decategorified


def decat_braid_checks(n: int, max_len: int = 4) -> list[Check]:
    out = []
    for label, lhs, rhs in braid_relation_instances(n):
        out.append(_timed(f"decat braid {label} n={n}", lambda lhs=lhs, rhs=rhs: (
            decat_matrix(n, lhs) == decat_matrix(n, rhs), "Laurent matrices agree")))

    def inverses():
        ident = LaurentMatrix.identity(n)
        count = 0
        for w in all_words(n, max_len):
            if decat_matrix(n, w) * decat_matrix(n, inverse_word(w)) != ident:
                return False, f"word {w} times its inverse is not the identity"
            count += 1
        return True, f"{count} words up to length {max_len}"
    out.append(_timed(f"decat inverses n={n} len<={max_len}", inverses))
    return out


def braid_checks(n: int, seed: int = 0, max_len: int = 2) -> list[Check]:
    return verify_braid_relations(n, seed) + decat_braid_checks(n, max_len)


# soergel and ledger


def soergel_checks(n: int, seed: int = 0) -> list[Check]:
    from .soergel import (
        CATALOGUE, compare_with_rouquier, degree_four_images_vanish, relation_ids, run_relation,
        instances,
    )
    out = []
    for ident in relation_ids():
        insts = instances(CATALOGUE[ident].pattern, n)
        if not insts:
            out.append(Check(f"soergel relation {ident} n={n}", "skip",
                             f"pattern {CATALOGUE[ident].pattern} has no instance at rank {n}"))
            continue
        for c in insts:
            def one(ident=ident, c=c):
                r = run_relation(ident, c, n)
                return r.ok, (f"{r.checked} equalities, {r.zero_sides} with both sides zero"
                              if r.ok else "failed: " + "; ".join(r.failures))
            out.append(_timed(f"soergel relation {ident} colours {','.join(map(str, c))} n={n}", one))
    out.append(_timed(f"soergel degree-4 images vanish n={n}",
                      lambda: (degree_four_images_vanish(n), "all degree-4 monomials map to 0")))
    for j in range(1, n + 1):
        for sign in "+-":
            def rq(j=j, sign=sign):
                f, _ = compare_with_rouquier(n, j, sign, seed)
                return f is not None and f.is_isomorphism(), "explicit chain isomorphism"
            out.append(_timed(f"soergel rouquier {sign}{j} n={n}", rq))
    return out


def ledger_checks(n: int) -> list[Check]:
    from .soergel.ledger import root_image_coefficients, solution, verify_coefficient_ledger
    n = max(n, 3)
    rep = verify_coefficient_ledger(n)
    out = []
    for i, (src, label, res) in enumerate(rep.rows):
        out.append(Check(f"ledger {src} #{i:03d}", "pass" if res == 0 else "fail",
                         f"{label}; residual {res}"))
    sol = solution(n)
    out.append(_timed("ledger root images match f", lambda: (
        all(sol[k] == v for k, v in root_image_coefficients(n).items()), "f_k^j agree with the algebra")))
    return out


def run_suite(name: str, n: int, seed: int = 0, max_word_len: int = 2) -> list[Check]:
    if name == "algebra":
        return algebra_checks(n)
    if name == "tensor":
        return tensor_checks(n)
    if name == "tl":
        return tl_check(n, seed)
    if name == "braid":
        return braid_checks(n, seed, max_word_len)
    if name == "soergel":
        return soergel_checks(n, seed)
    if name == "ledger":
        return ledger_checks(n)
    raise ValueError(f"unknown suite {name!r}; expected one of {SUITES + ('all',)}")
