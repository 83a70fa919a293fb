"""Acceptance criteria 1-11, each with its time limit.

Every criterion prints a single ``criterion k: PASS|FAIL`` line (also when
pytest captures output).  Run ``python3 tests/test_acceptance.py`` for the
lines alone.
"""
from __future__ import annotations

import itertools
import sys
import time
from collections import Counter

import pytest

from bzigzag import _kernels
from bzigzag.bimod import GradedBimodule, direct_sum, find_isomorphism, zero_bimodule
from bzigzag.braid import (
    LaurentMatrix, all_words, braid_relation_instances, decat_matrix, inverse_word,
    tl_check, word_to_complex,
)
from bzigzag.checks import tensor_table_dimension, tensor_table_expected, hom_item_dimensions, hom_item_expected
from bzigzag.komplex import apply_to_module, complex_tensor, homotopy_equivalent, minimize, rouquier_complex
from bzigzag.soergel import (
    compare_with_rouquier, degree_four_images_vanish, minimal_rank, relation_ids, relation_suite,
    verify_coefficient_ledger,
)
from bzigzag.zigzag import build_algebra

ZAMOLODCHIKOV = ("3.11", "3.12", "3.13", "3.14", "3.15")


def dimensions():
    bad = [n for n in range(2, 9) if build_algebra(n).dim != 8 * n - 6]
    return not bad, "8n-6 for n=2..8" if not bad else f"wrong at {bad}"


def associativity():
    defects = {}
    for n in (2, 3, 4):
        alg = build_algebra(n)
        defects[n] = _kernels.associativity_defects(alg.table, alg.signs)
    return not any(defects.values()), f"defective triples per rank {defects}"


def tensor_table():
    bad = [(n, j, k) for n in range(2, 6) for j, k in itertools.product(range(1, n + 1), repeat=2)
           if tensor_table_dimension(n, j, k) != tensor_table_expected(j, k)]
    return not bad, "all pairs for n<=5" if not bad else f"mismatch at {bad}"


def hom_dimensions():
    bad = [n for n in (2, 3, 4) if hom_item_dimensions(n) != hom_item_expected(n)]
    return not bad, "items (1)-(5) for n<=4" if not bad else f"mismatch at ranks {bad}"


def _word(n, *w, shift=0):
    return GradedBimodule.from_word(n, w, shift)


def tl_isomorphisms():
    cases = []
    for n in (2, 3, 4):
        for j in range(1, n + 1):
            cases.append((f"2.11 n={n} j={j}", _word(n, j, j),
                          direct_sum([_word(n, j, shift=1), _word(n, j, shift=-1)])))
            for k in range(j + 2, n + 1):
                cases.append((f"2.12 n={n} {j},{k}", _word(n, j, k), zero_bimodule(n)))
            for k in (j - 1, j + 1):
                if j >= 2 and 2 <= k <= n:
                    cases.append((f"2.13 n={n} {j},{k}", _word(n, j, k, j), _word(n, j)))
        for j, k in ((1, 2), (2, 1)):
            cases.append((f"2.14 n={n} {j},{k}", _word(n, j, k, j, k),
                          direct_sum([_word(n, j, k), _word(n, j, k)])))
    bad = []
    for label, lhs, rhs in cases:
        res = find_isomorphism(lhs, rhs)
        f = res.map
        if not (res.found and f.degree == 0 and f.is_bimodule_map() and f.is_invertible()):
            bad.append(label)
    checks = [c for n in (2, 3, 4) for c in tl_check(n)]
    bad += [c.name for c in checks if c.status != "pass"]
    return not bad, f"{len(cases)} witnesses inverted exactly" if not bad else f"failed: {bad}"


def invertibility():
    bad = []
    for n in (2, 3, 4):
        for j in range(1, n + 1):
            R, Rp = rouquier_complex(n, j, "+"), rouquier_complex(n, j, "-")
            for name, C in (("R R'", complex_tensor(R, Rp)), ("R' R", complex_tensor(Rp, R))):
                if not minimize(C).complex.is_unit():
                    bad.append(f"{name} j={j} n={n}")
    return not bad, "all pairs minimize to the unit" if not bad else f"failed: {bad}"


def braid_relations():
    bad, count = [], 0
    for n in (2, 3, 4):
        for label, lhs, rhs in braid_relation_instances(n):
            C, D = word_to_complex(n, lhs), word_to_complex(n, rhs)
            pairs = [("bimodules", C, D)] + [(f"P{k}", apply_to_module(C, k), apply_to_module(D, k))
                                             for k in range(1, n + 1)]
            for where, X, Y in pairs:
                v = homotopy_equivalent(X, Y)
                count += 1
                if not (v.equivalent and v.witness is not None and v.witness.is_isomorphism()):
                    bad.append(f"{label} {where} n={n}")
    return not bad, f"{count} equivalences with verified witnesses" if not bad else f"failed: {bad}"


def soergel_suite():
    general = [r for r in relation_ids() if r not in ZAMOLODCHIKOV]
    bad, seen, count = [], Counter(), 0
    for n in (2, 3, 4):
        results, _ = relation_suite(n, general)
        count += len(results)
        seen.update(r.ident for r in results)
        bad += [r.name for r in results if not r.ok]
        if not degree_four_images_vanish(n):
            bad.append(f"degree-4 images n={n}")
    bad += [f"{r} never instantiated" for r in general if not seen[r]]
    for ident in ZAMOLODCHIKOV:
        n = minimal_rank(ident)
        if n is None or n > 5:
            bad.append(f"{ident} has no instance up to rank 5")
            continue
        results, _ = relation_suite(n, [ident])
        count += len(results)
        bad += [r.name for r in results if not r.ok]
    if not degree_four_images_vanish(5):
        bad.append("degree-4 images n=5")
    return not bad, f"{count} relation instances" if not bad else f"failed: {bad}"


def coefficient_ledger():
    rep = verify_coefficient_ledger(5)
    sources = Counter(src.split()[0] for src, _, _ in rep.rows)
    wanted = {"3.1", "3.2", "3.9", "3.10"} | {f"3.{i}" for i in range(18, 25)}
    missing = wanted - set(sources)
    eight = sum(1 for src, _, _ in rep.rows if src.startswith("3.10"))
    ok = rep.ok and not missing and eight == 8
    return ok, f"{len(rep.rows)} equations, residuals all 0" if ok else \
        f"failures {rep.failures()}, missing {missing}, 8-valence rows {eight}"


def rouquier_matching():
    bad = []
    for n in (2, 3):
        for j in range(1, n + 1):
            f, _ = compare_with_rouquier(n, j, "+")
            if f is None or not f.is_isomorphism():
                bad.append(f"j={j} n={n}")
    return not bad, "chain isomorphisms for n<=3" if not bad else f"failed: {bad}"


def decategorified():
    n = 3
    bad = [label for label, lhs, rhs in braid_relation_instances(n)
           if decat_matrix(n, lhs) != decat_matrix(n, rhs)]
    ident, words = LaurentMatrix.identity(n), 0
    for w in all_words(n, 4):
        words += 1
        if decat_matrix(n, w) * decat_matrix(n, inverse_word(w)) != ident:
            bad.append(f"inverse of {w}")
    bad += [c.name for m in (2, 3, 4) for c in tl_check(m) if c.status != "pass"]
    return not bad, f"relations, {words} inverses, TL identities" if not bad else f"failed: {bad[:5]}"


CRITERIA = [
    (1, "algebra dimension", 1, dimensions),
    (2, "associativity n<=4", 30, associativity),
    (3, "tensor table n<=5", 10, tensor_table),
    (4, "hom dimensions n<=4", 60, hom_dimensions),
    (5, "TL isomorphisms n<=4", 120, tl_isomorphisms),
    (6, "Rouquier invertibility n<=4", 120, invertibility),
    (7, "braid relations n<=4", 900, braid_relations),
    (8, "Soergel relation suite", 600, soergel_suite),
    (9, "coefficient ledger", 5, coefficient_ledger),
    (10, "Soergel Rouquier matching n<=3", 60, rouquier_matching),
    (11, "decategorified sanity", 60, decategorified),
]


def evaluate(k, title, limit, fn) -> tuple[bool, str]:
    t = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # report a crash as a failure line
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t
    in_time = dt < limit
    line = (f"criterion {k:2d}: {'PASS' if ok and in_time else 'FAIL'}  {title} "
            f"({dt:.2f}s, limit {limit}s) {detail}" + ("" if in_time else "  [too slow]"))
    return ok and in_time, line


@pytest.mark.parametrize("k,title,limit,fn", CRITERIA, ids=[f"criterion{c[0]}" for c in CRITERIA])
def test_criterion(k, title, limit, fn, capsys):
    ok, line = evaluate(k, title, limit, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
