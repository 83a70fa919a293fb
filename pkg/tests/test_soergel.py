import random

import pytest
import sympy
from flint import fmpq
from hypothesis import given, settings, strategies as st

from bzigzag.bimod import named_map
from bzigzag.chains import central_map, chain, identity_map
from bzigzag.foundation import Polynomial, coxeter_m, monomials
from bzigzag.foundation.linalg import is_zero
from bzigzag.komplex import complex_tensor, minimize
from bzigzag.soergel import (
    CATALOGUE, SOLVED, DiagramSyntaxError, DiagramTypeError, RelationError, Scalars, alternating,
    barbell, build_ledger, cap, check_relation, comp, compare_with_rouquier, crossing, cup,
    degree_four_images_vanish, dot_end, dot_start, evaluate, evaluate_matrix, forcing_polynomials,
    identity, instances, lin, merge, minimal_rank, mirror, needle, parse_diagram, parse_diagram_file,
    poly, polynomial_image, relation_ids, relation_suite, run_relation, soergel_rouquier, solution,
    split, tens, to_text, verify_coefficient_ledger,
)
from bzigzag.soergel import ledger as L
from bzigzag.zigzag import build_algebra

N = 3


# random well-typed terms built layer by layer


def _layer(word: tuple, rnd: random.Random, n: int, max_len: int):
    """A random generator placed inside identities; returns (term, new word) or None."""
    i = rnd.randrange(len(word) + 1)
    kind = rnd.choice(["dot_start", "dot_end", "split", "merge", "crossing", "poly"])
    pre, post = word[:i], word[i:]
    if kind == "dot_start" and len(word) < max_len:
        j = rnd.randint(1, n)
        g, mid = dot_start(j), (j,)
    elif kind == "poly":
        g, mid = poly(Polynomial.root(n, rnd.randint(1, n), rnd.choice([1, -2]))), ()
    elif kind == "dot_end" and post:
        g, mid = dot_end(post[0]), ()
        post = post[1:]
    elif kind == "split" and post and len(word) < max_len:
        g, mid = split(post[0]), (post[0], post[0])
        post = post[1:]
    elif kind == "merge" and len(post) >= 2 and post[0] == post[1]:
        g, mid = merge(post[0]), (post[0],)
        post = post[2:]
    elif kind == "crossing" and len(post) >= 2 and post[0] != post[1] and coxeter_m(post[0], post[1]) == 2:
        g, mid = crossing(post[0], post[1]), (post[1], post[0])
        post = post[2:]
    else:
        return None
    parts = ([identity(*pre)] if pre else []) + [g] + ([identity(*post)] if post else [])
    term = parts[0] if len(parts) == 1 else tens(*parts)
    return term, pre + mid + post


def random_term(seed: int, n: int = N, steps: int = 4, max_len: int = 3):
    rnd = random.Random(seed)
    word = tuple(rnd.randint(1, n) for _ in range(rnd.randint(0, 2)))
    layers = []
    while len(layers) < steps:
        hit = _layer(word, rnd, n, max_len)
        if hit:
            t, word = hit
            layers.append(t)
    return comp(*reversed(layers))


def split_term(seed: int):
    """Two composable random terms (g first, then f)."""
    t = random_term(seed, steps=4)
    f, g = t.parts  # comp nests to the right, so this is a binary split
    return f, g


seeds = st.integers(0, 10 ** 6)


# parser


def test_parse_examples():
    t = parse_diagram("comp(dot_end(1), dot_start(1))")
    assert (t.dom, t.cod, t.degree) == ((), (), 2)
    t = parse_diagram("tens(id(1), id(2))")
    assert (t.dom, t.cod, t.degree) == ((1, 2), (1, 2), 0)
    t = parse_diagram("comp(merge(2), split(2))")
    assert (t.dom, t.cod, t.degree) == ((2,), (2,), -2)
    t = parse_diagram("  comp( merge(2) ,split(2) ) ")
    assert t == parse_diagram("comp(merge(2), split(2))")


def test_parse_lin_and_poly():
    t = parse_diagram("lin(1: barbell(1), -1/2: poly(2*a1 + 2*a2))")
    assert t.degree == 2
    assert is_zero(evaluate_matrix(parse_diagram("lin(1: barbell(1), -1: poly(a1))"), 3))


def test_parse_errors_carry_positions():
    with pytest.raises(DiagramSyntaxError) as err:
        parse_diagram("comp(dot_end(1) dot_start(1))")
    assert err.value.pos == 16
    assert "^" in str(err.value)
    with pytest.raises(DiagramSyntaxError, match="unknown"):
        parse_diagram("frobnicate(1)")
    with pytest.raises(DiagramSyntaxError):
        parse_diagram("split(1, 2)")
    with pytest.raises(DiagramSyntaxError):
        parse_diagram("comp(dot_end(1), split(2))")


def test_type_errors():
    with pytest.raises(DiagramTypeError):
        comp(dot_end(1), split(2))
    with pytest.raises(DiagramTypeError):
        lin([(1, barbell(1)), (1, identity(1))])
    with pytest.raises(DiagramTypeError):
        crossing(1, 1)


def test_diagram_file_header():
    t, declared = parse_diagram_file("# a needle\nobject: 2\nneedle(2)\n")
    assert declared == (2,) and t.dom == (2,)
    with pytest.raises((DiagramSyntaxError, DiagramTypeError, ValueError)):
        parse_diagram_file("object: 1 2\nneedle(2)\n")


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_text_round_trip(seed):
    t = random_term(seed)
    assert parse_diagram(to_text(t)) == t


def test_crossing_boundaries():
    for s, t in [(1, 2), (2, 1), (2, 3), (1, 3)]:
        c = crossing(s, t)
        m = coxeter_m(s, t)
        assert c.dom == alternating(s, t, m) and c.cod == alternating(t, s, m) and c.degree == 0


# evaluation


def test_barbell_is_multiplication():
    alg = build_algebra(N)
    X = alg.loop
    assert evaluate_matrix(barbell(1), N) == central_map(N, 2 * X(1) + 2 * X(2))


def test_crossings_vanish():
    for s, t in [(1, 2), (2, 3), (1, 3)]:
        assert evaluate(crossing(s, t), 3).is_zero()


def test_identity_and_needle():
    for j in (1, 2, 3):
        assert evaluate_matrix(identity(j), N) == identity_map(chain(N, (j,)))
        assert evaluate(needle(j), N).is_zero()
        assert evaluate(comp(merge(j), split(j)), N).is_zero()


def test_generator_assignments():
    n = 3
    for j in range(1, n + 1):
        sign = 1 if j % 2 else -1
        assert evaluate_matrix(dot_end(j), n) == sign * named_map("beta", j, n).matrix
        assert evaluate_matrix(dot_start(j), n) == named_map("gamma", j, n).matrix
        assert evaluate_matrix(split(j), n) == sign * named_map("alpha_split", j, n).matrix
        assert evaluate_matrix(merge(j), n) == named_map("delta_merge", j, n).matrix


def test_polynomial_images():
    alg = build_algebra(4)
    X = alg.loop
    assert polynomial_image(Polynomial.root(4, 1), 4) == 2 * X(1) + 2 * X(2)
    assert polynomial_image(Polynomial.root(4, 2), 4) == -(2 * X(2) + X(1) + X(3))
    assert polynomial_image(Polynomial.root(4, 4), 4) == -(2 * X(4) + X(3))
    assert degree_four_images_vanish(4)
    assert all(polynomial_image(f, 3).is_zero() for f in monomials(3, 3))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_degree_bookkeeping(seed):
    t = random_term(seed)
    f = evaluate(t, N)
    assert f.degree == t.degree
    src, tgt = chain(N, t.dom), chain(N, t.cod)
    m = f.matrix
    for r in range(m.nrows()):
        for c in range(m.ncols()):
            if m[r, c] != 0:
                assert tgt.degrees[r] == src.degrees[c] + t.degree


@settings(max_examples=25, deadline=None)
@given(seeds, seeds)
def test_interchange_law(s1, s2):
    f, g = random_term(s1, steps=2), random_term(s2, steps=2)
    a = comp(tens(f, identity(*g.cod)), tens(identity(*f.dom), g)) if g.cod else None
    whole = evaluate_matrix(tens(f, g), N)
    if a is not None:
        assert evaluate_matrix(a, N) == whole
    if f.cod:
        b = comp(tens(identity(*f.cod), g), tens(f, identity(*g.dom))) if g.dom else None
        if b is not None:
            assert evaluate_matrix(b, N) == whole


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_composition_is_functorial(seed):
    f, g = split_term(seed)
    assert evaluate_matrix(comp(f, g), N) == evaluate_matrix(f, N) * evaluate_matrix(g, N)


@settings(max_examples=20, deadline=None)
@given(seeds, seeds)
def test_tensor_associative(s1, s2):
    f, g = random_term(s1, steps=2, max_len=2), random_term(s2, steps=2, max_len=1)
    h = dot_end(2)
    assert evaluate_matrix(tens(tens(f, g), h), N) == evaluate_matrix(tens(f, tens(g, h)), N)


def test_linear_combinations():
    t = lin([(2, barbell(1)), (fmpq(-1, 2), barbell(2))])
    assert evaluate_matrix(t, N) == 2 * evaluate_matrix(barbell(1), N) - evaluate_matrix(barbell(2), N) / 2


def test_mirror_swaps_boundaries():
    t = comp(split(2), dot_start(2))
    m = mirror(t)
    assert (m.dom, m.cod, m.degree) == (t.cod, t.dom, t.degree)


def test_cup_cap_zigzag():
    for j in (1, 2):
        zig = comp(tens(cap(j), identity(j)), tens(identity(j), cup(j)))
        assert evaluate_matrix(zig, N) == evaluate_matrix(identity(j), N)


# relation catalogue


def test_catalogue_complete():
    assert relation_ids() == [f"3.{k}" for k in range(1, 25)]
    assert minimal_rank("3.13") == 5 and minimal_rank("3.11") == 4 and minimal_rank("3.15") == 3


def test_spec_examples():
    assert check_relation("3.1", 1)
    assert check_relation("3.8", (1, 3))
    assert check_relation("3.10", (1, 2))
    assert check_relation("3.13", (1, 3, 5), 5)
    r = run_relation("3.8", (1, 3), 3)
    assert r.zero_sides == r.checked
    r = run_relation("3.13", (1, 3, 5), 5)
    assert r.zero_sides == r.checked


def test_bad_colours():
    with pytest.raises(RelationError):
        run_relation("3.10", (2, 3), 3)
    with pytest.raises(RelationError):
        run_relation("3.11", (1, 2, 3), 4)


@pytest.mark.parametrize("n", [2, 3])
def test_suite_small_ranks(n):
    results, skipped = relation_suite(n)
    assert results and all(r.ok for r in results), [r.name for r in results if not r.ok]
    for ident in skipped:
        assert not instances(CATALOGUE[ident].pattern, n)


def test_forcing_spanning_set():
    fs = forcing_polynomials(3)
    assert len(fs) == 1 + 3 + 6
    assert {f.degree() for f in fs} == {0, 2, 4}


class _AllOnes(Scalars):
    def a(self, j):
        return fmpq(1)

    def b(self, j):
        return fmpq(1)


class _FlipC3(Scalars):
    def c(self, j):
        return fmpq(-1 if j == 3 else 1)


def test_relations_depend_on_scalars():
    # the catalogue must reject wrong scalars, otherwise the checks would be vacuous
    assert not check_relation("3.1", 2, 3, _AllOnes())
    assert not check_relation("3.10", (1, 2), 3, _AllOnes())
    assert not check_relation("3.19", 3, 3, _FlipC3())
    assert check_relation("3.19", 3, 3, SOLVED)


# coefficient ledger


def test_ledger_residuals():
    rep = verify_coefficient_ledger(5)
    assert rep.ok and len(rep.rows) == 87
    sources = {s for s, _, _ in rep.rows}
    assert {"3.1", "3.2", "3.9", "3.10 red", "3.10 blue", "3.18", "3.24"} <= sources
    assert sum(s.startswith("3.10") for s, _, _ in rep.rows) == 8


def test_ledger_examples():
    vals = solution(5)
    assert (L.a(1) * L.b(1)).subs(vals) == 1
    assert (L.d(2) * L.b(1) * L.c(1)).subs(vals) == -L.b(2).subs(vals) == 1
    assert (L.d(3) * L.b(2) * L.c(2) + L.b(3)).subs(vals) == 0
    eight = L.b(1) - (-1) * L.b(1) ** 2 * L.d(2) * L.a(2) * L.c(1)
    assert eight.subs(vals) == 0


def test_ledger_detects_wrong_solution():
    led = build_ledger(4)
    vals = solution(4)
    vals[L.c(2)] = 2
    assert any(sympy.simplify(e.expr.subs(vals)) != 0 for e in led.equations)


# Rouquier complexes from diagrams


@pytest.mark.parametrize("n", [2, 3])
def test_rouquier_matches(n):
    for j in range(1, n + 1):
        for sign in "+-":
            f, _ = compare_with_rouquier(n, j, sign)
            assert f is not None and f.is_isomorphism()


def test_rouquier_differential_is_dot():
    C = soergel_rouquier(3, 1, "+")
    assert C.differential(0) == evaluate_matrix(dot_end(1), 3)


def test_soergel_rouquier_inverse():
    for j in (1, 2):
        assert minimize(complex_tensor(soergel_rouquier(3, j, "+"), soergel_rouquier(3, j, "-"))).complex.is_unit()
        assert minimize(complex_tensor(soergel_rouquier(3, j, "-"), soergel_rouquier(3, j, "+"))).complex.is_unit()
