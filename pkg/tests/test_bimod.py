import itertools

import pytest
from flint import fmpq

from bzigzag.bimod import (
    BimoduleMap, GradedBimodule, U_generic, direct_sum, find_isomorphism, hom_space, named_map,
    regular, tensor_over_algebra, tensor_over_scalars, zero_bimodule,
)
from bzigzag.chains import central_map, chain
from bzigzag.checks import tensor_table_dimension, tensor_table_expected, hom_item_dimensions, hom_item_expected
from bzigzag.foundation import Laurent
from bzigzag.zigzag import BasisPath, build_algebra, projective

def word(n, *w, shift=0):
    return GradedBimodule.from_word(n, w, shift)


def column(f: BimoduleMap, i: int) -> dict[int, fmpq]:
    m = f.matrix
    return {r: m[r, i] for r in range(m.nrows()) if m[r, i] != 0}


def image_of_unit(f: BimoduleMap, n: int) -> dict[int, fmpq]:
    alg = build_algebra(n)
    B = chain(n, ())
    out = {}
    for j in range(1, n + 1):
        for r, c in column(f, B.index[(alg.idempotent(j),)]).items():
            out[r] = out.get(r, 0) + c
    return {r: c for r, c in out.items() if c != 0}


def vec(n, w, terms):
    """Normal-form vector in the chain for ``w`` from (path names, coefficient) pairs."""
    c = chain(n, w)
    alg = c.algebra
    return c.vector([(tuple(alg.path(BasisPath(*p) if isinstance(p, tuple) else p) for p in t), fmpq(k))
                     for t, k in terms])


# tensor products over the algebra


def test_tensor_table_examples():
    assert tensor_table_dimension(3, 1, 2) == Laurent({1: 2})
    assert tensor_table_dimension(3, 1, 3).is_zero()
    assert tensor_table_dimension(3, 2, 2) == Laurent({0: 2, 2: 2})
    assert tensor_table_dimension(3, 1, 1) == Laurent({0: 1, 2: 1})


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_tensor_table_all_pairs(n):
    for j, k in itertools.product(range(1, n + 1), repeat=2):
        assert tensor_table_dimension(n, j, k) == tensor_table_expected(j, k), (j, k)


def test_algebra_mismatch():
    with pytest.raises(ValueError):
        tensor_over_algebra(regular(2), regular(3))


@pytest.mark.parametrize("n", [2, 3])
def test_tensor_associative_on_dimensions(n):
    mods = [regular(n)] + [word(n, j) for j in range(1, n + 1)]
    for A, B, C in itertools.product(mods, repeat=3):
        left = tensor_over_algebra(tensor_over_algebra(A, B), C)
        right = tensor_over_algebra(A, tensor_over_algebra(B, C))
        assert left.graded_dimension() == right.graded_dimension()


@pytest.mark.parametrize("w", [(1, 2), (2, 1), (2, 3), (1, 1), (3, 3)])
def test_generic_tensor_matches_normal_form(w):
    n = 3
    generic = tensor_over_algebra(word(n, w[0]), word(n, w[1]))
    normal = word(n, *w)
    assert generic.graded_dimension() == normal.graded_dimension()
    assert find_isomorphism(generic, normal).found


# tensor products over the scalar fields


def test_U1_dimensions():
    U1 = word(3, 1)
    p = Laurent({0: 1, 1: 2, 2: 1})
    assert U1.dim == 16
    assert U1.graded_dimension() == (p * p).shift(-1)


def test_U2_halved():
    assert word(3, 2).dim == 32
    alg = build_algebra(3)
    plain = projective(alg, 2, "left").dim * projective(alg, 2, "right").dim
    assert U_generic(3, 2).dim * 2 == plain


@pytest.mark.parametrize("j", [1, 2, 3])
def test_scalar_tensor_matches_normal_form(j):
    assert find_isomorphism(U_generic(3, j), word(3, j)).found


def test_scalar_index_mismatch():
    alg = build_algebra(3)
    with pytest.raises(ValueError):
        tensor_over_scalars(projective(alg, 2, "left"), projective(alg, 3, "right"), 2)


def test_bimodule_axioms():
    for M in (regular(3), word(3, 2), word(3, 1, 2), U_generic(2, 2)):
        assert M.verify()


def test_json_round_trip():
    M = word(2, 1, 2)
    back = GradedBimodule.from_json(M.to_json())
    assert back.graded_dimension() == M.graded_dimension()
    assert all(back.left(g) == M.left(g) and back.right(g) == M.right(g) for g in range(M.algebra.dim))


# hom spaces


def test_hom_examples():
    n = 3
    assert len(hom_space(word(n, 1), regular(n), 1)) == 1
    assert len(hom_space(word(n, 2), regular(n), 1)) == 2
    assert len(hom_space(regular(n), regular(n), 2)) == 2 * n - 1


@pytest.mark.parametrize("n", [2, 3])
def test_hom_items(n):
    assert hom_item_dimensions(n) == hom_item_expected(n)


def test_hom_elements_commute():
    for f in hom_space(word(3, 2), word(3, 2, 2), -1):
        assert f.is_bimodule_map()


# isomorphisms


def test_iso_square():
    n = 3
    lhs = word(n, 1, 1)
    rhs = direct_sum([word(n, 1, shift=1), word(n, 1, shift=-1)])
    res = find_isomorphism(lhs, rhs)
    assert res.found and res.certified and res.map.is_invertible() and res.map.is_bimodule_map()


def test_iso_far_apart_vanishes():
    res = find_isomorphism(word(3, 1, 3), zero_bimodule(3))
    assert res.found and word(3, 1, 3).dim == 0


def test_iso_doubled():
    n = 3
    lhs = word(n, 1, 2, 1, 2)
    res = find_isomorphism(lhs, direct_sum([word(n, 1, 2), word(n, 1, 2)]))
    assert res.found and res.map.is_invertible()


def test_iso_self_is_identity():
    M = word(2, 2)
    res = find_isomorphism(M, M)
    assert res.map.matrix == M.identity().matrix


def test_iso_negative_certified_by_dimension():
    res = find_isomorphism(word(3, 1), word(3, 2))
    assert not res.found and res.certified


# named maps


def test_gamma_one():
    n = 3
    g = named_map("gamma", 1, n)
    want = vec(n, (1,), [((("X", 1), ("E", 1)), 1), ((("E", 1), ("X", 1)), 1),
                         ((("A", 2, 1), ("A", 1, 2)), 1), ((("IA", 2, 1), ("IA", 1, 2)), -1)])
    assert image_of_unit(g, n) == want


@pytest.mark.parametrize("j", [1, 2, 3])
def test_beta_multiplies(j):
    n = 3
    alg = build_algebra(n)
    b = named_map("beta", j, n)
    src = chain(n, (j,)).index[(alg.idempotent(j), alg.idempotent(j))]
    assert column(b, src) == {chain(n, ()).index[(alg.idempotent(j),)]: 1}


def test_epsilon_one():
    n = 3
    alg = build_algebra(n)
    B = chain(n, ())
    X = lambda j: B.index[(alg.path(BasisPath("X", j)),)]
    assert image_of_unit(named_map("epsilon", 1, n), n) == {X(1): 2, X(2): 2}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_named_maps_are_bimodule_maps(n):
    for j in range(1, n + 1):
        for kind in ("beta", "gamma", "alpha_split", "delta_merge", "epsilon"):
            f = named_map(kind, j, n)
            assert not f.is_zero() and f.is_bimodule_map()
        assert (named_map("delta_merge", j, n) @ named_map("alpha_split", j, n)).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_barbell_composition(n):
    alg = build_algebra(n)
    for j in range(1, n + 1):
        X = alg.loop
        if j == 1:
            z = 2 * X(1) + 2 * X(2)
        else:
            z = 2 * X(j) + sum((X(k) for k in (j - 1, j + 1) if 1 <= k <= n), alg.zero())
        bg = named_map("beta", j, n) @ named_map("gamma", j, n)
        assert bg.matrix == central_map(n, z)


def test_named_map_errors():
    with pytest.raises(IndexError):
        named_map("beta", 4, 3)
    with pytest.raises(ValueError):
        named_map("bogus", 1, 3)
