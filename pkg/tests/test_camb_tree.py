import json
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cambrian.camb_tree import (
    CambrianTree,
    InvalidTree,
    cambrian_lattice,
    cambrian_trees,
    cambrian_trees_by_rotation,
    canopy,
    catalan,
    check_commutative_diagram,
    class_maximal_permutations,
    congruence_class,
    congruent,
    free_gaps,
    increasing_rotations,
    insert,
    linear_extensions,
    max_linear_extension,
    min_linear_extension,
    p_symbol,
    path_tree,
    switch_sign_map,
)
from cambrian.perm_core import SignedPermutation, all_signatures, recoils, signed_permutations

EXAMPLE = "2- 7+ 5- 1- 3+ 4- 6+"


@st.composite
def signed_perms(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    values = draw(st.permutations(range(1, n + 1)))
    return SignedPermutation(tuple(values), draw(st.text("+-", min_size=n, max_size=n)))


def test_catalan_many_trees_per_signature():
    for n in range(5):
        for sig in all_signatures(n):
            trees = cambrian_trees(sig)
            assert len(trees) == catalan(n)
            for T in trees:
                T.validate()


def test_rotation_closure_agrees_with_enumeration():
    for sig in all_signatures(4):
        assert set(cambrian_trees_by_rotation(sig)) == set(cambrian_trees(sig))


def test_insertion_of_example(pp):
    t = pp(EXAMPLE)
    leveled = insert(t)
    leveled.validate()
    # the vertex inserted at step i sits on level i
    assert [leveled.level[v - 1] for v in t.values] == list(range(1, 8))
    assert leveled.permutation() == t
    assert canopy(leveled.tree) == recoils(t) == "-++-+-"


def test_example_fiber_has_ten_words(pp):
    T = p_symbol(pp(EXAMPLE))
    exts = linear_extensions(T)
    assert len(exts) == 10
    assert all(p_symbol(u) == T for u in exts)
    assert set(exts) == congruence_class(pp(EXAMPLE))


def test_fibers_partition_permutations():
    for sig in ("+-+-", "--++", "+--+"):
        seen = set()
        for T in cambrian_trees(sig):
            exts = set(linear_extensions(T))
            assert not exts & seen
            seen |= exts
        assert seen == set(signed_permutations(sig))


@settings(max_examples=60, deadline=None)
@given(signed_perms())
def test_class_is_an_interval_with_extreme_extensions(t):
    T = p_symbol(t)
    exts = linear_extensions(T)
    lo, hi = min_linear_extension(T), max_linear_extension(T)
    assert lo in exts and hi in exts
    for u in exts:
        assert lo.coinversions() <= u.coinversions() <= hi.coinversions()
        assert congruent(t, u)


@settings(max_examples=60, deadline=None)
@given(signed_perms())
def test_json_round_trip(t):
    T = p_symbol(t)
    assert CambrianTree.from_json(json.loads(json.dumps(T.to_json()))) == T


@pytest.mark.parametrize("sig, edges", [
    ("++", ()),                        # disconnected
    ("+++", ((1, 2), (3, 2))),         # positive vertex with two children
    ("---", ((2, 1), (2, 3))),         # negative vertex with two parents
    ("-+-", ((1, 3), (2, 3))),         # both children of 3 on its left
])
def test_invalid_trees_are_rejected(sig, edges):
    with pytest.raises(InvalidTree):
        CambrianTree(sig, edges).validate()


def test_canopy_equals_recoils_small():
    for n in range(1, 5):
        for sig in all_signatures(n):
            assert check_commutative_diagram(sig)


def test_lattice_shape():
    L = cambrian_lattice("-+--")
    assert len(L) == 14
    assert len(L.cover_arcs()) == 21
    assert L.is_lattice()
    assert len(L.minimal()) == len(L.maximal()) == 1


def test_increasing_path_is_bottom():
    for sig in ("-+--", "++-+", "+-+-"):
        bottom = path_tree(sig, increasing=True)
        assert bottom in cambrian_trees(sig)
        assert increasing_rotations(path_tree(sig, increasing=False)) == []


def test_generating_tree_yields_class_maxima():
    assert free_gaps(SignedPermutation((1,), "+")) == [0, 1]
    for sig in ("-+-+", "++--", "+-+-+"):
        maxima = class_maximal_permutations(sig)
        assert len(maxima) == catalan(len(sig))
        assert {max_linear_extension(p_symbol(t)) for t in maxima} == set(maxima)


def test_switch_map_is_a_bijection():
    for sig in ("+-+-", "-+-+"):
        for i in range(len(sig) + 1):
            if 0 < i < len(sig) and sig[i - 1] == sig[i]:
                continue
            images = {switch_sign_map(T, i) for T in cambrian_trees(sig)}
            assert len(images) == catalan(len(sig))
            for U in images:
                U.validate()


def test_catalan_values():
    assert [catalan(n) for n in range(8)] == [comb(2 * n, n) // (n + 1) for n in range(8)]
