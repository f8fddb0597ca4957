import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cambrian.camb_hopf import (
    CAMB,
    CAMB_DUAL,
    FQSYM,
    E_basis,
    E_product,
    H_basis,
    H_product,
    antipode,
    camb_P,
    camb_P_coproduct,
    camb_P_coproduct_via_F,
    camb_P_product,
    camb_P_product_via_F,
    camb_Q_coproduct,
    camb_Q_coproduct_via_G,
    camb_Q_product,
    camb_Q_product_via_G,
    duality_psi,
    freeness_series_holds,
    indecomposable_count_formula,
)
from cambrian.camb_tree import (
    EMPTY_TREE,
    E_indecomposables,
    cambrian_trees,
    catalan,
    p_symbol,
)
from cambrian.linear import LinearCombination
from cambrian.perm_core import SignedPermutation, all_signatures

SMALL = [T for n in range(4) for sig in all_signatures(n) for T in cambrian_trees(sig)]
trees = st.sampled_from(SMALL)


def word(t):
    return "".join(map(str, t.values))


def test_seven_vertex_expansion(pp):
    terms = camb_P(p_symbol(pp("2- 7+ 5- 1- 3+ 4- 6+")))
    assert sorted(word(t) for t in terms.keys()) == [
        "2137546", "2173546", "2175346", "2713546", "2715346",
        "2751346", "7213546", "7215346", "7251346", "7521346",
    ]


def test_P_product_splits_into_three_intervals(pp):
    prod = camb_P_product(p_symbol(pp("1- 2+")), p_symbol(pp("2+ 1- 3+")))
    assert sorted(len(camb_P(U)) for U in prod.keys()) == [4, 7, 9]
    assert {U.signature for U in prod.keys()} == {"-+-++"}


def test_coproduct_of_F_deconcatenates(pp):
    assert len(FQSYM.delta(LinearCombination.basis(pp("2+ 1- 3+")))) == 4


def test_antipode_of_single_vertex():
    T = p_symbol(SignedPermutation((1,), "+"))
    assert antipode(LinearCombination.basis(T)) == -LinearCombination.basis(T)


@settings(max_examples=40, deadline=None)
@given(trees, trees)
def test_P_product_two_routes(T, U):
    assert camb_P_product(T, U) == camb_P_product_via_F(T, U)


@settings(max_examples=40, deadline=None)
@given(trees, trees)
def test_Q_product_two_routes(T, U):
    assert camb_Q_product(T, U) == camb_Q_product_via_G(T, U)


@settings(max_examples=40, deadline=None)
@given(trees)
def test_coproducts_two_routes(T):
    assert camb_P_coproduct(T) == camb_P_coproduct_via_F(T)
    assert camb_Q_coproduct(T) == camb_Q_coproduct_via_G(T)


@settings(max_examples=25, deadline=None)
@given(trees, trees)
def test_bialgebra_compatibility(T, U):
    assert CAMB.is_compatible_on(T, U)
    assert CAMB_DUAL.is_compatible_on(T, U)


@settings(max_examples=25, deadline=None)
@given(trees)
def test_antipode_identity(T):
    assert CAMB.convolution_identity_holds(T)


def test_unit_is_neutral(pp):
    T = p_symbol(pp("2+ 1- 3+"))
    assert camb_P_product(T, EMPTY_TREE) == LinearCombination.basis(T)
    assert camb_P_product(EMPTY_TREE, T) == LinearCombination.basis(T)


def test_duality_collision(pp):
    left = duality_psi(p_symbol(pp("2- 1+ 3+")))
    right = duality_psi(p_symbol(pp("3- 1+ 2+")))
    assert left == right == LinearCombination.basis(p_symbol(pp("2+ 1- 3+")))


def test_duality_injective_on_constant_negative_signature():
    for n in range(1, 6):
        images = [duality_psi(T) for T in cambrian_trees("-" * n)]
        assert len(set(images)) == len(images)


@pytest.mark.parametrize("sig", ["+-+", "--+", "-+-+"])
def test_multiplicative_bases_are_graftings(sig):
    # the E and H bases multiply by grafting
    trees_ = cambrian_trees(sig)
    for T in trees_[:3]:
        for U in cambrian_trees("+-")[:2]:
            assert CAMB.mul(E_basis(T), E_basis(U)) == E_basis(E_product(T, U))
            assert CAMB.mul(H_basis(T), H_basis(U)) == H_basis(H_product(T, U))


def test_indecomposable_counts():
    for n in range(1, 5):
        total = sum(len(E_indecomposables(sig)) for sig in all_signatures(n))
        assert total == indecomposable_count_formula(n) == 2 ** n * catalan(n - 1)
    assert freeness_series_holds(8)
