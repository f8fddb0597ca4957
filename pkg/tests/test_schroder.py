import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cambrian import verify
from cambrian.perm_core import all_signatures, format_partition, parse_partition, partition_recoils
from cambrian.schroder import (
    SCHRODER,
    SCHRODER_DUAL,
    SchroderCambrianTree,
    alternate_count_expression,
    cambrian_restriction_holds,
    canopy_matches_recoils,
    class_is_interval,
    count_by_nodes,
    dissection_count_formula,
    dissection_counts,
    non_monotone_contractions,
    p_star_extends_p_symbol,
    p_star_symbol,
    schroder_congruence_class,
    schroder_lattice,
    schroder_linear_extensions,
    schroder_P,
    schroder_canopy,
    schroder_P_coproduct,
    schroder_P_coproduct_via_F,
    schroder_P_product,
    schroder_P_product_via_F,
    schroder_Q_coproduct,
    schroder_Q_coproduct_via_G,
    schroder_Q_product,
    schroder_Q_product_via_G,
    schroder_trees,
    schroder_trees_by_contraction,
    super_catalan,
)

SMALL = [T for n in range(4) for sig in all_signatures(n) for T in schroder_trees(sig)]
trees = st.sampled_from(SMALL)
EXAMPLE = "125-7+/3+4-/6+"


def test_example_tree_and_fiber():
    T = p_star_symbol(parse_partition(EXAMPLE))
    assert str(T) == verify.SCHRODER_EXAMPLE_TREE
    fiber = sorted(format_partition(m) for m in schroder_linear_extensions(T))
    assert fiber == sorted(verify.SCHRODER_EXAMPLE_FIBER)
    assert set(schroder_linear_extensions(T)) == schroder_congruence_class(parse_partition(EXAMPLE))
    assert class_is_interval(T)


def test_single_block_with_constant_sign_gives_one_node():
    for text in ("1+", "12-", "123+"):
        T = p_star_symbol(parse_partition(text))
        assert T.node_count == 1 and not T.edges


def test_counts_per_signature():
    for n in range(1, 5):
        for sig in all_signatures(n):
            assert len(schroder_trees(sig)) == super_catalan(n) == verify.SCHRODER_TOTALS[n - 1]
    assert [count_by_nodes("+--", m) for m in (1, 2, 3)] == [1, 5, 5]


def test_contraction_closure_matches_enumeration():
    for sig in ("+-+", "--+-"):
        assert set(schroder_trees_by_contraction(sig)) == set(schroder_trees(sig))


def test_dissection_counts():
    for n in range(1, 6):
        assert dissection_counts(n) == [dissection_count_formula(n, d) for d in range(n)]
    assert dissection_counts(4) == [1, 9, 21, 14]


@pytest.mark.xfail(strict=True, reason="closed form is not an integer at (3, 1); see decisions ledger")
def test_alternate_count_expression_is_integral():
    assert alternate_count_expression(3, 1).denominator == 1


def test_non_monotone_contractions_derived():
    assert len(non_monotone_contractions("+--")) == verify.NON_MONOTONE_DERIVED


@pytest.mark.xfail(strict=True, reason="published count of non-monotone contractions disagrees with brute force")
def test_non_monotone_contractions_published():
    assert len(non_monotone_contractions("+--")) == verify.NON_MONOTONE_PUBLISHED


@pytest.mark.parametrize("sig", ["+-+", "--+", "+--+"])
def test_structural_checks(sig):
    assert canopy_matches_recoils(sig)
    assert p_star_extends_p_symbol(sig)
    assert cambrian_restriction_holds(sig)


def test_lattice_size():
    L = schroder_lattice("+-+")
    assert len(L) == 11 and L.is_lattice()


def test_product_example():
    A, B = (p_star_symbol(parse_partition(t)) for t in ("1-2+", "1+/3-/2-4+"))
    prod = schroder_P_product(A, B)
    groups = sorted(tuple(sorted(format_partition(m) for m in schroder_P(U).keys())) for U in prod.keys())
    assert groups == sorted(verify.SCHRODER_PRODUCT_GROUPS)


def test_canopy_of_example_equals_partition_recoils():
    lam = parse_partition(EXAMPLE)
    assert schroder_canopy(p_star_symbol(lam)) == partition_recoils(lam.partition) == "0+0-+-"


@settings(max_examples=30, deadline=None)
@given(trees, trees)
def test_products_two_routes(T, U):
    assert schroder_P_product(T, U) == schroder_P_product_via_F(T, U)
    assert schroder_Q_product(T, U) == schroder_Q_product_via_G(T, U)


@settings(max_examples=30, deadline=None)
@given(trees)
def test_coproducts_two_routes_and_antipode(T):
    assert schroder_P_coproduct(T) == schroder_P_coproduct_via_F(T)
    assert schroder_Q_coproduct(T) == schroder_Q_coproduct_via_G(T)
    assert SCHRODER.convolution_identity_holds(T)
    assert SCHRODER_DUAL.convolution_identity_holds(T)


@settings(max_examples=40, deadline=None)
@given(trees)
def test_json_round_trip(T):
    assert SchroderCambrianTree.from_json(T.to_json()) == T
