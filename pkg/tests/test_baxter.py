from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cambrian.baxter import (
    BAX,
    BAX_DUAL,
    CambrianTuple,
    E_indecomposable_pairs,
    TwinPair,
    alternating_signature,
    baxter_congruence_class,
    baxter_hopf_coproduct,
    baxter_hopf_coproduct_via_F,
    baxter_hopf_product,
    baxter_hopf_product_via_F,
    baxter_number,
    baxter_P,
    baxter_p_symbol,
    baxter_Q_product,
    baxter_Q_product_via_G,
    bc_matrix,
    bc_matrix_brute_force,
    bc_monotonicity_check,
    bc_number,
    bc_symmetries_hold,
    canopy_probe,
    cambrian_tuples,
    cambrian_tuples_brute_force,
    free_gap_type,
    pair_linear_extensions,
    switch_set,
    tuple_lattice,
    tuple_to_twin,
    twin_pair_count_brute_force,
    twin_pairs,
    twin_to_tuple,
)
from cambrian.camb_hopf import FQSYM_DUAL
from cambrian.linear import LinearCombination
from cambrian.perm_core import all_signatures

SMALL_PAIRS = [p for n in range(4) for sig in all_signatures(n) for p in twin_pairs(sig)]
pairs = st.sampled_from(SMALL_PAIRS)


def word(t):
    return "".join(map(str, t.values))


def test_twin_expansion_of_seven_letter_example(pp):
    terms = baxter_P(baxter_p_symbol(pp("2- 7+ 5- 1- 3+ 4- 6+")))
    assert sorted(word(t) for t in terms.keys()) == [
        "2175346", "2715346", "2751346", "7215346", "7251346", "7521346",
    ]


def test_baxter_fiber_of_four_letter_example(pp):
    q = baxter_p_symbol(pp("2+ 3- 4- 1+"))
    assert sorted(str(t) for t in baxter_P(q).keys()) == ["2+ 3- 1+ 4-", "2+ 3- 4- 1+"]
    assert set(pair_linear_extensions(q)) == baxter_congruence_class(pp("2+ 3- 4- 1+"))


def test_baxter_product_groups(pp):
    a, q = baxter_p_symbol(pp("2+ 1-")), baxter_p_symbol(pp("2+ 3- 4- 1+"))
    prod = baxter_hopf_product(a, q)
    groups = sorted(tuple(sorted(word(t) for t in baxter_P(U).keys())) for U in prod.keys())
    assert groups == sorted([
        ("214536", "214563", "241536", "241563", "245136", "245163", "245613"),
        ("245316", "245361", "245631"),
        ("421536", "421563", "425136", "425163", "425613", "452136", "452163", "452613", "456213"),
        ("425316", "425361", "425631", "452316", "452361", "452631", "456231"),
        ("453216", "453261", "453621", "456321"),
    ])
    assert {U.signature for U in prod.keys()} == {"-+++--"}
    assert sum(map(len, groups)) == 30


def test_dual_product_example(pp):
    g = FQSYM_DUAL.mul(LinearCombination.basis(pp("2+ 1-")), LinearCombination.basis(pp("1+ 2-")))
    assert sorted(word(t) for t in g.keys()) == ["2134", "3124", "3214", "4123", "4213", "4312"]
    assert {t.psign for t in g.keys()} == {"+-+-"}
    assert len(baxter_Q_product(baxter_p_symbol(pp("2+ 1-")), baxter_p_symbol(pp("1+ 2-")))) == 6


def test_baxter_coproduct_example(pp):
    cop = baxter_hopf_coproduct(baxter_p_symbol(pp("2+ 3- 4- 1+")))
    assert len(cop) == 8
    assert sorted(a.n for a, _ in cop.keys()) == [0, 1, 1, 2, 2, 3, 3, 4]


@settings(max_examples=30, deadline=None)
@given(pairs, pairs)
def test_products_two_routes(p, q):
    assert baxter_hopf_product(p, q) == baxter_hopf_product_via_F(p, q)
    assert baxter_Q_product(p, q) == baxter_Q_product_via_G(p, q)


@settings(max_examples=30, deadline=None)
@given(pairs)
def test_coproduct_two_routes_and_antipode(p):
    assert baxter_hopf_coproduct(p) == baxter_hopf_coproduct_via_F(p)
    assert BAX.convolution_identity_holds(p)
    assert BAX_DUAL.convolution_identity_holds(p)


def test_twin_counts_match_brute_force():
    for n in range(1, 5):
        for sig in all_signatures(n):
            assert len(twin_pairs(sig)) == twin_pair_count_brute_force(sig) == bc_number(sig)


def test_table_spot_values():
    assert [bc_number(s) for s in ("++-+", "++-++", "++-+-+", "++-+-++")] == [20, 70, 252, 924]
    assert [bc_number("+" * n) for n in range(1, 8)] == [baxter_number(n) for n in range(1, 8)]
    assert [baxter_number(n) for n in range(1, 8)] == [1, 2, 6, 22, 92, 422, 2074]
    assert all(bc_number(alternating_signature(n)) == comb(2 * n - 2, n - 1) for n in range(1, 9))


def test_free_gap_types_of_size_two(pp):
    assert {free_gap_type(pp("1+ 2-")), free_gap_type(pp("2+ 1-"))} == {(1, 2), (2, 1)}


@pytest.mark.parametrize("sig", ["+-", "+-+", "++-+", "-+-+-"])
def test_bc_matrix_recursion_matches_brute_force(sig):
    assert bc_matrix(sig) == bc_matrix_brute_force(sig)
    assert bc_matrix(sig).total == bc_number(sig)


def test_symmetries():
    assert all(bc_symmetries_hold(n) for n in range(1, 7))


def test_interior_switch_monotonicity():
    for n in range(3, 8):
        report = bc_monotonicity_check(n)
        assert report.interior_holds
        assert not report.full_weak_violations


@pytest.mark.xfail(strict=True, reason="end-sign flips keep the count fixed, so the full switch-set reading has ties")
def test_full_switch_set_strict_monotonicity():
    assert not bc_monotonicity_check(4).full_strict_failures


def test_incomparable_pair_at_size_nine():
    a, b = "+++-++---", "++-+++-++"
    assert (bc_number(a), bc_number(b)) == (18376, 18544)
    assert not (switch_set(a) <= switch_set(b) or switch_set(b) <= switch_set(a))


def test_twin_lattice_size():
    assert len(twin_pairs("-+--")) == 20


def test_tuple_lattice_on_two_signatures():
    sigs = ("-+--", "+---")
    tuples = cambrian_tuples(sigs)
    assert len(tuples) == 18
    assert set(tuples) == set(cambrian_tuples_brute_force(sigs))
    assert tuple_lattice(sigs).is_lattice()


def test_twin_tuple_conversion_round_trip():
    for p in twin_pairs("+-+"):
        t = twin_to_tuple(p)
        assert isinstance(t, CambrianTuple) and t.validate()
        assert tuple_to_twin(t) == p


def test_canopy_probe_constant_signature():
    for n in range(1, 6):
        assert canopy_probe("+" * n).agrees


def test_json_round_trip():
    for p in twin_pairs("+-+"):
        assert TwinPair.from_json(p.to_json()) == p


def test_indecomposable_twin_pair_counts():
    assert [len(E_indecomposable_pairs("-" * n)) for n in range(1, 7)] == [1, 1, 3, 11, 47, 221]
    assert [len(E_indecomposable_pairs(alternating_signature(n))) for n in range(1, 7)] == [1, 1, 3, 9, 29, 97]
