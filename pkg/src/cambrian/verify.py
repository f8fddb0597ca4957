"""Verification harness: one suite per acceptance criterion.

Each suite returns a :class:`SuiteReport` made of :class:`Check` rows.  A check
is either asserted (it decides pass/fail), a known conflict (a published value
that the brute-force oracle contradicts; shown, never fatal, and recorded in
the decisions ledger) or informational.

Expected values are frozen literals.  Tabulated numbers come from the source
tables; everything else was produced once by an independent brute-force oracle
and pinned here.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Sequence

ASSERTED = "asserted"
CONFLICT = "conflict"
INFO = "info"


@dataclass
class Check:
    label: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    kind: str = ASSERTED

    def render(self) -> str:
        if self.kind == ASSERTED:
            tag = "PASS" if self.passed else "FAIL"
        elif self.kind == CONFLICT:
            tag = "CONFLICT"
        else:
            tag = "INFO"
        extra = f"  {self.detail}" if self.detail else ""
        return f"  [{tag:8}] {self.label} ({self.seconds:.2f}s){extra}"


@dataclass
class SuiteReport:
    name: str
    criterion: int
    title: str
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0
    budget_seconds: float | None = None

    @property
    def within_budget(self) -> bool:
        return self.budget_seconds is None or self.seconds < self.budget_seconds

    @property
    def passed(self) -> bool:
        return self.within_budget and all(c.passed for c in self.checks if c.kind == ASSERTED)

    def summary_line(self) -> str:
        budget = f" / budget {self.budget_seconds:.0f}s" if self.budget_seconds else ""
        conflicts = sum(c.kind == CONFLICT for c in self.checks)
        note = f", {conflicts} known conflict(s) reported" if conflicts else ""
        status = "PASS" if self.passed else "FAIL"
        return (
            f"criterion {self.criterion:>2} [{status}] {self.name}: {self.title} "
            f"({self.seconds:.1f}s{budget}{note})"
        )

    def render(self) -> str:
        return "\n".join([self.summary_line(), *(c.render() for c in self.checks)])

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "criterion": self.criterion,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "checks": [
                {"label": c.label, "kind": c.kind, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }


class _Recorder:
    """Collects checks, timing each one."""

    def __init__(self):
        self.checks: list[Check] = []

    def run(self, label: str, fn: Callable[[], object], kind: str = ASSERTED) -> None:
        start = time.perf_counter()
        try:
            result = fn()
        except Exception as exc:  # a crash is a failed check, not a crashed harness
            result = (False, f"{type(exc).__name__}: {exc}")
        passed, detail = result if isinstance(result, tuple) else (bool(result), "")
        self.checks.append(Check(label, bool(passed), detail, time.perf_counter() - start, kind))


def parallel_map(fn: Callable, items: Sequence, jobs: int = 1) -> list:
    """Order-stable map; fans out to worker processes when jobs > 1."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _failures(results: Iterable[tuple[object, bool]], limit: int = 3) -> tuple[bool, str]:
    bad = [str(k) for k, ok in results if not ok]
    if not bad:
        return True, ""
    return False, f"{len(bad)} failing, e.g. {', '.join(bad[:limit])}"


def _sigs(n: int) -> list[str]:
    from .perm_core import all_signatures

    return all_signatures(n)


# ---------------------------------------------------------------------------
# criterion 1: counts


def _count_signature(sig: str) -> tuple[str, bool]:
    from .camb_tree import cambrian_trees, catalan

    trees = cambrian_trees(sig)
    for T in trees:
        T.validate()
    return sig, len(trees) == catalan(len(sig)) and len(set(trees)) == len(trees)


def _count_cross_check(sig: str) -> tuple[str, bool]:
    from .camb_tree import cambrian_trees, cambrian_trees_by_rotation, p_symbol
    from .perm_core import signed_permutations

    trees = cambrian_trees(sig)
    by_symbol = sorted({p_symbol(t) for t in signed_permutations(sig)})
    return sig, trees == cambrian_trees_by_rotation(sig) == by_symbol


def suite_counts(n: int, seed: int, jobs: int) -> list[Check]:
    from .camb_tree import EMPTY_TREE, catalan

    rec = _Recorder()
    rec.run("n = 0 has exactly the empty tree", lambda: EMPTY_TREE.n == 0 and catalan(0) == 1)
    for m in range(1, n + 1):
        def per_size(m=m):
            results = parallel_map(_count_signature, _sigs(m), jobs)
            ok, detail = _failures(results)
            total = sum(1 for _ in results) * catalan(m)
            return ok, f"C_{m} = {catalan(m)} per signature; total {total}" if ok else detail
        rec.run(f"every signature of size {m} has C_{m} trees", per_size)
    top = min(n, 6)
    if top:
        rec.run(
            f"insertion, rotation closure and P-symbol images agree for n <= {top}",
            lambda: _failures(parallel_map(_count_cross_check, [s for m in range(1, top + 1) for s in _sigs(m)], jobs)),
        )
    return rec.checks


# ---------------------------------------------------------------------------
# criterion 2: fibers, intervals, congruence


def _inversion_mask(t, index: dict) -> int:
    mask = 0
    for pair in t.coinversions():
        mask |= 1 << index[pair]
    return mask


def _fiber_signature(sig: str) -> tuple[str, bool]:
    from .camb_tree import (
        cambrian_trees,
        congruence_class,
        linear_extensions,
        max_linear_extension,
        min_linear_extension,
        p_symbol,
    )
    from .perm_core import signed_permutations

    n = len(sig)
    index = {pair: k for k, pair in enumerate(combinations(range(1, n + 1), 2))}
    perms = list(signed_permutations(sig))
    masks = {t: _inversion_mask(t, index) for t in perms}
    fibers: dict = {}
    for t in perms:
        fibers.setdefault(p_symbol(t), set()).add(t)
    if sorted(fibers) != cambrian_trees(sig) or sum(map(len, fibers.values())) != len(perms):
        return sig, False
    for T, fiber in fibers.items():
        lo, hi = masks[min_linear_extension(T)], masks[max_linear_extension(T)]
        interval = {t for t in perms if masks[t] & lo == lo and masks[t] | hi == hi}
        if interval != fiber or set(linear_extensions(T)) != fiber:
            return sig, False
        if congruence_class(next(iter(fiber))) != fiber:
            return sig, False
    return sig, True


def suite_fibers(n: int, seed: int, jobs: int) -> list[Check]:
    from .camb_tree import congruence_class, linear_extensions, p_symbol
    from .perm_core import SignedPermutation

    rec = _Recorder()
    for m in range(0, n + 1):
        rec.run(
            f"size {m}: fibers partition S^sigma, are weak intervals and congruence classes",
            lambda m=m: _failures(parallel_map(_fiber_signature, _sigs(m), jobs)),
        )
    if n >= 6:
        def sample():
            rng = random.Random(seed)
            bad = 0
            for _ in range(40):
                sig = "".join(rng.choice("+-") for _ in range(7))
                word = list(range(1, 8))
                rng.shuffle(word)
                t = SignedPermutation(tuple(word), sig)
                if congruence_class(t) != set(linear_extensions(p_symbol(t))):
                    bad += 1
            return bad == 0, f"40 seeded samples (seed {seed}), {bad} mismatches"
        rec.run("size 7: seeded random sample of classes", sample)
    return rec.checks


# ---------------------------------------------------------------------------
# criterion 3: canopy


def _canopy_signature(sig: str) -> tuple[str, bool]:
    from .camb_tree import check_commutative_diagram

    return sig, check_commutative_diagram(sig)


def suite_canopy(n: int, seed: int, jobs: int) -> list[Check]:
    rec = _Recorder()
    for m in range(1, n + 1):
        rec.run(
            f"size {m}: recoils = canopy of the P-symbol on every signed permutation",
            lambda m=m: _failures(parallel_map(_canopy_signature, _sigs(m), jobs)),
        )
    return rec.checks


# ---------------------------------------------------------------------------
# criterion 4: Hopf oracles and axioms


def _trees_up_to(n: int) -> dict[int, list]:
    from .camb_tree import EMPTY_TREE, cambrian_trees

    out = {0: [EMPTY_TREE]}
    for m in range(1, n + 1):
        out[m] = [T for s in _sigs(m) for T in cambrian_trees(s)]
    return out


def _hopf_products_for(args) -> tuple[str, bool]:
    """All right factors U of the given sizes against one left factor T."""
    from .camb_hopf import camb_P_product, camb_P_product_via_F, camb_Q_product, camb_Q_product_via_G

    T, right_sizes, dual = args
    trees = _trees_up_to(max(right_sizes, default=0))
    for b in right_sizes:
        for U in trees[b]:
            if camb_P_product(T, U) != camb_P_product_via_F(T, U):
                return f"P {T}*{U}", False
            if dual and camb_Q_product(T, U) != camb_Q_product_via_G(T, U):
                return f"Q {T}*{U}", False
    return str(T), True


def _hopf_coproducts_for(T) -> tuple[str, bool]:
    from .camb_hopf import camb_P_coproduct, camb_P_coproduct_via_F, camb_Q_coproduct, camb_Q_coproduct_via_G

    ok = camb_P_coproduct(T) == camb_P_coproduct_via_F(T) and camb_Q_coproduct(T) == camb_Q_coproduct_via_G(T)
    return str(T), ok


def _axioms_for(args) -> tuple[str, bool]:
    from .camb_hopf import CAMB, CAMB_DUAL

    T, limit = args
    trees = _trees_up_to(limit)
    rest = limit - T.n
    for algebra, name in ((CAMB, "P"), (CAMB_DUAL, "Q")):
        if not algebra.is_coassociative_on(T):
            return f"{name} coassociativity at {T}", False
        for b in range(1, rest + 1):
            for U in trees[b]:
                if not algebra.is_compatible_on(T, U):
                    return f"{name} compatibility at {T},{U}", False
                for c in range(1, rest - b + 1):
                    for V in trees[c]:
                        if not algebra.is_associative_on(T, U, V):
                            return f"{name} associativity at {T},{U},{V}", False
    return str(T), True


def suite_hopf(n: int, seed: int, jobs: int) -> list[Check]:
    rec = _Recorder()
    small = min(n, 5)
    trees = _trees_up_to(max(n - 1, 0))

    def products(limit: int, dual: bool):
        work = [
            (T, tuple(range(1, limit - a + 1)), dual)
            for a in range(1, limit) for T in trees[a]
        ]
        return _failures(parallel_map(_hopf_products_for, work, jobs))

    rec.run(f"P product = F-expansion, all pairs of total size <= {n}", lambda: products(n, False))
    rec.run(f"Q product = G-convolution, all pairs of total size <= {small}", lambda: products(small, True))
    all_small = [T for m in range(1, small + 1) for T in _trees_up_to(small)[m]]
    rec.run(
        f"P and Q coproducts = permutation oracles, all trees of size <= {small}",
        lambda: _failures(parallel_map(_hopf_coproducts_for, all_small, jobs)),
    )
    rec.run(
        f"associativity, coassociativity, compatibility (P and Q), total size <= {small}",
        lambda: _failures(parallel_map(_axioms_for, [(T, small) for T in all_small], jobs)),
    )

    def antipodes():
        from .camb_hopf import CAMB

        return _failures((T, CAMB.convolution_identity_holds(T)) for m in range(min(n, 4) + 1) for T in _trees_up_to(4)[m])
    rec.run(f"antipode satisfies S * id = unit . counit, size <= {min(n, 4)}", antipodes)
    return rec.checks


# ---------------------------------------------------------------------------
# criterion 5: worked-example goldens (Cambrian layer)

GOLDEN_EXPANSION = (
    "2137546", "2173546", "2175346", "2713546", "2715346",
    "2751346", "7213546", "7215346", "7251346", "7521346",
)
GOLDEN_PRODUCT_GROUPS = (
    ("12435", "12453", "14235", "14253", "14523", "41235", "41253", "41523", "45123"),
    ("14325", "14352", "14532", "41325", "41352", "41532", "45132"),
    ("43125", "43152", "43512", "45312"),
)
GOLDEN_Q_PRODUCT = (
    "12435", "13425", "14325", "15324", "23415",
    "24315", "25314", "34215", "35214", "45213",
)


def _word(t) -> str:
    return "".join(map(str, t.values))


def suite_goldens(n: int, seed: int, jobs: int) -> list[Check]:
    from .camb_hopf import (
        FQSYM_DUAL,
        camb_P,
        camb_P_coproduct,
        camb_P_product,
        camb_Q_coproduct,
        camb_Q_product,
        duality_psi,
        lower_sets,
    )
    from .camb_tree import EMPTY_TREE, p_symbol
    from .linear import LinearCombination
    from .perm_core import parse_permutation

    rec = _Recorder()
    A = p_symbol(parse_permutation("1- 2+"))
    B = p_symbol(parse_permutation("2+ 1- 3+"))

    def expansion():
        T = p_symbol(parse_permutation("2- 7+ 5- 1- 3+ 4- 6+"))
        terms = camb_P(T)
        words = tuple(sorted(_word(t) for t in terms.keys()))
        signs_ok = all(t.vsign == "--+--++" for t in terms.keys())
        return words == GOLDEN_EXPANSION and signs_ok, f"{len(words)} F-terms"

    def p_product():
        prod = camb_P_product(A, B)
        groups = sorted(tuple(sorted(_word(t) for t in camb_P(U).keys())) for U in prod.keys())
        ok = groups == sorted(GOLDEN_PRODUCT_GROUPS) and all(U.signature == "-+-++" for U in prod.keys())
        return ok, f"{len(prod)} P-terms of sizes {sorted(map(len, groups), reverse=True)}"

    def p_coproduct():
        cop = camb_P_coproduct(B)
        cuts = lower_sets(B)
        single_plus = p_symbol(parse_permutation("1+"))
        expected = {
            (EMPTY_TREE, B),
            (single_plus, p_symbol(parse_permutation("1- 2+"))),
            (single_plus, p_symbol(parse_permutation("2+ 1-"))),
            (p_symbol(parse_permutation("1+ 2+")), p_symbol(parse_permutation("1-"))),
            (p_symbol(parse_permutation("2+ 1-")), single_plus),
            (B, EMPTY_TREE),
        }
        ok = len(cuts) == 5 and set(cop.keys()) == expected and all(c == 1 for _, c in cop.terms.items())
        return ok, f"{len(cuts)} cuts, {len(cop)} tensor terms"

    def q_product():
        q = camb_Q_product(A, B)
        g = FQSYM_DUAL.mul(
            LinearCombination.basis(parse_permutation("1- 2+")),
            LinearCombination.basis(parse_permutation("2+ 1- 3+")),
        )
        words = tuple(sorted(_word(t) for t in g.keys()))
        signs_ok = all(t.psign == "-++-+" for t in g.keys())
        ok = words == GOLDEN_Q_PRODUCT and signs_ok and g.map_keys(p_symbol) == q and len(q) == 10
        return ok, f"{len(q)} Q-terms"

    def q_coproduct():
        qc = camb_Q_coproduct(B)
        expected = {
            (EMPTY_TREE, B),
            (p_symbol(parse_permutation("1-")), p_symbol(parse_permutation("1+ 2+"))),
            (p_symbol(parse_permutation("2+ 1-")), p_symbol(parse_permutation("1+"))),
            (B, EMPTY_TREE),
        }
        return set(qc.keys()) == expected and len(qc) == 4, f"{len(qc)} gap terms"

    def collision():
        left = duality_psi(p_symbol(parse_permutation("2- 1+ 3+")))
        right = duality_psi(p_symbol(parse_permutation("3- 1+ 2+")))
        return left == right == LinearCombination.basis(B), "both images equal Q of the tree of 2+ 1- 3+"

    rec.run("10-term P-expansion of the seven-vertex example", expansion)
    rec.run("P-product of the two-vertex and three-vertex examples (9 + 7 + 4)", p_product)
    rec.run("P-coproduct: 5 cuts, 6 tensor terms", p_coproduct)
    rec.run("Q-product: 10 terms, one per value shuffle", q_product)
    rec.run("Q-coproduct: 4 gap terms", q_coproduct)
    rec.run("duality collision of the two three-vertex trees", collision)
    return rec.checks


# ---------------------------------------------------------------------------
# criterion 6: multiplicative bases


def _multiplicative_pair(args) -> tuple[str, bool]:
    from .camb_hopf import CAMB, E_basis, H_basis, graft_over, graft_under

    T, right_sizes = args
    trees = _trees_up_to(max(right_sizes, default=0))
    for b in right_sizes:
        for U in trees[b]:
            if CAMB.mul(E_basis(T), E_basis(U)) != E_basis(graft_over(T, U)):
                return f"E {T}*{U}", False
            if CAMB.mul(H_basis(T), H_basis(U)) != H_basis(graft_under(T, U)):
                return f"H {T}*{U}", False
    return str(T), True


def _indecomposable_count(sig: str) -> tuple[str, bool]:
    from .camb_tree import E_indecomposables, catalan

    return sig, len(E_indecomposables(sig)) == catalan(len(sig) - 1)


def _principal_ideal(sig: str) -> tuple[str, bool]:
    from .camb_tree import E_indecomposable_generator, E_indecomposables, cambrian_lattice

    L = cambrian_lattice(sig)
    gen = E_indecomposable_generator(sig)
    return sig, set(E_indecomposables(sig)) == {U for U in L.elements if L.leq(gen, U)}


def suite_multiplicative(n: int, seed: int, jobs: int) -> list[Check]:
    from .camb_hopf import freeness_series_holds

    rec = _Recorder()
    limit = min(n, 5)
    trees = _trees_up_to(max(limit - 1, 0))
    work = [(T, tuple(range(1, limit - a + 1))) for a in range(1, limit) for T in trees[a]]
    rec.run(
        f"E and H products are single terms given by the graftings, total size <= {limit}",
        lambda: _failures(parallel_map(_multiplicative_pair, work, jobs)),
    )
    for m in range(1, n + 1):
        rec.run(
            f"size {m}: |E-indecomposables| = C_{m - 1} for every signature",
            lambda m=m: _failures(parallel_map(_indecomposable_count, _sigs(m), jobs)),
        )
    top = min(n, 6)
    rec.run(
        f"indecomposables are the upper set of the constructive generator, n <= {top}",
        lambda: _failures(parallel_map(_principal_ideal, [s for m in range(1, top + 1) for s in _sigs(m)], jobs)),
    )
    rec.run("generating series identity to t^8", lambda: freeness_series_holds(8))
    return rec.checks


# ---------------------------------------------------------------------------
# criterion 7: Baxter-Cambrian numbers

# Table 1 rows (one representative per symmetry class, sorted by value).
TABLE1 = {
    4: {"++++": 22, "++-+": 20},
    5: {"+++++": 92, "+++-+": 78, "++-++": 70},
    6: {"++++++": 422, "++++-+": 342, "+++--+": 316, "++--++": 284, "+++-++": 282, "++-+-+": 252},
    7: {
        "+++++++": 2074, "+++++-+": 1628, "++++--+": 1428, "++---++": 1298, "++++-++": 1270,
        "+++--++": 1172, "+++-+++": 1162, "++-++-+": 1044, "+++-+-+": 1036, "++-+-++": 924,
    },
}
# Table 2: value -> multiplicity m, meaning 8m signatures share that value.
TABLE2 = {
    4: {22: 1, 20: 1},
    5: {92: 1, 78: 2, 70: 1},
    6: {422: 1, 342: 2, 316: 1, 284: 1, 282: 2, 252: 1},
    7: {2074: 1, 1628: 2, 1428: 2, 1298: 1, 1270: 2, 1172: 2, 1162: 1, 1044: 2, 1036: 2, 924: 1},
}
CONSTANT_BC = (1, 2, 6, 22, 92, 422, 2074)
INCOMPARABLE_PAIR = (("+++-++---", 18376), ("++-+++-++", 18544))


def _interior_switches(sig: str) -> frozenset[int]:
    from .baxter import switch_set

    return switch_set(sig) & frozenset(range(2, len(sig) - 1))


def _smaller_count_smaller_value(n: int) -> list[tuple[str, str]]:
    """Pairs with fewer interior switches yet a strictly smaller BC."""
    from .baxter import bc_number

    sigs = [s for s in _sigs(n) if s[0] == "+"]
    value = {s: bc_number(s) for s in sigs}
    size = {s: len(_interior_switches(s)) for s in sigs}
    return [(a, b) for a in sigs for b in sigs if size[a] < size[b] and value[a] < value[b]]


def _bc_brute(sig: str) -> tuple[str, bool]:
    from .baxter import bc_matrix, bc_matrix_brute_force, bc_number, twin_pair_count_brute_force

    ok = bc_number(sig) == twin_pair_count_brute_force(sig)
    if len(sig) <= 5:
        ok = ok and bc_matrix(sig).entries == bc_matrix_brute_force(sig).entries
    return sig, ok


def _tables_checks(rec: _Recorder, n: int) -> None:
    from .baxter import bc_number, bc_value_multiset

    for m in range(4, min(n, 7) + 1):
        rec.run(
            f"table of representatives, size {m}",
            lambda m=m: _failures((s, bc_number(s) == v) for s, v in TABLE1[m].items()),
        )
        rec.run(
            f"multiset of values, size {m}",
            lambda m=m: bc_value_multiset(m) == {v: 8 * k for v, k in TABLE2[m].items()},
        )


def suite_baxter(n: int, seed: int, jobs: int) -> list[Check]:
    from .baxter import alternating_signature, baxter_number, bc_monotonicity_check, bc_number, bc_symmetries_hold

    rec = _Recorder()
    top = min(n, 6)
    rec.run(
        f"recursion totals = brute-force twin-pair counts, n <= {top}",
        lambda: _failures(parallel_map(_bc_brute, [s for m in range(1, top + 1) for s in _sigs(m)], jobs)),
    )
    rec.run(
        "constant signature gives 1, 2, 6, 22, 92, 422, 2074 (Baxter numbers)",
        lambda: tuple(bc_number("+" * m) for m in range(1, 8)) == CONSTANT_BC
        and all(bc_number("+" * m) == baxter_number(m) for m in range(1, 8)),
    )
    rec.run(
        "alternating signature gives binomial(2n-2, n-1), n <= 10",
        lambda: all(bc_number(alternating_signature(m)) == comb(2 * m - 2, m - 1) for m in range(1, 11)),
    )
    _tables_checks(rec, n)
    rec.run(
        f"symmetries (flip an end sign, negate, reverse), n <= {n}",
        lambda: all(bc_symmetries_hold(m) for m in range(1, n + 1)),
    )
    reports = {m: bc_monotonicity_check(m) for m in range(3, n + 1)}
    rec.run(
        f"strict decrease along nested interior switch sets, n <= {n}",
        lambda: all(r.interior_holds for r in reports.values()),
    )
    rec.run(
        f"no reversal along nested full switch sets, n <= {n}",
        lambda: (all(not r.full_weak_violations for r in reports.values()),
                 "; ".join(r.summary() for r in reports.values())),
    )
    rec.run(
        "strict decrease along nested full switch sets (literal reading)",
        lambda: (all(not r.full_strict_failures for r in reports.values()),
                 f"{sum(len(r.full_strict_failures) for r in reports.values())} ties from end-sign flips"),
        kind=CONFLICT,
    )

    def incomparable_pair():
        (a, va), (b, vb) = INCOMPARABLE_PAIR
        from .baxter import switch_set

        nested = switch_set(a) <= switch_set(b) or switch_set(b) <= switch_set(a)
        ok = bc_number(a) == va and bc_number(b) == vb and not nested
        ok = ok and len(_interior_switches(a)) < len(_interior_switches(b))
        return ok, f"BC({a}) = {bc_number(a)} < {bc_number(b)} = BC({b})"

    rec.run("incomparable pair at size 9 via the recursion", incomparable_pair)
    rec.run(
        "no such pair below size 9, and the size-9 pair is among them",
        lambda: all(not _smaller_count_smaller_value(m) for m in range(2, 9))
        and (INCOMPARABLE_PAIR[0][0], INCOMPARABLE_PAIR[1][0]) in _smaller_count_smaller_value(9),
    )
    return rec.checks


def suite_baxter_tables(n: int, seed: int, jobs: int) -> list[Check]:
    rec = _Recorder()
    _tables_checks(rec, n)
    return rec.checks


# ---------------------------------------------------------------------------
# criterion 8: tuples

TUPLE_LATTICE_SIGNATURES = ("-+--", "+---")
TUPLE_LATTICE_SIZE = 18


def _two_layer_tuples(n: int) -> list:
    from .baxter import cambrian_tuples

    return [u for a in _sigs(n) for b in _sigs(n) for u in cambrian_tuples([a, b])]


def _tuple_products_for(args) -> tuple[str, bool]:
    from .baxter import tuple_P_product, tuple_P_product_via_F, tuple_Q_product, tuple_Q_product_via_G

    t, right_sizes = args
    for b in right_sizes:
        for u in _two_layer_tuples(b):
            if tuple_P_product(t, u) != tuple_P_product_via_F(t, u) or tuple_Q_product(t, u) != tuple_Q_product_via_G(t, u):
                return f"{t}*{u}", False
    return str(t), True


def _tuple_coproducts_for(t) -> tuple[str, bool]:
    from .baxter import tuple_P_coproduct, tuple_P_coproduct_via_F, tuple_Q_coproduct, tuple_Q_coproduct_via_G

    return str(t), tuple_P_coproduct(t) == tuple_P_coproduct_via_F(t) and tuple_Q_coproduct(t) == tuple_Q_coproduct_via_G(t)


def _twin_rules_for(args) -> tuple[str, bool]:
    from . import baxter as bx

    p, right_sizes = args
    if bx.baxter_hopf_coproduct(p) != bx.baxter_hopf_coproduct_via_F(p):
        return f"coproduct {p}", False
    if bx.baxter_Q_coproduct(p) != bx.baxter_Q_coproduct_via_G(p):
        return f"Q coproduct {p}", False
    for b in right_sizes:
        for q in (q for s in _sigs(b) for q in bx.twin_pairs(s)):
            if bx.baxter_hopf_product(p, q) != bx.baxter_hopf_product_via_F(p, q):
                return f"{p}*{q}", False
            if bx.baxter_Q_product(p, q) != bx.baxter_Q_product_via_G(p, q):
                return f"Q {p}*{q}", False
    return str(p), True


def suite_tuples(n: int, seed: int, jobs: int) -> list[Check]:
    from . import baxter as bx
    from .camb_hopf import camb_P_product
    from .camb_tree import cambrian_lattice, cambrian_trees, p_symbol
    from .perm_core import LSignedPermutation, signed_permutations

    rec = _Recorder()
    limit = min(n, 4)

    def one_layer():
        for m in range(1, limit + 1):
            for s in _sigs(m):
                L, C = bx.tuple_lattice([s]), cambrian_lattice(s)
                if [u.trees[0] for u in L.elements] != C.elements:
                    return False, f"elements differ for {s}"
                if not all(L.leq(bx.CambrianTuple((a,)), bx.CambrianTuple((b,))) == C.leq(a, b)
                           for a in C.elements for b in C.elements):
                    return False, f"order differs for {s}"
                for t in signed_permutations(s):
                    if bx.tuple_p_symbol(LSignedPermutation(t.values, (t.vsign,))).trees[0] != p_symbol(t):
                        return False, f"symbol differs at {t}"
        for a in range(1, limit):
            for b in range(1, limit - a + 1):
                for T in (T for s in _sigs(a) for T in cambrian_trees(s)):
                    for U in (U for s in _sigs(b) for U in cambrian_trees(s)):
                        lifted = bx.tuple_P_product(bx.CambrianTuple((T,)), bx.CambrianTuple((U,)))
                        if lifted.map_keys(lambda u: u.trees[0]) != camb_P_product(T, U):
                            return False, f"product differs at {T}*{U}"
        return True, f"lattices, symbols and products agree for n <= {limit}"

    def tuple_lattice_check():
        L = bx.tuple_lattice(list(TUPLE_LATTICE_SIGNATURES))
        brute = bx.cambrian_tuples_brute_force(list(TUPLE_LATTICE_SIGNATURES))
        ok = len(L) == TUPLE_LATTICE_SIZE and sorted(L.elements) == sorted(brute) and L.is_lattice()
        return ok, f"{len(L)} elements, lattice = {L.is_lattice()}"

    rec.run("one layer reduces to Cambrian trees", one_layer)
    rec.run("lattice of tuples for (-+--, +---)", tuple_lattice_check)
    tuples = {m: _two_layer_tuples(m) for m in range(1, limit + 1)}
    rec.run(
        f"two-layer P and Q products = oracles, total size <= {limit}",
        lambda: _failures(parallel_map(
            _tuple_products_for,
            [(t, tuple(range(1, limit - a + 1))) for a in range(1, limit) for t in tuples[a]], jobs)),
    )
    rec.run(
        f"two-layer P and Q coproducts = oracles, size <= {limit}",
        lambda: _failures(parallel_map(_tuple_coproducts_for, [t for m in tuples for t in tuples[m]], jobs)),
    )
    rec.run(
        f"twin-pair Hopf rules = permutation oracles, total size <= {limit}",
        lambda: _failures(parallel_map(
            _twin_rules_for,
            [(p, tuple(range(1, limit - a + 1))) for a in range(1, limit + 1) for s in _sigs(a) for p in bx.twin_pairs(s)],
            jobs)),
    )
    return rec.checks


# ---------------------------------------------------------------------------
# criterion 9: Schröder layer

SCHRODER_TOTALS = (1, 3, 11, 45, 197)
SCHRODER_EXAMPLE = "125-7+/3+4-/6+"
SCHRODER_EXAMPLE_TREE = "--+--++{1-2- 3+4- 5-7+ 6+}[1-2->3+4- 3+4->6+ 5-7+>3+4-]"
SCHRODER_EXAMPLE_FIBER = ("125-7+/3+4-/6+", "12-/5-7+/3+4-/6+", "5-7+/12-/3+4-/6+")
SCHRODER_PRODUCT_GROUPS = (
    ("1-2+/3+/5-/4-6+", "1-2+/3+5-/4-6+", "1-2+/5-/3+/4-6+", "1-2+5-/3+/4-6+", "5-/1-2+/3+/4-6+"),
    ("1-23+/5-/4-6+", "1-23+5-/4-6+", "5-/1-23+/4-6+"),
    ("3+/1-2+/5-/4-6+", "3+/1-2+5-/4-6+", "3+/5-/1-2+/4-6+", "3+/5-/1-2+4-6+", "3+/5-/4-6+/1-2+",
     "3+5-/1-2+/4-6+", "3+5-/1-2+4-6+", "3+5-/4-6+/1-2+", "5-/3+/1-2+/4-6+", "5-/3+/1-2+4-6+",
     "5-/3+/4-6+/1-2+"),
)
SCHRODER_Q_PRODUCT = (
    "1-2+/3+5-/4-6+", "1-3+/2+5-/4-6+", "1-4+/2+5-/3-6+", "1-5+/2+4-/3-6+", "1-6+/2+4-/3-5+",
    "2-3+/1+5-/4-6+", "2-4+/1+5-/3-6+", "2-5+/1+4-/3-6+", "2-6+/1+4-/3-5+",
    "3-4+/1+5-/2-6+", "3-5+/1+4-/2-6+", "3-6+/1+4-/2-5+",
    "4-5+/1+3-/2-6+", "4-6+/1+3-/2-5+", "5-6+/1+3-/2-4+",
)
NON_MONOTONE_SIGNATURE = "+--"
NON_MONOTONE_PUBLISHED = 2
NON_MONOTONE_DERIVED = 1


def _schroder_counts(sig: str) -> tuple[str, bool]:
    from .schroder import count_by_nodes, dissection_counts, schroder_trees, schroder_trees_by_contraction

    n = len(sig)
    trees = schroder_trees(sig)
    for T in trees:
        T.validate()
    ok = len(trees) == SCHRODER_TOTALS[n - 1]
    ok = ok and [count_by_nodes(sig, m) for m in range(1, n + 1)] == dissection_counts(n)
    if n <= 4:
        ok = ok and set(trees) == set(schroder_trees_by_contraction(sig))
    return sig, ok


def _schroder_fibers(sig: str) -> tuple[str, bool]:
    from .perm_core import signed_ordered_partitions
    from .schroder import (
        canopy_matches_recoils,
        in_fiber,
        p_star_extends_p_symbol,
        p_star_symbol,
        schroder_congruence_class,
        schroder_linear_extensions,
        schroder_trees,
    )

    parts = signed_ordered_partitions(sig)
    symbol = {lam: p_star_symbol(lam) for lam in parts}
    for T in schroder_trees(sig):
        ext = schroder_linear_extensions(T)
        if ext != sorted(l for l in parts if symbol[l] == T) or ext != sorted(l for l in parts if in_fiber(l, T)):
            return sig, False
        if schroder_congruence_class(ext[0]) != set(ext):
            return sig, False
    return sig, canopy_matches_recoils(sig) and p_star_extends_p_symbol(sig)


def _schroder_lattice(sig: str) -> tuple[str, bool]:
    from .perm_core import coinv
    from .schroder import (
        class_extreme_tables,
        class_extremes,
        class_is_interval,
        contraction_poset,
        quotient_order,
        schroder_lattice,
    )

    L = schroder_lattice(sig)
    if not (L.is_lattice() and L.same_order_as(quotient_order(sig))):
        return sig, False
    for T in L.elements:
        lo, hi = class_extremes(T)
        low_table, high_table = class_extreme_tables(T)
        if not class_is_interval(T) or coinv(lo.partition) != low_table or coinv(hi.partition) != high_table:
            return sig, False
    C = contraction_poset(sig)
    tops = [T for T in C.elements if T.node_count == 1]
    return sig, len(tops) == 1 and all(C.leq(T, tops[0]) for T in C.elements)


def _schroder_rules_for(args) -> tuple[str, bool]:
    from .schroder import (
        schroder_P_coproduct,
        schroder_P_coproduct_via_F,
        schroder_P_product,
        schroder_P_product_via_F,
        schroder_Q_coproduct,
        schroder_Q_coproduct_via_G,
        schroder_Q_product,
        schroder_Q_product_via_G,
        schroder_trees,
    )

    T, right_sizes = args
    if schroder_P_coproduct(T) != schroder_P_coproduct_via_F(T) or schroder_Q_coproduct(T) != schroder_Q_coproduct_via_G(T):
        return f"coproduct {T}", False
    for b in right_sizes:
        for U in (U for s in _sigs(b) for U in schroder_trees(s)):
            if schroder_P_product(T, U) != schroder_P_product_via_F(T, U):
                return f"P {T}*{U}", False
            if schroder_Q_product(T, U) != schroder_Q_product_via_G(T, U):
                return f"Q {T}*{U}", False
    return str(T), True


def suite_schroder(n: int, seed: int, jobs: int) -> list[Check]:
    from . import schroder as sc
    from .linear import LinearCombination
    from .perm_core import format_partition, parse_partition, partition_convolution

    rec = _Recorder()
    small = min(n, 4)
    for m in range(1, n + 1):
        rec.run(
            f"size {m}: {SCHRODER_TOTALS[m - 1]} trees per signature, node counts = dissection counts",
            lambda m=m: _failures(parallel_map(_schroder_counts, _sigs(m), jobs)),
        )
    rec.run(
        f"dissection counts = closed form over diagonals, n <= {n}",
        lambda: all(sc.dissection_counts(m) == [sc.dissection_count_formula(m, d) for d in range(m)]
                    for m in range(1, n + 1)),
    )
    rec.run(
        "published node-count expression at (n, k) = (3, 1)",
        lambda: (sc.alternate_count_expression(3, 1).denominator == 1,
                 f"evaluates to {sc.alternate_count_expression(3, 1)}; brute force and dissections are used instead"),
        kind=CONFLICT,
    )
    rec.run(
        f"fibers, insertion, congruence classes, canopy = recoils, n <= {small}",
        lambda: _failures(parallel_map(_schroder_fibers, [s for m in range(1, small + 1) for s in _sigs(m)], jobs)),
    )

    def weak_order():
        return all(
            sc.partition_weak_order(m).is_lattice()
            and sc.partition_weak_order(m).same_order_as(sc.partition_weak_order_brute_force(m))
            for m in range(1, small + 1)
        )

    rec.run(f"weak order on ordered partitions is a lattice, n <= {small}", weak_order)
    rec.run(
        f"Schröder lattice = quotient, classes are intervals, n <= {small}",
        lambda: _failures(parallel_map(_schroder_lattice, [s for m in range(1, small + 1) for s in _sigs(m)], jobs)),
    )
    rec.run(
        f"non-monotone contractions for {NON_MONOTONE_SIGNATURE}",
        lambda: (len(sc.non_monotone_contractions(NON_MONOTONE_SIGNATURE)) == NON_MONOTONE_DERIVED,
                 f"found {NON_MONOTONE_DERIVED} by exhaustive search"),
    )
    rec.run(
        f"published non-monotone count {NON_MONOTONE_PUBLISHED} for {NON_MONOTONE_SIGNATURE}",
        lambda: (len(sc.non_monotone_contractions(NON_MONOTONE_SIGNATURE)) == NON_MONOTONE_PUBLISHED,
                 f"exhaustive search finds {len(sc.non_monotone_contractions(NON_MONOTONE_SIGNATURE))}"),
        kind=CONFLICT,
    )
    trees = {0: [sc.EMPTY_SCHRODER]}
    for m in range(1, small + 1):
        trees[m] = [T for s in _sigs(m) for T in sc.schroder_trees(s)]
    rec.run(
        f"P and Q products and coproducts = ordered-partition oracles, total size <= {small}",
        lambda: _failures(parallel_map(
            _schroder_rules_for,
            [(T, tuple(range(1, small - a + 1))) for a in range(1, small + 1) for T in trees[a]], jobs)),
    )

    def example_tree():
        lam = parse_partition(SCHRODER_EXAMPLE)
        T = sc.p_star_symbol(lam)
        fiber = tuple(format_partition(l) for l in sc.schroder_linear_extensions(T))
        congruences = (
            sc.schroder_congruent(lam, parse_partition("12-/5-7+/3+4-/6+")),
            sc.schroder_congruent(lam, parse_partition("5-7+/12-/3+4-/6+")),
            sc.schroder_congruent(lam, parse_partition("5-7+/3+4-/12-/6+")),
        )
        ok = str(T) == SCHRODER_EXAMPLE_TREE and fiber == SCHRODER_EXAMPLE_FIBER and congruences == (True, True, False)
        return ok, f"{T}"

    def canopy_example():
        T = sc.p_star_symbol(parse_partition(SCHRODER_EXAMPLE))
        return sc.schroder_canopy(T) == "0+0-+-", sc.schroder_canopy(T)

    A = sc.p_star_symbol(parse_partition("1-2+"))
    B = sc.p_star_symbol(parse_partition("1+/3-/2-4+"))

    def product_example():
        prod = sc.schroder_P_product(A, B)
        groups = sorted(tuple(sorted(format_partition(l) for l in sc.schroder_linear_extensions(T))) for T in prod.keys())
        return groups == sorted(SCHRODER_PRODUCT_GROUPS), f"{len(prod)} terms"

    def coproduct_example():
        cuts = sc.schroder_P_coproduct_by_cut(B)
        fourth = [k for k in cuts[3].keys()]
        single = sc.p_star_symbol(parse_partition("1-2+"))
        ok = len(cuts) == 5 and sum(len(c) for c in cuts) == 7
        ok = ok and len(fourth) == 3 and all(right == single for _, right in fourth)
        return ok, f"{len(cuts)} cuts, {sum(len(c) for c in cuts)} tensor terms"

    def q_product_example():
        q = sc.schroder_Q_product(A, B)
        words = tuple(sorted(format_partition(l) for l in partition_convolution(
            parse_partition("1-2+"), parse_partition("1+3-/2-4+"))))
        g = LinearCombination.sum_of(partition_convolution(parse_partition("1-2+"), parse_partition("1+3-/2-4+")))
        return words == SCHRODER_Q_PRODUCT and g.map_keys(sc.p_star_symbol) == q and len(q) == 15, f"{len(q)} terms"

    def q_coproduct_example():
        qc = sc.schroder_Q_coproduct(B)
        pieces = {("", "1+/3-/2-4+"), ("1+", "2-/1-3+"), ("1+/2-", "1-/2+"), ("1+3-/2-", "1+"), ("1+/3-/2-4+", "")}
        expected = {
            (sc.p_star_symbol(parse_partition(a)) if a else sc.EMPTY_SCHRODER,
             sc.p_star_symbol(parse_partition(b)) if b else sc.EMPTY_SCHRODER)
            for a, b in pieces
        }
        return set(qc.keys()) == expected and len(qc) == 5, f"{len(qc)} terms"

    rec.run("insertion example, its fiber and congruences", example_tree)
    rec.run("canopy example 0+0-+-", canopy_example)
    rec.run("P-product example (5 + 11 + 3 ordered partitions)", product_example)
    rec.run("P-coproduct example: 5 cuts, 7 tensor terms", coproduct_example)
    rec.run("Q-product example: 15 terms", q_product_example)
    rec.run("Q-coproduct example: 5 terms", q_coproduct_example)
    return rec.checks


# ---------------------------------------------------------------------------
# criterion 10: canopy probe


def _probe(sig: str):
    from .baxter import canopy_probe

    return canopy_probe(sig)


def suite_probe(n: int, seed: int, jobs: int) -> list[Check]:
    rec = _Recorder()
    for m in range(1, n + 1):
        rec.run(
            f"size {m}: constant signatures, twin iff opposite canopies",
            lambda m=m: all(_probe(s).agrees for s in ("+" * m, "-" * m)),
        )

    def general():
        probes = parallel_map(_probe, [s for m in range(1, n + 1) for s in _sigs(m)], jobs)
        disagree = [p.signature for p in probes if not p.agrees]
        return not disagree, f"{len(probes)} signatures probed, {len(disagree)} disagreements"

    rec.run(f"general signatures, n <= {n} (conjecture, reported only)", general, kind=INFO)
    return rec.checks


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Suite:
    name: str
    criterion: int
    title: str
    run: Callable[[int, int, int], list[Check]]
    default_n: int
    max_n: int
    budget_seconds: float | None = None


SUITES: dict[str, Suite] = {
    s.name: s
    for s in (
        Suite("counts", 1, "Cambrian tree counts", suite_counts, 8, 8, 60),
        Suite("fibers", 2, "fibers, intervals, congruence", suite_fibers, 6, 6, 120),
        Suite("canopy", 3, "recoils = canopy o P", suite_canopy, 7, 7, 60),
        Suite("hopf", 4, "Hopf rules against permutation oracles", suite_hopf, 6, 6, 600),
        Suite("goldens", 5, "worked examples", suite_goldens, 0, 0),
        Suite("multiplicative", 6, "multiplicative bases and freeness", suite_multiplicative, 8, 8),
        Suite("baxter", 7, "Baxter-Cambrian numbers", suite_baxter, 7, 7, 300),
        Suite("tuples", 8, "Cambrian tuples and twin pairs", suite_tuples, 4, 4),
        Suite("schroder", 9, "Schröder-Cambrian trees", suite_schroder, 5, 5, 300),
        Suite("probe", 10, "twin versus opposite canopy", suite_probe, 6, 6),
        Suite("baxter-tables", 7, "tabulated Baxter-Cambrian values", suite_baxter_tables, 7, 7),
    )
}
CRITERION_SUITES = ("counts", "fibers", "canopy", "hopf", "goldens", "multiplicative",
                    "baxter", "tuples", "schroder", "probe")


def run_suite(name: str, n: int | None = None, seed: int = 0, jobs: int = 1) -> SuiteReport:
    suite = SUITES[name]
    size = suite.default_n if n is None else n
    if not 0 <= size <= suite.max_n:
        raise ValueError(f"suite {name!r} accepts 0 <= n <= {suite.max_n}, got {size}")
    start = time.perf_counter()
    checks = suite.run(size, seed, jobs)
    return SuiteReport(suite.name, suite.criterion, suite.title, checks, time.perf_counter() - start, suite.budget_seconds)


def run_all(seed: int = 0, jobs: int = 1) -> list[SuiteReport]:
    return [run_suite(name, seed=seed, jobs=jobs) for name in CRITERION_SUITES]
