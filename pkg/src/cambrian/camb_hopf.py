"""Signed FQSym and the Cambrian Hopf algebra with its dual.

Basis keys are plain values: ``SignedPermutation`` for F and G, ``CambrianTree``
for P, Q, E, H.  Which basis a combination lives in is a matter of which
function produced it.  Every combinatorial rule here has a permutation-level
counterpart (``*_via_*``) that the tests compare it against.
"""

from __future__ import annotations

from itertools import combinations

from .camb_tree import (
    EMPTY_TREE,
    LEAF,
    CambrianTree,
    cambrian_lattice,
    canopy,
    catalan,
    linear_extensions,
    p_symbol,
)
from .linear import GradedBialgebra, LinearCombination, TensorCombination, bilinear
from .perm_core import SignedPermutation, convolution, restrict_positions, restrict_values, shifted_shuffle

EMPTY_PERM = SignedPermutation((), "")


# ---------------------------------------------------------------------------
# FQSym± (F basis) and its dual (G basis)


def _f_product_basis(a: SignedPermutation, b: SignedPermutation) -> LinearCombination:
    return LinearCombination.sum_of(shifted_shuffle(a, b))


def _f_coproduct_basis(s: SignedPermutation) -> TensorCombination:
    return TensorCombination(
        ((restrict_positions(s, 0, k), restrict_positions(s, k, s.n)), 1) for k in range(s.n + 1)
    )


def _g_product_basis(a: SignedPermutation, b: SignedPermutation) -> LinearCombination:
    return LinearCombination.sum_of(convolution(a, b))


def _g_coproduct_basis(s: SignedPermutation) -> TensorCombination:
    return TensorCombination(
        ((restrict_values(s, range(1, k + 1)), restrict_values(s, range(k + 1, s.n + 1))), 1)
        for k in range(s.n + 1)
    )


FQSYM = GradedBialgebra(EMPTY_PERM, _f_product_basis, _f_coproduct_basis)
FQSYM_DUAL = GradedBialgebra(EMPTY_PERM, _g_product_basis, _g_coproduct_basis)


def fqsym_product(x: LinearCombination, y: LinearCombination) -> LinearCombination:
    return FQSYM.mul(x, y)


def fqsym_coproduct(x: LinearCombination) -> TensorCombination:
    return FQSYM.delta(x)


def g_product(x: LinearCombination, y: LinearCombination) -> LinearCombination:
    return FQSYM_DUAL.mul(x, y)


def g_coproduct(x: LinearCombination) -> TensorCombination:
    return FQSYM_DUAL.delta(x)


# ---------------------------------------------------------------------------
# P basis: expansion and regrouping


def camb_P(T: CambrianTree) -> LinearCombination:
    return LinearCombination.sum_of(linear_extensions(T))


def f_to_p(x: LinearCombination) -> LinearCombination:
    """Rewrite an F-combination as a P-combination; fails if x is not in the subalgebra."""
    out: dict = {}
    for t, c in x.terms.items():
        T = p_symbol(t)
        if out.setdefault(T, c) != c:
            raise ValueError(f"coefficients differ inside the class of {T}")
    result = LinearCombination(out)
    if result.expand(camb_P) != x:
        raise ValueError("combination is not a sum of full Cambrian classes")
    return result


def f_tensor_to_p(x: TensorCombination) -> TensorCombination:
    out: dict = {}
    for (a, b), c in x.terms.items():
        key = (p_symbol(a), p_symbol(b))
        if out.setdefault(key, c) != c:
            raise ValueError("tensor coefficients differ inside a pair of classes")
    result = TensorCombination(out)
    if result.map_sides(camb_P, camb_P) != x:
        raise ValueError("tensor is not a sum of full pairs of classes")
    return result


def g_to_q(x: LinearCombination) -> LinearCombination:
    """Quotient map G_t -> Q_{p(t)}."""
    return x.map_keys(p_symbol)


def g_tensor_to_q(x: TensorCombination) -> TensorCombination:
    return TensorCombination(((p_symbol(a), p_symbol(b)), c) for (a, b), c in x.terms.items())


def representative(T: CambrianTree) -> SignedPermutation:
    return linear_extensions(T)[0]


# ---------------------------------------------------------------------------
# grafting


def _walk(T: CambrianTree, start: int, first_slot, step_sign: str, step) -> int:
    """Follow slots from ``start`` until a leaf is reached; return the leaf holder."""
    v, w = start, first_slot(start)
    while w != LEAF:
        if T.sign(w) != step_sign:
            raise AssertionError("leaf walk left its expected sign class")
        v, w = w, step(w)
    return v


def _extreme(T: CambrianTree, sign: str, pick):
    verts = [v for v in range(1, T.n + 1) if T.sign(v) == sign]
    return pick(verts) if verts else None


def _sink(T: CambrianTree) -> int:
    return next(v for v in range(1, T.n + 1) if not T.parents[v])


def _source(T: CambrianTree) -> int:
    return next(v for v in range(1, T.n + 1) if not T.children[v])


def rightmost_up_leaf(T: CambrianTree) -> int:
    p = _extreme(T, "+", max)
    if p is None:
        return _sink(T)
    return _walk(T, p, lambda v: T.up_slots(v)[1], "-", lambda v: T.up_slots(v)[0])


def leftmost_up_leaf(T: CambrianTree) -> int:
    p = _extreme(T, "+", min)
    if p is None:
        return _sink(T)
    return _walk(T, p, lambda v: T.up_slots(v)[0], "-", lambda v: T.up_slots(v)[0])


def leftmost_down_leaf(T: CambrianTree) -> int:
    q = _extreme(T, "-", min)
    if q is None:
        return _source(T)
    return _walk(T, q, lambda v: T.down_slots(v)[0], "+", lambda v: T.down_slots(v)[0])


def rightmost_down_leaf(T: CambrianTree) -> int:
    q = _extreme(T, "-", max)
    if q is None:
        return _source(T)
    return _walk(T, q, lambda v: T.down_slots(v)[1], "+", lambda v: T.down_slots(v)[0])


def graft_over(T: CambrianTree, U: CambrianTree) -> CambrianTree:
    """T below, shifted U above: T's rightmost up-leaf is glued to U's leftmost down-leaf."""
    if T.n == 0:
        return U
    if U.n == 0:
        return T
    u, w = rightmost_up_leaf(T), leftmost_down_leaf(U) + T.n
    return CambrianTree(T.signature + U.signature, T.edges + U.shift(T.n) + ((u, w),))


def graft_under(T: CambrianTree, U: CambrianTree) -> CambrianTree:
    """Shifted U below, T above: U's leftmost up-leaf is glued to T's rightmost down-leaf."""
    if T.n == 0:
        return U
    if U.n == 0:
        return T
    u, w = leftmost_up_leaf(U) + T.n, rightmost_down_leaf(T)
    return CambrianTree(T.signature + U.signature, T.edges + U.shift(T.n) + ((u, w),))


# ---------------------------------------------------------------------------
# P product and coproduct


def camb_P_product(T: CambrianTree, U: CambrianTree) -> LinearCombination:
    """Sum of P_S for S in the lattice interval between the two graftings."""
    if T.n == 0 or U.n == 0:
        return LinearCombination.basis(U if T.n == 0 else T)
    lattice = cambrian_lattice(T.signature + U.signature)
    return LinearCombination.sum_of(lattice.interval(graft_over(T, U), graft_under(T, U)))


def camb_P_product_via_F(T: CambrianTree, U: CambrianTree) -> LinearCombination:
    return f_to_p(fqsym_product(camb_P(T), camb_P(U)))


def restrict_to_vertices(T: CambrianTree, keep) -> CambrianTree:
    """Induced subgraph on ``keep`` (assumed connected), relabelled to 1..k."""
    keep = sorted(keep)
    rank = {v: r for r, v in enumerate(keep, start=1)}
    sig = "".join(T.sign(v) for v in keep)
    edges = tuple((rank[a], rank[b]) for a, b in T.edges if a in rank and b in rank)
    return CambrianTree(sig, edges).validate()


def _components(T: CambrianTree, verts: set[int]) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for v in sorted(verts):
        if v in seen:
            continue
        comp, stack = {v}, [v]
        while stack:
            x = stack.pop()
            for y in T.parents[x] + T.children[x]:
                if y in verts and y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        out.append(sorted(comp))
    return out


def lower_sets(T: CambrianTree) -> list[frozenset[int]]:
    """Vertex sets closed under going down; each one is a cut of T."""
    order = list(linear_extensions(T)[0].values) if T.n else []
    out: set[frozenset[int]] = set()

    def rec(k: int, chosen: frozenset[int]):
        if k == len(order):
            out.add(chosen)
            return
        v = order[k]
        rec(k + 1, chosen)
        if all(c in chosen for c in T.children[v]):
            rec(k + 1, chosen | {v})

    rec(0, frozenset())
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def forest_product(T: CambrianTree, verts: set[int]) -> LinearCombination:
    """Product of P over the components of the forest induced on ``verts``."""
    comps = _components(T, verts)
    ranks = {v: r for r, v in enumerate(sorted(verts), start=1)}
    result = LinearCombination.basis(EMPTY_TREE)
    for comp in comps:
        block = [ranks[v] for v in comp]
        if block != list(range(block[0], block[-1] + 1)):
            raise AssertionError(f"forest component {comp} is not an interval after standardization")
        result = bilinear(result, LinearCombination.basis(restrict_to_vertices(T, comp)), camb_P_product)
    return result


def camb_P_coproduct(S: CambrianTree) -> TensorCombination:
    out = TensorCombination()
    everything = set(range(1, S.n + 1))
    for low in lower_sets(S):
        below = forest_product(S, set(low))
        above = forest_product(S, everything - low)
        out = out + TensorCombination.from_pair(below, above)
    return out


def camb_P_coproduct_via_F(S: CambrianTree) -> TensorCombination:
    return f_tensor_to_p(fqsym_coproduct(camb_P(S)))


CAMB = GradedBialgebra(
    EMPTY_TREE,
    camb_P_product,
    camb_P_coproduct,
)


# ---------------------------------------------------------------------------
# Q basis: splitting along vertical paths


def restrict_interval(T: CambrianTree, lo: int, hi: int) -> CambrianTree:
    """Part of T on values lo..hi: u -> w when a path joins them outside the interval."""
    inside = set(range(lo, hi + 1))
    edges = set()
    for u in inside:
        stack, seen = list(T.parents[u]), set()
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            if x in inside:
                edges.add((u - lo + 1, x - lo + 1))
            else:
                stack.extend(T.parents[x])
    return CambrianTree(T.signature[lo - 1:hi], tuple(edges)).validate()


def _up_leaves(T: CambrianTree) -> list[tuple[float, int]]:
    out = []
    for v in range(1, T.n + 1):
        slots = T.up_slots(v)
        gaps = [v - 1, v] if len(slots) == 2 else [v - 0.5]
        out.extend((g, v) for g, w in zip(gaps, slots) if w == LEAF)
    return sorted(out)


def _down_leaves(T: CambrianTree) -> list[tuple[float, int]]:
    out = []
    for v in range(1, T.n + 1):
        slots = T.down_slots(v)
        gaps = [v - 1, v] if len(slots) == 2 else [v - 0.5]
        out.extend((g, v) for g, w in zip(gaps, slots) if w == LEAF)
    return sorted(out)


def _pieces(T: CambrianTree, cut_gaps: list[int]) -> list[tuple[int, int]]:
    """Value intervals of T between consecutive cut gaps (possibly empty)."""
    bounds = [0] + sorted(cut_gaps) + [T.n]
    return [(bounds[k] + 1, bounds[k + 1]) for k in range(len(bounds) - 1)]


def dual_product_tree(T: CambrianTree, U: CambrianTree, low_values: tuple[int, ...]) -> CambrianTree:
    """T's labels go to ``low_values`` and U's to the rest; T is cut by U's negative walls,
    U by T's positive walls, and the strands are reconnected left to right."""
    n = T.n + U.n
    low = list(low_values)
    high = [v for v in range(1, n + 1) if v not in set(low)]
    sig = [""] * n
    for k, v in enumerate(low):
        sig[v - 1] = T.signature[k]
    for k, v in enumerate(high):
        sig[v - 1] = U.signature[k]

    # a wall at global value w cuts T after the T-labels below w
    cuts_T = [sum(1 for x in low if x < high[k]) for k in range(U.n) if U.signature[k] == "-"]
    cuts_U = [sum(1 for x in high if x < low[k]) for k in range(T.n) if T.signature[k] == "+"]

    edges: list[tuple[int, int]] = []
    strands_below: list[int] = []  # global holder of each up-leaf, LEAF for a bare strand
    for lo, hi in _pieces(T, cuts_T):
        if lo > hi:
            strands_below.append(LEAF)
            continue
        piece = restrict_interval(T, lo, hi)
        relabel = {v: low[lo + v - 2] for v in range(1, piece.n + 1)}
        edges.extend((relabel[a], relabel[b]) for a, b in piece.edges)
        strands_below.extend(relabel[v] for _, v in _up_leaves(piece))
    strands_above: list[int] = []
    for lo, hi in _pieces(U, cuts_U):
        if lo > hi:
            strands_above.append(LEAF)
            continue
        piece = restrict_interval(U, lo, hi)
        relabel = {v: high[lo + v - 2] for v in range(1, piece.n + 1)}
        edges.extend((relabel[a], relabel[b]) for a, b in piece.edges)
        strands_above.extend(relabel[v] for _, v in _down_leaves(piece))
    if len(strands_below) != len(strands_above):
        raise AssertionError("strand counts disagree between the two halves")
    edges.extend((a, b) for a, b in zip(strands_below, strands_above) if a != LEAF and b != LEAF)
    return CambrianTree("".join(sig), tuple(edges)).validate()


def camb_Q_product(T: CambrianTree, U: CambrianTree) -> LinearCombination:
    n = T.n + U.n
    return LinearCombination.sum_of(
        dual_product_tree(T, U, low) for low in combinations(range(1, n + 1), T.n)
    )


def camb_Q_product_via_G(T: CambrianTree, U: CambrianTree) -> LinearCombination:
    return g_to_q(g_product(LinearCombination.basis(representative(T)), LinearCombination.basis(representative(U))))


def camb_Q_coproduct(S: CambrianTree) -> TensorCombination:
    return TensorCombination(
        ((restrict_interval(S, 1, g), restrict_interval(S, g + 1, S.n)), 1) for g in range(S.n + 1)
    )


def camb_Q_coproduct_via_G(S: CambrianTree) -> TensorCombination:
    return g_tensor_to_q(g_coproduct(LinearCombination.basis(representative(S))))


CAMB_DUAL = GradedBialgebra(EMPTY_TREE, camb_Q_product, camb_Q_coproduct)


# ---------------------------------------------------------------------------
# multiplicative bases


def E_basis(T: CambrianTree) -> LinearCombination:
    """E^T as a P-combination: sum over the upper set of T."""
    if T.n == 0:
        return LinearCombination.basis(T)
    L = cambrian_lattice(T.signature)
    return LinearCombination.sum_of(U for U in L.elements if L.leq(T, U))


def H_basis(T: CambrianTree) -> LinearCombination:
    if T.n == 0:
        return LinearCombination.basis(T)
    L = cambrian_lattice(T.signature)
    return LinearCombination.sum_of(U for U in L.elements if L.leq(U, T))


def E_product(T: CambrianTree, U: CambrianTree) -> CambrianTree:
    return graft_over(T, U)


def H_product(T: CambrianTree, U: CambrianTree) -> CambrianTree:
    return graft_under(T, U)


# ---------------------------------------------------------------------------
# duality, antipode, canopy algebra, freeness


def duality_psi(T: CambrianTree) -> LinearCombination:
    """Image of P_T in the dual: each F_t becomes G of the inverse, then projects to Q."""
    return camb_P(T).expand(lambda t: LinearCombination.basis(p_symbol(t.inverse())))


def antipode(x: LinearCombination) -> LinearCombination:
    """P-basis antipode from the recursion over the reduced coproduct."""
    return CAMB.antipode(x)


def recoils_algebra_X(chi: str) -> LinearCombination:
    from .camb_tree import cambrian_trees
    from .perm_core import all_signatures

    n = len(chi) + 1
    return LinearCombination.sum_of(
        T for sig in all_signatures(n) for T in cambrian_trees(sig) if canopy(T) == chi
    )


def p_to_x(x: LinearCombination) -> dict[tuple[str, str], int]:
    """Group a P-combination by (signature, canopy); fails unless constant on each canopy fiber."""
    from .camb_tree import cambrian_trees

    out: dict = {}
    for T, c in x.terms.items():
        key = (T.signature, canopy(T))
        if out.setdefault(key, c) != c:
            raise ValueError(f"coefficient not constant on canopy fiber {key}")
    for (sig, chi), c in out.items():
        fiber = [T for T in cambrian_trees(sig) if canopy(T) == chi]
        if any(x.coefficient(T) != c for T in fiber):
            raise ValueError(f"canopy fiber {chi} on {sig} only partially present")
    return out


def indecomposable_count_formula(n: int) -> int:
    return 2 ** n * catalan(n - 1) if n else 0


def freeness_series_holds(order: int) -> bool:
    """1 / (1 - sum 2^n C_{n-1} t^n) agrees with sum 2^n C_n t^n up to t^order."""
    gens = [0] + [indecomposable_count_formula(n) for n in range(1, order + 1)]
    inv = [1] + [0] * order
    for m in range(1, order + 1):
        inv[m] = sum(gens[k] * inv[m - k] for k in range(1, m + 1))
    return all(inv[m] == 2 ** m * catalan(m) for m in range(order + 1))
