"""Twin Cambrian trees, Cambrian tuples and the Baxter-Cambrian numbers.

Two orientation conventions coexist.  A ``TwinPair`` stores ``[T_circ, T_bullet]``
on the same signature and is valid when T_circ together with the reverse of
T_bullet has no directed cycle.  A ``CambrianTuple`` stores trees whose plain
union is acyclic, each with its own signature.  ``twin_to_tuple`` and
``tuple_to_twin`` translate between them by reversing the second tree, and
every pair operation is implemented once on tuples.

F-basis keys for pairs are ``SignedPermutation``; for tuples they are
``LSignedPermutation`` with one value signature per layer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Iterator, Sequence

from .camb_hopf import (
    dual_product_tree,
    forest_product,
    graft_over,
    graft_under,
    restrict_interval,
)
from .camb_tree import (
    EMPTY_TREE,
    CambrianTree,
    canopy,
    cambrian_trees,
    p_symbol,
    rotate,
)
from .linear import GradedBialgebra, LinearCombination, TensorCombination
from .perm_core import (
    LSignedPermutation,
    SignedPermutation,
    all_signatures,
    check_signature,
    flip_signature,
    lconvolution,
    lshifted_shuffle,
    restrict_positions,
    restrict_values,
    signed_permutations,
)
from .posets import HasseDiagram

TWIN_CONVENTION = "twin: union of t_circ with the reverse of t_bullet is acyclic"
TUPLE_CONVENTION = "tuple: plain union of all trees is acyclic"


# ---------------------------------------------------------------------------
# directed-graph helpers on vertex set 1..n


def _is_acyclic(n: int, edges: Sequence[tuple[int, int]]) -> bool:
    indeg = [0] * (n + 1)
    succ: list[list[int]] = [[] for _ in range(n + 1)]
    for a, b in edges:
        succ[a].append(b)
        indeg[b] += 1
    queue = deque(v for v in range(1, n + 1) if indeg[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == n


def _linear_extensions(n: int, edges: Sequence[tuple[int, int]]) -> list[tuple[int, ...]]:
    """Words listing 1..n where a precedes b for every edge (a, b); lexicographic."""
    preds = [0] * (n + 1)
    for a, b in edges:
        preds[b] |= 1 << a
    out: list[tuple[int, ...]] = []
    word: list[int] = []

    def rec(placed: int):
        if len(word) == n:
            out.append(tuple(word))
            return
        for v in range(1, n + 1):
            if not placed >> v & 1 and preds[v] & ~placed == 0:
                word.append(v)
                rec(placed | 1 << v)
                word.pop()

    rec(0)
    return out


def _reachable(n: int, edges: Sequence[tuple[int, int]]) -> list[int]:
    """reach[v] is the bitmask of vertices strictly above v."""
    succ: list[list[int]] = [[] for _ in range(n + 1)]
    for a, b in edges:
        succ[a].append(b)
    reach = [0] * (n + 1)
    for v in range(1, n + 1):
        stack, mask = list(succ[v]), 0
        while stack:
            w = stack.pop()
            if not mask >> w & 1:
                mask |= 1 << w
                stack.extend(succ[w])
        reach[v] = mask
    return reach


def _has_splitting_prefix(n: int, edges: Sequence[tuple[int, int]]) -> bool:
    """Some {1..k}, 0 < k < n, is closed under predecessors."""
    for k in range(1, n):
        if not any(b <= k < a for a, b in edges):
            return True
    return False


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True, order=True)
class CambrianTuple:
    trees: tuple[CambrianTree, ...]

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(self.trees))

    @property
    def n(self) -> int:
        return self.trees[0].n

    @property
    def ell(self) -> int:
        return len(self.trees)

    @property
    def signatures(self) -> tuple[str, ...]:
        return tuple(T.signature for T in self.trees)

    def union_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted({e for T in self.trees for e in T.edges}))

    def is_acyclic(self) -> bool:
        return _is_acyclic(self.n, self.union_edges())

    def validate(self) -> "CambrianTuple":
        if not self.trees:
            raise ValueError("a Cambrian tuple needs at least one tree")
        if len({T.n for T in self.trees}) != 1:
            raise ValueError("trees of a tuple must share their vertex set")
        for T in self.trees:
            T.validate()
        if not self.is_acyclic():
            raise ValueError("union of the trees has a directed cycle")
        return self

    def to_json(self) -> dict:
        return {"convention": "tuple", "trees": [T.to_json() for T in self.trees]}

    def __str__(self) -> str:
        return "[" + ", ".join(str(T) for T in self.trees) + "]"


@dataclass(frozen=True, order=True)
class TwinPair:
    t_circ: CambrianTree
    t_bullet: CambrianTree

    @property
    def n(self) -> int:
        return self.t_circ.n

    @property
    def signature(self) -> str:
        return self.t_circ.signature

    def validate(self) -> "TwinPair":
        if self.t_circ.signature != self.t_bullet.signature:
            raise ValueError("twin trees must share their signature")
        self.t_circ.validate()
        self.t_bullet.validate()
        if not is_twin(self.t_circ, self.t_bullet):
            raise ValueError("trees are not twins")
        return self

    def to_json(self) -> dict:
        return {"convention": "twin", "trees": [self.t_circ.to_json(), self.t_bullet.to_json()]}

    @classmethod
    def from_json(cls, data: dict) -> "TwinPair":
        if data.get("convention") != "twin":
            raise ValueError("expected a twin-convention pair")
        a, b = (CambrianTree.from_json(t) for t in data["trees"])
        return cls(a, b).validate()

    def __str__(self) -> str:
        return f"[{self.t_circ}, {self.t_bullet}]"


EMPTY_TUPLE_1 = CambrianTuple((EMPTY_TREE,))
EMPTY_PAIR = TwinPair(EMPTY_TREE, EMPTY_TREE)


def twin_to_tuple(p: TwinPair) -> CambrianTuple:
    return CambrianTuple((p.t_circ, p.t_bullet.reverse()))


def tuple_to_twin(t: CambrianTuple) -> TwinPair:
    if t.ell != 2 or t.trees[1].signature != flip_signature(t.trees[0].signature):
        raise ValueError("only 2-tuples on opposite signatures correspond to twin pairs")
    return TwinPair(t.trees[0], t.trees[1].reverse())


def is_twin(a: CambrianTree, b: CambrianTree) -> bool:
    if a.signature != b.signature:
        return False
    return _is_acyclic(a.n, a.edges + b.reverse().edges)


# ---------------------------------------------------------------------------
# insertion and linear extensions


def tuple_p_symbol(t: LSignedPermutation) -> CambrianTuple:
    return CambrianTuple(tuple(p_symbol(t.layer(k)) for k in range(t.layers)))


def baxter_p_symbol(t: SignedPermutation) -> TwinPair:
    return TwinPair(p_symbol(t), p_symbol(t.mirror()))


def as_two_layers(t: SignedPermutation) -> LSignedPermutation:
    """The 2-signed permutation whose layers are t and t with all signs flipped."""
    return LSignedPermutation(t.values, (t.vsign, flip_signature(t.vsign)))


def tuple_linear_extensions(t: CambrianTuple) -> list[LSignedPermutation]:
    return [LSignedPermutation(w, t.signatures) for w in _linear_extensions(t.n, t.union_edges())]


def pair_linear_extensions(p: TwinPair) -> list[SignedPermutation]:
    edges = p.t_circ.edges + p.t_bullet.reverse().edges
    return [SignedPermutation(w, p.signature) for w in _linear_extensions(p.n, edges)]


# ---------------------------------------------------------------------------
# congruences


def baxter_moves(t: SignedPermutation) -> Iterator[SignedPermutation]:
    """Adjacent swaps allowed by the three Baxter-Cambrian rewriting rules."""
    word, pos = t.values, t.positions
    for k in range(t.n - 1):
        a, d = sorted(word[k:k + 2])
        before = {t.sign(v) for v in range(a + 1, d) if pos[v - 1] < k}
        after = {t.sign(v) for v in range(a + 1, d) if pos[v - 1] > k + 1}
        if before & after or len(before) == 2 or len(after) == 2:
            yield SignedPermutation(word[:k] + (word[k + 1], word[k]) + word[k + 2:], t.vsign)


def tuple_moves(t: LSignedPermutation) -> Iterator[LSignedPermutation]:
    """Swap ac -> ca when every layer has a witness b in (a, c): positive before or negative after."""
    word = t.values
    pos = {v: i for i, v in enumerate(word)}
    for k in range(t.n - 1):
        a, c = sorted(word[k:k + 2])
        ok = True
        for sig in t.vsigns:
            if not any(
                (sig[b - 1] == "+" and pos[b] < k) or (sig[b - 1] == "-" and pos[b] > k + 1)
                for b in range(a + 1, c)
            ):
                ok = False
                break
        if ok:
            yield LSignedPermutation(word[:k] + (word[k + 1], word[k]) + word[k + 2:], t.vsigns)


def _closure(start, moves):
    seen, queue = {start}, deque([start])
    while queue:
        x = queue.popleft()
        for y in moves(x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def baxter_congruence_class(t: SignedPermutation) -> set[SignedPermutation]:
    return _closure(t, baxter_moves)


def baxter_congruent(t: SignedPermutation, u: SignedPermutation) -> bool:
    if t.vsign != u.vsign:
        return False
    return u in baxter_congruence_class(t)


def tuple_congruence_class(t: LSignedPermutation) -> set[LSignedPermutation]:
    return _closure(t, tuple_moves)


def tuple_congruent(t: LSignedPermutation, u: LSignedPermutation) -> bool:
    if t.vsigns != u.vsigns:
        return False
    return u in tuple_congruence_class(t)


# ---------------------------------------------------------------------------
# rotations and lattices


def tuple_rotatable_edges(t: CambrianTuple) -> list[tuple[int, int]]:
    out = []
    for i, j in t.union_edges():
        if all((i, j) in T.edges or not (T.is_below(i, j) or T.is_below(j, i)) for T in t.trees):
            out.append((i, j))
    return out


def rotate_tuple(t: CambrianTuple, edge: tuple[int, int]) -> CambrianTuple:
    if edge not in tuple_rotatable_edges(t):
        raise ValueError(f"{edge} is not rotatable in {t}")
    return CambrianTuple(tuple(rotate(T, edge) if edge in T.edges else T for T in t.trees))


def rotatable_edges(p: TwinPair | CambrianTuple) -> list[tuple[int, int]]:
    """Rotatable edges, oriented as in T_circ for pairs."""
    if isinstance(p, TwinPair):
        return tuple_rotatable_edges(twin_to_tuple(p))
    return tuple_rotatable_edges(p)


def rotate_pair(p: TwinPair | CambrianTuple, edge: tuple[int, int]):
    if isinstance(p, TwinPair):
        return tuple_to_twin(rotate_tuple(twin_to_tuple(p), edge))
    return rotate_tuple(p, edge)


def _increasing_tuple_rotations(t: CambrianTuple) -> list[CambrianTuple]:
    return [rotate_tuple(t, e) for e in tuple_rotatable_edges(t) if e[0] < e[1]]


def _sig_tuple(sigs: Sequence[str]) -> tuple[str, ...]:
    sigs = tuple(check_signature(s) for s in sigs)
    if len({len(s) for s in sigs}) != 1:
        raise ValueError("signatures of a tuple must have equal length")
    return sigs


@lru_cache(maxsize=None)
def _tuples_by_insertion(sigs: tuple[str, ...]) -> tuple[CambrianTuple, ...]:
    n = len(sigs[0])
    return tuple(sorted({
        CambrianTuple(tuple(p_symbol(SignedPermutation(w, s)) for s in sigs))
        for w in _all_words(n)
    }))


def _all_words(n: int):
    from itertools import permutations

    return permutations(range(1, n + 1))


def cambrian_tuples(sigs: Sequence[str]) -> list[CambrianTuple]:
    """All Cambrian tuples on the given signatures, as images of the insertion map."""
    return list(_tuples_by_insertion(_sig_tuple(sigs)))


def cambrian_tuples_brute_force(sigs: Sequence[str]) -> list[CambrianTuple]:
    """All acyclic combinations of one tree per signature."""
    sigs = _sig_tuple(sigs)
    n = len(sigs[0])
    out = []
    for trees in product(*(cambrian_trees(s) for s in sigs)):
        if _is_acyclic(n, [e for T in trees for e in T.edges]):
            out.append(CambrianTuple(trees))
    return sorted(out)


@lru_cache(maxsize=None)
def _tuple_lattice(sigs: tuple[str, ...]) -> HasseDiagram:
    return HasseDiagram.from_successors(cambrian_tuples(sigs), _increasing_tuple_rotations)


def tuple_lattice(sigs: Sequence[str]) -> HasseDiagram:
    return _tuple_lattice(_sig_tuple(sigs))


def twin_pairs(sig: str) -> list[TwinPair]:
    return sorted(tuple_to_twin(t) for t in cambrian_tuples((sig, flip_signature(sig))))


@lru_cache(maxsize=None)
def _baxter_lattice(sig: str) -> HasseDiagram:
    pairs = twin_pairs(sig)

    def succ(p: TwinPair):
        return [tuple_to_twin(t) for t in _increasing_tuple_rotations(twin_to_tuple(p))]

    return HasseDiagram.from_successors(pairs, succ)


def baxter_lattice(sig: str) -> HasseDiagram:
    return _baxter_lattice(check_signature(sig))


# ---------------------------------------------------------------------------
# counting


def twin_pair_count_brute_force(sig: str) -> int:
    """Ordered pairs of sig-Cambrian trees whose union with the reversal is acyclic."""
    trees = cambrian_trees(sig)
    n = len(sig)
    reversed_edges = [T.reverse().edges for T in trees]
    return sum(
        1
        for A in trees
        for rev in reversed_edges
        if _is_acyclic(n, A.edges + rev)
    )


def baxter_fiber_count(sig: str) -> int:
    return len({baxter_p_symbol(t) for t in signed_permutations(sig)})


def avoids_baxter_patterns(word: Sequence[int], sig: str) -> bool:
    """True when no ascent ad admits a Baxter-Cambrian rewriting, i.e. the word is class-maximal."""
    pos = {v: i for i, v in enumerate(word)}
    for k in range(len(word) - 1):
        a, d = word[k], word[k + 1]
        if a > d:
            continue
        before = {sig[v - 1] for v in range(a + 1, d) if pos[v] < k}
        after = {sig[v - 1] for v in range(a + 1, d) if pos[v] > k + 1}
        if before & after or len(before) == 2 or len(after) == 2:
            return False
    return True


def baxter_free_gaps(t: SignedPermutation) -> list[int]:
    # the sign of the new maximum never acts as a witness, so any sign works here
    sig = t.vsign + "+"
    return [
        g for g in range(t.n + 1)
        if avoids_baxter_patterns(t.values[:g] + (t.n + 1,) + t.values[g:], sig)
    ]


def free_gap_type(t: SignedPermutation) -> tuple[int, int]:
    """(free gaps left of n, free gaps right of n)."""
    where = t.positions[t.n - 1] + 1  # gaps 0..where-1 lie to the left of n
    gaps = baxter_free_gaps(t)
    left = sum(1 for g in gaps if g < where)
    return left, len(gaps) - left


def baxter_class_maximal_permutations(sig: str) -> list[SignedPermutation]:
    """Leaves of the generating tree that inserts each new maximum at a free gap."""
    level = [SignedPermutation((), "")]
    for m in range(1, len(sig) + 1):
        nxt = []
        for t in level:
            for g in baxter_free_gaps(t):
                nxt.append(SignedPermutation(t.values[:g] + (m,) + t.values[g:], sig[:m]))
        level = nxt
    return level


@dataclass(frozen=True)
class BCMatrix:
    """entries[l-1][r-1] counts class-maximal permutations of free-gap-type (l, r)."""

    n: int
    entries: tuple[tuple[int, ...], ...]

    def __getitem__(self, lr: tuple[int, int]) -> int:
        l, r = lr
        if 1 <= l <= self.n + 1 and 1 <= r <= self.n + 1:
            return self.entries[l - 1][r - 1]
        return 0

    @property
    def total(self) -> int:
        return sum(map(sum, self.entries))

    def is_symmetric(self) -> bool:
        return all(self.entries[i][j] == self.entries[j][i] for i in range(len(self.entries)) for j in range(i))

    def render(self) -> str:
        width = max(len(str(x)) for row in self.entries for x in row)
        return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in self.entries)


def _blank(size: int) -> list[list[int]]:
    return [[0] * size for _ in range(size)]


def _grow(prev: list[list[int]], same_sign: bool) -> list[list[int]]:
    """One recursion step; matrices are (n+1) x (n+1) with indices 1..n+1 stored at 0..n."""
    m = len(prev)

    def at(l, r):
        return prev[l - 1][r - 1] if 1 <= l <= m and 1 <= r <= m else 0

    # suffix sums: col_tail[l][r] = sum_{l' >= l} prev(l', r); row_tail[l][r] = sum_{r' >= r} prev(l, r')
    col_tail = [[0] * (m + 2) for _ in range(m + 2)]
    row_tail = [[0] * (m + 2) for _ in range(m + 2)]
    for l in range(m, 0, -1):
        for r in range(m, 0, -1):
            col_tail[l][r] = at(l, r) + col_tail[l + 1][r]
            row_tail[l][r] = at(l, r) + row_tail[l][r + 1]
    size = m + 1
    out = _blank(size)
    if same_sign:
        for l in range(1, size + 1):
            for r in range(1, size + 1):
                left = col_tail[l][r - 1] if 1 <= r - 1 <= m and l <= m else 0
                right = row_tail[l - 1][r] if 1 <= l - 1 <= m and r <= m else 0
                out[l - 1][r - 1] = left + right
    else:
        # rows with l' >= k summed over every r', and the transpose
        rows_from = [0] * (m + 2)
        cols_from = [0] * (m + 2)
        for k in range(m, 0, -1):
            rows_from[k] = rows_from[k + 1] + row_tail[k][1]
            cols_from[k] = cols_from[k + 1] + col_tail[1][k]
        for r in range(2, size + 1):
            out[0][r - 1] = rows_from[max(r - 1, 1)] if r - 1 <= m else 0
        for l in range(2, size + 1):
            out[l - 1][0] = cols_from[max(l - 1, 1)] if l - 1 <= m else 0
    return out


@lru_cache(maxsize=None)
def _bc_entries(sig: str) -> tuple[tuple[int, ...], ...]:
    if len(sig) <= 1:
        return ((len(sig),),) if sig else ((0,),)
    prev = [list(row) for row in _bc_entries(sig[:-1])]
    return tuple(tuple(row) for row in _grow(prev, sig[-1] == sig[-2]))


def bc_matrix(sig: str) -> BCMatrix:
    """Refined counts from the two-case recursion on the last sign."""
    sig = check_signature(sig)
    return BCMatrix(len(sig), _bc_entries(sig))


def bc_matrix_brute_force(sig: str) -> BCMatrix:
    n = len(sig)
    size = max(n, 1)
    out = _blank(size)
    for t in baxter_class_maximal_permutations(sig):
        l, r = free_gap_type(t)
        out[l - 1][r - 1] += 1
    return BCMatrix(n, tuple(tuple(row) for row in out))


def bc_number(sig: str) -> int:
    return bc_matrix(sig).total if sig else 1


def baxter_number(n: int) -> int:
    if n == 0:
        return 1
    return sum(
        comb(n + 1, k - 1) * comb(n + 1, k) * comb(n + 1, k + 1) for k in range(1, n + 1)
    ) // (comb(n + 1, 1) * comb(n + 1, 2))


def alternating_signature(n: int) -> str:
    return ("+-" * n)[:n]


# ---------------------------------------------------------------------------
# symmetries and monotonicity


def switch_set(sig: str) -> frozenset[int]:
    """Gaps i (between positions i and i+1) where the sign changes."""
    return frozenset(i for i in range(1, len(sig)) if sig[i - 1] != sig[i])


def _flip_at(sig: str, i: int) -> str:
    return sig[:i] + flip_signature(sig[i]) + sig[i + 1:]


def bc_symmetries_hold(n: int) -> bool:
    """BC is unchanged by flipping the first or last sign, negating, or reversing."""
    for sig in all_signatures(n):
        value = bc_number(sig)
        images = [_flip_at(sig, 0), _flip_at(sig, n - 1), flip_signature(sig), sig[::-1]]
        if any(bc_number(s) != value for s in images):
            return False
    return True


@dataclass
class MonotonicityReport:
    n: int
    interior_pairs: int
    interior_violations: list[tuple[str, str]]
    full_pairs: int
    full_strict_failures: list[tuple[str, str]]
    full_weak_violations: list[tuple[str, str]]

    @property
    def interior_holds(self) -> bool:
        return not self.interior_violations

    def summary(self) -> str:
        return (
            f"n={self.n}: interior-gap pairs {self.interior_pairs}, violations {len(self.interior_violations)}; "
            f"full switch-set pairs {self.full_pairs}, ties {len(self.full_strict_failures)}, "
            f"reversals {len(self.full_weak_violations)}"
        )


def bc_monotonicity_check(n: int) -> MonotonicityReport:
    """Compare BC over all signature pairs whose switch sets are nested.

    Switches at the two outermost gaps never change BC (flipping the first or
    last sign is a symmetry), so strict decrease is checked on interior gaps
    2..n-2; the full switch-set comparison is reported with its ties.
    """
    sigs = [s for s in all_signatures(n) if s[0] == "+"]
    values = {s: bc_number(s) for s in sigs}
    interior = set(range(2, n - 1))
    by_interior: dict[frozenset, int] = {}
    for s in sigs:
        key = switch_set(s) & interior
        if by_interior.setdefault(key, values[s]) != values[s]:
            raise AssertionError(f"BC depends on the outer switches for {s}")
    interior_pairs = 0
    interior_violations = []
    for a, b in combinations(sorted(by_interior, key=sorted), 2):
        for small, big in ((a, b), (b, a)):
            if small < big:
                interior_pairs += 1
                if not by_interior[small] > by_interior[big]:
                    interior_violations.append((sorted(small), sorted(big)))
    full_pairs = 0
    ties, reversals = [], []
    for s in sigs:
        for u in sigs:
            if switch_set(s) < switch_set(u):
                full_pairs += 1
                if values[s] == values[u]:
                    ties.append((s, u))
                elif values[s] < values[u]:
                    reversals.append((s, u))
    return MonotonicityReport(n, interior_pairs, interior_violations, full_pairs, ties, reversals)


def bc_bounds_hold(n: int) -> bool:
    low, high = comb(2 * n - 2, n - 1), baxter_number(n)
    return all(low <= bc_number(s) <= high for s in all_signatures(n))


def bc_value_multiset(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for s in all_signatures(n):
        v = bc_number(s)
        out[v] = out.get(v, 0) + 1
    return out


# ---------------------------------------------------------------------------
# canopy probe


@dataclass
class CanopyProbe:
    signature: str
    pairs_checked: int
    twin_without_opposite_canopy: int
    opposite_canopy_without_twin: int

    @property
    def agrees(self) -> bool:
        return not (self.twin_without_opposite_canopy or self.opposite_canopy_without_twin)


def _opposite(a: str, b: str) -> bool:
    return all(x != y for x, y in zip(a, b))


def canopy_probe(sig: str) -> CanopyProbe:
    """Compare twinness with opposite canopies over all pairs of sig-Cambrian trees."""
    trees = cambrian_trees(sig)
    canopies = [canopy(T) for T in trees]
    rev = [T.reverse().edges for T in trees]
    n = len(sig)
    only_twin = only_canopy = 0
    for a, A in enumerate(trees):
        for b in range(len(trees)):
            twin = _is_acyclic(n, A.edges + rev[b])
            opp = _opposite(canopies[a], canopies[b])
            only_twin += twin and not opp
            only_canopy += opp and not twin
    return CanopyProbe(sig, len(trees) ** 2, only_twin, only_canopy)


# ---------------------------------------------------------------------------
# E-indecomposables


def is_E_indecomposable_tuple(t: CambrianTuple) -> bool:
    return not _has_splitting_prefix(t.n, t.union_edges())


def is_E_indecomposable_pair(p: TwinPair) -> bool:
    return is_E_indecomposable_tuple(twin_to_tuple(p))


def E_indecomposable_pairs(sig: str) -> list[TwinPair]:
    return [p for p in twin_pairs(sig) if is_E_indecomposable_pair(p)]


# ---------------------------------------------------------------------------
# Hopf algebra on tuples (F basis keyed by l-signed permutations)


def tuple_P(t: CambrianTuple) -> LinearCombination:
    return LinearCombination.sum_of(tuple_linear_extensions(t))


def _empty_lperm(ell: int) -> LSignedPermutation:
    return LSignedPermutation((), ("",) * ell)


def _lf_product_basis(a: LSignedPermutation, b: LSignedPermutation) -> LinearCombination:
    return LinearCombination.sum_of(lshifted_shuffle(a, b))


def _lf_coproduct_basis(s: LSignedPermutation) -> TensorCombination:
    def cut(lo, hi):
        return LSignedPermutation.from_layers([restrict_positions(s.layer(k), lo, hi) for k in range(s.layers)])

    return TensorCombination(((cut(0, k), cut(k, s.n)), 1) for k in range(s.n + 1))


def _lg_product_basis(a: LSignedPermutation, b: LSignedPermutation) -> LinearCombination:
    return LinearCombination.sum_of(lconvolution(a, b))


def _lg_coproduct_basis(s: LSignedPermutation) -> TensorCombination:
    def part(vals):
        return LSignedPermutation.from_layers([restrict_values(s.layer(k), vals) for k in range(s.layers)])

    return TensorCombination(
        ((part(range(1, k + 1)), part(range(k + 1, s.n + 1))), 1) for k in range(s.n + 1)
    )


def lfqsym(ell: int) -> GradedBialgebra:
    return GradedBialgebra(_empty_lperm(ell), _lf_product_basis, _lf_coproduct_basis)


def lfqsym_dual(ell: int) -> GradedBialgebra:
    return GradedBialgebra(_empty_lperm(ell), _lg_product_basis, _lg_coproduct_basis)


def _empty_tuple(ell: int) -> CambrianTuple:
    return CambrianTuple((EMPTY_TREE,) * ell)


def lf_to_tuple_p(x: LinearCombination) -> LinearCombination:
    out: dict = {}
    for t, c in x.terms.items():
        key = tuple_p_symbol(t)
        if out.setdefault(key, c) != c:
            raise ValueError(f"coefficients differ inside the class of {key}")
    result = LinearCombination(out)
    if result.expand(tuple_P) != x:
        raise ValueError("combination is not a sum of full tuple classes")
    return result


def lf_tensor_to_tuple_p(x: TensorCombination) -> TensorCombination:
    out: dict = {}
    for (a, b), c in x.terms.items():
        key = (tuple_p_symbol(a), tuple_p_symbol(b))
        if out.setdefault(key, c) != c:
            raise ValueError("tensor coefficients differ inside a pair of classes")
    result = TensorCombination(out)
    if result.map_sides(tuple_P, tuple_P) != x:
        raise ValueError("tensor is not a sum of full pairs of classes")
    return result


def tuple_P_product(t: CambrianTuple, u: CambrianTuple) -> LinearCombination:
    """Interval between the layerwise over- and under-graftings."""
    if t.n == 0 or u.n == 0:
        return LinearCombination.basis(u if t.n == 0 else t)
    bottom = CambrianTuple(tuple(graft_over(a, b) for a, b in zip(t.trees, u.trees)))
    top = CambrianTuple(tuple(graft_under(a, b) for a, b in zip(t.trees, u.trees)))
    sigs = tuple(a + b for a, b in zip(t.signatures, u.signatures))
    return LinearCombination.sum_of(tuple_lattice(sigs).interval(bottom, top))


def tuple_P_product_via_F(t: CambrianTuple, u: CambrianTuple) -> LinearCombination:
    return lf_to_tuple_p(lfqsym(t.ell).mul(tuple_P(t), tuple_P(u)))


def _union_lower_sets(t: CambrianTuple) -> list[frozenset[int]]:
    n, edges = t.n, t.union_edges()
    preds = [0] * (n + 1)
    for a, b in edges:
        preds[b] |= 1 << a
    out = set()

    def rec(v: int, chosen: int):
        if v > n:
            out.add(chosen)
            return
        rec(v + 1, chosen)
        rec(v + 1, chosen | 1 << v)

    # filter all subsets; sizes here are tiny
    rec(1, 0)
    closed = [m for m in out if all(preds[v] & ~m == 0 for v in range(1, n + 1) if m >> v & 1)]
    return sorted(
        (frozenset(v for v in range(1, n + 1) if m >> v & 1) for m in closed),
        key=lambda s: (len(s), sorted(s)),
    )


def _layer_products(t: CambrianTuple, verts: set[int]) -> list[CambrianTuple]:
    """Acyclic tuples from the product of the per-layer forest products."""
    if not verts:
        return [_empty_tuple(t.ell)]
    per_layer = [forest_product(T, verts) for T in t.trees]
    for comb_ in per_layer:
        if any(c != 1 for _, c in comb_):
            raise AssertionError("forest products are expected to be multiplicity-free")
    out = []
    for trees in product(*(comb_.keys() for comb_ in per_layer)):
        cand = CambrianTuple(trees)
        if cand.is_acyclic():
            out.append(cand)
    return out


def tuple_P_coproduct(s: CambrianTuple) -> TensorCombination:
    everything = set(range(1, s.n + 1))
    out: dict = {}
    for low in _union_lower_sets(s):
        for b in _layer_products(s, set(low)):
            for a in _layer_products(s, everything - low):
                out[(b, a)] = out.get((b, a), 0) + 1
    return TensorCombination(out)


def tuple_P_coproduct_via_F(s: CambrianTuple) -> TensorCombination:
    return lf_tensor_to_tuple_p(lfqsym(s.ell).delta(tuple_P(s)))


def tuple_Q_product(t: CambrianTuple, u: CambrianTuple) -> LinearCombination:
    """One value shuffle shared by every layer."""
    n = t.n + u.n
    return LinearCombination.sum_of(
        CambrianTuple(tuple(dual_product_tree(a, b, low) for a, b in zip(t.trees, u.trees)))
        for low in combinations(range(1, n + 1), t.n)
    )


def tuple_representative(t: CambrianTuple) -> LSignedPermutation:
    return tuple_linear_extensions(t)[0]


def tuple_Q_product_via_G(t: CambrianTuple, u: CambrianTuple) -> LinearCombination:
    g = lfqsym_dual(t.ell).mul(
        LinearCombination.basis(tuple_representative(t)), LinearCombination.basis(tuple_representative(u))
    )
    return g.map_keys(tuple_p_symbol)


def tuple_Q_coproduct(s: CambrianTuple) -> TensorCombination:
    def part(lo, hi):
        return CambrianTuple(tuple(restrict_interval(T, lo, hi) for T in s.trees))

    return TensorCombination(((part(1, g), part(g + 1, s.n)), 1) for g in range(s.n + 1))


def tuple_Q_coproduct_via_G(s: CambrianTuple) -> TensorCombination:
    d = lfqsym_dual(s.ell).delta(LinearCombination.basis(tuple_representative(s)))
    return TensorCombination(((tuple_p_symbol(a), tuple_p_symbol(b)), c) for (a, b), c in d.terms.items())


def camb_tuple_algebra(ell: int) -> GradedBialgebra:
    return GradedBialgebra(_empty_tuple(ell), tuple_P_product, tuple_P_coproduct)


def camb_tuple_dual_algebra(ell: int) -> GradedBialgebra:
    return GradedBialgebra(_empty_tuple(ell), tuple_Q_product, tuple_Q_coproduct)


# ---------------------------------------------------------------------------
# Baxter-Cambrian algebra on twin pairs (F basis keyed by signed permutations)


def baxter_P(p: TwinPair) -> LinearCombination:
    return LinearCombination.sum_of(pair_linear_extensions(p))


def f_to_baxter_p(x: LinearCombination) -> LinearCombination:
    out: dict = {}
    for t, c in x.terms.items():
        key = baxter_p_symbol(t)
        if out.setdefault(key, c) != c:
            raise ValueError(f"coefficients differ inside the class of {key}")
    result = LinearCombination(out)
    if result.expand(baxter_P) != x:
        raise ValueError("combination is not a sum of full Baxter-Cambrian classes")
    return result


def baxter_hopf_product(p: TwinPair, q: TwinPair) -> LinearCombination:
    """Interval from [T o/ T', T. \\ T'] up to [T \\ T', T. o/ T'] in the Baxter-Cambrian lattice."""
    if p.n == 0 or q.n == 0:
        return LinearCombination.basis(q if p.n == 0 else p)
    bottom = TwinPair(graft_over(p.t_circ, q.t_circ), graft_under(p.t_bullet, q.t_bullet))
    top = TwinPair(graft_under(p.t_circ, q.t_circ), graft_over(p.t_bullet, q.t_bullet))
    lattice = baxter_lattice(p.signature + q.signature)
    return LinearCombination.sum_of(lattice.interval(bottom, top))


def baxter_hopf_product_via_F(p: TwinPair, q: TwinPair) -> LinearCombination:
    from .camb_hopf import FQSYM

    return f_to_baxter_p(FQSYM.mul(baxter_P(p), baxter_P(q)))


def baxter_hopf_coproduct(p: TwinPair) -> TensorCombination:
    """Cuts of the union; layer products kept only when the two sides stay twins."""
    d = tuple_P_coproduct(twin_to_tuple(p))
    return TensorCombination(((tuple_to_twin(a), tuple_to_twin(b)), c) for (a, b), c in d.terms.items())


def baxter_hopf_coproduct_via_F(p: TwinPair) -> TensorCombination:
    from .camb_hopf import FQSYM

    d = FQSYM.delta(baxter_P(p))
    out: dict = {}
    for (a, b), c in d.terms.items():
        key = (baxter_p_symbol(a), baxter_p_symbol(b))
        if out.setdefault(key, c) != c:
            raise ValueError("tensor coefficients differ inside a pair of classes")
    result = TensorCombination(out)
    if result.map_sides(baxter_P, baxter_P) != d:
        raise ValueError("tensor is not a sum of full pairs of classes")
    return result


def baxter_Q_product(p: TwinPair, q: TwinPair) -> LinearCombination:
    """Per value shuffle: T_circ is cut as usual, T_bullet with the roles of the factors exchanged."""
    n = p.n + q.n
    out = []
    for low in combinations(range(1, n + 1), p.n):
        high = tuple(v for v in range(1, n + 1) if v not in low)
        out.append(TwinPair(
            dual_product_tree(p.t_circ, q.t_circ, low),
            dual_product_tree(q.t_bullet, p.t_bullet, high),
        ))
    return LinearCombination.sum_of(out)


def baxter_Q_product_via_G(p: TwinPair, q: TwinPair) -> LinearCombination:
    from .camb_hopf import FQSYM_DUAL

    g = FQSYM_DUAL.mul(
        LinearCombination.basis(pair_linear_extensions(p)[0]),
        LinearCombination.basis(pair_linear_extensions(q)[0]),
    )
    return g.map_keys(baxter_p_symbol)


def baxter_Q_coproduct(p: TwinPair) -> TensorCombination:
    def part(lo, hi):
        return TwinPair(restrict_interval(p.t_circ, lo, hi), restrict_interval(p.t_bullet, lo, hi))

    return TensorCombination(((part(1, g), part(g + 1, p.n)), 1) for g in range(p.n + 1))


def baxter_Q_coproduct_via_G(p: TwinPair) -> TensorCombination:
    from .camb_hopf import FQSYM_DUAL

    d = FQSYM_DUAL.delta(LinearCombination.basis(pair_linear_extensions(p)[0]))
    return TensorCombination(((baxter_p_symbol(a), baxter_p_symbol(b)), c) for (a, b), c in d.terms.items())


BAX = GradedBialgebra(EMPTY_PAIR, baxter_hopf_product, baxter_hopf_coproduct)
BAX_DUAL = GradedBialgebra(EMPTY_PAIR, baxter_Q_product, baxter_Q_coproduct)


def baxter_E_basis(p: TwinPair) -> LinearCombination:
    if p.n == 0:
        return LinearCombination.basis(p)
    L = baxter_lattice(p.signature)
    return LinearCombination.sum_of(q for q in L.elements if L.leq(p, q))


def baxter_H_basis(p: TwinPair) -> LinearCombination:
    if p.n == 0:
        return LinearCombination.basis(p)
    L = baxter_lattice(p.signature)
    return LinearCombination.sum_of(q for q in L.elements if L.leq(q, p))
