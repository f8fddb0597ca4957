"""Schröder-Cambrian trees: the faces of the Cambrian associahedra.

A tree is stored as its node labels (sorted value tuples partitioning 1..n)
and its directed edges between labels; an edge ``(X, Y)`` means X sits below
Y.  A node with negative values x1 < ... < xk has k+1 incoming slots, one per
open interval ]0, x1[, ]x1, x2[, ..., ]xk, n+1[ (a single slot when k = 0);
outgoing slots are cut by the positive values the same way.  Slot order is
forced by labels, so labels plus edges form a canonical key.

F-basis keys are ``SignedOrderedPartition``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .camb_hopf import camb_P_product
from .camb_tree import CambrianTree, InvalidTree, cambrian_lattice, cambrian_trees, p_symbol
from .linear import GradedBialgebra, LinearCombination, TensorCombination, bilinear
from .perm_core import (
    OrderedPartition,
    SignedOrderedPartition,
    all_signatures,
    check_signature,
    coinv,
    ordered_partitions,
    partition_convolution,
    partition_prefix_splits,
    partition_recoils,
    partition_shifted_shuffle,
    partition_value_splits,
    partition_weak_order_covers,
    signed_ordered_partitions,
    weak_leq_partition,
)
from .posets import HasseDiagram

Label = tuple[int, ...]
LEAF = None


def much_less(x: Sequence[int], y: Sequence[int]) -> bool:
    """X << Y: every value of X is below every value of Y."""
    return max(x) < min(y)


def _cut_intervals(n: int, cuts: Sequence[int]) -> list[tuple[int, int]]:
    bounds = [0] + sorted(cuts) + [n + 1]
    return [(bounds[k] + 1, bounds[k + 1] - 1) for k in range(len(bounds) - 1)]


@dataclass(frozen=True, order=True)
class SchroderCambrianTree:
    signature: str
    nodes: tuple[Label, ...]
    edges: tuple[tuple[Label, Label], ...]

    def __post_init__(self):
        check_signature(self.signature)
        object.__setattr__(self, "nodes", tuple(sorted(tuple(sorted(x)) for x in self.nodes)))
        object.__setattr__(
            self, "edges", tuple(sorted({(tuple(sorted(a)), tuple(sorted(b))) for a, b in self.edges}))
        )

    @property
    def n(self) -> int:
        return len(self.signature)

    def sign(self, v: int) -> str:
        return self.signature[v - 1]

    @cached_property
    def node_of(self) -> dict[int, Label]:
        return {v: x for x in self.nodes for v in x}

    @cached_property
    def parents(self) -> dict[Label, list[Label]]:
        out = {x: [] for x in self.nodes}
        for a, b in self.edges:
            out[a].append(b)
        return out

    @cached_property
    def children(self) -> dict[Label, list[Label]]:
        out = {x: [] for x in self.nodes}
        for a, b in self.edges:
            out[b].append(a)
        return out

    @cached_property
    def above(self) -> dict[Label, frozenset[Label]]:
        memo: dict[Label, frozenset[Label]] = {}

        def go(x):
            if x not in memo:
                acc = set()
                for p in self.parents[x]:
                    acc.add(p)
                    acc |= go(p)
                memo[x] = frozenset(acc)
            return memo[x]

        for x in self.nodes:
            go(x)
        return memo

    def is_below(self, x: Label, y: Label) -> bool:
        return y in self.above[x]

    def value_below(self, i: int, j: int) -> bool:
        """i and j sit in different nodes and the node of i is below that of j."""
        return self.is_below(self.node_of[i], self.node_of[j])

    def component(self, start: Label, removed: Label | None) -> set[Label]:
        seen, stack = {start}, [start]
        while stack:
            x = stack.pop()
            for y in self.parents[x] + self.children[x]:
                if y != removed and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    # slots -----------------------------------------------------------------

    def down_intervals(self, x: Label) -> list[tuple[int, int]]:
        return _cut_intervals(self.n, [v for v in x if self.sign(v) == "-"])

    def up_intervals(self, x: Label) -> list[tuple[int, int]]:
        return _cut_intervals(self.n, [v for v in x if self.sign(v) == "+"])

    def _fill(self, x: Label, neighbours: list[Label], intervals) -> list[Label | None]:
        slots: list[Label | None] = [LEAF] * len(intervals)
        for y in neighbours:
            values = [v for z in self.component(y, removed=x) for v in z]
            k = next((k for k, (lo, hi) in enumerate(intervals) if lo <= min(values) and max(values) <= hi), None)
            if k is None:
                raise InvalidTree(f"subtree at {y} of node {x} fits no slot")
            if slots[k] is not LEAF:
                raise InvalidTree(f"node {x} has two subtrees in one slot")
            slots[k] = y
        return slots

    def down_slots(self, x: Label) -> list[Label | None]:
        return self._fill(x, self.children[x], self.down_intervals(x))

    def up_slots(self, x: Label) -> list[Label | None]:
        return self._fill(x, self.parents[x], self.up_intervals(x))

    def validate(self) -> "SchroderCambrianTree":
        n = self.n
        flat = sorted(v for x in self.nodes for v in x)
        if flat != list(range(1, n + 1)):
            raise InvalidTree("node labels do not partition 1..n")
        if any(not x for x in self.nodes):
            raise InvalidTree("empty node label")
        if len(self.edges) != max(len(self.nodes) - 1, 0):
            raise InvalidTree(f"{len(self.edges)} edges for {len(self.nodes)} nodes")
        known = set(self.nodes)
        for a, b in self.edges:
            if a not in known or b not in known or a == b:
                raise InvalidTree(f"bad edge {(a, b)}")
        if self.nodes and len(self.component(self.nodes[0], None)) != len(self.nodes):
            raise InvalidTree("not connected")
        for x in self.nodes:
            self.down_slots(x)
            self.up_slots(x)
        return self

    # views -----------------------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    def is_full(self) -> bool:
        return self.node_count == self.n

    def to_cambrian(self) -> CambrianTree:
        if not self.is_full():
            raise ValueError("only trees with singleton nodes are Cambrian trees")
        return CambrianTree(self.signature, tuple((a[0], b[0]) for a, b in self.edges))

    @classmethod
    def from_cambrian(cls, T: CambrianTree) -> "SchroderCambrianTree":
        return cls(T.signature, tuple((v,) for v in range(1, T.n + 1)), tuple(((a,), (b,)) for a, b in T.edges))

    def shifted(self, k: int) -> tuple[tuple[Label, ...], tuple[tuple[Label, Label], ...]]:
        def sh(x):
            return tuple(v + k for v in x)

        return tuple(sh(x) for x in self.nodes), tuple((sh(a), sh(b)) for a, b in self.edges)

    def label_text(self, x: Label) -> str:
        return "".join(f"{v}{self.sign(v)}" for v in x)

    def to_json(self) -> dict:
        index = {x: i for i, x in enumerate(self.nodes)}

        def slot_ids(slots):
            return [None if y is LEAF else index[y] for y in slots]

        return {
            "n": self.n,
            "signature": self.signature,
            "nodes": [
                {
                    "id": index[x],
                    "label": list(x),
                    "signs": "".join(self.sign(v) for v in x),
                    "down": slot_ids(self.down_slots(x)),
                    "up": slot_ids(self.up_slots(x)),
                }
                for x in self.nodes
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SchroderCambrianTree":
        labels = {node["id"]: tuple(node["label"]) for node in data["nodes"]}
        edges = set()
        for node in data["nodes"]:
            x = labels[node["id"]]
            edges.update((labels[y], x) for y in node["down"] if y is not None)
            edges.update((x, labels[y]) for y in node["up"] if y is not None)
        return cls(data["signature"], tuple(labels.values()), tuple(edges)).validate()

    def __str__(self) -> str:
        arcs = " ".join(f"{self.label_text(a)}>{self.label_text(b)}" for a, b in self.edges)
        return f"{self.signature}{{{' '.join(self.label_text(x) for x in self.nodes)}}}[{arcs}]"

    def to_dot(self, name: str = "tree") -> str:
        index = {x: i for i, x in enumerate(self.nodes)}
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for x in self.nodes:
            lines.append(f'  v{index[x]} [label="{self.label_text(x)}", shape=box];')
        for a, b in self.edges:
            lines.append(f"  v{index[a]} -> v{index[b]};")
        lines.append("}")
        return "\n".join(lines)


EMPTY_SCHRODER = SchroderCambrianTree("", (), ())
EMPTY_PARTITION = SignedOrderedPartition(OrderedPartition(()), "")


# ---------------------------------------------------------------------------
# insertion


@dataclass(frozen=True)
class LeveledSchroderTree:
    tree: SchroderCambrianTree
    level: dict  # node label -> index of the part it came from (1-based)
    down_leaves: tuple[Label, ...]  # holders of the down-leaves, left to right
    up_leaves: tuple[Label, ...]

    def partition(self) -> SignedOrderedPartition:
        k = max(self.level.values(), default=0)
        parts = [[] for _ in range(k)]
        for x, lvl in self.level.items():
            parts[lvl - 1].extend(x)
        return SignedOrderedPartition.from_parts(parts, self.tree.signature)


def _level_nodes(lam: SignedOrderedPartition, k: int) -> list[Label]:
    """Split part k into nodes: neighbours stay together unless a wall crosses this level between them."""
    part = lam.parts[k]
    block, sig = lam.block_of, lam.vsign
    nodes, current = [], [part[0]]
    for x, y in zip(part, part[1:]):
        wall = any(
            (sig[z - 1] == "-" and block[z - 1] > k) or (sig[z - 1] == "+" and block[z - 1] < k)
            for z in range(x + 1, y)
        )
        if wall:
            nodes.append(tuple(current))
            current = []
        current.append(y)
    nodes.append(tuple(current))
    return nodes


def schroder_insert(lam: SignedOrderedPartition) -> LeveledSchroderTree:
    """Sweep the table of lam bottom to top, one level at a time."""
    n, sig = lam.n, lam.vsign
    # a region is [lo_gap, hi_gap, source]; source None means an untouched bottom strand
    regions: list[list] = []
    lo = 0
    for v in range(1, n + 1):
        if sig[v - 1] == "-":
            regions.append([lo, v - 1, LEAF])
            lo = v
    regions.append([lo, n, LEAF])
    edges: set[tuple[Label, Label]] = set()
    level: dict[Label, int] = {}
    gathered_bottom: dict[int, Label] = {}
    for k in range(lam.k):
        for node in _level_nodes(lam, k):
            level[node] = k + 1
            first, last = min(node), max(node)
            touched = [i for i, r in enumerate(regions) if r[0] <= last and r[1] >= first - 1]
            span_lo, span_hi = regions[touched[0]][0], regions[touched[-1]][1]
            for i in touched:
                src = regions[i][2]
                if src is LEAF:
                    gathered_bottom[regions[i][0]] = node
                else:
                    edges.add((src, node))
            cuts = [v for v in node if sig[v - 1] == "+"]
            bounds = [span_lo] + cuts + [span_hi + 1]
            fresh = [[bounds[j], bounds[j + 1] - 1, node] for j in range(len(bounds) - 1)]
            regions[touched[0]:touched[-1] + 1] = fresh
    tree = SchroderCambrianTree(sig, tuple(level), tuple(edges))
    down = tuple(gathered_bottom[g] for g in sorted(gathered_bottom))
    up = tuple(r[2] for r in regions) if n else ()
    return LeveledSchroderTree(tree, level, down, up)


def p_star_symbol(lam: SignedOrderedPartition) -> SchroderCambrianTree:
    return schroder_insert(lam).tree


def in_fiber(lam: SignedOrderedPartition, T: SchroderCambrianTree) -> bool:
    """Same node forces same part; an edge forces a strictly earlier part."""
    if lam.vsign != T.signature:
        return False
    b = lam.block_of
    for x in T.nodes:
        if len({b[v - 1] for v in x}) != 1:
            return False
    return all(b[x[0] - 1] < b[y[0] - 1] for x, y in T.edges)


def schroder_linear_extensions(T: SchroderCambrianTree) -> list[SignedOrderedPartition]:
    """Order the nodes into antichain blocks compatible with the edges, merging each block's labels."""
    out = []

    def rec(placed: frozenset, acc: list):
        if len(placed) == len(T.nodes):
            out.append(SignedOrderedPartition.from_parts(acc, T.signature))
            return
        ready = [x for x in T.nodes if x not in placed and all(c in placed for c in T.children[x])]
        for r in range(1, len(ready) + 1):
            for pick in combinations(ready, r):
                rec(placed | set(pick), acc + [[v for x in pick for v in x]])

    rec(frozenset(), [])
    return sorted(out)


def _leaves(T: SchroderCambrianTree) -> LeveledSchroderTree:
    if T.n == 0:
        return LeveledSchroderTree(T, {}, (), ())
    out = schroder_insert(schroder_linear_extensions(T)[0])
    if out.tree != T:
        raise AssertionError("re-insertion of a linear extension changed the tree")
    return out


# ---------------------------------------------------------------------------
# congruence


def _witness(lam: SignedOrderedPartition, lo: Sequence[int], hi: Sequence[int], before: set, after: set) -> bool:
    return any(
        (lam.sign(b) == "+" and b in before) or (lam.sign(b) == "-" and b in after)
        for b in range(max(lo) + 1, min(hi))
    )


def schroder_moves(lam: SignedOrderedPartition) -> Iterator[SignedOrderedPartition]:
    """One-step rewritings a|c <-> ac <-> c|a allowed by a witness between the two blocks."""
    parts = [list(p) for p in lam.parts]
    sig = lam.vsign

    def build(ps):
        return SignedOrderedPartition.from_parts(ps, sig)

    for i in range(len(parts) - 1):
        a, c = parts[i], parts[i + 1]
        if much_less(a, c):
            lo, hi = a, c
        elif much_less(c, a):
            lo, hi = c, a
        else:
            continue
        before = {v for p in parts[:i] for v in p}
        after = {v for p in parts[i + 2:] for v in p}
        if _witness(lam, lo, hi, before, after):
            yield build(parts[:i] + [a + c] + parts[i + 2:])
            yield build(parts[:i] + [c, a] + parts[i + 2:])
    for i, block in enumerate(parts):
        before = {v for p in parts[:i] for v in p}
        after = {v for p in parts[i + 1:] for v in p}
        for cut in range(1, len(block)):
            lo, hi = block[:cut], block[cut:]
            if _witness(lam, lo, hi, before, after):
                yield build(parts[:i] + [lo, hi] + parts[i + 1:])
                yield build(parts[:i] + [hi, lo] + parts[i + 1:])


def schroder_congruence_class(lam: SignedOrderedPartition) -> set[SignedOrderedPartition]:
    seen, queue = {lam}, deque([lam])
    while queue:
        cur = queue.popleft()
        for nxt in schroder_moves(cur):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def schroder_congruent(lam: SignedOrderedPartition, mu: SignedOrderedPartition) -> bool:
    if lam.vsign != mu.vsign:
        return False
    return mu in schroder_congruence_class(lam)


# ---------------------------------------------------------------------------
# enumeration and counting


@lru_cache(maxsize=None)
def _schroder_trees(sig: str) -> tuple[SchroderCambrianTree, ...]:
    return tuple(sorted({p_star_symbol(lam) for lam in signed_ordered_partitions(sig)}))


def schroder_trees(sig: str, nodes: int | None = None) -> list[SchroderCambrianTree]:
    trees = _schroder_trees(sig)
    return [T for T in trees if nodes is None or T.node_count == nodes]


def contract(T: SchroderCambrianTree, edge: tuple[Label, Label]) -> SchroderCambrianTree:
    a, b = edge
    if edge not in T.edges:
        raise ValueError(f"{edge} is not an edge of the tree")
    merged = tuple(sorted(a + b))

    def ren(x):
        return merged if x in (a, b) else x

    nodes = tuple(x for x in T.nodes if x not in (a, b)) + (merged,)
    edges = tuple((ren(x), ren(y)) for x, y in T.edges if (x, y) != edge)
    return SchroderCambrianTree(T.signature, nodes, edges)


def classify_contraction(T: SchroderCambrianTree, edge: tuple[Label, Label]) -> str:
    below, above = edge
    if much_less(below, above):
        return "increasing"
    if much_less(above, below):
        return "decreasing"
    return "non-monotone"


def schroder_trees_by_contraction(sig: str) -> list[SchroderCambrianTree]:
    """Independent enumeration: close the Cambrian trees under edge contraction."""
    seeds = [SchroderCambrianTree.from_cambrian(T) for T in cambrian_trees(sig)]
    seen, queue = set(seeds), deque(seeds)
    while queue:
        T = queue.popleft()
        for e in T.edges:
            S = contract(T, e)
            if S not in seen:
                seen.add(S)
                queue.append(S)
    return sorted(seen)


def count_by_nodes(sig: str, m: int) -> int:
    return len(schroder_trees(sig, nodes=m))


def super_catalan(n: int) -> int:
    """Number of dissections of an (n+2)-gon, all diagonal counts together."""
    return sum(dissection_count_formula(n, d) for d in range(max(n, 1)))


def dissection_count_formula(n: int, diagonals: int) -> int:
    """Dissections of an (n+2)-gon by ``diagonals`` non-crossing diagonals."""
    if n == 0:
        return 1 if diagonals == 0 else 0
    d = diagonals
    if d < 0 or d > n - 1:
        return 0
    return comb(n - 1, d) * comb(n + d + 1, d) // (d + 1)


def dissection_counts(n: int) -> list[int]:
    """Enumerate non-crossing diagonal sets of an (n+2)-gon; entry d counts those with d diagonals."""
    corners = n + 2
    diagonals = [
        (i, j) for i in range(corners) for j in range(i + 2, corners) if not (i == 0 and j == corners - 1)
    ]

    def crosses(p, q):
        (a, b), (c, d) = p, q
        return a < c < b < d or c < a < d < b

    counts = [0] * max(n, 1)

    def rec(k: int, chosen: list):
        if k == len(diagonals):
            counts[len(chosen)] += 1
            return
        rec(k + 1, chosen)
        if not any(crosses(diagonals[k], q) for q in chosen):
            chosen.append(diagonals[k])
            rec(k + 1, chosen)
            chosen.pop()

    rec(0, [])
    return counts


def alternate_count_expression(n: int, k: int):
    """Alternate closed form for node counts; kept to show it is not an integer at (3, 1)."""
    from fractions import Fraction

    return Fraction(comb(n + 2 + k, k + 1) * comb(n - 1, k + 1), k + 1)


# ---------------------------------------------------------------------------
# lattices


def contraction_arcs(T: SchroderCambrianTree) -> Iterator[tuple[str, SchroderCambrianTree]]:
    for e in T.edges:
        yield classify_contraction(T, e), contract(T, e)


@lru_cache(maxsize=None)
def schroder_lattice(sig: str) -> HasseDiagram:
    trees = schroder_trees(sig)
    idx = {T: i for i, T in enumerate(trees)}
    arcs = set()
    for T in trees:
        for kind, S in contraction_arcs(T):
            if kind == "increasing":
                arcs.add((idx[T], idx[S]))
            elif kind == "decreasing":
                arcs.add((idx[S], idx[T]))
    return HasseDiagram(trees, sorted(arcs))


def contraction_poset(sig: str) -> HasseDiagram:
    trees = schroder_trees(sig)
    return HasseDiagram.from_successors(trees, lambda T: [contract(T, e) for e in T.edges])


def non_monotone_contractions(sig: str) -> list[tuple[SchroderCambrianTree, tuple[Label, Label]]]:
    return [(T, e) for T in schroder_trees(sig) for e in T.edges if classify_contraction(T, e) == "non-monotone"]


@lru_cache(maxsize=None)
def partition_weak_order(n: int) -> HasseDiagram:
    return HasseDiagram.from_successors(ordered_partitions(n), partition_weak_order_covers)


def partition_weak_order_brute_force(n: int) -> HasseDiagram:
    """Same order built from coinversion tables of every pair."""
    elems = ordered_partitions(n)
    arcs = [
        (i, j) for i, a in enumerate(elems) for j, b in enumerate(elems) if i != j and weak_leq_partition(a, b)
    ]
    return HasseDiagram(elems, arcs)


def quotient_order(sig: str) -> HasseDiagram:
    """Order on trees induced by weak-order covers between their classes."""
    trees = schroder_trees(sig)
    idx = {T: i for i, T in enumerate(trees)}
    arcs = set()
    for lam in ordered_partitions(len(sig)):
        a = idx[p_star_symbol(SignedOrderedPartition(lam, sig))]
        for mu in partition_weak_order_covers(lam):
            b = idx[p_star_symbol(SignedOrderedPartition(mu, sig))]
            if a != b:
                arcs.add((a, b))
    return HasseDiagram(trees, sorted(arcs))


def class_extreme_tables(T: SchroderCambrianTree) -> tuple[dict, dict]:
    """Coinversion tables of the bottom and top of the class, read off the tree."""
    n = T.n
    low, high = {}, {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if T.node_of[i] == T.node_of[j]:
                low[i, j] = high[i, j] = 0
                continue
            low[i, j] = 1 if T.value_below(j, i) else -1
            high[i, j] = -1 if T.value_below(i, j) else 1
    return low, high


def class_extremes(T: SchroderCambrianTree) -> tuple[SignedOrderedPartition, SignedOrderedPartition]:
    """Bottom and top of the fiber in the weak order, found by comparison."""
    fiber = schroder_linear_extensions(T)
    bottom = [a for a in fiber if all(weak_leq_partition(a.partition, b.partition) for b in fiber)]
    top = [a for a in fiber if all(weak_leq_partition(b.partition, a.partition) for b in fiber)]
    if len(bottom) != 1 or len(top) != 1:
        raise AssertionError(f"class of {T} has no unique bottom or top")
    return bottom[0], top[0]


def class_is_interval(T: SchroderCambrianTree) -> bool:
    bottom, top = class_extremes(T)
    interval = {
        lam for lam in ordered_partitions(T.n)
        if weak_leq_partition(bottom.partition, lam) and weak_leq_partition(lam, top.partition)
    }
    return interval == {lam.partition for lam in schroder_linear_extensions(T)}


# ---------------------------------------------------------------------------
# canopy


def schroder_canopy(T: SchroderCambrianTree) -> str:
    out = []
    for i in range(1, T.n):
        if T.node_of[i] == T.node_of[i + 1]:
            out.append("0")
        elif T.value_below(i, i + 1):
            out.append("+")
        elif T.value_below(i + 1, i):
            out.append("-")
        else:
            raise AssertionError(f"{i} and {i + 1} are incomparable")
    return "".join(out)


def canopy_matches_recoils(sig: str) -> bool:
    return all(
        schroder_canopy(p_star_symbol(lam)) == partition_recoils(lam.partition)
        for lam in signed_ordered_partitions(sig)
    )


# ---------------------------------------------------------------------------
# ordered partitions algebra


def _f_product_basis(a, b) -> LinearCombination:
    return LinearCombination.sum_of(partition_shifted_shuffle(a, b))


def _f_coproduct_basis(m) -> TensorCombination:
    return TensorCombination((pair, 1) for pair in partition_prefix_splits(m))


def _g_product_basis(a, b) -> LinearCombination:
    return LinearCombination.sum_of(partition_convolution(a, b))


def _g_coproduct_basis(m) -> TensorCombination:
    return TensorCombination((pair, 1) for pair in partition_value_splits(m))


ORDPART = GradedBialgebra(EMPTY_PARTITION, _f_product_basis, _f_coproduct_basis)
ORDPART_DUAL = GradedBialgebra(EMPTY_PARTITION, _g_product_basis, _g_coproduct_basis)


def _p_star(lam: SignedOrderedPartition) -> SchroderCambrianTree:
    return p_star_symbol(lam) if lam.n else EMPTY_SCHRODER


def _fiber(T: SchroderCambrianTree) -> list[SignedOrderedPartition]:
    return schroder_linear_extensions(T) if T.n else [EMPTY_PARTITION]


def schroder_P(T: SchroderCambrianTree) -> LinearCombination:
    return LinearCombination.sum_of(_fiber(T))


def f_to_schroder_p(x: LinearCombination) -> LinearCombination:
    out: dict = {}
    for lam, c in x.terms.items():
        T = _p_star(lam)
        if out.setdefault(T, c) != c:
            raise ValueError(f"coefficients differ inside the class of {T}")
    result = LinearCombination(out)
    if result.expand(schroder_P) != x:
        raise ValueError("combination is not a sum of full Schröder classes")
    return result


def f_tensor_to_schroder_p(x: TensorCombination) -> TensorCombination:
    out: dict = {}
    for (a, b), c in x.terms.items():
        key = (_p_star(a), _p_star(b))
        if out.setdefault(key, c) != c:
            raise ValueError("tensor coefficients differ inside a pair of classes")
    result = TensorCombination(out)
    if result.map_sides(schroder_P, schroder_P) != x:
        raise ValueError("tensor is not a sum of full pairs of classes")
    return result


def g_to_schroder_q(x: LinearCombination) -> LinearCombination:
    return x.map_keys(_p_star)


def g_tensor_to_schroder_q(x: TensorCombination) -> TensorCombination:
    return TensorCombination(((_p_star(a), _p_star(b)), c) for (a, b), c in x.terms.items())


def schroder_representative(T: SchroderCambrianTree) -> SignedOrderedPartition:
    return _fiber(T)[0]


# P basis ---------------------------------------------------------------------


def graft_over(T: SchroderCambrianTree, U: SchroderCambrianTree) -> SchroderCambrianTree:
    """T below, shifted U above: T's rightmost up-leaf meets U's leftmost down-leaf."""
    if T.n == 0:
        return U
    if U.n == 0:
        return T
    nodes, edges = U.shifted(T.n)
    holder_below = _leaves(T).up_leaves[-1]
    holder_above = tuple(v + T.n for v in _leaves(U).down_leaves[0])
    return SchroderCambrianTree(
        T.signature + U.signature, T.nodes + nodes, T.edges + edges + ((holder_below, holder_above),)
    )


def graft_under(T: SchroderCambrianTree, U: SchroderCambrianTree) -> SchroderCambrianTree:
    """Shifted U below, T above: U's leftmost up-leaf meets T's rightmost down-leaf."""
    if T.n == 0:
        return U
    if U.n == 0:
        return T
    nodes, edges = U.shifted(T.n)
    holder_below = tuple(v + T.n for v in _leaves(U).up_leaves[0])
    holder_above = _leaves(T).down_leaves[-1]
    return SchroderCambrianTree(
        T.signature + U.signature, T.nodes + nodes, T.edges + edges + ((holder_below, holder_above),)
    )


def schroder_P_product(T: SchroderCambrianTree, U: SchroderCambrianTree) -> LinearCombination:
    """Sum of P over the lattice interval between the two graftings."""
    if T.n == 0 or U.n == 0:
        return LinearCombination.basis(U if T.n == 0 else T)
    lattice = schroder_lattice(T.signature + U.signature)
    return LinearCombination.sum_of(lattice.interval(graft_over(T, U).validate(), graft_under(T, U).validate()))


def schroder_P_product_via_F(T: SchroderCambrianTree, U: SchroderCambrianTree) -> LinearCombination:
    return f_to_schroder_p(ORDPART.mul(schroder_P(T), schroder_P(U)))


def restrict_to_nodes(T: SchroderCambrianTree, keep: Sequence[Label]) -> SchroderCambrianTree:
    """Induced subtree on a connected node set, relabelled to 1..k."""
    keep = set(keep)
    vals = sorted(v for x in keep for v in x)
    rank = {v: r for r, v in enumerate(vals, start=1)}

    def ren(x):
        return tuple(rank[v] for v in x)

    sig = "".join(T.sign(v) for v in vals)
    edges = tuple((ren(a), ren(b)) for a, b in T.edges if a in keep and b in keep)
    return SchroderCambrianTree(sig, tuple(ren(x) for x in keep), edges).validate()


def _node_components(T: SchroderCambrianTree, keep: set[Label]) -> list[list[Label]]:
    seen: set[Label] = set()
    out = []
    for x in sorted(keep):
        if x in seen:
            continue
        comp, stack = {x}, [x]
        while stack:
            y = stack.pop()
            for z in T.parents[y] + T.children[y]:
                if z in keep and z not in comp:
                    comp.add(z)
                    stack.append(z)
        seen |= comp
        out.append(sorted(comp))
    return out


def node_lower_sets(T: SchroderCambrianTree) -> list[frozenset[Label]]:
    """Node sets closed under going down; each one is a cut of T."""
    out: set[frozenset[Label]] = set()
    order = _topological(T)

    def rec(k: int, chosen: frozenset):
        if k == len(order):
            out.add(chosen)
            return
        x = order[k]
        rec(k + 1, chosen)
        if all(c in chosen for c in T.children[x]):
            rec(k + 1, chosen | {x})

    rec(0, frozenset())
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def _topological(T: SchroderCambrianTree) -> list[Label]:
    indeg = {x: len(T.children[x]) for x in T.nodes}
    ready = sorted(x for x, d in indeg.items() if d == 0)
    out = []
    while ready:
        x = ready.pop(0)
        out.append(x)
        for p in T.parents[x]:
            indeg[p] -= 1
            if indeg[p] == 0:
                ready.append(p)
        ready.sort()
    return out


def schroder_forest_product(T: SchroderCambrianTree, keep: set[Label]) -> LinearCombination:
    """Product of P over the components of the forest induced on ``keep``, left to right."""
    vals = sorted(v for x in keep for v in x)
    rank = {v: r for r, v in enumerate(vals, start=1)}
    comps = sorted(_node_components(T, keep), key=lambda c: min(v for x in c for v in x))
    result = LinearCombination.basis(EMPTY_SCHRODER)
    for comp in comps:
        block = sorted(rank[v] for x in comp for v in x)
        if block != list(range(block[0], block[-1] + 1)):
            raise AssertionError(f"forest component {comp} is not an interval after standardization")
        result = bilinear(result, LinearCombination.basis(restrict_to_nodes(T, comp)), schroder_P_product)
    return result


def schroder_P_coproduct(S: SchroderCambrianTree) -> TensorCombination:
    out = TensorCombination()
    everything = set(S.nodes)
    for low in node_lower_sets(S):
        out = out + TensorCombination.from_pair(
            schroder_forest_product(S, set(low)), schroder_forest_product(S, everything - low)
        )
    return out


def schroder_P_coproduct_by_cut(S: SchroderCambrianTree) -> list[TensorCombination]:
    """One tensor group per cut, in the order of ``node_lower_sets``."""
    everything = set(S.nodes)
    return [
        TensorCombination.from_pair(schroder_forest_product(S, set(low)), schroder_forest_product(S, everything - low))
        for low in node_lower_sets(S)
    ]


def schroder_P_coproduct_via_F(S: SchroderCambrianTree) -> TensorCombination:
    return f_tensor_to_schroder_p(ORDPART.delta(schroder_P(S)))


SCHRODER = GradedBialgebra(EMPTY_SCHRODER, schroder_P_product, schroder_P_coproduct)


# Q basis ---------------------------------------------------------------------


def schroder_restrict_interval(T: SchroderCambrianTree, lo: int, hi: int) -> SchroderCambrianTree:
    """Part of T on values lo..hi; nodes straddling the boundary are split.

    X -> Y when a directed path joins them through nodes with no value in the interval.
    """
    inside = range(lo, hi + 1)

    def piece(x):
        return tuple(v - lo + 1 for v in x if lo <= v <= hi)

    edges = set()
    for x in T.nodes:
        if not piece(x):
            continue
        stack, seen = list(T.parents[x]), set()
        while stack:
            y = stack.pop()
            if y in seen:
                continue
            seen.add(y)
            if piece(y):
                edges.add((piece(x), piece(y)))
            else:
                stack.extend(T.parents[y])
    nodes = tuple(piece(x) for x in T.nodes if piece(x))
    sig = "".join(T.sign(v) for v in inside)
    return SchroderCambrianTree(sig, nodes, tuple(edges)).validate()


def schroder_dual_product_tree(
    T: SchroderCambrianTree, U: SchroderCambrianTree, low_values: tuple[int, ...]
) -> SchroderCambrianTree:
    """T's values go to ``low_values`` and U's to the rest; T is cut by U's negative walls,
    U by T's positive walls, and the strands are reconnected left to right."""
    n = T.n + U.n
    low = list(low_values)
    high = [v for v in range(1, n + 1) if v not in set(low)]
    sig = [""] * n
    for k, v in enumerate(low):
        sig[v - 1] = T.signature[k]
    for k, v in enumerate(high):
        sig[v - 1] = U.signature[k]
    cuts_T = [sum(1 for x in low if x < high[k]) for k in range(U.n) if U.signature[k] == "-"]
    cuts_U = [sum(1 for x in high if x < low[k]) for k in range(T.n) if T.signature[k] == "+"]

    nodes: list[Label] = []
    edges: list[tuple[Label, Label]] = []

    def lay_out(tree, cuts, place, leaves_of):
        strands = []
        bounds = [0] + sorted(cuts) + [tree.n]
        for a, b in zip(bounds, bounds[1:]):
            if a == b:
                strands.append(LEAF)
                continue
            part = schroder_restrict_interval(tree, a + 1, b)

            def ren(x):
                return tuple(place[a + v - 1] for v in x)

            nodes.extend(ren(x) for x in part.nodes)
            edges.extend((ren(x), ren(y)) for x, y in part.edges)
            strands.extend(ren(x) for x in leaves_of(_leaves(part)))
        return strands

    below = lay_out(T, cuts_T, low, lambda lv: lv.up_leaves)
    above = lay_out(U, cuts_U, high, lambda lv: lv.down_leaves)
    if len(below) != len(above):
        raise AssertionError("strand counts disagree between the two halves")
    edges.extend((a, b) for a, b in zip(below, above) if a is not LEAF and b is not LEAF)
    return SchroderCambrianTree("".join(sig), tuple(nodes), tuple(edges)).validate()


def schroder_Q_product(T: SchroderCambrianTree, U: SchroderCambrianTree) -> LinearCombination:
    n = T.n + U.n
    return LinearCombination(
        (schroder_dual_product_tree(T, U, low), 1) for low in combinations(range(1, n + 1), T.n)
    )


def schroder_Q_product_via_G(T: SchroderCambrianTree, U: SchroderCambrianTree) -> LinearCombination:
    return g_to_schroder_q(
        ORDPART_DUAL.mul(
            LinearCombination.basis(schroder_representative(T)), LinearCombination.basis(schroder_representative(U))
        )
    )


def schroder_Q_coproduct(S: SchroderCambrianTree) -> TensorCombination:
    return TensorCombination(
        ((_restrict_or_empty(S, 1, g), _restrict_or_empty(S, g + 1, S.n)), 1) for g in range(S.n + 1)
    )


def _restrict_or_empty(S: SchroderCambrianTree, lo: int, hi: int) -> SchroderCambrianTree:
    return EMPTY_SCHRODER if lo > hi else schroder_restrict_interval(S, lo, hi)


def schroder_Q_coproduct_via_G(S: SchroderCambrianTree) -> TensorCombination:
    return g_tensor_to_schroder_q(ORDPART_DUAL.delta(LinearCombination.basis(schroder_representative(S))))


SCHRODER_DUAL = GradedBialgebra(EMPTY_SCHRODER, schroder_Q_product, schroder_Q_coproduct)


# ---------------------------------------------------------------------------
# trilean subalgebra and the projection onto Cambrian trees


def trilean_X(chi: str) -> LinearCombination:
    """Sum of P over all trees of size len(chi)+1, any signature, with canopy chi."""
    n = len(chi) + 1
    return LinearCombination.sum_of(
        T for sig in all_signatures(n) for T in schroder_trees(sig) if schroder_canopy(T) == chi
    )


def schroder_p_to_x(x: LinearCombination) -> dict[tuple[str, str], int]:
    """Group by (signature, canopy); fails unless x is constant on every canopy fiber it meets."""
    out: dict = {}
    for T, c in x.terms.items():
        key = (T.signature, schroder_canopy(T))
        if out.setdefault(key, c) != c:
            raise ValueError(f"coefficient not constant on canopy fiber {key}")
    for (sig, chi), c in out.items():
        if any(x.coefficient(T) != c for T in schroder_trees(sig) if schroder_canopy(T) == chi):
            raise ValueError(f"canopy fiber {chi} on {sig} only partially present")
    return out


def project_to_cambrian(x: LinearCombination) -> LinearCombination:
    """Keep full trees as Cambrian trees and drop every tree with a merged node."""
    return LinearCombination(
        (T.to_cambrian() if T.n else CambrianTree("", ()), c) for T, c in x.terms.items() if T.is_full()
    )


def projection_respects_product(T: SchroderCambrianTree, U: SchroderCambrianTree) -> bool:
    lhs = project_to_cambrian(schroder_P_product(T, U))
    rhs = camb_P_product(T.to_cambrian(), U.to_cambrian())
    return lhs == rhs


def p_star_extends_p_symbol(sig: str) -> bool:
    """On partitions into singletons the insertion recovers the Cambrian P-symbol."""
    for lam in signed_ordered_partitions(sig):
        if lam.is_permutation():
            if p_star_symbol(lam) != SchroderCambrianTree.from_cambrian(p_symbol(lam.to_permutation())):
                return False
    return True


def cambrian_restriction_holds(sig: str) -> bool:
    """The order induced on full trees equals the Cambrian lattice."""
    lat = schroder_lattice(sig)
    full = [T for T in lat.elements if T.is_full()]
    camb = cambrian_lattice(sig)
    for a in full:
        for b in full:
            if lat.leq(a, b) != camb.leq(a.to_cambrian(), b.to_cambrian()):
                return False
    return len(full) == len(camb)
