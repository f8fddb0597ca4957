"""Cambrian trees: insertion, linear extensions, congruence, rotations, lattices.

A Cambrian tree on ``1..n`` with signature ``sig`` is stored as its directed
edge set; an edge ``(i, j)`` means ``i`` sits below ``j``.  The left/right
placement of every subtree is forced by its labels, so the edge set plus the
signature is a canonical form.  ``validate`` checks the slot conditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .perm_core import SignedPermutation, all_signatures, check_signature, recoils
from .posets import HasseDiagram

LEAF = 0


class InvalidTree(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CambrianTree:
    signature: str
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        check_signature(self.signature)
        object.__setattr__(self, "edges", tuple(sorted(set(self.edges))))

    @property
    def n(self) -> int:
        return len(self.signature)

    def sign(self, v: int) -> str:
        return self.signature[v - 1]

    @cached_property
    def parents(self) -> dict[int, list[int]]:
        out = {v: [] for v in range(1, self.n + 1)}
        for a, b in self.edges:
            out[a].append(b)
        return {v: sorted(p) for v, p in out.items()}

    @cached_property
    def children(self) -> dict[int, list[int]]:
        out = {v: [] for v in range(1, self.n + 1)}
        for a, b in self.edges:
            out[b].append(a)
        return {v: sorted(c) for v, c in out.items()}

    @cached_property
    def above(self) -> dict[int, frozenset[int]]:
        """above[v]: vertices reachable from v by a nonempty directed path."""
        memo: dict[int, frozenset[int]] = {}

        def go(v):
            if v not in memo:
                acc = set()
                for p in self.parents[v]:
                    acc.add(p)
                    acc |= go(p)
                memo[v] = frozenset(acc)
            return memo[v]

        for v in range(1, self.n + 1):
            go(v)
        return memo

    def is_below(self, i: int, j: int) -> bool:
        return j in self.above[i]

    def component(self, start: int, removed: int) -> set[int]:
        """Vertices of the subtree hanging at ``start`` once ``removed`` is deleted."""
        seen, stack = {start}, [start]
        while stack:
            v = stack.pop()
            for w in self.parents[v] + self.children[v]:
                if w != removed and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    # slots -----------------------------------------------------------------

    def down_intervals(self, v: int) -> list[tuple[int, int]]:
        return [(1, v - 1), (v + 1, self.n)] if self.sign(v) == "-" else [(1, self.n)]

    def up_intervals(self, v: int) -> list[tuple[int, int]]:
        return [(1, v - 1), (v + 1, self.n)] if self.sign(v) == "+" else [(1, self.n)]

    def _fill(self, v: int, neighbours: list[int], intervals) -> list[int]:
        slots = [LEAF] * len(intervals)
        for w in neighbours:
            if len(intervals) == 1:
                k = 0
            else:
                k = 0 if w < v else 1
            if slots[k] != LEAF:
                raise InvalidTree(f"vertex {v} has two subtrees in one slot")
            slots[k] = w
        return slots

    def down_slots(self, v: int) -> list[int]:
        """Children of v in slot order, LEAF for an empty slot."""
        return self._fill(v, self.children[v], self.down_intervals(v))

    def up_slots(self, v: int) -> list[int]:
        return self._fill(v, self.parents[v], self.up_intervals(v))

    def validate(self) -> "CambrianTree":
        n = self.n
        if len(self.edges) != max(n - 1, 0):
            raise InvalidTree(f"{len(self.edges)} edges for {n} vertices")
        for a, b in self.edges:
            if not (1 <= a <= n and 1 <= b <= n) or a == b:
                raise InvalidTree(f"bad edge {(a, b)}")
        if n and len(self.component(1, removed=0)) != n:
            raise InvalidTree("not connected")
        adjacent = {v: self.parents[v] + self.children[v] for v in range(1, n + 1)}
        for v in range(1, n + 1):
            ins, outs = len(self.children[v]), len(self.parents[v])
            negative = self.signature[v - 1] == "-"
            if negative and (ins > 2 or outs > 1):
                raise InvalidTree(f"negative vertex {v} has wrong degrees")
            if not negative and (ins > 1 or outs > 2):
                raise InvalidTree(f"positive vertex {v} has wrong degrees")
            # only the two-slot side constrains labels; the other side spans everything
            split_side = self.children[v] if negative else self.parents[v]
            if len(split_side) == 2 and (split_side[0] < v) == (split_side[1] < v):
                raise InvalidTree(f"vertex {v} has two subtrees in one slot")
            for w in split_side:
                seen, stack = {w}, [w]
                while stack:
                    for x in adjacent[stack.pop()]:
                        if x != v and x not in seen:
                            seen.add(x)
                            stack.append(x)
                if (max(seen) > v) if w < v else (min(seen) < v):
                    raise InvalidTree(f"subtree at {w} of vertex {v} crosses {v}")
        return self

    # basic views -----------------------------------------------------------

    def reverse(self) -> "CambrianTree":
        """Flip every edge; signs flip too so the result is again a Cambrian tree."""
        flipped = self.signature.translate(str.maketrans("+-", "-+"))
        return CambrianTree(flipped, tuple((b, a) for a, b in self.edges))

    def shift(self, k: int) -> tuple[tuple[int, int], ...]:
        return tuple((a + k, b + k) for a, b in self.edges)

    def relabel(self, mapping: dict[int, int], signature: str) -> "CambrianTree":
        return CambrianTree(signature, tuple((mapping[a], mapping[b]) for a, b in self.edges))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "signature": self.signature,
            "nodes": [
                {"label": v, "sign": self.sign(v), "up": self.up_slots(v), "down": self.down_slots(v)}
                for v in range(1, self.n + 1)
            ],
        }

    def __str__(self) -> str:
        arcs = " ".join(f"{a}>{b}" for a, b in self.edges)
        return f"{self.signature}[{arcs}]"

    def to_dot(self, name: str = "tree") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for v in range(1, self.n + 1):
            glyph = "⊖" if self.sign(v) == "-" else "⊕"
            lines.append(f'  v{v} [label="{v} {glyph}", shape=circle];')
        for a, b in self.edges:
            lines.append(f"  v{a} -> v{b};")
        lines.append("}")
        return "\n".join(lines)

    @classmethod
    def from_json(cls, data: dict) -> "CambrianTree":
        edges = set()
        for node in data["nodes"]:
            v = node["label"]
            edges.update((w, v) for w in node["down"] if w != LEAF)
            edges.update((v, w) for w in node["up"] if w != LEAF)
        return cls(data["signature"], tuple(edges)).validate()


EMPTY_TREE = CambrianTree("", ())


@dataclass(frozen=True)
class LeveledCambrianTree:
    tree: CambrianTree
    level: tuple[int, ...]  # level[v-1] of vertex v

    def validate(self) -> "LeveledCambrianTree":
        self.tree.validate()
        if sorted(self.level) != list(range(1, self.tree.n + 1)):
            raise InvalidTree("levels are not a bijection")
        for a, b in self.tree.edges:
            if self.level[a - 1] >= self.level[b - 1]:
                raise InvalidTree(f"edge {a}->{b} goes down in level")
        return self

    def permutation(self) -> SignedPermutation:
        """Inverse of the insertion: read vertices by increasing level."""
        word = sorted(range(1, self.tree.n + 1), key=lambda v: self.level[v - 1])
        return SignedPermutation(tuple(word), self.tree.signature)


@dataclass(frozen=True, order=True)
class EdgeCut:
    source: frozenset[int]
    target: frozenset[int]

    def is_splitting(self) -> bool:
        return self.source == frozenset(range(1, len(self.source) + 1))


# ---------------------------------------------------------------------------
# insertion


def insert(t: SignedPermutation) -> LeveledCambrianTree:
    """Sweep the table of t bottom to top, merging and splitting strands at the dots."""
    n, sig = t.n, t.vsign
    # a region is [lo_gap, hi_gap, source]; gap g lies between values g and g+1
    regions: list[list] = []
    lo = 0
    for v in range(1, n + 1):
        if sig[v - 1] == "-":
            regions.append([lo, v - 1, LEAF])
            lo = v
    regions.append([lo, n, LEAF])
    edges = []
    for v in t.values:
        if sig[v - 1] == "-":
            k = next(i for i, r in enumerate(regions) if r[1] == v - 1)
            left, right = regions[k], regions[k + 1]
            edges.extend((s, v) for s in (left[2], right[2]) if s != LEAF)
            regions[k:k + 2] = [[left[0], right[1], v]]
        else:
            k = next(i for i, r in enumerate(regions) if r[0] <= v - 1 and v <= r[1])
            r = regions[k]
            if r[2] != LEAF:
                edges.append((r[2], v))
            regions[k:k + 1] = [[r[0], v - 1, v], [v, r[1], v]]
    level = [0] * n
    for i, v in enumerate(t.values, start=1):
        level[v - 1] = i
    return LeveledCambrianTree(CambrianTree(sig, tuple(edges)), tuple(level))


def p_symbol(t: SignedPermutation) -> CambrianTree:
    return insert(t).tree


def q_symbol(t: SignedPermutation) -> tuple[int, ...]:
    return insert(t).level


def decreasing_tree_of_inverse(t: SignedPermutation) -> CambrianTree:
    """Binary search tree construction used as an independent check for (-)^n.

    Inserting tau(n), ..., tau(1) as leaves of a search tree rooted at the top
    gives edges child -> parent.
    """
    edges = []
    root = None
    children: dict[int, list] = {}
    for v in reversed(t.values):
        if root is None:
            root = v
            children[v] = [None, None]
            continue
        cur = root
        while True:
            side = 0 if v < cur else 1
            nxt = children[cur][side]
            if nxt is None:
                children[cur][side] = v
                children[v] = [None, None]
                edges.append((v, cur))
                break
            cur = nxt
    return CambrianTree(t.vsign, tuple(edges))


def increasing_tree_of_inverse(t: SignedPermutation) -> CambrianTree:
    """Mirror construction for (+)^n: insert tau(1), ..., tau(n) growing upward."""
    edges = []
    root = None
    parents: dict[int, list] = {}
    for v in t.values:
        if root is None:
            root = v
            parents[v] = [None, None]
            continue
        cur = root
        while True:
            side = 0 if v < cur else 1
            nxt = parents[cur][side]
            if nxt is None:
                parents[cur][side] = v
                parents[v] = [None, None]
                edges.append((cur, v))
                break
            cur = nxt
    return CambrianTree(t.vsign, tuple(edges))


# ---------------------------------------------------------------------------
# linear extensions


def linear_extensions(T: CambrianTree) -> list[SignedPermutation]:
    n = T.n
    indeg = {v: len(T.children[v]) for v in range(1, n + 1)}
    out: list[SignedPermutation] = []
    word: list[int] = []

    def rec():
        if len(word) == n:
            out.append(SignedPermutation(tuple(word), T.signature))
            return
        for v in range(1, n + 1):
            if indeg[v] == 0:
                indeg[v] = -1
                word.append(v)
                for p in T.parents[v]:
                    indeg[p] -= 1
                rec()
                for p in T.parents[v]:
                    indeg[p] += 1
                word.pop()
                indeg[v] = 0

    rec()
    return out


def _greedy_extension(T: CambrianTree, pick) -> SignedPermutation:
    indeg = {v: len(T.children[v]) for v in range(1, T.n + 1)}
    avail = {v for v, d in indeg.items() if d == 0}
    word = []
    while avail:
        v = pick(avail)
        avail.remove(v)
        word.append(v)
        for p in T.parents[v]:
            indeg[p] -= 1
            if indeg[p] == 0:
                avail.add(p)
    return SignedPermutation(tuple(word), T.signature)


def min_linear_extension(T: CambrianTree) -> SignedPermutation:
    return _greedy_extension(T, min)


def max_linear_extension(T: CambrianTree) -> SignedPermutation:
    return _greedy_extension(T, max)


# ---------------------------------------------------------------------------
# congruence


def rewriting_moves(t: SignedPermutation) -> Iterator[SignedPermutation]:
    """Adjacent swaps allowed by the Cambrian rewriting rules (both directions)."""
    w, pos = t.values, t.positions
    for k in range(len(w) - 1):
        a, c = sorted((w[k], w[k + 1]))
        for b in range(a + 1, c):
            after = pos[b - 1] > k + 1
            if (t.sign(b) == "-" and after) or (t.sign(b) == "+" and not after):
                nw = list(w)
                nw[k], nw[k + 1] = nw[k + 1], nw[k]
                yield SignedPermutation(tuple(nw), t.vsign)
                break


def congruence_class(t: SignedPermutation) -> set[SignedPermutation]:
    seen, stack = {t}, [t]
    while stack:
        for u in rewriting_moves(stack.pop()):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def congruent(t: SignedPermutation, u: SignedPermutation) -> bool:
    if t.vsign != u.vsign:
        raise ValueError("congruence compares permutations with the same value signature")
    return u in congruence_class(t)


# ---------------------------------------------------------------------------
# canopy, cuts


def canopy(T: CambrianTree) -> str:
    return "".join("-" if T.is_below(i + 1, i) else "+" for i in range(1, T.n))


def edge_cuts(T: CambrianTree) -> list[EdgeCut]:
    out = []
    for a, b in T.edges:
        src = T.component(a, removed=b)
        out.append(EdgeCut(frozenset(src), frozenset(set(range(1, T.n + 1)) - src)))
    return sorted(out, key=lambda c: (sorted(c.source), sorted(c.target)))


def is_splitting(c: EdgeCut) -> bool:
    return c.is_splitting()


def is_E_indecomposable(T: CambrianTree) -> bool:
    return not any(c.is_splitting() for c in edge_cuts(T))


# ---------------------------------------------------------------------------
# rotations


def rotate(T: CambrianTree, edge: tuple[int, int]) -> CambrianTree:
    i, j = edge
    if (i, j) not in T.edges:
        raise ValueError(f"{i}->{j} is not an edge of {T}")
    if i > j:
        # decreasing direction: rotate in the reversed tree, where the edge increases
        return rotate(T.reverse(), (j, i)).reverse()
    edges = set(T.edges)
    # B: the incoming subtree of i other than its left subtree
    b = T.down_slots(i)[1] if T.sign(i) == "-" else T.down_slots(i)[0]
    # A: the outgoing subtree of j other than its right subtree
    a = T.up_slots(j)[0]
    edges.discard((i, j))
    edges.add((j, i))
    if b != LEAF:
        edges.discard((b, i))
        edges.add((b, j))
    if a != LEAF:
        edges.discard((j, a))
        edges.add((i, a))
    return CambrianTree(T.signature, tuple(edges))


def increasing_rotations(T: CambrianTree) -> list[CambrianTree]:
    return [rotate(T, e) for e in T.edges if e[0] < e[1]]


def path_tree(sig: str, increasing: bool = True) -> CambrianTree:
    n = len(sig)
    edges = [(k, k + 1) if increasing else (k + 1, k) for k in range(1, n)]
    return CambrianTree(sig, tuple(edges))


# ---------------------------------------------------------------------------
# free gaps and enumeration


def avoids_cambrian_patterns(word: Sequence[int], sig: str) -> bool:
    """No b̄-ac with sign(b)=+ before, and no ac-b̲ with sign(b)=- after (a<b<c, ac adjacent)."""
    pos = {v: i for i, v in enumerate(word)}
    for k in range(len(word) - 1):
        a, c = word[k], word[k + 1]
        if a > c:
            continue
        for b in range(a + 1, c):
            s = sig[b - 1]
            if (s == "+" and pos[b] < k) or (s == "-" and pos[b] > k + 1):
                return False
    return True


def free_gaps(t: SignedPermutation) -> list[int]:
    """Gaps 0..n where inserting n+1 keeps the Cambrian patterns avoided."""
    out = []
    sig = t.vsign + "+"
    for g in range(t.n + 1):
        word = t.values[:g] + (t.n + 1,) + t.values[g:]
        if avoids_cambrian_patterns(word, sig):
            out.append(g)
    return out


def class_maximal_permutations(sig: str) -> list[SignedPermutation]:
    """Leaves of the generating tree: insert each new maximum at every free gap."""
    level = [SignedPermutation((), "")]
    for m in range(1, len(sig) + 1):
        nxt = []
        for t in level:
            for g in free_gaps(t):
                word = t.values[:g] + (m,) + t.values[g:]
                nxt.append(SignedPermutation(word, sig[:m]))
        level = nxt
    return level


@lru_cache(maxsize=None)
def _trees(sig: str) -> tuple[CambrianTree, ...]:
    return tuple(sorted({p_symbol(t) for t in class_maximal_permutations(sig)}))


def cambrian_trees(sig: str) -> list[CambrianTree]:
    """All sig-Cambrian trees, sorted."""
    return list(_trees(check_signature(sig)))


def cambrian_trees_by_rotation(sig: str) -> list[CambrianTree]:
    """Independent enumeration: everything reachable from the minimal path by rotations."""
    start = path_tree(sig)
    seen, stack = {start}, [start]
    while stack:
        T = stack.pop()
        for e in T.edges:
            U = rotate(T, e)
            if U not in seen:
                seen.add(U)
                stack.append(U)
    return sorted(seen)


def catalan(n: int) -> int:
    from math import comb
    return comb(2 * n, n) // (n + 1)


# ---------------------------------------------------------------------------
# lattices


@lru_cache(maxsize=None)
def cambrian_lattice(sig: str) -> HasseDiagram:
    return HasseDiagram.from_successors(cambrian_trees(sig), increasing_rotations)


def weak_order_lattice(sig: str) -> HasseDiagram:
    """Weak order on signed permutations of a fixed signature (arcs = adjacent ascents swapped)."""
    from .perm_core import signed_permutations

    def succ(t):
        w = t.values
        for k in range(len(w) - 1):
            if w[k] < w[k + 1]:
                nw = list(w)
                nw[k], nw[k + 1] = nw[k + 1], nw[k]
                yield SignedPermutation(tuple(nw), t.vsign)

    return HasseDiagram.from_successors(sorted(signed_permutations(sig)), succ)


# ---------------------------------------------------------------------------
# switch-sign maps


def switch_signature(sig: str, i: int) -> str:
    n = len(sig)
    s = list(sig)
    flip = {"+": "-", "-": "+"}
    if i == 0:
        s[0] = flip[s[0]]
    elif i == n:
        s[-1] = flip[s[-1]]
    else:
        s[i - 1], s[i] = s[i], s[i - 1]
    return "".join(s)


def switch_sign_map(T: CambrianTree, i: int) -> CambrianTree:
    n = T.n
    new_sig = switch_signature(T.signature, i)
    if i in (0, n):
        # the extreme leaf flips direction; the arcs between vertices are unchanged
        return CambrianTree(new_sig, T.edges)
    if T.sign(i) == T.sign(i + 1):
        raise ValueError(f"signs at {i} and {i + 1} agree; the map is not defined")
    pos, neg = (i, i + 1) if T.sign(i) == "+" else (i + 1, i)
    if (pos, neg) in T.edges:
        edges = [e for e in T.edges if e != (pos, neg)] + [(neg, pos)]
        return CambrianTree(new_sig, tuple(edges))
    swap = {i: i + 1, i + 1: i}
    return CambrianTree(new_sig, tuple((swap.get(a, a), swap.get(b, b)) for a, b in T.edges))


# ---------------------------------------------------------------------------
# indecomposables


def E_indecomposables(sig: str) -> list[CambrianTree]:
    return [T for T in cambrian_trees(sig) if is_E_indecomposable(T)]


def E_indecomposable_generator_word(sig: str) -> SignedPermutation:
    """Unique linear extension of the minimal indecomposable tree.

    Vertex 1 counts as positive and vertex n as negative.  Both the negatives
    and the positives appear in increasing order; each positive other than the
    last one sits right after the first negative exceeding the next positive,
    and the last positive closes the word.
    """
    n = len(sig)
    if n == 1:
        return SignedPermutation((1,), sig)
    negs = [v for v in range(2, n) if sig[v - 1] == "-"] + [n]
    poss = [1] + [v for v in range(2, n) if sig[v - 1] == "+"]
    after: dict[int, list[int]] = {v: [] for v in negs}
    for k in range(len(poss) - 1):
        anchor = next(v for v in negs if v > poss[k + 1])
        after[anchor].append(poss[k])
    word = []
    for v in negs:
        word.append(v)
        word.extend(after[v])
    word.append(poss[-1])
    return SignedPermutation(tuple(word), sig)


def E_indecomposable_generator(sig: str) -> CambrianTree:
    return p_symbol(E_indecomposable_generator_word(sig))


def signatures(n: int) -> list[str]:
    return all_signatures(n)


def check_commutative_diagram(sig: str) -> bool:
    from .perm_core import signed_permutations

    return all(canopy(p_symbol(t)) == recoils(t) for t in signed_permutations(sig))
