"""Finite posets given by cover arcs, with bitset reachability."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence


@dataclass
class HasseDiagram:
    """Elements plus cover arcs (i, j) meaning elements[i] < elements[j].

    The arc list may contain non-covers (e.g. every rotation of a lattice);
    the order is its reflexive-transitive closure.
    """

    elements: list
    arcs: list[tuple[int, int]]
    index: dict = field(init=False, repr=False)
    _up: list[int] | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate elements in poset")

    @classmethod
    def from_successors(cls, elements: Sequence, successors: Callable[[Hashable], Iterable]) -> "HasseDiagram":
        elements = list(elements)
        idx = {e: i for i, e in enumerate(elements)}
        arcs = set()
        for e in elements:
            for f in successors(e):
                if f not in idx:
                    raise ValueError(f"successor {f!r} is outside the element set")
                arcs.add((idx[e], idx[f]))
        return cls(elements, sorted(arcs))

    @classmethod
    def closure(cls, seeds: Iterable, successors: Callable[[Hashable], Iterable], key=None) -> "HasseDiagram":
        """Explore everything reachable from the seeds."""
        seen, order, queue = set(), [], deque(seeds)
        while queue:
            e = queue.popleft()
            if e in seen:
                continue
            seen.add(e)
            order.append(e)
            queue.extend(f for f in successors(e) if f not in seen)
        order.sort(key=key)
        return cls.from_successors(order, successors)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def up_sets(self) -> list[int]:
        """up_sets[i] is a bitmask of all j with elements[i] <= elements[j]."""
        if self._up is None:
            n = len(self.elements)
            succ = [[] for _ in range(n)]
            indeg = [0] * n
            for a, b in self.arcs:
                succ[a].append(b)
                indeg[b] += 1
            order, queue = [], deque(i for i in range(n) if indeg[i] == 0)
            while queue:
                a = queue.popleft()
                order.append(a)
                for b in succ[a]:
                    indeg[b] -= 1
                    if indeg[b] == 0:
                        queue.append(b)
            if len(order) != n:
                raise ValueError("arcs contain a directed cycle")
            up = [0] * n
            for a in reversed(order):
                mask = 1 << a
                for b in succ[a]:
                    mask |= up[b]
                up[a] = mask
            self._up = up
        return self._up

    def leq(self, a, b) -> bool:
        return bool(self.up_sets[self.index[a]] >> self.index[b] & 1)

    def _members(self, mask: int) -> list[int]:
        out, i = [], 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return out

    def down_sets(self) -> list[int]:
        n = len(self.elements)
        down = [0] * n
        for i, m in enumerate(self.up_sets):
            for j in self._members(m):
                down[j] |= 1 << i
        return down

    def interval(self, a, b) -> list:
        mask = self.up_sets[self.index[a]] & self.down_sets()[self.index[b]]
        return [self.elements[i] for i in self._members(mask)]

    def minimal(self) -> list:
        down = self.down_sets()
        return [self.elements[i] for i in range(len(self)) if down[i] == 1 << i]

    def maximal(self) -> list:
        return [self.elements[i] for i, m in enumerate(self.up_sets) if m == 1 << i]

    def join(self, a, b):
        """Least upper bound, or None when it does not exist."""
        common = self.up_sets[self.index[a]] & self.up_sets[self.index[b]]
        for z in self._members(common):
            if self.up_sets[z] == common:
                return self.elements[z]
        return None

    def meet(self, a, b):
        down = self.down_sets()
        common = down[self.index[a]] & down[self.index[b]]
        for z in self._members(common):
            if down[z] == common:
                return self.elements[z]
        return None

    def is_lattice(self) -> bool:
        n = len(self.elements)
        up, down = self.up_sets, self.down_sets()
        up_index = {m: i for i, m in enumerate(up)}
        down_index = {m: i for i, m in enumerate(down)}
        for i in range(n):
            for j in range(i + 1, n):
                if (up[i] & up[j]) not in up_index or (down[i] & down[j]) not in down_index:
                    return False
        return True

    def cover_arcs(self) -> list[tuple[int, int]]:
        """Transitive reduction of the arc set."""
        up = self.up_sets
        out = []
        for a in range(len(self.elements)):
            strict = up[a] & ~(1 << a)
            for b in self._members(strict):
                # b covers a iff nothing strictly between
                between = strict & ~up[b]
                if not any(up[c] >> b & 1 for c in self._members(between)):
                    out.append((a, b))
        return out

    def ranks(self) -> list[int]:
        """Length of the longest chain from a minimal element."""
        rank = [0] * len(self.elements)
        covers = self.cover_arcs()
        changed = True
        while changed:
            changed = False
            for a, b in covers:
                if rank[b] < rank[a] + 1:
                    rank[b] = rank[a] + 1
                    changed = True
        return rank

    def same_order_as(self, other: "HasseDiagram") -> bool:
        """Same element set and same order relation."""
        if set(self.elements) != set(other.elements):
            return False
        return all(
            self.leq(a, b) == other.leq(a, b) for a in self.elements for b in self.elements
        )

    def to_dot(self, label: Callable[[Hashable], str] = str, name: str = "poset") -> str:
        rank = self.ranks()
        lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
        for i, e in enumerate(self.elements):
            lines.append(f'  n{i} [label="{label(e)}"];')
        by_rank: dict[int, list[int]] = {}
        for i, r in enumerate(rank):
            by_rank.setdefault(r, []).append(i)
        for r in sorted(by_rank):
            lines.append("  { rank=same; " + " ".join(f"n{i};" for i in by_rank[r]) + " }")
        for a, b in self.cover_arcs():
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines)
