"""Signed permutations, signed ordered partitions and their products.

A signed permutation stores its one-line word together with a sign per
*value*.  Signed ordered partitions store their blocks together with a sign
per value.  Both carry the shifted shuffle (signs travel with values) and the
convolution (signs stay with positions) used by every algebra in the package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, Sequence

SIGNS = "+-"


def check_signature(sig: str) -> str:
    bad = [i for i, s in enumerate(sig) if s not in SIGNS]
    if bad:
        raise ValueError(f"invalid sign {sig[bad[0]]!r} at position {bad[0]} in signature {sig!r}")
    return sig


def all_signatures(n: int) -> list[str]:
    return ["".join(p) for p in product("-+", repeat=n)]


def flip_signature(sig: str) -> str:
    return sig.translate(str.maketrans("+-", "-+"))


# ---------------------------------------------------------------------------
# signed permutations


@dataclass(frozen=True, order=True)
class SignedPermutation:
    values: tuple[int, ...]
    vsign: str

    def __post_init__(self):
        n = len(self.values)
        if sorted(self.values) != list(range(1, n + 1)):
            raise ValueError(f"{self.values} is not a permutation of 1..{n}")
        if len(self.vsign) != n:
            raise ValueError("sign vector length differs from permutation size")
        check_signature(self.vsign)

    @classmethod
    def from_psign(cls, values: Sequence[int], psign: str) -> "SignedPermutation":
        vs = [""] * len(values)
        for v, s in zip(values, psign):
            vs[v - 1] = s
        return cls(tuple(values), "".join(vs))

    @classmethod
    def unsigned(cls, values: Sequence[int], sign: str = "+") -> "SignedPermutation":
        return cls(tuple(values), sign * len(values))

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def psign(self) -> str:
        return "".join(self.vsign[v - 1] for v in self.values)

    def sign(self, value: int) -> str:
        return self.vsign[value - 1]

    @cached_property
    def positions(self) -> tuple[int, ...]:
        """positions[v-1] is the 0-based position of value v."""
        pos = [0] * self.n
        for i, v in enumerate(self.values):
            pos[v - 1] = i
        return tuple(pos)

    def inverse(self) -> "SignedPermutation":
        # the inverse's value signature is this permutation's position signature
        inv = tuple(p + 1 for p in self.positions)
        return SignedPermutation(inv, self.psign)

    def mirror(self) -> "SignedPermutation":
        return SignedPermutation(self.values[::-1], self.vsign)

    def shift(self, k: int) -> tuple[int, ...]:
        return tuple(v + k for v in self.values)

    def coinversions(self) -> frozenset[tuple[int, int]]:
        pos = self.positions
        return frozenset(
            (i, j) for i in range(1, self.n + 1) for j in range(i + 1, self.n + 1)
            if pos[i - 1] > pos[j - 1]
        )

    def __str__(self) -> str:
        return format_permutation(self)


def standardize(word: Sequence[int]) -> tuple[int, ...]:
    ranks = {v: r for r, v in enumerate(sorted(word), start=1)}
    return tuple(ranks[v] for v in word)


def restrict_values(t: SignedPermutation, keep: Iterable[int]) -> SignedPermutation:
    """Subword on the given values, standardized, signs carried by value."""
    keep = set(keep)
    word = [v for v in t.values if v in keep]
    std = standardize(word)
    return SignedPermutation.from_psign(std, "".join(t.sign(v) for v in word))


def restrict_positions(t: SignedPermutation, lo: int, hi: int) -> SignedPermutation:
    """Factor t[lo:hi], standardized, signs carried by value."""
    word = t.values[lo:hi]
    return SignedPermutation.from_psign(standardize(word), "".join(t.sign(v) for v in word))


def signed_permutations(sig: str) -> Iterator[SignedPermutation]:
    for p in permutations(range(1, len(sig) + 1)):
        yield SignedPermutation(p, sig)


def shifted_shuffle(a: SignedPermutation, b: SignedPermutation) -> list[SignedPermutation]:
    """Shuffles of a with b shifted by |a|; each value keeps its sign."""
    n, m = a.n, b.n
    vsign = a.vsign + b.vsign
    bb = b.shift(n)
    out = []
    for slots in combinations(range(n + m), n):
        chosen = set(slots)
        ia, ib, word = iter(a.values), iter(bb), []
        for k in range(n + m):
            word.append(next(ia) if k in chosen else next(ib))
        out.append(SignedPermutation(tuple(word), vsign))
    return sorted(out)


def convolution(a: SignedPermutation, b: SignedPermutation) -> list[SignedPermutation]:
    """Words whose first |a| letters standardize to a and the rest to b; signs stay at positions."""
    n, m = a.n, b.n
    psign = a.psign + b.psign
    out = []
    for low in combinations(range(1, n + m + 1), n):
        high = [v for v in range(1, n + m + 1) if v not in set(low)]
        word = [low[v - 1] for v in a.values] + [high[v - 1] for v in b.values]
        out.append(SignedPermutation.from_psign(word, psign))
    return sorted(out)


def recoils(t: SignedPermutation) -> str:
    pos = t.positions
    return "".join("-" if pos[i - 1] > pos[i] else "+" for i in range(1, t.n))


def weak_leq_perm(a: SignedPermutation, b: SignedPermutation) -> bool:
    return a.coinversions() <= b.coinversions()


# ---------------------------------------------------------------------------
# ℓ-signed permutations


@dataclass(frozen=True, order=True)
class LSignedPermutation:
    values: tuple[int, ...]
    vsigns: tuple[str, ...]

    def __post_init__(self):
        if not self.vsigns:
            raise ValueError("an l-signed permutation needs at least one layer")
        for s in self.vsigns:
            SignedPermutation(self.values, s)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def layers(self) -> int:
        return len(self.vsigns)

    def layer(self, k: int) -> SignedPermutation:
        return SignedPermutation(self.values, self.vsigns[k])

    @classmethod
    def from_layers(cls, perms: Sequence[SignedPermutation]) -> "LSignedPermutation":
        vals = {p.values for p in perms}
        if len(vals) != 1:
            raise ValueError("layers must share the same underlying permutation")
        return cls(perms[0].values, tuple(p.vsign for p in perms))

    def __str__(self) -> str:
        return " ".join(
            f"{v}{''.join(s[v - 1] for s in self.vsigns)}" for v in self.values
        )


def _lift(fn, a: LSignedPermutation, b: LSignedPermutation) -> list[LSignedPermutation]:
    if a.layers != b.layers:
        raise ValueError("layer counts differ")
    per_layer = [fn(a.layer(k), b.layer(k)) for k in range(a.layers)]
    out = []
    for group in zip(*per_layer):
        out.append(LSignedPermutation.from_layers(group))
    return sorted(out)


def lshifted_shuffle(a: LSignedPermutation, b: LSignedPermutation) -> list[LSignedPermutation]:
    # shuffles are enumerated in the same order in every layer, so zipping is sound
    return _lift(_unsorted(shifted_shuffle), a, b)


def lconvolution(a: LSignedPermutation, b: LSignedPermutation) -> list[LSignedPermutation]:
    return _lift(_unsorted(convolution), a, b)


def _unsorted(fn):
    # same enumeration as fn but keyed on the underlying word only, so layers align
    def inner(a, b):
        return sorted(fn(a, b), key=lambda p: p.values)
    return inner


def lsigned_permutations(sigs: Sequence[str]) -> Iterator[LSignedPermutation]:
    for p in permutations(range(1, len(sigs[0]) + 1)):
        yield LSignedPermutation(p, tuple(sigs))


# ---------------------------------------------------------------------------
# ordered partitions


@dataclass(frozen=True, order=True)
class OrderedPartition:
    """Stored as the block index (0-based) of every value."""

    block_of: tuple[int, ...]

    def __post_init__(self):
        used = set(self.block_of)
        if used != set(range(len(used))):
            raise ValueError(f"block indices {self.block_of} are not a surjection onto 0..k-1")

    @classmethod
    def from_parts(cls, parts: Sequence[Iterable[int]]) -> "OrderedPartition":
        parts = [sorted(p) for p in parts]
        n = sum(len(p) for p in parts)
        block = [None] * n
        for k, p in enumerate(parts):
            if not p:
                raise ValueError("empty block")
            for v in p:
                if not 1 <= v <= n or block[v - 1] is not None:
                    raise ValueError(f"blocks {parts} do not partition 1..{n}")
                block[v - 1] = k
        return cls(tuple(block))

    @property
    def n(self) -> int:
        return len(self.block_of)

    @property
    def k(self) -> int:
        return max(self.block_of) + 1 if self.block_of else 0

    @cached_property
    def parts(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.k)]
        for v, b in enumerate(self.block_of, start=1):
            out[b].append(v)
        return tuple(tuple(p) for p in out)

    def __str__(self) -> str:
        return "|".join("".join(map(str, p)) for p in self.parts)


def coinv(lam: OrderedPartition) -> dict[tuple[int, int], int]:
    b = lam.block_of
    n = lam.n
    return {
        (i, j): (b[i - 1] > b[j - 1]) - (b[i - 1] < b[j - 1])
        for i in range(1, n + 1) for j in range(i + 1, n + 1)
    }


def weak_leq_partition(a: OrderedPartition, b: OrderedPartition) -> bool:
    ca, cb = coinv(a), coinv(b)
    return all(ca[key] <= cb[key] for key in ca)


def weak_order_leq(a, b) -> bool:
    if a.n != b.n:
        raise ValueError("weak order compares objects of the same size")
    if isinstance(a, SignedPermutation):
        return weak_leq_perm(a, b)
    if isinstance(a, SignedOrderedPartition):
        a, b = a.partition, b.partition
    return weak_leq_partition(a, b)


def _less_block(x: Sequence[int], y: Sequence[int]) -> bool:
    return max(x) < min(y)


def partition_weak_order_covers(lam: OrderedPartition) -> list[OrderedPartition]:
    parts = [list(p) for p in lam.parts]
    out = set()
    for i in range(len(parts) - 1):
        if _less_block(parts[i], parts[i + 1]):
            out.add(OrderedPartition.from_parts(parts[:i] + [parts[i] + parts[i + 1]] + parts[i + 2:]))
    for i, block in enumerate(parts):
        for r in range(1, len(block)):
            for first in combinations(block, r):
                second = [v for v in block if v not in first]
                if _less_block(second, first):
                    out.add(OrderedPartition.from_parts(parts[:i] + [list(first), second] + parts[i + 1:]))
    return sorted(out)


def set_compositions(values: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    values = list(values)
    if not values:
        yield []
        return
    first_pool = values
    for r in range(1, len(first_pool) + 1):
        for first in combinations(first_pool, r):
            rest = [v for v in values if v not in first]
            for tail in set_compositions(rest):
                yield [first] + tail


def ordered_partitions(n: int) -> list[OrderedPartition]:
    return sorted(OrderedPartition.from_parts(c) for c in set_compositions(range(1, n + 1)))


def restrict_rows(m: OrderedPartition, rows: Iterable[int]) -> OrderedPartition:
    """Keep the blocks with the given 1-based indices, then standardize."""
    rows = sorted(set(rows))
    kept = [m.parts[i - 1] for i in rows]
    vals = sorted(v for p in kept for v in p)
    rank = {v: r for r, v in enumerate(vals, start=1)}
    return OrderedPartition.from_parts([[rank[v] for v in p] for p in kept])


def restrict_columns(m: OrderedPartition, cols: Iterable[int]) -> OrderedPartition:
    """Keep the given values, drop emptied blocks, then standardize."""
    cols = set(cols)
    rank = {v: r for r, v in enumerate(sorted(cols), start=1)}
    kept = [[rank[v] for v in p if v in cols] for p in m.parts]
    return OrderedPartition.from_parts([p for p in kept if p])


def partition_recoils(lam: OrderedPartition) -> str:
    """3-valued recoils: '-' if i+1 sits in an earlier block than i, '0' if same block."""
    b = lam.block_of
    return "".join(
        "-" if b[i] > b[i + 1] else "0" if b[i] == b[i + 1] else "+"
        for i in range(lam.n - 1)
    )


@dataclass(frozen=True, order=True)
class SignedOrderedPartition:
    partition: OrderedPartition
    vsign: str

    def __post_init__(self):
        if len(self.vsign) != self.partition.n:
            raise ValueError("sign vector length differs from partition size")
        check_signature(self.vsign)

    @classmethod
    def from_parts(cls, parts: Sequence[Iterable[int]], vsign: str) -> "SignedOrderedPartition":
        return cls(OrderedPartition.from_parts(parts), vsign)

    @classmethod
    def from_permutation(cls, t: SignedPermutation) -> "SignedOrderedPartition":
        return cls.from_parts([[v] for v in t.values], t.vsign)

    @property
    def n(self) -> int:
        return self.partition.n

    @property
    def k(self) -> int:
        return self.partition.k

    @property
    def parts(self) -> tuple[tuple[int, ...], ...]:
        return self.partition.parts

    @property
    def block_of(self) -> tuple[int, ...]:
        return self.partition.block_of

    def sign(self, value: int) -> str:
        return self.vsign[value - 1]

    def is_permutation(self) -> bool:
        return self.k == self.n

    def to_permutation(self) -> SignedPermutation:
        if not self.is_permutation():
            raise ValueError("partition has a block of size > 1")
        return SignedPermutation(tuple(p[0] for p in self.parts), self.vsign)

    def __str__(self) -> str:
        return format_partition(self)


def signed_ordered_partitions(sig: str) -> list[SignedOrderedPartition]:
    return [SignedOrderedPartition(p, sig) for p in ordered_partitions(len(sig))]


def _signed_restrict_columns(m: SignedOrderedPartition, cols: Iterable[int]) -> SignedOrderedPartition:
    cols = sorted(set(cols))
    return SignedOrderedPartition(restrict_columns(m.partition, cols), "".join(m.sign(v) for v in cols))


def partition_shifted_shuffle(a: SignedOrderedPartition, b: SignedOrderedPartition) -> list[SignedOrderedPartition]:
    """Interleavings of the blocks of a and of shifted b, where a block of a may merge with a block of b."""
    n = a.n
    A = [list(p) for p in a.parts]
    B = [[v + n for v in p] for p in b.parts]
    vsign = a.vsign + b.vsign
    out = []

    def rec(i, j, acc):
        if i == len(A) and j == len(B):
            out.append(SignedOrderedPartition.from_parts(acc, vsign))
            return
        if i < len(A):
            rec(i + 1, j, acc + [A[i]])
        if j < len(B):
            rec(i, j + 1, acc + [B[j]])
        if i < len(A) and j < len(B):
            rec(i + 1, j + 1, acc + [A[i] + B[j]])

    rec(0, 0, [])
    return sorted(out)


def partition_convolution(a: SignedOrderedPartition, b: SignedOrderedPartition) -> list[SignedOrderedPartition]:
    """Blocks of a then blocks of b, values redistributed; signs stay with their columns."""
    n, m = a.n, b.n
    out = []
    for low in combinations(range(1, n + m + 1), n):
        lowset = set(low)
        high = [v for v in range(1, n + m + 1) if v not in lowset]
        parts = [[low[v - 1] for v in p] for p in a.parts] + [[high[v - 1] for v in p] for p in b.parts]
        vs = [""] * (n + m)
        for v in range(1, n + 1):
            vs[low[v - 1] - 1] = a.sign(v)
        for v in range(1, m + 1):
            vs[high[v - 1] - 1] = b.sign(v)
        out.append(SignedOrderedPartition.from_parts(parts, "".join(vs)))
    return sorted(out)


def partition_prefix_splits(m: SignedOrderedPartition) -> list[tuple[SignedOrderedPartition, SignedOrderedPartition]]:
    """All (first k blocks, remaining blocks), each standardized."""
    out = []
    for cut in range(m.k + 1):
        left_vals = [v for p in m.parts[:cut] for v in p]
        right_vals = [v for p in m.parts[cut:] for v in p]
        out.append((_signed_restrict_columns(m, left_vals), _signed_restrict_columns(m, right_vals)))
    return out


def partition_value_splits(m: SignedOrderedPartition) -> list[tuple[SignedOrderedPartition, SignedOrderedPartition]]:
    """All (values <= k, values > k), each standardized."""
    return [
        (_signed_restrict_columns(m, range(1, k + 1)), _signed_restrict_columns(m, range(k + 1, m.n + 1)))
        for k in range(m.n + 1)
    ]


# ---------------------------------------------------------------------------
# text notation

_TOKEN = re.compile(r"(\d+)([+-])")


class ParseError(ValueError):
    """Input notation error carrying the offending column."""

    def __init__(self, text: str, pos: int, msg: str):
        self.text, self.pos, self.msg = text, pos, msg
        super().__init__(f"{msg} at column {pos}")

    def __str__(self) -> str:
        return f"{self.msg} at column {self.pos}\n  {self.text}\n  {' ' * self.pos}^"


def parse_permutation(text: str) -> SignedPermutation:
    """Parse '2- 7+ 5- 1- 3+ 4- 6+'."""
    vals, signs, pos = [], [], 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(text, pos, "expected a value followed by + or -")
        vals.append(int(m.group(1)))
        signs.append(m.group(2))
        pos = m.end()
    if sorted(vals) != list(range(1, len(vals) + 1)):
        raise ParseError(text, 0, f"values {vals} do not form a permutation of 1..{len(vals)}")
    return SignedPermutation.from_psign(vals, "".join(signs))


def format_permutation(t: SignedPermutation) -> str:
    return " ".join(f"{v}{t.sign(v)}" for v in t.values)


def parse_partition(text: str) -> SignedOrderedPartition:
    """Parse '125-7+/3+4-/6+': blocks split by '/' or '|'; a sign applies to the digits before it."""
    blocks, signs, pos = [], {}, 0
    current, pending = [], []
    while pos < len(text):
        c = text[pos]
        if c.isspace():
            pos += 1
        elif c.isdigit():
            pending.append(int(c))
            pos += 1
        elif c in "+-":
            if not pending:
                raise ParseError(text, pos, "sign without preceding values")
            for v in pending:
                signs[v] = c
            current.extend(pending)
            pending = []
            pos += 1
        elif c in "/|":
            if pending:
                raise ParseError(text, pos, "values without a sign")
            if not current:
                raise ParseError(text, pos, "empty block")
            blocks.append(current)
            current = []
            pos += 1
        else:
            raise ParseError(text, pos, f"unexpected character {c!r}")
    if pending:
        raise ParseError(text, len(text), "values without a sign")
    if current:
        blocks.append(current)
    n = len(signs)
    flat = sorted(v for b in blocks for v in b)
    if flat != list(range(1, n + 1)):
        raise ParseError(text, 0, f"blocks do not partition 1..{n}")
    return SignedOrderedPartition.from_parts(blocks, "".join(signs[v] for v in range(1, n + 1)))


def format_partition(m: SignedOrderedPartition) -> str:
    return "/".join(_merge_runs([(v, m.sign(v)) for v in p]) for p in m.parts)


def _merge_runs(items: list[tuple[int, str]]) -> str:
    # [(1,'-'),(2,'-'),(5,'-'),(7,'+')] -> "125-7+"
    out, run_vals, run_sign = [], "", None
    for v, s in items:
        v = str(v)
        if len(v) > 1:
            # multi-digit values cannot be run together unambiguously
            if run_vals:
                out.append(run_vals + run_sign)
                run_vals, run_sign = "", None
            out.append(v + s)
            continue
        if s != run_sign and run_vals:
            out.append(run_vals + run_sign)
            run_vals = ""
        run_vals += v
        run_sign = s
    if run_vals:
        out.append(run_vals + run_sign)
    return "".join(out)
