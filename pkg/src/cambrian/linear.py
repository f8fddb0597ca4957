"""Sparse integer linear combinations and tensors over hashable basis keys."""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Iterator, Mapping


class LinearCombination:
    """Finite formal sum of basis keys with nonzero integer coefficients.

    Keys need a ``n`` attribute (their degree) for graded operations.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Hashable, int] | Iterable[tuple[Hashable, int]] = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            acc[k] = acc.get(k, 0) + c
        self.terms = {k: c for k, c in acc.items() if c}

    @classmethod
    def basis(cls, key) -> "LinearCombination":
        return cls({key: 1})

    @classmethod
    def sum_of(cls, keys: Iterable[Hashable]) -> "LinearCombination":
        return cls((k, 1) for k in keys)

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, LinearCombination) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LinearCombination") -> "LinearCombination":
        return LinearCombination(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "LinearCombination":
        return LinearCombination({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "LinearCombination") -> "LinearCombination":
        return self + (-other)

    def __rmul__(self, scalar: int) -> "LinearCombination":
        return LinearCombination({k: scalar * c for k, c in self.terms.items()})

    def coefficient(self, key) -> int:
        return self.terms.get(key, 0)

    def keys(self) -> list:
        return sorted(self.terms, key=_sort_key)

    def map_keys(self, fn: Callable) -> "LinearCombination":
        return LinearCombination((fn(k), c) for k, c in self.terms.items())

    def expand(self, fn: Callable[[Hashable], "LinearCombination"]) -> "LinearCombination":
        """Linear extension of a map from basis keys to combinations."""
        out: dict = {}
        for k, c in self.terms.items():
            for k2, c2 in fn(k).terms.items():
                out[k2] = out.get(k2, 0) + c * c2
        return LinearCombination(out)

    def homogeneous(self, degree: int) -> "LinearCombination":
        return LinearCombination({k: c for k, c in self.terms.items() if k.n == degree})

    def degrees(self) -> set[int]:
        return {k.n for k in self.terms}

    def render(self, fmt: Callable[[Hashable], str] = str, prefix: str = "") -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in self.keys():
            c = self.terms[k]
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            sign = "-" if c < 0 else "+"
            parts.append((sign, f"{mag}{prefix}[{fmt(k)}]"))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"LinearCombination({self.render()})"


def bilinear(x: LinearCombination, y: LinearCombination, op: Callable) -> LinearCombination:
    out: dict = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            for k, c in op(a, b).terms.items():
                out[k] = out.get(k, 0) + ca * cb * c
    return LinearCombination(out)


class TensorCombination(LinearCombination):
    """Linear combination keyed by pairs (left, right)."""

    __slots__ = ()

    def __add__(self, other):
        return TensorCombination(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        return TensorCombination({k: -c for k, c in self.terms.items()})

    def __rmul__(self, scalar: int):
        return TensorCombination({k: scalar * c for k, c in self.terms.items()})

    @classmethod
    def from_pair(cls, x: LinearCombination, y: LinearCombination) -> "TensorCombination":
        return cls(((a, b), ca * cb) for a, ca in x.terms.items() for b, cb in y.terms.items())

    def map_sides(self, left: Callable, right: Callable) -> "TensorCombination":
        """Apply linear maps (basis key -> LinearCombination) on each side."""
        out: dict = {}
        for (a, b), c in self.terms.items():
            for a2, c2 in left(a).terms.items():
                for b2, c3 in right(b).terms.items():
                    out[(a2, b2)] = out.get((a2, b2), 0) + c * c2 * c3
        return TensorCombination(out)

    def render(self, fmt: Callable = str, prefix: str = "") -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b) in sorted(self.terms, key=lambda ab: (_sort_key(ab[0]), _sort_key(ab[1]))):
            c = self.terms[(a, b)]
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(("-" if c < 0 else "+", f"{mag}{prefix}[{fmt(a)}] (x) {prefix}[{fmt(b)}]"))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def tensor_product(x: TensorCombination, y: TensorCombination, op: Callable) -> TensorCombination:
    """Componentwise product (a⊗b)(c⊗d) = (ac)⊗(bd), no sign twist."""
    out: dict = {}
    for (a, b), c1 in x.terms.items():
        for (c, d), c2 in y.terms.items():
            left = op(a, c)
            right = op(b, d)
            for k1, e1 in left.terms.items():
                for k2, e2 in right.terms.items():
                    out[(k1, k2)] = out.get((k1, k2), 0) + c1 * c2 * e1 * e2
    return TensorCombination(out)


def _sort_key(k):
    return (getattr(k, "n", 0), repr(k))


class GradedBialgebra:
    """Bundle of basis-level product/coproduct with derived checks and antipode.

    ``product(a, b)`` and ``coproduct(a)`` act on basis keys.  ``unit`` is the
    degree-0 key.
    """

    def __init__(self, unit, product: Callable, coproduct: Callable):
        self.unit = unit
        self._product = product
        self._coproduct = coproduct

    def mul(self, x: LinearCombination, y: LinearCombination) -> LinearCombination:
        return bilinear(x, y, self._product)

    def delta(self, x: LinearCombination) -> TensorCombination:
        out: dict = {}
        for a, c in x.terms.items():
            for k, c2 in self._coproduct(a).terms.items():
                out[k] = out.get(k, 0) + c * c2
        return TensorCombination(out)

    def counit(self, x: LinearCombination) -> int:
        return x.coefficient(self.unit)

    def antipode_basis(self, key, _memo: dict | None = None) -> LinearCombination:
        """S(x) = -x - sum S(x') x'' over the reduced coproduct (graded connected recursion)."""
        memo = {} if _memo is None else _memo
        if key in memo:
            return memo[key]
        if key == self.unit:
            res = LinearCombination.basis(self.unit)
        else:
            res = -LinearCombination.basis(key)
            for (a, b), c in self._coproduct(key).terms.items():
                if a == self.unit or b == self.unit:
                    continue
                res = res - c * self.mul(self.antipode_basis(a, memo), LinearCombination.basis(b))
        memo[key] = res
        return res

    def antipode(self, x: LinearCombination) -> LinearCombination:
        memo: dict = {}
        return x.expand(lambda k: self.antipode_basis(k, memo))

    def convolution_identity_holds(self, key) -> bool:
        """m∘(S⊗id)∘Δ equals η∘ε on a basis key."""
        total = LinearCombination()
        memo: dict = {}
        for (a, b), c in self._coproduct(key).terms.items():
            total = total + c * self.mul(self.antipode_basis(a, memo), LinearCombination.basis(b))
        expected = LinearCombination.basis(self.unit) if key == self.unit else LinearCombination()
        return total == expected

    def is_associative_on(self, a, b, c) -> bool:
        A, B, C = (LinearCombination.basis(k) for k in (a, b, c))
        return self.mul(self.mul(A, B), C) == self.mul(A, self.mul(B, C))

    def is_coassociative_on(self, a) -> bool:
        d = self._coproduct(a)
        left: dict = {}
        right: dict = {}
        for (x, y), c in d.terms.items():
            for (x1, x2), c1 in self._coproduct(x).terms.items():
                left[(x1, x2, y)] = left.get((x1, x2, y), 0) + c * c1
            for (y1, y2), c2 in self._coproduct(y).terms.items():
                right[(x, y1, y2)] = right.get((x, y1, y2), 0) + c * c2
        return {k: v for k, v in left.items() if v} == {k: v for k, v in right.items() if v}

    def is_compatible_on(self, a, b) -> bool:
        """Δ(ab) = Δ(a)Δ(b)."""
        lhs = self.delta(self._product(a, b))
        rhs = tensor_product(self._coproduct(a), self._coproduct(b), self._product)
        return lhs == rhs
