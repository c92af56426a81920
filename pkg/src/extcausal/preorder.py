"""Finite partial preorders and their lift to sets.

Elements are indexed and each element's down-set (everything it is at
least as great as) is kept as an int bitmask, so set-level questions
reduce to a few bit operations.
"""

from __future__ import annotations

import enum
from typing import Hashable, Iterable, Iterator


class Relation(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"

    @classmethod
    def from_order(cls, le: bool, ge: bool) -> "Relation":
        if le and ge:
            return cls.EQUAL
        if le:
            return cls.LESS
        if ge:
            return cls.GREATER
        return cls.INCOMPARABLE

    def flip(self) -> "Relation":
        return {Relation.LESS: Relation.GREATER, Relation.GREATER: Relation.LESS}.get(self, self)


def _canonical(elements):
    try:
        return tuple(sorted(elements))
    except TypeError:
        return tuple(elements)


class Preorder:
    """A reflexive, transitive relation on a finite carrier.

    ``pairs`` are ``(a, b)`` meaning ``a >= b`` (a is at least as normal as b);
    the reflexive-transitive closure is taken at construction.
    """

    def __init__(self, carrier: Iterable[Hashable], pairs: Iterable[tuple] = ()):
        elements = _canonical(dict.fromkeys(carrier))
        self.elements = elements
        self.index = {e: i for i, e in enumerate(elements)}
        down = [1 << i for i in range(len(elements))]
        for a, b in pairs:
            try:
                down[self.index[a]] |= 1 << self.index[b]
            except KeyError as exc:
                raise ValueError(f"{exc.args[0]!r} is not in the carrier") from None
        for k in range(len(elements)):
            bit = 1 << k
            dk = down[k]
            for i in range(len(elements)):
                if down[i] & bit:
                    down[i] |= dk
        self._down = down
        up = [0] * len(elements)
        for i, d in enumerate(down):
            for j in _bits(d):
                up[j] |= 1 << i
        self._up = up

    # element-level relations

    def geq(self, a, b) -> bool:
        return bool(self._down[self.index[a]] >> self.index[b] & 1)

    def gt(self, a, b) -> bool:
        return self.geq(a, b) and not self.geq(b, a)

    def equivalent(self, a, b) -> bool:
        return self.geq(a, b) and self.geq(b, a)

    def comparable(self, a, b) -> bool:
        return self.geq(a, b) or self.geq(b, a)

    def compare(self, a, b) -> Relation:
        return Relation.from_order(self.geq(b, a), self.geq(a, b))

    def pairs(self) -> list:
        """All ``(a, b)`` with ``a >= b``, in carrier order."""
        els = self.elements
        return [(els[i], els[j]) for i, d in enumerate(self._down) for j in _bits(d)]

    def strict_pairs(self) -> list:
        return [(a, b) for a, b in self.pairs() if not self.geq(b, a)]

    @property
    def relation(self) -> frozenset:
        return frozenset(self.pairs())

    def classes(self) -> list:
        """Equivalence classes of elements, each as a tuple in carrier order."""
        seen = 0
        out = []
        for i in range(len(self.elements)):
            if seen >> i & 1:
                continue
            cls = self._down[i] & self._up[i]
            seen |= cls
            out.append(tuple(self.elements[j] for j in _bits(cls)))
        return out

    def maximal(self, subset: Iterable) -> list:
        """Elements of ``subset`` with nothing in ``subset`` strictly above them."""
        items = list(dict.fromkeys(subset))
        return [a for a in items if not any(self.gt(b, a) for b in items)]

    def restrict(self, subset: Iterable) -> "Preorder":
        keep = set(subset)
        return Preorder(keep, [(a, b) for a, b in self.pairs() if a in keep and b in keep])

    def inverse(self) -> "Preorder":
        return Preorder(self.elements, [(b, a) for a, b in self.pairs()])

    # set-level helpers

    def mask(self, subset: Iterable) -> int:
        m = 0
        for e in subset:
            m |= 1 << self.index[e]
        return m

    def members(self, mask: int) -> frozenset:
        return frozenset(self.elements[i] for i in _bits(mask))

    def down_mask(self, mask: int) -> int:
        """Union of the down-sets of the elements in ``mask``."""
        out = 0
        for i in _bits(mask):
            out |= self._down[i]
        return out

    def lift_masks(self, u: int, v: int) -> bool:
        return v & ~self.down_mask(u) == 0

    def lift(self, u: Iterable, v: Iterable) -> bool:
        """``U >=+ V``: every element of V is dominated by some element of U."""
        return self.lift_masks(self.mask(u), self.mask(v))

    @property
    def full_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __contains__(self, item):
        return item in self.index

    def __eq__(self, other):
        if not isinstance(other, Preorder):
            return NotImplemented
        return set(self.elements) == set(other.elements) and self.relation == other.relation

    def __hash__(self):
        return hash((frozenset(self.elements), self.relation))

    def __repr__(self):
        return f"Preorder({len(self.elements)} elements, {len(self.strict_pairs())} strict pairs)"


def _bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def lift_preorder(pre: Preorder, u: Iterable, v: Iterable) -> bool:
    return pre.lift(u, v)


def equivalence_class(pre: Preorder, u: Iterable) -> frozenset:
    """Largest set equivalent to ``u`` under the lift; this is the down-closure of ``u``."""
    return pre.members(pre.down_mask(pre.mask(u)))
