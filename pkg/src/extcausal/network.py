"""Plausibilistic Bayesian networks and the normality order they induce.

Each world gets the uninterpreted product of one table atom per variable.
One product is below another when each of its factors is below some
factor of the other; nothing else is comparable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from .errors import CyclicAtomOrder, MissingTableEntry, ModelError, UnknownVariable
from .model import Signature, World, enumerate_worlds
from .preorder import Preorder, Relation


class AtomOrder:
    """Named plausibility atoms with a declared comparison relation, closed."""

    def __init__(self, atoms: Iterable[str], strict: Iterable[tuple] = (), weak: Iterable[tuple] = ()):
        strict = tuple(dict.fromkeys(tuple(p) for p in strict))
        weak = tuple(dict.fromkeys(tuple(p) for p in weak))
        atoms = tuple(dict.fromkeys(atoms))
        known = set(atoms)
        for a, b in strict + weak:
            for x in (a, b):
                if x not in known:
                    raise ValueError(f"comparison mentions unknown atom {x!r}")
        self.atoms = atoms
        self.strict = strict
        self.weak = weak
        self._pre = Preorder(atoms, strict + weak)
        for a, b in strict:
            if self._pre.geq(b, a):
                raise CyclicAtomOrder(f"{a} > {b} is contradicted by {b} >= {a}")

    @property
    def declared(self) -> tuple:
        return self.strict

    @property
    def preorder(self) -> Preorder:
        return self._pre

    def leq(self, a: str, b: str) -> bool:
        return self._pre.geq(b, a)

    def lt(self, a: str, b: str) -> bool:
        return self._pre.gt(b, a)

    def compare(self, a: str, b: str) -> Relation:
        return self._pre.compare(a, b)

    def closure(self) -> frozenset:
        """All ``(a, b)`` with ``a >= b``."""
        return self._pre.relation

    def rename(self, mapping: Mapping[str, str]) -> "AtomOrder":
        f = lambda a: mapping.get(a, a)
        return AtomOrder([f(a) for a in self.atoms],
                         [(f(a), f(b)) for a, b in self.strict],
                         [(f(a), f(b)) for a, b in self.weak])

    def __eq__(self, other):
        if not isinstance(other, AtomOrder):
            return NotImplemented
        return set(self.atoms) == set(other.atoms) and self.closure() == other.closure()

    def __hash__(self):
        return hash(self.closure())

    def __repr__(self):
        return f"AtomOrder({list(self.atoms)}, strict={list(self.strict)})"


def close_atom_order(atoms: Iterable[str], declared: Iterable[tuple], weak: Iterable[tuple] = ()) -> AtomOrder:
    return AtomOrder(atoms, declared, weak)


@dataclass(frozen=True)
class FormalProduct:
    factors: tuple

    def __str__(self):
        return " ⊗ ".join(self.factors)


@dataclass(frozen=True)
class Cpt:
    """Conditional plausibility table: ``(value, parent values) -> atom``."""

    parents: tuple
    entries: Mapping[tuple, str]

    def __post_init__(self):
        object.__setattr__(self, "parents", tuple(self.parents))
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def atom(self, value, parent_values: tuple) -> str:
        return self.entries[(value, tuple(parent_values))]

    def atoms(self) -> tuple:
        return tuple(dict.fromkeys(self.entries.values()))


class PlausibilisticNetwork:
    """A DAG over the endogenous variables with a total cpt per variable.

    Variable order is the order of ``signature.endogenous`` and fixes the
    factor order of every world's formal product.
    """

    def __init__(self, signature: Signature, tables: Mapping[str, Cpt]):
        self.signature = signature
        self.variables = signature.endogenous
        missing = [v for v in self.variables if v not in tables]
        if missing:
            raise MissingTableEntry(f"no table for {missing}")
        extra = [v for v in tables if v not in self.variables]
        if extra:
            raise UnknownVariable(f"tables for non-endogenous variables {extra}")
        self.tables = MappingProxyType({v: tables[v] for v in self.variables})
        for var, cpt in self.tables.items():
            for p in cpt.parents:
                if p not in self.variables:
                    raise UnknownVariable(f"parent {p} of {var} is not an endogenous variable")
                if p == var:
                    raise ModelError(f"{var} cannot be its own parent")
            ranges = [signature.ranges[var]] + [signature.ranges[p] for p in cpt.parents]
            for value, *pvals in itertools.product(*ranges):
                if (value, tuple(pvals)) not in cpt.entries:
                    setting = ", ".join(f"{p}={x}" for p, x in zip(cpt.parents, pvals))
                    raise MissingTableEntry(f"Pl({var}={value}" + (f" | {setting})" if setting else ")"))
        self.order = self._topological()

    def _topological(self) -> tuple:
        placed, order = set(), []
        while len(order) < len(self.variables):
            ready = [v for v in self.variables if v not in placed and set(self.tables[v].parents) <= placed]
            if not ready:
                raise ModelError("network graph is cyclic")
            order.extend(ready)
            placed.update(ready)
        return tuple(order)

    def parents(self, var: str) -> tuple:
        return self.tables[var].parents

    def edges(self) -> list:
        return [(p, v) for v in self.variables for p in self.parents(v)]

    def atoms(self) -> tuple:
        return tuple(dict.fromkeys(a for cpt in self.tables.values() for a in cpt.atoms()))

    def worlds(self) -> list:
        return list(enumerate_worlds(self.signature))

    def __eq__(self, other):
        if not isinstance(other, PlausibilisticNetwork):
            return NotImplemented
        return self.signature == other.signature and dict(self.tables) == dict(other.tables)

    __hash__ = None


def world_plausibility(net: PlausibilisticNetwork, world) -> FormalProduct:
    """The product of each variable's table entry at this world."""
    values = world.as_dict() if isinstance(world, World) else dict(world)
    factors = []
    for var in net.variables:
        if var not in values:
            raise MissingTableEntry(f"world does not assign {var}")
        cpt = net.tables[var]
        key = (values[var], tuple(values[p] for p in cpt.parents))
        try:
            factors.append(cpt.entries[key])
        except KeyError:
            raise MissingTableEntry(f"no entry for {var}={key[0]} given {dict(zip(cpt.parents, key[1]))}") from None
    return FormalProduct(tuple(factors))


def product_leq(order: AtomOrder, p: FormalProduct, q: FormalProduct) -> bool:
    return all(any(order.leq(a, b) for b in q.factors) for a in p.factors)


def compare_products(order: AtomOrder, p: FormalProduct, q: FormalProduct) -> Relation:
    return Relation.from_order(product_leq(order, p, q), product_leq(order, q, p))


def induced_order(net: PlausibilisticNetwork, order: AtomOrder, worlds: Optional[Iterable[World]] = None) -> Preorder:
    """Normality order on worlds: ``w >= w'`` iff ``product(w') <= product(w)``."""
    worlds = list(worlds) if worlds is not None else net.worlds()
    products = {w: world_plausibility(net, w) for w in worlds}
    # worlds sharing a product are interchangeable, so compare distinct products only
    distinct = list(dict.fromkeys(products.values()))
    above = {p: [q for q in distinct if product_leq(order, p, q)] for p in distinct}
    holders = {}
    for w, p in products.items():
        holders.setdefault(p, []).append(w)
    pairs = [(w, v) for p in distinct for q in above[p] for w in holders[q] for v in holders[p]]
    return Preorder(worlds, pairs)
