"""Expansion of compact extended-model specifications into full networks.

Normal causality: a variable with no exogenous parents gets two atoms,
``d_X^+`` for values agreeing with its equation and ``d_X^-`` otherwise.
Minimality: atoms are comparable only through those per-variable pairs and
the comparisons given explicitly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .errors import (
    CompileError,
    ExogenousParent,
    ExtCausalError,
    MissingRootTable,
    ModelError,
    UnknownVariable,
)
from .model import CausalModel
from .preorder import Preorder
from .network import AtomOrder, Cpt, PlausibilisticNetwork, induced_order


class Comparison(NamedTuple):
    greater: str
    lesser: str
    strict: bool = True


def rule1_atoms(var: str) -> tuple:
    return f"d_{var}^+", f"d_{var}^-"


@dataclass(frozen=True)
class CompactSpec:
    """A causal model plus only the normality information the defaults cannot supply.

    ``root_tables`` give one atom per value for variables driven only by
    exogenous variables; ``overrides`` replace the default table of a
    variable wholesale (and may use parents other than its causal ones);
    ``comparisons`` relate atoms explicitly.
    """

    model: CausalModel
    root_tables: Mapping[str, Mapping[int, str]] = field(default_factory=dict)
    overrides: Mapping[str, Cpt] = field(default_factory=dict)
    comparisons: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "comparisons", tuple(Comparison(*c) for c in self.comparisons))
        endo = self.model.endogenous
        for name in list(self.root_tables) + list(self.overrides):
            if name not in endo:
                raise UnknownVariable(f"plausibility given for unknown variable {name}")
        both = set(self.root_tables) & set(self.overrides)
        if both:
            raise ModelError(f"{sorted(both)} have both a root table and an override")
        for name, atoms in self.root_tables.items():
            rng = self.model.signature.range_of(name)
            if set(atoms) != set(rng):
                raise ModelError(f"root table for {name} must give an atom for each of {rng}")
            if self.model.endogenous_parents(name):
                raise ModelError(f"{name} has endogenous parents; give a conditional table instead")


def expand_rule1(
    model: CausalModel,
    overrides: Mapping[str, Cpt] = None,
    root_tables: Mapping[str, Mapping] = None,
) -> dict:
    """Default tables for every variable not covered by an override or root table."""
    covered = set(overrides or {}) | set(root_tables or {})
    tables, errors = {}, []
    for var in model.endogenous:
        if var in covered:
            continue
        exo = model.exogenous_parents(var)
        if exo:
            if model.endogenous_parents(var):
                errors.append(ExogenousParent(
                    f"{var} reads exogenous {list(exo)}; give an explicit table for it"))
            else:
                errors.append(MissingRootTable(f"no plausibility declared for root variable {var}"))
            continue
        parents = model.endogenous_parents(var)
        plus, minus = rule1_atoms(var)
        sig = model.signature
        entries = {}
        for pvals in itertools.product(*(sig.ranges[p] for p in parents)):
            expected = model.evaluate(var, dict(zip(parents, pvals)))
            for x in sig.ranges[var]:
                entries[(x, pvals)] = plus if x == expected else minus
        tables[var] = Cpt(parents, entries)
    _raise(errors)
    return tables


def apply_rule2(atoms: Iterable[str], explicit: Iterable = (), defaults: Iterable[tuple] = ()) -> AtomOrder:
    """Atom order containing only the default pairs and explicit comparisons."""
    explicit = [Comparison(*c) for c in explicit]
    strict = list(defaults) + [(c.greater, c.lesser) for c in explicit if c.strict]
    weak = [(c.greater, c.lesser) for c in explicit if not c.strict]
    return AtomOrder(atoms, strict, weak)


def compile_spec(spec: CompactSpec) -> tuple:
    """Expand ``spec`` into ``(network, atom order)``."""
    model = spec.model
    errors = []
    try:
        tables = expand_rule1(model, spec.overrides, spec.root_tables)
    except CompileError as exc:
        errors.extend(exc.errors)
        tables = {}
    except ExtCausalError as exc:
        errors.append(exc)
        tables = {}
    defaults = [rule1_atoms(v) for v in tables]
    for var, atoms in spec.root_tables.items():
        tables[var] = Cpt((), {(value, ()): atom for value, atom in atoms.items()})
    tables.update(spec.overrides)
    if errors:
        _raise(errors)
    net = PlausibilisticNetwork(model.signature, tables)
    atoms = list(net.atoms())
    for c in spec.comparisons:
        for a in (c.greater, c.lesser):
            if a not in atoms:
                errors.append(ModelError(f"comparison mentions atom {a} that no table uses"))
    _raise(errors)
    return net, apply_rule2(atoms, spec.comparisons, defaults)


def _raise(errors: list):
    if len(errors) == 1:
        raise errors[0]
    if errors:
        raise CompileError(errors)


def normality_order(spec: CompactSpec) -> Preorder:
    """The world order induced by the compiled network of ``spec``."""
    net, order = compile_spec(spec)
    return induced_order(net, order)
