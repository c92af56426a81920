"""Structural causal models over finite ranges.

A model is a signature plus one structural equation per endogenous
variable.  Worlds are total assignments to the endogenous variables only;
they need not satisfy the equations.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional

from .errors import CyclicModel, ModelError, SpaceTooLarge, UnknownVariable, ValueOutOfRange
from .expr import Const, Expr, ExprLike, Var, as_expr

DEFAULT_WORLD_CAP = 2**20
EQUATION_CHECK_CAP = 2**20


@dataclass(frozen=True, order=True)
class World:
    """A total assignment to the endogenous variables, in signature order."""

    values: tuple
    names: tuple

    def __post_init__(self):
        if len(self.values) != len(self.names):
            raise ValueError("world values and names differ in length")

    def __getitem__(self, name: str) -> int:
        try:
            return self.values[self.names.index(name)]
        except ValueError:
            raise UnknownVariable(name) from None

    def as_dict(self) -> dict:
        return dict(zip(self.names, self.values))

    def replace(self, **changes) -> "World":
        d = self.as_dict()
        for k, v in changes.items():
            if k not in d:
                raise UnknownVariable(k)
            d[k] = v
        return World(tuple(d[n] for n in self.names), self.names)

    def __str__(self):
        return "(" + ",".join(str(v) for v in self.values) + ")"

    def describe(self) -> str:
        return "(" + ", ".join(f"{n}={v}" for n, v in zip(self.names, self.values)) + ")"


@dataclass(frozen=True)
class Signature:
    exogenous: tuple
    endogenous: tuple
    ranges: Mapping[str, tuple]

    def __post_init__(self):
        object.__setattr__(self, "exogenous", tuple(self.exogenous))
        object.__setattr__(self, "endogenous", tuple(self.endogenous))
        ranges = {k: tuple(v) for k, v in self.ranges.items()}
        object.__setattr__(self, "ranges", MappingProxyType(ranges))
        names = self.exogenous + self.endogenous
        if len(set(names)) != len(names):
            raise ModelError("variable names must be unique and exogenous/endogenous disjoint")
        if not self.endogenous:
            raise ModelError("a signature needs at least one endogenous variable")
        for name in names:
            r = ranges.get(name)
            if not r:
                raise ModelError(f"variable {name} has an empty or missing range")
            if len(set(r)) != len(r):
                raise ModelError(f"range of {name} repeats a value")
        extra = set(ranges) - set(names)
        if extra:
            raise ModelError(f"ranges given for undeclared variables {sorted(extra)}")

    @classmethod
    def of(cls, endogenous: Mapping[str, Iterable[int]], exogenous: Optional[Mapping] = None):
        exogenous = dict(exogenous or {})
        ranges = {**{k: tuple(v) for k, v in exogenous.items()},
                  **{k: tuple(v) for k, v in endogenous.items()}}
        return cls(tuple(exogenous), tuple(endogenous), ranges)

    @property
    def variables(self) -> tuple:
        return self.exogenous + self.endogenous

    def range_of(self, name: str) -> tuple:
        try:
            return self.ranges[name]
        except KeyError:
            raise UnknownVariable(name) from None

    def world_count(self) -> int:
        return math.prod(len(self.ranges[v]) for v in self.endogenous)

    def world(self, values=None, **assignment) -> World:
        """Build a World from a value tuple or keyword assignment, checking ranges."""
        if values is not None:
            values = tuple(values)
            if len(values) != len(self.endogenous):
                raise ModelError("world has the wrong number of values")
            assignment = dict(zip(self.endogenous, values))
        missing = [v for v in self.endogenous if v not in assignment]
        if missing:
            raise ModelError(f"world does not assign {missing}")
        for k, v in assignment.items():
            if v not in self.range_of(k):
                raise ValueOutOfRange(f"{k}={v} is outside {self.range_of(k)}")
            if k not in self.endogenous:
                raise UnknownVariable(f"{k} is not endogenous")
        return World(tuple(assignment[v] for v in self.endogenous), self.endogenous)


@dataclass(frozen=True)
class CausalModel:
    """Signature plus structural equations.

    ``roots`` maps endogenous variables that were declared without an
    equation to the exogenous variable that was introduced to drive them
    (``X = U_X``); contexts may then name ``X`` directly.
    """

    signature: Signature
    equations: Mapping[str, Expr]
    roots: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        eqs = {k: as_expr(v) for k, v in self.equations.items()}
        object.__setattr__(self, "equations", MappingProxyType(eqs))
        object.__setattr__(self, "roots", MappingProxyType(dict(self.roots)))
        sig = self.signature
        for name in eqs:
            if name not in sig.endogenous:
                if name in sig.exogenous:
                    raise ModelError(f"exogenous variable {name} cannot have an equation")
                raise UnknownVariable(f"equation for undeclared variable {name}")
        missing = [v for v in sig.endogenous if v not in eqs]
        if missing:
            raise ModelError(f"no equation for {missing}")
        known = set(sig.variables)
        for target, body in eqs.items():
            unknown = body.variables() - known
            if unknown:
                raise UnknownVariable(f"equation for {target} reads undeclared {sorted(unknown)}")
        parents = {target: self._check_equation(target, body) for target, body in eqs.items()}
        object.__setattr__(self, "_parents", MappingProxyType(parents))

    def _check_equation(self, target: str, body: Expr) -> tuple:
        """Range-check ``body`` exhaustively and return its nontrivial parents."""
        sig = self.signature
        inputs = [v for v in sig.variables if v in body.variables()]
        ranges = [sig.ranges[v] for v in inputs]
        if math.prod(len(r) for r in ranges) > EQUATION_CHECK_CAP:
            raise SpaceTooLarge(f"equation for {target} has too many input settings to check")
        allowed = set(sig.ranges[target])
        table = {}
        for setting in itertools.product(*ranges):
            try:
                out = body.evaluate(dict(zip(inputs, setting)))
            except KeyError as exc:
                raise ModelError(f"equation for {target}: {exc.args[0]}") from None
            if out not in allowed:
                raise ValueOutOfRange(
                    f"equation for {target} yields {out} at {dict(zip(inputs, setting))}, "
                    f"outside {sig.ranges[target]}"
                )
            table[setting] = out
        parents = []
        for i, name in enumerate(inputs):
            if _depends_on(table, ranges, i):
                parents.append(name)
        return tuple(parents)

    @property
    def endogenous(self) -> tuple:
        return self.signature.endogenous

    @property
    def exogenous(self) -> tuple:
        return self.signature.exogenous

    def parents(self, name: str) -> tuple:
        """Variables the equation for ``name`` reads nontrivially, in signature order."""
        try:
            return self._parents[name]
        except KeyError:
            raise UnknownVariable(name) from None

    def endogenous_parents(self, name: str) -> tuple:
        return tuple(p for p in self.parents(name) if p in self.signature.endogenous)

    def exogenous_parents(self, name: str) -> tuple:
        return tuple(p for p in self.parents(name) if p in self.signature.exogenous)

    def context(self, assignment: Optional[Mapping[str, int]] = None, **kw) -> dict:
        """Resolve and validate a context, accepting implicit-root names for their drivers."""
        given = dict(assignment or {}, **kw)
        ctx = {}
        for k, v in given.items():
            name = self.roots.get(k, k)
            if name not in self.signature.exogenous:
                raise UnknownVariable(f"{k} is not an exogenous variable")
            if name in ctx:
                raise ModelError(f"{name} assigned twice in context")
            ctx[name] = v
        for name in self.signature.exogenous:
            if name not in ctx:
                raise ModelError(f"context does not assign {name}")
            if ctx[name] not in self.signature.ranges[name]:
                raise ValueOutOfRange(f"{name}={ctx[name]} is outside {self.signature.ranges[name]}")
        return ctx

    def evaluate(self, name: str, values: Mapping[str, int]) -> int:
        """Output of the equation for ``name``; variables it ignores may be left out of ``values``."""
        body = self.equations[name]
        env = {v: self.signature.ranges[v][0] for v in body.variables()}
        env.update(values)
        return body.evaluate(env)

    def satisfies(self, context: Mapping[str, int], world: World) -> bool:
        """True iff every endogenous variable equals its equation on context and world."""
        env = dict(self.context(context))
        env.update(world.as_dict())
        return all(self.equations[x].evaluate(env) == env[x] for x in self.endogenous)

    def dependency_edges(self) -> list:
        return [(p, x) for x in self.endogenous for p in self.parents(x)]


def _depends_on(table: dict, ranges: list, i: int) -> bool:
    for setting, out in table.items():
        for alt in ranges[i]:
            if alt != setting[i]:
                other = setting[:i] + (alt,) + setting[i + 1:]
                if table[other] != out:
                    return True
    return False


def build_model(
    endogenous: Mapping[str, Iterable[int]],
    equations: Mapping[str, ExprLike],
    exogenous: Optional[Mapping[str, Iterable[int]]] = None,
) -> CausalModel:
    """Build a model, driving every equation-less endogenous variable by a fresh ``U_X``."""
    exo = {k: tuple(v) for k, v in (exogenous or {}).items()}
    eqs = {k: as_expr(v) for k, v in equations.items()}
    roots = {}
    for name, rng in endogenous.items():
        if name not in eqs:
            driver = f"U_{name}"
            if driver in exo or driver in endogenous:
                raise ModelError(f"cannot introduce driver {driver}: name taken")
            exo[driver] = tuple(rng)
            eqs[name] = Var(driver)
            roots[name] = driver
    sig = Signature.of(endogenous, exo)
    ordered = {k: eqs[k] for k in sig.endogenous if k in eqs}
    ordered.update({k: v for k, v in eqs.items() if k not in ordered})
    return CausalModel(sig, ordered, roots)


def check_acyclic(model: CausalModel) -> tuple:
    """Topological order of the endogenous variables; raises CyclicModel otherwise."""
    endo = model.endogenous
    deps = {x: set(model.endogenous_parents(x)) for x in endo}
    order = []
    placed = set()
    while len(order) < len(endo):
        ready = [x for x in endo if x not in placed and deps[x] <= placed]
        if not ready:
            raise CyclicModel(_find_cycle({x: deps[x] for x in endo if x not in placed}))
        for x in ready:
            order.append(x)
            placed.add(x)
    return tuple(order)


def _find_cycle(deps: Mapping[str, set]) -> list:
    # every remaining node has a remaining parent, so walking parents must revisit a node
    start = next(iter(deps))
    path, seen = [start], {start: 0}
    node = start
    while True:
        node = sorted(p for p in deps[node] if p in deps)[0]
        if node in seen:
            cycle = path[seen[node]:]
            cycle.reverse()
            return cycle + [cycle[0]]
        seen[node] = len(path)
        path.append(node)


def solve(model: CausalModel, context: Mapping[str, int]) -> World:
    """The unique world determined by ``context`` in an acyclic model."""
    env = dict(model.context(context))
    for x in check_acyclic(model):
        env[x] = model.evaluate(x, env)
    return World(tuple(env[x] for x in model.endogenous), model.endogenous)


def intervene(model: CausalModel, settings: Mapping[str, int]) -> CausalModel:
    """The model with each targeted variable's equation replaced by a constant."""
    sig = model.signature
    eqs = dict(model.equations)
    for name, value in settings.items():
        if name not in sig.endogenous:
            raise UnknownVariable(f"cannot intervene on {name}: not endogenous")
        if value not in sig.ranges[name]:
            raise ValueOutOfRange(f"{name}={value} is outside {sig.ranges[name]}")
        eqs[name] = Const(value)
    return CausalModel(sig, eqs, model.roots)


@dataclass(frozen=True)
class Dependence:
    holds: bool
    x: Optional[int] = None
    x_alt: Optional[int] = None
    y: Optional[int] = None
    y_alt: Optional[int] = None

    def __bool__(self):
        return self.holds


def intervention_outcomes(model: CausalModel, context, x_var: str, y_var: str) -> dict:
    """Value of ``y_var`` under ``x_var <- x`` for every x in range(x_var)."""
    return {
        x: solve(intervene(model, {x_var: x}), context)[y_var]
        for x in model.signature.range_of(x_var)
    }


def counterfactually_depends(model: CausalModel, context, x_var: str, y_var: str) -> Dependence:
    """Whether some pair of interventions on ``x_var`` gives ``y_var`` different values."""
    for name in (x_var, y_var):
        if name not in model.endogenous:
            raise UnknownVariable(f"{name} is not endogenous")
    if x_var == y_var:
        raise ModelError("cause and effect must be distinct variables")
    outcomes = intervention_outcomes(model, context, x_var, y_var)
    items = list(outcomes.items())
    for x, y in items:
        for x2, y2 in items:
            if y2 != y:
                return Dependence(True, x, x2, y, y2)
    return Dependence(False)


def enumerate_worlds(signature: Signature, cap: int = DEFAULT_WORLD_CAP) -> Iterator[World]:
    """All worlds of ``signature`` in lexicographic order of its ranges."""
    count = signature.world_count()
    if count > cap:
        raise SpaceTooLarge(f"{count} worlds exceeds the cap of {cap}")
    names = signature.endogenous
    for values in itertools.product(*(signature.ranges[v] for v in names)):
        yield World(values, names)
