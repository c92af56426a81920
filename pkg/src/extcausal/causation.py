"""Actual-causation queries and normality grading of candidate causes.

The shipped test is the counterfactual-dependence sufficient condition: the
cause and effect hold in the actual world, and some other value of the cause
variable changes the effect.  Any other definition with the same call shape
can be passed as ``definition``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .errors import CausationError, FactualMismatch, ModelError, NoWitness, UnknownVariable, ValueOutOfRange
from .model import CausalModel, World, intervene, solve
from .preorder import Preorder, Relation


@dataclass(frozen=True)
class CauseQuery:
    model: CausalModel
    context: Mapping[str, int]
    cause: tuple
    effect: tuple

    def __post_init__(self):
        object.__setattr__(self, "context", self.model.context(self.context))
        object.__setattr__(self, "cause", tuple(self.cause))
        object.__setattr__(self, "effect", tuple(self.effect))
        for var, value in (self.cause, self.effect):
            if var not in self.model.endogenous:
                raise UnknownVariable(f"{var} is not endogenous")
            if value not in self.model.signature.ranges[var]:
                raise ValueOutOfRange(f"{var}={value} is outside {self.model.signature.ranges[var]}")
        if self.cause[0] == self.effect[0]:
            raise ModelError("cause and effect must be distinct variables")

    def __str__(self):
        return f"{self.cause[0]}={self.cause[1]} => {self.effect[0]}={self.effect[1]}"


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witnesses: tuple = ()
    actual: World = None

    def __bool__(self):
        return self.holds

    def witness_worlds(self) -> list:
        return [w for _, w in self.witnesses]


Definition = Callable[[CauseQuery], Verdict]


def sufficient_condition(query: CauseQuery) -> Verdict:
    x_var, x = query.cause
    y_var, y = query.effect
    actual = solve(query.model, query.context)
    if actual[x_var] != x or actual[y_var] != y:
        raise FactualMismatch(
            f"{x_var}={x}, {y_var}={y} does not hold in the actual world {actual.describe()}"
        )
    witnesses = []
    for x_alt in query.model.signature.ranges[x_var]:
        if x_alt == x:
            continue
        world = solve(intervene(query.model, {x_var: x_alt}), query.context)
        if world[y_var] != y:
            witnesses.append((x_alt, world))
    return Verdict(bool(witnesses), tuple(witnesses), actual)


def actual_cause(query: CauseQuery, definition: Definition = sufficient_condition) -> Verdict:
    return definition(query)


@dataclass(frozen=True)
class Grading:
    candidates: tuple  # ((cause, best witnesses), ...)
    relation: Preorder

    def best(self, cause) -> tuple:
        for c, ws in self.candidates:
            if c == tuple(cause):
                return ws
        raise KeyError(cause)

    def compare(self, a, b) -> Relation:
        return self.relation.compare(tuple(a), tuple(b))


def grade(candidates: Sequence[CauseQuery], order: Preorder, definition: Definition = sufficient_condition) -> Grading:
    """Grade candidate causes by the normality of their most normal witnesses.

    A beats-or-ties B when every best witness of B is matched by a best
    witness of A that is at least as normal.
    """
    if not candidates:
        raise CausationError("nothing to grade")
    first = candidates[0]
    for q in candidates[1:]:
        if q.model != first.model or q.context != first.context:
            raise CausationError("all candidates must share the model and context")
    best = []
    for q in candidates:
        try:
            verdict = actual_cause(q, definition)
        except FactualMismatch as exc:
            raise NoWitness(f"{q}: {exc}") from None
        if not verdict.holds:
            raise NoWitness(f"{q}: no witness (the effect does not depend on the cause)")
        worlds = verdict.witness_worlds()
        for w in worlds:
            if w not in order:
                raise CausationError(f"witness {w} is not in the normality order")
        best.append((q.cause, tuple(sorted(order.maximal(worlds)))))
    causes = [c for c, _ in best]
    if len(set(causes)) != len(causes):
        raise CausationError("duplicate candidate cause")
    pairs = [
        (a, b)
        for a, wa in best
        for b, wb in best
        if all(any(order.geq(x, y) for x in wa) for y in wb)
    ]
    return Grading(tuple(best), Preorder(causes, pairs))
