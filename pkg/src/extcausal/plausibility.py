"""Conditional plausibility measure induced by a partial preorder on worlds.

Sets of worlds are compared by the lift ``U >=+ V``.  Each value
``d[U|V]`` is stored with both sets replaced by their largest equivalent
set, which is the down-closure under the preorder, so two values are the
same object exactly when their classes coincide.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .errors import EmptyConditioningSet, SpaceTooLarge
from .preorder import Preorder, Relation

DEFAULT_AXIOM_CAP = 5


@dataclass(frozen=True)
class PlausibilityValue:
    kind: str  # "bottom", "top" or "conditional"
    event: Optional[frozenset] = None
    given: Optional[frozenset] = None

    def __str__(self):
        if self.kind == "bottom":
            return "⊥"
        if self.kind == "top":
            return "⊤"
        return f"d[{_fmt(self.event)}|{_fmt(self.given)}]"


BOTTOM = PlausibilityValue("bottom")
TOP = PlausibilityValue("top")


def _fmt(s) -> str:
    try:
        items = sorted(s)
    except TypeError:
        items = list(s)
    return "{" + ",".join(str(x) for x in items) + "}"


def conditional_plausibility(pre: Preorder, u: Iterable, v: Iterable) -> PlausibilityValue:
    """``Pl(U | V)``: bottom on disjointness, top when ``U ∩ V`` is as plausible as ``V``."""
    return _pl(pre, pre.mask(u), pre.mask(v))


def _pl(pre: Preorder, u: int, v: int) -> PlausibilityValue:
    if v == 0:
        raise EmptyConditioningSet("Pl(U | V) is undefined for empty V")
    inter = u & v
    if inter == 0:
        return BOTTOM
    event, given = pre.down_mask(inter), pre.down_mask(v)
    # an event equivalent to the conditioning set is not a strict sub-class of it
    if event == given:
        return TOP
    return PlausibilityValue("conditional", pre.members(event), pre.members(given))


def _leq(pre: Preorder, p: PlausibilityValue, q: PlausibilityValue) -> bool:
    if p.kind == "bottom" or q.kind == "top":
        return True
    if p.kind == "top" or q.kind == "bottom":
        return False
    same_given = pre.down_mask(pre.mask(p.given)) == pre.down_mask(pre.mask(q.given))
    return same_given and pre.lift(q.event, p.event)


def compare_values(pre: Preorder, p: PlausibilityValue, q: PlausibilityValue) -> Relation:
    return Relation.from_order(_leq(pre, p, q), _leq(pre, q, p))


def check_independence(pre: Preorder, u: Iterable, v: Iterable, vp: Iterable) -> bool:
    """Whether learning ``V`` leaves ``Pl(U | V')`` unchanged (asymmetric in U and V)."""
    um, vm, vpm = pre.mask(u), pre.mask(v), pre.mask(vp)
    if vpm == 0:
        raise EmptyConditioningSet("conditioning set V' is empty")
    if vm & vpm == 0:
        return True
    return _pl(pre, um, vm & vpm) == _pl(pre, um, vpm)


@dataclass
class AxiomResult:
    name: str
    passed: bool = True
    instances: int = 0
    counterexample: Optional[dict] = None

    def fail(self, **witness):
        if self.passed:
            self.passed = False
            self.counterexample = witness


@dataclass
class AxiomReport:
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __getitem__(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failures(self) -> list:
        return [r for r in self.results if not r.passed]

    def lines(self) -> list:
        out = []
        for r in self.results:
            status = "pass" if r.passed else "FAIL"
            line = f"{r.name:<5} {status}  ({r.instances} instances)"
            if r.counterexample:
                detail = ", ".join(f"{k}={v}" for k, v in r.counterexample.items())
                line += f"  counterexample: {detail}"
            out.append(line)
        return out


Measure = Callable[[frozenset, frozenset], PlausibilityValue]
AXIOMS = ("CPl1", "CPl2", "CPl3", "CPl4", "Alg1", "Alg2", "Alg3", "Alg4")


def check_cpm_axioms(
    pre: Preorder,
    cap: int = DEFAULT_AXIOM_CAP,
    measure: Optional[Measure] = None,
    axioms: Iterable[str] = AXIOMS,
) -> AxiomReport:
    """Exhaustively check the conditional and algebraic plausibility axioms.

    ``measure`` defaults to the preorder-induced measure; any other function
    of ``(U, V)`` returning PlausibilityValues may be checked instead, with
    values still compared through ``pre``.  Alg1 and Alg2 are checked as
    well-definedness of the partial operations they induce on their
    domains; Alg3 and Alg4 are checked on every instance from those domains.
    """
    n = len(pre)
    if n > cap:
        raise SpaceTooLarge(f"{n} worlds exceeds the axiom-check cap of {cap}")
    full = pre.full_mask
    subsets = range(full + 1)
    nonempty = range(1, full + 1)

    if measure is None:
        table = {(u, v): _pl(pre, u, v) for v in nonempty for u in subsets}
    else:
        table = {(u, v): measure(pre.members(u), pre.members(v)) for v in nonempty for u in subsets}

    leq_cache = {}

    def leq(p, q):
        key = (p, q)
        if key not in leq_cache:
            leq_cache[key] = _leq(pre, p, q)
        return leq_cache[key]

    def same(p, q):
        return p == q or (leq(p, q) and leq(q, p))

    def show(mask):
        return _fmt(pre.members(mask))

    wanted = set(axioms)
    report = AxiomReport()

    if "CPl1" in wanted:
        r = AxiomResult("CPl1")
        for v in nonempty:
            r.instances += 1
            if not same(table[0, v], BOTTOM):
                r.fail(V=show(v), value=str(table[0, v]))
        report.results.append(r)

    if "CPl2" in wanted:
        r = AxiomResult("CPl2")
        for v in nonempty:
            r.instances += 1
            if not same(table[full, v], TOP):
                r.fail(V=show(v), value=str(table[full, v]))
        report.results.append(r)

    if "CPl3" in wanted:
        r = AxiomResult("CPl3")
        for v in nonempty:
            for up in subsets:
                for u in _submasks(up):
                    r.instances += 1
                    if not leq(table[u, v], table[up, v]):
                        r.fail(U=show(u), U_prime=show(up), V=show(v))
        report.results.append(r)

    if "CPl4" in wanted:
        r = AxiomResult("CPl4")
        for v in nonempty:
            for u in subsets:
                r.instances += 1
                if not same(table[u, v], table[u & v, v]):
                    r.fail(U=show(u), V=show(v))
        report.results.append(r)

    need_plus = wanted & {"Alg1", "Alg3"}
    need_times = wanted & {"Alg2", "Alg3", "Alg4"}

    plus = {}
    if need_plus:
        r = AxiomResult("Alg1")
        for v in nonempty:
            for union in subsets:
                for v1 in _submasks(union):
                    v2 = union ^ v1
                    r.instances += 1
                    key = (table[v1, v], table[v2, v])
                    result = table[union, v]
                    seen = plus.setdefault(key, (result, v1, v2, v))
                    if not same(seen[0], result):
                        r.fail(
                            first=f"Pl({show(seen[1])}|{show(seen[3])}) ⊕ Pl({show(seen[2])}|{show(seen[3])})",
                            second=f"Pl({show(v1)}|{show(v)}) ⊕ Pl({show(v2)}|{show(v)})",
                        )
        if "Alg1" in wanted:
            report.results.append(r)

    times = {}
    if need_times:
        r = AxiomResult("Alg2")
        for vp in nonempty:
            for v in _submasks(vp):
                if v == 0:
                    continue
                for u in _submasks(v):
                    r.instances += 1
                    key = (table[u, v], table[v, vp])
                    result = table[u, vp]
                    seen = times.setdefault(key, (result, u, v, vp))
                    if not same(seen[0], result):
                        r.fail(
                            first=f"U={show(seen[1])} V={show(seen[2])} V'={show(seen[3])}",
                            second=f"U={show(u)} V={show(v)} V'={show(vp)}",
                        )
        if "Alg2" in wanted:
            report.results.append(r)

    if "Alg3" in wanted:
        r = AxiomResult("Alg3")
        by_left = {}
        for (a, b), (prod, *_rest) in times.items():
            by_left.setdefault(a, {})[b] = prod
        sums = {key: val[0] for key, val in plus.items()}
        for a, row in by_left.items():
            for (b1, b2), s in sums.items():
                if b1 not in row or b2 not in row or s not in row:
                    continue
                p1, p2 = row[b1], row[b2]
                if (p1, p2) not in sums:
                    continue
                r.instances += 1
                if not same(row[s], sums[p1, p2]):
                    r.fail(a=str(a), b1=str(b1), b2=str(b2))
        report.results.append(r)

    if "Alg4" in wanted:
        r = AxiomResult("Alg4")
        by_right = {}
        for (a, c), (prod, *_rest) in times.items():
            if c.kind != "bottom":
                by_right.setdefault(c, set()).add((a, prod))
        for c, entries in by_right.items():
            for (a, ac), (b, bc) in itertools.product(entries, repeat=2):
                r.instances += 1
                if leq(ac, bc) and not leq(a, b):
                    r.fail(a=str(a), b=str(b), c=str(c))
        report.results.append(r)

    return report


def _submasks(mask: int):
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask
