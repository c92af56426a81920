"""How much information an explicit model takes versus a compact one."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Optional, Union

from .defaults import CompactSpec
from .model import CausalModel


@dataclass(frozen=True)
class VariableCost:
    name: str
    parents: tuple
    equation_values: int  # one output per parent setting
    table_entries: int  # one atom per (value, parent setting)


@dataclass(frozen=True)
class CostReport:
    variables: int
    binary: bool
    naive_bits: Optional[int]  # n * 2^(n-1) for n binary variables
    candidates_per_variable: Optional[int]  # 2^(2^(n-1))
    worlds: int
    total_orders: int  # worlds!, exact
    per_variable: tuple
    comparisons: int

    @property
    def equation_values(self) -> int:
        return sum(v.equation_values for v in self.per_variable)

    @property
    def table_entries(self) -> int:
        return sum(v.table_entries for v in self.per_variable)

    @property
    def compact_cost(self) -> int:
        return self.table_entries + self.comparisons

    def lines(self) -> list:
        na = "n/a (non-binary variables)"
        out = [
            f"endogenous variables: {self.variables}",
            f"naive equation bits: {self.naive_bits if self.binary else na}",
            f"candidate equations per variable: {self.candidates_per_variable if self.binary else na}",
            f"worlds: {self.worlds}",
            f"strict total orders on worlds: {self.total_orders} (~{_sci(self.total_orders)})",
        ]
        for v in self.per_variable:
            given = ", ".join(v.parents) or "-"
            out.append(f"  {v.name} | {given}: {v.equation_values} equation values, {v.table_entries} table entries")
        out.append(f"compact cost: {self.table_entries} table entries + {self.comparisons} comparisons")
        return out

    def to_json(self) -> str:
        doc = asdict(self)
        doc["per_variable"] = [dict(asdict(v), parents=list(v.parents)) for v in self.per_variable]
        doc["total_orders"] = str(self.total_orders)  # beyond the safe JSON integer range
        doc.update(equation_values=self.equation_values, table_entries=self.table_entries,
                   compact_cost=self.compact_cost)
        return json.dumps(doc, indent=2) + "\n"


def _sci(n: int) -> str:
    digits = str(n)
    if len(digits) <= 6:
        return digits
    return f"{digits[0]}.{digits[1:3]}e{len(digits) - 1}"


def representation_cost(spec: Union[CompactSpec, CausalModel]) -> CostReport:
    if isinstance(spec, CompactSpec):
        model, overrides, comparisons = spec.model, spec.overrides, len(spec.comparisons)
    else:
        model, overrides, comparisons = spec, {}, 0
    sig = model.signature
    n = len(model.endogenous)
    binary = all(tuple(sig.ranges[v]) == (0, 1) for v in model.endogenous)
    per = []
    for var in model.endogenous:
        parents = overrides[var].parents if var in overrides else model.endogenous_parents(var)
        settings = math.prod(len(sig.ranges[p]) for p in parents)
        per.append(VariableCost(var, tuple(parents), settings, settings * len(sig.ranges[var])))
    worlds = math.prod(len(sig.ranges[v]) for v in model.endogenous)
    return CostReport(
        variables=n,
        binary=binary,
        naive_bits=n * 2 ** (n - 1) if binary else None,
        candidates_per_variable=2 ** (2 ** (n - 1)) if binary else None,
        worlds=worlds,
        total_orders=math.factorial(worlds),
        per_variable=tuple(per),
        comparisons=comparisons,
    )
