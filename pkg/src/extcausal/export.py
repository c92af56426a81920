"""DOT and JSON renderings of orders, networks, gradings and cost reports.

Every output is byte-deterministic: elements are listed in carrier order and
relation lists are sorted.
"""

from __future__ import annotations

import json
from typing import Callable, Optional

from .causation import Grading
from .model import Signature, World
from .network import AtomOrder, Cpt, PlausibilisticNetwork
from .preorder import Preorder


def _label(x) -> str:
    if isinstance(x, World):
        return str(x)
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], str):
        return f"{x[0]}={x[1]}"
    return str(x)


def _jsonable(x):
    if isinstance(x, World):
        return list(x.values)
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    return x


def hasse_edges(pre: Preorder) -> list:
    """Covering pairs ``(lower class, upper class)`` between equivalence classes."""
    classes = pre.classes()
    rep = [c[0] for c in classes]
    n = len(classes)
    above = [[j for j in range(n) if j != i and pre.gt(rep[j], rep[i])] for i in range(n)]
    edges = []
    for i in range(n):
        for j in above[i]:
            # j covers i unless some k sits strictly between them
            if not any(k in above[i] and j in above[k] for k in above[i]):
                edges.append((classes[i], classes[j]))
    return edges


def order_to_dot(pre: Preorder, name: str = "order", label: Callable = _label) -> str:
    """Hasse diagram: one node per equivalence class, edges point to the more normal class."""
    node = lambda cls: '"' + " ≡ ".join(label(x) for x in cls) + '"'
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for cls in pre.classes():
        lines.append(f"  {node(cls)};")
    for lo, hi in hasse_edges(pre):
        lines.append(f"  {node(lo)} -> {node(hi)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def order_to_json(pre: Preorder, variables: Optional[tuple] = None) -> str:
    """Full closed relation as sorted ``[greater, lesser]`` pairs."""
    doc = {}
    if variables is not None:
        doc["variables"] = list(variables)
    doc["elements"] = [_jsonable(e) for e in pre.elements]
    doc["geq"] = sorted([_jsonable(a), _jsonable(b)] for a, b in pre.pairs())
    doc["strict"] = sorted([_jsonable(a), _jsonable(b)] for a, b in pre.strict_pairs())
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def export_order(pre: Preorder, fmt: str = "dot", variables: Optional[tuple] = None) -> str:
    if fmt == "dot":
        return order_to_dot(pre)
    if fmt == "json":
        if variables is None and pre.elements and isinstance(pre.elements[0], World):
            variables = pre.elements[0].names
        return order_to_json(pre, variables)
    raise ValueError(f"unknown format {fmt!r}")


def network_to_dict(net: PlausibilisticNetwork, order: AtomOrder) -> dict:
    sig = net.signature
    return {
        "variables": [{"name": v, "range": list(sig.ranges[v])} for v in net.variables],
        "tables": [
            {
                "variable": v,
                "parents": list(net.tables[v].parents),
                "entries": [
                    {"value": x, "given": list(pv), "atom": atom}
                    for (x, pv), atom in sorted(net.tables[v].entries.items())
                ],
            }
            for v in net.variables
        ],
        "atoms": list(order.atoms),
        "strict": sorted([a, b] for a, b in order.strict),
        "weak": sorted([a, b] for a, b in order.weak),
    }


def network_to_json(net: PlausibilisticNetwork, order: AtomOrder) -> str:
    return json.dumps(network_to_dict(net, order), indent=2) + "\n"


def network_from_json(text: str) -> tuple:
    """Inverse of :func:`network_to_json`: ``(network, atom order)``."""
    doc = json.loads(text)
    sig = Signature.of({v["name"]: v["range"] for v in doc["variables"]})
    tables = {}
    for t in doc["tables"]:
        entries = {(e["value"], tuple(e["given"])): e["atom"] for e in t["entries"]}
        tables[t["variable"]] = Cpt(tuple(t["parents"]), entries)
    net = PlausibilisticNetwork(sig, tables)
    order = AtomOrder(doc["atoms"], [tuple(p) for p in doc["strict"]], [tuple(p) for p in doc.get("weak", [])])
    return net, order


def grading_to_dict(grading: Grading) -> dict:
    rel = grading.relation
    return {
        "candidates": [
            {"cause": _label(c), "best_witnesses": [_jsonable(w) for w in ws]} for c, ws in grading.candidates
        ],
        "geq": sorted([_label(a), _label(b)] for a, b in rel.pairs()),
        "strict": sorted([_label(a), _label(b)] for a, b in rel.strict_pairs()),
    }


def grading_to_json(grading: Grading) -> str:
    return json.dumps(grading_to_dict(grading), indent=2) + "\n"


def grading_to_dot(grading: Grading) -> str:
    return order_to_dot(grading.relation, name="grading")
