"""Hypothesis strategies for preorders, atom orders and small causal models."""

from __future__ import annotations

import itertools
import random

from hypothesis import strategies as st

from extcausal import AtomOrder, FormalProduct, Preorder, build_model
from extcausal.expr import Table


@st.composite
def preorders(draw, min_size=1, max_size=5):
    n = draw(st.integers(min_size, max_size))
    off = [(a, b) for a in range(n) for b in range(n) if a != b]
    pairs = draw(st.lists(st.sampled_from(off), max_size=2 * n)) if off else []
    return Preorder(range(n), pairs)


def random_preorder(rng: random.Random, n: int, density: float = None) -> Preorder:
    density = rng.random() if density is None else density
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b and rng.random() < density / 2]
    return Preorder(range(n), pairs)


def random_atom_order(rng: random.Random, variables: int, atoms_per_var: int, cross: int):
    """Atoms ``x{i}_{k}`` with a strict order respecting a hidden ranking, so never cyclic."""
    atoms = [f"x{i}_{k}" for i in range(variables) for k in range(atoms_per_var)]
    rank = {a: rng.random() for a in atoms}
    strict, weak = [], []
    for i in range(variables):
        group = [f"x{i}_{k}" for k in range(atoms_per_var)]
        for a, b in itertools.combinations(group, 2):
            if rng.random() < 0.7:
                hi, lo = (a, b) if rank[a] > rank[b] else (b, a)
                strict.append((hi, lo))
    for _ in range(cross if len(atoms) > 1 else 0):
        a, b = rng.sample(atoms, 2)
        hi, lo = (a, b) if rank[a] > rank[b] else (b, a)
        (strict if rng.random() < 0.8 else weak).append((hi, lo))
    return AtomOrder(atoms, strict, weak)


def random_product(rng: random.Random, variables: int, atoms_per_var: int) -> FormalProduct:
    return FormalProduct(tuple(f"x{i}_{rng.randrange(atoms_per_var)}" for i in range(variables)))


def random_binary_model(rng: random.Random, max_vars: int = 6, max_parents: int = 3):
    """A random acyclic binary model plus plain-Python equations for the oracle.

    Variables ``X0..Xn-1`` are declared in a shuffled order so the library
    has to find the topological order itself; ``order`` is the true one.
    """
    n = rng.randint(2, max_vars)
    order = [f"X{i}" for i in range(n)]
    equations, py = {}, {}
    for i, var in enumerate(order):
        k = rng.randint(0, min(i, max_parents))
        if k == 0:
            continue  # root, driven by U_var
        parents = tuple(rng.sample(order[:i], k))
        rows = tuple((key, rng.randint(0, 1)) for key in itertools.product((0, 1), repeat=k))
        equations[var] = Table(parents, rows)
        lookup = dict(rows)
        py[var] = lambda env, p=parents, t=lookup: t[tuple(env[x] for x in p)]
    declared = order[:]
    rng.shuffle(declared)
    model = build_model({v: (0, 1) for v in declared}, equations)
    for var in order:
        if var not in py:
            py[var] = lambda env, u=f"U_{var}": env[u]
    context = {u: rng.randint(0, 1) for u in model.exogenous}
    return model, order, py, context


models_seeds = st.integers(0, 2**32 - 1)
