"""Check the plausibility axioms on every preorder over a few worlds, plus random ones.

    python3 scripts/axiom_sweep.py [--exhaustive 3] [--random 500] [--sizes 4 5] [--seed 0]

``--literal`` swaps in the measure that returns a conditional value even when
the event is as plausible as the conditioning set, to show which axioms it breaks.
"""

import argparse
import itertools
import random
import time
from collections import Counter

from extcausal import BOTTOM, TOP, PlausibilityValue, Preorder, check_cpm_axioms


def all_preorders(n):
    off = [(a, b) for a in range(n) for b in range(n) if a != b]
    for bits in itertools.product((0, 1), repeat=len(off)):
        pairs = [p for p, keep in zip(off, bits) if keep]
        rel = set(pairs) | {(a, a) for a in range(n)}
        if all((a, d) in rel for a, b in rel for c, d in rel if b == c):
            yield Preorder(range(n), pairs)


def random_preorder(rng, n, density=0.3):
    return Preorder(range(n), [(a, b) for a in range(n) for b in range(n) if a != b and rng.random() < density])


def literal_measure(pre):
    down = lambda s: pre.members(pre.down_mask(pre.mask(s)))

    def measure(u, v):
        i = u & v
        if not i:
            return BOTTOM
        if i == v:
            return TOP
        return PlausibilityValue("conditional", down(i), down(v))

    return measure


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--exhaustive", type=int, default=3, help="enumerate every preorder on this many worlds")
    parser.add_argument("--random", type=int, default=500)
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 5])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--literal", action="store_true")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    orders = list(all_preorders(args.exhaustive))
    print(f"{len(orders)} preorders on {args.exhaustive} worlds, {args.random} random on sizes {args.sizes}")
    orders += [random_preorder(rng, rng.choice(args.sizes)) for _ in range(args.random)]

    start = time.perf_counter()
    failing, first = Counter(), {}
    for pre in orders:
        measure = literal_measure(pre) if args.literal else None
        for r in check_cpm_axioms(pre, measure=measure).results:
            if not r.passed:
                failing[r.name] += 1
                first.setdefault(r.name, (pre.pairs(), r.counterexample))
    elapsed = time.perf_counter() - start

    if not failing:
        print(f"all axioms hold on all {len(orders)} preorders ({elapsed:.1f}s)")
        return
    for name, count in sorted(failing.items()):
        pairs, witness = first[name]
        print(f"{name}: fails on {count} preorders, e.g. order {sorted(pairs)} at {witness}")
    print(f"({elapsed:.1f}s)")


if __name__ == "__main__":
    main()
