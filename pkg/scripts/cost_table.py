"""Tabulate explicit versus compact representation cost for n binary variables.

    python3 scripts/cost_table.py [--max-n 8]
"""

import argparse

from extcausal import build_model, representation_cost


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=8)
    args = parser.parse_args()

    header = f"{'n':>3} {'worlds':>7} {'naive bits':>11} {'equations/var':>16} {'total orders':>14}"
    print(header)
    print("-" * len(header))
    for n in range(1, args.max_n + 1):
        report = representation_cost(build_model({f"X{i}": (0, 1) for i in range(n)}, {}))
        cands = report.candidates_per_variable
        cands = str(cands) if cands < 10**12 else f"2^{2 ** (n - 1)}"
        orders = str(report.total_orders)
        orders = orders if len(orders) <= 14 else f"{orders[0]}.{orders[1:3]}e{len(orders) - 1}"
        print(f"{n:>3} {report.worlds:>7} {report.naive_bits:>11} {cands:>16} {orders:>14}")


if __name__ == "__main__":
    main()
