"""Print the forest-fire normality orders, with and without the lightning/arson ranking.

    python3 scripts/forest_fire_orders.py [--out DIR]

With ``--out`` the Hasse diagrams are also written as DOT and JSON.
"""

import argparse
from pathlib import Path

from extcausal import load_file, normality_order
from extcausal.export import export_order, hasse_edges

MODELS = Path(__file__).resolve().parent.parent / "models"
ORDERS = {
    "independent": "forest_fire.ecm",
    "ranked": "forest_fire_ranked.ecm",
}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, help="directory for .dot and .json files")
    args = parser.parse_args()

    for name, file in ORDERS.items():
        parsed = load_file(MODELS / file)
        pre = normality_order(parsed.spec)
        print(f"== {name} ({file}), worlds as ({', '.join(parsed.model.endogenous)})")
        for lo, hi in hasse_edges(pre):
            print(f"  {' ≡ '.join(map(str, lo))}  <  {' ≡ '.join(map(str, hi))}")
        top = [str(c[0]) for c in pre.classes() if not any(pre.gt(d[0], c[0]) for d in pre.classes())]
        print(f"  most normal: {', '.join(top)}")
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            for fmt in ("dot", "json"):
                (args.out / f"{name}.{fmt}").write_text(export_order(pre, fmt))
    if args.out:
        print(f"wrote diagrams to {args.out}")


if __name__ == "__main__":
    main()
