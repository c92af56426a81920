"""Command-line interface: ``extcausal <command> <model file> ...``.

Exit status is 0 on success, 1 when the query is answered negatively (no
causation, an axiom fails) and 2 on bad input.
"""

from __future__ import annotations

import argparse
import random
import sys
from itertools import combinations

from .causation import CauseQuery, actual_cause, grade
from .cost import representation_cost
from .defaults import normality_order
from .dsl import ParsedModel, load_file
from .errors import ExtCausalError, FactualMismatch, NoWitness
from .export import export_order, grading_to_dot, grading_to_json, hasse_edges
from .model import intervene, solve
from .plausibility import DEFAULT_AXIOM_CAP, check_cpm_axioms

EXIT_OK, EXIT_NO, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _assignment(text: str) -> tuple:
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise InputError(f"expected VAR=VALUE, got {text!r}")
    try:
        return name.strip(), int(value)
    except ValueError:
        raise InputError(f"value in {text!r} is not an integer") from None


def _context(parsed: ParsedModel, name):
    if name is not None:
        return parsed.context(name)
    if len(parsed.contexts) == 1:
        return next(iter(parsed.contexts.values()))
    if not parsed.model.signature.exogenous:
        return {}
    raise InputError("--context is required (the file declares " + str(len(parsed.contexts)) + " contexts)")


def cmd_solve(args, parsed, out):
    world = solve(parsed.model, _context(parsed, args.context))
    print(world.describe(), file=out)
    return EXIT_OK


def cmd_intervene(args, parsed, out):
    settings = dict(_assignment(s) for s in args.set)
    model = intervene(parsed.model, settings)
    contexts = {args.context: parsed.context(args.context)} if args.context else dict(parsed.contexts)
    if not contexts and not model.signature.exogenous:
        contexts = {"(empty)": {}}
    if not contexts:
        raise InputError("the file declares no contexts to solve under")
    for name, ctx in contexts.items():
        print(f"{name}: {solve(model, ctx).describe()}", file=out)
    return EXIT_OK


def cmd_order(args, parsed, out):
    pre = normality_order(parsed.spec)
    if args.dot:
        out.write(export_order(pre, "dot"))
    elif args.json:
        out.write(export_order(pre, "json"))
    else:
        names = ", ".join(parsed.model.endogenous)
        print(f"worlds over ({names}), most normal last in each line", file=out)
        for lo, hi in hasse_edges(pre):
            print(f"{' ≡ '.join(map(str, lo))} < {' ≡ '.join(map(str, hi))}", file=out)
    return EXIT_OK


def cmd_cause(args, parsed, out):
    query = CauseQuery(parsed.model, _context(parsed, args.context), _assignment(args.cause), _assignment(args.effect))
    try:
        verdict = actual_cause(query)
    except FactualMismatch as exc:
        print(f"no: {exc}", file=out)
        return EXIT_NO
    if not verdict.holds:
        print(f"no: {query.effect[0]} does not depend on {query.cause[0]} in this context", file=out)
        return EXIT_NO
    print(f"yes: {query.cause[0]}={query.cause[1]} is a cause of {query.effect[0]}={query.effect[1]}", file=out)
    for x_alt, world in verdict.witnesses:
        print(f"  witness ({query.cause[0]}={x_alt}): {world.describe()}", file=out)
    return EXIT_OK


def cmd_grade(args, parsed, out):
    ctx = _context(parsed, args.context)
    effect = _assignment(args.effect)
    queries = [CauseQuery(parsed.model, ctx, _assignment(c), effect) for c in args.causes]
    try:
        grading = grade(queries, normality_order(parsed.spec))
    except NoWitness as exc:
        print(f"cannot grade: {exc}", file=sys.stderr)
        return EXIT_NO
    if args.dot:
        out.write(grading_to_dot(grading))
    elif args.json:
        out.write(grading_to_json(grading))
    else:
        for cause, best in grading.candidates:
            ws = ", ".join(w.describe() for w in best)
            print(f"{cause[0]}={cause[1]}: best witnesses {ws}", file=out)
        causes = [c for c, _ in grading.candidates]
        for a, b in combinations(causes, 2):
            rel = grading.compare(a, b).name.lower()
            print(f"{a[0]}={a[1]} vs {b[0]}={b[1]}: {rel}", file=out)
    return EXIT_OK


def cmd_check(args, parsed, out):
    pre = normality_order(parsed.spec)
    if len(pre) <= args.cap:
        samples = [pre]
        print(f"checking the full order on {len(pre)} worlds", file=out)
    else:
        rng = random.Random(args.seed)
        samples = [pre.restrict(rng.sample(pre.elements, args.cap)) for _ in range(args.samples)]
        print(f"{len(pre)} worlds exceed the cap of {args.cap}; checking {args.samples} random "
              f"{args.cap}-world restrictions (seed {args.seed})", file=out)
    failed = None
    for sub in samples:
        report = check_cpm_axioms(sub, cap=args.cap)
        if not report.passed:
            failed = (sub, report)
            break
    if failed is None:
        print("all axioms pass: " + " ".join(r.name for r in report.results), file=out)
        return EXIT_OK
    sub, report = failed
    print("worlds: " + " ".join(map(str, sub.elements)), file=out)
    for line in report.lines():
        print(line, file=out)
    return EXIT_NO


def cmd_cost(args, parsed, out):
    report = representation_cost(parsed.spec)
    if args.json:
        out.write(report.to_json())
    else:
        for line in report.lines():
            print(line, file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="extcausal", description="Query extended causal models.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("file", help="model file")
        p.set_defaults(func=func)
        return p

    p = add("solve", cmd_solve, "actual world under a context")
    p.add_argument("--context")

    p = add("intervene", cmd_intervene, "solve after setting variables")
    p.add_argument("--set", action="append", required=True, metavar="X=v")
    p.add_argument("--context")

    p = add("order", cmd_order, "induced normality order on worlds")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")

    p = add("cause", cmd_cause, "is X=x an actual cause of Y=y")
    p.add_argument("--context")
    p.add_argument("cause", metavar="X=x")
    p.add_argument("effect", metavar="Y=y")

    p = add("grade", cmd_grade, "grade candidate causes by witness normality")
    p.add_argument("--context")
    p.add_argument("--effect", required=True, metavar="Y=y")
    p.add_argument("causes", nargs="+", metavar="X=x")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", action="store_true")

    p = add("check", cmd_check, "check the plausibility axioms on the induced order")
    p.add_argument("--cap", type=int, default=DEFAULT_AXIOM_CAP)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = add("cost", cmd_cost, "representation cost")
    p.add_argument("--json", action="store_true")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        parsed = load_file(args.file)
        return args.func(args, parsed, out)
    except (ExtCausalError, InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
