"""Text format for extended causal models.

A document is a sequence of statements separated by newlines or ``;``::

    var L, M, F : {0, 1}
    F = max(L, M)
    Pl(L=0) > Pl(L=1)
    Pl(M=0) > Pl(M=1)
    context arson : L=0, M=1

See ``docs/grammar.md`` for the full grammar.  Variables declared without
an equation are driven by an implicit exogenous ``U_X``; contexts may assign
them by their own name.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from .defaults import CompactSpec, Comparison, rule1_atoms
from .errors import CyclicModel, ExtCausalError
from .expr import BinOp, Call, Const, Expr, IfThenElse, Table, Var
from .model import CausalModel, build_model, check_acyclic
from .network import Cpt
from .preorder import Preorder

GRAMMAR = r"""
start: _SEP? (_stmt (_SEP _stmt)*)? _SEP?

_stmt: var_decl | exo_decl | equation | chain | cpt | context

var_decl: "var" _names ":" range
exo_decl: "exo" _names ":" range
_names: NAME ("," NAME)*

range: "{" signed ("," signed)* "}"  -> range_set
     | "{" signed ".." signed "}"    -> range_span

equation: NAME "=" expr

chain: term (rel term)+
rel: ">"  -> gt
   | ">=" -> ge
   | "="  -> eq
term: "Pl" "(" NAME "=" signed given? ")" -> pl_term
    | ATOM                                 -> atom_term
given: "|" assign ("," assign)*

cpt: "cpt" NAME cpt_parents? "{" _SEP? cpt_entry (_SEP cpt_entry)* _SEP? "}"
cpt_parents: "|" NAME ("," NAME)*
cpt_entry: NAME "=" signed given? "->" ATOM

context: "context" NAME (":" assign ("," assign)*)?
assign: NAME "=" signed

?expr: "if" expr "then" expr "else" expr -> ifelse
     | cmp
?cmp: sum
    | sum ">=" sum -> ge_op
    | sum "==" sum -> eq_op
?sum: prod
    | sum "+" prod -> add
    | sum "-" prod -> sub
?prod: primary
     | prod "*" primary -> mul
?primary: INT                            -> const
        | NAME                           -> var
        | "min" "(" expr ("," expr)* ")" -> min_call
        | "max" "(" expr ("," expr)* ")" -> max_call
        | "(" expr ")"
        | table
table: "table" "(" NAME ("," NAME)* ")" "{" _SEP? row (_SEP row)* _SEP? "}"
row: signed+ "->" signed

signed: INT | "-" INT -> negative

ATOM.2: /[A-Za-z_][A-Za-z0-9_]*\^[A-Za-z0-9_+\-]+/
NAME: /[A-Za-z_][A-Za-z0-9_]*/
INT: /[0-9]+/
_SEP: /([ \t\f\r]*(\n|;|#[^\n]*))+/
%ignore /[ \t\f\r]+/
"""

KEYWORDS = {"var", "exo", "cpt", "context", "Pl", "if", "then", "else", "min", "max", "table"}


class DSLError(ExtCausalError):
    """A problem in model text, located by 1-based line and column."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(where + message)


class DSLSyntaxError(DSLError):
    pass


class UnknownName(DSLError):
    pass


class DuplicateDeclaration(DSLError):
    pass


class CyclicModelError(DSLError, CyclicModel):
    def __init__(self, cycle, line=None, column=None):
        cycle = tuple(cycle)
        DSLError.__init__(self, "cyclic dependency: " + " -> ".join(cycle), line, column)
        self.cycle = cycle  # set last: the base initialiser chain reaches CyclicModel too


@dataclass(frozen=True)
class Span:
    line: int
    column: int


def _no_span():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class VarDecl:
    name: str
    values: tuple
    exogenous: bool = False
    span: Optional[Span] = _no_span()


@dataclass(frozen=True)
class EquationDecl:
    target: str
    body: Expr
    span: Optional[Span] = _no_span()


@dataclass(frozen=True)
class PlTerm:
    var: str
    value: int
    given: tuple = ()
    span: Optional[Span] = _no_span()

    def __str__(self):
        cond = " | " + ", ".join(f"{k}={v}" for k, v in self.given) if self.given else ""
        return f"Pl({self.var}={self.value}{cond})"


@dataclass(frozen=True)
class AtomTerm:
    name: str
    span: Optional[Span] = _no_span()

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class ChainDecl:
    terms: tuple
    ops: tuple
    span: Optional[Span] = _no_span()


@dataclass(frozen=True)
class CptEntry:
    value: int
    given: tuple
    atom: str
    span: Optional[Span] = _no_span()


@dataclass(frozen=True)
class CptDecl:
    var: str
    parents: tuple
    entries: tuple
    span: Optional[Span] = _no_span()


@dataclass(frozen=True)
class ContextDecl:
    name: str
    assignment: tuple
    span: Optional[Span] = _no_span()


@dataclass(frozen=True)
class ModelDocument:
    variables: tuple = ()
    exogenous: tuple = ()
    equations: tuple = ()
    overrides: tuple = ()
    plaus: tuple = ()
    contexts: tuple = ()


def _span(meta) -> Optional[Span]:
    if getattr(meta, "empty", True):
        return None
    return Span(meta.line, meta.column)


@v_args(meta=True)
class _ToAST(Transformer):
    def start(self, meta, items):
        buckets = {k: [] for k in ("variables", "exogenous", "equations", "overrides", "plaus", "contexts")}
        for item in items:
            if isinstance(item, list):
                for decl in item:
                    buckets["exogenous" if decl.exogenous else "variables"].append(decl)
            elif isinstance(item, EquationDecl):
                buckets["equations"].append(item)
            elif isinstance(item, CptDecl):
                buckets["overrides"].append(item)
            elif isinstance(item, ChainDecl):
                buckets["plaus"].append(item)
            elif isinstance(item, ContextDecl):
                buckets["contexts"].append(item)
        return ModelDocument(**{k: tuple(v) for k, v in buckets.items()})

    def _decl(self, meta, items, exogenous):
        *names, values = items
        return [VarDecl(_name(n), values, exogenous, _tok_span(n)) for n in names]

    def var_decl(self, meta, items):
        return self._decl(meta, items, False)

    def exo_decl(self, meta, items):
        return self._decl(meta, items, True)

    def range_set(self, meta, items):
        return tuple(items)

    def range_span(self, meta, items):
        lo, hi = items
        if hi < lo:
            raise DSLError(f"empty range {{{lo}..{hi}}}", meta.line, meta.column)
        return tuple(range(lo, hi + 1))

    def equation(self, meta, items):
        target, body = items
        return EquationDecl(_name(target), body, _span(meta))

    def chain(self, meta, items):
        return ChainDecl(tuple(items[0::2]), tuple(items[1::2]), _span(meta))

    def gt(self, meta, items):
        return ">"

    def ge(self, meta, items):
        return ">="

    def eq(self, meta, items):
        return "="

    def pl_term(self, meta, items):
        var, value, *rest = items
        return PlTerm(_name(var), value, rest[0] if rest else (), _span(meta))

    def atom_term(self, meta, items):
        return AtomTerm(str(items[0]), _span(meta))

    def given(self, meta, items):
        return tuple(items)

    def assign(self, meta, items):
        return (_name(items[0]), items[1])

    def cpt(self, meta, items):
        var, *rest = items
        parents = ()
        if rest and isinstance(rest[0], tuple) and rest[0] and isinstance(rest[0][0], str):
            parents = rest.pop(0)
        return CptDecl(_name(var), parents, tuple(rest), _span(meta))

    def cpt_parents(self, meta, items):
        return tuple(_name(n) for n in items)

    def cpt_entry(self, meta, items):
        var, value, *rest = items
        atom = str(rest[-1])
        given = rest[0] if len(rest) == 2 else ()
        return CptEntry(value, given, atom, _span(meta)), _name(var)

    def context(self, meta, items):
        name, *assigns = items
        return ContextDecl(_name(name), tuple(assigns), _span(meta))

    def signed(self, meta, items):
        return int(items[0])

    def negative(self, meta, items):
        return -int(items[0])

    # expressions

    def ifelse(self, meta, items):
        return IfThenElse(*items)

    def ge_op(self, meta, items):
        return BinOp(">=", *items)

    def eq_op(self, meta, items):
        return BinOp("==", *items)

    def add(self, meta, items):
        return BinOp("+", *items)

    def sub(self, meta, items):
        return BinOp("-", *items)

    def mul(self, meta, items):
        return BinOp("*", *items)

    def const(self, meta, items):
        return Const(int(items[0]))

    def var(self, meta, items):
        return Var(_name(items[0]))

    def min_call(self, meta, items):
        return Call("min", tuple(items))

    def max_call(self, meta, items):
        return Call("max", tuple(items))

    def table(self, meta, items):
        names = tuple(_name(t) for t in items if isinstance(t, Token))
        rows = tuple(r for r in items if not isinstance(r, Token))
        width = len(names)
        for key, _ in rows:
            if len(key) != width:
                raise DSLError(f"table row has {len(key)} inputs, expected {width}", meta.line, meta.column)
        return Table(names, rows)

    def row(self, meta, items):
        *key, out = items
        return (tuple(key), out)


def _name(tok) -> str:
    s = str(tok)
    if s in KEYWORDS:
        raise DSLError(f"{s!r} is a reserved word", getattr(tok, "line", None), getattr(tok, "column", None))
    return s


def _tok_span(tok) -> Optional[Span]:
    line = getattr(tok, "line", None)
    return Span(line, tok.column) if line is not None else None


_parser = Lark(GRAMMAR, parser="lalr", propagate_positions=True, maybe_placeholders=False)
_expr_parser = Lark(GRAMMAR, parser="lalr", start="expr", propagate_positions=True)


def _parse(parser, text: str):
    try:
        tree = parser.parse(text)
        return _ToAST().transform(tree)
    except VisitError as exc:
        if isinstance(exc.orig_exc, ExtCausalError):
            raise exc.orig_exc from None
        raise
    except UnexpectedEOF as exc:
        raise DSLSyntaxError("unexpected end of input", exc.line if exc.line > 0 else None,
                             exc.column if exc.column > 0 else None) from None
    except UnexpectedToken as exc:
        if exc.token.type == "$END":
            raise DSLSyntaxError("unexpected end of input", exc.line, exc.column) from None
        expected = ", ".join(sorted(exc.expected)[:6])
        raise DSLSyntaxError(f"unexpected {str(exc.token)!r}; expected one of {expected}",
                             exc.line, exc.column) from None
    except UnexpectedCharacters as exc:
        raise DSLSyntaxError(f"unexpected character {text[exc.pos_in_stream]!r}", exc.line, exc.column) from None
    except UnexpectedInput as exc:
        raise DSLSyntaxError(str(exc), getattr(exc, "line", None), getattr(exc, "column", None)) from None


def parse_document(text: str) -> ModelDocument:
    """Parse model text into its syntax tree without checking names."""
    doc = _parse(_parser, text)
    overrides = []
    for decl in doc.overrides:
        entries = []
        for entry, var in decl.entries:
            if var != decl.var:
                raise DSLError(f"entry for {var} inside the table for {decl.var}",
                               entry.span.line if entry.span else None,
                               entry.span.column if entry.span else None)
            entries.append(entry)
        overrides.append(CptDecl(decl.var, decl.parents, tuple(entries), decl.span))
    return ModelDocument(doc.variables, doc.exogenous, doc.equations, tuple(overrides), doc.plaus, doc.contexts)


def parse_expr(text: str) -> Expr:
    return _parse(_expr_parser, text)


# printing


def _fmt_range(values: tuple) -> str:
    if len(values) > 2 and list(values) == list(range(values[0], values[0] + len(values))):
        return f"{{{values[0]}..{values[-1]}}}"
    return "{" + ", ".join(str(v) for v in values) + "}"


def format_document(doc: ModelDocument) -> str:
    """Canonical text for ``doc``; parsing it gives back an equal document."""
    lines = []
    lines += [f"var {d.name} : {_fmt_range(d.values)}" for d in doc.variables]
    lines += [f"exo {d.name} : {_fmt_range(d.values)}" for d in doc.exogenous]
    lines += [f"{e.target} = {_fmt_expr(e.body)}" for e in doc.equations]
    for c in doc.overrides:
        head = f"cpt {c.var}" + (" | " + ", ".join(c.parents) if c.parents else "") + " {"
        lines.append(head)
        for e in c.entries:
            cond = " | " + ", ".join(f"{k}={v}" for k, v in e.given) if e.given else ""
            lines.append(f"  {c.var}={e.value}{cond} -> {e.atom}")
        lines.append("}")
    for ch in doc.plaus:
        parts = [str(ch.terms[0])]
        for op, t in zip(ch.ops, ch.terms[1:]):
            parts += [op, str(t)]
        lines.append(" ".join(parts))
    for c in doc.contexts:
        body = ", ".join(f"{k}={v}" for k, v in c.assignment)
        lines.append(f"context {c.name}" + (f" : {body}" if body else ""))
    return "\n".join(lines) + "\n"


def _fmt_expr(e: Expr) -> str:
    if isinstance(e, Table):
        rows = "; ".join(" ".join(str(v) for v in k) + f" -> {out}" for k, out in e.rows)
        return f"table({', '.join(e.inputs)}) {{ {rows} }}"
    return str(e)


def document_from_spec(spec: CompactSpec, contexts: Optional[dict] = None) -> ModelDocument:
    """Explicit document for a compiled-or-compact spec (every table written out)."""
    model = spec.model
    sig = model.signature
    variables = tuple(VarDecl(v, sig.ranges[v]) for v in model.endogenous)
    exo = tuple(VarDecl(v, sig.ranges[v], True) for v in model.exogenous if v not in model.roots.values())
    equations = tuple(EquationDecl(v, model.equations[v]) for v in model.endogenous if v not in model.roots)
    overrides = []
    for var, atoms in spec.root_tables.items():
        overrides.append(CptDecl(var, (), tuple(CptEntry(x, (), atoms[x]) for x in sig.ranges[var])))
    for var, cpt in spec.overrides.items():
        entries = tuple(
            CptEntry(x, tuple(zip(cpt.parents, pv)), atom) for (x, pv), atom in cpt.entries.items()
        )
        overrides.append(CptDecl(var, cpt.parents, entries))
    plaus = tuple(
        ChainDecl((AtomTerm(c.greater), AtomTerm(c.lesser)), (">" if c.strict else ">=",))
        for c in spec.comparisons
    )
    ctxs = []
    inverse_roots = {u: x for x, u in model.roots.items()}
    for name, assignment in (contexts or {}).items():
        ctxs.append(ContextDecl(name, tuple((inverse_roots.get(k, k), v) for k, v in assignment.items())))
    return ModelDocument(variables, exo, equations, tuple(overrides), plaus, tuple(ctxs))


# building


@dataclass(frozen=True)
class ParsedModel:
    spec: CompactSpec
    contexts: dict
    document: ModelDocument

    @property
    def model(self) -> CausalModel:
        return self.spec.model

    def context(self, name: str) -> dict:
        try:
            return self.contexts[name]
        except KeyError:
            known = ", ".join(self.contexts) or "none"
            raise UnknownName(f"no context named {name!r} (known: {known})") from None


def _at(span: Optional[Span]) -> dict:
    return {"line": span.line, "column": span.column} if span else {}


def build(doc: ModelDocument) -> ParsedModel:
    """Check names and assemble the compact spec and contexts of ``doc``."""
    endo, exo = {}, {}
    spans = {}
    for d in doc.variables + doc.exogenous:
        if d.name in spans:
            raise DuplicateDeclaration(f"variable {d.name} declared twice", **_at(d.span))
        if len(set(d.values)) != len(d.values):
            raise DSLError(f"range of {d.name} repeats a value", **_at(d.span))
        spans[d.name] = d.span
        (exo if d.exogenous else endo)[d.name] = d.values
    if not endo:
        raise DSLError("no endogenous variables declared")

    equations, eq_spans = {}, {}
    for e in doc.equations:
        if e.target in exo:
            raise DSLError(f"exogenous variable {e.target} cannot have an equation", **_at(e.span))
        if e.target not in endo:
            raise UnknownName(f"equation for undeclared variable {e.target}", **_at(e.span))
        if e.target in equations:
            raise DuplicateDeclaration(f"second equation for {e.target}", **_at(e.span))
        unknown = sorted(e.body.variables() - set(endo) - set(exo))
        if unknown:
            raise UnknownName(f"equation for {e.target} uses undeclared {', '.join(unknown)}", **_at(e.span))
        equations[e.target] = e.body
        eq_spans[e.target] = e.span

    try:
        model = build_model(endo, equations, exo)
    except ExtCausalError as exc:
        span = next((eq_spans[t] for t in eq_spans if t in str(exc)), None)
        raise DSLError(str(exc), **_at(span)) from exc
    try:
        check_acyclic(model)
    except CyclicModel as exc:
        raise CyclicModelError(exc.cycle, **_at(eq_spans.get(exc.cycle[0]))) from None

    overrides = {}
    for c in doc.overrides:
        if c.var not in endo:
            raise UnknownName(f"table for unknown variable {c.var}", **_at(c.span))
        if c.var in overrides:
            raise DuplicateDeclaration(f"second table for {c.var}", **_at(c.span))
        for p in c.parents:
            if p not in endo:
                raise UnknownName(f"table parent {p} is not an endogenous variable", **_at(c.span))
        entries = {}
        for e in c.entries:
            if e.value not in endo[c.var]:
                raise DSLError(f"{c.var}={e.value} is outside its range", **_at(e.span))
            if tuple(k for k, _ in e.given) != c.parents:
                raise DSLError(f"entry must condition on exactly {', '.join(c.parents) or 'nothing'}, in order",
                               **_at(e.span))
            for k, v in e.given:
                if v not in endo[k]:
                    raise DSLError(f"{k}={v} is outside its range", **_at(e.span))
            key = (e.value, tuple(v for _, v in e.given))
            if key in entries:
                raise DuplicateDeclaration(f"entry for {c.var}={e.value} given {dict(e.given)} repeated",
                                           **_at(e.span))
            entries[key] = e.atom
        overrides[c.var] = Cpt(c.parents, entries)

    def is_root(var):
        return var not in overrides and not model.endogenous_parents(var) and bool(model.exogenous_parents(var))

    def rule1_applies(var):
        return var not in overrides and not model.exogenous_parents(var)

    def resolve(term):
        if isinstance(term, AtomTerm):
            return term.name
        if term.var not in endo:
            raise UnknownName(f"Pl term mentions unknown variable {term.var}", **_at(term.span))
        if term.value not in endo[term.var]:
            raise DSLError(f"{term.var}={term.value} is outside its range", **_at(term.span))
        for k, v in term.given:
            if k not in endo:
                raise UnknownName(f"Pl term conditions on unknown variable {k}", **_at(term.span))
        given = dict(term.given)
        if term.var in overrides:
            cpt = overrides[term.var]
            if set(given) != set(cpt.parents):
                raise DSLError(f"{term} must condition on {', '.join(cpt.parents) or 'nothing'}", **_at(term.span))
            key = (term.value, tuple(given[p] for p in cpt.parents))
            if key not in cpt.entries:
                raise DSLError(f"table for {term.var} has no entry for {term}", **_at(term.span))
            return cpt.entries[key]
        if is_root(term.var):
            if given:
                raise DSLError(f"{term.var} has no endogenous parents; write Pl({term.var}={term.value})",
                               **_at(term.span))
            return ("root", term.var, term.value)
        if rule1_applies(term.var):
            parents = model.endogenous_parents(term.var)
            if set(given) != set(parents):
                raise DSLError(f"{term} must condition on {', '.join(parents) or 'nothing'}", **_at(term.span))
            expected = model.evaluate(term.var, given)
            plus, minus = rule1_atoms(term.var)
            return plus if term.value == expected else minus
        raise DSLError(f"{term.var} reads exogenous variables; give it a cpt before comparing its values",
                       **_at(term.span))

    resolved = []
    for ch in doc.plaus:
        keys = [resolve(t) for t in ch.terms]
        for op, a, b in zip(ch.ops, keys, keys[1:]):
            if op == ">":
                resolved.append((a, b, True))
            elif op == ">=":
                resolved.append((a, b, False))
            else:
                resolved.append((a, b, False))
                resolved.append((b, a, False))

    # name root atoms: binary roots whose two values end up strictly ordered get d_X^+ / d_X^-
    nodes = {k for a, b, _ in resolved for k in (a, b)}
    term_order = Preorder(nodes, [(a, b) for a, b, _ in resolved])
    strict_pairs = {(a, b) for a, b, s in resolved if s}
    root_tables = {}
    for var in model.endogenous:
        if not is_root(var):
            continue
        mentioned = [k for k in nodes if isinstance(k, tuple) and k[1] == var]
        if not mentioned:
            continue
        values = endo[var]
        names = {x: f"d_{var}^{x}" for x in values}
        if len(values) == 2:
            hi, lo = ("root", var, values[0]), ("root", var, values[1])
            if hi in term_order and lo in term_order:
                if _strictly_above(term_order, strict_pairs, lo, hi):
                    hi, lo = lo, hi
                if _strictly_above(term_order, strict_pairs, hi, lo):
                    names = {hi[2]: rule1_atoms(var)[0], lo[2]: rule1_atoms(var)[1]}
        root_tables[var] = names

    def atom_of(key):
        return root_tables[key[1]][key[2]] if isinstance(key, tuple) else key

    comparisons = tuple(dict.fromkeys(Comparison(atom_of(a), atom_of(b), s) for a, b, s in resolved))
    spec = CompactSpec(model, root_tables, overrides, comparisons)

    contexts = {}
    for c in doc.contexts:
        if c.name in contexts:
            raise DuplicateDeclaration(f"context {c.name} declared twice", **_at(c.span))
        names = [k for k, _ in c.assignment]
        for k in names:
            if k not in model.signature.exogenous and k not in model.roots:
                raise UnknownName(f"context assigns {k}, which is not exogenous or a root variable",
                                  **_at(c.span))
        try:
            contexts[c.name] = model.context(dict(c.assignment))
        except ExtCausalError as exc:
            raise DSLError(f"context {c.name}: {exc}", **_at(c.span)) from None
        if len(set(names)) != len(names):
            raise DuplicateDeclaration(f"context {c.name} assigns a variable twice", **_at(c.span))
    return ParsedModel(spec, contexts, doc)


def _strictly_above(order: Preorder, strict_pairs: set, a, b) -> bool:
    """``a > b`` follows from the declarations: a >= b, and some strict step lies between them."""
    if not order.geq(a, b) or order.geq(b, a):
        return False
    return any(order.geq(a, x) and order.geq(y, b) for x, y in strict_pairs)


def load(text: str) -> ParsedModel:
    return build(parse_document(text))


def load_file(path) -> ParsedModel:
    with open(path, encoding="utf-8") as fh:
        return load(fh.read())


def parse_model(text: str) -> CompactSpec:
    return load(text).spec
