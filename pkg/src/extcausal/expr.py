"""Expression trees used as bodies of structural equations.

The operator set is deliberately small: integer constants, variable
references, ``min``/``max``, ``+``, ``-``, ``*``, equality and ``>=`` tests
(yielding 0/1), ``if c then a else b``, and explicit lookup tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union


class Expr:
    def evaluate(self, env: Mapping[str, int]) -> int:
        raise NotImplementedError

    def variables(self) -> frozenset:
        raise NotImplementedError


@dataclass(frozen=True)
class Const(Expr):
    value: int

    def evaluate(self, env):
        return self.value

    def variables(self):
        return frozenset()

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Var(Expr):
    name: str

    def evaluate(self, env):
        return env[self.name]

    def variables(self):
        return frozenset([self.name])

    def __str__(self):
        return self.name


_BINARY = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "==": lambda a, b: int(a == b),
    ">=": lambda a, b: int(a >= b),
}

# binding strength for printing; comparisons bind loosest
_PRECEDENCE = {"==": 1, ">=": 1, "+": 2, "-": 2, "*": 3}


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    def __post_init__(self):
        if self.op not in _BINARY:
            raise ValueError(f"unknown operator {self.op!r}")

    def evaluate(self, env):
        return _BINARY[self.op](self.left.evaluate(env), self.right.evaluate(env))

    def variables(self):
        return self.left.variables() | self.right.variables()

    def __str__(self):
        return f"{_wrap(self.left, self.op, False)} {self.op} {_wrap(self.right, self.op, True)}"


@dataclass(frozen=True)
class Call(Expr):
    """``min(...)`` or ``max(...)`` over one or more arguments."""

    func: str
    args: tuple

    def __post_init__(self):
        if self.func not in ("min", "max"):
            raise ValueError(f"unknown function {self.func!r}")
        if not self.args:
            raise ValueError(f"{self.func}() needs at least one argument")

    def evaluate(self, env):
        values = [a.evaluate(env) for a in self.args]
        return min(values) if self.func == "min" else max(values)

    def variables(self):
        return frozenset().union(*(a.variables() for a in self.args))

    def __str__(self):
        return f"{self.func}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class IfThenElse(Expr):
    cond: Expr
    then: Expr
    other: Expr

    def evaluate(self, env):
        if self.cond.evaluate(env):
            return self.then.evaluate(env)
        return self.other.evaluate(env)

    def variables(self):
        return self.cond.variables() | self.then.variables() | self.other.variables()

    def __str__(self):
        return f"if {self.cond} then {self.then} else {self.other}"


@dataclass(frozen=True)
class Table(Expr):
    """Explicit function of ``inputs`` given row by row.

    ``rows`` is a tuple of ``(input_values, output)`` pairs; every setting of
    the inputs that is evaluated must be listed.
    """

    inputs: tuple
    rows: tuple

    def __post_init__(self):
        keys = [k for k, _ in self.rows]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate row in table")
        if any(len(k) != len(self.inputs) for k in keys):
            raise ValueError("table row width does not match its inputs")

    def evaluate(self, env):
        key = tuple(env[name] for name in self.inputs)
        for k, out in self.rows:
            if k == key:
                return out
        raise KeyError(f"table has no row for {dict(zip(self.inputs, key))}")

    def variables(self):
        return frozenset(self.inputs)

    def __str__(self):
        rows = "; ".join(" ".join(str(v) for v in k) + f" -> {out}" for k, out in self.rows)
        return f"table({', '.join(self.inputs)}) {{ {rows} }}"


def _wrap(e: Expr, parent: str, right: bool) -> str:
    if isinstance(e, IfThenElse):
        return f"({e})"
    if isinstance(e, BinOp):
        p, q = _PRECEDENCE[e.op], _PRECEDENCE[parent]
        # left-assoc parse: only a right child of equal precedence needs parens
        if p < q or (p == q and right) or (p == q == 1):
            return f"({e})"
    return str(e)


ExprLike = Union[Expr, int, str]


def as_expr(value: ExprLike) -> Expr:
    """Coerce ints to constants and strings to parsed expressions."""
    if isinstance(value, Expr):
        return value
    if isinstance(value, bool):
        return Const(int(value))
    if isinstance(value, int):
        return Const(value)
    if isinstance(value, str):
        from .dsl import parse_expr

        return parse_expr(value)
    raise TypeError(f"cannot build an expression from {value!r}")
