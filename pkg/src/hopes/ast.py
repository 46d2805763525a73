"""Abstract syntax for programs: expressions, clauses, programs.

Terms are built from individual constants, predicate constants,
variables, applications of function symbols (always fully applied) and
curried applications of predicate expressions.  Expressions extend terms
with negation ``~E`` (over type-o terms) and equality ``E1 = E2`` (over
individuals); neither may occur inside an argument.

The parser cannot tell an individual constant from a predicate constant
before declarations are consulted, so it emits ``Name`` nodes for every
lowercase identifier; the type checker resolves them into ``IndConst``,
``PredConst`` or ``FunApp`` spines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .types import TypeExpr


class Expression:
    """Base class for all expression nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Name(Expression):
    """An unresolved lowercase identifier (pre-typecheck only)."""

    name: str


@dataclass(frozen=True)
class IndConst(Expression):
    name: str
    typ: Optional[TypeExpr] = None


@dataclass(frozen=True)
class PredConst(Expression):
    name: str
    typ: Optional[TypeExpr] = None


@dataclass(frozen=True)
class Var(Expression):
    name: str
    typ: Optional[TypeExpr] = None


@dataclass(frozen=True)
class FunApp(Expression):
    symbol: str
    args: tuple[Expression, ...]
    typ: Optional[TypeExpr] = None


@dataclass(frozen=True)
class App(Expression):
    fun: Expression
    arg: Expression
    typ: Optional[TypeExpr] = None


@dataclass(frozen=True)
class Neg(Expression):
    inner: Expression
    typ: Optional[TypeExpr] = None


@dataclass(frozen=True)
class Eq(Expression):
    lhs: Expression
    rhs: Expression
    typ: Optional[TypeExpr] = None


def expr_to_str(e: Expression) -> str:
    """Canonical rendering: applications as h(x)(y), negation as ~E."""
    if isinstance(e, (Name, IndConst, PredConst, Var)):
        return e.name
    if isinstance(e, FunApp):
        return f"{e.symbol}({', '.join(expr_to_str(a) for a in e.args)})"
    if isinstance(e, App):
        return f"{expr_to_str(e.fun)}({expr_to_str(e.arg)})"
    if isinstance(e, Neg):
        return f"~{expr_to_str(e.inner)}"
    if isinstance(e, Eq):
        return f"{expr_to_str(e.lhs)} = {expr_to_str(e.rhs)}"
    raise TypeError(f"not an expression: {e!r}")


def spine(e: Expression) -> tuple[Expression, list[Expression]]:
    """Unwind curried applications: spine(p(a)(b)) = (p, [a, b])."""
    args: list[Expression] = []
    while isinstance(e, App):
        args.append(e.arg)
        e = e.fun
    args.reverse()
    return e, args


def expr_vars(e: Expression) -> list[Var]:
    """Variables of an expression, in first-occurrence order."""
    seen: dict[str, Var] = {}

    def walk(x: Expression) -> None:
        if isinstance(x, Var):
            seen.setdefault(x.name, x)
        elif isinstance(x, FunApp):
            for a in x.args:
                walk(a)
        elif isinstance(x, App):
            walk(x.fun)
            walk(x.arg)
        elif isinstance(x, Neg):
            walk(x.inner)
        elif isinstance(x, Eq):
            walk(x.lhs)
            walk(x.rhs)

    walk(e)
    return list(seen.values())


def substitute(e: Expression, binding: dict[str, Expression]) -> Expression:
    """Replace variables by name; untouched subtrees are shared."""
    if isinstance(e, Var):
        return binding.get(e.name, e)
    if isinstance(e, FunApp):
        return FunApp(e.symbol, tuple(substitute(a, binding) for a in e.args), e.typ)
    if isinstance(e, App):
        return App(substitute(e.fun, binding), substitute(e.arg, binding), e.typ)
    if isinstance(e, Neg):
        return Neg(substitute(e.inner, binding), e.typ)
    if isinstance(e, Eq):
        return Eq(substitute(e.lhs, binding), substitute(e.rhs, binding), e.typ)
    return e


@dataclass(frozen=True)
class RawClause:
    """A clause as parsed: arbitrary head term, body of literal expressions."""

    head: Expression
    body: tuple[Expression, ...]
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    def __str__(self) -> str:
        head = expr_to_str(self.head)
        if not self.body:
            return f"{head}."
        return f"{head} :- {', '.join(expr_to_str(b) for b in self.body)}."


@dataclass
class Program:
    """Parsed but not yet checked: declarations plus raw clauses."""

    predicate_decls: dict[str, TypeExpr] = field(default_factory=dict)
    function_decls: dict[str, TypeExpr] = field(default_factory=dict)
    clauses: list[RawClause] = field(default_factory=list)


@dataclass(frozen=True)
class Clause:
    """A checked clause: p(V1)...(Vn) :- L1, ..., Lm with typed trees."""

    head_pred: str
    formals: tuple[Var, ...]
    body: tuple[Expression, ...]

    def head_expr(self) -> Expression:
        e: Expression = PredConst(self.head_pred)
        for v in self.formals:
            e = App(e, v)
        return e

    def __str__(self) -> str:
        head = self.head_pred + "".join(f"({v.name})" for v in self.formals)
        if not self.body:
            return f"{head}."
        return f"{head} :- {', '.join(expr_to_str(b) for b in self.body)}."


@dataclass(frozen=True)
class TypedProgram:
    """A checked program; every clause is well-typed and head-normalized."""

    predicate_decls: dict[str, TypeExpr]
    function_decls: dict[str, TypeExpr]
    individual_constants: tuple[str, ...]
    clauses: tuple[Clause, ...]
    notes: tuple[str, ...] = ()


def program_to_str(p: Program) -> str:
    """Print a parsed program so that re-parsing gives an equal AST."""
    lines = []
    for name, t in p.predicate_decls.items():
        lines.append(f"#pred {name} : {t}.")
    for name, t in p.function_decls.items():
        lines.append(f"#func {name} : {t}.")
    for c in p.clauses:
        lines.append(str(c))
    return "\n".join(lines) + ("\n" if lines else "")
