"""Type checking and inference.

Every clause must have the shape ``p V1 ... Vn :- L1, ..., Lm`` where p
is a declared predicate constant of arity n and the Vi are distinct
variables.  Heads written with ground individual arguments, such as the
fact ``q(a)`` or ``nat(s(X))``, are normalized to that shape by
introducing a fresh formal and an equality literal: ``q(V) :- V = a``.
Grounding later erases the detour, so ``q(a)`` still grounds to exactly
the fact ``q(a)``.  Only individual-typed head arguments can be
rewritten this way, because equality is defined on individuals alone.

Variable types are inferred per clause by unification.  Lowercase
identifiers resolve against the declarations: predicate constants keep
their declared type, function symbols must be fully applied, and any
undeclared lowercase identifier is an implicit individual constant.  A
program that uses no individual constant at all gets a reserved one
(``a0``) injected so that the individual universe is never empty.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .ast import (
    App,
    Clause,
    Eq,
    Expression,
    FunApp,
    IndConst,
    Name,
    Neg,
    PredConst,
    Program,
    RawClause,
    TypedProgram,
    Var,
    expr_to_str,
)
from .types import (
    IOTA,
    O,
    TypeExpr,
    argument_types,
    arity,
    is_argument,
    is_functional,
    is_predicate,
)

RESERVED_CONSTANT = "a0"


class TypeCheckError(Exception):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(f"{where}{message}")


@dataclass(frozen=True)
class _Meta:
    """A type metavariable awaiting unification."""

    ident: int


@dataclass
class _Unifier:
    bindings: dict[int, object] = field(default_factory=dict)
    counter: int = 0

    def fresh(self) -> _Meta:
        self.counter += 1
        return _Meta(self.counter)

    def walk(self, t: object) -> object:
        while isinstance(t, _Meta) and t.ident in self.bindings:
            t = self.bindings[t.ident]
        return t

    def occurs(self, m: _Meta, t: object) -> bool:
        t = self.walk(t)
        if isinstance(t, _Meta):
            return t == m
        if isinstance(t, TypeExpr) and t.kind == "arrow":
            return self.occurs(m, t.left) or self.occurs(m, t.right)
        return False

    def unify(self, a: object, b: object) -> bool:
        a, b = self.walk(a), self.walk(b)
        if a is b or a == b:
            return True
        if isinstance(a, _Meta):
            if self.occurs(a, b):
                return False
            self.bindings[a.ident] = b
            return True
        if isinstance(b, _Meta):
            return self.unify(b, a)
        if (
            isinstance(a, TypeExpr)
            and isinstance(b, TypeExpr)
            and a.kind == "arrow"
            and b.kind == "arrow"
        ):
            return self.unify(a.left, b.left) and self.unify(a.right, b.right)
        return False

    def resolve(self, t: object) -> TypeExpr | None:
        """Fully resolve a type; None if a metavariable is left over."""
        t = self.walk(t)
        if isinstance(t, _Meta):
            return None
        assert isinstance(t, TypeExpr)
        if t.kind == "arrow":
            left = self.resolve(t.left)
            right = self.resolve(t.right)
            if left is None or right is None:
                return None
            return TypeExpr("arrow", left, right)
        return t


class _ClauseChecker:
    def __init__(self, program: Program, raw: RawClause, fresh_formals: "itertools.count"):
        self.program = program
        self.raw = raw
        self.uni = _Unifier()
        self.var_types: dict[str, object] = {}
        self.fresh_formals = fresh_formals
        self.used_constants: set[str] = set()

    def fail(self, message: str) -> TypeCheckError:
        return TypeCheckError(message, self.raw.line, self.raw.col)

    def var_type(self, name: str) -> object:
        if name not in self.var_types:
            self.var_types[name] = self.uni.fresh()
        return self.var_types[name]

    def infer(self, e: Expression, typ: object) -> Expression:
        """Check e against the expected type, resolving Name nodes.

        Returns the rebuilt tree (types attached in a later pass).
        """
        if isinstance(e, Var):
            if not self.uni.unify(self.var_type(e.name), typ):
                raise self.fail(f"variable {e.name} is used at incompatible types")
            return Var(e.name)
        if isinstance(e, Name):
            if e.name in self.program.predicate_decls:
                declared = self.program.predicate_decls[e.name]
                if not self.uni.unify(declared, typ):
                    raise self.fail(
                        f"predicate {e.name} has type {declared}, which does not fit here"
                    )
                return PredConst(e.name, declared)
            if e.name in self.program.function_decls:
                raise self.fail(
                    f"function symbol {e.name} must be applied to "
                    f"{arity(self.program.function_decls[e.name])} argument(s)"
                )
            if not self.uni.unify(IOTA, typ):
                raise self.fail(f"individual constant {e.name} cannot have a non-individual type")
            self.used_constants.add(e.name)
            return IndConst(e.name, IOTA)
        if isinstance(e, App):
            # a spine headed by a declared function symbol becomes a FunApp
            head, args = _spine(e)
            if isinstance(head, Name) and head.name in self.program.function_decls:
                ftype = self.program.function_decls[head.name]
                want = arity(ftype)
                if len(args) != want:
                    raise self.fail(
                        f"function symbol {head.name} takes {want} argument(s), got {len(args)}"
                    )
                typed_args = tuple(self.infer(a, IOTA) for a in args)
                if not self.uni.unify(IOTA, typ):
                    raise self.fail(f"application of {head.name} is an individual, which does not fit here")
                return FunApp(head.name, typed_args, IOTA)
            arg_t = self.uni.fresh()
            fun = self.infer(e.fun, _arrow_meta(arg_t, typ))
            arg = self.infer(e.arg, arg_t)
            return App(fun, arg)
        if isinstance(e, (Neg, Eq)):
            raise self.fail("negation and equality cannot occur inside a term")
        raise self.fail(f"unexpected expression {expr_to_str(e)}")

    def check_literal(self, e: Expression) -> Expression:
        if isinstance(e, Neg):
            return Neg(self.infer(e.inner, O), O)
        if isinstance(e, Eq):
            return Eq(self.infer(e.lhs, IOTA), self.infer(e.rhs, IOTA), O)
        return self.infer(e, O)

    def check(self) -> Clause:
        head, args = _spine(self.raw.head)
        if not isinstance(head, Name) or head.name not in self.program.predicate_decls:
            what = head.name if isinstance(head, (Name, Var)) else expr_to_str(head)
            raise self.fail(f"clause head must start with a declared predicate constant, got {what!r}")
        pred = head.name
        formal_types = argument_types(self.program.predicate_decls[pred])
        if len(args) != len(formal_types):
            raise self.fail(
                f"head of {pred} must apply it to {len(formal_types)} argument(s), got {len(args)}"
            )
        formals: list[Var] = []
        seen: set[str] = set()
        desugared: list[Expression] = []
        for arg, ft in zip(args, formal_types):
            if isinstance(arg, Var):
                if arg.name in seen:
                    raise self.fail(f"repeated variable {arg.name} in clause head")
                seen.add(arg.name)
                if not self.uni.unify(self.var_type(arg.name), ft):
                    raise self.fail(f"head variable {arg.name} is used at incompatible types")
                formals.append(Var(arg.name, ft))
            elif ft == IOTA:
                fresh = Var(f"V_{next(self.fresh_formals)}")
                self.uni.unify(self.var_type(fresh.name), IOTA)
                formals.append(Var(fresh.name, IOTA))
                desugared.append(Eq(Var(fresh.name), self.infer(arg, IOTA), O))
            else:
                raise self.fail(
                    f"head argument {expr_to_str(arg)} of {pred} has predicate type {ft}; "
                    "only variables are allowed there"
                )
        body = list(desugared) + [self.check_literal(b) for b in self.raw.body]
        resolved = self.resolve_types()
        return Clause(
            head_pred=pred,
            formals=tuple(Var(v.name, resolved[v.name]) for v in formals),
            body=tuple(self.attach(b, resolved) for b in body),
        )

    def resolve_types(self) -> dict[str, TypeExpr]:
        out: dict[str, TypeExpr] = {}
        for name, t in self.var_types.items():
            resolved = self.uni.resolve(t)
            if resolved is None:
                raise self.fail(f"type of variable {name} is ambiguous; add a constraining use")
            if not is_argument(resolved):
                raise self.fail(f"variable {name} has type {resolved}, which is not an argument type")
            out[name] = resolved
        return out

    def attach(self, e: Expression, var_types: dict[str, TypeExpr]) -> Expression:
        """Second pass: stamp resolved types onto every node."""
        if isinstance(e, Var):
            return Var(e.name, var_types[e.name])
        if isinstance(e, (IndConst, PredConst)):
            return e
        if isinstance(e, FunApp):
            return FunApp(e.symbol, tuple(self.attach(a, var_types) for a in e.args), IOTA)
        if isinstance(e, App):
            fun = self.attach(e.fun, var_types)
            arg = self.attach(e.arg, var_types)
            ft = fun.typ
            if ft is None or ft.kind != "arrow":
                raise self.fail(f"{expr_to_str(e.fun)} is applied to an argument but is not a predicate")
            if not is_argument(arg.typ):
                raise self.fail(f"argument {expr_to_str(e.arg)} has non-argument type {arg.typ}")
            return App(fun, arg, ft.right)
        if isinstance(e, Neg):
            return Neg(self.attach(e.inner, var_types), O)
        if isinstance(e, Eq):
            return Eq(self.attach(e.lhs, var_types), self.attach(e.rhs, var_types), O)
        raise self.fail(f"unexpected expression {e!r}")


def _spine(e: Expression) -> tuple[Expression, list[Expression]]:
    args: list[Expression] = []
    while isinstance(e, App):
        args.append(e.arg)
        e = e.fun
    args.reverse()
    return e, args


def _arrow_meta(left: object, right: object) -> TypeExpr:
    # TypeExpr is frozen but tolerates metavariables in its fields; they
    # never escape the checker.
    return TypeExpr("arrow", left, right)


def typecheck(program: Program) -> TypedProgram:
    """Check declarations and clauses; infer all variable types."""
    for name, t in program.predicate_decls.items():
        if not is_predicate(t):
            raise TypeCheckError(f"declared predicate {name} has non-predicate type {t}")
    for name, t in program.function_decls.items():
        if not is_functional(t) or t.kind != "arrow":
            raise TypeCheckError(
                f"declared function symbol {name} must have type i -> ... -> i, got {t}"
            )

    fresh = itertools.count(1)
    clauses: list[Clause] = []
    constants: set[str] = set()
    for raw in program.clauses:
        checker = _ClauseChecker(program, raw, fresh)
        clauses.append(checker.check())
        constants |= checker.used_constants

    notes: list[str] = []
    if not constants:
        constants = {RESERVED_CONSTANT}
        notes.append(
            f"program uses no individual constants; injected reserved constant {RESERVED_CONSTANT}"
        )

    return TypedProgram(
        predicate_decls=dict(program.predicate_decls),
        function_decls=dict(program.function_decls),
        individual_constants=tuple(sorted(constants)),
        clauses=tuple(clauses),
        notes=tuple(notes),
    )
