"""Ground universes and program instantiation, bounded by term depth.

Higher-order programs have infinite ground universes as soon as a
function symbol or a universe-enlarging predicate (such as an identity
combinator) appears, so everything here is computed *up to a bound*:
the slice ``U|k`` of a type's universe holds the ground terms built
from at most k symbol occurrences.  Application nodes are free; only
constants, predicate names and function symbols count.

Grounding substitutes universe slices for clause variables, normalizes
ground equalities (identical terms are true, distinct ones false: a
true equality disappears from the body, a false one kills the whole
clause instance), and interns every atom it sees.  Atom ids are dense
integers; the atom table starts with the full type-o slice so that the
model assigns a value even to atoms no clause derives.  A clause killed
by a false equality still registers its head atom.

The projected number of substitutions per clause is checked against a
budget before any instance is built; exceeding it raises
``BudgetExceeded`` rather than looping for hours.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .ast import (
    App,
    Clause,
    Eq,
    Expression,
    FunApp,
    IndConst,
    Neg,
    PredConst,
    TypedProgram,
    expr_to_str,
    substitute,
)
from .types import IOTA, O, TypeExpr, arity

DEFAULT_BUDGET = 1_000_000


class EmptyUniverse(Exception):
    def __init__(self, typ: TypeExpr, depth_bound: int):
        self.typ = typ
        self.depth_bound = depth_bound
        super().__init__(f"no ground terms of type {typ} within depth {depth_bound}")


class BudgetExceeded(Exception):
    def __init__(self, clause: str, count: int, budget: int):
        self.clause = clause
        self.count = count
        self.budget = budget
        super().__init__(
            f"clause '{clause}' has {count} ground instances, over the budget of {budget}"
        )


@dataclass(frozen=True)
class UniverseSlice:
    typ: TypeExpr
    depth_bound: int
    terms: tuple[Expression, ...]

    def __len__(self) -> int:
        return len(self.terms)


def term_size(e: Expression) -> int:
    """Symbol occurrences; application nodes are not symbols."""
    if isinstance(e, (IndConst, PredConst)):
        return 1
    if isinstance(e, FunApp):
        return 1 + sum(term_size(a) for a in e.args)
    if isinstance(e, App):
        return term_size(e.fun) + term_size(e.arg)
    raise TypeError(f"not a ground term: {e!r}")


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ways to write total as an ordered sum of `parts` positive ints."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class TermEnumerator:
    """Memoized by-size term generation for one program."""

    def __init__(self, tp: TypedProgram):
        self.tp = tp
        self.memo: dict[tuple[TypeExpr, int], tuple[Expression, ...]] = {}
        self.constants = tuple(sorted(tp.individual_constants))
        self.functions = tuple(sorted(tp.function_decls.items()))

        closure: set[TypeExpr] = {IOTA, O}
        stack = list(tp.predicate_decls.values())
        while stack:
            t = stack.pop()
            if t in closure:
                continue
            closure.add(t)
            if t.kind == "arrow":
                stack.append(t.left)
                stack.append(t.right)
        self.arrows_into: dict[TypeExpr, list[TypeExpr]] = {}
        for t in closure:
            if t.kind == "arrow":
                self.arrows_into.setdefault(t.right, []).append(t)
        for lst in self.arrows_into.values():
            lst.sort(key=str)

        self.preds_by_type: dict[TypeExpr, list[str]] = {}
        for name, t in tp.predicate_decls.items():
            self.preds_by_type.setdefault(t, []).append(name)
        for lst in self.preds_by_type.values():
            lst.sort()

    def terms_of(self, typ: TypeExpr, size: int) -> tuple[Expression, ...]:
        if size < 1:
            return ()
        key = (typ, size)
        if key in self.memo:
            return self.memo[key]
        out: list[Expression] = []
        if size == 1:
            if typ == IOTA:
                out.extend(IndConst(c, IOTA) for c in self.constants)
            out.extend(PredConst(p, typ) for p in self.preds_by_type.get(typ, ()))
        if typ == IOTA and size >= 2:
            for fname, ftype in self.functions:
                n = arity(ftype)
                for parts in _compositions(size - 1, n):
                    pools = [self.terms_of(IOTA, p) for p in parts]
                    for args in itertools.product(*pools):
                        out.append(FunApp(fname, args, IOTA))
        for at in self.arrows_into.get(typ, ()):
            for fun_size in range(1, size):
                for fun in self.terms_of(at, fun_size):
                    for arg in self.terms_of(at.left, size - fun_size):
                        out.append(App(fun, arg, typ))
        out.sort(key=expr_to_str)
        result = tuple(out)
        self.memo[key] = result
        return result

    def universe(self, typ: TypeExpr, k: int) -> tuple[Expression, ...]:
        terms: list[Expression] = []
        for size in range(1, k + 1):
            terms.extend(self.terms_of(typ, size))
        if not terms:
            raise EmptyUniverse(typ, k)
        return tuple(terms)


def enumerate_universe(tp: TypedProgram, rho: TypeExpr, k: int) -> UniverseSlice:
    """Ground terms of type rho with at most k symbols, ordered by
    (size, canonical text).  Raises EmptyUniverse when there are none."""
    return UniverseSlice(rho, k, TermEnumerator(tp).universe(rho, k))


def normalize_equality(lhs: Expression, rhs: Expression) -> bool:
    """Ground equality is syntactic identity."""
    return expr_to_str(lhs) == expr_to_str(rhs)


@dataclass(frozen=True)
class GroundClause:
    head: int
    literals: tuple[tuple[bool, int], ...]  # (negated, atom id), in source order
    origin: tuple[int, tuple[tuple[str, Expression], ...]] | None = field(
        default=None, compare=False
    )

    @property
    def pos(self) -> tuple[int, ...]:
        return tuple(a for negated, a in self.literals if not negated)

    @property
    def neg(self) -> tuple[int, ...]:
        return tuple(a for negated, a in self.literals if negated)


@dataclass
class GroundProgram:
    atoms: tuple[str, ...]
    clauses: tuple[GroundClause, ...]
    depth_bound: int | None = None
    notes: tuple[str, ...] = field(default=(), compare=False)
    atom_index: dict[str, int] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        self.atom_index = {name: i for i, name in enumerate(self.atoms)}

    def clause_str(self, c: GroundClause) -> str:
        head = self.atoms[c.head]
        if not c.literals:
            return f"{head}."
        lits = ", ".join(("~" if negated else "") + self.atoms[a] for negated, a in c.literals)
        return f"{head} :- {lits}."

    def to_text(self) -> str:
        return "\n".join(self.clause_str(c) for c in self.clauses) + ("\n" if self.clauses else "")

    @classmethod
    def build(
        cls,
        atom_names: list[str],
        clause_specs: list[tuple[str, list[str], list[str]]],
        depth_bound: int | None = None,
    ) -> "GroundProgram":
        """Assemble a propositional program directly (tests, random programs)."""
        index = {name: i for i, name in enumerate(atom_names)}
        clauses = [
            GroundClause(
                index[head],
                tuple([(False, index[a]) for a in pos] + [(True, index[a]) for a in neg]),
            )
            for head, pos, neg in clause_specs
        ]
        return cls(tuple(atom_names), tuple(clauses), depth_bound)


def iter_ground_instances(
    tp: TypedProgram, k: int, budget: int = DEFAULT_BUDGET
) -> Iterator[tuple[int, dict[str, Expression], list[str]]]:
    """Yield (clause index, variable binding, notes) for every in-bound
    substitution of every clause.  Notes report clauses skipped because a
    variable's universe slice is empty at this depth."""
    enum = TermEnumerator(tp)
    for idx, clause in enumerate(tp.clauses):
        names: list[str] = [v.name for v in clause.formals]
        types: dict[str, TypeExpr] = {v.name: v.typ for v in clause.formals}
        for lit in clause.body:
            for v in _literal_vars(lit):
                if v.name not in types:
                    names.append(v.name)
                    types[v.name] = v.typ
        slices: list[tuple[Expression, ...]] = []
        skip_note = None
        for name in names:
            try:
                slices.append(enum.universe(types[name], k))
            except EmptyUniverse as exc:
                skip_note = (
                    f"clause {idx + 1} has no instances at depth {k}: "
                    f"variable {name} ranges over an empty universe ({exc})"
                )
                break
        if skip_note is not None:
            yield idx, None, [skip_note]
            continue
        count = 1
        for s in slices:
            count *= len(s)
        if count > budget:
            raise BudgetExceeded(str(clause), count, budget)
        for combo in itertools.product(*slices):
            yield idx, dict(zip(names, combo)), []


def _literal_vars(e: Expression):
    from .ast import expr_vars

    return expr_vars(e)


def ground_instantiate(
    tp: TypedProgram, k: int, budget: int = DEFAULT_BUDGET
) -> GroundProgram:
    """The ground program at depth k, with interned atoms."""
    atoms: dict[str, int] = {}
    atom_order: list[str] = []

    def intern(e: Expression) -> int:
        s = expr_to_str(e)
        if s not in atoms:
            atoms[s] = len(atom_order)
            atom_order.append(s)
        return atoms[s]

    notes: list[str] = list(tp.notes)
    try:
        for atom in TermEnumerator(tp).universe(O, k):
            intern(atom)
    except EmptyUniverse:
        notes.append(f"no ground atoms exist at depth {k}")

    clauses: list[GroundClause] = []
    seen: set[tuple[int, tuple[tuple[bool, int], ...]]] = set()
    head_exprs = {i: c.head_expr() for i, c in enumerate(tp.clauses)}

    for idx, binding, inst_notes in iter_ground_instances(tp, k, budget):
        notes.extend(n for n in inst_notes if n not in notes)
        if binding is None:
            continue
        clause = tp.clauses[idx]
        head_id = intern(substitute(head_exprs[idx], binding))
        literals: list[tuple[bool, int]] = []
        dead = False
        for lit in clause.body:
            if isinstance(lit, Eq):
                if not normalize_equality(substitute(lit.lhs, binding), substitute(lit.rhs, binding)):
                    dead = True
                    break
                continue  # a true equality contributes nothing
            if isinstance(lit, Neg):
                literals.append((True, intern(substitute(lit.inner, binding))))
            else:
                literals.append((False, intern(substitute(lit, binding))))
        if dead:
            continue
        key = (head_id, tuple(literals))
        if key in seen:
            continue
        seen.add(key)
        clauses.append(
            GroundClause(head_id, tuple(literals), origin=(idx, tuple(binding.items())))
        )

    return GroundProgram(tuple(atom_order), tuple(clauses), k, tuple(notes))
