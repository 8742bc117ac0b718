"""SLD resolution with negation as failure.

The engine answers one question: does the program's goal (the negated
conclusion of an obligation) succeed?  Success means the obligation is
satisfiable and the family unsound; finite failure means Unsat.

Selection is leftmost, clause variables are renamed apart per use, and
there is no occurs check (the programs here are flat Datalog-style
evidence, not term-building Prolog).  Negation is allowed only on goals
that are ground when selected; anything else flounders and is rejected
rather than guessed at.  Every resolution and unification attempt counts
against the step budget; exceeding it is Unknown.
"""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Iterator

from ..errors import IllFormedQuery
from ..lang import ast
from .verdict import Outcome, Verdict

Subst = dict[str, ast.LTerm]


class _Budget:
    def __init__(self, max_steps: int, deadline: float):
        self.remaining = max_steps
        self.deadline = deadline
        self.exhausted = False

    def tick(self) -> bool:
        self.remaining -= 1
        if self.remaining <= 0 or (self.remaining % 256 == 0
                                   and time.monotonic() > self.deadline):
            self.exhausted = True
        return not self.exhausted


def walk(term: ast.LTerm, subst: Subst) -> ast.LTerm:
    while isinstance(term, ast.LVar) and term.name in subst:
        term = subst[term.name]
    return term


def unify(a: ast.LTerm, b: ast.LTerm, subst: Subst) -> Subst | None:
    a = walk(a, subst)
    b = walk(b, subst)
    if isinstance(a, ast.LVar):
        if isinstance(b, ast.LVar) and b.name == a.name:
            return subst
        out = dict(subst)
        out[a.name] = b
        return out
    if isinstance(b, ast.LVar):
        out = dict(subst)
        out[b.name] = a
        return out
    return subst if a.value == b.value else None


def unify_atoms(a: ast.LAtom, b: ast.LAtom, subst: Subst) -> Subst | None:
    if a.pred != b.pred or len(a.args) != len(b.args):
        return None
    current: Subst | None = subst
    for x, y in zip(a.args, b.args):
        current = unify(x, y, current)
        if current is None:
            return None
    return current


def _rename_clause(clause: ast.Clause, counter: list[int]) -> ast.Clause:
    counter[0] += 1
    suffix = f"#{counter[0]}"
    mapping: dict[str, ast.LVar] = {}

    def rename_term(t: ast.LTerm) -> ast.LTerm:
        if isinstance(t, ast.LVar):
            if t.name not in mapping:
                mapping[t.name] = ast.LVar(t.name + suffix)
            return mapping[t.name]
        return t

    def rename_literal(lit: ast.Literal) -> ast.Literal:
        if isinstance(lit, ast.Naf):
            return ast.Naf(tuple(rename_literal(g) for g in lit.goals))
        return ast.LAtom(lit.pred, tuple(rename_term(a) for a in lit.args))

    head = ast.LAtom(clause.head.pred, tuple(rename_term(a) for a in clause.head.args))
    return ast.Clause(head, tuple(rename_literal(lit) for lit in clause.body))


def _is_ground(lit: ast.Literal, subst: Subst) -> bool:
    if isinstance(lit, ast.Naf):
        return all(_is_ground(g, subst) for g in lit.goals)
    return all(not isinstance(walk(a, subst), ast.LVar) for a in lit.args)


def _solve(goals: tuple[ast.Literal, ...], subst: Subst,
           clauses: tuple[ast.Clause, ...], budget: _Budget,
           counter: list[int]) -> Iterator[Subst]:
    if not goals:
        yield subst
        return
    if not budget.tick():
        return
    goal, rest = goals[0], goals[1:]
    if isinstance(goal, ast.Naf):
        if not _is_ground(goal, subst):
            raise IllFormedQuery(
                "negation over a non-ground goal (floundering query)")
        succeeded = False
        for _ in _solve(goal.goals, subst, clauses, budget, counter):
            succeeded = True
            break
        if budget.exhausted:
            return
        if not succeeded:
            yield from _solve(rest, subst, clauses, budget, counter)
        return
    for clause in clauses:
        if budget.exhausted:
            return
        if clause.head.pred != goal.pred or len(clause.head.args) != len(goal.args):
            continue
        renamed = _rename_clause(clause, counter)
        unified = unify_atoms(goal, renamed.head, subst)
        if unified is None:
            continue
        yield from _solve(renamed.body + rest, unified, clauses, budget, counter)


def _query_variables(goals: tuple[ast.Literal, ...]) -> list[str]:
    seen: list[str] = []

    def visit(lit: ast.Literal):
        if isinstance(lit, ast.Naf):
            for g in lit.goals:
                visit(g)
            return
        for arg in lit.args:
            if isinstance(arg, ast.LVar) and arg.name not in seen \
                    and not arg.name.startswith("_"):
                seen.append(arg.name)

    for goal in goals:
        visit(goal)
    return seen


def solve_logic(query: ast.LogicProgram | ast.LogicOr, budget) -> Verdict:
    if isinstance(query, ast.LogicOr):
        return _solve_branches(query.branches, budget)
    return _solve_branches((query,), budget)


def _solve_branches(branches: tuple[ast.LogicProgram, ...], budget) -> Verdict:
    deadline = time.monotonic() + budget.wall_ms / 1000.0
    any_unknown = False
    steps_total = 0
    for program in branches:
        if program.query is None:
            raise IllFormedQuery("logic query has no goal")
        state = _Budget(budget.max_steps, deadline)
        counter = [0]
        solutions = _solve(program.query, {}, program.clauses, state, counter)
        answer: Subst | None = None
        for subst in solutions:
            answer = subst
            break
        steps_total += budget.max_steps - state.remaining
        if answer is not None:
            model = []
            for name in _query_variables(program.query):
                value = walk(ast.LVar(name), answer)
                if isinstance(value, ast.LConst):
                    model.append((name, value.value if isinstance(value.value, Fraction)
                                  else str(value.value)))
            return Verdict(Outcome.SAT, model=tuple(model),
                           diagnostics={"steps": steps_total})
        if state.exhausted:
            any_unknown = True
    if any_unknown:
        return Verdict(Outcome.UNKNOWN,
                       diagnostics={"steps": steps_total, "reason": "step budget exhausted"})
    return Verdict(Outcome.UNSAT, diagnostics={"steps": steps_total})
