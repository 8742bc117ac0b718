"""Per-family satisfiability obligations.

A family of one parent and its children induces the query

    And:  F1 and F2 and ... and Fn and not F
    Or:   (F1 or F2 or ... or Fn) and not F

over the children's expressions Fi and the parent's expression F.  The
query is unsatisfiable exactly when the family is sound.  Negation is
pushed to comparison level for arithmetic (an explicit disjunction tree),
and wraps the goal for set and logic queries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ..errors import IllFormedQuery, MixedCtypes
from ..lang import ast
from ..lang.ast import CType, classify
from ..model import Relation
from .arith import solve_arith
from .logic import solve_logic
from .sets import solve_abstract_set, solve_concrete_set
from .verdict import Verdict


@dataclass(frozen=True)
class SolverBudget:
    max_steps: int = 10_000
    max_boxes: int = 100_000
    max_universe: int = 8
    wall_ms: int = 10_000


@dataclass(frozen=True)
class Obligation:
    premises: tuple[ast.ConstraintAst, ...]
    conclusion: ast.ConstraintAst
    relation: Relation
    ctype: CType

    def __post_init__(self):
        if not self.premises:
            raise ValueError("obligation needs at least one premise")
        kinds = {classify(p) for p in self.premises} | {classify(self.conclusion)}
        if kinds != {self.ctype}:
            raise MixedCtypes(
                f"obligation mixes constraint types {sorted(k.value for k in kinds)}")


def _as_concrete(node: ast.ConstraintAst) -> ast.ConstraintAst:
    if isinstance(node, ast.SetFormula):
        return ast.ConcreteSetProgram(node.sets, node.elems, (), node.body)
    return node


def make_obligation(premises, conclusion, relation: Relation) -> Obligation:
    premises = tuple(premises)
    kinds = {classify(p) for p in premises} | {classify(conclusion)}
    if kinds == {CType.ABSTRACT_SET, CType.CONCRETE_SET}:
        # a set formula over names bound elsewhere in the family is a
        # concrete constraint; literal bindings force the concrete route
        premises = tuple(_as_concrete(p) for p in premises)
        conclusion = _as_concrete(conclusion)
        kinds = {CType.CONCRETE_SET}
    if len(kinds) != 1:
        raise MixedCtypes(
            f"family mixes constraint types {sorted(k.value for k in kinds)}")
    return Obligation(premises, conclusion, relation, kinds.pop())


# --------------------------------------------------------------------------
# query construction

def _negate_arith(conj: ast.ArithConj) -> ast.ArithFormula:
    negated = []
    for cmp in conj.items:
        piece = ast.negate_comparison(cmp)
        if isinstance(piece, ast.BoolOr):
            negated.extend(piece.items)
        else:
            negated.append(piece)
    if len(negated) == 1:
        return negated[0]
    return ast.BoolOr(tuple(negated))


def _build_arith(ob: Obligation) -> ast.ArithFormula:
    negated = _negate_arith(ob.conclusion)
    if ob.relation == Relation.AND:
        parts: list[ast.ArithFormula] = []
        for premise in ob.premises:
            parts.extend(premise.items)
        parts.append(negated)
        return ast.BoolAnd(tuple(parts))
    alternatives = tuple(
        premise.items[0] if len(premise.items) == 1 else ast.BoolAnd(premise.items)
        for premise in ob.premises)
    return ast.BoolAnd((ast.BoolOr(alternatives), negated))


def _conclusion_goal(conclusion: ast.LogicProgram) -> tuple[ast.Literal, ...]:
    for clause in conclusion.clauses:
        if clause.body:
            raise IllFormedQuery("conclusion rules with bodies are not checkable")
    if conclusion.query is not None:
        return conclusion.query
    if not conclusion.clauses:
        raise IllFormedQuery("logic conclusion is empty")
    return tuple(clause.head for clause in conclusion.clauses)


def _negate_goal(goal: tuple[ast.Literal, ...]) -> tuple[ast.Literal, ...]:
    if len(goal) == 1 and isinstance(goal[0], ast.Naf) and len(goal[0].goals) == 1:
        return goal[0].goals
    return (ast.Naf(goal),)


def _build_logic(ob: Obligation) -> ast.LogicProgram | ast.LogicOr:
    goal = _negate_goal(_conclusion_goal(ob.conclusion))
    groups: list[tuple[ast.Clause, ...]] = []
    for premise in ob.premises:
        if premise.query is not None:
            raise IllFormedQuery("logic premises cannot contain queries")
        groups.append(premise.clauses)
    if ob.relation == Relation.AND:
        merged = tuple(c for group in groups for c in group)
        return ast.LogicProgram(merged, goal)
    return ast.LogicOr(tuple(ast.LogicProgram(group, goal) for group in groups))


def _set_body(node: ast.SetFormula | ast.ConcreteSetProgram) -> ast.SetFormulaNode:
    if node.body is None:
        raise IllFormedQuery("set expression has no atoms")
    return node.body


def _bindings_as_atoms(bindings) -> list[ast.SetFormulaNode]:
    return [ast.SetAtom("eq", None, ast.SetName(name), ast.SetLiteral(elements))
            for name, elements in bindings]


def _build_abstract(ob: Obligation) -> ast.SetFormula:
    sets: list[str] = []
    elems: list[str] = []
    for part in (*ob.premises, ob.conclusion):
        sets.extend(n for n in part.sets if n not in sets)
        elems.extend(n for n in part.elems if n not in elems)
    negated = ast.SetNot(_set_body(ob.conclusion))
    premise_bodies = [_set_body(p) for p in ob.premises]
    if ob.relation == Relation.AND:
        body = ast.SetConj((*premise_bodies, negated))
    else:
        body = ast.SetConj((ast.SetDisj(tuple(premise_bodies)), negated))
    return ast.SetFormula(tuple(sets), tuple(elems), body)


def _build_concrete(ob: Obligation) -> ast.ConcreteSetProgram:
    sets: list[str] = []
    elems: list[str] = []
    bindings: dict[str, tuple[int, ...]] = {}
    premise_bodies: list[ast.SetFormulaNode] = []
    for premise in ob.premises:
        sets.extend(n for n in premise.sets if n not in sets)
        elems.extend(n for n in premise.elems if n not in elems)
        for name, elements in premise.bindings:
            if name in bindings and bindings[name] != elements:
                raise IllFormedQuery(f"conflicting bindings for set {name!r}")
            bindings[name] = elements
        if premise.body is not None:
            premise_bodies.append(premise.body)
    conclusion = ob.conclusion
    sets.extend(n for n in conclusion.sets if n not in sets)
    elems.extend(n for n in conclusion.elems if n not in elems)
    conclusion_parts = _bindings_as_atoms(conclusion.bindings)
    if conclusion.body is not None:
        conclusion_parts.append(conclusion.body)
    if not conclusion_parts:
        raise IllFormedQuery("concrete set conclusion is empty")
    negated = ast.SetNot(conclusion_parts[0] if len(conclusion_parts) == 1
                         else ast.SetConj(tuple(conclusion_parts)))
    if ob.relation == Relation.AND:
        body = ast.SetConj((*premise_bodies, negated)) if premise_bodies else negated
    else:
        alternatives = premise_bodies or [ast.SetConj(())]
        body = ast.SetConj((ast.SetDisj(tuple(alternatives)), negated))
    return ast.ConcreteSetProgram(tuple(sets), tuple(elems),
                                  tuple(sorted(bindings.items())), body)


def build_query(ob: Obligation) -> ast.ConstraintAst:
    if ob.ctype == CType.ARITHMETIC:
        return _build_arith(ob)
    if ob.ctype == CType.LOGICAL:
        return _build_logic(ob)
    if ob.ctype == CType.ABSTRACT_SET:
        return _build_abstract(ob)
    return _build_concrete(ob)


def premises_query(ob: Obligation) -> ast.ConstraintAst | None:
    """Premises alone, used for the vacuity check on sound families."""
    if ob.ctype == CType.ARITHMETIC:
        if ob.relation == Relation.AND:
            parts = [c for p in ob.premises for c in p.items]
            return ast.BoolAnd(tuple(parts))
        return ast.BoolOr(tuple(ast.BoolAnd(p.items) for p in ob.premises))
    if ob.ctype == CType.ABSTRACT_SET:
        sets: list[str] = []
        elems: list[str] = []
        for part in ob.premises:
            sets.extend(n for n in part.sets if n not in sets)
            elems.extend(n for n in part.elems if n not in elems)
        bodies = [_set_body(p) for p in ob.premises]
        body = ast.SetConj(tuple(bodies)) if ob.relation == Relation.AND \
            else ast.SetDisj(tuple(bodies))
        return ast.SetFormula(tuple(sets), tuple(elems), body)
    if ob.ctype == CType.CONCRETE_SET:
        sets: list[str] = []
        elems: list[str] = []
        bindings: dict[str, tuple[int, ...]] = {}
        bodies: list[ast.SetFormulaNode] = []
        for premise in ob.premises:
            sets.extend(n for n in premise.sets if n not in sets)
            elems.extend(n for n in premise.elems if n not in elems)
            bindings.update(premise.bindings)
            if premise.body is not None:
                bodies.append(premise.body)
        if not bodies:
            return None  # literal bindings alone cannot be inconsistent
        body = ast.SetConj(tuple(bodies)) if ob.relation == Relation.AND \
            else ast.SetDisj(tuple(bodies))
        return ast.ConcreteSetProgram(tuple(sets), tuple(elems),
                                      tuple(sorted(bindings.items())), body)
    return None  # definite logic programs always have a model


def solve(query: ast.ConstraintAst, budget: SolverBudget | None = None) -> Verdict:
    budget = budget or SolverBudget()
    kind = classify(query)
    if kind == CType.ARITHMETIC:
        return solve_arith(query, budget)
    if kind == CType.LOGICAL:
        return solve_logic(query, budget)
    if kind == CType.ABSTRACT_SET:
        return solve_abstract_set(query, budget)
    return solve_concrete_set(query, budget)
