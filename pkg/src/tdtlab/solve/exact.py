"""Pointwise exact evaluation of arithmetic comparisons."""

from __future__ import annotations

from fractions import Fraction

from ..lang import ast


def eval_term(term: ast.Term, values: dict[str, Fraction]) -> Fraction:
    if isinstance(term, ast.Num):
        return term.value
    if isinstance(term, ast.Var):
        return values[term.name]
    if isinstance(term, ast.Neg):
        return -eval_term(term.operand, values)
    left = eval_term(term.left, values)
    right = eval_term(term.right, values)
    if term.op == "+":
        return left + right
    if term.op == "-":
        return left - right
    if term.op == "*":
        return left * right
    return left / right


def comparison_holds(cmp: ast.Comparison, values: dict[str, Fraction]) -> bool:
    try:
        delta = eval_term(cmp.left, values) - eval_term(cmp.right, values)
    except ZeroDivisionError:
        return False
    if cmp.op == "=":
        return delta == 0
    if cmp.op == "<":
        return delta < 0
    if cmp.op == "<=":
        return delta <= 0
    if cmp.op == ">":
        return delta > 0
    return delta >= 0


def formula_holds(formula: ast.ArithFormula | ast.ArithConj,
                  values: dict[str, Fraction]) -> bool:
    if isinstance(formula, ast.Comparison):
        return comparison_holds(formula, values)
    if isinstance(formula, (ast.ArithConj, ast.BoolAnd)):
        return all(formula_holds(item, values) for item in formula.items)
    return any(formula_holds(item, values) for item in formula.items)
