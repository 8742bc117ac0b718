"""SMT-LIB 2 export for arithmetic queries.

An interop escape hatch: the built-in procedures decide the shipped
examples, and this export lets an external SMT solver cross-check any
arithmetic obligation.  Output is deterministic for a given query.
"""

from __future__ import annotations

from fractions import Fraction

from ..lang import ast
from .poly import poly_from_term, poly_is_linear


def _sexpr_num(value: Fraction) -> str:
    if value.denominator == 1:
        if value < 0:
            return f"(- {-value.numerator})"
        return str(value.numerator)
    num, den = value.numerator, value.denominator
    if num < 0:
        return f"(- (/ {-num} {den}))"
    return f"(/ {num} {den})"


def _sexpr_term(term: ast.Term) -> str:
    if isinstance(term, ast.Num):
        return _sexpr_num(term.value)
    if isinstance(term, ast.Var):
        return term.name
    if isinstance(term, ast.Neg):
        return f"(- {_sexpr_term(term.operand)})"
    return f"({term.op} {_sexpr_term(term.left)} {_sexpr_term(term.right)})"


def _sexpr_formula(node: ast.ArithFormula) -> str:
    if isinstance(node, ast.Comparison):
        return f"({node.op} {_sexpr_term(node.left)} {_sexpr_term(node.right)})"
    op = "and" if isinstance(node, ast.BoolAnd) else "or"
    inner = " ".join(_sexpr_formula(item) for item in node.items)
    return f"({op} {inner})"


def _is_linear(node: ast.ArithFormula) -> bool:
    if isinstance(node, ast.Comparison):
        for side in (node.left, node.right):
            poly = poly_from_term(side)
            if poly is None or not poly_is_linear(poly):
                return False
        return True
    return all(_is_linear(item) for item in node.items)


def export_smtlib(query: ast.ArithFormula | ast.ArithConj) -> str:
    if isinstance(query, ast.ArithConj):
        query = ast.BoolAnd(query.items)
    variables = sorted(ast.formula_variables(query))
    logic = "QF_LRA" if _is_linear(query) else "QF_NRA"
    lines = [f"(set-logic {logic})"]
    for name in variables:
        lines.append(f"(declare-const {name} Real)")
    if isinstance(query, ast.BoolAnd):
        conjuncts = query.items
    else:
        conjuncts = (query,)
    for item in conjuncts:
        if isinstance(item, ast.BoolAnd) and not item.items:
            continue
        lines.append(f"(assert {_sexpr_formula(item)})")
    lines.append("(check-sat)")
    if variables:
        lines.append("(get-model)")
    return "\n".join(lines) + "\n"
