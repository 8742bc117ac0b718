"""Canonical pretty-printing.

Printing any parsed AST and re-parsing it yields a structurally equal AST;
that round-trip is the normal form used when expressions are rewritten
(e.g. after variable renaming).
"""

from __future__ import annotations

from fractions import Fraction

from . import ast

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}


def format_rational(q: Fraction) -> str:
    """Exact textual form: integers plain, finite decimals as decimals,
    everything else as p/q."""
    if q.denominator == 1:
        return str(q.numerator)
    den = q.denominator
    twos = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{q.numerator}/{q.denominator}"
    digits = max(twos, fives)
    scaled = abs(q.numerator) * 10 ** digits // q.denominator
    text = str(scaled).rjust(digits + 1, "0")
    whole, frac = text[:-digits], text[-digits:].rstrip("0")
    sign = "-" if q.numerator < 0 else ""
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


def _fmt_term(term: ast.Term) -> tuple[str, int]:
    """Text plus a binding strength used for parenthesization (atoms 4,
    products 2, sums 1, negations and negative literals 0)."""
    if isinstance(term, ast.Num):
        text = format_rational(term.value)
        return text, (0 if term.value < 0 else 4)
    if isinstance(term, ast.Var):
        return term.name, 4
    if isinstance(term, ast.Neg):
        inner, prec = _fmt_term(term.operand)
        if prec < 4:
            inner = f"({inner})"
        return f"-{inner}", 0
    prec = _PRECEDENCE[term.op]
    left, left_prec = _fmt_term(term.left)
    if left_prec < prec:
        left = f"({left})"
    right, right_prec = _fmt_term(term.right)
    # same-strength right operands keep parens so the printed association
    # matches the tree exactly (a - (b - c), a + (b + c))
    if right_prec <= prec:
        right = f"({right})"
    return f"{left} {term.op} {right}", prec


def print_term(term: ast.Term) -> str:
    return _fmt_term(term)[0]


def print_comparison(cmp: ast.Comparison) -> str:
    return f"{print_term(cmp.left)} {cmp.op} {print_term(cmp.right)}"


def print_logic_term(term: ast.LTerm) -> str:
    if isinstance(term, ast.LVar):
        return term.name
    if isinstance(term.value, Fraction):
        return format_rational(term.value)
    return term.value


def print_logic_atom(atom: ast.LAtom) -> str:
    if not atom.args:
        return atom.pred
    return f"{atom.pred}({', '.join(print_logic_term(a) for a in atom.args)})"


def print_literal(lit: ast.Literal) -> str:
    if isinstance(lit, ast.Naf):
        inner = ", ".join(print_literal(g) for g in lit.goals)
        if len(lit.goals) == 1 and isinstance(lit.goals[0], ast.LAtom):
            return f"\\+ {inner}"
        return f"\\+ ({inner})"
    return print_logic_atom(lit)


def print_set_expr(expr: ast.SetExpr) -> str:
    if isinstance(expr, ast.SetName):
        return expr.name
    if isinstance(expr, ast.EmptySet):
        return "empty"
    if isinstance(expr, ast.SetLiteral):
        return "{" + ", ".join(str(e) for e in expr.elements) + "}"
    left = print_set_expr(expr.left)
    right = print_set_expr(expr.right)
    if isinstance(expr.left, ast.SetOp):
        left = f"({left})"
    if isinstance(expr.right, ast.SetOp):
        right = f"({right})"
    return f"{left} {expr.op} {right}"


def print_set_atom(atom: ast.SetAtom) -> str:
    if atom.op in ("in", "notin"):
        right = print_set_expr(atom.right)
        if isinstance(atom.right, ast.SetOp):
            right = f"({right})"
        return f"{atom.elem} {atom.op} {right}"
    op = "=" if atom.op == "eq" else atom.op
    return f"{print_set_expr(atom.left)} {op} {print_set_expr(atom.right)}"


def print_constraint(node: ast.ConstraintAst) -> str:
    if isinstance(node, ast.ArithConj):
        return " ; ".join(print_comparison(c) for c in node.items)
    if isinstance(node, ast.Comparison):
        return print_comparison(node)
    if isinstance(node, (ast.BoolAnd, ast.BoolOr)):
        joiner = " and " if isinstance(node, ast.BoolAnd) else " or "
        parts = []
        for item in node.items:
            text = print_constraint(item)
            if isinstance(item, (ast.BoolAnd, ast.BoolOr)):
                text = f"({text})"
            parts.append(text)
        return joiner.join(parts)
    if isinstance(node, ast.LogicProgram):
        lines = []
        for clause in node.clauses:
            if clause.body:
                body = ", ".join(print_literal(lit) for lit in clause.body)
                lines.append(f"{print_logic_atom(clause.head)} :- {body}.")
            else:
                lines.append(f"{print_logic_atom(clause.head)}.")
        if node.query is not None:
            lines.append(", ".join(print_literal(lit) for lit in node.query) + ".")
        return "\n".join(lines)
    if isinstance(node, ast.SetFormula):
        return _print_set_program(node.sets, node.elems, (), node.body)
    if isinstance(node, ast.ConcreteSetProgram):
        return _print_set_program(node.sets, node.elems, node.bindings, node.body)
    raise TypeError(f"cannot print {node!r}")


def _print_set_program(sets, elems, bindings, body) -> str:
    parts = []
    if sets:
        parts.append(f"Set {', '.join(sets)};")
    if elems:
        parts.append(f"Elem {', '.join(elems)};")
    for name, elements in bindings:
        parts.append(f"{name} = {{{', '.join(str(e) for e in elements)}}};")
    for atom in _conjuncts(body):
        parts.append(print_set_atom(atom) + ";")
    return " ".join(parts)


def _conjuncts(body):
    if body is None:
        return []
    if isinstance(body, ast.SetAtom):
        return [body]
    if isinstance(body, ast.SetConj):
        out = []
        for item in body.items:
            out.extend(_conjuncts(item))
        return out
    raise TypeError("only conjunctive set bodies are printable as source")
