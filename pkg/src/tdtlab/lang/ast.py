"""Constraint expression AST.

One unified tree covers the three surface dialects:

* arithmetic comparison conjunctions      -> ArithConj
* Horn-clause programs and queries        -> LogicProgram
* set formulas over declared names        -> SetFormula / ConcreteSetProgram

Parse-level values are conjunctions.  Query building (solve.query) reuses
the same node classes and adds boolean structure (BoolAnd/BoolOr for
arithmetic, SetConj/SetDisj/SetNot for sets, LogicOr for disjunctive
logic obligations), so a built query is still a ConstraintAst.

All nodes are frozen; they are shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Union


class CType(str, Enum):
    LOGICAL = "Logical"
    ARITHMETIC = "Arithmetic"
    ABSTRACT_SET = "AbstractSet"
    CONCRETE_SET = "ConcreteSet"


# --------------------------------------------------------------------------
# arithmetic

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Term"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Term"
    right: "Term"


Term = Union[Num, Var, Neg, BinOp]

#: comparison operators after normalization ('==' is folded into '=')
CMP_OPS = ("=", "<", "<=", ">", ">=")


@dataclass(frozen=True)
class Comparison:
    op: str
    left: Term
    right: Term


@dataclass(frozen=True)
class ArithConj:
    items: tuple[Comparison, ...]


@dataclass(frozen=True)
class BoolAnd:
    items: tuple["ArithFormula", ...]


@dataclass(frozen=True)
class BoolOr:
    items: tuple["ArithFormula", ...]


ArithFormula = Union[Comparison, BoolAnd, BoolOr]


def negate_comparison(cmp: Comparison) -> ArithFormula:
    """Negation pushed to comparison level: the result is comparison or a
    two-way disjunction (for '=')."""
    if cmp.op == "=":
        return BoolOr((Comparison("<", cmp.left, cmp.right),
                       Comparison(">", cmp.left, cmp.right)))
    flipped = {"<": ">=", "<=": ">", ">": "<=", ">=": "<"}[cmp.op]
    return Comparison(flipped, cmp.left, cmp.right)


def mirror_comparison(cmp: Comparison) -> Comparison:
    """Canonical orientation: '>' and '>=' are rewritten as the mirrored
    '<'/'<=' so that `a >= b` and `b <= a` compare equal."""
    if cmp.op == ">":
        return Comparison("<", cmp.right, cmp.left)
    if cmp.op == ">=":
        return Comparison("<=", cmp.right, cmp.left)
    return cmp


# --------------------------------------------------------------------------
# logic

@dataclass(frozen=True)
class LVar:
    name: str


@dataclass(frozen=True)
class LConst:
    value: Union[str, Fraction]


LTerm = Union[LVar, LConst]


@dataclass(frozen=True)
class LAtom:
    pred: str
    args: tuple[LTerm, ...] = ()


@dataclass(frozen=True)
class Naf:
    """Negation as failure over a conjunction of literals."""

    goals: tuple["Literal", ...]


Literal = Union[LAtom, Naf]


@dataclass(frozen=True)
class Clause:
    head: LAtom
    body: tuple[Literal, ...] = ()


@dataclass(frozen=True)
class LogicProgram:
    clauses: tuple[Clause, ...]
    query: tuple[Literal, ...] | None = None


@dataclass(frozen=True)
class LogicOr:
    """Disjunction of alternative programs sharing one goal; produced only
    by query building for Or-related families."""

    branches: tuple[LogicProgram, ...]


# --------------------------------------------------------------------------
# sets

@dataclass(frozen=True)
class SetName:
    name: str


@dataclass(frozen=True)
class EmptySet:
    pass


@dataclass(frozen=True)
class SetLiteral:
    elements: tuple[int, ...]


@dataclass(frozen=True)
class SetOp:
    op: str  # union | inter | diff
    left: "SetExpr"
    right: "SetExpr"


SetExpr = Union[SetName, EmptySet, SetLiteral, SetOp]


@dataclass(frozen=True)
class SetAtom:
    """One relational atom.  For 'in'/'notin' the left side is an element
    name, otherwise both sides are set expressions."""

    op: str  # eq | in | notin | subset
    elem: str | None
    left: SetExpr | None
    right: SetExpr


@dataclass(frozen=True)
class SetNot:
    inner: "SetFormulaNode"


@dataclass(frozen=True)
class SetConj:
    items: tuple["SetFormulaNode", ...]


@dataclass(frozen=True)
class SetDisj:
    items: tuple["SetFormulaNode", ...]


SetFormulaNode = Union[SetAtom, SetNot, SetConj, SetDisj]


@dataclass(frozen=True)
class SetFormula:
    sets: tuple[str, ...]
    elems: tuple[str, ...]
    body: SetFormulaNode


@dataclass(frozen=True)
class ConcreteSetProgram:
    sets: tuple[str, ...]
    elems: tuple[str, ...]
    bindings: tuple[tuple[str, tuple[int, ...]], ...]
    body: SetFormulaNode | None


ConstraintAst = Union[
    ArithConj, BoolAnd, BoolOr, Comparison,
    LogicProgram, LogicOr,
    SetFormula, ConcreteSetProgram,
]


def classify(ast: ConstraintAst) -> CType:
    """Total constraint-type classification used for solver dispatch."""
    if isinstance(ast, (ArithConj, BoolAnd, BoolOr, Comparison)):
        return CType.ARITHMETIC
    if isinstance(ast, (LogicProgram, LogicOr)):
        return CType.LOGICAL
    if isinstance(ast, SetFormula):
        return CType.ABSTRACT_SET
    if isinstance(ast, ConcreteSetProgram):
        return CType.CONCRETE_SET
    raise TypeError(f"not a constraint AST: {ast!r}")


def term_variables(term: Term) -> set[str]:
    if isinstance(term, Var):
        return {term.name}
    if isinstance(term, Num):
        return set()
    if isinstance(term, Neg):
        return term_variables(term.operand)
    return term_variables(term.left) | term_variables(term.right)


def formula_variables(formula: ArithFormula | ArithConj) -> set[str]:
    if isinstance(formula, Comparison):
        return term_variables(formula.left) | term_variables(formula.right)
    out: set[str] = set()
    for item in formula.items:
        out |= formula_variables(item)
    return out
