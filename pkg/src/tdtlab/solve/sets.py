"""Set reasoning.

Abstract sets: the query fragment is quantifier free with finitely many
declared set and element names, so a small-model search is complete up to
the universe bound K (default 2 * (#sets + #elems)).  Every universe size
1..K is enumerated; Sat returns the explicit witness interpretation, and
exhausting all sizes is reported as Unsat with K recorded in the
diagnostics.  Concrete sets evaluate directly over their literal bindings.
"""

from __future__ import annotations

import itertools
import time

from ..errors import IllFormedQuery, UnboundSetName
from ..lang import ast
from .verdict import Outcome, Verdict


def eval_set_expr(expr: ast.SetExpr, sets: dict[str, frozenset]) -> frozenset:
    if isinstance(expr, ast.SetName):
        if expr.name not in sets:
            raise UnboundSetName(f"set {expr.name!r} has no value")
        return sets[expr.name]
    if isinstance(expr, ast.EmptySet):
        return frozenset()
    if isinstance(expr, ast.SetLiteral):
        return frozenset(expr.elements)
    left = eval_set_expr(expr.left, sets)
    right = eval_set_expr(expr.right, sets)
    if expr.op == "union":
        return left | right
    if expr.op == "inter":
        return left & right
    return left - right


def eval_formula(node: ast.SetFormulaNode, sets: dict[str, frozenset],
                 elems: dict[str, int]) -> bool:
    if isinstance(node, ast.SetAtom):
        if node.op in ("in", "notin"):
            if node.elem not in elems:
                raise UnboundSetName(f"element {node.elem!r} has no value")
            member = elems[node.elem] in eval_set_expr(node.right, sets)
            return member if node.op == "in" else not member
        left = eval_set_expr(node.left, sets)
        right = eval_set_expr(node.right, sets)
        return left == right if node.op == "eq" else left <= right
    if isinstance(node, ast.SetNot):
        return not eval_formula(node.inner, sets, elems)
    if isinstance(node, ast.SetConj):
        return all(eval_formula(item, sets, elems) for item in node.items)
    return any(eval_formula(item, sets, elems) for item in node.items)


def _names_in(node: ast.SetFormulaNode) -> tuple[set[str], set[str]]:
    set_names: set[str] = set()
    elem_names: set[str] = set()

    def expr_names(expr: ast.SetExpr):
        if isinstance(expr, ast.SetName):
            set_names.add(expr.name)
        elif isinstance(expr, ast.SetOp):
            expr_names(expr.left)
            expr_names(expr.right)

    def visit(n: ast.SetFormulaNode):
        if isinstance(n, ast.SetAtom):
            if n.elem is not None:
                elem_names.add(n.elem)
            if n.left is not None:
                expr_names(n.left)
            expr_names(n.right)
        elif isinstance(n, ast.SetNot):
            visit(n.inner)
        else:
            for item in n.items:
                visit(item)

    visit(node)
    return set_names, elem_names


def default_universe_bound(formula: ast.SetFormula) -> int:
    used_sets, used_elems = _names_in(formula.body)
    sets = set(formula.sets) | used_sets
    elems = set(formula.elems) | used_elems
    return max(1, 2 * (len(sets) + len(elems)))


def solve_abstract_set(formula: ast.SetFormula, budget) -> Verdict:
    deadline = time.monotonic() + budget.wall_ms / 1000.0
    used_sets, used_elems = _names_in(formula.body)
    set_names = sorted(set(formula.sets) | used_sets)
    elem_names = sorted(set(formula.elems) | used_elems)
    bound = max(1, 2 * (len(set_names) + len(elem_names)))
    if bound > budget.max_universe:
        return Verdict(Outcome.UNKNOWN, diagnostics={
            "reason": "universe bound exceeds cap",
            "required_bound": bound, "cap": budget.max_universe})
    checked = 0
    for size in range(1, bound + 1):
        universe = tuple(range(size))
        subsets = [frozenset(c) for r in range(size + 1)
                   for c in itertools.combinations(universe, r)]
        for set_choice in itertools.product(subsets, repeat=len(set_names)):
            sets = dict(zip(set_names, set_choice))
            for elem_choice in itertools.product(universe, repeat=len(elem_names)):
                checked += 1
                if checked % 4096 == 0 and time.monotonic() > deadline:
                    return Verdict(Outcome.UNKNOWN, diagnostics={
                        "reason": "wall clock budget exhausted",
                        "assignments_checked": checked})
                elems = dict(zip(elem_names, elem_choice))
                if eval_formula(formula.body, sets, elems):
                    model = [(name, sets[name]) for name in set_names]
                    model += [(name, elems[name]) for name in elem_names]
                    return Verdict(Outcome.SAT, model=tuple(model),
                                   diagnostics={"universe_size": size,
                                                "assignments_checked": checked})
    return Verdict(Outcome.UNSAT, diagnostics={
        "universe_bound": bound, "assignments_checked": checked})


def _collect_expr_literals(expr: ast.SetExpr | None, out: set[int]):
    if isinstance(expr, ast.SetLiteral):
        out.update(expr.elements)
    elif isinstance(expr, ast.SetOp):
        _collect_expr_literals(expr.left, out)
        _collect_expr_literals(expr.right, out)


def solve_concrete_set(program: ast.ConcreteSetProgram, budget) -> Verdict:
    if program.body is None:
        raise IllFormedQuery("concrete set query has no goal")
    sets: dict[str, frozenset] = {}
    for name, elements in program.bindings:
        sets[name] = frozenset(elements)
    used_sets, used_elems = _names_in(program.body)
    missing = sorted((used_sets | set(program.sets)) - set(sets))
    if missing:
        raise UnboundSetName(f"no literal binding for set(s) {', '.join(missing)}")
    elem_names = sorted(used_elems | set(program.elems))
    literal_elements: set[int] = set()

    def collect_literals(n: ast.SetFormulaNode):
        if isinstance(n, ast.SetAtom):
            for side in (n.left, n.right):
                _collect_expr_literals(side, literal_elements)
        elif isinstance(n, ast.SetNot):
            collect_literals(n.inner)
        else:
            for item in n.items:
                collect_literals(item)

    collect_literals(program.body)
    pool = set().union(*sets.values()) if sets else set()
    universe = sorted(pool | literal_elements)

    def attempt(elems: dict[str, int]) -> bool:
        return eval_formula(program.body, sets, elems)

    if not elem_names:
        if attempt({}):
            model = tuple((name, sets[name]) for name in sorted(sets))
            return Verdict(Outcome.SAT, model=model)
        return Verdict(Outcome.UNSAT)
    for choice in itertools.product(universe, repeat=len(elem_names)):
        elems = dict(zip(elem_names, choice))
        if attempt(elems):
            model = tuple((name, sets[name]) for name in sorted(sets)) + \
                tuple(sorted(elems.items()))
            return Verdict(Outcome.SAT, model=model)
    return Verdict(Outcome.UNSAT, diagnostics={"element_universe": universe})
