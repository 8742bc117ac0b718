"""Interval constraint propagation with branch and prune.

Used for conjunctions containing nonlinear terms.  Each comparison
``left op right`` is treated as ``e op 0`` with ``e = left - right``; a
forward-backward (HC4-style) pass contracts the variable box through the
expression tree, the box is pruned when some constraint is certainly
violated under exact interval arithmetic, and satisfiability is only ever
claimed for a sampled rational point that satisfies every comparison
exactly.  Equalities are sampled with a repair step that re-solves one
variable of the equality given the others, which finds witnesses on
constraint manifolds that midpoints always miss.

Boxes start from the explicit bounds present in the query and may be
half-open; branching happens on the widest finite interval.  Exhausting
the box budget, the wall clock, or the minimum box width without a
decision yields Unknown, never a wrong answer.
"""

from __future__ import annotations

import time
from fractions import Fraction

from ..lang import ast
from . import interval as iv
from .exact import comparison_holds
from .interval import Ival
from .poly import Poly, poly_from_term, poly_sub, poly_variables, univariate

_MAX_PROPAGATION_ROUNDS = 30

Box = dict[str, Ival]


def _forward(term: ast.Term, box: Box) -> Ival:
    if isinstance(term, ast.Num):
        return Ival.point(term.value)
    if isinstance(term, ast.Var):
        return box[term.name]
    if isinstance(term, ast.Neg):
        return iv.neg(_forward(term.operand, box))
    left = _forward(term.left, box)
    right = _forward(term.right, box)
    if term.op == "+":
        return iv.add(left, right)
    if term.op == "-":
        return iv.sub(left, right)
    if term.op == "*":
        return iv.mul(left, right)
    return iv.div(left, right)


def _backward(term: ast.Term, required: Ival, box: Box) -> bool:
    """Narrow the box so term's interval fits required; False when the box
    becomes empty."""
    current = _forward(term, box)
    narrowed = iv.intersect(current, required)
    if narrowed is None:
        return False
    if isinstance(term, ast.Num):
        return narrowed.contains(term.value)
    if isinstance(term, ast.Var):
        box[term.name] = narrowed
        return True
    if isinstance(term, ast.Neg):
        return _backward(term.operand, iv.neg(narrowed), box)
    left = _forward(term.left, box)
    right = _forward(term.right, box)
    if term.op == "+":
        return (_backward(term.left, iv.sub(narrowed, right), box)
                and _backward(term.right, iv.sub(narrowed, _forward(term.left, box)), box))
    if term.op == "-":
        return (_backward(term.left, iv.add(narrowed, right), box)
                and _backward(term.right, iv.sub(_forward(term.left, box), narrowed), box))
    if term.op == "*":
        return (_backward(term.left, iv.div(narrowed, right), box)
                and _backward(term.right, iv.div(narrowed, _forward(term.left, box)), box))
    # term.op == "/": e = l / r  =>  l in e*r,  r in l/e
    return (_backward(term.left, iv.mul(narrowed, right), box)
            and _backward(term.right, iv.div(_forward(term.left, box), narrowed), box))


_REQUIRED = {
    "=": Ival.point(Fraction(0)),
    "<": Ival(None, Fraction(0)),
    "<=": Ival(None, Fraction(0)),
    ">": Ival(Fraction(0), None),
    ">=": Ival(Fraction(0), None),
}


def _certainly_violated(op: str, i: Ival) -> bool:
    zero = Fraction(0)
    if op == "=":
        return (i.lo is not None and i.lo > zero) or (i.hi is not None and i.hi < zero)
    if op == "<":
        return i.lo is not None and i.lo >= zero
    if op == "<=":
        return i.lo is not None and i.lo > zero
    if op == ">":
        return i.hi is not None and i.hi <= zero
    return i.hi is not None and i.hi < zero  # '>='


class IcpSolver:
    def __init__(self, comparisons: list[ast.Comparison], initial: Box,
                 max_boxes: int, min_width: Fraction, deadline: float):
        self.comparisons = comparisons
        self.diffs = [ast.BinOp("-", c.left, c.right) for c in comparisons]
        self.polys: list[Poly | None] = []
        for c in comparisons:
            lp = poly_from_term(c.left)
            rp = poly_from_term(c.right)
            self.polys.append(None if lp is None or rp is None else poly_sub(lp, rp))
        self.variables = sorted({v for c in comparisons
                                 for v in ast.formula_variables(c)})
        self.initial = {v: initial.get(v, Ival.whole()) for v in self.variables}
        self.max_boxes = max_boxes
        self.min_width = min_width
        self.deadline = deadline
        self.boxes_used = 0
        self.unbounded: set[str] = set()

    # -- box operations ----------------------------------------------------

    def _contract(self, box: Box) -> bool:
        """Propagate to fixpoint; False when the box is refuted."""
        for _ in range(_MAX_PROPAGATION_ROUNDS):
            before = dict(box)
            for diff, cmp in zip(self.diffs, self.comparisons):
                if not _backward(diff, _REQUIRED[cmp.op], box):
                    return False
            if box == before:
                break
        for diff, cmp in zip(self.diffs, self.comparisons):
            if _certainly_violated(cmp.op, _forward(diff, box)):
                return False
        return True

    def _pick_branch_var(self, box: Box) -> str | None:
        best: str | None = None
        best_width: Fraction | None = None
        for var in self.variables:
            width = box[var].width()
            if width is None or width <= self.min_width:
                continue
            if best_width is None or width > best_width:
                best, best_width = var, width
        return best

    # -- sampling ----------------------------------------------------------

    def check_model(self, values: dict[str, Fraction]) -> bool:
        return all(comparison_holds(c, values) for c in self.comparisons)

    def _repair_equalities(self, values: dict[str, Fraction], box: Box):
        for poly, cmp in zip(self.polys, self.comparisons):
            if cmp.op != "=" or poly is None:
                continue
            for var in sorted(poly_variables(poly)):
                solution = _solve_univariate(univariate(poly, var, values))
                if solution is None:
                    continue
                preferred = [s for s in solution if box[var].contains(s)]
                values[var] = (preferred or solution)[0]
                break

    def _sample(self, box: Box) -> dict[str, Fraction] | None:
        values = {v: box[v].sample() for v in self.variables}
        if self.check_model(values):
            return values
        for _ in range(2):
            self._repair_equalities(values, box)
            if self.check_model(values):
                return values
        return None

    # -- main loop ----------------------------------------------------------

    def solve(self):
        """'unsat', ('sat', values) or 'unknown'."""
        queue: list[Box] = [dict(self.initial)]
        unresolved = False
        while queue:
            if self.boxes_used >= self.max_boxes or time.monotonic() > self.deadline:
                return "unknown"
            box = queue.pop()
            self.boxes_used += 1
            if not self._contract(box):
                continue
            model = self._sample(box)
            if model is not None:
                return ("sat", model)
            var = self._pick_branch_var(box)
            if var is None:
                for name in self.variables:
                    if box[name].width() is None:
                        self.unbounded.add(name)
                unresolved = True
                continue
            mid = box[var].sample()
            low = dict(box)
            high = dict(box)
            low[var] = Ival(box[var].lo, mid)
            high[var] = Ival(mid, box[var].hi)
            queue.append(high)
            queue.append(low)
        return "unknown" if unresolved else "unsat"


def _solve_univariate(coeffs: dict[int, Fraction]) -> list[Fraction] | None:
    """Rational roots of a univariate polynomial of degree <= 2."""
    degree = max(coeffs, default=0)
    c0 = coeffs.get(0, Fraction(0))
    c1 = coeffs.get(1, Fraction(0))
    c2 = coeffs.get(2, Fraction(0))
    if degree > 2:
        return None
    if degree <= 1 or c2 == 0:
        if c1 == 0:
            return None
        return [-c0 / c1]
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return None
    root = _rational_sqrt(disc)
    if root is None:
        return None
    return sorted({(-c1 + root) / (2 * c2), (-c1 - root) / (2 * c2)})


def _rational_sqrt(value: Fraction) -> Fraction | None:
    import math

    if value < 0:
        return None
    num = math.isqrt(value.numerator)
    den = math.isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None
