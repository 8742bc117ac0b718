"""Satisfiability of arithmetic queries.

Pipeline per disjunctive case:

1. constants fold away; a false constant comparison kills the case;
2. comparisons over one and the same normalized polynomial are merged into
   a single admissible interval (so ``p = 0`` together with ``p < 0`` dies
   syntactically, which matters for negated equalities over nonlinear
   terms that pure interval reasoning cannot separate);
3. purely linear cases go to exact Fourier-Motzkin with witness recovery;
4. anything nonlinear goes to interval branch-and-prune.

Sat is only ever reported with a model that re-evaluates every comparison
of the case to true in exact rational arithmetic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from ..lang import ast
from .exact import comparison_holds
from .icp import IcpSolver
from .interval import Ival
from .linear import LinCon, solve_linear_system
from .poly import (CONST, Poly, poly_from_term, poly_is_linear, poly_sub,
                   poly_variables)
from .verdict import Outcome, Verdict

_MAX_DNF_CASES = 4096
_MIN_BOX_WIDTH = Fraction(1, 10 ** 9)


def dnf_cases(formula: ast.ArithFormula) -> list[list[ast.Comparison]]:
    if isinstance(formula, ast.Comparison):
        return [[formula]]
    if isinstance(formula, ast.BoolOr):
        out: list[list[ast.Comparison]] = []
        for item in formula.items:
            out.extend(dnf_cases(item))
            if len(out) > _MAX_DNF_CASES:
                raise _CasesExceeded
        return out
    cases: list[list[ast.Comparison]] = [[]]
    for item in formula.items:
        expansion = dnf_cases(item)
        cases = [base + ext for base in cases for ext in expansion]
        if len(cases) > _MAX_DNF_CASES:
            raise _CasesExceeded
    return cases


class _CasesExceeded(Exception):
    pass


@dataclass
class _Bound:
    lo: Fraction | None = None
    lo_strict: bool = False
    hi: Fraction | None = None
    hi_strict: bool = False

    def narrow(self, op: str, value: Fraction) -> bool:
        if op in ("=",):
            return self.narrow(">=", value) and self.narrow("<=", value)
        if op in (">", ">="):
            strict = op == ">"
            if self.lo is None or value > self.lo or (value == self.lo and strict):
                self.lo, self.lo_strict = value, strict
        else:
            strict = op == "<"
            if self.hi is None or value < self.hi or (value == self.hi and strict):
                self.hi, self.hi_strict = value, strict
        return not self.empty()

    def empty(self) -> bool:
        if self.lo is None or self.hi is None:
            return False
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and (self.lo_strict or self.hi_strict)


def _canonical(poly: Poly, op: str) -> tuple[tuple, str, Fraction]:
    """Split p op 0 into (normalized non-constant key, op, bound) with the
    leading coefficient scaled to one."""
    constant = poly.get(CONST, Fraction(0))
    rest = {m: c for m, c in poly.items() if m != CONST}
    items = tuple(sorted(rest.items()))
    lead = items[0][1]
    key = tuple((m, c / lead) for m, c in items)
    bound = -constant / lead
    if lead < 0:
        op = {"<": ">", "<=": ">=", ">": "<", ">=": "<=", "=": "="}[op]
    return key, op, bound


_TRUTH = {
    "=": lambda d: d == 0,
    "<": lambda d: d < 0,
    "<=": lambda d: d <= 0,
    ">": lambda d: d > 0,
    ">=": lambda d: d >= 0,
}


def _case_preprocess(case: list[ast.Comparison]):
    """Returns ('unsat', None, None) or ('open', kept, bounds) where bounds
    maps canonical polynomial keys to admissible intervals."""
    kept: list[tuple[ast.Comparison, Poly | None]] = []
    bounds: dict[tuple, _Bound] = {}
    for cmp in case:
        lp = poly_from_term(cmp.left)
        rp = poly_from_term(cmp.right)
        poly = None if lp is None or rp is None else poly_sub(lp, rp)
        if poly is not None:
            rest = {m: c for m, c in poly.items() if m != CONST}
            if not rest:
                if not _TRUTH[cmp.op](poly.get(CONST, Fraction(0))):
                    return "unsat", None, None
                continue  # constant truth adds nothing
            key, op, value = _canonical(poly, cmp.op)
            bound = bounds.setdefault(key, _Bound())
            if not bound.narrow(op, value):
                return "unsat", None, None
        kept.append((cmp, poly))
    return "open", kept, bounds


def _initial_box(bounds: dict[tuple, _Bound]) -> dict[str, Ival]:
    box: dict[str, Ival] = {}
    for key, b in bounds.items():
        if len(key) != 1:
            continue
        monomial, _coeff = key[0]
        if len(monomial) == 1 and monomial[0][1] == 1:  # plain variable bound
            box[monomial[0][0]] = Ival(b.lo, b.hi)
    return box


def _solve_case(case: list[ast.Comparison], budget, deadline: float, diag: dict):
    state, kept, bounds = _case_preprocess(case)
    if state == "unsat":
        diag["cases_closed_syntactically"] = diag.get("cases_closed_syntactically", 0) + 1
        return "unsat", None
    if not kept:
        return "sat", {}  # trivially true case
    if all(poly is not None and poly_is_linear(poly) for _, poly in kept):
        constraints: list[LinCon] = []
        for cmp, poly in kept:
            constraints.extend(_lincons(poly, cmp.op))
        witness = solve_linear_system(constraints)
        if witness is None:
            return "unsat", None
        variables = set()
        for _, poly in kept:
            variables |= poly_variables(poly)
        values = {v: witness.get(v, Fraction(0)) for v in variables}
        if not all(comparison_holds(cmp, values) for cmp, _ in kept):
            raise AssertionError("linear witness failed exact re-check")
        return "sat", values
    solver = IcpSolver([cmp for cmp, _ in kept], _initial_box(bounds),
                       budget.max_boxes, _MIN_BOX_WIDTH, deadline)
    result = solver.solve()
    diag["boxes"] = diag.get("boxes", 0) + solver.boxes_used
    if solver.unbounded:
        diag.setdefault("unbounded_variables", sorted(solver.unbounded))
    if result == "unsat":
        return "unsat", None
    if result == "unknown":
        return "unknown", None
    return "sat", result[1]


def _lincons(poly: Poly, op: str) -> list[LinCon]:
    coeffs = {m[0][0]: c for m, c in poly.items() if m != CONST}
    const = poly.get(CONST, Fraction(0))
    neg = {v: -c for v, c in coeffs.items()}
    if op == "=":
        return [LinCon.make(coeffs, const, False), LinCon.make(neg, -const, False)]
    if op in ("<", "<="):
        return [LinCon.make(coeffs, const, op == "<")]
    return [LinCon.make(neg, -const, op == ">")]


def solve_arith(query: ast.ArithFormula | ast.ArithConj, budget) -> Verdict:
    start = time.monotonic()
    deadline = start + budget.wall_ms / 1000.0
    if isinstance(query, ast.ArithConj):
        query = ast.BoolAnd(query.items)
    diag: dict = {}
    try:
        cases = dnf_cases(query)
    except _CasesExceeded:
        return Verdict(Outcome.UNKNOWN, diagnostics={"reason": "case split too large"})
    diag["cases"] = len(cases)
    sure_unsat = True
    for case in cases:
        if time.monotonic() > deadline:
            diag["reason"] = "wall clock budget exhausted"
            return Verdict(Outcome.UNKNOWN, diagnostics=diag)
        state, values = _solve_case(case, budget, deadline, diag)
        if state == "sat":
            model = tuple(sorted(values.items()))
            diag["elapsed_ms"] = round((time.monotonic() - start) * 1000, 3)
            return Verdict(Outcome.SAT, model=model, diagnostics=diag)
        if state == "unknown":
            sure_unsat = False
    diag["elapsed_ms"] = round((time.monotonic() - start) * 1000, 3)
    if sure_unsat:
        return Verdict(Outcome.UNSAT, diagnostics=diag)
    diag.setdefault("reason", "search budget exhausted")
    return Verdict(Outcome.UNKNOWN, diagnostics=diag)
