"""Exact linear satisfiability via Fourier-Motzkin elimination.

Constraints are kept as  sum(coeff * var) + const  (< | <=)  0  with
Fraction coefficients; equalities are split into two inequalities by the
caller.  Strictness is tracked exactly through elimination: a combined
constraint is strict if either parent is.  When the system is feasible a
witness point is recovered by back-substitution, choosing interior values,
so every returned model satisfies the original strict bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class LinCon:
    coeffs: tuple[tuple[str, Fraction], ...]  # sorted by variable name
    const: Fraction
    strict: bool

    @staticmethod
    def make(coeffs: dict[str, Fraction], const: Fraction, strict: bool) -> "LinCon":
        cleaned = tuple(sorted((v, c) for v, c in coeffs.items() if c != 0))
        return LinCon(cleaned, const, strict)

    def coeff(self, var: str) -> Fraction:
        for v, c in self.coeffs:
            if v == var:
                return c
        return Fraction(0)

    def drop(self, var: str) -> dict[str, Fraction]:
        return {v: c for v, c in self.coeffs if v != var}


def _combine(lower: LinCon, upper: LinCon, var: str) -> LinCon:
    """Eliminate var from a lower bound (coeff < 0) and an upper bound
    (coeff > 0) pair."""
    cl = -lower.coeff(var)  # positive
    cu = upper.coeff(var)   # positive
    coeffs: dict[str, Fraction] = {}
    for v, c in lower.coeffs:
        if v != var:
            coeffs[v] = coeffs.get(v, Fraction(0)) + c * cu
    for v, c in upper.coeffs:
        if v != var:
            coeffs[v] = coeffs.get(v, Fraction(0)) + c * cl
    const = lower.const * cu + upper.const * cl
    return LinCon.make(coeffs, const, lower.strict or upper.strict)


def solve_linear_system(constraints: list[LinCon]) -> dict[str, Fraction] | None:
    """Witness assignment if the conjunction is satisfiable, else None."""
    variables = sorted({v for con in constraints for v, _ in con.coeffs})
    active = list(constraints)
    levels: list[tuple[str, list[LinCon]]] = []

    for var in variables:
        involved = [c for c in active if c.coeff(var) != 0]
        others = [c for c in active if c.coeff(var) == 0]
        lowers = [c for c in involved if c.coeff(var) < 0]
        uppers = [c for c in involved if c.coeff(var) > 0]
        levels.append((var, involved))
        for lo in lowers:
            for up in uppers:
                others.append(_combine(lo, up, var))
        active = others

    for con in active:  # now constant constraints only
        if con.const > 0 or (con.strict and con.const == 0):
            return None

    values: dict[str, Fraction] = {}
    for var, involved in reversed(levels):
        lo_val: Fraction | None = None
        lo_strict = False
        hi_val: Fraction | None = None
        hi_strict = False
        for con in involved:
            c = con.coeff(var)
            rest = con.const + sum(values[v] * k for v, k in con.coeffs if v != var)
            bound = -rest / c
            if c > 0:  # var <(=) bound
                if hi_val is None or bound < hi_val:
                    hi_val, hi_strict = bound, con.strict
                elif bound == hi_val:
                    hi_strict = hi_strict or con.strict
            else:      # var >(=) bound
                if lo_val is None or bound > lo_val:
                    lo_val, lo_strict = bound, con.strict
                elif bound == lo_val:
                    lo_strict = lo_strict or con.strict
        values[var] = _pick(lo_val, lo_strict, hi_val, hi_strict)
    return values


def _pick(lo, lo_strict, hi, hi_strict) -> Fraction:
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi - 1 if hi_strict else hi
    if hi is None:
        return lo + 1 if lo_strict else lo
    if lo == hi:
        # elimination guarantees consistency, so neither bound is strict here
        return lo
    return (lo + hi) / 2
