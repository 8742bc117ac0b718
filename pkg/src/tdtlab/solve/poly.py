"""Polynomial normal form for arithmetic terms.

A polynomial is a mapping from monomials to Fraction coefficients, where a
monomial is a sorted tuple of (variable, power) pairs and () is the
constant term.  Terms that divide by a non-constant expression have no
polynomial form and keep their tree representation.
"""

from __future__ import annotations

from fractions import Fraction

from ..lang import ast

Monomial = tuple[tuple[str, int], ...]
Poly = dict[Monomial, Fraction]

CONST: Monomial = ()


def poly_const(value: Fraction) -> Poly:
    return {CONST: value} if value else {}


def poly_var(name: str) -> Poly:
    return {((name, 1),): Fraction(1)}


def poly_add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, Fraction(0)) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def poly_scale(p: Poly, k: Fraction) -> Poly:
    if not k:
        return {}
    return {m: c * k for m, c in p.items()}


def poly_sub(p: Poly, q: Poly) -> Poly:
    return poly_add(p, poly_scale(q, Fraction(-1)))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    powers: dict[str, int] = dict(a)
    for var, exp in b:
        powers[var] = powers.get(var, 0) + exp
    return tuple(sorted(powers.items()))


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = _mono_mul(m1, m2)
            v = out.get(m, Fraction(0)) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def poly_from_term(term: ast.Term) -> Poly | None:
    if isinstance(term, ast.Num):
        return poly_const(term.value)
    if isinstance(term, ast.Var):
        return poly_var(term.name)
    if isinstance(term, ast.Neg):
        inner = poly_from_term(term.operand)
        return None if inner is None else poly_scale(inner, Fraction(-1))
    left = poly_from_term(term.left)
    right = poly_from_term(term.right)
    if left is None or right is None:
        return None
    if term.op == "+":
        return poly_add(left, right)
    if term.op == "-":
        return poly_sub(left, right)
    if term.op == "*":
        return poly_mul(left, right)
    # division: only by a non-zero constant stays polynomial
    if set(right) <= {CONST}:
        divisor = right.get(CONST, Fraction(0))
        if divisor == 0:
            return None
        return poly_scale(left, 1 / divisor)
    return None


def poly_degree(p: Poly) -> int:
    degree = 0
    for m in p:
        degree = max(degree, sum(exp for _, exp in m))
    return degree


def poly_is_linear(p: Poly) -> bool:
    return poly_degree(p) <= 1


def poly_variables(p: Poly) -> set[str]:
    return {var for m in p for var, _ in m}


def poly_eval(p: Poly, values: dict[str, Fraction]) -> Fraction:
    total = Fraction(0)
    for m, c in p.items():
        factor = c
        for var, exp in m:
            factor *= values[var] ** exp
        total += factor
    return total


def univariate(p: Poly, var: str, values: dict[str, Fraction]) -> dict[int, Fraction]:
    """Coefficients by power of var after substituting every other
    variable from values."""
    coeffs: dict[int, Fraction] = {}
    for m, c in p.items():
        power = 0
        factor = c
        for v, exp in m:
            if v == var:
                power = exp
            else:
                factor *= values[v] ** exp
        coeffs[power] = coeffs.get(power, Fraction(0)) + factor
    return {k: v for k, v in coeffs.items() if v}
