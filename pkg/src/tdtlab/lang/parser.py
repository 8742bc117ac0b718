"""Recursive-descent parsers for the three constraint dialects.

Dialect dispatch is syntactic:

* a ``:-``, ``?-`` or ``\\+`` token, or '.'-terminated statements without
  comparisons, select the logic dialect;
* any set keyword (``Set``, ``Elem``, ``inter``, ``union``, ``diff``,
  ``empty``, ``in``, ``notin``, ``subset``) selects the set dialect, which
  is concrete as soon as a literal ``{...}`` binding occurs;
* everything else is a ';'-separated conjunction of comparisons.

Combining set vocabulary with arithmetic operators in one expression is
rejected as MixedDialect.  ``==`` is folded into ``=`` while parsing, and
numeric literals become exact rationals.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import MixedDialect, ParseError
from . import ast
from .lexer import ARITH_OPERATORS, LOGIC_MARKERS, SET_KEYWORDS, Token, tokenize


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "end":
            self.pos += 1
        return tok

    def accept(self, value: str) -> bool:
        if self.current.kind == "symbol" and self.current.value == value:
            self.advance()
            return True
        return False

    def accept_word(self, word: str) -> bool:
        if self.current.kind == "ident" and self.current.value == word:
            self.advance()
            return True
        return False

    def expect(self, value: str) -> Token:
        tok = self.current
        if tok.kind == "symbol" and tok.value == value:
            return self.advance()
        raise ParseError(f"unexpected {tok.value!r}", tok.line, tok.col, expected=repr(value))

    def expect_ident(self, what: str = "identifier") -> Token:
        tok = self.current
        if tok.kind == "ident":
            return self.advance()
        raise ParseError(f"unexpected {tok.value!r}", tok.line, tok.col, expected=what)

    def at_end(self) -> bool:
        return self.current.kind == "end"

    def fail(self, expected: str):
        tok = self.current
        raise ParseError(f"unexpected {tok.value or 'end of input'!r}",
                         tok.line, tok.col, expected=expected)


# --------------------------------------------------------------------------
# arithmetic expressions

def _parse_sum(c: _Cursor) -> ast.Term:
    left = _parse_product(c)
    while c.current.kind == "symbol" and c.current.value in ("+", "-"):
        op = c.advance().value
        right = _parse_product(c)
        left = ast.BinOp(op, left, right)
    return left


def _parse_product(c: _Cursor) -> ast.Term:
    left = _parse_unary(c)
    while c.current.kind == "symbol" and c.current.value in ("*", "/"):
        op = c.advance().value
        tok = c.current
        right = _parse_unary(c)
        if op == "/" and isinstance(right, ast.Num) and right.value == 0:
            raise ParseError("division by literal zero", tok.line, tok.col)
        if isinstance(left, ast.Num) and isinstance(right, ast.Num):
            # constants fold so decimals stay exact rationals
            value = left.value * right.value if op == "*" else left.value / right.value
            left = ast.Num(value)
        else:
            left = ast.BinOp(op, left, right)
    return left


def _parse_unary(c: _Cursor) -> ast.Term:
    if c.accept("-"):
        inner = _parse_unary(c)
        if isinstance(inner, ast.Num):
            return ast.Num(-inner.value)
        return ast.Neg(inner)
    tok = c.current
    if tok.kind == "number":
        c.advance()
        return ast.Num(Fraction(tok.value))
    if tok.kind == "ident":
        c.advance()
        return ast.Var(tok.value)
    if c.accept("("):
        inner = _parse_sum(c)
        c.expect(")")
        return inner
    c.fail("a term")


def _parse_comparison(c: _Cursor) -> ast.Comparison:
    left = _parse_sum(c)
    tok = c.current
    if tok.kind != "symbol" or tok.value not in ("=", "==", "<", "<=", ">", ">="):
        c.fail("a comparison operator")
    c.advance()
    op = "=" if tok.value == "==" else tok.value
    right = _parse_sum(c)
    return ast.Comparison(op, left, right)


def parse_arith_conj(src: str) -> ast.ArithConj:
    c = _Cursor(tokenize(src))
    items = [_parse_comparison(c)]
    while c.accept(";"):
        if c.at_end():
            break  # trailing separator tolerated
        items.append(_parse_comparison(c))
    if not c.at_end():
        c.fail("';' or end of expression")
    return ast.ArithConj(tuple(items))


# --------------------------------------------------------------------------
# logic programs

def _parse_logic_term(c: _Cursor) -> ast.LTerm:
    tok = c.current
    if tok.kind == "number":
        c.advance()
        return ast.LConst(Fraction(tok.value))
    word = c.expect_ident("a term")
    if word.value[0].isupper() or word.value[0] == "_":
        return ast.LVar(word.value)
    return ast.LConst(word.value)


def _parse_logic_atom(c: _Cursor) -> ast.LAtom:
    name = c.expect_ident("an atom")
    args: list[ast.LTerm] = []
    if c.accept("("):
        args.append(_parse_logic_term(c))
        while c.accept(","):
            args.append(_parse_logic_term(c))
        c.expect(")")
    return ast.LAtom(name.value, tuple(args))


def _parse_literal(c: _Cursor) -> ast.Literal:
    if c.accept("\\+"):
        if c.accept("("):
            goals = [_parse_literal(c)]
            while c.accept(","):
                goals.append(_parse_literal(c))
            c.expect(")")
            return ast.Naf(tuple(goals))
        return ast.Naf((_parse_logic_atom(c),))
    return _parse_logic_atom(c)


def parse_logic_program(src: str) -> ast.LogicProgram:
    c = _Cursor(tokenize(src))
    clauses: list[ast.Clause] = []
    query: list[ast.Literal] | None = None
    while not c.at_end():
        if c.accept("?-"):
            lits = [_parse_literal(c)]
            while c.accept(","):
                lits.append(_parse_literal(c))
            c.expect(".")
            if query is not None:
                raise ParseError("more than one query in a logic block",
                                 c.current.line, c.current.col)
            query = lits
            continue
        first = _parse_literal(c)
        if isinstance(first, ast.LAtom) and c.accept(":-"):
            tok = c.current
            if tok.kind == "symbol" and tok.value == ".":
                raise ParseError("empty clause body", tok.line, tok.col)
            body = [_parse_literal(c)]
            while c.accept(","):
                body.append(_parse_literal(c))
            c.expect(".")
            clauses.append(ast.Clause(first, tuple(body)))
            continue
        if c.current.kind == "symbol" and c.current.value == ",":
            lits = [first]
            while c.accept(","):
                lits.append(_parse_literal(c))
            c.expect(".")
            if query is not None:
                raise ParseError("more than one query in a logic block",
                                 c.current.line, c.current.col)
            query = lits
            continue
        c.expect(".")
        if isinstance(first, ast.Naf):
            if query is not None:
                raise ParseError("more than one query in a logic block",
                                 c.current.line, c.current.col)
            query = [first]
        else:
            clauses.append(ast.Clause(first))
    if not clauses and query is None:
        raise ParseError("empty logic program", 1, 1)
    return ast.LogicProgram(tuple(clauses), tuple(query) if query is not None else None)


# --------------------------------------------------------------------------
# set formulas

def _parse_set_term(c: _Cursor) -> ast.SetExpr:
    if c.accept_word("empty"):
        return ast.EmptySet()
    if c.accept("("):
        inner = _parse_set_expr(c)
        c.expect(")")
        return inner
    if c.current.kind == "symbol" and c.current.value == "{":
        return ast.SetLiteral(_parse_element_list(c))
    word = c.expect_ident("a set name")
    return ast.SetName(word.value)


def _parse_set_expr(c: _Cursor) -> ast.SetExpr:
    left = _parse_set_term(c)
    while c.current.kind == "ident" and c.current.value in ("union", "inter", "diff"):
        op = c.advance().value
        right = _parse_set_term(c)
        left = ast.SetOp(op, left, right)
    return left


def _parse_element_list(c: _Cursor) -> tuple[int, ...]:
    c.expect("{")
    elements: list[int] = []
    if not (c.current.kind == "symbol" and c.current.value == "}"):
        while True:
            tok = c.current
            if tok.kind != "number" or "." in tok.value:
                c.fail("a natural number")
            c.advance()
            elements.append(int(tok.value))
            if not c.accept(","):
                break
    c.expect("}")
    return tuple(elements)


def _parse_set_statement(c: _Cursor, out: "_SetBuilder"):
    if c.accept_word("Set"):
        out.sets.append(c.expect_ident("a set name").value)
        while c.accept(","):
            out.sets.append(c.expect_ident("a set name").value)
        c.expect(";")
        return
    if c.accept_word("Elem"):
        out.elems.append(c.expect_ident("an element name").value)
        while c.accept(","):
            out.elems.append(c.expect_ident("an element name").value)
        c.expect(";")
        return
    # binding, membership or relational atom
    start = c.pos
    if c.current.kind == "ident":
        name = c.advance().value
        if c.accept("="):
            if c.current.kind == "symbol" and c.current.value == "{":
                out.bindings.append((name, _parse_element_list(c)))
                c.expect(";")
                return
            c.pos = start  # plain equality atom; reparse below
        elif c.current.kind == "ident" and c.current.value in ("in", "notin"):
            op = c.advance().value
            right = _parse_set_expr(c)
            out.atoms.append(ast.SetAtom(op, name, None, right))
            c.expect(";")
            return
        else:
            c.pos = start
    left = _parse_set_expr(c)
    if c.accept("="):
        right = _parse_set_expr(c)
        out.atoms.append(ast.SetAtom("eq", None, left, right))
    elif c.accept_word("subset"):
        right = _parse_set_expr(c)
        out.atoms.append(ast.SetAtom("subset", None, left, right))
    else:
        c.fail("'=', 'subset', 'in' or 'notin'")
    c.expect(";")


class _SetBuilder:
    def __init__(self):
        self.sets: list[str] = []
        self.elems: list[str] = []
        self.bindings: list[tuple[str, tuple[int, ...]]] = []
        self.atoms: list[ast.SetAtom] = []


def parse_set_program(src: str) -> ast.SetFormula | ast.ConcreteSetProgram:
    c = _Cursor(tokenize(src))
    out = _SetBuilder()
    while not c.at_end():
        _parse_set_statement(c, out)
    body: ast.SetFormulaNode | None
    if len(out.atoms) == 1:
        body = out.atoms[0]
    elif out.atoms:
        body = ast.SetConj(tuple(out.atoms))
    else:
        body = None
    if out.bindings or any(_has_literal(a) for a in out.atoms):
        return ast.ConcreteSetProgram(tuple(out.sets), tuple(out.elems),
                                      tuple(out.bindings), body)
    if body is None:
        raise ParseError("set formula has no atoms", 1, 1)
    return ast.SetFormula(tuple(out.sets), tuple(out.elems), body)


def _has_literal(node) -> bool:
    if isinstance(node, ast.SetLiteral):
        return True
    if isinstance(node, ast.SetOp):
        return _has_literal(node.left) or _has_literal(node.right)
    if isinstance(node, ast.SetAtom):
        sides = [node.left, node.right]
        return any(s is not None and _has_literal(s) for s in sides)
    return False


# --------------------------------------------------------------------------
# dispatch

def parse_constraint(src: str) -> ast.ConstraintAst:
    if not src or not src.strip():
        raise ParseError("empty expression", 1, 1)
    tokens = tokenize(src)
    values = {t.value for t in tokens if t.kind in ("symbol", "ident")}
    has_set_words = any(t.kind == "ident" and t.value in SET_KEYWORDS
                        for t in tokens) or "{" in values
    has_arith_ops = bool(values & ARITH_OPERATORS)
    if values & LOGIC_MARKERS:
        return parse_logic_program(src)
    if has_set_words:
        if has_arith_ops:
            bad = next(t for t in tokens if t.value in ARITH_OPERATORS)
            raise MixedDialect("set and arithmetic vocabulary in one expression",
                               bad.line, bad.col)
        return parse_set_program(src)
    if "." in values and not _has_comparison(tokens):
        return parse_logic_program(src)
    return parse_arith_conj(src)


def _has_comparison(tokens: list[Token]) -> bool:
    return any(t.kind == "symbol" and t.value in ("=", "==", "<", "<=", ">", ">=")
               for t in tokens)
