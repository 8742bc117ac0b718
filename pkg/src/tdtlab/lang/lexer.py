"""Tokenizer shared by every surface dialect."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParseError

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:\.\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<symbol>:-|\?-|\\\+|==|<=|>=|[(){},;.=<>+\-*/])
    """,
    re.VERBOSE,
)

SET_KEYWORDS = frozenset({"Set", "Elem", "inter", "union", "diff", "empty",
                          "in", "notin", "subset"})
ARITH_OPERATORS = frozenset({"+", "-", "*", "/"})
LOGIC_MARKERS = frozenset({":-", "?-", "\\+"})


@dataclass(frozen=True)
class Token:
    kind: str  # number | ident | symbol | end
    value: str
    line: int
    col: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.value)


def tokenize(src: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, col)
        text = m.group(0)
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, text, line, col))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        pos = m.end()
    tokens.append(Token("end", "", line, col))
    return tokens
