"""Rule texts: Horn-clause skeletons for whole trees.

A rule ``C :- C1, C2.`` describes a two-level subtree; a set of rules with
a unique unreferenced head describes a multi-level tree.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NoUniqueRoot, ParseError, RecursiveRules
from .lexer import tokenize
from .parser import _Cursor


@dataclass(frozen=True)
class Rule:
    head: str
    body: tuple[str, ...]


@dataclass(frozen=True)
class RuleText:
    rules: tuple[Rule, ...]


def parse_rule_text(src: str) -> RuleText:
    c = _Cursor(tokenize(src))
    rules: list[Rule] = []
    while not c.at_end():
        head = c.expect_ident("a rule head")
        c.expect(":-")
        tok = c.current
        if tok.kind == "symbol" and tok.value == ".":
            raise ParseError("empty rule body", tok.line, tok.col)
        body = [c.expect_ident("an atom").value]
        while c.accept(","):
            body.append(c.expect_ident("an atom").value)
        c.expect(".")
        rules.append(Rule(head.value, tuple(body)))
    if not rules:
        raise ParseError("no rules found", 1, 1)
    return RuleText(tuple(rules))


def skeleton_from_rules(rt: RuleText):
    """Build a project whose tree mirrors the rule structure.  Heads become
    internal goals, body atoms without a rule of their own become leaf
    goals; the kinds stay editable afterwards."""
    from ..model import NodeKind, Project, Relation, TdtNode

    by_head: dict[str, Rule] = {}
    for rule in rt.rules:
        if rule.head in by_head:
            raise RecursiveRules(f"rule head {rule.head!r} defined twice")
        by_head[rule.head] = rule

    referenced = {atom for rule in rt.rules for atom in rule.body}
    roots = [h for h in by_head if h not in referenced]
    if len(roots) != 1:
        raise NoUniqueRoot(f"expected exactly one unreferenced head, found {sorted(roots)}")
    root = roots[0]

    # cycle check over the head graph
    state: dict[str, int] = {}

    def visit(name: str):
        if state.get(name) == 1:
            raise RecursiveRules(f"rules are recursive through {name!r}")
        if state.get(name) == 2 or name not in by_head:
            return
        state[name] = 1
        for child in by_head[name].body:
            visit(child)
        state[name] = 2

    for head in by_head:
        visit(head)

    nodes: dict[str, TdtNode] = {}

    def build(name: str) -> str:
        rule = by_head.get(name)
        children = tuple(build(atom) for atom in rule.body) if rule else ()
        nodes[name] = TdtNode(id=name, kind=NodeKind.GOAL, description=name,
                              relation=Relation.AND, children=children)
        return name

    build(root)
    return Project(root=root, nodes=nodes)
