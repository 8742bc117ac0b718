"""Core document models: derivation trees and GSN documents.

Values here are immutable snapshots; all mutation goes through helper
functions that return new Project instances.  The HTTP service serializes
writers, so snapshots can be evaluated concurrently without locking.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Mapping

from .lang.ast import CType


class NodeKind(str, Enum):
    GOAL = "Goal"
    SOLUTION = "Solution"


class Relation(str, Enum):
    AND = "And"
    OR = "Or"


class Status(str, Enum):
    SOUND = "Sound"
    UNSOUND = "Unsound"
    UNKNOWN = "Unknown"
    NOT_EVALUATED = "NotEvaluated"
    ILL_FORMED = "IllFormed"


class AnnotationRole(str, Enum):
    CONTEXT = "Context"
    ASSUMPTION = "Assumption"
    JUSTIFICATION = "Justification"
    STRATEGY = "Strategy"


@dataclass(frozen=True)
class Annotation:
    """Auxiliary text absorbed from GSN.

    Strategy annotations remember which slice of the children list arrived
    through the strategy (child_offset/child_len) so the conversion back to
    GSN loses nothing; context-like annotations that were attached to a
    strategy rather than to the goal itself carry on_strategy=True.
    """

    role: AnnotationRole
    text: str
    on_strategy: bool = False
    child_offset: int | None = None
    child_len: int | None = None


@dataclass(frozen=True)
class TdtNode:
    id: str
    kind: NodeKind
    description: str = ""
    annotations: tuple[Annotation, ...] = ()
    ctype: CType | None = None
    expr: str | None = None
    relation: Relation = Relation.AND
    children: tuple[str, ...] = ()
    layout: tuple[float, float] | None = None
    status: Status = Status.NOT_EVALUATED
    extra: Mapping = field(default_factory=dict)


@dataclass(frozen=True)
class Project:
    root: str
    nodes: Mapping[str, TdtNode]
    version: int = 1
    variable_map: Mapping[str, str] = field(default_factory=dict)
    metadata: Mapping = field(default_factory=dict)
    extra: Mapping = field(default_factory=dict)

    def node(self, node_id: str) -> TdtNode:
        return self.nodes[node_id]

    def parent_of(self, node_id: str) -> str | None:
        for node in self.nodes.values():
            if node_id in node.children:
                return node.id
        return None

    def with_node(self, node: TdtNode) -> "Project":
        nodes = dict(self.nodes)
        nodes[node.id] = node
        return replace(self, nodes=nodes)

    def without_subtree(self, node_id: str) -> "Project":
        doomed = set(iter_subtree(self, node_id))
        nodes = {}
        for node in self.nodes.values():
            if node.id in doomed:
                continue
            if any(c in doomed for c in node.children):
                node = replace(node, children=tuple(c for c in node.children
                                                    if c not in doomed))
            nodes[node.id] = node
        return replace(self, nodes=nodes)

    def fresh_id(self) -> str:
        numeric = [int(i) for i in self.nodes if i.isdigit()]
        return str(max(numeric, default=0) + 1)


def iter_subtree(project: Project, node_id: str) -> Iterable[str]:
    stack = [node_id]
    while stack:
        current = stack.pop()
        yield current
        node = project.nodes.get(current)
        if node is not None:
            stack.extend(reversed(node.children))


# --------------------------------------------------------------------------
# GSN

class GsnKind(str, Enum):
    GOAL = "Goal"
    STRATEGY = "Strategy"
    SOLUTION = "Solution"
    CONTEXT = "Context"
    ASSUMPTION = "Assumption"
    JUSTIFICATION = "Justification"


SPINE_KINDS = (GsnKind.GOAL, GsnKind.STRATEGY, GsnKind.SOLUTION)
AUX_KINDS = (GsnKind.CONTEXT, GsnKind.ASSUMPTION, GsnKind.JUSTIFICATION)

SUPPORTED_BY = "supported-by"
IN_CONTEXT_OF = "in-context-of"


@dataclass(frozen=True)
class GsnElement:
    id: str
    kind: GsnKind
    text: str


@dataclass(frozen=True)
class GsnEdge:
    source: str  # the supported / annotated element
    target: str  # the supporting child or the context-like element
    kind: str = SUPPORTED_BY


@dataclass(frozen=True)
class GsnDocument:
    elements: tuple[GsnElement, ...]
    edges: tuple[GsnEdge, ...]

    def element(self, element_id: str) -> GsnElement:
        for el in self.elements:
            if el.id == element_id:
                return el
        raise KeyError(element_id)


# --------------------------------------------------------------------------
# validation

class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    node_id: str | None = None
    severity: Severity = Severity.ERROR

    def __str__(self):
        where = f" [{self.node_id}]" if self.node_id else ""
        return f"{self.code}{where}: {self.message}"


_IDENT_OK = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def validate(project: Project) -> list[Violation]:
    """All invariant violations, empty when the project is valid.  Warnings
    (severity=warning) flag oddities that do not invalidate the project."""
    out: list[Violation] = []
    if project.version != 1:
        out.append(Violation("SchemaVersion", f"unsupported version {project.version}"))
    if project.root not in project.nodes:
        out.append(Violation("MissingRoot", f"root {project.root!r} not among nodes"))

    parents: dict[str, list[str]] = {}
    for node in project.nodes.values():
        if node.kind == NodeKind.SOLUTION and node.children:
            out.append(Violation("SolutionWithChildren",
                                 "solution nodes cannot have children", node.id))
        if (node.ctype is None) != (node.expr is None):
            out.append(Violation("CtypeExprMismatch",
                                 "ctype must be set exactly when expr is present", node.id))
        for child in node.children:
            if child not in project.nodes:
                out.append(Violation("DanglingChild",
                                     f"child {child!r} does not exist", node.id))
            else:
                parents.setdefault(child, []).append(node.id)

    for child, ps in parents.items():
        if len(ps) > 1:
            out.append(Violation("NotATree",
                                 f"node has parents {sorted(ps)}", child))
    if project.root in parents:
        out.append(Violation("NotATree", "root has a parent", project.root))

    # reachability and cycles from the root
    if project.root in project.nodes:
        seen: set[str] = set()
        stack = [project.root]
        on_path: set[str] = set()

        def walk(node_id: str) -> bool:
            if node_id in on_path:
                out.append(Violation("Cycle", "cycle through node", node_id))
                return False
            if node_id in seen:
                return True
            seen.add(node_id)
            on_path.add(node_id)
            for child in project.nodes[node_id].children:
                if child in project.nodes and not walk(child):
                    return False
            on_path.discard(node_id)
            return True

        walk(project.root)
        unreachable = set(project.nodes) - seen
        for node_id in sorted(unreachable):
            out.append(Violation("Unreachable", "node not reachable from root", node_id))

    for raw, canonical in project.variable_map.items():
        if not _IDENT_OK.match(canonical):
            out.append(Violation("BadVariableName",
                                 f"{raw!r} maps to invalid identifier {canonical!r}"))

    for note in project.metadata.get("strategy_context_notes", []):
        out.append(Violation("ContextOnStrategy", str(note), severity=Severity.WARNING))

    return out


def validation_errors(project: Project) -> list[Violation]:
    return [v for v in validate(project) if v.severity == Severity.ERROR]
