"""Lossless conversion between GSN documents and derivation trees.

Going to tree form, strategies leave the spine and become Strategy
annotations on their parent goal; contexts, assumptions and justifications
become annotations on the element they decorate.  Each Strategy annotation
records which contiguous slice of the parent's children arrived through it,
and context-like annotations that hung off a strategy are marked
on_strategy, so the reverse conversion reproduces the original document up
to element ids.
"""

from __future__ import annotations

from dataclasses import replace

from .errors import ConversionError, CyclicSupport, MultipleRoots
from .model import (AUX_KINDS, IN_CONTEXT_OF, SPINE_KINDS, SUPPORTED_BY, Annotation,
                    AnnotationRole, GsnDocument, GsnEdge, GsnElement, GsnKind, NodeKind,
                    Project, Relation, TdtNode)

_ROLE_BY_KIND = {
    GsnKind.CONTEXT: AnnotationRole.CONTEXT,
    GsnKind.ASSUMPTION: AnnotationRole.ASSUMPTION,
    GsnKind.JUSTIFICATION: AnnotationRole.JUSTIFICATION,
}
_KIND_BY_ROLE = {v: k for k, v in _ROLE_BY_KIND.items()}


def gsn_to_tdt(doc: GsnDocument) -> Project:
    by_id = {el.id: el for el in doc.elements}
    if len(by_id) != len(doc.elements):
        raise ConversionError("duplicate element ids")
    for edge in doc.edges:
        if edge.source not in by_id or edge.target not in by_id:
            raise ConversionError(f"edge references unknown element {edge}")

    supports: dict[str, list[str]] = {el.id: [] for el in doc.elements}
    contexts: dict[str, list[str]] = {el.id: [] for el in doc.elements}
    supported: set[str] = set()
    for edge in doc.edges:
        if edge.kind == SUPPORTED_BY:
            supports[edge.source].append(edge.target)
            supported.add(edge.target)
        elif edge.kind == IN_CONTEXT_OF:
            target = by_id[edge.target]
            if target.kind not in AUX_KINDS:
                raise ConversionError(
                    f"in-context-of target {target.id} is a {target.kind.value}")
            contexts[edge.source].append(edge.target)
        else:
            raise ConversionError(f"unknown edge kind {edge.kind!r}")

    spine = [el for el in doc.elements if el.kind in SPINE_KINDS]
    roots = [el for el in spine if el.id not in supported]
    if len(roots) != 1:
        raise MultipleRoots(f"expected one spine root, found {[r.id for r in roots]}")
    root = roots[0]
    if root.kind != GsnKind.GOAL:
        raise ConversionError(f"root element {root.id} is a {root.kind.value}")

    strategy_parents: dict[str, int] = {}
    for el_id, targets in supports.items():
        for t in targets:
            if by_id[t].kind == GsnKind.STRATEGY:
                strategy_parents[t] = strategy_parents.get(t, 0) + 1
                if by_id[el_id].kind != GsnKind.GOAL:
                    raise ConversionError(
                        f"strategy {t} supported under non-goal {el_id}")
    for strat, count in strategy_parents.items():
        if count > 1:
            raise ConversionError(f"strategy {strat} has several parent goals")

    nodes: dict[str, TdtNode] = {}
    notes: list[str] = []
    visiting: set[str] = set()

    def build(el: GsnElement) -> str:
        if el.id in visiting:
            raise CyclicSupport(f"supported-by cycle through {el.id}")
        if el.id in nodes:
            raise ConversionError(f"element {el.id} supports several parents")
        visiting.add(el.id)
        annotations: list[Annotation] = []
        children: list[str] = []
        for ctx_id in contexts[el.id]:
            ctx = by_id[ctx_id]
            annotations.append(Annotation(_ROLE_BY_KIND[ctx.kind], ctx.text))
        for child_id in supports[el.id]:
            child = by_id[child_id]
            if child.kind == GsnKind.STRATEGY:
                offset = len(children)
                for grand_id in supports[child_id]:
                    grand = by_id[grand_id]
                    if grand.kind == GsnKind.STRATEGY:
                        raise ConversionError(
                            f"strategy {grand_id} directly under strategy {child_id}")
                    children.append(build(grand))
                annotations.append(Annotation(AnnotationRole.STRATEGY, child.text,
                                              child_offset=offset,
                                              child_len=len(children) - offset))
                for ctx_id in contexts[child_id]:
                    ctx = by_id[ctx_id]
                    annotations.append(Annotation(_ROLE_BY_KIND[ctx.kind], ctx.text,
                                                  on_strategy=True))
                    notes.append(f"context-like element {ctx_id} was attached to "
                                 f"strategy {child_id}; carried on goal {el.id}")
            else:
                children.append(build(child))
        if el.kind == GsnKind.SOLUTION and children:
            raise ConversionError(f"solution {el.id} has supporting children")
        kind = NodeKind.SOLUTION if el.kind == GsnKind.SOLUTION else NodeKind.GOAL
        nodes[el.id] = TdtNode(id=el.id, kind=kind, description=el.text,
                               annotations=tuple(annotations),
                               relation=Relation.AND, children=tuple(children))
        visiting.discard(el.id)
        return el.id

    build(root)

    orphans = [el.id for el in spine if el.id not in nodes
               and by_id[el.id].kind != GsnKind.STRATEGY]
    for el in spine:
        if el.kind == GsnKind.STRATEGY and el.id not in strategy_parents:
            raise ConversionError(f"strategy {el.id} is not connected to any goal")
    if orphans:
        raise ConversionError(f"spine elements unreachable from root: {orphans}")

    metadata = {"strategy_context_notes": notes} if notes else {}
    return Project(root=root.id, nodes=nodes, metadata=metadata)


def tdt_to_gsn(project: Project) -> GsnDocument:
    elements: list[GsnElement] = []
    edges: list[GsnEdge] = []
    counter = {"n": 0}

    def fresh(prefix: str) -> str:
        counter["n"] += 1
        return f"{prefix}{counter['n']}"

    def emit(node_id: str):
        node = project.nodes[node_id]
        kind = GsnKind.SOLUTION if node.kind == NodeKind.SOLUTION else GsnKind.GOAL
        elements.append(GsnElement(node.id, kind, node.description))

        strategy_slices: list[tuple[int, int, str]] = []  # offset, length, strategy id
        last_strategy: str | None = None
        for ann in node.annotations:
            if ann.role == AnnotationRole.STRATEGY:
                strat_id = fresh("S")
                last_strategy = strat_id
                elements.append(GsnElement(strat_id, GsnKind.STRATEGY, ann.text))
                edges.append(GsnEdge(node.id, strat_id, SUPPORTED_BY))
                offset = ann.child_offset if ann.child_offset is not None else 0
                length = ann.child_len if ann.child_len is not None else len(node.children) - offset
                strategy_slices.append((offset, length, strat_id))
            else:
                aux_id = fresh("A")
                elements.append(GsnElement(aux_id, _KIND_BY_ROLE[ann.role], ann.text))
                owner = last_strategy if ann.on_strategy and last_strategy else node.id
                edges.append(GsnEdge(owner, aux_id, IN_CONTEXT_OF))

        routed: dict[int, str] = {}
        for offset, length, strat_id in strategy_slices:
            for idx in range(offset, offset + length):
                routed[idx] = strat_id
        for idx, child_id in enumerate(node.children):
            parent = routed.get(idx, node.id)
            edges.append(GsnEdge(parent, child_id, SUPPORTED_BY))
            emit(child_id)

    emit(project.root)
    return GsnDocument(tuple(elements), tuple(edges))


def canonical_gsn(doc: GsnDocument):
    """Id-independent structural form used for isomorphism checks: each
    element becomes (kind, text, sorted context forms, child forms)."""
    contexts: dict[str, list[str]] = {}
    supports: dict[str, list[str]] = {}
    supported = set()
    by_id = {el.id: el for el in doc.elements}
    for edge in doc.edges:
        if edge.kind == IN_CONTEXT_OF:
            contexts.setdefault(edge.source, []).append(edge.target)
        else:
            supports.setdefault(edge.source, []).append(edge.target)
            supported.add(edge.target)

    def shape(el_id: str):
        el = by_id[el_id]
        ctx = sorted((by_id[c].kind.value, by_id[c].text) for c in contexts.get(el_id, []))
        kids = tuple(shape(k) for k in supports.get(el_id, []))
        return (el.kind.value, el.text, tuple(ctx), kids)

    roots = [el.id for el in doc.elements
             if el.kind in SPINE_KINDS and el.id not in supported]
    return tuple(sorted(shape(r) for r in roots))


def gsn_text_multiset(doc: GsnDocument) -> dict[str, int]:
    out: dict[str, int] = {}
    for el in doc.elements:
        out[el.text] = out.get(el.text, 0) + 1
    return out


def tdt_text_multiset(project: Project) -> dict[str, int]:
    out: dict[str, int] = {}
    for node in project.nodes.values():
        out[node.description] = out.get(node.description, 0) + 1
        for ann in node.annotations:
            out[ann.text] = out.get(ann.text, 0) + 1
    return out
