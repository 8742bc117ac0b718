"""Goal decomposition: prompt -> labeled-line response -> new tree nodes.

One provider call decomposes one goal one level.  decompose() walks the
frontier breadth-first for the requested number of layers; every created
node starts NotEvaluated, the strategy text lands as an annotation on the
decomposed goal, and solutions attach under the sub-goal their label
names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from ..errors import UnparseableResponse
from ..model import Annotation, AnnotationRole, NodeKind, Project, Relation, Status, TdtNode
from .provider import Provider
from .templates import (CAE_BLOCKS, DEFAULT_DECOMPOSE_TEMPLATE, PromptTemplate,
                        build_decomposition_prompt)

_LABEL = re.compile(
    r"^(Goal|Strategy|Sub-goal\s+(\d+)|Explanation|Solution\s+(\d+)|Building blocks)\s*:\s*(.*)$")


@dataclass(frozen=True)
class DecompositionResult:
    strategy: str
    subgoals: tuple[tuple[str, str], ...]          # (text, explanation)
    solutions: tuple[tuple[int, str], ...]         # (subgoal index, text)
    building_blocks: tuple[str, ...]


def parse_decomposition(response: str) -> DecompositionResult:
    strategy = ""
    subgoals: list[list[str]] = []            # [text, explanation]
    index_of: dict[int, int] = {}             # printed number -> position
    solutions: list[tuple[int, str]] = []
    blocks: list[str] = []
    last: list[str] | None = None             # field to absorb continuation lines

    for raw_line in response.splitlines():
        line = raw_line.strip()
        if not line:
            continue
        m = _LABEL.match(line)
        if m is None:
            if last is None:
                raise UnparseableResponse("line outside any labeled field", raw_line)
            last[-1] = (last[-1] + " " + line).strip()
            continue
        label, sub_n, sol_n, text = m.group(1), m.group(2), m.group(3), m.group(4)
        if label == "Goal":
            last = [text]
        elif label == "Strategy":
            strategy = text
            holder = [text]
            last = holder
            strategy_holder = holder
        elif label.startswith("Sub-goal"):
            index_of[int(sub_n)] = len(subgoals)
            subgoals.append([text, ""])
            last = subgoals[-1][:1]
            last = subgoals[-1]
        elif label == "Explanation":
            if not subgoals:
                raise UnparseableResponse("explanation before any sub-goal", raw_line)
            subgoals[-1][1] = text
            last = subgoals[-1]
        elif label.startswith("Solution"):
            printed = int(sol_n)
            if printed not in index_of:
                raise UnparseableResponse(
                    f"solution references unknown sub-goal {printed}", raw_line)
            solutions.append((index_of[printed], text))
            holder = [text]
            last = holder
        else:  # Building blocks
            blocks = [b.strip() for b in text.split(",") if b.strip()]
            last = None

    if not subgoals:
        raise UnparseableResponse("response contains no Sub-goal lines")
    unknown = [b for b in blocks if b not in CAE_BLOCKS]
    if unknown:
        raise UnparseableResponse(f"unknown building block(s) {unknown}")
    if not blocks:
        raise UnparseableResponse("response contains no Building blocks line")
    return DecompositionResult(
        strategy=strategy,
        subgoals=tuple((text, expl) for text, expl in subgoals),
        solutions=tuple(solutions),
        building_blocks=tuple(blocks),
    )


@dataclass(frozen=True)
class CreatedNode:
    node: TdtNode
    parent_id: str


@dataclass(frozen=True)
class DecomposeOutcome:
    project: Project
    created: tuple[CreatedNode, ...]
    strategies: tuple[tuple[str, str], ...]  # (node id, strategy text)


def decompose(project: Project, node_id: str, layers: int, provider: Provider,
              tpl: PromptTemplate = DEFAULT_DECOMPOSE_TEMPLATE,
              temperature: float | None = None) -> DecomposeOutcome:
    if node_id not in project.nodes:
        raise KeyError(node_id)
    created: list[CreatedNode] = []
    strategies: list[tuple[str, str]] = []
    current = project
    frontier = [node_id]
    for depth in range(layers):
        next_frontier: list[str] = []
        remaining = layers - depth
        for target_id in frontier:
            target = current.nodes[target_id]
            prompt = build_decomposition_prompt(target.description, remaining, tpl)
            response = provider.complete(prompt, temperature=temperature)
            result = parse_decomposition(response)

            subgoal_ids: list[str] = []
            for text, _expl in result.subgoals:
                new_id = current.fresh_id()
                node = TdtNode(id=new_id, kind=NodeKind.GOAL, description=text,
                               relation=Relation.AND, status=Status.NOT_EVALUATED)
                current = current.with_node(node)
                subgoal_ids.append(new_id)
                created.append(CreatedNode(node, target_id))
            for subgoal_index, text in result.solutions:
                new_id = current.fresh_id()
                node = TdtNode(id=new_id, kind=NodeKind.SOLUTION, description=text,
                               status=Status.NOT_EVALUATED)
                current = current.with_node(node)
                owner = subgoal_ids[subgoal_index]
                owner_node = current.nodes[owner]
                current = current.with_node(
                    replace(owner_node, children=owner_node.children + (new_id,)))
                created.append(CreatedNode(node, owner))

            annotations = target.annotations
            if result.strategy:
                annotations = annotations + (
                    Annotation(AnnotationRole.STRATEGY, result.strategy,
                               child_offset=len(target.children),
                               child_len=len(subgoal_ids)),)
                strategies.append((target_id, result.strategy))
            current = current.with_node(replace(
                current.nodes[target_id],
                annotations=annotations,
                children=target.children + tuple(subgoal_ids)))
            next_frontier.extend(subgoal_ids)
        frontier = next_frontier
        if not frontier:
            break
    return DecomposeOutcome(current, tuple(created), tuple(strategies))
