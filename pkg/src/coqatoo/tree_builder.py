"""Proof tree reconstruction from the linear (tactic, state) trace.

Simulates the prover's goal stack: a branching tactic opens k child
nodes, a closing tactic pops back to the nearest ancestor that still has
unfilled children.  Bullet depth falls out of the nesting.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .diagnostics import CoqatooError, error
from .diff_engine import Classification, StateDiff
from .goal_parser import ProofState
from .script_parser import ScriptItem


@dataclass(frozen=True)
class AnalyzedStep:
    item: ScriptItem
    before: ProofState
    after: ProofState
    diff: StateDiff


@dataclass
class ProofNode:
    depth: int
    case_goal: Optional[str] = None
    steps: List[Tuple[ScriptItem, StateDiff]] = field(default_factory=list)
    children: List["ProofNode"] = field(default_factory=list)


def build_tree(steps: Sequence[AnalyzedStep]) -> ProofNode:
    """Rebuild the proof tree; raises INCOMPLETE_PROOF / MALFORMED_TRACE."""
    root = ProofNode(depth=0)
    current: Optional[ProofNode] = root
    # (node whose children are being filled, children still unfilled)
    stack: List[List] = []

    for step in steps:
        if current is None:
            raise CoqatooError(error("MALFORMED_TRACE", "tactic after the proof was already complete",
                                     step.item.span))
        current.steps.append((step.item, step.diff))
        cls = step.diff.classification
        if cls is Classification.BRANCH:
            width = step.diff.branch_width or 2
            stack.append([current, width])
            child = ProofNode(depth=current.depth + 1, case_goal=step.after.goals[0])
            current.children.append(child)
            current = child
        elif cls is Classification.CLOSE:
            current = None
            while stack:
                parent, left = stack[-1]
                stack[-1][1] = left - 1
                if left - 1 > 0:
                    child = ProofNode(depth=parent.depth + 1, case_goal=step.after.goals[0])
                    parent.children.append(child)
                    current = child
                    break
                stack.pop()

    if steps and steps[-1].after.subgoal_count != 0:
        raise CoqatooError(error("INCOMPLETE_PROOF",
                                 f"proof ends with {steps[-1].after.subgoal_count} open subgoal(s)"))
    if stack or current is not None and current is not root:
        raise CoqatooError(error("INCOMPLETE_PROOF", "proof tree has unfinished branches"))
    if not steps:
        raise CoqatooError(error("INCOMPLETE_PROOF", "no tactics were executed"))
    return root


def flatten(node: ProofNode) -> List[ScriptItem]:
    """Depth-first tactic order; must reproduce the input sequence."""
    out = [item for item, _ in node.steps]
    for child in node.children:
        out.extend(flatten(child))
    return out


def leaves(node: ProofNode) -> List[ProofNode]:
    if not node.children:
        return [node]
    out = []
    for child in node.children:
        out.extend(leaves(child))
    return out


def case_labels(node: ProofNode) -> List[str]:
    assert node.children, "case_labels is only defined on branching nodes"
    return [child.case_goal or "" for child in node.children]


def to_dot(root: ProofNode) -> str:
    """Render the tree as a DOT digraph for debugging."""
    lines = ["digraph proof {", "  node [shape=box];"]
    counter = [0]

    def visit(node: ProofNode) -> int:
        nid = counter[0]
        counter[0] += 1
        first = node.steps[0][0].command if node.steps else "(empty)"
        label = first if node.case_goal is None else f"{first}\\ncase: {node.case_goal}"
        label = label.replace('"', '\\"')
        lines.append(f'  n{nid} [label="{label}"];')
        for child in node.children:
            cid = visit(child)
            lines.append(f"  n{nid} -> n{cid};")
        return nid

    visit(root)
    lines.append("}")
    return "\n".join(lines)
