"""State diffing: what did one tactic change between two proof states."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from .goal_parser import Hypothesis, ProofState, normalize_text

log = logging.getLogger(__name__)

SORT_KEYWORDS = {"Prop", "Set", "Type"}


class Classification(Enum):
    INTRO = "intro"
    BRANCH = "branch"
    CLOSE = "close"
    TRANSFORM = "transform"


@dataclass(frozen=True)
class StateDiff:
    added: Tuple[Hypothesis, ...]
    removed: Tuple[Hypothesis, ...]
    goal_before: str
    goal_after: Optional[str]
    subgoal_delta: int
    classification: Classification
    branch_width: Optional[int] = None

    @property
    def is_empty(self) -> bool:
        return not self.added and not self.removed and self.subgoal_delta == 0


def _binding_set(state: ProofState):
    return {(name, normalize_text(h.type_expr)) for h in state.hypotheses for name in h.names}


def _only_new(hyps: Sequence[Hypothesis], present) -> Tuple[Hypothesis, ...]:
    out = []
    for h in hyps:
        names = tuple(n for n in h.names if (n, normalize_text(h.type_expr)) not in present)
        if names:
            out.append(Hypothesis(names, h.type_expr))
    return tuple(out)


def diff_states(before: ProofState, after: ProofState) -> StateDiff:
    """Diff two consecutive states of the focused goal."""
    assert before.subgoal_count >= 1, "diff requires an open goal before the tactic"
    delta = after.subgoal_count - before.subgoal_count
    added = _only_new(after.hypotheses, _binding_set(before))
    removed = _only_new(before.hypotheses, _binding_set(after))
    goal_before = before.goals[0]
    if delta >= 1:
        classification = Classification.BRANCH
        width = delta + 1
        goal_after = after.goals[0]
    elif delta <= -1:
        # the focused goal was closed; after's focused goal belongs to a sibling
        classification = Classification.CLOSE
        width = None
        goal_after = None
    else:
        classification = Classification.INTRO if added else Classification.TRANSFORM
        width = None
        goal_after = after.goals[0] if after.goals else None
    return StateDiff(added, removed, goal_before, goal_after, delta, classification, width)


def classify_bindings(added: Sequence[Hypothesis],
                      before: ProofState) -> Tuple[List[Hypothesis], List[Hypothesis]]:
    """Partition introduced bindings into (variables, hypotheses).

    A binding is a variable when its type is a sort keyword, or an
    identifier bound in the prior context as a Set/Type variable
    (i.e. the new binding is an element of that type, not a proof).
    Everything else is a proof hypothesis.
    """
    type_vars = {name for h in before.hypotheses
                 if normalize_text(h.type_expr) in {"Set", "Type"}
                 for name in h.names}
    variables: List[Hypothesis] = []
    hypotheses: List[Hypothesis] = []
    for h in added:
        t = normalize_text(h.type_expr)
        if t in SORT_KEYWORDS or t in type_vars:
            variables.append(h)
        else:
            if not t.replace(" ", "").isidentifier() and not _looks_prop_like(t):
                log.warning("HEURISTIC_CLASSIFICATION: treating %r : %r as a hypothesis", h.names, t)
            hypotheses.append(h)
    return variables, hypotheses


def _looks_prop_like(t: str) -> bool:
    return any(op in t for op in ("->", "/\\", "\\/", "<->", "~", "=", "forall", "exists"))
