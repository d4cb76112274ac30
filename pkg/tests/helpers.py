"""Shared helpers for the test suite."""

import re
from pathlib import Path
from typing import List, Tuple

from coqatoo import (ItemKind, ProofState, ScriptItem, SessionTrace, load_templates,
                     preprocess_auto, run_replay, tokenize_script)
from coqatoo.pipeline import analyze_trace

FIXTURE_DIR = Path(__file__).parent / "fixtures"
GOLDEN_DIR = FIXTURE_DIR / "golden"
CORPUS = ["conj_imp_equiv", "and_commutes", "modus_ponens"]

LISTING_1 = """\
  1 subgoal

  ============================
  forall P Q R : Prop, (P /\\ Q -> R) <-> (P -> Q -> R)
"""

LISTING_2 = """\
  1 subgoal

  P, Q, R : Prop
  ============================
  (P /\\ Q -> R) <-> (P -> Q -> R)
"""


def script_path(name: str) -> Path:
    return FIXTURE_DIR / f"{name}.v"


def fixture_path(name: str) -> Path:
    return FIXTURE_DIR / f"{name}.cqtrace"


def load_items(name: str) -> List[ScriptItem]:
    return preprocess_auto(tokenize_script(script_path(name).read_text(encoding="utf-8")))


def load_trace(name: str) -> Tuple[List[ScriptItem], SessionTrace]:
    items = load_items(name)
    return items, run_replay(items, str(fixture_path(name)))


def all_fixture_states(name: str) -> List[ProofState]:
    _, trace = load_trace(name)
    return [trace.initial_state()] + [s.state_after() for s in trace.steps]


def analyzed_steps(name: str):
    items, trace = load_trace(name)
    return analyze_trace(items, trace)


def normalize_rendering(text: str) -> str:
    """Collapse internal space runs and trailing whitespace, keep indentation."""
    out = []
    for line in text.splitlines():
        line = line.rstrip()
        lead = re.match(r"\s*", line).group(0)
        out.append(lead + re.sub(r" {2,}", " ", line[len(lead):]))
    while out and not out[-1]:
        out.pop()
    return "\n".join(out)


def tactic_commands(items: List[ScriptItem]) -> List[str]:
    return [" ".join(it.command.split()) for it in items if it.kind is ItemKind.TACTIC]


def roundtrip_tactics(rendered: str) -> List[str]:
    """Re-tokenize rendered output and keep only the tactic sentences."""
    return tactic_commands(tokenize_script(rendered))


def english_templates():
    return load_templates()
