#!/usr/bin/env python3
"""Regenerate the replay fixtures under tests/fixtures/.

The raw state blocks mirror coqtop 8.x plain goal printing.  When a
coqtop binary is available, fixtures can instead be re-recorded from a
live session with `coqatoo <file.v> --record <out.cqtrace>`.
"""

import json
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def state(hyps, goals):
    """Format one coqtop-style response block."""
    count = len(goals)
    lines = [f"{count} subgoal" + ("s" if count != 1 else ""), ""]
    for h in hyps:
        lines.append(f"  {h}")
    lines.append("  ============================")
    lines.append(f"  {goals[0]}")
    for k, g in enumerate(goals[1:], start=2):
        lines.append("")
        lines.append(f"subgoal {k} is:")
        lines.append(f" {g}")
    return "\n".join(lines) + "\n"


DONE = "No more subgoals.\n"


def write(name, lemma, initial, steps):
    path = FIXTURES / f"{name}.cqtrace"
    with path.open("w", encoding="utf-8") as fh:
        fh.write(json.dumps({"lemma": lemma, "initial_raw_state": initial,
                             "prover_version": "The Coq Proof Assistant, version 8.9.1"}) + "\n")
        for tactic, raw in steps:
            fh.write(json.dumps({"tactic": tactic, "raw_state": raw}) + "\n")
    print("wrote", path)


def conj_imp_equiv():
    pqr = ["P, Q, R : Prop"]
    ctx_a = pqr + ["H : P /\\ Q -> R", "HP : P", "HQ : Q"]
    ctx_b = pqr + ["H : P -> Q -> R", "HPQ : P /\\ Q"]
    ctx_b2 = ctx_b + ["H0 : P", "H1 : Q"]
    goal_a = "(P /\\ Q -> R) -> P -> Q -> R"
    goal_b = "(P -> Q -> R) -> P /\\ Q -> R"
    write(
        "conj_imp_equiv",
        "Lemma conj_imp_equiv : forall P Q R:Prop, ((P /\\ Q -> R) <-> (P -> Q -> R)).",
        state([], ["forall P Q R : Prop, (P /\\ Q -> R) <-> (P -> Q -> R)"]),
        [
            ("intros", state(pqr, ["(P /\\ Q -> R) <-> (P -> Q -> R)"])),
            ("split", state(pqr, [goal_a, goal_b])),
            ("intros H HP HQ", state(ctx_a, ["R", goal_b])),
            ("apply H", state(ctx_a, ["P /\\ Q", goal_b])),
            ("apply conj", state(ctx_a, ["P", "Q", goal_b])),
            ("assumption", state(ctx_a, ["Q", goal_b])),
            ("assumption", state(pqr, [goal_b])),
            ("intros H HPQ", state(ctx_b, ["R"])),
            ("inversion HPQ", state(ctx_b2, ["R"])),
            ("apply H", state(ctx_b2, ["P", "Q"])),
            ("assumption", state(ctx_b2, ["Q"])),
            ("assumption", DONE),
        ])


def and_commutes():
    pq = ["P, Q : Prop"]
    ctx = pq + ["H : P /\\ Q"]
    ctx2 = ctx + ["H0 : P", "H1 : Q"]
    write(
        "and_commutes",
        "Lemma and_commutes : forall P Q : Prop, P /\\ Q -> Q /\\ P.",
        state([], ["forall P Q : Prop, P /\\ Q -> Q /\\ P"]),
        [
            ("intros P Q", state(pq, ["P /\\ Q -> Q /\\ P"])),
            ("intros H", state(ctx, ["Q /\\ P"])),
            ("inversion H", state(ctx2, ["Q /\\ P"])),
            ("split", state(ctx2, ["Q", "P"])),
            ("assumption", state(ctx2, ["P"])),
            ("assumption", DONE),
        ])


def modus_ponens():
    pq = ["P, Q : Prop"]
    ctx = pq + ["HP : P", "H : P -> Q"]
    auto_done = ("(* info auto: *)\n"
                 "simple apply H.\n"
                 "assumption.\n"
                 "\n" + DONE)
    write(
        "modus_ponens",
        "Lemma modus_ponens : forall P Q : Prop, P -> (P -> Q) -> Q.",
        state([], ["forall P Q : Prop, P -> (P -> Q) -> Q"]),
        [
            ("intros P Q", state(pq, ["P -> (P -> Q) -> Q"])),
            ("intros HP H", state(ctx, ["Q"])),
            ("info_auto", auto_done),
        ])


if __name__ == "__main__":
    FIXTURES.mkdir(parents=True, exist_ok=True)
    conj_imp_equiv()
    and_commutes()
    modus_ponens()
