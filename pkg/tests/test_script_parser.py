import pytest
from hypothesis import given, strategies as st

from coqatoo import CoqatooError, ItemKind, detect_unsupported, preprocess_auto, tokenize_script
from coqatoo.diagnostics import Severity

from helpers import script_path, tactic_commands

LISTING_4_TACTICS = [
    "intros", "split", "intros H HP HQ", "apply H", "apply conj",
    "assumption", "assumption",
    "intros H HPQ", "inversion HPQ", "apply H", "assumption", "assumption",
]


def kinds(items):
    return [it.kind for it in items]


def test_worked_example_tokenization():
    items = tokenize_script(script_path("conj_imp_equiv").read_text())
    assert kinds(items) == ([ItemKind.LEMMA_HEADER, ItemKind.PROOF_BEGIN]
                            + [ItemKind.TACTIC] * 12 + [ItemKind.PROOF_END])
    assert tactic_commands(items) == LISTING_4_TACTICS


def test_empty_proof_body():
    items = tokenize_script("Lemma t : True. Proof. Qed.")
    assert kinds(items) == [ItemKind.LEMMA_HEADER, ItemKind.PROOF_BEGIN, ItemKind.PROOF_END]


def test_nested_comment_is_one_item():
    src = "Lemma t : True.\nProof.\n(* a (* b *) c *)\nsplit.\nQed."
    items = tokenize_script(src)
    comments = [it for it in items if it.kind is ItemKind.COMMENT]
    assert len(comments) == 1
    assert comments[0].text == "(* a (* b *) c *)"


def test_qualified_name_does_not_split_sentence():
    items = tokenize_script("Lemma t : True. Proof. apply Coq.Init.Logic.I. Qed.")
    tactics = [it for it in items if it.kind is ItemKind.TACTIC]
    assert len(tactics) == 1
    assert tactics[0].command == "apply Coq.Init.Logic.I"


def test_unterminated_comment():
    with pytest.raises(CoqatooError) as exc:
        tokenize_script("Lemma t : True. Proof. (* oops")
    assert exc.value.diagnostic.code == "UNTERMINATED_COMMENT"


def test_no_lemma():
    with pytest.raises(CoqatooError) as exc:
        tokenize_script("split. assumption.")
    assert exc.value.diagnostic.code == "NO_LEMMA"


def test_bullets_are_their_own_items():
    items = tokenize_script("Lemma t : True.\nProof.\nsplit.\n- assumption.\n-- apply x.\nQed.")
    bullets = [it.text for it in items if it.kind is ItemKind.BULLET]
    assert bullets == ["-", "--"]


def test_spans_cover_source(corpus_name):
    src = script_path(corpus_name).read_text()
    items = tokenize_script(src)
    pos = 0
    for it in items:
        assert it.span[0] >= pos
        assert src[pos:it.span[0]].strip() == ""  # gaps are whitespace only
        assert src[it.span[0]:it.span[1]] == it.text
        pos = it.span[1]
    assert src[pos:].strip() == ""


def test_tactic_dot_only_terminal(corpus_name):
    for it in tokenize_script(script_path(corpus_name).read_text()):
        if it.kind is ItemKind.TACTIC:
            assert "." not in it.text[:-1]


# --- preprocess_auto ---

def test_auto_head_rewritten():
    items = tokenize_script("Lemma t : True. Proof. auto. Qed.")
    out = preprocess_auto(items)
    tactic = [it for it in out if it.kind is ItemKind.TACTIC][0]
    assert tactic.text == "info_auto."
    assert tactic.original == "auto."


def test_auto_with_arguments():
    items = tokenize_script("Lemma t : True. Proof. auto with arith. Qed.")
    out = preprocess_auto(items)
    assert [it.command for it in out if it.kind is ItemKind.TACTIC] == ["info_auto with arith"]


def test_non_auto_unchanged():
    items = tokenize_script("Lemma t : True. Proof. assumption. Qed.")
    assert preprocess_auto(items) == items


def test_preprocess_idempotent(corpus_name):
    items = tokenize_script(script_path(corpus_name).read_text())
    once = preprocess_auto(items)
    assert preprocess_auto(once) == once


# --- detect_unsupported ---

def test_chain_operator_rejected():
    items = tokenize_script("Lemma t : True. Proof. split; intros. Qed.")
    diags = detect_unsupported(items)
    assert [d.code for d in diags] == ["UNSUPPORTED_CHAIN"]
    assert diags[0].severity is Severity.ERROR


def test_worked_example_has_no_errors():
    items = tokenize_script(script_path("conj_imp_equiv").read_text())
    assert [d for d in detect_unsupported(items) if d.severity is Severity.ERROR] == []


def test_unknown_tactic_is_a_warning():
    items = tokenize_script("Lemma t : True. Proof. ring. Qed.")
    diags = detect_unsupported(items)
    assert [d.code for d in diags] == ["UNSUPPORTED_TACTIC"]
    assert diags[0].severity is Severity.WARNING


def test_semicolon_inside_comment_or_string_is_fine():
    items = tokenize_script('Lemma t : True. Proof. (* a; b *) idtac "x; y". Qed.')
    assert [d.code for d in detect_unsupported(items)] == ["UNSUPPORTED_TACTIC"]


# --- property-based lexing ---

_tactics = st.sampled_from(["intros", "apply H", "assumption", "split", "auto", "ring", "intros H HP"])
_gaps = st.sampled_from([" ", "  ", "\n", "\n  ", "\t\n"])


@st.composite
def _scripts(draw):
    parts = ["Lemma t : True.", "Proof."]
    for _ in range(draw(st.integers(0, 5))):
        if draw(st.booleans()):
            parts.append("(* note (* nested *) *)")
        parts.append(draw(_tactics) + ".")
    parts.append("Qed.")
    gaps = [draw(_gaps) for _ in parts]
    return "".join(g + p for g, p in zip(gaps, parts)) + draw(_gaps)


@given(_scripts())
def test_lossless_lexing(src):
    items = tokenize_script(src)
    pos = 0
    rebuilt = []
    for it in items:
        assert src[pos:it.span[0]].strip() == ""
        rebuilt.append(src[pos:it.span[0]])
        rebuilt.append(it.text)
        pos = it.span[1]
    rebuilt.append(src[pos:])
    assert "".join(rebuilt) == src


@given(_scripts())
def test_preprocess_idempotence_property(src):
    once = preprocess_auto(tokenize_script(src))
    assert preprocess_auto(once) == once
