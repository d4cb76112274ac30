import pytest

from coqatoo import CoqatooError, load_templates, parse_state, render, rewrite_step
from coqatoo.diff_engine import diff_states
from coqatoo.pipeline import annotate_steps, generate
from coqatoo.rewriter import AnnotationKind, OutputMode, latex_escape, split_implication
from coqatoo.script_parser import ItemKind, ScriptItem
from coqatoo.tree_builder import ProofNode

from helpers import (GOLDEN_DIR, LISTING_1, LISTING_2, analyzed_steps, load_trace,
                     normalize_rendering, roundtrip_tactics, script_path, tactic_commands)
from coqatoo import tokenize_script

EN = load_templates()


def _tactic(text, seq=0):
    return ScriptItem(ItemKind.TACTIC, text, (0, len(text)), seq)


# --- load_templates ---

def test_english_reference_keys():
    assert EN.entries["intros.variables"] == ("Assume that {list} are arbitrary objects of type "
                                              "{type}. Let us show that {goal} is true.")
    assert EN.entries["assumption.default"] == "True, because it is one of our assumptions."


def test_french_is_complete():
    fr = load_templates(language="fr")
    assert set(fr.entries) == set(EN.entries)


def test_missing_key_is_an_error(tmp_path):
    src = "\n".join(f"{k} = {v}" for k, v in EN.entries.items() if k != "assumption.default")
    (tmp_path / "en.properties").write_text(src, encoding="utf-8")
    with pytest.raises(CoqatooError) as exc:
        load_templates(str(tmp_path), "en")
    assert exc.value.diagnostic.code == "TEMPLATE_MISSING_KEY"
    assert "assumption.default" in exc.value.diagnostic.message


def test_unknown_placeholder_is_an_error(tmp_path):
    src = "\n".join(f"{k} = {v}" for k, v in EN.entries.items()) + "\nextra.key = oops {bogus}\n"
    (tmp_path / "en.properties").write_text(src, encoding="utf-8")
    with pytest.raises(CoqatooError) as exc:
        load_templates(str(tmp_path), "en")
    assert exc.value.diagnostic.code == "TEMPLATE_BAD_PLACEHOLDER"


def test_missing_language_file(tmp_path):
    with pytest.raises(CoqatooError) as exc:
        load_templates(str(tmp_path), "de")
    assert exc.value.diagnostic.code == "TEMPLATE_MISSING_KEY"


# --- split_implication ---

@pytest.mark.parametrize("expr,parts", [
    ("P /\\ Q -> R", ["P /\\ Q", "R"]),
    ("P -> Q -> R", ["P", "Q", "R"]),
    ("(A -> B) -> C", ["(A -> B)", "C"]),
    ("P", ["P"]),
])
def test_split_implication(expr, parts):
    assert split_implication(expr) == parts


# --- rewrite_step rules ---

def test_intros_variables_sentence():
    diff = diff_states(parse_state(LISTING_1), parse_state(LISTING_2))
    ann = rewrite_step(_tactic("intros."), diff, parse_state(LISTING_1), EN)
    assert " ".join(ann.sentences) == (
        "Assume that P, Q and R are arbitrary objects of type Prop. "
        "Let us show that (P /\\ Q -> R) <-> (P -> Q -> R) is true.")


def test_intros_hypotheses_sentence():
    steps = analyzed_steps("conj_imp_equiv")
    step = steps[2]  # intros H HP HQ
    ann = rewrite_step(step.item, step.diff, step.before, EN)
    assert " ".join(ann.sentences) == (
        "Suppose that P, Q and P /\\ Q -> R are true. Let us show that R is true.")


def test_apply_local_hypothesis_sentence():
    steps = analyzed_steps("conj_imp_equiv")
    step = steps[3]  # apply H with H : P /\ Q -> R
    ann = rewrite_step(step.item, step.diff, step.before, EN)
    assert " ".join(ann.sentences) == (
        "By our hypothesis P /\\ Q -> R, we know that R is true if P /\\ Q is true.")


def test_apply_multi_antecedent_sentence():
    steps = analyzed_steps("conj_imp_equiv")
    step = steps[9]  # apply H with H : P -> Q -> R
    ann = rewrite_step(step.item, step.diff, step.before, EN)
    assert " ".join(ann.sentences) == (
        "By our hypothesis P -> Q -> R, we know that R is true if P and Q are true.")


def test_apply_global_constant_is_silent():
    steps = analyzed_steps("conj_imp_equiv")
    step = steps[4]  # apply conj
    assert rewrite_step(step.item, step.diff, step.before, EN).sentences == ()


def test_assumption_sentence():
    steps = analyzed_steps("conj_imp_equiv")
    step = steps[5]
    ann = rewrite_step(step.item, step.diff, step.before, EN)
    assert ann.sentences == ("True, because it is one of our assumptions.",)


def test_inversion_sentence():
    steps = analyzed_steps("conj_imp_equiv")
    step = steps[8]  # inversion HPQ
    ann = rewrite_step(step.item, step.diff, step.before, EN)
    assert " ".join(ann.sentences) == "By inversion on P /\\ Q, we know that P, Q are also true."


def test_split_is_silent():
    steps = analyzed_steps("conj_imp_equiv")
    step = steps[1]
    assert rewrite_step(step.item, step.diff, step.before, EN).sentences == ()


def test_info_auto_expands_reported_tactics():
    steps = analyzed_steps("modus_ponens")
    step = steps[2]
    ann = rewrite_step(step.item, step.diff, step.before, EN, response_raw=step.after.raw)
    assert " ".join(ann.sentences) == (
        "By our hypothesis P -> Q, we know that Q is true if P is true. "
        "True, because it is one of our assumptions.")


def test_unsupported_tactic_marked_omitted():
    diff = diff_states(parse_state(LISTING_2), parse_state(LISTING_2))
    ann = rewrite_step(_tactic("ring."), diff, parse_state(LISTING_2), EN)
    assert ann.sentences == ()
    assert ann.kind is AnnotationKind.OMITTED


def test_mixed_intros_stays_within_two_sentences():
    before = parse_state(LISTING_1)
    after = parse_state(
        "1 subgoal\n\n  P, Q, R : Prop\n  H : P\n  ============================\n"
        "  (P /\\ Q -> R) <-> (P -> Q -> R)\n")
    diff = diff_states(before, after)
    ann = rewrite_step(_tactic("intros P Q R H."), diff, before, EN)
    assert len(ann.sentences) == 2
    assert "P, Q and R" in ann.sentences[0]
    assert "suppose that P are true" in ann.sentences[0]


# --- render ---

def _generate(name, mode, lang="en"):
    items, trace = load_trace(name)
    return generate(items, trace, load_templates(language=lang), mode)


def test_annotated_golden_output():
    out = _generate("conj_imp_equiv", OutputMode.ANNOTATED)
    golden = (GOLDEN_DIR / "conj_imp_equiv.annotated.en.txt").read_text()
    assert normalize_rendering(out) == normalize_rendering(golden)


def test_plain_mode_first_line():
    out = _generate("conj_imp_equiv", OutputMode.PLAIN)
    assert out.splitlines()[0] == ("Assume that P, Q and R are arbitrary objects of type Prop. "
                                   "Let us show that (P /\\ Q -> R) <-> (P -> Q -> R) is true.")
    assert "intros" not in out
    assert "Case P:" in out


def test_latex_mode_escapes_and_wraps():
    out = _generate("conj_imp_equiv", OutputMode.LATEX)
    assert out.startswith("\\begin{proof}\n")
    assert out.rstrip().endswith("\\end{proof}")
    assert "/\\textbackslash{}" in out
    assert "\\item" in out


def test_latex_escape_covers_specials():
    assert latex_escape("a_b%c&d#e$f{g}~h^i\\j") == (
        r"a\_b\%c\&d\#e\$f\{g\}\textasciitilde{}h\textasciicircum{}i\textbackslash{}j")


def test_empty_proof_render():
    tree = ProofNode(depth=0)
    out = render(tree, {}, OutputMode.ANNOTATED, "Lemma t :\n  True.", EN)
    assert out == "Lemma t : True.\nProof.\nQed.\n"


def test_french_rendering_completes(corpus_name):
    out = _generate(corpus_name, OutputMode.ANNOTATED, lang="fr")
    assert "Montrons" in out or "Vrai" in out


def test_round_trip_tactic_order(corpus_name):
    out = _generate(corpus_name, OutputMode.ANNOTATED)
    source_tactics = tactic_commands(tokenize_script(script_path(corpus_name).read_text()))
    assert roundtrip_tactics(out) == source_tactics


def test_verbosity_bound(corpus_name):
    annotations = annotate_steps(analyzed_steps(corpus_name), EN)
    for ann in annotations.values():
        assert len(ann.sentences) <= 2


def test_rendering_is_deterministic():
    assert _generate("conj_imp_equiv", OutputMode.ANNOTATED) == _generate(
        "conj_imp_equiv", OutputMode.ANNOTATED)
