"""Per-tactic rewriting rules and output rendering.

Sentence templates live in data files (templates/<lang>.properties) so
wording can change, or a new language can be added, without touching
code.  The English file is the reference key set; every other language
must define exactly the same keys.
"""

import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence

from .diagnostics import CoqatooError, error
from .diff_engine import Classification, StateDiff, classify_bindings
from .goal_parser import Hypothesis, ProofState, normalize_text
from .script_parser import ItemKind, ScriptItem, SUPPORTED_TACTICS
from .tree_builder import ProofNode

REFERENCE_LANGUAGE = "en"

REQUIRED_KEYS = {
    "list.joiner",
    "intros.variables", "intros.variables_one",
    "intros.hypotheses", "intros.hypotheses_one",
    "intros.mixed",
    "assumption.default",
    "apply.hypothesis_one", "apply.hypothesis_many",
    "inversion.default",
    "case.label",
    "plain.omitted",
}

ALLOWED_PLACEHOLDERS = {"list", "type", "goal", "hyp", "consequent", "antecedents"}

_PLACEHOLDER = re.compile(r"\{(\w+)\}")
_SENTENCE_SPLIT = re.compile(r"(?<=\.)\s+")


class AnnotationKind(Enum):
    EXPLAIN = "explain"
    CASE_LABEL = "case_label"
    GOAL_RESTATE = "goal_restate"
    OMITTED = "omitted"


class OutputMode(Enum):
    ANNOTATED = "annotated"
    PLAIN = "plain"
    LATEX = "latex"


@dataclass(frozen=True)
class Annotation:
    sentences: tuple
    attach_to: int
    kind: AnnotationKind = AnnotationKind.EXPLAIN


@dataclass(frozen=True)
class TemplateSet:
    language: str
    entries: Mapping[str, str]

    def fill(self, key: str, **values: str) -> str:
        if key not in self.entries:
            raise CoqatooError(error("TEMPLATE_MISSING_KEY",
                                     f"template key {key!r} missing for language {self.language!r}"))
        return _PLACEHOLDER.sub(lambda m: values.get(m.group(1), m.group(0)), self.entries[key])

    def join(self, parts: Sequence[str]) -> str:
        """Build "A, B and C" with the language's joiner word."""
        parts = list(parts)
        if len(parts) <= 1:
            return "".join(parts)
        joiner = self.entries["list.joiner"]
        return ", ".join(parts[:-1]) + f" {joiner} " + parts[-1]


def default_template_dir() -> Path:
    return Path(resources.files("coqatoo") / "templates")


def _parse_properties(path: Path) -> Dict[str, str]:
    entries: Dict[str, str] = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise CoqatooError(error("TEMPLATE_PARSE", f"line without '=' in {path.name}: {line!r}"))
        key, value = line.split("=", 1)
        entries[key.strip()] = value.strip()
    return entries


def load_templates(directory: Optional[str] = None, language: str = REFERENCE_LANGUAGE) -> TemplateSet:
    """Load one language's templates, checking completeness and placeholders."""
    base = Path(directory) if directory else default_template_dir()
    path = base / f"{language}.properties"
    if not path.is_file():
        raise CoqatooError(error("TEMPLATE_MISSING_KEY",
                                 f"no template file for language {language!r} in {base}"))
    entries = _parse_properties(path)
    missing = sorted(REQUIRED_KEYS - entries.keys())
    if missing:
        raise CoqatooError(error("TEMPLATE_MISSING_KEY",
                                 f"template key {missing[0]!r} missing for language {language!r}"))
    for key, value in entries.items():
        for placeholder in _PLACEHOLDER.findall(value):
            if placeholder not in ALLOWED_PLACEHOLDERS:
                raise CoqatooError(error("TEMPLATE_BAD_PLACEHOLDER",
                                         f"unknown placeholder {{{placeholder}}} in key {key!r} ({language})"))
    return TemplateSet(language, entries)


def _sentences(text: str) -> tuple:
    return tuple(s for s in _SENTENCE_SPLIT.split(text.strip()) if s)


def split_implication(type_expr: str) -> List[str]:
    """Split a displayed type on top-level "->", respecting brackets."""
    text = normalize_text(type_expr)
    parts: List[str] = []
    depth = 0
    start = 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        elif depth == 0 and text.startswith("->", i):
            parts.append(text[start:i].strip())
            i += 2
            start = i
            continue
        i += 1
    parts.append(text[start:].strip())
    return parts


def _binding_types(ctx: ProofState) -> Dict[str, str]:
    return {name: h.type_expr for h in ctx.hypotheses for name in h.names}


def _tactic_arg(command: str) -> Optional[str]:
    tokens = command.split()
    return tokens[1] if len(tokens) > 1 else None


def _hyp_types_by_length(hyps: Sequence[Hypothesis]) -> List[str]:
    types = [normalize_text(h.type_expr) for h in hyps for _ in h.names]
    return sorted(types, key=len)


def _extract_auto_trace(response_raw: Optional[str]) -> List[str]:
    """Pull the tactic sequence out of an info_auto response."""
    if not response_raw:
        return []
    lines = response_raw.splitlines()
    tactics: List[str] = []
    in_trace = False
    for line in lines:
        stripped = line.strip()
        if re.match(r"\(\*\s*info\s+e?auto\s*:\s*\*\)", stripped):
            in_trace = True
            continue
        if in_trace:
            if not stripped or re.match(r"(\d+\s+subgoals?|No more subgoals)", stripped):
                break
            tactic = stripped.rstrip(".")
            tactic = re.sub(r"\s*\(in \w+\)$", "", tactic)
            if tactic.startswith("simple "):
                tactic = tactic[len("simple "):]
            tactics.append(tactic)
    return tactics


def rewrite_step(item: ScriptItem, diff: StateDiff, ctx: ProofState,
                 templates: TemplateSet, response_raw: Optional[str] = None) -> Annotation:
    """Produce the explanatory sentences for one executed tactic.

    ctx is the proof state just before the tactic ran.
    """
    assert item.kind is ItemKind.TACTIC
    head = item.head
    seq = item.seq

    if head in ("intros", "intro"):
        return _rewrite_intros(diff, ctx, templates, seq)
    if head == "assumption":
        return Annotation(_sentences(templates.fill("assumption.default")), seq)
    if head == "apply":
        return _rewrite_apply(item, ctx, templates, seq)
    if head == "inversion":
        return _rewrite_inversion(item, diff, ctx, templates, seq)
    if head == "info_auto":
        sentences: List[str] = []
        for sub in _extract_auto_trace(response_raw):
            sub_item = ScriptItem(ItemKind.TACTIC, sub + ".", item.span, seq)
            sentences.extend(rewrite_step(sub_item, diff, ctx, templates).sentences)
        return Annotation(tuple(sentences), seq)
    if head == "split" or diff.classification is Classification.BRANCH:
        return Annotation((), seq)
    if head not in SUPPORTED_TACTICS:
        return Annotation((), seq, AnnotationKind.OMITTED)
    return Annotation((), seq)


def _rewrite_intros(diff: StateDiff, ctx: ProofState, templates: TemplateSet, seq: int) -> Annotation:
    variables, hypotheses = classify_bindings(diff.added, ctx)
    goal = normalize_text(diff.goal_after or diff.goal_before)
    var_names = [n for h in variables for n in h.names]
    hyp_types = _hyp_types_by_length(hypotheses)
    if variables and hypotheses:
        text = templates.fill("intros.mixed",
                              list=templates.join(var_names),
                              type=normalize_text(variables[0].type_expr),
                              hyp=templates.join(hyp_types),
                              goal=goal)
    elif variables:
        key = "intros.variables" if len(var_names) > 1 else "intros.variables_one"
        text = templates.fill(key, list=templates.join(var_names),
                              type=normalize_text(variables[0].type_expr), goal=goal)
    elif hypotheses:
        key = "intros.hypotheses" if len(hyp_types) > 1 else "intros.hypotheses_one"
        text = templates.fill(key, list=templates.join(hyp_types), goal=goal)
    else:
        return Annotation((), seq)
    return Annotation(_sentences(text), seq)


def _rewrite_apply(item: ScriptItem, ctx: ProofState, templates: TemplateSet, seq: int) -> Annotation:
    arg = _tactic_arg(item.command)
    types = _binding_types(ctx)
    if arg is None or arg not in types:
        # applying a global constant is rendered silently
        return Annotation((), seq)
    hyp_type = normalize_text(types[arg])
    segments = split_implication(hyp_type)
    if len(segments) < 2:
        return Annotation((), seq)
    consequent = segments[-1]
    antecedents = segments[:-1]
    key = "apply.hypothesis_many" if len(antecedents) > 1 else "apply.hypothesis_one"
    text = templates.fill(key, hyp=hyp_type, consequent=consequent,
                          antecedents=templates.join(antecedents))
    return Annotation(_sentences(text), seq)


def _rewrite_inversion(item: ScriptItem, diff: StateDiff, ctx: ProofState,
                       templates: TemplateSet, seq: int) -> Annotation:
    arg = _tactic_arg(item.command)
    types = _binding_types(ctx)
    subject = normalize_text(types.get(arg, arg or ""))
    added_types = [normalize_text(h.type_expr) for h in diff.added for _ in h.names]
    text = templates.fill("inversion.default", hyp=subject, list=", ".join(added_types))
    return Annotation(_sentences(text), seq)


def _case_comment(templates: TemplateSet, goal: str) -> str:
    return templates.fill("case.label", goal=normalize_text(goal))


def render(tree: ProofNode, annotations: Mapping[int, Annotation], mode: OutputMode,
           lemma: str, templates: TemplateSet) -> str:
    """Render the annotated, plain-text or LaTeX version of the proof."""
    if mode is OutputMode.ANNOTATED:
        return _render_annotated(tree, annotations, lemma, templates)
    if mode is OutputMode.PLAIN:
        return "\n".join(_render_plain(tree, annotations, templates)) + "\n"
    body = "\n".join(_render_latex(tree, annotations, templates))
    return "\\begin{proof}\n" + body + "\n\\end{proof}\n"


def _render_annotated(tree: ProofNode, annotations: Mapping[int, Annotation],
                      lemma: str, templates: TemplateSet) -> str:
    lines = [normalize_text(lemma), "Proof."]

    def emit(node: ProofNode) -> None:
        if node.case_goal is not None:
            glyph = "-" * node.depth
            bullet_indent = " " * (2 * node.depth)
            lines.append(f"{bullet_indent}{glyph} (* {_case_comment(templates, node.case_goal)} *)")
            indent = " " * (2 * node.depth + len(glyph) + 1)
        else:
            indent = ""
        for item, _diff in node.steps:
            ann = annotations.get(item.seq)
            tactic = normalize_text(item.original)
            if ann and ann.sentences:
                lines.append(f"{indent}(* {' '.join(ann.sentences)} *) {tactic}")
            else:
                lines.append(f"{indent}{tactic}")
        for child in node.children:
            emit(child)

    emit(tree)
    lines.append("Qed.")
    return "\n".join(lines) + "\n"


def _render_plain(tree: ProofNode, annotations: Mapping[int, Annotation],
                  templates: TemplateSet) -> List[str]:
    lines: List[str] = []

    def emit(node: ProofNode) -> None:
        if node.case_goal is not None:
            lines.append(_case_comment(templates, node.case_goal))
        for item, _diff in node.steps:
            ann = annotations.get(item.seq)
            if ann and ann.sentences:
                lines.append(" ".join(ann.sentences))
            elif ann and ann.kind is AnnotationKind.OMITTED:
                lines.append(templates.fill("plain.omitted"))
        for child in node.children:
            emit(child)

    emit(tree)
    return lines


_LATEX_SPECIALS = {
    "\\": r"\textbackslash{}",
    "{": r"\{", "}": r"\}",
    "_": r"\_", "%": r"\%", "&": r"\&", "#": r"\#", "$": r"\$",
    "~": r"\textasciitilde{}", "^": r"\textasciicircum{}",
}


def latex_escape(text: str) -> str:
    return "".join(_LATEX_SPECIALS.get(ch, ch) for ch in text)


def _render_latex(tree: ProofNode, annotations: Mapping[int, Annotation],
                  templates: TemplateSet) -> List[str]:
    lines: List[str] = []

    def emit(node: ProofNode) -> None:
        for item, _diff in node.steps:
            ann = annotations.get(item.seq)
            if ann and ann.sentences:
                lines.append(latex_escape(" ".join(ann.sentences)))
            elif ann and ann.kind is AnnotationKind.OMITTED:
                lines.append(latex_escape(templates.fill("plain.omitted")))
        if node.children:
            lines.append(r"\begin{itemize}")
            for child in node.children:
                lines.append(r"\item \textbf{" + latex_escape(_case_comment(templates, child.case_goal or "")) + "}")
                emit(child)
            lines.append(r"\end{itemize}")

    emit(tree)
    return lines
