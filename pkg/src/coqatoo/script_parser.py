"""Tokenizer for Coq vernacular proof scripts.

Splits a script into lemma header, Proof/Qed markers, tactic sentences,
comments and bullet glyphs.  A "." terminates a sentence only when followed
by whitespace or end of input, so qualified names survive.  Comments nest.
"""

import dataclasses
import re
from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

from .diagnostics import Diagnostic, CoqatooError, error, warning


class ItemKind(Enum):
    LEMMA_HEADER = "lemma_header"
    PROOF_BEGIN = "proof_begin"
    TACTIC = "tactic"
    COMMENT = "comment"
    BULLET = "bullet"
    PROOF_END = "proof_end"


LEMMA_KEYWORDS = {"Lemma", "Theorem", "Corollary", "Fact", "Remark", "Proposition", "Example"}
PROOF_END_KEYWORDS = {"Qed", "Defined", "Admitted", "Save"}

# Tactics the rewriter has rules for; anything else degrades to a warning.
SUPPORTED_TACTICS = {"intros", "intro", "split", "apply", "assumption", "inversion", "auto", "info_auto"}

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


@dataclass(frozen=True)
class ScriptItem:
    kind: ItemKind
    text: str
    span: Tuple[int, int]
    seq: int
    original: str = ""

    def __post_init__(self):
        if not self.original:
            object.__setattr__(self, "original", self.text)

    @property
    def command(self) -> str:
        """Sentence text without the trailing terminator."""
        return self.text[:-1].strip() if self.text.endswith(".") else self.text.strip()

    @property
    def head(self) -> str:
        m = _IDENT.match(self.command)
        return m.group(0) if m else self.command


def _scan_comment(source: str, i: int) -> int:
    """Return index just past the comment opening at i; raises if unterminated."""
    start = i
    depth = 0
    n = len(source)
    while i < n:
        if source.startswith("(*", i):
            depth += 1
            i += 2
        elif source.startswith("*)", i):
            depth -= 1
            i += 2
            if depth == 0:
                return i
        else:
            i += 1
    raise CoqatooError(error("UNTERMINATED_COMMENT", "comment opened here is never closed", (start, n)))


def _scan_string(source: str, i: int) -> int:
    """Skip a Coq string literal starting at the quote; "" escapes a quote."""
    n = len(source)
    i += 1
    while i < n:
        if source[i] == '"':
            if i + 1 < n and source[i + 1] == '"':
                i += 2
                continue
            return i + 1
        i += 1
    return n


def _classify(sentence: str) -> ItemKind:
    m = _IDENT.match(sentence.lstrip())
    word = m.group(0) if m else ""
    if word in LEMMA_KEYWORDS:
        return ItemKind.LEMMA_HEADER
    if word == "Proof":
        return ItemKind.PROOF_BEGIN
    if word in PROOF_END_KEYWORDS:
        return ItemKind.PROOF_END
    return ItemKind.TACTIC


def tokenize_script(source: str) -> List[ScriptItem]:
    """Tokenize a proof script into document-ordered items.

    Raises CoqatooError with UNTERMINATED_COMMENT or NO_LEMMA.
    """
    items: List[ScriptItem] = []
    i = 0
    n = len(source)
    while i < n:
        if source[i].isspace():
            i += 1
            continue
        start = i
        if source.startswith("(*", i):
            i = _scan_comment(source, i)
            items.append(ScriptItem(ItemKind.COMMENT, source[start:i], (start, i), len(items)))
            continue
        if source[i] in "-+*":
            glyph = source[i]
            j = i
            while j < n and source[j] == glyph:
                j += 1
            if j >= n or source[j].isspace():
                items.append(ScriptItem(ItemKind.BULLET, source[start:j], (start, j), len(items)))
                i = j
                continue
        # scan one sentence up to "." followed by whitespace/EOF
        j = i
        while j < n:
            if source[j] == '"':
                j = _scan_string(source, j)
                continue
            if source.startswith("(*", j):
                j = _scan_comment(source, j)
                continue
            if source[j] == "." and (j + 1 >= n or source[j + 1].isspace()):
                j += 1
                break
            j += 1
        sentence = source[start:j]
        items.append(ScriptItem(_classify(sentence), sentence, (start, j), len(items)))
        i = j
    if not any(it.kind is ItemKind.LEMMA_HEADER for it in items):
        raise CoqatooError(error("NO_LEMMA", "no lemma statement found in input"))
    return items


def preprocess_auto(items: List[ScriptItem]) -> List[ScriptItem]:
    """Rewrite the head of every `auto` tactic to `info_auto`.

    The original text is kept on the item for round-trip rendering.
    Idempotent.
    """
    out = []
    for it in items:
        if it.kind is ItemKind.TACTIC and it.head == "auto":
            rewritten = it.text.replace("auto", "info_auto", 1)
            out.append(dataclasses.replace(it, text=rewritten, original=it.original))
        else:
            out.append(it)
    return out


def _has_toplevel_semicolon(text: str) -> bool:
    i = 0
    n = len(text)
    while i < n:
        if text[i] == '"':
            i = _scan_string(text, i)
        elif text.startswith("(*", i):
            try:
                i = _scan_comment(text, i)
            except CoqatooError:
                return False
        elif text[i] == ";":
            return True
        else:
            i += 1
    return False


def detect_unsupported(items: List[ScriptItem]) -> List[Diagnostic]:
    """Flag chained tactics (fatal) and unknown tactic heads (warning)."""
    diags: List[Diagnostic] = []
    for it in items:
        if it.kind is not ItemKind.TACTIC:
            continue
        if _has_toplevel_semicolon(it.text):
            diags.append(error("UNSUPPORTED_CHAIN", f'chained tactics are not supported: "{it.command}"', it.span))
        elif it.head not in SUPPORTED_TACTICS:
            diags.append(warning("UNSUPPORTED_TACTIC", f'no rewriting rule for tactic "{it.head}"', it.span))
    return diags


def reconstruct(source: str, items: List[ScriptItem]) -> str:
    """Rebuild the source from item spans plus inter-item whitespace."""
    parts = []
    pos = 0
    for it in items:
        parts.append(source[pos:it.span[0]])
        parts.append(source[it.span[0]:it.span[1]])
        pos = it.span[1]
    parts.append(source[pos:])
    return "".join(parts)
