"""Produces the per-tactic proof state sequence.

Two providers share one output type: a live coqtop subprocess driver and
a deterministic replay of a recorded `.cqtrace` fixture.  Fixtures are
line-delimited JSON and store raw prover responses; parsing to
ProofState happens lazily so recorded sessions survive parser changes.
"""

import json
import os
import queue
import shutil
import subprocess
import threading
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .diagnostics import CoqatooError, error
from .goal_parser import ProofState, parse_state, normalize_text
from .script_parser import ItemKind, ScriptItem

DEFAULT_TIMEOUT_SECS = 10
PROVER_ENV_VAR = "COQATOO_PROVER"
FIXTURE_EXTENSION = ".cqtrace"

_PROMPT_MARKER = "</prompt>"


@dataclass(frozen=True)
class TraceStep:
    tactic: str
    raw_state: str

    def state_after(self) -> ProofState:
        return parse_state(self.raw_state)


@dataclass(frozen=True)
class SessionTrace:
    lemma: str
    initial_raw: str
    steps: Sequence[TraceStep] = field(default_factory=tuple)
    prover_version: str = ""

    def initial_state(self) -> ProofState:
        return parse_state(self.initial_raw)


def _norm_tactic(text: str) -> str:
    text = normalize_text(text)
    return text[:-1].strip() if text.endswith(".") else text


def _tactic_items(items: Sequence[ScriptItem]) -> List[ScriptItem]:
    return [it for it in items if it.kind is ItemKind.TACTIC]


def run_replay(items: Sequence[ScriptItem], fixture_path: str) -> SessionTrace:
    """Replay a recorded session, verifying it matches the script."""
    try:
        with open(fixture_path, encoding="utf-8") as fh:
            lines = [ln for ln in fh.read().splitlines() if ln.strip()]
        if not lines:
            raise CoqatooError(error("FIXTURE_PARSE", f"fixture {fixture_path} is empty"))
        header = json.loads(lines[0])
        lemma = header["lemma"]
        initial = header["initial_raw_state"]
        version = header.get("prover_version", "")
        steps = tuple(TraceStep(json.loads(ln)["tactic"], json.loads(ln)["raw_state"])
                      for ln in lines[1:])
    except OSError as exc:
        raise CoqatooError(error("IO", f"cannot read fixture {fixture_path}: {exc}"))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise CoqatooError(error("FIXTURE_PARSE", f"malformed fixture {fixture_path}: {exc}"))

    script_tactics = [_norm_tactic(it.text) for it in _tactic_items(items)]
    fixture_tactics = [_norm_tactic(s.tactic) for s in steps]
    for i, (a, b) in enumerate(zip(script_tactics, fixture_tactics)):
        if a != b:
            raise CoqatooError(error(
                "FIXTURE_MISMATCH",
                f"fixture diverges from script at tactic {i}: script has {a!r}, fixture has {b!r}"))
    if len(script_tactics) != len(fixture_tactics):
        raise CoqatooError(error(
            "FIXTURE_MISMATCH",
            f"fixture diverges from script at tactic {min(len(script_tactics), len(fixture_tactics))}: "
            f"script has {len(script_tactics)} tactics, fixture has {len(fixture_tactics)}"))
    return SessionTrace(lemma, initial, steps, version)


def record_session(trace: SessionTrace, out_path: str) -> None:
    """Write a trace as a replayable .cqtrace fixture."""
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps({"lemma": trace.lemma,
                                 "initial_raw_state": trace.initial_raw,
                                 "prover_version": trace.prover_version}) + "\n")
            for step in trace.steps:
                fh.write(json.dumps({"tactic": step.tactic, "raw_state": step.raw_state}) + "\n")
    except OSError as exc:
        raise CoqatooError(error("IO", f"cannot write fixture {out_path}: {exc}"))


class _ProverSession:
    """One strictly sequential conversation with a coqtop process."""

    def __init__(self, prover_path: str, timeout_secs: float):
        self.timeout = timeout_secs
        self.proc = subprocess.Popen(
            [prover_path, "-emacs", "-q"],
            stdin=subprocess.PIPE, stdout=subprocess.PIPE, stderr=subprocess.PIPE,
            text=True, bufsize=0)
        self._out_chunks: "queue.Queue[str]" = queue.Queue()
        self._prompt_seen = threading.Event()
        self._stderr_buf: List[str] = []
        threading.Thread(target=self._pump, args=(self.proc.stdout, self._on_stdout), daemon=True).start()
        threading.Thread(target=self._pump, args=(self.proc.stderr, self._on_stderr), daemon=True).start()
        self._wait_prompt()  # banner

    @staticmethod
    def _pump(stream, sink):
        while True:
            ch = stream.read(1)
            if not ch:
                break
            sink(ch)

    def _on_stdout(self, ch: str) -> None:
        self._out_chunks.put(ch)

    def _on_stderr(self, ch: str) -> None:
        self._stderr_buf.append(ch)
        if "".join(self._stderr_buf[-len(_PROMPT_MARKER):]) == _PROMPT_MARKER:
            self._prompt_seen.set()

    def _wait_prompt(self) -> None:
        if not self._prompt_seen.wait(self.timeout):
            self.close()
            raise CoqatooError(error("PROVER_TIMEOUT", f"no prompt within {self.timeout}s"))
        self._prompt_seen.clear()

    def submit(self, sentence: str) -> str:
        """Send one sentence and return the full response."""
        assert self.proc.stdin is not None
        if not sentence.rstrip().endswith("."):
            sentence = sentence.rstrip() + "."
        self.proc.stdin.write(sentence + "\n")
        self.proc.stdin.flush()
        self._wait_prompt()
        chunks = []
        while True:
            try:
                chunks.append(self._out_chunks.get_nowait())
            except queue.Empty:
                break
        return "".join(chunks)

    def close(self) -> None:
        try:
            self.proc.kill()
        except OSError:
            pass


def resolve_prover(cli_path: Optional[str] = None) -> Optional[str]:
    """CLI flag wins over COQATOO_PROVER; fall back to coqtop on PATH."""
    candidate = cli_path or os.environ.get(PROVER_ENV_VAR) or "coqtop"
    return shutil.which(candidate)


def run_live(items: Sequence[ScriptItem], prover_path: str,
             timeout_secs: float = DEFAULT_TIMEOUT_SECS) -> SessionTrace:
    """Execute the script against a live prover, capturing each response."""
    resolved = shutil.which(prover_path)
    if resolved is None:
        raise CoqatooError(error("PROVER_MISSING", f"prover executable not found: {prover_path}"))
    version = ""
    try:
        version = subprocess.run([resolved, "--version"], capture_output=True, text=True,
                                 timeout=timeout_secs).stdout.strip().splitlines()[0]
    except (subprocess.SubprocessError, OSError, IndexError):
        pass

    lemma_items = [it for it in items if it.kind is ItemKind.LEMMA_HEADER]
    if not lemma_items:
        raise CoqatooError(error("NO_LEMMA", "no lemma statement to submit"))
    lemma = lemma_items[0]

    session = _ProverSession(resolved, timeout_secs)
    try:
        initial_raw = session.submit(lemma.text)
        _check_failure(initial_raw, lemma)
        steps = []
        for it in _tactic_items(items):
            raw = session.submit(it.text)
            _check_failure(raw, it)
            steps.append(TraceStep(_norm_tactic(it.text), raw))
        return SessionTrace(normalize_text(lemma.text), initial_raw, tuple(steps), version)
    finally:
        session.close()


def _check_failure(raw: str, item: ScriptItem) -> None:
    for line in raw.splitlines():
        if line.startswith(("Error", "Toplevel input")):
            raise CoqatooError(error("TACTIC_FAILED",
                                     f"prover rejected {item.command!r}: {raw.strip()}", item.span))
