"""Diagnostics shared by every pipeline stage."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    message: str
    code: str
    span: Optional[Tuple[int, int]] = None

    def format(self) -> str:
        loc = f" at {self.span[0]}..{self.span[1]}" if self.span else ""
        return f"{self.severity.value}[{self.code}]{loc}: {self.message}"


class CoqatooError(Exception):
    """Raised by pipeline stages when an Error diagnostic aborts them."""

    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.format())
        self.diagnostic = diagnostic


def error(code: str, message: str, span: Optional[Tuple[int, int]] = None) -> Diagnostic:
    return Diagnostic(Severity.ERROR, message, code, span)


def warning(code: str, message: str, span: Optional[Tuple[int, int]] = None) -> Diagnostic:
    return Diagnostic(Severity.WARNING, message, code, span)
