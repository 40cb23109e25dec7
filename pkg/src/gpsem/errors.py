from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple


class GPError(Exception):
    """Base class for errors reported to GP users."""


class ParseError(GPError):
    def __init__(self, message: str, line: Optional[int] = None, col: Optional[int] = None):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(str(self))

    def __str__(self):
        if self.line is None:
            return self.message
        return f'{self.line}:{self.col}: {self.message}'


class MacroError(GPError):
    def __init__(self, message: str, cycle: Tuple[str, ...] = ()):
        self.cycle = cycle
        super().__init__(message)


@dataclass(frozen=True)
class Diagnostic:
    message: str
    where: str
    pos: Optional[Tuple[int, int]] = None

    def __str__(self):
        loc = f'{self.pos[0]}:{self.pos[1]}: ' if self.pos else ''
        return f'{loc}{self.where}: {self.message}'


class StaticError(GPError):
    def __init__(self, diagnostics: List[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__('\n'.join(str(d) for d in self.diagnostics))


class HostGraphError(GPError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f'line {line}: {message}' if line is not None else message)


class EvaluationFailure(GPError):
    """An expression could not be evaluated (division by zero)."""
