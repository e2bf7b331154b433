"""Source positions shared by the lexer, parser, diagnostics, and runtime."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class SourceSpan:
    """Region of a source file; 1-based lines and columns, end exclusive."""

    file_id: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self) -> None:
        if (self.start_line, self.start_col) > (self.end_line, self.end_col):
            raise ValueError(f"span start after end: {self}")

    @property
    def start(self) -> tuple[int, int]:
        return (self.start_line, self.start_col)

    @property
    def end(self) -> tuple[int, int]:
        return (self.end_line, self.end_col)

    def covers(self, other: SourceSpan) -> bool:
        return (
            self.file_id == other.file_id
            and self.start <= other.start
            and self.end >= other.end
        )

    def to(self, other: SourceSpan) -> SourceSpan:
        """Smallest span containing both self and other."""
        return SourceSpan(
            self.file_id,
            *min(self.start, other.start),
            *max(self.end, other.end),
        )

    def __str__(self) -> str:
        return f"{self.file_id}:{self.start_line}:{self.start_col}"
