"""Text and JSON rendering of lint and classify results.

JSON output is a single document per run:

  {"version": "1",
   "diagnostics": [{"rule","severity","file","line","col","class","message"}],
   "classifications": [{"file","class","pattern","criteria":[{"id","satisfied"}]}],
   "summary": {"errors": N, "warnings": N}}

Output is byte-stable for identical inputs.
"""

from __future__ import annotations

import json

from .patterns import PatternClassification, explain
from .rules import Diagnostic, Severity


def summarize(diagnostics: list[Diagnostic]) -> dict[str, int]:
    errors = sum(1 for d in diagnostics if d.severity is Severity.ERROR)
    warnings = sum(1 for d in diagnostics if d.severity is Severity.WARNING)
    return {"errors": errors, "warnings": warnings}


def render_diagnostics_text(diagnostics: list[Diagnostic]) -> str:
    lines = [
        f"{d.span.file_id}:{d.span.start_line}:{d.span.start_col} "
        f"{d.severity.value} {d.rule} {d.message}"
        for d in diagnostics
    ]
    summary = summarize(diagnostics)
    total = len(diagnostics)
    if total == 0:
        lines.append("0 problems")
    else:
        lines.append(
            f"{total} problem{'s' if total != 1 else ''} "
            f"({summary['errors']} errors, {summary['warnings']} warnings)"
        )
    return "\n".join(lines) + "\n"


def render_classifications_text(
    classifications: list[tuple[str, PatternClassification]]
) -> str:
    blocks = []
    for file_id, result in classifications:
        span = result.span
        head = f"{file_id}:{span.start_line}:{span.start_col} {explain(result)}"
        blocks.append(head)
    if not blocks:
        return "no classes\n"
    return "\n".join(blocks) + "\n"


def build_json_document(
    diagnostics: list[Diagnostic],
    classifications: list[tuple[str, PatternClassification]],
) -> dict:
    return {
        "version": "1",
        "diagnostics": [
            {
                "rule": d.rule,
                "severity": d.severity.value,
                "file": d.span.file_id,
                "line": d.span.start_line,
                "col": d.span.start_col,
                "class": d.class_name,
                "message": d.message,
            }
            for d in diagnostics
        ],
        "classifications": [
            {
                "file": file_id,
                "class": result.class_name,
                "pattern": result.pattern.value,
                "criteria": [
                    {"id": crit.id, "satisfied": crit.satisfied}
                    for crit in result.rationale
                ],
            }
            for file_id, result in classifications
        ],
        "summary": summarize(diagnostics),
    }


def render_json(document: dict) -> str:
    return json.dumps(document, indent=2) + "\n"
