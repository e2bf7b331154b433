"""Lint rules for immutability defects.

Rule ids are a stable external contract:

  IMM001  missing-constructor-freeze       error
  IMM002  mutator-method-present           error
  IMM003  accessor-leaks-mutable-reference error
  IMM004  shallow-freeze                   error
  IMM005  reopened-immutable-class         warning
  IMM006  subclass-freeze-before-super     error
  IMM007  mutable-class-not-allowed        warning (immutable-by-default only)

IMM001 through IMM004 fire only on "immutability candidates": classes that
show intent by calling self.freeze, freezing an instance variable or a
wrapped attribute, or cloning an instance variable on read. Plain mutable
classes stay diagnostic-free under the default policy; IMM007 covers them
when immutable-by-default is on.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .config import Config
from .model import (
    ClassGraph,
    ClassInfo,
    ProgramAnalysis,
    ShapeKind,
    build_model,
)
from .nodes import ClassDef, Program
from .patterns import Pattern, classify
from .spans import SourceSpan


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


@dataclass(frozen=True)
class RuleInfo:
    id: str
    slug: str
    severity: Severity
    summary: str


RULES: dict[str, RuleInfo] = {
    rule.id: rule
    for rule in (
        RuleInfo(
            "IMM001",
            "missing-constructor-freeze",
            Severity.ERROR,
            "an immutability-minded class never freezes itself in its constructor",
        ),
        RuleInfo(
            "IMM002",
            "mutator-method-present",
            Severity.ERROR,
            "an immutability-minded class declares a writer or state-changing method",
        ),
        RuleInfo(
            "IMM003",
            "accessor-leaks-mutable-reference",
            Severity.ERROR,
            "an accessor hands out a live reference to mutable state",
        ),
        RuleInfo(
            "IMM004",
            "shallow-freeze",
            Severity.ERROR,
            "the object is frozen but an inherited mutable instance variable is not",
        ),
        RuleInfo(
            "IMM005",
            "reopened-immutable-class",
            Severity.WARNING,
            "a class that classified as immutable is reopened later",
        ),
        RuleInfo(
            "IMM006",
            "subclass-freeze-before-super",
            Severity.ERROR,
            "freeze runs before super, or instance variables are written after freeze",
        ),
        RuleInfo(
            "IMM007",
            "mutable-class-not-allowed",
            Severity.WARNING,
            "a mutable class is not on the allow list (immutable-by-default mode)",
        ),
    )
}


@dataclass(frozen=True)
class Diagnostic:
    rule: str
    severity: Severity
    span: SourceSpan
    class_name: str
    message: str
    help: str | None = None


def lint(
    graph: ClassGraph, config: Config, analysis: ProgramAnalysis | None = None
) -> list[Diagnostic]:
    """Lint every class in the graph; diagnostics sorted by position."""
    if analysis is None:
        analysis = ProgramAnalysis(graph)
    diagnostics: list[Diagnostic] = []
    for name, info in graph.classes.items():
        result = classify(name, graph, analysis)
        immutable = result.pattern is not Pattern.MUTABLE
        if not immutable and _is_candidate(info):
            diagnostics.extend(_candidate_defects(info, analysis))
        if info.reopened and _first_definition_immutable(graph, name):
            diagnostics.append(
                Diagnostic(
                    rule="IMM005",
                    severity=Severity.WARNING,
                    span=info.definition_spans[1],
                    class_name=name,
                    message=f"immutable class {name} is reopened here; later "
                    "definitions can change its behaviour",
                    help="merge the definitions or lint the reopening explicitly",
                )
            )
        if config.immutable_by_default and not immutable:
            if name not in config.allow_mutable:
                diagnostics.append(
                    Diagnostic(
                        rule="IMM007",
                        severity=Severity.WARNING,
                        span=info.span,
                        class_name=name,
                        message=f"class {name} is mutable but not on the "
                        "allow_mutable list",
                        help="make the class immutable or add it to allow_mutable",
                    )
                )
    diagnostics.sort(
        key=lambda d: (d.span.file_id, d.span.start_line, d.span.start_col, d.rule)
    )
    return diagnostics


def _is_candidate(info: ClassInfo) -> bool:
    for method in info.own_methods.values():
        if method.calls_self_freeze:
            return True
        if method.frozen_ivars or method.frozen_wrapped_attrs:
            return True
        if method.return_shape.kind is ShapeKind.CLONED_IVAR:
            return True
    return False


def _candidate_defects(
    info: ClassInfo, analysis: ProgramAnalysis
) -> list[Diagnostic]:
    name = info.name
    out: list[Diagnostic] = []
    ctor = analysis.constructor_facts(name)
    own_init = info.own_initialize()
    adapter_shaped = ctor.wraps is not None and ctor.wraps[0] in ctor.frozen_ivars

    for mutator, span in info.own_mutators():
        out.append(
            Diagnostic(
                rule="IMM002",
                severity=Severity.ERROR,
                span=span,
                class_name=name,
                message=f"class {name} declares mutator '{mutator}' but is "
                "meant to be immutable",
                help="drop the writer or make the class explicitly mutable",
            )
        )

    if not ctor.calls_self_freeze and not adapter_shaped:
        out.append(
            Diagnostic(
                rule="IMM001",
                severity=Severity.ERROR,
                span=own_init.span if own_init else info.span,
                class_name=name,
                message=f"class {name} never calls self.freeze in its "
                "constructor, so instances stay mutable",
                help="call self.freeze as the last statement of initialize",
            )
        )

    if own_init is not None and own_init.self_freeze_pos is not None:
        freeze_pos = own_init.self_freeze_pos
        if own_init.super_pos is not None and own_init.super_pos > freeze_pos:
            out.append(
                Diagnostic(
                    rule="IMM006",
                    severity=Severity.ERROR,
                    span=own_init.span,
                    class_name=name,
                    message=f"class {name} calls self.freeze before super, so "
                    "the superclass constructor writes to a frozen instance",
                    help="call super first, then self.freeze",
                )
            )
        elif any(pos > freeze_pos for _, pos in own_init.ivar_writes):
            out.append(
                Diagnostic(
                    rule="IMM006",
                    severity=Severity.ERROR,
                    span=own_init.span,
                    class_name=name,
                    message=f"class {name} writes instance variables after "
                    "self.freeze, which raises at construction time",
                    help="move all instance variable writes before self.freeze",
                )
            )

    out.extend(_reader_defects(info, analysis, ctor, own_init, adapter_shaped))
    return out


def _reader_defects(info, analysis, ctor, own_init, adapter_shaped):
    name = info.name
    out: list[Diagnostic] = []
    shallow_ivars: set[str] = set()
    subclass_shaped = (
        own_init is not None
        and own_init.super_pos is not None
        and own_init.self_freeze_pos is not None
    )
    for fact in analysis.accessor_facts(name):
        if (
            adapter_shaped
            and ctor.wraps is not None
            and fact.shape.kind is ShapeKind.RAW_IVAR
            and fact.ivar == ctor.wraps[0]
        ):
            out.append(
                Diagnostic(
                    rule="IMM003",
                    severity=Severity.ERROR,
                    span=fact.span,
                    class_name=name,
                    message=f"accessor '{fact.name}' of class {name} returns the "
                    f"wrapped {ctor.wraps[1]} object instead of delegating",
                    help="delegate to an attribute of the wrapped object",
                )
            )
            continue
        if fact.exposure.is_safe:
            continue
        inherited_only = fact.ivar is not None and not analysis.ivar_assigned_in_own_methods(
            name, fact.ivar
        )
        if subclass_shaped and inherited_only and fact.shape.kind is ShapeKind.RAW_IVAR:
            if fact.ivar in shallow_ivars:
                continue
            shallow_ivars.add(fact.ivar)
            out.append(
                Diagnostic(
                    rule="IMM004",
                    severity=Severity.ERROR,
                    span=own_init.span,
                    class_name=name,
                    message=f"class {name} freezes itself but not the mutable "
                    f"{fact.ivar} it inherits, so '{fact.name}' leaks it",
                    help=f"freeze {fact.ivar} in initialize after calling super",
                )
            )
        elif fact.shape.kind is ShapeKind.DELEGATED:
            out.append(
                Diagnostic(
                    rule="IMM003",
                    severity=Severity.ERROR,
                    span=fact.span,
                    class_name=name,
                    message=f"accessor '{fact.name}' of class {name} delegates to "
                    f"a mutable attribute of {fact.ivar} that is never frozen "
                    "or cloned",
                    help="freeze the wrapped attribute in the constructor",
                )
            )
        else:
            out.append(
                Diagnostic(
                    rule="IMM003",
                    severity=Severity.ERROR,
                    span=fact.span,
                    class_name=name,
                    message=f"accessor '{fact.name}' of class {name} returns a raw "
                    f"reference to mutable {fact.ivar}; callers can change "
                    "state behind the frozen facade",
                    help="return a clone of the value or freeze it in the constructor",
                )
            )
    return out


def _first_definition_immutable(graph: ClassGraph, name: str) -> bool:
    """Classify the class as if only its first definition existed."""
    items = []
    seen = False
    for item in graph.tree.items:
        if isinstance(item, ClassDef) and item.name == name:
            if seen:
                continue
            seen = True
        items.append(item)
    first_tree = Program(items, span=graph.tree.span)
    first_graph = build_model(first_tree)
    result = classify(name, first_graph)
    return result.pattern is not Pattern.MUTABLE
