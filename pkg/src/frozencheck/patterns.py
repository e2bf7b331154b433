"""Classification of classes against the three immutability patterns.

A class is checked, in precedence order, as an immutable subclass (super
call then self-freeze), an immutable adapter (frozen wrapped object with
delegating accessors), or an immutable object (self-freezing constructor
with safe readers); anything else is mutable. The decision is total and
deterministic, and each verdict carries a machine-readable rationale.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .model import (
    ClassGraph,
    ClassInfo,
    Exposure,
    MethodInfo,
    ProgramAnalysis,
    ShapeKind,
)
from .nodes import IVarAssign, LocalRef
from .spans import SourceSpan


class Pattern(Enum):
    IMMUTABLE_OBJECT = "immutable_object"
    IMMUTABLE_SUBCLASS = "immutable_subclass"
    IMMUTABLE_ADAPTER = "immutable_adapter"
    MUTABLE = "mutable"


PATTERN_LABELS = {
    Pattern.IMMUTABLE_OBJECT: "immutable object pattern",
    Pattern.IMMUTABLE_SUBCLASS: "immutable subclass pattern",
    Pattern.IMMUTABLE_ADAPTER: "immutable adapter pattern",
    Pattern.MUTABLE: "mutable (no immutable pattern matched)",
}

_SECTION_LABELS = {
    "subclass": "immutable subclass pattern",
    "adapter": "immutable adapter pattern",
    "object": "immutable object pattern",
}


@dataclass(frozen=True)
class Criterion:
    id: str
    satisfied: bool
    line: str  # rendered "label: value" text
    span: SourceSpan | None = None


@dataclass(frozen=True)
class PatternClassification:
    class_name: str
    pattern: Pattern
    rationale: tuple[Criterion, ...]
    span: SourceSpan


def classify(
    class_name: str, graph: ClassGraph, analysis: ProgramAnalysis | None = None
) -> PatternClassification:
    """Classify one class. The class must exist in the graph."""
    info = graph.classes.get(class_name)
    if info is None:
        raise ValueError(f"unknown class {class_name}")
    if analysis is None:
        analysis = ProgramAnalysis(graph)

    checks = (
        (Pattern.IMMUTABLE_SUBCLASS, _subclass_criteria),
        (Pattern.IMMUTABLE_ADAPTER, _adapter_criteria),
        (Pattern.IMMUTABLE_OBJECT, _object_criteria),
    )
    all_criteria: list[Criterion] = []
    for pattern, build in checks:
        criteria = build(info, analysis)
        if all(c.satisfied for c in criteria):
            return PatternClassification(
                class_name, pattern, tuple(criteria), info.span
            )
        all_criteria.extend(criteria)
    return PatternClassification(
        class_name, Pattern.MUTABLE, tuple(all_criteria), info.span
    )


def classify_program(
    graph: ClassGraph, analysis: ProgramAnalysis | None = None
) -> list[PatternClassification]:
    """Classify every class, in first-definition order."""
    if analysis is None:
        analysis = ProgramAnalysis(graph)
    return [classify(name, graph, analysis) for name in graph.classes]


def explain(classification: PatternClassification) -> str:
    """Human-readable rationale: each criterion with its pass/fail value."""
    lines = [
        f"{classification.class_name}: {PATTERN_LABELS[classification.pattern]}"
    ]
    section = None
    grouped = classification.pattern is Pattern.MUTABLE
    for crit in classification.rationale:
        if grouped:
            head = crit.id.split(".", 1)[0]
            if head != section:
                section = head
                lines.append(f"  considered {_SECTION_LABELS[head]}:")
            lines.append(f"    {crit.line}")
        else:
            lines.append(f"  {crit.line}")
    return "\n".join(lines)


# --- criteria builders ---


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _mutator_criterion(
    prefix: str, mutators: list[tuple[str, SourceSpan]]
) -> Criterion:
    if mutators:
        line = "mutator methods: " + ", ".join(name for name, _ in mutators)
        return Criterion(f"{prefix}.no_mutators", False, line, mutators[0][1])
    return Criterion(f"{prefix}.no_mutators", True, "mutator methods: none")


def _readers_criterion(
    prefix: str, info: ClassInfo, analysis: ProgramAnalysis
) -> Criterion:
    facts = analysis.accessor_facts(info.name)
    unsafe = [f for f in facts if not f.exposure.is_safe]
    if unsafe:
        detail = ", ".join(
            f"{f.name} leaks a raw mutable reference" for f in unsafe
        )
        return Criterion(
            f"{prefix}.readers_safe", False, f"reader exposure: {detail}", unsafe[0].span
        )
    detail = ", ".join(f"{f.name}={f.exposure.value}" for f in facts) or "no readers"
    return Criterion(f"{prefix}.readers_safe", True, f"reader exposure: {detail}")


def _subclass_criteria(info: ClassInfo, analysis: ProgramAnalysis) -> list[Criterion]:
    init = info.own_initialize()
    has_super = info.superclass is not None
    super_then_freeze = (
        init is not None
        and init.super_pos is not None
        and init.self_freeze_pos is not None
        and init.super_pos < init.self_freeze_pos
    )
    return [
        Criterion(
            "subclass.has_superclass",
            has_super,
            f"inherits from a superclass: {info.superclass or 'no'}",
        ),
        Criterion(
            "subclass.super_then_freeze",
            super_then_freeze,
            f"constructor calls super then freeze: {_yesno(super_then_freeze)}",
            init.span if init else None,
        ),
        _freeze_final_criterion("subclass", init),
        _mutator_criterion("subclass", info.own_mutators()),
        _readers_criterion("subclass", info, analysis),
    ]


def _freeze_final_criterion(prefix: str, init: MethodInfo | None) -> Criterion:
    ok = (
        init is not None
        and init.self_freeze_pos is not None
        and not any(pos > init.self_freeze_pos for _, pos in init.ivar_writes)
    )
    return Criterion(
        f"{prefix}.freeze_is_final",
        ok,
        f"no instance variable writes after freeze: {_yesno(ok)}",
        init.span if init else None,
    )


def _adapter_criteria(info: ClassInfo, analysis: ProgramAnalysis) -> list[Criterion]:
    ctor = analysis.constructor_facts(info.name)
    criteria: list[Criterion] = []

    if ctor.wraps is not None:
        ivar, wrapped_class = ctor.wraps
        criteria.append(
            Criterion(
                "adapter.wraps_mutable_class",
                True,
                f"wraps a mutable class: {wrapped_class} (in {ivar})",
            )
        )
        frozen = ivar in ctor.frozen_ivars
        criteria.append(
            Criterion(
                "adapter.wrapped_ivar_frozen",
                frozen,
                f"constructor freezes the wrapped object: {_yesno(frozen)}",
            )
        )
    else:
        criteria.append(
            Criterion(
                "adapter.wraps_mutable_class",
                False,
                "wraps a mutable class: no",
            )
        )
        criteria.append(
            Criterion(
                "adapter.wrapped_ivar_frozen",
                False,
                "constructor freezes the wrapped object: no",
            )
        )

    mutators = _effective_mutators(info, analysis)
    criteria.append(_mutator_criterion("adapter", mutators))
    criteria.append(_delegation_criterion(info, analysis, ctor.wraps))
    return criteria


def _effective_mutators(
    info: ClassInfo, analysis: ProgramAnalysis
) -> list[tuple[str, SourceSpan]]:
    """Mutators reachable by dispatch, inherited ones included. An adapter
    instance is never frozen, so inherited writers are live channels."""
    found: dict[str, SourceSpan] = {}
    for attr, (_, span) in analysis.effective_writers(info.name).items():
        found[attr + "="] = span
    for name, (_, entry) in analysis.effective_entries(info.name).items():
        if isinstance(entry, MethodInfo) and name != "initialize":
            if entry.writes_ivars or entry.mutates_references:
                found[name] = entry.span
    return sorted(found.items(), key=lambda pair: (pair[1].start, pair[0]))


def _delegation_criterion(
    info: ClassInfo, analysis: ProgramAnalysis, wraps: tuple[str, str] | None
) -> Criterion:
    offenders: list[str] = []
    first_span: SourceSpan | None = None
    for name, (_, entry) in analysis.effective_entries(info.name).items():
        if name == "initialize":
            continue
        if isinstance(entry, MethodInfo):
            shape = entry.return_shape
            span = entry.span
        else:
            shape = None
            span = entry.span
        ok = False
        if shape is not None and shape.kind is ShapeKind.LITERAL:
            ok = True
        elif (
            shape is not None
            and shape.kind is ShapeKind.DELEGATED
            and wraps is not None
            and shape.ivar == wraps[0]
        ):
            ok = analysis.exposure_of(info.name, shape).is_safe
        elif shape is None or shape.kind is ShapeKind.RAW_IVAR:
            fact = next(
                (f for f in analysis.accessor_facts(info.name) if f.name == name),
                None,
            )
            ok = fact is not None and fact.exposure is Exposure.VALUE_TYPED
        if not ok:
            offenders.append(name)
            if first_span is None:
                first_span = span
    if offenders:
        offenders.sort()
        return Criterion(
            "adapter.methods_delegate",
            False,
            "public methods delegate to the wrapped object: "
            + ", ".join(offenders)
            + " do not",
            first_span,
        )
    return Criterion(
        "adapter.methods_delegate",
        True,
        "public methods delegate to the wrapped object: yes",
    )


def _object_criteria(info: ClassInfo, analysis: ProgramAnalysis) -> list[Criterion]:
    init = info.own_initialize()
    stores = False
    if init is not None:
        stored = {
            stmt_value.name
            for stmt_value in _param_stores(init)
        }
        stores = all(p in stored for p in init.params)
    freeze = init is not None and init.calls_self_freeze
    return [
        Criterion(
            "object.constructor_stores_params",
            stores,
            "constructor assigns all parameters to instance variables: "
            + _yesno(stores),
            init.span if init else None,
        ),
        Criterion(
            "object.constructor_freeze",
            freeze,
            f"constructor calls freeze: {_yesno(freeze)}",
            init.span if init else None,
        ),
        _freeze_final_criterion("object", init),
        _mutator_criterion("object", info.own_mutators()),
        _readers_criterion("object", info, analysis),
    ]


def _param_stores(init: MethodInfo):
    for stmt in init.node.body:
        if isinstance(stmt, IVarAssign) and isinstance(stmt.value, LocalRef):
            if stmt.value.name in init.params:
                yield stmt.value
