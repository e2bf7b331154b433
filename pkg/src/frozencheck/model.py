"""Per-class semantic facts derived from the syntax tree.

This is the layer the pattern classifier and the lint rules consult:
which attributes and methods a class has (with reopenings merged in source
order), what its constructor does (parameter storage, freeze calls and
their order, wrapped-object construction), and how each reader exposes the
instance variable behind it.

Mutability origins are resolved syntactically, one level deep. An
instance variable is potentially mutable when some reachable assignment
stores a freshly constructed object, or stores a parameter/writer value
that is bound to a non-literal argument at some call site in the program.
Parameters with no call sites at all are vacuously literal-only, which
keeps class-only files from flagging their own readers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Union

from .nodes import (
    AttrDecl,
    AttrWrite,
    ClassDef,
    ConstRef,
    Expr,
    ExprStmt,
    IVarAssign,
    IVarRef,
    LITERAL_TYPES,
    LocalAssign,
    LocalRef,
    MethodCall,
    MethodDef,
    Program,
    Return,
    SelfRef,
    Stmt,
    SuperCall,
    walk,
)
from .spans import SourceSpan


class ModelError(Exception):
    """The program cannot be modeled (inheritance cycle, superclass conflict)."""


class ShapeKind(Enum):
    RAW_IVAR = "raw_ivar"
    CLONED_IVAR = "cloned_ivar"
    DELEGATED = "delegated"
    LITERAL = "literal"
    SELF_REF = "self"
    OTHER = "other"


@dataclass(frozen=True)
class ReturnShape:
    kind: ShapeKind
    ivar: str | None = None
    attr: str | None = None


@dataclass
class MethodInfo:
    """Facts about one explicit method definition."""

    name: str
    params: tuple[str, ...]
    span: SourceSpan
    node: MethodDef
    ivar_writes: tuple[tuple[str, int], ...]  # (ivar, statement index)
    self_freeze_pos: int | None
    super_pos: int | None
    frozen_ivars: frozenset[str]
    frozen_wrapped_attrs: frozenset[tuple[str, str]]
    return_shape: ReturnShape
    mutates_references: bool  # body writes attrs of self/ivar-rooted receivers

    @property
    def calls_self_freeze(self) -> bool:
        return self.self_freeze_pos is not None

    @property
    def calls_super(self) -> bool:
        return self.super_pos is not None

    @property
    def writes_ivars(self) -> bool:
        return bool(self.ivar_writes)


@dataclass(frozen=True)
class GeneratedReader:
    attr: str
    span: SourceSpan

    @property
    def ivar(self) -> str:
        return "@" + self.attr


OwnEntry = Union[MethodInfo, GeneratedReader]


@dataclass
class ClassInfo:
    name: str
    superclass: str | None
    definition_spans: list[SourceSpan] = field(default_factory=list)
    members: list[tuple[AttrDecl | MethodInfo, SourceSpan]] = field(default_factory=list)
    # later declarations win for same-name dispatch
    own_entries: dict[str, OwnEntry] = field(default_factory=dict)
    own_writers: dict[str, SourceSpan] = field(default_factory=dict)
    own_methods: dict[str, MethodInfo] = field(default_factory=dict)

    @property
    def reopened(self) -> bool:
        return len(self.definition_spans) > 1

    @property
    def span(self) -> SourceSpan:
        return self.definition_spans[0]

    def own_initialize(self) -> MethodInfo | None:
        entry = self.own_entries.get("initialize")
        return entry if isinstance(entry, MethodInfo) else None

    def own_mutators(self) -> list[tuple[str, SourceSpan]]:
        """Own writers and own non-initialize methods that mutate state."""
        found = [(attr + "=", span) for attr, span in self.own_writers.items()]
        for name, info in self.own_methods.items():
            if name == "initialize":
                continue
            if info.writes_ivars or info.mutates_references:
                found.append((name, info.span))
        found.sort(key=lambda pair: (pair[1].start, pair[0]))
        return found


@dataclass(eq=False)
class ClassGraph:
    classes: dict[str, ClassInfo]
    toplevel_stmts: list[Stmt]
    tree: Program
    unresolved_supers: frozenset[str]

    def ancestry(self, name: str) -> list[ClassInfo]:
        """The class and its defined ancestors, nearest first."""
        chain: list[ClassInfo] = []
        seen: set[str] = set()
        cur: str | None = name
        while cur is not None and cur in self.classes and cur not in seen:
            seen.add(cur)
            info = self.classes[cur]
            chain.append(info)
            cur = info.superclass
        return chain


def _expr_is_const_new(expr: Expr) -> str | None:
    if (
        isinstance(expr, MethodCall)
        and expr.name == "new"
        and isinstance(expr.receiver, ConstRef)
    ):
        return expr.receiver.name
    return None


def _method_info(node: MethodDef) -> MethodInfo:
    ivar_writes: list[tuple[str, int]] = []
    self_freeze_pos: int | None = None
    super_pos: int | None = None
    frozen_ivars: set[str] = set()
    frozen_wrapped: set[tuple[str, str]] = set()
    mutates_references = False
    returns: list[ReturnShape] = []

    for idx, stmt in enumerate(node.body):
        if isinstance(stmt, IVarAssign):
            ivar_writes.append((stmt.name, idx))
        elif isinstance(stmt, SuperCall):
            if super_pos is None:
                super_pos = idx
        elif isinstance(stmt, AttrWrite):
            if _roots_at_self(stmt.receiver):
                mutates_references = True
        elif isinstance(stmt, ExprStmt):
            call = stmt.value
            if isinstance(call, MethodCall) and call.name == "freeze" and not call.args:
                recv = call.receiver
                if isinstance(recv, SelfRef) and self_freeze_pos is None:
                    self_freeze_pos = idx
                elif isinstance(recv, IVarRef):
                    frozen_ivars.add(recv.name)
                elif (
                    isinstance(recv, MethodCall)
                    and not recv.args
                    and isinstance(recv.receiver, IVarRef)
                ):
                    frozen_wrapped.add((recv.receiver.name, recv.name))
        elif isinstance(stmt, Return):
            returns.append(_shape_of(stmt.value))

    if returns:
        shape = returns[0] if all(r == returns[0] for r in returns) else ReturnShape(ShapeKind.OTHER)
    elif node.body and isinstance(node.body[-1], ExprStmt):
        shape = _shape_of(node.body[-1].value)
    else:
        shape = ReturnShape(ShapeKind.OTHER)

    return MethodInfo(
        name=node.name,
        params=tuple(node.params),
        span=node.span,
        node=node,
        ivar_writes=tuple(ivar_writes),
        self_freeze_pos=self_freeze_pos,
        super_pos=super_pos,
        frozen_ivars=frozenset(frozen_ivars),
        frozen_wrapped_attrs=frozenset(frozen_wrapped),
        return_shape=shape,
        mutates_references=mutates_references,
    )


def _roots_at_self(expr: Expr) -> bool:
    while isinstance(expr, MethodCall):
        expr = expr.receiver
    return isinstance(expr, (SelfRef, IVarRef))


def _shape_of(expr: Expr) -> ReturnShape:
    if isinstance(expr, IVarRef):
        return ReturnShape(ShapeKind.RAW_IVAR, ivar=expr.name)
    if isinstance(expr, LITERAL_TYPES):
        return ReturnShape(ShapeKind.LITERAL)
    if isinstance(expr, SelfRef):
        return ReturnShape(ShapeKind.SELF_REF)
    if (
        isinstance(expr, MethodCall)
        and not expr.args
        and isinstance(expr.receiver, IVarRef)
    ):
        if expr.name == "clone":
            return ReturnShape(ShapeKind.CLONED_IVAR, ivar=expr.receiver.name)
        return ReturnShape(ShapeKind.DELEGATED, ivar=expr.receiver.name, attr=expr.name)
    return ReturnShape(ShapeKind.OTHER)


def build_model(tree: Program) -> ClassGraph:
    """Build the class graph: one ClassInfo per distinct name, reopenings
    merged in source order. Raises ModelError on an inheritance cycle or a
    superclass conflict between reopenings."""
    classes: dict[str, ClassInfo] = {}
    toplevel: list[Stmt] = []

    for item in tree.items:
        if not isinstance(item, ClassDef):
            toplevel.append(item)
            continue
        info = classes.get(item.name)
        if info is None:
            info = ClassInfo(name=item.name, superclass=item.superclass)
            classes[item.name] = info
        elif item.superclass is not None:
            if info.superclass is not None and info.superclass != item.superclass:
                raise ModelError(
                    f"superclass conflict for class {item.name}: "
                    f"{info.superclass} vs {item.superclass}"
                )
            info.superclass = item.superclass
        info.definition_spans.append(item.span)
        for member in item.body:
            if isinstance(member, AttrDecl):
                info.members.append((member, member.span))
                for attr in member.names:
                    if member.kind.makes_reader:
                        info.own_entries[attr] = GeneratedReader(attr, member.span)
                    if member.kind.makes_writer:
                        info.own_writers[attr] = member.span
            else:
                method = _method_info(member)
                info.members.append((method, method.span))
                info.own_entries[method.name] = method
                info.own_methods[method.name] = method

    _check_cycles(classes)

    unresolved = frozenset(
        info.superclass
        for info in classes.values()
        if info.superclass is not None and info.superclass not in classes
    )
    return ClassGraph(
        classes=classes,
        toplevel_stmts=toplevel,
        tree=tree,
        unresolved_supers=unresolved,
    )


def _check_cycles(classes: dict[str, ClassInfo]) -> None:
    for start in classes:
        seen: list[str] = []
        cur: str | None = start
        while cur is not None and cur in classes:
            if cur in seen:
                cycle = seen[seen.index(cur) :] + [cur]
                raise ModelError("inheritance cycle: " + " -> ".join(cycle))
            seen.append(cur)
            cur = classes[cur].superclass


# --- derived facts ---


class Exposure(Enum):
    VALUE_TYPED = "value"
    CLONED_REFERENCE = "cloned"
    FROZEN_REFERENCE = "frozen"
    RAW_MUTABLE_REFERENCE = "raw"

    @property
    def is_safe(self) -> bool:
        return self is not Exposure.RAW_MUTABLE_REFERENCE


@dataclass(frozen=True)
class AccessorFact:
    class_name: str
    name: str
    exposure: Exposure
    span: SourceSpan
    ivar: str | None
    declared_here: bool  # entry is the class's own (not inherited)
    shape: ReturnShape


@dataclass(frozen=True)
class ConstructorFacts:
    assigns_param_ivars: bool
    freeze_is_final: bool
    frozen_ivars: frozenset[str]
    frozen_wrapped_attrs: frozenset[tuple[str, str]]
    wraps: tuple[str, str] | None  # (ivar, wrapped class)
    calls_self_freeze: bool
    calls_super: bool
    super_before_freeze: bool
    writes_after_freeze: bool
    inherited: bool
    owner: str | None  # class whose initialize supplied the facts

    @classmethod
    def absent(cls) -> "ConstructorFacts":
        return cls(
            assigns_param_ivars=False,
            freeze_is_final=False,
            frozen_ivars=frozenset(),
            frozen_wrapped_attrs=frozenset(),
            wraps=None,
            calls_self_freeze=False,
            calls_super=False,
            super_before_freeze=False,
            writes_after_freeze=False,
            inherited=False,
            owner=None,
        )


@dataclass(frozen=True)
class _IVarFacts:
    mutable: bool
    constructed_class: str | None  # set when every assignment is K.new for one K


class _Literalness(Enum):
    LITERAL = 0
    NONLITERAL = 1


@dataclass(frozen=True)
class _ParamDep:
    owner: str
    param: str


_ArgOrigin = Union[_Literalness, _ParamDep]


class _Scope:
    """Resolves names appearing as call arguments, one level deep."""

    def __init__(
        self,
        owner: str | None,
        method: MethodInfo | None,
        locals_map: dict[str, list[Expr]],
    ):
        self.owner = owner
        self.method = method
        self.locals_map = locals_map


class ProgramAnalysis:
    """Whole-program origin analysis over one class graph.

    Build once per graph; every query is derived from precomputed tables
    so linting many classes stays linear in program size.
    """

    def __init__(self, graph: ClassGraph):
        self.graph = graph
        self._effective_cache: dict[str, dict[str, tuple[str, OwnEntry]]] = {}
        self._ivar_cache: dict[str, dict[str, _IVarFacts]] = {}
        self._own_assigned: dict[str, frozenset[str]] = {}
        self._ctor_cache: dict[str, ConstructorFacts] = {}
        self._frozen_cache: dict[str, tuple[frozenset[str], frozenset[tuple[str, str]]]] = {}
        self._param_literal = self._solve_param_literals()
        self._attr_taint = self._attr_write_taint()
        self._method_arg_nonliteral = self._method_call_taint()

    # --- effective dispatch tables ---

    def effective_entries(self, class_name: str) -> dict[str, tuple[str, OwnEntry]]:
        """Dispatch-visible members of a class: name -> (owner class, entry)."""
        cached = self._effective_cache.get(class_name)
        if cached is not None:
            return cached
        table: dict[str, tuple[str, OwnEntry]] = {}
        for info in reversed(self.graph.ancestry(class_name)):
            for name, entry in info.own_entries.items():
                table[name] = (info.name, entry)
        self._effective_cache[class_name] = table
        return table

    def effective_writers(self, class_name: str) -> dict[str, tuple[str, SourceSpan]]:
        table: dict[str, tuple[str, SourceSpan]] = {}
        for info in reversed(self.graph.ancestry(class_name)):
            for attr, span in info.own_writers.items():
                table[attr] = (info.name, span)
        return table

    def initialize_owner(self, class_name: str) -> tuple[str, MethodInfo] | None:
        """Nearest class in the ancestry defining initialize."""
        for info in self.graph.ancestry(class_name):
            init = info.own_initialize()
            if init is not None:
                return info.name, init
        return None

    def _init_chain(self, class_name: str) -> list[tuple[str, MethodInfo]]:
        """Initialize methods that run when `class_name.new` is evaluated:
        the effective initialize, then each ancestor initialize reached
        through super calls."""
        chain: list[tuple[str, MethodInfo]] = []
        found = self.initialize_owner(class_name)
        seen: set[str] = set()
        while found is not None:
            owner, init = found
            if owner in seen:
                break
            seen.add(owner)
            chain.append(found)
            if init.super_pos is None:
                break
            found = self._super_initialize(owner)
        return chain

    def _super_initialize(self, owner: str) -> tuple[str, MethodInfo] | None:
        info = self.graph.classes.get(owner)
        if info is None or info.superclass is None:
            return None
        return self.initialize_owner(info.superclass)

    # --- literal-origin fixpoint over constructor call sites ---

    def _iter_scopes(self) -> Iterator[tuple[_Scope, list[Stmt]]]:
        top_locals: dict[str, list[Expr]] = {}
        for stmt in self.graph.toplevel_stmts:
            if isinstance(stmt, LocalAssign):
                top_locals.setdefault(stmt.name, []).append(stmt.value)
        yield _Scope(None, None, top_locals), self.graph.toplevel_stmts
        for info in self.graph.classes.values():
            for member, _ in info.members:
                if isinstance(member, MethodInfo):
                    locals_map: dict[str, list[Expr]] = {}
                    for stmt in member.node.body:
                        if isinstance(stmt, LocalAssign):
                            locals_map.setdefault(stmt.name, []).append(stmt.value)
                    yield _Scope(info.name, member, locals_map), member.node.body

    def _arg_origin(self, expr: Expr, scope: _Scope) -> _ArgOrigin:
        if isinstance(expr, LITERAL_TYPES):
            return _Literalness.LITERAL
        if isinstance(expr, LocalRef):
            if scope.method is not None and expr.name in scope.method.params:
                if scope.method.name == "initialize" and scope.owner is not None:
                    return _ParamDep(scope.owner, expr.name)
                return _Literalness.NONLITERAL
            assignments = scope.locals_map.get(expr.name)
            if assignments and all(
                isinstance(value, LITERAL_TYPES) for value in assignments
            ):
                return _Literalness.LITERAL
            return _Literalness.NONLITERAL
        return _Literalness.NONLITERAL

    def _solve_param_literals(self) -> dict[tuple[str, str], bool]:
        flags: dict[tuple[str, str], bool] = {}
        for info in self.graph.classes.values():
            init = info.own_initialize()
            if init is not None:
                for p in init.params:
                    flags[(info.name, p)] = True

        # (target key) depends on (source key): target stays literal only
        # while the source does.
        deps: list[tuple[tuple[str, str], tuple[str, str]]] = []

        def bind(target: tuple[str, MethodInfo], args: list[Expr], scope: _Scope) -> None:
            owner, init = target
            for param, arg in zip(init.params, args):
                key = (owner, param)
                origin = self._arg_origin(arg, scope)
                if origin is _Literalness.LITERAL:
                    continue
                if isinstance(origin, _ParamDep):
                    deps.append((key, (origin.owner, origin.param)))
                else:
                    flags[key] = False

        for scope, body in self._iter_scopes():
            for stmt in body:
                for node in walk(stmt):
                    if isinstance(node, MethodCall):
                        cls = _expr_is_const_new(node)
                        if cls is not None:
                            target = self.initialize_owner(cls)
                            if target is not None:
                                bind(target, node.args, scope)
                    elif isinstance(node, SuperCall) and scope.owner is not None:
                        target = self._super_initialize(scope.owner)
                        if target is not None:
                            args = node.args
                            if not args and scope.method is not None:
                                # bare super forwards the current parameters
                                args = [
                                    LocalRef(p, span=node.span)
                                    for p in scope.method.params
                                ]
                            bind(target, args, scope)

        changed = True
        while changed:
            changed = False
            for target, source in deps:
                if not flags.get(source, True) and flags.get(target, True):
                    flags[target] = False
                    changed = True
        return flags

    def _resolve_literal(self, expr: Expr, scope: _Scope) -> bool:
        origin = self._arg_origin(expr, scope)
        if origin is _Literalness.LITERAL:
            return True
        if isinstance(origin, _ParamDep):
            return self._param_literal.get((origin.owner, origin.param), True)
        return False

    def _attr_write_taint(self) -> frozenset[str]:
        """Attribute names written (via generated writers) with a
        non-literal value anywhere in the program."""
        tainted: set[str] = set()
        for scope, body in self._iter_scopes():
            for stmt in body:
                for node in walk(stmt):
                    if isinstance(node, AttrWrite):
                        if not self._resolve_literal(node.value, scope):
                            tainted.add(node.attr)
        return frozenset(tainted)

    def _method_call_taint(self) -> frozenset[tuple[str, int]]:
        """(method name, argument index) pairs bound to a non-literal
        argument at some call site. Receiver classes are not tracked, so
        matching is by name."""
        tainted: set[tuple[str, int]] = set()
        for scope, body in self._iter_scopes():
            for stmt in body:
                for node in walk(stmt):
                    if isinstance(node, MethodCall) and node.name != "new":
                        for idx, arg in enumerate(node.args):
                            if not self._resolve_literal(arg, scope):
                                tainted.add((node.name, idx))
        return frozenset(tainted)

    # --- instance-variable origins ---

    def ivar_facts(self, class_name: str) -> dict[str, _IVarFacts]:
        cached = self._ivar_cache.get(class_name)
        if cached is not None:
            return cached

        mutable: dict[str, bool] = {}
        constructed: dict[str, set[str | None]] = {}
        own_assigned: set[str] = set()

        def note(ivar: str, is_mutable: bool, cls: str | None) -> None:
            mutable[ivar] = mutable.get(ivar, False) or is_mutable
            constructed.setdefault(ivar, set()).add(cls)

        def scan_method(owner: str, info: MethodInfo) -> None:
            scope = _Scope(
                owner,
                info,
                _locals_of(info.node.body),
            )
            for stmt in info.node.body:
                if not isinstance(stmt, IVarAssign):
                    continue
                if owner == class_name:
                    own_assigned.add(stmt.name)
                value = stmt.value
                new_class = _expr_is_const_new(value)
                if new_class is not None:
                    note(stmt.name, True, new_class)
                elif isinstance(value, LITERAL_TYPES):
                    note(stmt.name, False, None)
                elif isinstance(value, LocalRef) and value.name in info.params:
                    if info.name == "initialize":
                        literal = self._param_literal.get((owner, value.name), True)
                    else:
                        idx = info.params.index(value.name)
                        literal = (info.name, idx) not in self._method_arg_nonliteral
                    note(stmt.name, not literal, None)
                else:
                    note(stmt.name, not self._resolve_literal(value, scope), None)

        seen_methods: set[int] = set()
        for name, (owner, entry) in self.effective_entries(class_name).items():
            if isinstance(entry, MethodInfo):
                scan_method(owner, entry)
                seen_methods.add(id(entry))
        for owner, init in self._init_chain(class_name):
            if id(init) not in seen_methods:
                scan_method(owner, init)
                seen_methods.add(id(init))
        for attr, _ in self.effective_writers(class_name).items():
            note("@" + attr, attr in self._attr_taint, None)

        facts = {}
        for ivar, is_mutable in mutable.items():
            classes = constructed.get(ivar, set())
            only = classes.pop() if len(classes) == 1 else None
            facts[ivar] = _IVarFacts(mutable=is_mutable, constructed_class=only)
        self._ivar_cache[class_name] = facts
        self._own_assigned[class_name] = frozenset(own_assigned)
        return facts

    def ivar_mutable(self, class_name: str, ivar: str) -> bool:
        facts = self.ivar_facts(class_name).get(ivar)
        return facts.mutable if facts is not None else False

    def ivar_assigned_in_own_methods(self, class_name: str, ivar: str) -> bool:
        self.ivar_facts(class_name)
        return ivar in self._own_assigned[class_name]

    def construction_frozen(
        self, class_name: str
    ) -> tuple[frozenset[str], frozenset[tuple[str, str]]]:
        """Ivars and wrapped attributes frozen along the initialize chain."""
        cached = self._frozen_cache.get(class_name)
        if cached is not None:
            return cached
        ivars: set[str] = set()
        wrapped: set[tuple[str, str]] = set()
        for _, init in self._init_chain(class_name):
            ivars.update(init.frozen_ivars)
            wrapped.update(init.frozen_wrapped_attrs)
        result = (frozenset(ivars), frozenset(wrapped))
        self._frozen_cache[class_name] = result
        return result

    # --- constructor facts ---

    def constructor_facts(self, class_name: str) -> ConstructorFacts:
        cached = self._ctor_cache.get(class_name)
        if cached is not None:
            return cached
        found = self.initialize_owner(class_name)
        if found is None:
            facts = ConstructorFacts.absent()
            self._ctor_cache[class_name] = facts
            return facts
        owner, init = found

        stored_params = set()
        assigned_ivars: list[str] = []
        wraps: tuple[str, str] | None = None
        for stmt in init.node.body:
            if isinstance(stmt, IVarAssign):
                if stmt.name not in assigned_ivars:
                    assigned_ivars.append(stmt.name)
                if isinstance(stmt.value, LocalRef) and stmt.value.name in init.params:
                    stored_params.add(stmt.value.name)
                wrapped_class = _expr_is_const_new(stmt.value)
                if wrapped_class is not None:
                    wraps = (stmt.name, wrapped_class)
        if len(assigned_ivars) != 1:
            wraps = None

        freeze_pos = init.self_freeze_pos
        writes_after = freeze_pos is not None and any(
            pos > freeze_pos for _, pos in init.ivar_writes
        )
        frozen_ivars, frozen_wrapped = self.construction_frozen(class_name)
        facts = ConstructorFacts(
            assigns_param_ivars=all(p in stored_params for p in init.params),
            freeze_is_final=freeze_pos is not None and not writes_after,
            frozen_ivars=frozen_ivars,
            frozen_wrapped_attrs=frozen_wrapped,
            wraps=wraps,
            calls_self_freeze=freeze_pos is not None,
            calls_super=init.super_pos is not None,
            super_before_freeze=(
                init.super_pos is not None
                and freeze_pos is not None
                and init.super_pos < freeze_pos
            ),
            writes_after_freeze=writes_after,
            inherited=owner != class_name,
            owner=owner,
        )
        self._ctor_cache[class_name] = facts
        return facts

    # --- reader exposure ---

    def accessor_facts(self, class_name: str) -> list[AccessorFact]:
        """One fact per dispatch-visible reader, in stable name order."""
        facts = []
        for name, (owner, entry) in self.effective_entries(class_name).items():
            fact = self._accessor_fact(class_name, name, owner, entry)
            if fact is not None:
                facts.append(fact)
        facts.sort(key=lambda f: f.name)
        return facts

    def _accessor_fact(
        self, class_name: str, name: str, owner: str, entry: OwnEntry
    ) -> AccessorFact | None:
        if isinstance(entry, GeneratedReader):
            shape = ReturnShape(ShapeKind.RAW_IVAR, ivar=entry.ivar)
            span = entry.span
        else:
            if entry.name == "initialize":
                return None
            shape = entry.return_shape
            span = entry.span
            if shape.kind not in (
                ShapeKind.RAW_IVAR,
                ShapeKind.CLONED_IVAR,
                ShapeKind.DELEGATED,
                ShapeKind.LITERAL,
            ):
                return None
        exposure = self._exposure(class_name, shape)
        return AccessorFact(
            class_name=class_name,
            name=name,
            exposure=exposure,
            span=span,
            ivar=shape.ivar,
            declared_here=owner == class_name,
            shape=shape,
        )

    def exposure_of(self, class_name: str, shape: ReturnShape) -> Exposure:
        """Exposure of a value returned with the given shape from the class."""
        return self._exposure(class_name, shape)

    def _exposure(self, class_name: str, shape: ReturnShape, depth: int = 0) -> Exposure:
        if shape.kind is ShapeKind.LITERAL:
            return Exposure.VALUE_TYPED
        if shape.kind is ShapeKind.CLONED_IVAR:
            return Exposure.CLONED_REFERENCE
        frozen_ivars, frozen_wrapped = self.construction_frozen(class_name)
        if shape.kind is ShapeKind.RAW_IVAR:
            assert shape.ivar is not None
            if shape.ivar in frozen_ivars:
                return Exposure.FROZEN_REFERENCE
            if not self.ivar_mutable(class_name, shape.ivar):
                return Exposure.VALUE_TYPED
            return Exposure.RAW_MUTABLE_REFERENCE
        if shape.kind is ShapeKind.DELEGATED:
            assert shape.ivar is not None and shape.attr is not None
            if (shape.ivar, shape.attr) in frozen_wrapped:
                return Exposure.FROZEN_REFERENCE
            if depth >= 4:
                return Exposure.RAW_MUTABLE_REFERENCE
            wrapped = self.ivar_facts(class_name).get(shape.ivar)
            if wrapped is None or wrapped.constructed_class is None:
                return Exposure.RAW_MUTABLE_REFERENCE
            target = self.effective_entries(wrapped.constructed_class).get(shape.attr)
            if target is None:
                return Exposure.RAW_MUTABLE_REFERENCE
            _, target_entry = target
            if isinstance(target_entry, GeneratedReader):
                inner_shape = ReturnShape(ShapeKind.RAW_IVAR, ivar=target_entry.ivar)
            else:
                inner_shape = target_entry.return_shape
            return self._exposure(wrapped.constructed_class, inner_shape, depth + 1)
        return Exposure.RAW_MUTABLE_REFERENCE


def _locals_of(body: list[Stmt]) -> dict[str, list[Expr]]:
    locals_map: dict[str, list[Expr]] = {}
    for stmt in body:
        if isinstance(stmt, LocalAssign):
            locals_map.setdefault(stmt.name, []).append(stmt.value)
    return locals_map


def constructor_facts(info: ClassInfo, graph: ClassGraph) -> ConstructorFacts:
    """Constructor facts for one class (convenience over ProgramAnalysis)."""
    return ProgramAnalysis(graph).constructor_facts(info.name)


def accessor_facts(info: ClassInfo, graph: ClassGraph) -> list[AccessorFact]:
    """Reader exposure facts for one class (convenience over ProgramAnalysis)."""
    return ProgramAnalysis(graph).accessor_facts(info.name)
