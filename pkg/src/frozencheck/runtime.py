"""Tree-walking evaluator for MiniRuby.

Implements the object model the static analyzer reasons about: instances
with an ivar table and a monotonic frozen flag, freeze/clone/frozen? on
every value, generated attr readers and writers, super dispatch, and the
FrozenError contract ("can't modify frozen <ClassName>") on any write to a
frozen instance. Strings, integers, booleans, and nil are immutable values
and map onto the host types directly.

Execution is strictly sequential and stops at the first fault; everything
printed before the fault is retained. A class definition statement defines
or reopens a class at the moment it executes (later members win).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from .nodes import (
    AttrDecl,
    AttrWrite,
    BoolLit,
    ClassDef,
    ConstRef,
    Expr,
    ExprStmt,
    IntLit,
    IVarAssign,
    IVarRef,
    LocalAssign,
    LocalRef,
    MethodCall,
    MethodDef,
    NilLit,
    Program,
    Puts,
    Return,
    SelfRef,
    Stmt,
    StringLit,
    SuperCall,
)
from .spans import SourceSpan


class FaultKind(Enum):
    FROZEN_ERROR = "FrozenError"
    NO_METHOD_ERROR = "NoMethodError"
    ARGUMENT_ERROR = "ArgumentError"
    NAME_ERROR = "NameError"


@dataclass(frozen=True)
class RuntimeFault:
    kind: FaultKind
    message: str
    span: SourceSpan | None = None


@dataclass
class ExecutionResult:
    stdout_lines: list[str]
    error: RuntimeFault | None

    @property
    def ok(self) -> bool:
        return self.error is None


class MiniRubyError(Exception):
    def __init__(self, kind: FaultKind, message: str, span: SourceSpan | None = None):
        super().__init__(f"{kind.value}: {message}")
        self.fault = RuntimeFault(kind, message, span)


@dataclass(frozen=True)
class GeneratedAccessor:
    attr: str
    writer: bool


MethodEntry = Union[MethodDef, GeneratedAccessor]


class RClass:
    """Runtime class: a name, an optional superclass, and a method table
    merged across reopenings (later definitions win)."""

    def __init__(self, name: str, superclass: "RClass | None"):
        self.name = name
        self.superclass = superclass
        self.methods: dict[str, MethodEntry] = {}

    def merge(self, classdef: ClassDef) -> None:
        for member in classdef.body:
            if isinstance(member, AttrDecl):
                for attr in member.names:
                    if member.kind.makes_reader:
                        self.methods[attr] = GeneratedAccessor(attr, writer=False)
                    if member.kind.makes_writer:
                        self.methods[attr + "="] = GeneratedAccessor(attr, writer=True)
            else:
                self.methods[member.name] = member

    def lookup(self, name: str) -> "tuple[RClass, MethodEntry] | None":
        cls: RClass | None = self
        while cls is not None:
            entry = cls.methods.get(name)
            if entry is not None:
                return cls, entry
            cls = cls.superclass
        return None

    def lookup_above(self, name: str) -> "tuple[RClass, MethodEntry] | None":
        """Like lookup, but starting strictly above this class (for super)."""
        cls = self.superclass
        while cls is not None:
            entry = cls.methods.get(name)
            if entry is not None:
                return cls, entry
            cls = cls.superclass
        return None


class Instance:
    __slots__ = ("klass", "ivars", "frozen")

    def __init__(self, klass: RClass):
        self.klass = klass
        self.ivars: dict[str, Value] = {}
        self.frozen = False

    def __repr__(self) -> str:  # debugging aid only
        state = " frozen" if self.frozen else ""
        return f"#<{self.klass.name}{state}>"


Value = Union[None, bool, int, str, Instance, RClass]


def freeze_object(value: Value) -> Value:
    """Freeze an instance in place (identity preserved, idempotent); value
    types are already immutable and pass through."""
    if isinstance(value, Instance):
        value.frozen = True
    return value


def is_frozen(value: Value) -> bool:
    if isinstance(value, Instance):
        return value.frozen
    return True


def clone_object(value: Value) -> Value:
    """Shallow copy of an instance with a fresh identity; the frozen flag
    is copied from the source. Value types are returned unchanged."""
    if isinstance(value, Instance):
        copy = Instance(value.klass)
        copy.ivars = dict(value.ivars)
        copy.frozen = value.frozen
        return copy
    return value


def set_ivar(
    target: Instance, name: str, value: Value, span: SourceSpan | None = None
) -> None:
    """Store an instance variable, or raise FrozenError leaving the ivar
    table untouched."""
    if target.frozen:
        raise MiniRubyError(
            FaultKind.FROZEN_ERROR,
            f"can't modify frozen {target.klass.name}",
            span,
        )
    target.ivars[name] = value


def render(value: Value) -> str:
    """The puts rendering of a value."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, str)):
        return str(value)
    if isinstance(value, Instance):
        return f"#<{value.klass.name}>"
    return value.name


def _describe_value(value: Value) -> str:
    if value is None:
        return "nil"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return "an Integer"
    if isinstance(value, str):
        return "a String"
    if isinstance(value, Instance):
        return value.klass.name
    return f"class {value.name}"


_MISSING = object()


@dataclass
class _Frame:
    self_obj: Instance
    defining_class: RClass
    method_name: str
    args: list[Value]
    locals: dict[str, Value]
    last_value: Value = None


class _ReturnSignal(Exception):
    def __init__(self, value: Value):
        self.value = value


class Interpreter:
    """One program execution. Instances share nothing across runs."""

    def __init__(self) -> None:
        self.classes: dict[str, RClass] = {}
        self.globals: dict[str, Value] = {}
        self.stdout: list[str] = []

    def run(self, tree: Program) -> ExecutionResult:
        try:
            for item in tree.items:
                if isinstance(item, ClassDef):
                    self._define_class(item)
                else:
                    try:
                        self._exec_stmt(item, None)
                    except _ReturnSignal:
                        break
        except MiniRubyError as exc:
            return ExecutionResult(self.stdout, exc.fault)
        return ExecutionResult(self.stdout, None)

    # --- classes ---

    def _define_class(self, node: ClassDef) -> None:
        existing = self.classes.get(node.name)
        if existing is None:
            superclass = None
            if node.superclass is not None:
                superclass = self.classes.get(node.superclass)
                if superclass is None:
                    raise MiniRubyError(
                        FaultKind.NAME_ERROR,
                        f"uninitialized constant {node.superclass}",
                        node.span,
                    )
            existing = RClass(node.name, superclass)
            self.classes[node.name] = existing
        elif node.superclass is not None:
            declared = self.classes.get(node.superclass)
            if existing.superclass is not declared:
                raise MiniRubyError(
                    FaultKind.NAME_ERROR,
                    f"superclass mismatch for class {node.name}",
                    node.span,
                )
        existing.merge(node)

    # --- statements ---

    def _exec_stmt(self, stmt: Stmt, frame: _Frame | None) -> None:
        if isinstance(stmt, LocalAssign):
            value = self._eval(stmt.value, frame)
            scope = frame.locals if frame is not None else self.globals
            scope[stmt.name] = value
        elif isinstance(stmt, IVarAssign):
            if frame is None:
                raise MiniRubyError(
                    FaultKind.NAME_ERROR,
                    "instance variable assignment outside of a method",
                    stmt.span,
                )
            value = self._eval(stmt.value, frame)
            set_ivar(frame.self_obj, stmt.name, value, stmt.span)
        elif isinstance(stmt, AttrWrite):
            receiver = self._eval(stmt.receiver, frame)
            value = self._eval(stmt.value, frame)
            self._invoke(receiver, stmt.attr + "=", [value], stmt.span)
        elif isinstance(stmt, ExprStmt):
            value = self._eval(stmt.value, frame)
            if frame is not None:
                frame.last_value = value
        elif isinstance(stmt, Puts):
            self.stdout.append(render(self._eval(stmt.value, frame)))
        elif isinstance(stmt, Return):
            raise _ReturnSignal(self._eval(stmt.value, frame))
        elif isinstance(stmt, SuperCall):
            if frame is None:
                raise MiniRubyError(
                    FaultKind.NAME_ERROR, "super called outside of a method", stmt.span
                )
            self._exec_super(stmt, frame)
        else:
            raise AssertionError(f"unknown statement: {stmt!r}")

    def _exec_super(self, stmt: SuperCall, frame: _Frame) -> None:
        found = frame.defining_class.lookup_above(frame.method_name)
        if found is None:
            raise MiniRubyError(
                FaultKind.NO_METHOD_ERROR,
                f"super: no superclass method '{frame.method_name}' for "
                f"{frame.self_obj.klass.name}",
                stmt.span,
            )
        if stmt.args:
            args = [self._eval(a, frame) for a in stmt.args]
        else:
            args = list(frame.args)  # bare super forwards the caller's arguments
        defining, entry = found
        value = self._call_entry(frame.self_obj, defining, entry, frame.method_name, args, stmt.span)
        frame.last_value = value

    # --- expressions ---

    def _eval(self, expr: Expr, frame: _Frame | None) -> Value:
        if isinstance(expr, StringLit):
            return expr.value
        if isinstance(expr, IntLit):
            return expr.value
        if isinstance(expr, NilLit):
            return None
        if isinstance(expr, BoolLit):
            return expr.value
        if isinstance(expr, SelfRef):
            if frame is None:
                raise MiniRubyError(
                    FaultKind.NAME_ERROR,
                    "self is not available at the top level",
                    expr.span,
                )
            return frame.self_obj
        if isinstance(expr, IVarRef):
            if frame is None:
                raise MiniRubyError(
                    FaultKind.NAME_ERROR,
                    f"instance variable {expr.name} referenced outside of a method",
                    expr.span,
                )
            return frame.self_obj.ivars.get(expr.name)
        if isinstance(expr, LocalRef):
            scope = frame.locals if frame is not None else self.globals
            if expr.name in scope:
                return scope[expr.name]
            raise MiniRubyError(
                FaultKind.NAME_ERROR,
                f"undefined local variable or method '{expr.name}'",
                expr.span,
            )
        if isinstance(expr, ConstRef):
            cls = self.classes.get(expr.name)
            if cls is None:
                raise MiniRubyError(
                    FaultKind.NAME_ERROR,
                    f"uninitialized constant {expr.name}",
                    expr.span,
                )
            return cls
        if isinstance(expr, MethodCall):
            receiver = self._eval(expr.receiver, frame)
            args = [self._eval(a, frame) for a in expr.args]
            return self._invoke(receiver, expr.name, args, expr.span)
        raise AssertionError(f"unknown expression: {expr!r}")

    # --- dispatch ---

    def _invoke(
        self, receiver: Value, name: str, args: list[Value], span: SourceSpan
    ) -> Value:
        if isinstance(receiver, RClass):
            if name == "new":
                return self._construct(receiver, args, span)
            raise MiniRubyError(
                FaultKind.NO_METHOD_ERROR,
                f"undefined method '{name}' for class {receiver.name}",
                span,
            )
        if isinstance(receiver, Instance):
            found = receiver.klass.lookup(name)
            if found is not None:
                defining, entry = found
                return self._call_entry(receiver, defining, entry, name, args, span)
            builtin = self._builtin(receiver, name, args, span)
            if builtin is not _MISSING:
                return builtin
            raise MiniRubyError(
                FaultKind.NO_METHOD_ERROR,
                f"undefined method '{name}' for {receiver.klass.name}",
                span,
            )
        builtin = self._builtin(receiver, name, args, span)
        if builtin is not _MISSING:
            return builtin
        raise MiniRubyError(
            FaultKind.NO_METHOD_ERROR,
            f"undefined method '{name}' for {_describe_value(receiver)}",
            span,
        )

    def _builtin(
        self, receiver: Value, name: str, args: list[Value], span: SourceSpan
    ) -> Value:
        if name not in ("freeze", "frozen?", "clone"):
            return _MISSING
        if args:
            raise MiniRubyError(
                FaultKind.ARGUMENT_ERROR,
                f"wrong number of arguments (given {len(args)}, expected 0)",
                span,
            )
        if name == "freeze":
            return freeze_object(receiver)
        if name == "frozen?":
            return is_frozen(receiver)
        return clone_object(receiver)

    def _construct(self, cls: RClass, args: list[Value], span: SourceSpan) -> Instance:
        instance = Instance(cls)
        found = cls.lookup("initialize")
        if found is None:
            if args:
                raise MiniRubyError(
                    FaultKind.ARGUMENT_ERROR,
                    f"wrong number of arguments (given {len(args)}, expected 0)",
                    span,
                )
            return instance
        defining, entry = found
        self._call_entry(instance, defining, entry, "initialize", args, span)
        return instance

    def _call_entry(
        self,
        receiver: Instance,
        defining: RClass,
        entry: MethodEntry,
        name: str,
        args: list[Value],
        span: SourceSpan,
    ) -> Value:
        if isinstance(entry, GeneratedAccessor):
            expected = 1 if entry.writer else 0
            if len(args) != expected:
                raise MiniRubyError(
                    FaultKind.ARGUMENT_ERROR,
                    f"wrong number of arguments (given {len(args)}, expected {expected})",
                    span,
                )
            if entry.writer:
                set_ivar(receiver, "@" + entry.attr, args[0], span)
                return args[0]
            return receiver.ivars.get("@" + entry.attr)
        if len(args) != len(entry.params):
            raise MiniRubyError(
                FaultKind.ARGUMENT_ERROR,
                f"wrong number of arguments (given {len(args)}, "
                f"expected {len(entry.params)})",
                span,
            )
        frame = _Frame(
            self_obj=receiver,
            defining_class=defining,
            method_name=name,
            args=args,
            locals=dict(zip(entry.params, args)),
        )
        try:
            for stmt in entry.body:
                self._exec_stmt(stmt, frame)
        except _ReturnSignal as signal:
            return signal.value
        return frame.last_value


def evaluate(tree: Program) -> ExecutionResult:
    """Execute a program and capture its stdout and first fault, if any."""
    return Interpreter().run(tree)
