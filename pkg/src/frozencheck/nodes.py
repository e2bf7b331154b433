"""Syntax tree for MiniRuby.

Every node carries a SourceSpan, excluded from equality so that trees can
be compared structurally (the printer round-trip relies on this).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Union

from .spans import SourceSpan


@dataclass
class Node:
    span: SourceSpan = field(compare=False, kw_only=True)


# --- expressions ---


@dataclass
class StringLit(Node):
    value: str


@dataclass
class IntLit(Node):
    value: int


@dataclass
class NilLit(Node):
    pass


@dataclass
class BoolLit(Node):
    value: bool


@dataclass
class SelfRef(Node):
    pass


@dataclass
class IVarRef(Node):
    name: str  # includes the leading "@"


@dataclass
class LocalRef(Node):
    name: str


@dataclass
class ConstRef(Node):
    name: str


@dataclass
class MethodCall(Node):
    receiver: Expr
    name: str
    args: list[Expr]


Expr = Union[
    StringLit, IntLit, NilLit, BoolLit, SelfRef, IVarRef, LocalRef, ConstRef, MethodCall
]

LITERAL_TYPES = (StringLit, IntLit, NilLit, BoolLit)


# --- statements ---


@dataclass
class IVarAssign(Node):
    name: str
    value: Expr


@dataclass
class LocalAssign(Node):
    name: str
    value: Expr


@dataclass
class AttrWrite(Node):
    """`receiver.attr = value`; the receiver is everything before the last dot."""

    receiver: Expr
    attr: str
    value: Expr


@dataclass
class ExprStmt(Node):
    value: Expr


@dataclass
class Return(Node):
    value: Expr


@dataclass
class Puts(Node):
    value: Expr


@dataclass
class SuperCall(Node):
    """`super a, b`; empty args means bare `super` (forwards current args)."""

    args: list[Expr]


Stmt = Union[IVarAssign, LocalAssign, AttrWrite, ExprStmt, Return, Puts, SuperCall]


# --- class members and top-level items ---


class AttrKind(Enum):
    READER = "attr_reader"
    WRITER = "attr_writer"
    ACCESSOR = "attr_accessor"

    @property
    def makes_reader(self) -> bool:
        return self in (AttrKind.READER, AttrKind.ACCESSOR)

    @property
    def makes_writer(self) -> bool:
        return self in (AttrKind.WRITER, AttrKind.ACCESSOR)


@dataclass
class AttrDecl(Node):
    kind: AttrKind
    names: list[str]  # attribute names, without the ":" sigil


@dataclass
class MethodDef(Node):
    name: str
    params: list[str]
    body: list[Stmt]


Member = Union[AttrDecl, MethodDef]


@dataclass
class ClassDef(Node):
    name: str
    superclass: str | None
    body: list[Member]


Item = Union[ClassDef, Stmt]


@dataclass
class Program(Node):
    items: list[Item]


def child_nodes(node: Node) -> Iterator[Node]:
    """Yield the direct Node children of a node, in field order."""
    for f in dataclasses.fields(node):
        value = getattr(node, f.name)
        if isinstance(value, Node):
            yield value
        elif isinstance(value, list):
            for item in value:
                if isinstance(item, Node):
                    yield item


def walk(node: Node) -> Iterator[Node]:
    """Yield `node` and all descendants, depth first."""
    yield node
    for child in child_nodes(node):
        yield from walk(child)
