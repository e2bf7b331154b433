"""Canonical MiniRuby source from a syntax tree.

Two-space indentation, one statement per line, parenthesized parameter and
argument lists. Reparsing the output yields a structurally identical tree.
"""

from __future__ import annotations

from .lexer import escape_string
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


def pretty_print(tree: Program) -> str:
    lines: list[str] = []
    for item in tree.items:
        if isinstance(item, ClassDef):
            _emit_class(item, lines)
        else:
            lines.append(_stmt(item, 0))
    if not lines:
        return ""
    return "\n".join(lines) + "\n"


def _emit_class(cls: ClassDef, lines: list[str]) -> None:
    head = f"class {cls.name}"
    if cls.superclass:
        head += f" < {cls.superclass}"
    lines.append(head)
    for member in cls.body:
        if isinstance(member, AttrDecl):
            names = ", ".join(f":{n}" for n in member.names)
            lines.append(f"  {member.kind.value} {names}")
        else:
            _emit_method(member, lines)
    lines.append("end")


def _emit_method(meth: MethodDef, lines: list[str]) -> None:
    head = f"  def {meth.name}"
    if meth.params:
        head += "(" + ", ".join(meth.params) + ")"
    lines.append(head)
    for stmt in meth.body:
        lines.append(_stmt(stmt, 2))
    lines.append("  end")


def _stmt(stmt: Stmt, depth: int) -> str:
    pad = "  " * depth
    if isinstance(stmt, IVarAssign):
        return f"{pad}{stmt.name} = {_expr(stmt.value)}"
    if isinstance(stmt, LocalAssign):
        return f"{pad}{stmt.name} = {_expr(stmt.value)}"
    if isinstance(stmt, AttrWrite):
        return f"{pad}{_expr(stmt.receiver)}.{stmt.attr} = {_expr(stmt.value)}"
    if isinstance(stmt, Return):
        return f"{pad}return {_expr(stmt.value)}"
    if isinstance(stmt, Puts):
        return f"{pad}puts {_expr(stmt.value)}"
    if isinstance(stmt, SuperCall):
        if stmt.args:
            return f"{pad}super " + ", ".join(_expr(a) for a in stmt.args)
        return f"{pad}super"
    if isinstance(stmt, ExprStmt):
        return f"{pad}{_expr(stmt.value)}"
    raise TypeError(f"unknown statement node: {stmt!r}")


def _expr(expr: Expr) -> str:
    if isinstance(expr, StringLit):
        return escape_string(expr.value)
    if isinstance(expr, IntLit):
        return str(expr.value)
    if isinstance(expr, NilLit):
        return "nil"
    if isinstance(expr, BoolLit):
        return "true" if expr.value else "false"
    if isinstance(expr, SelfRef):
        return "self"
    if isinstance(expr, (IVarRef, LocalRef, ConstRef)):
        return expr.name
    if isinstance(expr, MethodCall):
        recv = _expr(expr.receiver)
        if expr.args:
            return f"{recv}.{expr.name}(" + ", ".join(_expr(a) for a in expr.args) + ")"
        return f"{recv}.{expr.name}"
    raise TypeError(f"unknown expression node: {expr!r}")
