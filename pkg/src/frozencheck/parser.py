"""Recursive-descent parser for MiniRuby.

The accepted language is deliberately small: class definitions with
attr declarations and methods, plus straight-line statements. One statement
per line; newlines terminate statements. The only extension beyond the
parenthesized-call core is Ruby-style command calls (`Person.new name, addr`)
in statement, assignment-RHS, return, and puts position.

Parse errors are collected with spans; recovery skips to the next
class/def/end boundary so several errors can be reported in one pass.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lexer import Token, TokenKind, string_value, tokenize
from .nodes import (
    AttrDecl,
    AttrKind,
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
    Member,
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

_ATTR_KINDS = {kind.value: kind for kind in AttrKind}

_EXPR_START_KEYWORDS = frozenset({"nil", "true", "false", "self"})


@dataclass(frozen=True)
class ParseError:
    message: str
    span: SourceSpan

    def __str__(self) -> str:
        return f"{self.span}: {self.message}"


class ParseFailure(Exception):
    """Raised when parsing produced one or more errors."""

    def __init__(self, errors: list[ParseError]):
        super().__init__("; ".join(str(e) for e in errors))
        self.errors = errors


class _Recover(Exception):
    """Internal signal: an error was recorded, skip to a safe boundary."""


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.errors: list[ParseError] = []

    # --- token plumbing ---

    def peek(self, offset: int = 0) -> Token:
        i = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[i]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if self.pos < len(self.tokens) - 1:
            self.pos += 1
        return tok

    def at_eof(self) -> bool:
        return self.peek().kind is TokenKind.EOF

    def error(self, message: str, span: SourceSpan) -> None:
        self.errors.append(ParseError(message, span))

    def fail(self, message: str, span: SourceSpan) -> _Recover:
        self.error(message, span)
        return _Recover()

    def expect_op(self, op: str) -> Token:
        tok = self.peek()
        if not tok.is_op(op):
            raise self.fail(f"expected '{op}', got {_describe(tok)}", tok.span)
        return self.advance()

    def skip_newlines(self) -> None:
        while self.peek().kind is TokenKind.NEWLINE:
            self.advance()

    def end_of_stmt(self) -> None:
        tok = self.peek()
        if tok.kind is TokenKind.NEWLINE:
            self.skip_newlines()
            return
        if tok.kind is TokenKind.EOF or tok.is_keyword("end"):
            return
        raise self.fail(
            f"expected newline after statement, got {_describe(tok)}", tok.span
        )

    def synchronize(self) -> None:
        """Skip to just past the next newline, or to a class/def/end boundary."""
        while not self.at_eof():
            tok = self.peek()
            if tok.kind is TokenKind.NEWLINE:
                self.advance()
                return
            if tok.kind is TokenKind.KEYWORD and tok.lexeme in ("class", "def", "end"):
                return
            self.advance()

    # --- grammar ---

    def program(self) -> Program:
        items = []
        first = self.peek().span
        self.skip_newlines()
        while not self.at_eof():
            tok = self.peek()
            try:
                if tok.is_keyword("class"):
                    items.append(self.classdef())
                elif tok.is_keyword("end"):
                    self.error("unexpected 'end' at top level", tok.span)
                    self.advance()
                else:
                    items.append(self.stmt(in_method=False))
            except _Recover:
                self.synchronize()
            self.skip_newlines()
        last = self.peek().span
        return Program(items, span=first.to(last))

    def classdef(self) -> ClassDef:
        start = self.advance().span  # 'class'
        name_tok = self.peek()
        if name_tok.kind is TokenKind.CONST:
            name = self.advance().lexeme
        elif name_tok.kind is TokenKind.IDENT:
            self.error("class name must be a constant", name_tok.span)
            name = self.advance().lexeme
        else:
            raise self.fail(
                f"expected class name, got {_describe(name_tok)}", name_tok.span
            )
        superclass = None
        if self.peek().is_op("<"):
            self.advance()
            sup_tok = self.peek()
            if sup_tok.kind is not TokenKind.CONST:
                raise self.fail(
                    f"expected superclass name, got {_describe(sup_tok)}", sup_tok.span
                )
            superclass = self.advance().lexeme
        self.end_of_stmt()
        body: list[Member] = []
        while True:
            self.skip_newlines()
            tok = self.peek()
            if tok.is_keyword("end"):
                end_span = self.advance().span
                break
            if tok.kind is TokenKind.EOF:
                raise self.fail(f"missing 'end' for class {name}", tok.span)
            try:
                body.append(self.member())
            except _Recover:
                self.synchronize()
        return ClassDef(name, superclass, body, span=start.to(end_span))

    def member(self) -> Member:
        tok = self.peek()
        if tok.kind is TokenKind.IDENT and tok.lexeme in _ATTR_KINDS:
            return self.attrdecl()
        if tok.is_keyword("def"):
            return self.methoddef()
        raise self.fail(
            "expected attr declaration, method definition, or 'end' in class body, "
            f"got {_describe(tok)}",
            tok.span,
        )

    def attrdecl(self) -> AttrDecl:
        kind_tok = self.advance()
        kind = _ATTR_KINDS[kind_tok.lexeme]
        names = []
        last_span = kind_tok.span
        while True:
            tok = self.peek()
            if tok.kind is not TokenKind.SYMBOL:
                raise self.fail(
                    f"expected symbol after {kind_tok.lexeme}, got {_describe(tok)}",
                    tok.span,
                )
            names.append(self.advance().lexeme[1:])
            last_span = tok.span
            if self.peek().is_op(","):
                self.advance()
            else:
                break
        decl = AttrDecl(kind, names, span=kind_tok.span.to(last_span))
        self.end_of_stmt()
        return decl

    def methoddef(self) -> MethodDef:
        start = self.advance().span  # 'def'
        name_tok = self.peek()
        if name_tok.kind is not TokenKind.IDENT:
            raise self.fail(
                f"expected method name, got {_describe(name_tok)}", name_tok.span
            )
        name = self.advance().lexeme
        params = self.params()
        self.end_of_stmt()
        body: list[Stmt] = []
        while True:
            self.skip_newlines()
            tok = self.peek()
            if tok.is_keyword("end"):
                end_span = self.advance().span
                break
            if tok.kind is TokenKind.EOF:
                raise self.fail(f"missing 'end' for method {name}", tok.span)
            body.append(self.stmt(in_method=True))
        node = MethodDef(name, params, body, span=start.to(end_span))
        self.end_of_stmt()
        return node

    def params(self) -> list[str]:
        params: list[str] = []
        if self.peek().is_op("("):
            self.advance()
            if not self.peek().is_op(")"):
                params.append(self.param_name())
                while self.peek().is_op(","):
                    self.advance()
                    params.append(self.param_name())
            self.expect_op(")")
        elif self.peek().kind is TokenKind.IDENT:
            params.append(self.param_name())
            while self.peek().is_op(","):
                self.advance()
                params.append(self.param_name())
        return params

    def param_name(self) -> str:
        tok = self.peek()
        if tok.kind is not TokenKind.IDENT:
            raise self.fail(f"expected parameter name, got {_describe(tok)}", tok.span)
        return self.advance().lexeme

    def stmt(self, in_method: bool) -> Stmt:
        tok = self.peek()

        if tok.kind is TokenKind.IVAR and self.peek(1).is_op("="):
            if not in_method:
                self.error(
                    "instance variable assignment outside of a method", tok.span
                )
            self.advance()
            self.advance()
            value = self.expr(command=True)
            node = IVarAssign(tok.lexeme, value, span=tok.span.to(value.span))
            self.end_of_stmt()
            return node

        if tok.is_keyword("return"):
            self.advance()
            value = self.expr(command=True)
            node = Return(value, span=tok.span.to(value.span))
            self.end_of_stmt()
            return node

        if tok.is_keyword("super"):
            if not in_method:
                self.error("'super' outside of a method", tok.span)
            self.advance()
            args: list[Expr] = []
            span = tok.span
            if self.starts_expr(self.peek()):
                args = self.expr_list()
                span = span.to(args[-1].span)
            node = SuperCall(args, span=span)
            self.end_of_stmt()
            return node

        if (
            tok.kind is TokenKind.IDENT
            and tok.lexeme == "puts"
            and not self.peek(1).is_op("=")
        ):
            self.advance()
            value = self.expr(command=True)
            node = Puts(value, span=tok.span.to(value.span))
            self.end_of_stmt()
            return node

        expr, last_plain_call = self.postfix(command=True)
        if self.peek().is_op("="):
            eq = self.advance()
            value = self.expr(command=True)
            target = self.assign_target(expr, last_plain_call, eq.span)
            node = target_to_stmt(target, value, expr.span.to(value.span))
            self.end_of_stmt()
            return node
        node = ExprStmt(expr, span=expr.span)
        self.end_of_stmt()
        return node

    def assign_target(
        self, expr: Expr, last_plain_call: bool, eq_span: SourceSpan
    ) -> LocalRef | MethodCall:
        if isinstance(expr, LocalRef):
            return expr
        if isinstance(expr, MethodCall) and not expr.args and last_plain_call:
            return expr
        raise self.fail("invalid assignment target", eq_span)

    # --- expressions ---

    def starts_expr(self, tok: Token) -> bool:
        if tok.kind in (
            TokenKind.STRING,
            TokenKind.INT,
            TokenKind.IVAR,
            TokenKind.IDENT,
            TokenKind.CONST,
        ):
            return True
        return tok.kind is TokenKind.KEYWORD and tok.lexeme in _EXPR_START_KEYWORDS

    def expr(self, command: bool = False) -> Expr:
        expr, _ = self.postfix(command)
        return expr

    def expr_list(self) -> list[Expr]:
        args = [self.expr()]
        while self.peek().is_op(","):
            self.advance()
            args.append(self.expr())
        return args

    def postfix(self, command: bool) -> tuple[Expr, bool]:
        """Parse `primary { . ident [(args)] }`.

        Returns the expression and whether the trailing segment is a call
        without parentheses (the only legal attribute-write target form).
        In command position a trailing paren-less call may take bare args.
        """
        expr = self.primary()
        last_plain_call = False
        while self.peek().is_op("."):
            self.advance()
            name_tok = self.peek()
            if name_tok.kind is not TokenKind.IDENT:
                raise self.fail(
                    f"expected method name after '.', got {_describe(name_tok)}",
                    name_tok.span,
                )
            self.advance()
            args: list[Expr] = []
            end_span = name_tok.span
            last_plain_call = True
            if self.peek().is_op("("):
                self.advance()
                if not self.peek().is_op(")"):
                    args = self.expr_list()
                close = self.expect_op(")")
                end_span = close.span
                last_plain_call = False
            expr = MethodCall(expr, name_tok.lexeme, args, span=expr.span.to(end_span))
        if (
            command
            and last_plain_call
            and isinstance(expr, MethodCall)
            and self.starts_expr(self.peek())
        ):
            expr.args = self.expr_list()
            expr.span = expr.span.to(expr.args[-1].span)
            last_plain_call = False
        return expr, last_plain_call

    def primary(self) -> Expr:
        tok = self.peek()
        if tok.kind is TokenKind.STRING:
            self.advance()
            return StringLit(string_value(tok.lexeme), span=tok.span)
        if tok.kind is TokenKind.INT:
            self.advance()
            return IntLit(int(tok.lexeme), span=tok.span)
        if tok.kind is TokenKind.IVAR:
            self.advance()
            return IVarRef(tok.lexeme, span=tok.span)
        if tok.kind is TokenKind.IDENT:
            self.advance()
            return LocalRef(tok.lexeme, span=tok.span)
        if tok.kind is TokenKind.CONST:
            self.advance()
            return ConstRef(tok.lexeme, span=tok.span)
        if tok.kind is TokenKind.KEYWORD:
            if tok.lexeme == "nil":
                self.advance()
                return NilLit(span=tok.span)
            if tok.lexeme == "true":
                self.advance()
                return BoolLit(True, span=tok.span)
            if tok.lexeme == "false":
                self.advance()
                return BoolLit(False, span=tok.span)
            if tok.lexeme == "self":
                self.advance()
                return SelfRef(span=tok.span)
        raise self.fail(f"expected expression, got {_describe(tok)}", tok.span)


def target_to_stmt(target: LocalRef | MethodCall, value: Expr, span: SourceSpan) -> Stmt:
    if isinstance(target, LocalRef):
        return LocalAssign(target.name, value, span=span)
    return AttrWrite(target.receiver, target.name, value, span=span)


def _describe(tok: Token) -> str:
    if tok.kind is TokenKind.EOF:
        return "end of input"
    if tok.kind is TokenKind.NEWLINE:
        return "end of line"
    return f"'{tok.lexeme}'"


def parse_program(tokens: list[Token]) -> Program:
    """Parse a token sequence into a Program.

    Raises ParseFailure carrying every collected ParseError if the input
    is not well formed.
    """
    parser = _Parser(tokens)
    tree = parser.program()
    if parser.errors:
        raise ParseFailure(parser.errors)
    return tree


def parse_source(source: str, file_id: str = "<input>") -> Program:
    """Convenience: tokenize and parse in one step."""
    return parse_program(tokenize(source, file_id))
