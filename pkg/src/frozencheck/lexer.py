"""Lexer for MiniRuby source.

Tokens carry their raw lexeme and exact source span; spaces and comments
are skipped as trivia, so concatenating lexemes with the skipped trivia
reproduces the input byte for byte. Newlines are significant (they
terminate statements) and are emitted as tokens.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .spans import SourceSpan

KEYWORDS = frozenset(
    {"class", "def", "end", "super", "return", "self", "nil", "true", "false"}
)


class TokenKind(Enum):
    KEYWORD = "keyword"
    CONST = "const"
    IDENT = "ident"
    IVAR = "ivar"
    SYMBOL = "symbol"
    STRING = "string"
    INT = "int"
    OP = "op"
    NEWLINE = "newline"
    EOF = "eof"


@dataclass(frozen=True, slots=True)
class Token:
    kind: TokenKind
    lexeme: str
    span: SourceSpan

    def is_keyword(self, word: str) -> bool:
        return self.kind is TokenKind.KEYWORD and self.lexeme == word

    def is_op(self, op: str) -> bool:
        return self.kind is TokenKind.OP and self.lexeme == op


class LexError(Exception):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span


_TOKEN_RE = re.compile(
    r"""
      (?P<trivia>[ \t\r]+|\#[^\n]*)
    | (?P<newline>\n)
    | (?P<string>"(?:[^"\\\n]|\\.)*")
    | (?P<ivar>@[a-z_][A-Za-z0-9_]*)
    | (?P<symbol>:[a-z_][A-Za-z0-9_]*)
    | (?P<const>[A-Z][A-Za-z0-9_]*)
    | (?P<word>[a-z_][A-Za-z0-9_]*\??)
    | (?P<int>[0-9]+)
    | (?P<op>[=<.,()])
    """,
    re.VERBOSE,
)

_GROUP_KINDS = {
    "string": TokenKind.STRING,
    "ivar": TokenKind.IVAR,
    "symbol": TokenKind.SYMBOL,
    "const": TokenKind.CONST,
    "int": TokenKind.INT,
    "op": TokenKind.OP,
}


def tokenize(source: str, file_id: str = "<input>") -> list[Token]:
    """Lex `source` into a token list ending with an EOF token.

    Raises LexError (with a span) on an unterminated string literal or an
    illegal character.
    """
    tokens: list[Token] = []
    pos = 0
    line = 1
    col = 1
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            here = SourceSpan(file_id, line, col, line, col + 1)
            if source[pos] == '"':
                raise LexError("unterminated string literal", here)
            raise LexError(f"illegal character {source[pos]!r}", here)
        lexeme = m.group(0)
        group = m.lastgroup
        if group == "trivia":
            pos = m.end()
            col += len(lexeme)
            continue
        if group == "newline":
            span = SourceSpan(file_id, line, col, line, col + 1)
            tokens.append(Token(TokenKind.NEWLINE, lexeme, span))
            pos = m.end()
            line += 1
            col = 1
            continue
        span = SourceSpan(file_id, line, col, line, col + len(lexeme))
        if group == "word":
            kind = TokenKind.KEYWORD if lexeme in KEYWORDS else TokenKind.IDENT
        else:
            kind = _GROUP_KINDS[group]  # type: ignore[index]
        tokens.append(Token(kind, lexeme, span))
        pos = m.end()
        col += len(lexeme)
    tokens.append(Token(TokenKind.EOF, "", SourceSpan(file_id, line, col, line, col)))
    return tokens


def string_value(lexeme: str) -> str:
    """Decode a STRING lexeme (strip quotes, resolve \\" and \\\\ escapes)."""
    body = lexeme[1:-1]
    out: list[str] = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\" and i + 1 < len(body):
            nxt = body[i + 1]
            if nxt in ('"', "\\"):
                out.append(nxt)
                i += 2
                continue
        out.append(ch)
        i += 1
    return "".join(out)


def escape_string(value: str) -> str:
    """Inverse of string_value: render a string as a MiniRuby literal."""
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
