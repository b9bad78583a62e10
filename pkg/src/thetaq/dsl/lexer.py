"""Tokenizer for ``.qid`` identity files."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from ..errors import LexError


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    offset: int
    length: int = 1

    def __str__(self):
        return f"line {self.line}, column {self.column}"

    def contains(self, offset: int) -> bool:
        return self.offset <= offset < self.offset + max(self.length, 1)


class Tok(enum.Enum):
    IDENT = "identifier"
    INT = "integer"
    RATIONAL = "rational"
    STRING = "string"
    PLUS = "'+'"
    MINUS = "'-'"
    STAR = "'*'"
    SLASH = "'/'"
    CARET = "'^'"
    LPAREN = "'('"
    RPAREN = "')'"
    LBRACE = "'{'"
    RBRACE = "'}'"
    LBRACKET = "'['"
    RBRACKET = "']'"
    COLON = "':'"
    COMMA = "','"
    SEMI = "';'"
    EQUALS = "'='"
    IDENTITY = "'identity'"
    VARS = "'vars'"
    WHERE = "'where'"
    LHS = "'lhs'"
    RHS = "'rhs'"
    TAGS = "'tags'"
    PI = "'pi'"
    TAU = "'tau'"
    EOF = "end of input"


KEYWORDS = {
    "identity": Tok.IDENTITY,
    "vars": Tok.VARS,
    "where": Tok.WHERE,
    "lhs": Tok.LHS,
    "rhs": Tok.RHS,
    "tags": Tok.TAGS,
    "pi": Tok.PI,
    "tau": Tok.TAU,
}

PUNCT = {
    "+": Tok.PLUS,
    "-": Tok.MINUS,
    "*": Tok.STAR,
    "/": Tok.SLASH,
    "^": Tok.CARET,
    "(": Tok.LPAREN,
    ")": Tok.RPAREN,
    "{": Tok.LBRACE,
    "}": Tok.RBRACE,
    "[": Tok.LBRACKET,
    "]": Tok.RBRACKET,
    ":": Tok.COLON,
    ",": Tok.COMMA,
    ";": Tok.SEMI,
    "=": Tok.EQUALS,
}


@dataclass(frozen=True)
class Token:
    kind: Tok
    text: str
    span: SourceSpan
    value: object = None

    def __repr__(self):
        if self.kind in (Tok.IDENT, Tok.INT, Tok.RATIONAL, Tok.STRING):
            return f"{self.kind.name}({self.value})"
        return self.kind.name


def _is_ident_start(ch):
    return ch.isalpha() or ch == "_"


def _is_ident_char(ch):
    return ch.isalnum() or ch == "_"


def tokenize(text: str) -> List[Token]:
    """Split ``text`` into tokens; ``p/q`` written without spaces is one RATIONAL."""
    tokens: List[Token] = []
    i = 0
    line, col = 1, 1
    n = len(text)

    def span(start, start_line, start_col):
        return SourceSpan(start_line, start_col, start, i - start)

    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start, sl, sc = i, line, col
        if ch.isdigit():
            while i < n and text[i].isdigit():
                i += 1
            if i + 1 < n and text[i] == "/" and text[i + 1].isdigit():
                i += 1
                while i < n and text[i].isdigit():
                    i += 1
                lit = text[start:i]
                num, den = lit.split("/")
                if int(den) == 0:
                    col += i - start
                    raise LexError(span(start, sl, sc), f"zero denominator in {lit!r}")
                tok = Token(Tok.RATIONAL, lit, span(start, sl, sc), Fraction(int(num), int(den)))
            else:
                lit = text[start:i]
                tok = Token(Tok.INT, lit, span(start, sl, sc), int(lit))
            if i < n and (_is_ident_char(text[i]) or text[i] == "."):
                raise LexError(SourceSpan(sl, sc + (i - start), i), f"illegal character {text[i]!r} after number")
            col += i - start
            tokens.append(tok)
            continue
        if _is_ident_start(ch):
            while i < n and _is_ident_char(text[i]):
                i += 1
            word = text[start:i]
            col += i - start
            kind = KEYWORDS.get(word, Tok.IDENT)
            tokens.append(Token(kind, word, span(start, sl, sc), word))
            continue
        if ch == '"':
            i += 1
            while i < n and text[i] not in '"\n':
                i += 1
            if i >= n or text[i] != '"':
                raise LexError(SourceSpan(sl, sc, start, i - start), "unterminated string")
            i += 1
            lit = text[start:i]
            col += i - start
            tokens.append(Token(Tok.STRING, lit, span(start, sl, sc), lit[1:-1]))
            continue
        if ch in PUNCT:
            i += 1
            col += 1
            tokens.append(Token(PUNCT[ch], ch, span(start, sl, sc)))
            continue
        raise LexError(SourceSpan(sl, sc, start), f"illegal character {ch!r}")
    tokens.append(Token(Tok.EOF, "", SourceSpan(line, col, n, 0)))
    return tokens
