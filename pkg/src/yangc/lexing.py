"""Tokenizer for YANG source text."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class SourceSpan:
    """Region of a source file; lines and columns are 1-based, end exclusive."""

    file: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self) -> None:
        if self.start_line < 1 or self.start_col < 1 or self.end_line < 1 or self.end_col < 1:
            raise ValueError(f"span positions must be >= 1: {self}")
        if (self.start_line, self.start_col) > (self.end_line, self.end_col):
            raise ValueError(f"span start after end: {self}")

    @classmethod
    def point(cls, file: str, line: int = 1, col: int = 1) -> "SourceSpan":
        return cls(file, line, col, line, col)

    def cover(self, other: "SourceSpan") -> "SourceSpan":
        return SourceSpan(
            self.file, self.start_line, self.start_col, other.end_line, other.end_col
        )

    def __str__(self) -> str:
        return f"{self.file}:{self.start_line}:{self.start_col}"


class TokenKind(enum.Enum):
    IDENTIFIER = "identifier"
    PREFIXED_IDENTIFIER = "prefixed identifier"
    STRING = "string"
    NUMBER = "number"
    LBRACE = "'{'"
    RBRACE = "'}'"
    SEMICOLON = "';'"
    PLUS = "'+'"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: SourceSpan


IDENTIFIER_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*")
_PREFIXED_RE = re.compile(rf"({IDENTIFIER_RE.pattern}):({IDENTIFIER_RE.pattern})")
# Plain decimals, plus the parenthesized width of `type bits (32)`.
_NUMBER_RE = re.compile(r"[+-]?[0-9]+(\.[0-9]+)?([eE][+-]?[0-9]+)?|\([0-9]+\)")

# Typographic quotes look like delimiters but are not YANG syntax.
_LOOKALIKE_QUOTES = frozenset("`‘’“”")
_DQ_ESCAPES = {"n": "\n", "t": "\t", '"': '"', "\\": "\\"}
_SINGLE_CHAR = {"{": TokenKind.LBRACE, "}": TokenKind.RBRACE, ";": TokenKind.SEMICOLON}


class _Scanner:
    def __init__(self, source: str, file_id: str):
        self.src = source
        self.file = file_id
        self.pos = 0
        self.line = 1
        self.col = 1

    def peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.src[i] if i < len(self.src) else ""

    def advance(self) -> str:
        ch = self.src[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return ch

    def span_from(self, line: int, col: int) -> SourceSpan:
        return SourceSpan(self.file, line, col, self.line, self.col)

    def fail(self, code: str, message: str, line: int, col: int):
        from .diagnostics import YangSyntaxError, error

        raise YangSyntaxError(error(code, message, self.span_from(line, col)))


def _classify_word(word: str) -> TokenKind:
    if IDENTIFIER_RE.fullmatch(word):
        return TokenKind.IDENTIFIER
    if _PREFIXED_RE.fullmatch(word):
        return TokenKind.PREFIXED_IDENTIFIER
    if _NUMBER_RE.fullmatch(word):
        return TokenKind.NUMBER
    # Any other unquoted word (dates, paths, ranges) is an unquoted string.
    return TokenKind.STRING


def _is_illegal(ch: str) -> bool:
    if ch in _LOOKALIKE_QUOTES:
        return True
    return (ord(ch) < 0x20 and ch not in "\t\n\r") or ord(ch) == 0x7F


def tokenize(source: str, file_id: str = "<string>") -> list[Token]:
    """Split YANG text into tokens.

    Comments are dropped, quoted strings are decoded, and quoted strings
    joined with ``+`` come back as a single STRING token. Raises
    :class:`~yangc.diagnostics.YangSyntaxError` on the first lexical error.
    """
    sc = _Scanner(source, file_id)
    tokens: list[Token] = []
    # Index in `tokens` of a quoted string that a following `+` may extend.
    joinable: int | None = None
    pending_plus: Token | None = None

    while sc.pos < len(sc.src):
        ch = sc.peek()
        if ch in " \t\r\n":
            sc.advance()
            continue
        line, col = sc.line, sc.col
        if ch == "/" and sc.peek(1) == "/":
            while sc.pos < len(sc.src) and sc.peek() != "\n":
                sc.advance()
            continue
        if ch == "/" and sc.peek(1) == "*":
            sc.advance()
            sc.advance()
            while not (sc.peek() == "*" and sc.peek(1) == "/"):
                if sc.pos >= len(sc.src):
                    sc.fail("UNTERMINATED_COMMENT", "unterminated block comment", line, col)
                sc.advance()
            sc.advance()
            sc.advance()
            continue

        if ch in ('"', "'"):
            text = _scan_quoted(sc, ch, line, col)
            span = sc.span_from(line, col)
            if pending_plus is not None and joinable is not None:
                prev = tokens[joinable]
                tokens[joinable] = Token(TokenKind.STRING, prev.text + text, prev.span.cover(span))
                pending_plus = None
                continue
            if pending_plus is not None:
                tokens.append(pending_plus)
                pending_plus = None
            tokens.append(Token(TokenKind.STRING, text, span))
            joinable = len(tokens) - 1
            continue

        if pending_plus is not None:
            tokens.append(pending_plus)
            pending_plus = None

        if ch in _SINGLE_CHAR:
            sc.advance()
            tokens.append(Token(_SINGLE_CHAR[ch], ch, sc.span_from(line, col)))
            joinable = None
            continue

        if _is_illegal(ch):
            sc.fail("ILLEGAL_CHAR", f"illegal character {ch!r}", line, col)

        word = _scan_word(sc)
        span = sc.span_from(line, col)
        if word == "+" and joinable is not None:
            pending_plus = Token(TokenKind.PLUS, "+", span)
            continue
        if word == "+":
            tokens.append(Token(TokenKind.PLUS, "+", span))
        else:
            tokens.append(Token(_classify_word(word), word, span))
        joinable = None

    if pending_plus is not None:
        tokens.append(pending_plus)
    return tokens


def _scan_quoted(sc: _Scanner, quote: str, line: int, col: int) -> str:
    sc.advance()
    out: list[str] = []
    while True:
        if sc.pos >= len(sc.src):
            sc.fail("UNTERMINATED_STRING", "unterminated quoted string", line, col)
        ch = sc.advance()
        if ch == quote:
            return "".join(out)
        if quote == '"' and ch == "\\" and sc.pos < len(sc.src):
            nxt = sc.peek()
            if nxt in _DQ_ESCAPES:
                sc.advance()
                out.append(_DQ_ESCAPES[nxt])
                continue
        out.append(ch)


def _scan_word(sc: _Scanner) -> str:
    start = sc.pos
    while sc.pos < len(sc.src):
        ch = sc.peek()
        if ch in " \t\r\n;{}":
            break
        if ch == "/" and sc.peek(1) in ("/", "*"):
            break
        if ch in ('"', "'"):
            line, col = sc.line, sc.col
            sc.fail("ILLEGAL_CHAR", f"quote character {ch!r} inside unquoted string", line, col)
        if _is_illegal(ch):
            sc.fail("ILLEGAL_CHAR", f"illegal character {ch!r}", sc.line, sc.col)
        sc.advance()
    return sc.src[start : sc.pos]
