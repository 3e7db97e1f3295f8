"""Generic statement-tree parser.

Every YANG statement has the shape ``keyword [argument] (";" | "{" stmts "}")``.
The parser knows nothing about individual keywords; cardinality and
placement rules are applied later by :mod:`yangc.astbuild`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .diagnostics import YangSyntaxError, error
from .lexing import SourceSpan, Token, TokenKind, tokenize

_ARGUMENT_KINDS = (
    TokenKind.IDENTIFIER,
    TokenKind.PREFIXED_IDENTIFIER,
    TokenKind.NUMBER,
    TokenKind.STRING,
)
TOP_LEVEL_KEYWORDS = ("module", "submodule")


@dataclass
class RawStatement:
    keyword: str
    argument: Optional[str] = None
    children: list["RawStatement"] = field(default_factory=list)
    span: SourceSpan = field(default=SourceSpan.point("<string>"), compare=False, repr=False)

    @property
    def prefix(self) -> Optional[str]:
        head, sep, _ = self.keyword.partition(":")
        return head if sep else None

    @property
    def is_extension_use(self) -> bool:
        return ":" in self.keyword

    def find(self, keyword: str) -> Optional["RawStatement"]:
        return next((c for c in self.children if c.keyword == keyword), None)

    def walk(self) -> Iterator["RawStatement"]:
        yield self
        for child in self.children:
            yield from child.walk()


class _Parser:
    def __init__(self, tokens: list[Token], file_id: str):
        self.tokens = tokens
        self.i = 0
        self.file = file_id

    def peek(self) -> Optional[Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def eof_span(self) -> SourceSpan:
        if self.tokens:
            s = self.tokens[-1].span
            return SourceSpan(self.file, s.end_line, s.end_col, s.end_line, s.end_col)
        return SourceSpan.point(self.file)

    def fail(self, code: str, message: str, span: SourceSpan):
        raise YangSyntaxError(error(code, message, span))

    def statement(self) -> RawStatement:
        tok = self.peek()
        if tok is None:
            self.fail("UNEXPECTED_TOKEN", "expected a statement keyword, found end of file", self.eof_span())
        if tok.kind is TokenKind.RBRACE:
            self.fail("UNBALANCED_BRACES", "unmatched '}'", tok.span)
        if tok.kind not in (TokenKind.IDENTIFIER, TokenKind.PREFIXED_IDENTIFIER):
            self.fail("UNEXPECTED_TOKEN", f"expected a statement keyword, found {tok.kind.value} {tok.text!r}", tok.span)
        kw = self.next()
        stmt = RawStatement(kw.text, span=kw.span)

        tok = self.peek()
        if tok is not None and tok.kind in _ARGUMENT_KINDS:
            arg = self.next()
            stmt.argument = arg.text
            # `type bits (32);` carries a parenthesized width after the name.
            nxt = self.peek()
            if (
                nxt is not None
                and nxt.kind is TokenKind.NUMBER
                and nxt.text.startswith("(")
            ):
                self.next()
                stmt.argument = f"{arg.text} {nxt.text}"

        tok = self.peek()
        if tok is None:
            self.fail("UNEXPECTED_TOKEN", f"statement '{stmt.keyword}' not terminated by ';' or '{{'", self.eof_span())
        if tok.kind is TokenKind.SEMICOLON:
            end = self.next()
            stmt.span = kw.span.cover(end.span)
            return stmt
        if tok.kind is TokenKind.LBRACE:
            open_tok = self.next()
            while True:
                tok = self.peek()
                if tok is None:
                    self.fail("UNBALANCED_BRACES", f"'{{' of statement '{stmt.keyword}' is never closed", open_tok.span)
                if tok.kind is TokenKind.RBRACE:
                    end = self.next()
                    stmt.span = kw.span.cover(end.span)
                    return stmt
                stmt.children.append(self.statement())
        self.fail("UNEXPECTED_TOKEN", f"unexpected {tok.kind.value} {tok.text!r} after '{stmt.keyword}'", tok.span)


def parse(tokens: list[Token], file_id: Optional[str] = None) -> RawStatement:
    """Parse one specification file's tokens into its top-level statement."""
    if file_id is None:
        file_id = tokens[0].span.file if tokens else "<string>"
    p = _Parser(tokens, file_id)
    if not tokens:
        p.fail("NOT_A_MODULE", "empty input: expected 'module' or 'submodule'", p.eof_span())
    root = p.statement()
    if root.keyword not in TOP_LEVEL_KEYWORDS:
        p.fail("NOT_A_MODULE", f"top-level statement is '{root.keyword}', expected 'module' or 'submodule'", root.span)
    extra = p.peek()
    if extra is not None:
        if extra.kind is TokenKind.RBRACE:
            p.fail("UNBALANCED_BRACES", "unmatched '}'", extra.span)
        p.fail("MULTIPLE_TOP_LEVEL", "only one module or submodule may appear in a file", extra.span)
    return root


def parse_text(source: str, file_id: str = "<string>") -> RawStatement:
    return parse(tokenize(source, file_id), file_id)


def quote(text: str) -> str:
    escaped = (
        text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\t", "\\t")
    )
    return f'"{escaped}"'


def to_yang(stmt: RawStatement, indent: int = 0) -> str:
    """Serialize a statement tree as canonical YANG text."""
    pad = "  " * indent
    head = stmt.keyword if stmt.argument is None else f"{stmt.keyword} {quote(stmt.argument)}"
    if not stmt.children:
        return f"{pad}{head};\n"
    body = "".join(to_yang(c, indent + 1) for c in stmt.children)
    return f"{pad}{head} {{\n{body}{pad}}}\n"
