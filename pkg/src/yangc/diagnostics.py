"""Positioned error and warning records, and their rendering."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .lexing import SourceSpan


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"


# Closed set of diagnostic codes. Keys are stable; values are a short
# description used in documentation and in `yangc -h`-style listings.
CODES: dict[str, str] = {
    # lexical / syntax (fatal for the file)
    "UNTERMINATED_STRING": "quoted string not closed before end of file",
    "UNTERMINATED_COMMENT": "block comment not closed before end of file",
    "ILLEGAL_CHAR": "character not allowed outside a quoted string",
    "UNEXPECTED_TOKEN": "token does not fit the statement grammar",
    "UNBALANCED_BRACES": "missing or extra brace",
    "MULTIPLE_TOP_LEVEL": "more than one top-level statement in a file",
    "NOT_A_MODULE": "top-level statement is neither module nor submodule",
    "FILE_NOT_READABLE": "input file cannot be read",
    # statement structure
    "MISSING_SUBSTATEMENT": "mandatory substatement absent",
    "DUP_SUBSTATEMENT": "substatement occurs more often than allowed",
    "MISPLACED_SUBSTATEMENT": "substatement not allowed in this statement",
    "MISSING_NS_OR_PREFIX": "module without namespace or prefix",
    "LIST_WITHOUT_DATADEF": "list without any data definition",
    "UNKNOWN_KEYWORD": "unprefixed keyword that is not a YANG statement",
    "BAD_ARGUMENT": "statement argument missing or malformed",
    "MISSING_REVISION": "specification has no revision statement",
    # linkage
    "SPEC_NOT_FOUND": "imported or included specification not found",
    "IMPORT_OF_SUBMODULE": "import names a submodule",
    "INCLUDE_OF_MODULE": "include names a module",
    "BELONGS_TO_MISMATCH": "included submodule belongs to another module",
    "DUP_PREFIX": "prefix bound twice in one specification",
    "CIRCULAR_IMPORT": "import chain returns to an importing module",
    "CIRCULAR_INCLUDE": "include chain returns to an including submodule",
    # types
    "UNKNOWN_TYPE": "type name not found in scope",
    "UNKNOWN_PREFIX": "prefix not bound by import or module header",
    "CIRCULAR_TYPEDEF": "typedef chain refers back to itself",
    "RESTRICTION_WIDENS": "restriction admits values outside the parent type",
    "RESTRICTION_KIND": "restriction not applicable to the base type",
    "INVALID_RESTRICTION": "restriction argument malformed",
    "DEFAULT_OUT_OF_RANGE": "default value outside the type's value space",
    "DEFAULT_SYNTAX": "default value not in the type's lexical form",
    "DEFAULT_NOT_ENUM": "default is not a declared enum name",
    # scoping and schema tree
    "DUP_DEFINITION": "typedef, grouping or extension declared twice in one scope",
    "UNKNOWN_GROUPING": "uses names an undeclared grouping",
    "CIRCULAR_GROUPING": "grouping uses itself directly or transitively",
    "UNKNOWN_EXTENSION": "extension keyword not declared in the prefixed module",
    "EXTENSION_ARGUMENT": "extension use argument disagrees with its declaration",
    "DUP_SIBLING": "two sibling schema nodes with the same name",
    "REFINE_TARGET_NOT_FOUND": "refinement names a node absent from the grouping",
    "REFINE_KIND_MISMATCH": "refinement kind differs from the refined node",
    "AUGMENT_TARGET_NOT_FOUND": "augment target path does not resolve",
    "AUGMENT_PAYLOAD_MISMATCH": "augment payload does not suit the target node",
    "AUGMENT_NAME_COLLISION": "augment adds a name already present at the target",
    "PATH_STEP_NOT_FOUND": "schema path step does not resolve",
    "KEY_LEAF_NOT_FOUND": "list key does not name a direct leaf child",
    "DUP_KEY_COMPONENT": "list key names the same leaf twice",
    "KEYREF_TARGET_INVALID": "keyref path does not reach a list key leaf",
    "UNIQUE_NOT_FOUND": "unique component does not resolve",
    "UNIQUE_NOT_LEAF": "unique component is not a leaf",
    "DUP_UNIQUE_COMPONENT": "unique names the same leaf twice",
    "CHOICE_DEFAULT_NOT_FOUND": "choice default does not name a case",
    "INVALID_CONFIG": "config true beneath a config false node",
}


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str
    span: SourceSpan
    related: tuple[SourceSpan, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.code not in CODES:
            raise ValueError(f"unknown diagnostic code {self.code!r}")

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR


def error(code: str, message: str, span: SourceSpan, *related: SourceSpan) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, span, tuple(related))


def warning(code: str, message: str, span: SourceSpan, *related: SourceSpan) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, message, span, tuple(related))


class DiagnosticBag:
    """Ordered, duplicate-free collection of diagnostics.

    Expanding the same grouping at several places reports its internal
    problems once; identical (code, span, message) records are dropped.
    """

    def __init__(self) -> None:
        self._items: list[Diagnostic] = []
        self._seen: set[tuple] = set()

    def add(self, diag: Diagnostic) -> None:
        key = (diag.code, diag.span, diag.message)
        if key not in self._seen:
            self._seen.add(key)
            self._items.append(diag)

    def extend(self, diags: Iterable[Diagnostic]) -> None:
        for d in diags:
            self.add(d)

    def __iter__(self):
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def to_list(self) -> list[Diagnostic]:
        return list(self._items)


def has_errors(diags: Iterable[Diagnostic]) -> bool:
    return any(d.is_error for d in diags)


def _source_order(diags: list[Diagnostic]) -> list[Diagnostic]:
    # Files keep their first-appearance order; within a file sort by position.
    file_rank: dict[str, int] = {}
    for d in diags:
        file_rank.setdefault(d.span.file, len(file_rank))
    return sorted(
        diags,
        key=lambda d: (file_rank[d.span.file], d.span.start_line, d.span.start_col),
    )


def render(diags: Iterable[Diagnostic], format: str = "human") -> str:
    """Render diagnostics as text, one line per record.

    ``human`` gives ``file:line:col: severity[CODE]: message``; ``machine``
    gives one JSON object per line with the fields file, line, col,
    severity, code and message.
    """
    if format not in ("human", "machine"):
        raise ValueError(f"unknown diagnostic format {format!r}")
    ordered = _source_order(list(diags))
    lines = []
    for d in ordered:
        if format == "human":
            lines.append(
                f"{d.span.file}:{d.span.start_line}:{d.span.start_col}: "
                f"{d.severity.value}[{d.code}]: {d.message}"
            )
        else:
            record = {
                "file": d.span.file,
                "line": d.span.start_line,
                "col": d.span.start_col,
                "severity": d.severity.value,
                "code": d.code,
                "message": d.message,
            }
            lines.append(json.dumps(record, ensure_ascii=False))
    return "".join(line + "\n" for line in lines)


class YangSyntaxError(Exception):
    """Fatal lexical or syntax error; processing of the file stops."""

    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


def first_error(diags: Iterable[Diagnostic]) -> Optional[Diagnostic]:
    return next((d for d in diags if d.is_error), None)
