"""Built-in types, typedef resolution and restriction checking.

Numeric value spaces are kept as ascending, disjoint closed intervals of
:class:`fractions.Fraction`, so float endpoints compare exactly as the
decimals that were written, with no epsilon. Patterns use Python's
:mod:`re` dialect and must match the whole value.
"""

from __future__ import annotations

import base64
import binascii
import re
import sys
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Protocol, Union

from . import nodes as n

Number = Fraction
Interval = tuple[Fraction, Fraction]


class YangTypeError(Exception):
    """A type or restriction problem; ``code`` is a diagnostic code."""

    def __init__(self, code: str, message: str, node: Optional[n.Statement] = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.node = node
        self.cycle: tuple = ()


@dataclass(frozen=True)
class BaseType:
    name: str
    family: str  # integer, float, string, boolean, enumeration, bits, keyref, empty, binary
    bounds: Optional[Interval] = None

    @property
    def is_numeric(self) -> bool:
        return self.family in ("integer", "float")


def _int_type(name: str, bits: int, signed: bool) -> BaseType:
    if signed:
        lo, hi = -(2 ** (bits - 1)), 2 ** (bits - 1) - 1
    else:
        lo, hi = 0, 2**bits - 1
    return BaseType(name, "integer", (Fraction(lo), Fraction(hi)))


_FLOAT32_MAX = Fraction((2 - Fraction(1, 2**23)) * 2**127)
_FLOAT64_MAX = Fraction(sys.float_info.max)

BASE_TYPES: dict[str, BaseType] = {
    t.name: t
    for t in [
        _int_type("int8", 8, True),
        _int_type("int16", 16, True),
        _int_type("int32", 32, True),
        _int_type("int64", 64, True),
        _int_type("uint8", 8, False),
        _int_type("uint16", 16, False),
        _int_type("uint32", 32, False),
        _int_type("uint64", 64, False),
        BaseType("float32", "float", (-_FLOAT32_MAX, _FLOAT32_MAX)),
        BaseType("float64", "float", (-_FLOAT64_MAX, _FLOAT64_MAX)),
        BaseType("string", "string"),
        BaseType("boolean", "boolean"),
        BaseType("enumeration", "enumeration"),
        BaseType("bits", "bits"),
        BaseType("keyref", "keyref"),
        BaseType("empty", "empty"),
        BaseType("binary", "binary"),
    ]
}

LENGTH_BOUNDS: Interval = (Fraction(0), Fraction(2**64 - 1))

# Restriction kinds each type family accepts.
_ALLOWED_RESTRICTIONS = {
    "integer": {"range"},
    "float": {"range"},
    "string": {"length", "pattern"},
    "binary": {"length"},
    "bits": {"bit-width"},
    "keyref": {"path"},
}


# -- restrictions -------------------------------------------------------------


@dataclass(frozen=True)
class Bound:
    """Interval endpoint; ``marker`` is "min" or "max" for symbolic bounds."""

    value: Optional[Fraction] = None
    marker: Optional[str] = None

    def resolve(self, parent: tuple[Interval, ...]) -> Fraction:
        if self.marker == "min":
            return parent[0][0]
        if self.marker == "max":
            return parent[-1][1]
        return self.value


@dataclass(frozen=True)
class Range:
    parts: tuple[tuple[Bound, Bound], ...]
    kind = "range"


@dataclass(frozen=True)
class Length:
    parts: tuple[tuple[Bound, Bound], ...]
    kind = "length"


@dataclass(frozen=True)
class Pattern:
    regex: str
    kind = "pattern"


@dataclass(frozen=True)
class BitWidth:
    width: int
    kind = "bit-width"


@dataclass(frozen=True)
class Path:
    path: str
    kind = "path"


Restriction = Union[Range, Length, Pattern, BitWidth, Path]

_NUM_RE = re.compile(r"[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?")


def _parse_bound(text: str, integer: bool) -> Bound:
    text = text.strip()
    if text in ("min", "max"):
        return Bound(marker=text)
    if not _NUM_RE.fullmatch(text):
        raise YangTypeError("INVALID_RESTRICTION", f"invalid bound {text!r}")
    value = Fraction(text)
    if integer and value.denominator != 1:
        raise YangTypeError("INVALID_RESTRICTION", f"bound {text!r} is not an integer")
    return Bound(value=value)


def parse_intervals(text: str, integer: bool = True) -> tuple[tuple[Bound, Bound], ...]:
    """Parse ``"1 .. 10 | 20 | 30..max"`` into (lo, hi) bound pairs."""
    parts = []
    for chunk in text.split("|"):
        if not chunk.strip():
            raise YangTypeError("INVALID_RESTRICTION", f"empty interval in {text!r}")
        lo_text, sep, hi_text = chunk.partition("..")
        lo = _parse_bound(lo_text, integer)
        hi = _parse_bound(hi_text, integer) if sep else lo
        parts.append((lo, hi))
    return tuple(parts)


def parse_restriction(stmt: n.RestrictionStmt, family: str) -> Restriction:
    if stmt.kind == "range":
        return Range(parse_intervals(stmt.argument, integer=family == "integer"))
    if stmt.kind == "length":
        return Length(parse_intervals(stmt.argument, integer=True))
    if stmt.kind == "pattern":
        try:
            re.compile(stmt.argument)
        except re.error as exc:
            raise YangTypeError("INVALID_RESTRICTION", f"invalid pattern {stmt.argument!r}: {exc}")
        return Pattern(stmt.argument)
    if stmt.kind == "bit-width":
        width = int(stmt.argument)
        if width < 1:
            raise YangTypeError("INVALID_RESTRICTION", "bit width must be positive")
        return BitWidth(width)
    if stmt.kind == "path":
        return Path(stmt.argument)
    raise ValueError(stmt.kind)


# -- value spaces ----------------------------------------------------------------


@dataclass(frozen=True)
class ValueSpace:
    """The set of values a type admits.

    ``intervals`` holds the numeric range (integer/float) or the admitted
    lengths (string/binary); ``patterns`` must all match.
    """

    family: str
    intervals: tuple[Interval, ...] = ()
    patterns: tuple[str, ...] = ()
    bit_width: Optional[int] = None
    enums: tuple[str, ...] = ()
    path: Optional[str] = None

    def contains_number(self, value: Fraction) -> bool:
        return any(lo <= value <= hi for lo, hi in self.intervals)

    def admits_length(self, length: int) -> bool:
        return any(lo <= length <= hi for lo, hi in self.intervals)


def base_space(base: BaseType) -> ValueSpace:
    if base.is_numeric:
        return ValueSpace(base.family, intervals=(base.bounds,))
    if base.family in ("string", "binary"):
        return ValueSpace(base.family, intervals=(LENGTH_BOUNDS,))
    return ValueSpace(base.family)


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else str(float(x)) if float(x) == x else str(x)


def _fmt_interval(iv: Interval) -> str:
    lo, hi = iv
    return _fmt(lo) if lo == hi else f"{_fmt(lo)}..{_fmt(hi)}"


def _coalesce(parent: tuple[Interval, ...], integer: bool) -> list[Interval]:
    # 1..5 | 6..10 leaves no integer out, so it covers 3..8.
    merged: list[Interval] = []
    for lo, hi in parent:
        if merged and integer and lo <= merged[-1][1] + 1:
            merged[-1] = (merged[-1][0], max(hi, merged[-1][1]))
        else:
            merged.append((lo, hi))
    return merged


def _narrow_intervals(parts, parent: tuple[Interval, ...], what: str, integer: bool = True) -> tuple[Interval, ...]:
    resolved = [(lo.resolve(parent), hi.resolve(parent)) for lo, hi in parts]
    prev_hi = None
    for lo, hi in resolved:
        if lo > hi:
            raise YangTypeError("INVALID_RESTRICTION", f"{what} interval {_fmt(lo)}..{_fmt(hi)} has lower bound above upper bound")
        if prev_hi is not None and lo <= prev_hi:
            raise YangTypeError("INVALID_RESTRICTION", f"{what} intervals must be disjoint and ascending")
        prev_hi = hi
    cover = _coalesce(parent, integer)
    for iv in resolved:
        lo, hi = iv
        if not any(plo <= lo and hi <= phi for plo, phi in cover):
            allowed = " | ".join(_fmt_interval(p) for p in parent)
            raise YangTypeError(
                "RESTRICTION_WIDENS",
                f"{what} {_fmt_interval(iv)} is not within the parent's {what} {allowed}",
            )
    return tuple(resolved)


def check_restriction_subset(child: Restriction, parent_space: ValueSpace) -> ValueSpace:
    """Apply ``child`` on top of ``parent_space``.

    Returns the narrowed value space. Raises :class:`YangTypeError` with
    RESTRICTION_WIDENS when ``child`` admits a value the parent does not,
    or RESTRICTION_KIND when the restriction does not apply to the type.
    """
    allowed = _ALLOWED_RESTRICTIONS.get(parent_space.family, set())
    if child.kind not in allowed:
        raise YangTypeError(
            "RESTRICTION_KIND", f"a {child.kind} restriction does not apply to {parent_space.family} types"
        )
    if isinstance(child, (Range, Length)):
        what = "range" if isinstance(child, Range) else "length"
        integer = isinstance(child, Length) or parent_space.family == "integer"
        narrowed = _narrow_intervals(child.parts, parent_space.intervals, what, integer)
        return replace(parent_space, intervals=narrowed)
    if isinstance(child, Pattern):
        # Patterns stack: a value must match every one along the chain.
        return replace(parent_space, patterns=parent_space.patterns + (child.regex,))
    if isinstance(child, BitWidth):
        if parent_space.bit_width is not None and child.width > parent_space.bit_width:
            raise YangTypeError(
                "RESTRICTION_WIDENS", f"bit width {child.width} exceeds the parent's width {parent_space.bit_width}"
            )
        return replace(parent_space, bit_width=child.width)
    if isinstance(child, Path):
        return replace(parent_space, path=child.path)
    raise TypeError(child)


# -- typedef resolution ----------------------------------------------------------


class TypedefScope(Protocol):
    """What :func:`resolve_type` needs from the semantic scope.

    ``lookup_typedef`` returns the typedef and the scope it was declared in,
    or None; it raises :class:`YangTypeError` (UNKNOWN_PREFIX) for an
    unbound prefix.
    """

    def lookup_typedef(self, name: str) -> Optional[tuple[n.Typedef, "TypedefScope"]]: ...


@dataclass
class ResolvedType:
    base: BaseType
    chain: list[str] = field(default_factory=list)
    space: ValueSpace = None
    default: Optional[tuple[str, str]] = None  # (value, typedef that supplied it)

    @property
    def effective_restriction(self) -> ValueSpace:
        return self.space


def resolve_type(spec: n.TypeSpec, scope: TypedefScope, _seen: tuple = ()) -> ResolvedType:
    """Follow ``spec`` through typedefs down to a built-in type.

    Restrictions along the chain are applied from the base upwards, each
    checked to narrow the one below it; the returned ``space`` is the
    effective value space of ``spec``.
    """
    found = None if spec.prefix is None and spec.name in BASE_TYPES else scope.lookup_typedef(spec.name)
    if found is None:
        if spec.name in BASE_TYPES:
            base = BASE_TYPES[spec.name]
            resolved = ResolvedType(base=base, space=base_space(base))
        else:
            raise YangTypeError("UNKNOWN_TYPE", f"unknown type '{spec.name}'", spec)
    else:
        typedef, td_scope = found
        if any(td is typedef for td in _seen):
            start = next(i for i, td in enumerate(_seen) if td is typedef)
            names = " -> ".join([td.name for td in _seen[start:]] + [typedef.name])
            exc = YangTypeError("CIRCULAR_TYPEDEF", f"circular typedef chain {names}", spec)
            exc.cycle = _seen[start:]
            raise exc
        inner = resolve_type(typedef.type, td_scope, _seen + (typedef,))
        default = inner.default
        if typedef.default is not None:
            default = (typedef.default, typedef.name)
        resolved = ResolvedType(
            base=inner.base, chain=[typedef.name] + inner.chain, space=inner.space, default=default
        )

    space = resolved.space
    if spec.enums:
        if resolved.base.family != "enumeration" or resolved.chain:
            raise YangTypeError("RESTRICTION_KIND", f"enum statements are only allowed on the built-in enumeration type", spec)
        names = [e.name for e in spec.enums]
        dup = next((x for i, x in enumerate(names) if x in names[:i]), None)
        if dup is not None:
            raise YangTypeError("INVALID_RESTRICTION", f"enum '{dup}' declared twice", spec)
        space = replace(space, enums=tuple(names))
    elif resolved.base.family == "enumeration" and not resolved.chain:
        raise YangTypeError("RESTRICTION_KIND", "the enumeration type requires at least one enum", spec)
    if spec.restriction is not None:
        try:
            restriction = parse_restriction(spec.restriction, resolved.base.family)
            space = check_restriction_subset(restriction, space)
        except YangTypeError as exc:
            exc.node = spec.restriction
            raise
    if resolved.base.family == "keyref" and space.path is None:
        raise YangTypeError("MISSING_SUBSTATEMENT", "the keyref type requires a path", spec)
    resolved.space = space
    return resolved


# -- default values --------------------------------------------------------------

_INT_RE = re.compile(r"[+-]?[0-9]+")


def validate_default(text: str, resolved: ResolvedType) -> None:
    """Check that ``text`` is a legal value of ``resolved``.

    Raises :class:`YangTypeError` with DEFAULT_SYNTAX, DEFAULT_OUT_OF_RANGE
    or DEFAULT_NOT_ENUM.
    """
    family = resolved.base.family
    space = resolved.space
    if family == "integer":
        if not _INT_RE.fullmatch(text):
            raise YangTypeError("DEFAULT_SYNTAX", f"default {text!r} is not an integer")
        value = Fraction(int(text))
    elif family == "float":
        if not _NUM_RE.fullmatch(text):
            raise YangTypeError("DEFAULT_SYNTAX", f"default {text!r} is not a decimal number")
        value = Fraction(text)
    else:
        value = None
    if value is not None:
        if not space.contains_number(value):
            allowed = " | ".join(_fmt_interval(iv) for iv in space.intervals)
            raise YangTypeError("DEFAULT_OUT_OF_RANGE", f"default {text} is outside {allowed}")
        return

    if family == "boolean":
        if text not in ("true", "false"):
            raise YangTypeError("DEFAULT_SYNTAX", f"default {text!r} is not true or false")
    elif family == "enumeration":
        if text not in space.enums:
            raise YangTypeError("DEFAULT_NOT_ENUM", f"default {text!r} is not one of {', '.join(space.enums)}")
    elif family == "string":
        if not space.admits_length(len(text)):
            raise YangTypeError("DEFAULT_OUT_OF_RANGE", f"default {text!r} has length {len(text)} outside the allowed lengths")
        for regex in space.patterns:
            if re.fullmatch(regex, text) is None:
                raise YangTypeError("DEFAULT_OUT_OF_RANGE", f"default {text!r} does not match pattern {regex!r}")
    elif family == "binary":
        try:
            decoded = base64.b64decode(text, validate=True)
        except (binascii.Error, ValueError):
            raise YangTypeError("DEFAULT_SYNTAX", f"default {text!r} is not base64")
        if not space.admits_length(len(decoded)):
            raise YangTypeError("DEFAULT_OUT_OF_RANGE", f"default decodes to {len(decoded)} octets, outside the allowed lengths")
    elif family == "empty":
        raise YangTypeError("DEFAULT_SYNTAX", "the empty type cannot have a default")
    # bits and keyref defaults are not checked: bit names are not declared in
    # this language generation, and keyref values only exist at run time.
