"""Build the typed AST from a raw statement tree.

Each statement kind has a table of allowed substatements with their
cardinality. A violation is reported and the offending block is dropped;
building then carries on with the next statement, so :func:`build` always
returns a :class:`~yangc.nodes.Specification`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Callable, Optional

from . import nodes as n
from .diagnostics import Diagnostic, error, warning
from .lexing import IDENTIFIER_RE
from .syntax import RawStatement

# Cardinalities: "?" at most once, "1" exactly once, "*" any number.
Handler = Callable[["_Builder", RawStatement], Any]


@dataclass(frozen=True)
class Rule:
    attr: str
    card: str
    handler: Handler


_PREFIXED_NAME_RE = re.compile(rf"(?:{IDENTIFIER_RE.pattern}:)?{IDENTIFIER_RE.pattern}")
_DATE_RE = re.compile(r"[0-9]{4}-[0-9]{2}-[0-9]{2}")
_TYPE_ARG_RE = re.compile(rf"({_PREFIXED_NAME_RE.pattern})(?:\s*\(([0-9]+)\))?")
_STATUS_VALUES = ("current", "deprecated", "obsolete")


class _Builder:
    def __init__(self) -> None:
        self.diags: list[Diagnostic] = []

    def report(self, code: str, message: str, raw: RawStatement) -> None:
        self.diags.append(error(code, message, raw.span))

    # -- generic machinery -------------------------------------------------

    def gather(self, raw: RawStatement, rules: dict[str, Rule]) -> tuple[dict[str, Any], list[n.ExtensionUse]]:
        """Build the children of ``raw`` according to ``rules``.

        Returns a mapping attr -> value (single) or list (repeated), plus the
        extension uses found among the children. Children that fail to build
        are left out; duplicates beyond the first are reported and dropped.
        """
        values: dict[str, Any] = {}
        for rule in rules.values():
            if rule.card == "*":
                values.setdefault(rule.attr, [])
        seen: dict[str, RawStatement] = {}
        ext_uses: list[n.ExtensionUse] = []
        for child in raw.children:
            if child.is_extension_use:
                ext_uses.append(self.extension_use(child))
                continue
            rule = rules.get(child.keyword)
            if rule is None:
                if child.keyword in ALL_KEYWORDS:
                    self.report(
                        "MISPLACED_SUBSTATEMENT",
                        f"'{child.keyword}' is not allowed in '{raw.keyword}'",
                        child,
                    )
                else:
                    self.report("UNKNOWN_KEYWORD", f"unknown statement '{child.keyword}'", child)
                continue
            if rule.card in ("?", "1"):
                if child.keyword in seen:
                    self.report(
                        "DUP_SUBSTATEMENT",
                        f"'{child.keyword}' may occur at most once in '{raw.keyword}'",
                        child,
                    )
                    continue
                seen[child.keyword] = child
            built = rule.handler(self, child)
            if built is None:
                continue
            if isinstance(built, _Simple):
                ext_uses.extend(built.ext_uses)
                built = built.value
            if rule.card == "*":
                values[rule.attr].append(built)
            else:
                values[rule.attr] = built
        return values, ext_uses

    def require(self, raw: RawStatement, values: dict[str, Any], rules: dict[str, Rule]) -> bool:
        ok = True
        for kw, rule in rules.items():
            if rule.card == "1" and rule.attr not in values:
                # A present but invalid child was already reported.
                if raw.find(kw) is None:
                    self.report(
                        "MISSING_SUBSTATEMENT",
                        f"'{raw.keyword}' must contain a '{kw}' statement",
                        raw,
                    )
                ok = False
        return ok

    def argument(self, raw: RawStatement, pattern: Optional[re.Pattern] = None, what: str = "argument") -> Optional[str]:
        if raw.argument is None:
            self.report("BAD_ARGUMENT", f"'{raw.keyword}' requires an {what}", raw)
            return None
        if pattern is not None and not pattern.fullmatch(raw.argument):
            self.report("BAD_ARGUMENT", f"invalid {what} {raw.argument!r} for '{raw.keyword}'", raw)
            return None
        return raw.argument

    def no_argument(self, raw: RawStatement) -> bool:
        if raw.argument is not None:
            self.report("BAD_ARGUMENT", f"'{raw.keyword}' takes no argument", raw)
            return False
        return True

    def node(self, cls, raw: RawStatement, rules: dict[str, Rule], **fields):
        values, ext_uses = self.gather(raw, rules)
        if not self.require(raw, values, rules):
            return None
        return cls(raw=raw, extension_uses=ext_uses, **fields, **values)

    def extension_use(self, raw: RawStatement) -> n.ExtensionUse:
        prefix, _, name = raw.keyword.partition(":")
        return n.ExtensionUse(raw=raw, keyword_prefix=prefix, keyword_name=name, argument=raw.argument)


class _Simple:
    """Value of a leaf-like substatement plus any extension uses inside it."""

    __slots__ = ("value", "ext_uses")

    def __init__(self, value, ext_uses):
        self.value = value
        self.ext_uses = ext_uses


def _simple(convert: Callable[[_Builder, RawStatement], Any]) -> Handler:
    def handler(b: _Builder, raw: RawStatement):
        ext_uses = []
        for child in raw.children:
            if child.is_extension_use:
                ext_uses.append(b.extension_use(child))
            elif child.keyword in ALL_KEYWORDS:
                b.report("MISPLACED_SUBSTATEMENT", f"'{child.keyword}' is not allowed in '{raw.keyword}'", child)
            else:
                b.report("UNKNOWN_KEYWORD", f"unknown statement '{child.keyword}'", child)
        value = convert(b, raw)
        return None if value is None else _Simple(value, ext_uses)

    return handler


def _to_text(b: _Builder, raw: RawStatement) -> Optional[str]:
    return b.argument(raw)


def _to_identifier(b: _Builder, raw: RawStatement) -> Optional[str]:
    return b.argument(raw, IDENTIFIER_RE, "identifier")


def _to_bool(b: _Builder, raw: RawStatement) -> Optional[bool]:
    arg = b.argument(raw)
    if arg is None:
        return None
    if arg not in ("true", "false"):
        b.report("BAD_ARGUMENT", f"'{raw.keyword}' takes \"true\" or \"false\", not {arg!r}", raw)
        return None
    return arg == "true"


def _to_status(b: _Builder, raw: RawStatement) -> Optional[str]:
    arg = b.argument(raw)
    if arg is not None and arg not in _STATUS_VALUES:
        b.report("BAD_ARGUMENT", f"status must be one of {', '.join(_STATUS_VALUES)}, not {arg!r}", raw)
        return None
    return arg


def _to_min_elements(b: _Builder, raw: RawStatement) -> Optional[int]:
    arg = b.argument(raw)
    if arg is None:
        return None
    if not arg.isdigit():
        b.report("BAD_ARGUMENT", f"min-elements must be a non-negative integer, not {arg!r}", raw)
        return None
    return int(arg)


def _to_max_elements(b: _Builder, raw: RawStatement):
    arg = b.argument(raw)
    if arg is None:
        return None
    if arg == "unbounded":
        return arg
    if not arg.isdigit() or int(arg) == 0:
        b.report("BAD_ARGUMENT", f"max-elements must be a positive integer or 'unbounded', not {arg!r}", raw)
        return None
    return int(arg)


def _to_ordered_by(b: _Builder, raw: RawStatement) -> Optional[str]:
    arg = b.argument(raw)
    if arg is not None and arg not in ("system", "user"):
        b.report("BAD_ARGUMENT", f"ordered-by must be 'system' or 'user', not {arg!r}", raw)
        return None
    return arg


def _to_int(b: _Builder, raw: RawStatement) -> Optional[int]:
    arg = b.argument(raw)
    if arg is None:
        return None
    try:
        return int(arg)
    except ValueError:
        b.report("BAD_ARGUMENT", f"'{raw.keyword}' takes an integer, not {arg!r}", raw)
        return None


def _to_date(b: _Builder, raw: RawStatement) -> Optional[str]:
    return b.argument(raw, _DATE_RE, "date (YYYY-MM-DD)")


TEXT = _simple(_to_text)
IDENT = _simple(_to_identifier)
BOOL = _simple(_to_bool)


def _opt(*pairs: tuple[str, Handler]) -> dict[str, Rule]:
    return {kw: Rule(kw.replace("-", "_"), "?", h) for kw, h in pairs}


DOC_RULES = _opt(("status", _simple(_to_status)), ("description", TEXT), ("reference", TEXT))


# -- statement handlers -----------------------------------------------------


def _must(b: _Builder, raw: RawStatement):
    cond = b.argument(raw, what="condition")
    if cond is None:
        return None
    rules = _opt(("error-message", TEXT), ("error-app-tag", TEXT), ("description", TEXT), ("reference", TEXT))
    return b.node(n.Must, raw, rules, condition=cond)


def _unique(b: _Builder, raw: RawStatement):
    arg = b.argument(raw)
    if arg is None:
        return None
    return b.node(n.Unique, raw, {}, argument=arg)


def _enum(b: _Builder, raw: RawStatement):
    name = b.argument(raw, what="enum name")
    if name is None:
        return None
    rules = {"value": Rule("value", "?", _simple(_to_int)), **DOC_RULES}
    return b.node(n.EnumSpec, raw, rules, name=name)


def _restriction(kind: str) -> Handler:
    def handler(b: _Builder, raw: RawStatement):
        arg = b.argument(raw)
        if arg is None:
            return None
        rules = _opt(("error-message", TEXT), ("error-app-tag", TEXT), ("description", TEXT), ("reference", TEXT))
        return b.node(n.RestrictionStmt, raw, rules, kind=kind, argument=arg)

    return handler


_RESTRICTION_KEYWORDS = ("range", "length", "pattern", "path")


def _type(b: _Builder, raw: RawStatement):
    arg = b.argument(raw, what="type name")
    if arg is None:
        return None
    m = _TYPE_ARG_RE.fullmatch(arg)
    if m is None:
        b.report("BAD_ARGUMENT", f"invalid type name {arg!r}", raw)
        return None
    name, width = m.group(1), m.group(2)
    rules = {"enum": Rule("enums", "*", _enum)}
    rules.update({kw: Rule(kw, "?", _restriction(kw)) for kw in _RESTRICTION_KEYWORDS})
    values, ext_uses = b.gather(raw, rules)
    restrictions = [values.pop(kw) for kw in _RESTRICTION_KEYWORDS if kw in values]
    restrictions.sort(key=lambda r: (r.span.start_line, r.span.start_col))
    if width is not None:
        restrictions.insert(0, n.RestrictionStmt(raw=raw, kind="bit-width", argument=width))
    # Either enums, or a single restriction, never both.
    if len(restrictions) > 1:
        extra = restrictions[1]
        b.report(
            "DUP_SUBSTATEMENT",
            f"type '{name}' may carry only one restriction; '{extra.kind}' is extra",
            extra.raw,
        )
    if restrictions and values["enums"]:
        b.report("MISPLACED_SUBSTATEMENT", f"type '{name}' cannot combine enum and '{restrictions[0].kind}'", values["enums"][0].raw)
        values["enums"] = []
    return n.TypeSpec(
        raw=raw,
        extension_uses=ext_uses,
        name=name,
        enums=values["enums"],
        restriction=restrictions[0] if restrictions else None,
    )


def _typedef(b: _Builder, raw: RawStatement):
    name = b.argument(raw, IDENTIFIER_RE, "identifier")
    if name is None:
        return None
    rules = {
        "type": Rule("type", "1", _type),
        **_opt(("units", TEXT), ("default", TEXT)),
        **DOC_RULES,
    }
    return b.node(n.Typedef, raw, rules, name=name)


def _grouping(b: _Builder, raw: RawStatement):
    name = b.argument(raw, IDENTIFIER_RE, "identifier")
    if name is None:
        return None
    return b.node(n.Grouping, raw, {**DEFINITION_RULES, **DOC_RULES}, name=name)


def _container(b: _Builder, raw: RawStatement):
    name = b.argument(raw, IDENTIFIER_RE, "identifier")
    if name is None:
        return None
    rules = {
        "must": Rule("musts", "*", _must),
        **DEFINITION_RULES,
        **_opt(("presence", BOOL), ("config", BOOL)),
        **DOC_RULES,
    }
    return b.node(n.Container, raw, rules, name=name)


def _leaf(b: _Builder, raw: RawStatement):
    name = b.argument(raw, IDENTIFIER_RE, "identifier")
    if name is None:
        return None
    rules = {
        "type": Rule("type", "1", _type),
        "must": Rule("musts", "*", _must),
        **_opt(("units", TEXT), ("default", TEXT), ("config", BOOL), ("mandatory", BOOL)),
        **DOC_RULES,
    }
    return b.node(n.Leaf, raw, rules, name=name)


def _leaf_list(b: _Builder, raw: RawStatement):
    name = b.argument(raw, IDENTIFIER_RE, "identifier")
    if name is None:
        return None
    rules = {
        "type": Rule("type", "1", _type),
        "must": Rule("musts", "*", _must),
        **_opt(
            ("units", TEXT),
            ("default", TEXT),
            ("config", BOOL),
            ("min-elements", _simple(_to_min_elements)),
            ("max-elements", _simple(_to_max_elements)),
            ("mandatory", BOOL),
        ),
        **DOC_RULES,
    }
    return b.node(n.LeafList, raw, rules, name=name)


def _list(b: _Builder, raw: RawStatement):
    name = b.argument(raw, IDENTIFIER_RE, "identifier")
    if name is None:
        return None
    rules = {
        "must": Rule("musts", "*", _must),
        "unique": Rule("uniques", "*", _unique),
        **DEFINITION_RULES,
        **_opt(
            ("key", TEXT),
            ("config", BOOL),
            ("min-elements", _simple(_to_min_elements)),
            ("max-elements", _simple(_to_max_elements)),
            ("ordered-by", _simple(_to_ordered_by)),
        ),
        **DOC_RULES,
    }
    values, ext_uses = b.gather(raw, rules)
    if not values["datadefs"]:
        if not any(c.keyword in DATADEF_KEYWORDS for c in raw.children):
            b.report("LIST_WITHOUT_DATADEF", f"list '{name}' must contain at least one data definition", raw)
        return None
    return n.ListNode(raw=raw, extension_uses=ext_uses, name=name, **values)


def _anyxml(b: _Builder, raw: RawStatement):
    name = b.argument(raw, IDENTIFIER_RE, "identifier")
    if name is None:
        return None
    rules = {**_opt(("config", BOOL), ("mandatory", BOOL)), **DOC_RULES}
    return b.node(n.AnyXml, raw, rules, name=name)


def _case(b: _Builder, raw: RawStatement):
    name = b.argument(raw, IDENTIFIER_RE, "identifier")
    if name is None:
        return None
    rules = {kw: Rule("datadefs", "*", h) for kw, h in CASE_DATADEF_HANDLERS.items()}
    rules.update(DOC_RULES)
    return b.node(n.Case, raw, rules, name=name)


def _choice(b: _Builder, raw: RawStatement):
    name = b.argument(raw, IDENTIFIER_RE, "identifier")
    if name is None:
        return None
    rules = {"case": Rule("arms", "*", _case)}
    rules.update({kw: Rule("arms", "*", DATADEF_HANDLERS[kw]) for kw in SHORT_CASE_KEYWORDS})
    rules.update(_opt(("default", IDENT), ("mandatory", BOOL)))
    rules.update(DOC_RULES)
    return b.node(n.Choice, raw, rules, name=name)


# Substatements each refinement kind may overlay.
_REFINE_FIELDS: dict[n.RefineKind, dict[str, Rule]] = {
    n.RefineKind.CONTAINER: {
        "must": Rule("musts", "*", _must),
        **_opt(("presence", BOOL), ("config", BOOL)),
    },
    n.RefineKind.LEAF: {
        "must": Rule("musts", "*", _must),
        **_opt(("default", TEXT), ("config", BOOL)),
    },
    n.RefineKind.LEAF_LIST: {
        "must": Rule("musts", "*", _must),
        **_opt(
            ("config", BOOL),
            ("min-elements", _simple(_to_min_elements)),
            ("max-elements", _simple(_to_max_elements)),
        ),
    },
    n.RefineKind.LIST: {
        "must": Rule("musts", "*", _must),
        **_opt(
            ("config", BOOL),
            ("min-elements", _simple(_to_min_elements)),
            ("max-elements", _simple(_to_max_elements)),
        ),
    },
    n.RefineKind.CHOICE: _opt(("default", IDENT), ("mandatory", BOOL)),
    n.RefineKind.CASE: {},
    n.RefineKind.ANYXML: _opt(("config", BOOL), ("mandatory", BOOL)),
}
_NESTED_REFINEMENTS: dict[n.RefineKind, tuple[n.RefineKind, ...]] = {
    n.RefineKind.CONTAINER: (
        n.RefineKind.CONTAINER,
        n.RefineKind.LEAF,
        n.RefineKind.LEAF_LIST,
        n.RefineKind.LIST,
        n.RefineKind.CHOICE,
        n.RefineKind.ANYXML,
    ),
    n.RefineKind.CHOICE: (n.RefineKind.CASE,),
}
_NESTED_REFINEMENTS[n.RefineKind.LIST] = _NESTED_REFINEMENTS[n.RefineKind.CONTAINER]
_NESTED_REFINEMENTS[n.RefineKind.CASE] = _NESTED_REFINEMENTS[n.RefineKind.CONTAINER]


def _refinement(kind: n.RefineKind) -> Handler:
    def handler(b: _Builder, raw: RawStatement):
        name = b.argument(raw, IDENTIFIER_RE, "identifier")
        if name is None:
            return None
        rules = dict(_REFINE_FIELDS[kind])
        for sub in _NESTED_REFINEMENTS.get(kind, ()):
            rules[sub.value] = Rule("refinements", "*", _refinement(sub))
        rules.update(_opt(("description", TEXT), ("reference", TEXT)))
        return b.node(n.Refinement, raw, rules, kind=kind, name=name)

    return handler


def _uses(b: _Builder, raw: RawStatement):
    ref = b.argument(raw, _PREFIXED_NAME_RE, "grouping name")
    if ref is None:
        return None
    rules = {kind.value: Rule("refinements", "*", _refinement(kind)) for kind in _NESTED_REFINEMENTS[n.RefineKind.CONTAINER]}
    rules.update(DOC_RULES)
    return b.node(n.Uses, raw, rules, grouping=ref)


def _io_block(b: _Builder, raw: RawStatement):
    if not b.no_argument(raw):
        return None
    return b.node(n.IOBlock, raw, DEFINITION_RULES)


def _augment(b: _Builder, raw: RawStatement):
    target = b.argument(raw, what="target path")
    if target is None:
        return None
    rules = {kw: Rule("datadefs", "*", h) for kw, h in DATADEF_HANDLERS.items()}
    rules["case"] = Rule("cases", "*", _case)
    rules.update(
        {
            "input": Rule("input", "?", _io_block),
            "output": Rule("output", "?", _io_block),
            **_opt(("when", TEXT)),
            **DOC_RULES,
        }
    )
    values, ext_uses = b.gather(raw, rules)
    if not (values["datadefs"] or values["cases"] or "input" in values or "output" in values):
        payload_kw = set(DATADEF_KEYWORDS) | {"case", "input", "output"}
        if not any(c.keyword in payload_kw for c in raw.children):
            b.report(
                "MISSING_SUBSTATEMENT",
                f"augment '{target}' must contain data definitions, cases, input or output",
                raw,
            )
        return None
    return n.Augment(raw=raw, extension_uses=ext_uses, target=target, **values)


def _rpc(b: _Builder, raw: RawStatement):
    name = b.argument(raw, IDENTIFIER_RE, "identifier")
    if name is None:
        return None
    rules = {
        "input": Rule("input", "?", _io_block),
        "output": Rule("output", "?", _io_block),
        **DEFINITION_RULES,
        **DOC_RULES,
    }
    return b.node(n.Rpc, raw, rules, name=name)


def _notification(b: _Builder, raw: RawStatement):
    name = b.argument(raw, IDENTIFIER_RE, "identifier")
    if name is None:
        return None
    return b.node(n.Notification, raw, {**DEFINITION_RULES, **DOC_RULES}, name=name)


def _argument_decl(b: _Builder, raw: RawStatement):
    name = b.argument(raw, IDENTIFIER_RE, "identifier")
    if name is None:
        return None
    return b.node(n.ArgumentDecl, raw, {"yin-element": Rule("yin_element", "?", BOOL)}, name=name)


def _extension(b: _Builder, raw: RawStatement):
    name = b.argument(raw, IDENTIFIER_RE, "identifier")
    if name is None:
        return None
    rules = {"argument": Rule("argument", "?", _argument_decl), **DOC_RULES}
    return b.node(n.Extension, raw, rules, name=name)


def _import(b: _Builder, raw: RawStatement):
    name = b.argument(raw, IDENTIFIER_RE, "module name")
    if name is None:
        return None
    return b.node(n.Import, raw, {"prefix": Rule("prefix", "1", IDENT)}, module_name=name)


def _include(b: _Builder, raw: RawStatement):
    name = b.argument(raw, IDENTIFIER_RE, "submodule name")
    if name is None:
        return None
    return b.node(n.Include, raw, {}, submodule_name=name)


def _revision(b: _Builder, raw: RawStatement):
    date = _to_date(b, raw)
    if date is None:
        return None
    return b.node(n.Revision, raw, _opt(("description", TEXT)), date=date)


def _belongs_to(b: _Builder, raw: RawStatement):
    name = b.argument(raw, IDENTIFIER_RE, "module name")
    if name is None:
        return None
    values, ext_uses = b.gather(raw, {"prefix": Rule("prefix", "?", IDENT)})
    return _Simple((name, values.get("prefix")), ext_uses)


DATADEF_HANDLERS: dict[str, Handler] = {
    "container": _container,
    "leaf": _leaf,
    "leaf-list": _leaf_list,
    "list": _list,
    "choice": _choice,
    "anyxml": _anyxml,
    "uses": _uses,
    "augment": _augment,
}
DATADEF_KEYWORDS = tuple(DATADEF_HANDLERS)
SHORT_CASE_KEYWORDS = ("container", "leaf", "leaf-list", "list", "anyxml")
CASE_DATADEF_HANDLERS = {
    kw: DATADEF_HANDLERS[kw] for kw in ("container", "leaf", "leaf-list", "list", "anyxml", "uses", "augment")
}
DEFINITION_RULES: dict[str, Rule] = {
    "typedef": Rule("typedefs", "*", _typedef),
    "grouping": Rule("groupings", "*", _grouping),
    **{kw: Rule("datadefs", "*", h) for kw, h in DATADEF_HANDLERS.items()},
}
BODY_HANDLERS: dict[str, Handler] = {
    "extension": _extension,
    "typedef": _typedef,
    "grouping": _grouping,
    **DATADEF_HANDLERS,
    "rpc": _rpc,
    "notification": _notification,
}
_META_RULES = {
    kw: Rule(kw, "?", TEXT) for kw in ("organization", "contact", "description", "reference")
}
_SPEC_COMMON_RULES: dict[str, Rule] = {
    "yang-version": Rule("yang_version", "?", TEXT),
    **_META_RULES,
    "import": Rule("linkages", "*", _import),
    "include": Rule("linkages", "*", _include),
    "revision": Rule("revisions", "*", _revision),
    **{kw: Rule("bodies", "*", h) for kw, h in BODY_HANDLERS.items()},
}
_MODULE_RULES = {
    "namespace": Rule("namespace", "?", TEXT),
    "prefix": Rule("prefix", "?", IDENT),
    **_SPEC_COMMON_RULES,
}
_SUBMODULE_RULES = {
    "belongs-to": Rule("belongs_to", "1", _belongs_to),
    **_SPEC_COMMON_RULES,
}

ALL_KEYWORDS = frozenset(
    set(_MODULE_RULES)
    | set(_SUBMODULE_RULES)
    | set(DOC_RULES)
    | set(_RESTRICTION_KEYWORDS)
    | {
        "module", "submodule", "type", "units", "default", "config", "mandatory",
        "presence", "must", "unique", "key", "min-elements", "max-elements",
        "ordered-by", "enum", "value", "case", "input", "output", "when",
        "argument", "yin-element", "error-message", "error-app-tag",
    }
)


def build(raw: RawStatement) -> tuple[n.Specification, list[Diagnostic]]:
    """Convert a module/submodule statement tree into a Specification.

    Never raises for a syntactically valid tree; problems come back as
    diagnostics and the affected blocks are omitted from the result.
    """
    if raw.keyword not in ("module", "submodule"):
        raise ValueError(f"expected a module or submodule statement, got {raw.keyword!r}")
    b = _Builder()
    is_module = raw.keyword == "module"
    name = raw.argument
    if name is None or not IDENTIFIER_RE.fullmatch(name):
        b.report("BAD_ARGUMENT", f"'{raw.keyword}' requires an identifier name", raw)
        name = name or ""

    rules = _MODULE_RULES if is_module else _SUBMODULE_RULES
    values, ext_uses = b.gather(raw, rules)
    if is_module:
        header = n.ModuleHeader(
            raw=raw,
            namespace=values.pop("namespace", None),
            prefix=values.pop("prefix", None),
            yang_version=values.pop("yang_version", None),
        )
        missing = [kw for kw in ("namespace", "prefix") if getattr(header, kw) is None and raw.find(kw) is None]
        if missing:
            b.report(
                "MISSING_NS_OR_PREFIX",
                f"module '{name}' lacks mandatory {' and '.join(missing)} statement",
                raw,
            )
    else:
        if "belongs_to" not in values and raw.find("belongs-to") is None:
            b.report("MISSING_SUBSTATEMENT", f"submodule '{name}' must contain a 'belongs-to' statement", raw)
        owner, owner_prefix = values.pop("belongs_to", (None, None))
        header = n.SubmoduleHeader(
            raw=raw,
            belongs_to=owner,
            belongs_to_prefix=owner_prefix,
            yang_version=values.pop("yang_version", None),
        )
    metas = n.Meta(**{kw: values.pop(kw, None) for kw in _META_RULES})
    if not values["revisions"]:
        b.diags.append(
            warning("MISSING_REVISION", f"{raw.keyword} '{name}' should contain a revision statement", raw.span)
        )
    spec = n.Specification(
        raw=raw,
        extension_uses=ext_uses,
        kind=n.SpecKind.MODULE if is_module else n.SpecKind.SUBMODULE,
        name=name,
        header=header,
        metas=metas,
        linkages=values["linkages"],
        revisions=values["revisions"],
        bodies=values["bodies"],
        file=raw.span.file,
    )
    return spec, b.diags
