"""YIN output: the XML rendering of a YANG specification.

Every statement becomes an element named after its keyword. Where the
argument goes is fixed per keyword by :data:`ARGUMENT_TABLE`: either an
attribute (``<prefix value="router"/>``) or a child element
(``<description><text>...</text></description>``). Extension uses follow
their ``argument`` declaration and its ``yin-element`` flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import nodes as n
from .resolver import ModuleRegistry
from .syntax import RawStatement

YIN_NAMESPACE = "urn:ietf:params:xml:ns:yang:yin:1"
XML_HEADER = '<?xml version="1.0" encoding="UTF-8"?>\n'


@dataclass(frozen=True)
class ArgumentStyle:
    name: str
    element: bool = False


def _attr(name: str) -> ArgumentStyle:
    return ArgumentStyle(name)


def _elem(name: str) -> ArgumentStyle:
    return ArgumentStyle(name, element=True)


# keyword -> how its argument is rendered; None means the keyword takes no argument.
ARGUMENT_TABLE: dict[str, Optional[ArgumentStyle]] = {
    # named things
    **{
        kw: _attr("name")
        for kw in (
            "module", "submodule", "container", "leaf", "leaf-list", "list", "choice",
            "case", "anyxml", "grouping", "uses", "typedef", "type", "rpc", "notification",
            "extension", "argument", "enum", "refine",
        )
    },
    # plain values
    **{
        kw: _attr("value")
        for kw in (
            "prefix", "yang-version", "config", "default", "key", "mandatory", "presence",
            "units", "status", "min-elements", "max-elements", "ordered-by", "range",
            "length", "pattern", "path", "error-app-tag", "yin-element", "value",
        )
    },
    "namespace": _attr("uri"),
    "import": _attr("module"),
    "include": _attr("module"),
    "belongs-to": _attr("module"),
    "augment": _attr("target-node"),
    "revision": _attr("date"),
    "must": _attr("condition"),
    "when": _attr("condition"),
    "unique": _attr("tag"),
    # prose
    "description": _elem("text"),
    "reference": _elem("text"),
    "contact": _elem("text"),
    "organization": _elem("text"),
    "error-message": _elem("value"),
    "input": None,
    "output": None,
}

# Fallback for keywords missing from the table (they were already reported by the builder).
DEFAULT_STYLE = _attr("value")
# Extension used without a matching declaration.
UNDECLARED_EXTENSION_STYLE = _attr("value")


def style_for(keyword: str) -> Optional[ArgumentStyle]:
    return ARGUMENT_TABLE.get(keyword, DEFAULT_STYLE)


def escape_text(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
        .replace("'", "&apos;")
        .replace("\r", "&#13;")
    )


def escape_attr(text: str) -> str:
    # Attribute values are whitespace-normalized by XML readers unless escaped.
    return escape_text(text).replace("\n", "&#10;").replace("\t", "&#9;")


def extension_styles(
    spec: n.Specification, registry: Optional[ModuleRegistry] = None
) -> dict[tuple[str, str], ArgumentStyle]:
    """Map ``(prefix, extension name)`` to the argument style of every
    extension ``spec`` can see: its own and those of imported modules."""
    prefixes: dict[str, str] = {}
    if registry is not None:
        prefixes.update(registry.prefix_tables.get(spec.name, {}))
    own_prefix = spec.prefix or (spec.header.belongs_to_prefix if not spec.is_module else None)
    if own_prefix:
        prefixes.setdefault(own_prefix, spec.name)
    styles: dict[tuple[str, str], ArgumentStyle] = {}
    for prefix, module in prefixes.items():
        sources = [spec] if module in (spec.name, spec.belongs_to) else []
        if registry is not None and module in registry.specs:
            sources = [registry.specs[module]] + registry.included_submodules(module)
        for source in sources:
            for ext in source.bodies_of(n.Extension):
                if ext.argument is not None:
                    styles[(prefix, ext.name)] = ArgumentStyle(ext.argument.name, bool(ext.argument.yin_element))
    return styles


def _namespaces(
    spec: n.Specification, registry: Optional[ModuleRegistry]
) -> list[tuple[str, str]]:
    decls: dict[str, str] = {}
    own_prefix = spec.prefix if spec.is_module else spec.header.belongs_to_prefix
    owner = spec.name if spec.is_module else (spec.belongs_to or spec.name)

    def namespace_of(module: str) -> str:
        if module == spec.name and spec.namespace:
            return spec.namespace
        if registry is not None and module in registry.specs:
            found = registry.specs[module].namespace
            if found:
                return found
        return f"urn:yangc:module:{module}"

    if own_prefix:
        decls[own_prefix] = namespace_of(owner)
    for imp in spec.imports:
        decls.setdefault(imp.prefix, namespace_of(imp.module_name))
    for raw in spec.raw.walk():
        if raw.prefix is not None:
            decls.setdefault(raw.prefix, f"urn:yangc:prefix:{raw.prefix}")
    return sorted(decls.items())


class _Emitter:
    def __init__(self, styles: dict[tuple[str, str], ArgumentStyle]):
        self.styles = styles
        self.lines: list[str] = []

    def style(self, raw: RawStatement) -> Optional[ArgumentStyle]:
        if raw.prefix is not None:
            local = raw.keyword.split(":", 1)[1]
            return self.styles.get((raw.prefix, local), UNDECLARED_EXTENSION_STYLE)
        return style_for(raw.keyword)

    def emit(self, raw: RawStatement, depth: int, root_attrs: str = "") -> None:
        pad = "  " * depth
        style = self.style(raw) or DEFAULT_STYLE
        attrs = root_attrs
        inner: list[tuple[str, Optional[RawStatement]]] = []
        if raw.argument is not None:
            if style.element:
                # An extension's argument element lives in the extension's namespace.
                tag = f"{raw.prefix}:{style.name}" if raw.prefix else style.name
                inner.append((f"{pad}  <{tag}>{escape_text(raw.argument)}</{tag}>", None))
            else:
                attrs += f' {style.name}="{escape_attr(raw.argument)}"'
        if not inner and not raw.children:
            self.lines.append(f"{pad}<{raw.keyword}{attrs}/>")
            return
        self.lines.append(f"{pad}<{raw.keyword}{attrs}>")
        self.lines.extend(line for line, _ in inner)
        for child in raw.children:
            self.emit(child, depth + 1)
        self.lines.append(f"{pad}</{raw.keyword}>")


def emit_yin(
    spec: n.Specification,
    registry: Optional[ModuleRegistry] = None,
    yin_namespace: str = YIN_NAMESPACE,
) -> str:
    """Render ``spec`` as a YIN document (UTF-8 text, LF line endings).

    ``registry`` supplies namespaces and extension declarations of
    imported modules; without it placeholders are used for foreign
    namespaces and only local extension declarations are known.
    """
    root_attrs = f' xmlns="{escape_attr(yin_namespace)}"'
    for prefix, uri in _namespaces(spec, registry):
        root_attrs += f' xmlns:{prefix}="{escape_attr(uri)}"'
    emitter = _Emitter(extension_styles(spec, registry))
    emitter.emit(spec.raw, 0, root_attrs)
    return XML_HEADER + "\n".join(emitter.lines) + "\n"
