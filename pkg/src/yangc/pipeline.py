"""One-call compilation of a file: lex, parse, build, link and check."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import nodes as n
from .diagnostics import Diagnostic, DiagnosticBag, has_errors
from .resolver import ModuleRegistry, load_source, resolve_linkages
from .semantics import SchemaTree, check


@dataclass
class Compilation:
    file: str
    spec: Optional[n.Specification] = None
    registry: Optional[ModuleRegistry] = None
    tree: Optional[SchemaTree] = None
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not has_errors(self.diagnostics)


def compile_source(source: str, file_id: str, search_paths: Sequence[str] = (".",)) -> Compilation:
    """Run the whole pipeline over ``source``.

    A lexical or syntax error stops at once: the result carries that single
    diagnostic and no specification. Later stages report and keep going.
    """
    result = Compilation(file_id)
    bag = DiagnosticBag()
    spec, diags = load_source(source, file_id)
    bag.extend(diags)
    if spec is None:
        result.diagnostics = bag.to_list()
        return result
    result.spec = spec
    registry, diags = resolve_linkages(spec, search_paths)
    bag.extend(diags)
    checked = check(spec, registry)
    bag.extend(checked.diagnostics)
    result.registry = registry
    result.tree = checked.tree
    result.diagnostics = bag.to_list()
    return result


def compile_file(path: str, search_paths: Sequence[str] = (".",)) -> Compilation:
    """Like :func:`compile_source`, reading ``path`` first (raises OSError)."""
    with open(path, encoding="utf-8") as fh:
        source = fh.read()
    return compile_source(source, path, search_paths)
