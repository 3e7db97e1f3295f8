"""Locate imported modules and included submodules and link them."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping, Optional, Sequence

from . import nodes as n
from .astbuild import build
from .diagnostics import Diagnostic, YangSyntaxError, error
from .lexing import tokenize
from .syntax import parse

YANG_PATH_VAR = "YANG_PATH"
SUFFIX = ".yang"


class SpecificationNotFound(LookupError):
    def __init__(self, name: str, searched: Sequence[str]):
        where = ", ".join(str(p) for p in searched) or "(no search paths)"
        super().__init__(f"specification '{name}' not found in {where}")
        self.name = name
        self.searched = list(searched)


def search_paths(
    cli_paths: Iterable[str] = (),
    environ: Optional[Mapping[str, str]] = None,
    cwd: str = ".",
) -> list[str]:
    """Directories to search: ``-p`` entries, then ``YANG_PATH``, then ``cwd``.

    Each ``-p`` value may itself be a list joined with :data:`os.pathsep`.
    """
    environ = os.environ if environ is None else environ
    paths: list[str] = []
    for entry in cli_paths:
        paths.extend(p for p in entry.split(os.pathsep) if p)
    paths.extend(p for p in environ.get(YANG_PATH_VAR, "").split(os.pathsep) if p)
    paths.append(cwd)
    return paths


def locate(name: str, search_paths: Sequence[str]) -> Path:
    """Return the first ``<name>.yang`` found along ``search_paths``."""
    for directory in search_paths:
        candidate = Path(directory) / f"{name}{SUFFIX}"
        if candidate.is_file():
            return candidate
    raise SpecificationNotFound(name, search_paths)


def load_file(path: os.PathLike | str) -> tuple[Optional[n.Specification], list[Diagnostic]]:
    """Read, tokenize, parse and build one file.

    A lexical or syntax error yields ``(None, [that error])``. An unreadable
    file raises :class:`OSError`.
    """
    path = str(path)
    with open(path, encoding="utf-8") as fh:
        source = fh.read()
    return load_source(source, path)


def load_source(source: str, file_id: str) -> tuple[Optional[n.Specification], list[Diagnostic]]:
    try:
        raw = parse(tokenize(source, file_id), file_id)
    except YangSyntaxError as exc:
        return None, [exc.diagnostic]
    return build(raw)


Loader = Callable[[Path], tuple[Optional[n.Specification], list[Diagnostic]]]


@dataclass
class ModuleRegistry:
    """All specifications reachable from a root, keyed by name."""

    specs: dict[str, n.Specification] = field(default_factory=dict)
    prefix_tables: dict[str, dict[str, str]] = field(default_factory=dict)
    include_graph: dict[str, set[str]] = field(default_factory=dict)
    files: dict[str, str] = field(default_factory=dict)

    def module_of(self, spec_name: str) -> str:
        """Name of the module a specification's definitions belong to."""
        spec = self.specs[spec_name]
        return spec.name if spec.is_module or spec.belongs_to is None else spec.belongs_to

    def included_submodules(self, spec_name: str) -> list[n.Specification]:
        """Submodules reachable by include from ``spec_name``, in discovery order."""
        allowed = self.include_graph.get(self.module_of(spec_name), set()) | self.include_graph.get(spec_name, set())
        order: list[str] = []
        stack = [spec_name]
        while stack:
            current = stack.pop(0)
            spec = self.specs.get(current)
            if spec is None:
                continue
            for inc in spec.includes:
                name = inc.submodule_name
                if name in allowed and name not in order and name != spec_name:
                    order.append(name)
                    stack.append(name)
        return [self.specs[s] for s in order]


class _Linker:
    def __init__(self, paths: Sequence[str], loader: Loader):
        self.paths = list(paths)
        self.loader = loader
        self.registry = ModuleRegistry()
        self.diags: list[Diagnostic] = []
        # name -> [(target name, linkage statement)], in source order
        self.edges: dict[str, list[tuple[str, n.Linkage]]] = {}
        self.failed: set[str] = set()

    def report(self, code: str, message: str, node: n.Statement) -> None:
        self.diags.append(error(code, message, node.span))

    def fetch(self, name: str, via: n.Linkage) -> Optional[n.Specification]:
        if name in self.registry.specs:
            return self.registry.specs[name]
        if name in self.failed:
            return None
        try:
            path = locate(name, self.paths)
        except SpecificationNotFound as exc:
            self.failed.add(name)
            self.report("SPEC_NOT_FOUND", str(exc), via)
            return None
        try:
            spec, diags = self.loader(path)
        except OSError as exc:
            self.failed.add(name)
            self.report("SPEC_NOT_FOUND", f"cannot read {path}: {exc.strerror or exc}", via)
            return None
        self.diags.extend(diags)
        if spec is None:
            self.failed.add(name)
            return None
        if spec.name != name:
            self.failed.add(name)
            self.report("SPEC_NOT_FOUND", f"{path} defines '{spec.name}', not '{name}'", via)
            return None
        self.registry.specs[name] = spec
        self.registry.files[name] = str(path)
        return spec

    def link(self, spec: n.Specification, owner: str, owner_prefix: Optional[str]) -> None:
        """Fill the prefix table of ``spec`` and load what it links to."""
        table: dict[str, str] = {}
        self.registry.prefix_tables[spec.name] = table
        self.edges[spec.name] = []
        own_prefix = spec.prefix if spec.is_module else (spec.header.belongs_to_prefix or owner_prefix)
        if own_prefix:
            table[own_prefix] = owner

        for linkage in spec.linkages:
            if isinstance(linkage, n.Import):
                if linkage.prefix in table:
                    self.report(
                        "DUP_PREFIX",
                        f"prefix '{linkage.prefix}' is already bound to '{table[linkage.prefix]}'",
                        linkage,
                    )
                else:
                    table[linkage.prefix] = linkage.module_name
                target = self.fetch(linkage.module_name, linkage)
                if target is None:
                    continue
                if not target.is_module:
                    self.report("IMPORT_OF_SUBMODULE", f"'{target.name}' is a submodule and cannot be imported", linkage)
                    continue
                self.edges[spec.name].append((target.name, linkage))
                if target.name not in self.registry.prefix_tables:
                    self.link(target, target.name, target.prefix)
            else:
                target = self.fetch(linkage.submodule_name, linkage)
                if target is None:
                    continue
                if target.is_module:
                    self.report("INCLUDE_OF_MODULE", f"'{target.name}' is a module and cannot be included", linkage)
                    continue
                if target.belongs_to != owner:
                    self.report(
                        "BELONGS_TO_MISMATCH",
                        f"submodule '{target.name}' belongs to '{target.belongs_to}', not '{owner}'",
                        linkage,
                    )
                    continue
                self.registry.include_graph.setdefault(owner, set()).add(target.name)
                if spec.name != owner:
                    self.registry.include_graph.setdefault(spec.name, set()).add(target.name)
                self.edges[spec.name].append((target.name, linkage))
                if target.name not in self.registry.prefix_tables:
                    self.link(target, owner, owner_prefix)

    def find_cycles(self, root: str) -> None:
        on_stack: list[str] = []
        done: set[str] = set()

        def visit(name: str) -> None:
            on_stack.append(name)
            for target, linkage in self.edges.get(name, ()):
                if target in on_stack:
                    path = " -> ".join(on_stack[on_stack.index(target):] + [target])
                    if isinstance(linkage, n.Import):
                        self.report("CIRCULAR_IMPORT", f"circular import: {path}", linkage)
                    else:
                        self.report("CIRCULAR_INCLUDE", f"circular include: {path}", linkage)
                elif target not in done:
                    visit(target)
            on_stack.pop()
            done.add(name)

        visit(root)


def resolve_linkages(
    root: n.Specification,
    search_paths: Sequence[str],
    loader: Loader = load_file,
) -> tuple[ModuleRegistry, list[Diagnostic]]:
    """Transitively load everything ``root`` imports or includes.

    Returns the registry and the linkage diagnostics (including lexical,
    syntax and build problems of the files that were loaded).
    """
    linker = _Linker(search_paths, loader)
    linker.registry.specs[root.name] = root
    linker.registry.files[root.name] = root.file
    if root.is_module:
        linker.link(root, root.name, root.prefix)
    else:
        linker.link(root, root.belongs_to or root.name, root.header.belongs_to_prefix)
    linker.find_cycles(root.name)
    return linker.registry, linker.diags
