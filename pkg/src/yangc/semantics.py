"""Whole-specification checks and schema tree construction.

:func:`check` runs the passes in a fixed order: scopes and typedefs,
data tree construction with ``uses`` expansion, ``augment`` application,
then key, unique and keyref path checks, and finally extension uses.
A problem inside a block drops that block and checking moves on.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional

from . import nodes as n
from .diagnostics import Diagnostic, DiagnosticBag, error
from .lexing import IDENTIFIER_RE, SourceSpan
from .resolver import ModuleRegistry
from .typesystem import ResolvedType, YangTypeError, resolve_type, validate_default


# -- scopes ------------------------------------------------------------------------


class ModuleContext:
    """Scoping view of one specification: prefixes and top-level definitions.

    A module's top level also holds everything its included submodules
    define.
    """

    def __init__(self, spec: n.Specification, registry: ModuleRegistry, checker: "Checker"):
        self.spec = spec
        self.registry = registry
        self.checker = checker
        self.module = registry.module_of(spec.name) if spec.name in registry.specs else spec.name
        self.prefixes = registry.prefix_tables.get(spec.name, {})
        members = [spec] + registry.included_submodules(spec.name)
        self.extensions: dict[str, n.Extension] = {}
        self.top = Scope(self, None)
        for member in members:
            for body in member.bodies:
                if isinstance(body, n.Extension):
                    self.top.declare(self.extensions, body, "extension")
                elif isinstance(body, n.Typedef):
                    self.top.declare(self.top.typedefs, body, "typedef")
                elif isinstance(body, n.Grouping):
                    self.top.declare(self.top.groupings, body, "grouping")
        # Definitions from submodules resolve names in their own file's context.
        self._owner_scope: dict[int, Scope] = {}
        for member in members[1:]:
            sub_ctx = checker.context(member.name)
            for body in member.bodies:
                if isinstance(body, (n.Typedef, n.Grouping)):
                    self._owner_scope[id(body)] = sub_ctx.top

    def scope_of_top(self, definition: n.Statement) -> "Scope":
        return self._owner_scope.get(id(definition), self.top)

    def resolve_prefix(self, prefix: str) -> str:
        try:
            return self.prefixes[prefix]
        except KeyError:
            raise YangTypeError("UNKNOWN_PREFIX", f"prefix '{prefix}' is not bound in '{self.spec.name}'")

    def foreign(self, prefix: str) -> Optional["ModuleContext"]:
        """Context of the module behind ``prefix``, or None for this module."""
        module = self.resolve_prefix(prefix)
        if module == self.module:
            return None
        if module not in self.registry.specs:
            raise YangTypeError("UNKNOWN_PREFIX", f"module '{module}' for prefix '{prefix}' is not loaded")
        return self.checker.context(module)


class Scope:
    """One lexical frame of typedefs and groupings, chained to its parent."""

    def __init__(self, ctx: ModuleContext, parent: Optional["Scope"]):
        self.ctx = ctx
        self.parent = parent
        self.typedefs: dict[str, n.Typedef] = {}
        self.groupings: dict[str, n.Grouping] = {}

    def declare(self, table: dict, definition, what: str) -> None:
        if definition.name in table:
            first = table[definition.name]
            self.ctx.checker.report(
                "DUP_DEFINITION",
                f"{what} '{definition.name}' is already declared in this scope",
                definition.span,
                first.span,
            )
            return
        table[definition.name] = definition

    def child(self, node: n.Definitions) -> "Scope":
        if not node.typedefs and not node.groupings:
            return self
        frame = self.ctx.checker.frames.get(id(node))
        if frame is None:
            frame = Scope(self.ctx, self)
            for td in node.typedefs:
                frame.declare(frame.typedefs, td, "typedef")
            for gr in node.groupings:
                frame.declare(frame.groupings, gr, "grouping")
            self.ctx.checker.frames[id(node)] = frame
        return frame

    def _lookup(self, name: str, table_name: str):
        prefix, sep, local = name.rpartition(":")
        if sep:
            other = self.ctx.foreign(prefix)
            if other is not None:
                found = getattr(other.top, table_name).get(local)
                return (found, other.scope_of_top(found)) if found is not None else None
            scope = self.ctx.top
        else:
            scope = self
        while scope is not None:
            found = getattr(scope, table_name).get(local)
            if found is not None:
                if scope.parent is None:
                    return found, scope.ctx.scope_of_top(found)
                return found, scope
            scope = scope.parent
        return None

    def lookup_typedef(self, name: str):
        return self._lookup(name, "typedefs")

    def lookup_grouping(self, name: str):
        return self._lookup(name, "groupings")


# -- schema tree ---------------------------------------------------------------------


class NodeKind(enum.Enum):
    MODULE = "module"
    CONTAINER = "container"
    LIST = "list"
    LEAF = "leaf"
    LEAF_LIST = "leaf-list"
    CHOICE = "choice"
    CASE = "case"
    ANYXML = "anyxml"
    RPC = "rpc"
    INPUT = "input"
    OUTPUT = "output"
    NOTIFICATION = "notification"


_TERMINAL = (NodeKind.LEAF, NodeKind.LEAF_LIST, NodeKind.ANYXML)
_TRANSPARENT = (NodeKind.CHOICE, NodeKind.CASE)
_SHORT_CASE = (n.Container, n.Leaf, n.LeafList, n.ListNode, n.AnyXml)


@dataclass(eq=False)
class SchemaNode:
    name: str
    kind: NodeKind
    module: str
    stmt: Optional[n.Statement] = field(default=None, repr=False)
    parent: Optional["SchemaNode"] = field(default=None, repr=False)
    children: list["SchemaNode"] = field(default_factory=list, repr=False)
    config: Optional[bool] = None
    type: Optional[ResolvedType] = field(default=None, repr=False)
    default: Optional[str] = None
    mandatory: Optional[bool] = None
    presence: Optional[bool] = None
    min_elements: Optional[int] = None
    max_elements: object = None
    musts: list[str] = field(default_factory=list, repr=False)
    description: Optional[str] = field(default=None, repr=False)
    reference: Optional[str] = field(default=None, repr=False)

    @property
    def span(self) -> SourceSpan:
        return self.stmt.span

    def child(self, name: str) -> Optional["SchemaNode"]:
        return next((c for c in self.children if c.name == name), None)

    def walk(self) -> Iterator["SchemaNode"]:
        yield self
        for c in self.children:
            yield from c.walk()

    def path(self) -> str:
        parts = []
        node = self
        while node is not None and node.kind is not NodeKind.MODULE:
            parts.append(node.name)
            node = node.parent
        return "/" + "/".join(reversed(parts))

    def data_parent(self) -> Optional["SchemaNode"]:
        node = self.parent
        while node is not None and node.kind in _TRANSPARENT:
            node = node.parent
        return node

    @property
    def key_names(self) -> list[str]:
        if self.kind is NodeKind.LIST and self.stmt is not None:
            return self.stmt.key_names
        return []


@dataclass
class SchemaTree:
    roots: dict[str, SchemaNode] = field(default_factory=dict)

    def root(self, module: str) -> SchemaNode:
        return self.roots[module]

    def find(self, path: str, module: Optional[str] = None) -> SchemaNode:
        """Look up a node by slash-separated path from a module root."""
        module = module or next(iter(self.roots))
        return resolve_schema_node(SchemaNodeId.parse(path), self.roots[module], self, module=module)

    def walk(self) -> Iterator[SchemaNode]:
        for root in self.roots.values():
            yield from root.walk()


# -- schema node identifiers -----------------------------------------------------------

_STEP_RE = re.compile(rf"(?:({IDENTIFIER_RE.pattern}):)?({IDENTIFIER_RE.pattern})")


@dataclass(frozen=True)
class SchemaNodeId:
    steps: tuple[tuple[Optional[str], str], ...]
    absolute: bool = False

    @classmethod
    def parse(cls, text: str) -> "SchemaNodeId":
        text = text.strip()
        absolute = text.startswith("/")
        body = text[1:] if absolute else text
        steps = []
        for part in body.split("/"):
            m = _STEP_RE.fullmatch(part.strip())
            if m is None:
                raise ValueError(f"invalid schema node identifier {text!r}")
            steps.append((m.group(1), m.group(2)))
        return cls(tuple(steps), absolute)

    def __str__(self) -> str:
        body = "/".join(f"{p}:{s}" if p else s for p, s in self.steps)
        return "/" + body if self.absolute else body


class PathError(LookupError):
    def __init__(self, step: int, name: str, candidates: list[str]):
        listed = ", ".join(candidates) if candidates else "none"
        super().__init__(f"step {step + 1} '{name}' not found (candidates: {listed})")
        self.step = step
        self.name = name
        self.candidates = candidates


def _visible_children(node: SchemaNode) -> Iterator[SchemaNode]:
    """Children addressable from ``node``, looking through choice and case."""
    for c in node.children:
        yield c
    for c in node.children:
        if c.kind in _TRANSPARENT:
            yield from _visible_children(c)


def resolve_schema_node(
    path: SchemaNodeId,
    context_node: Optional[SchemaNode],
    tree: SchemaTree,
    prefixes: Optional[dict[str, str]] = None,
    module: Optional[str] = None,
) -> SchemaNode:
    """Walk ``path`` through ``tree`` and return the node it names.

    Absolute paths start at the root of the first step's module; relative
    ones at ``context_node`` (or the current module's root when None).
    Unprefixed steps bind to ``module``, falling back to the module of the
    node being descended from. Raises :class:`PathError`.
    """
    prefixes = prefixes or {}
    if module is None and context_node is not None:
        module = context_node.module

    def module_for(step: int, prefix: Optional[str]) -> Optional[str]:
        if prefix is None:
            return None
        if prefix not in prefixes:
            raise PathError(step, f"{prefix}:{path.steps[step][1]}", [])
        return prefixes[prefix]

    if path.absolute or context_node is None:
        prefix, name = path.steps[0]
        root_module = module_for(0, prefix) or module
        if root_module not in tree.roots:
            raise PathError(0, name, sorted(tree.roots))
        node = tree.roots[root_module]
    else:
        node = context_node

    for i, (prefix, name) in enumerate(path.steps):
        wanted = module_for(i, prefix)
        match = None
        for c in _visible_children(node):
            if c.name != name:
                continue
            if wanted is not None and c.module != wanted:
                continue
            if wanted is None and c.module not in (module, node.module):
                continue
            match = c
            break
        if match is None:
            raise PathError(i, name, [c.name for c in node.children])
        node = match
    return node


# -- the checker -----------------------------------------------------------------------


class CheckResult(NamedTuple):
    diagnostics: list[Diagnostic]
    tree: SchemaTree


@dataclass
class _PendingAugment:
    augment: n.Augment
    scope: Scope
    context: Optional[SchemaNode]
    module: str


class Checker:
    """Runs the semantic passes for one specification against a registry."""

    def __init__(self, registry: ModuleRegistry):
        self.registry = registry
        self.bag = DiagnosticBag()
        self.contexts: dict[str, ModuleContext] = {}
        self.frames: dict[int, Scope] = {}
        self.tree = SchemaTree()
        self._quiet = 0
        self._grouping_stack: list[n.Grouping] = []
        self._pending: list[_PendingAugment] = []
        self._post_roots: list[SchemaNode] = []
        self._cycles: set[frozenset] = set()

    # -- plumbing

    def report(self, code: str, message: str, span: SourceSpan, *related: SourceSpan) -> None:
        if not self._quiet:
            self.bag.add(error(code, message, span, *related))

    def report_type_error(self, exc: YangTypeError, fallback: n.Statement) -> None:
        if exc.cycle:
            # One report per cycle, however many typedefs or leaves reach it.
            key = frozenset(id(td) for td in exc.cycle)
            if key in self._cycles:
                return
            self._cycles.add(key)
        node = exc.node if exc.node is not None else fallback
        self.report(exc.code, exc.message, node.span)

    def report_default_error(self, exc: YangTypeError, owner: n.Statement) -> None:
        raw = owner.raw.find("default")
        self.report(exc.code, exc.message, (raw or owner.raw).span)

    def context(self, spec_name: str) -> ModuleContext:
        ctx = self.contexts.get(spec_name)
        if ctx is None:
            spec = self.registry.specs[spec_name]
            # Placeholder guards against re-entry from submodule contexts.
            ctx = ModuleContext.__new__(ModuleContext)
            self.contexts[spec_name] = ctx
            ModuleContext.__init__(ctx, spec, self.registry, self)
        return ctx

    # -- driver

    def check(self, spec: n.Specification) -> CheckResult:
        ctx = self.context(spec.name)
        members = [spec] + self.registry.included_submodules(spec.name)
        for member in members:
            mctx = self.context(member.name)
            self._check_definitions(member, mctx.top)
        root = self.module_tree(ctx.module, members=members)
        for member in members:
            self._check_extension_uses(member)
        self._post_checks(root)
        for extra in self._post_roots:
            self._post_checks(extra)
        return CheckResult(self.bag.to_list(), self.tree)

    def module_tree(self, module: str, members: Optional[list[n.Specification]] = None) -> SchemaNode:
        """Schema tree root for ``module``, built on first request."""
        if module in self.tree.roots:
            return self.tree.roots[module]
        root = SchemaNode(module, NodeKind.MODULE, module, config=True)
        self.tree.roots[module] = root
        foreign = members is None
        if foreign:
            members = [self.registry.specs[module]] + self.registry.included_submodules(module)
            self._quiet += 1
        saved_pending, self._pending = self._pending, []
        try:
            for member in members:
                mctx = self.context(member.name)
                self._build_bodies(member, mctx, root)
            self._run_pending()
        finally:
            self._pending = saved_pending
            if foreign:
                self._quiet -= 1
        return root

    # -- definitions and typedefs

    def _check_definitions(self, holder, scope: Scope) -> None:
        """Check typedefs everywhere below ``holder`` and expand every grouping once."""
        typedefs = holder.typedefs if isinstance(holder, n.Definitions) else holder.bodies_of(n.Typedef)
        groupings = holder.groupings if isinstance(holder, n.Definitions) else holder.bodies_of(n.Grouping)
        for td in typedefs:
            self._check_typedef(td, scope)
        for gr in groupings:
            gscope = scope.child(gr)
            self._check_definitions(gr, gscope)
            # Expand on its own so problems surface even if it is never used.
            holder_node = SchemaNode(gr.name, NodeKind.CONTAINER, scope.ctx.module, stmt=gr, config=True)
            self._grouping_stack.append(gr)
            saved_pending, self._pending = self._pending, []
            try:
                self._build_datadefs(gr.datadefs, gscope, holder_node)
                self._run_pending()
            finally:
                self._pending = saved_pending
                self._grouping_stack.pop()
            self._check_keys_and_uniques(holder_node)
        nested: list = []
        if isinstance(holder, n.Specification):
            nested = [b for b in holder.bodies if isinstance(b, n.Definitions) and not isinstance(b, n.Grouping)]
        elif isinstance(holder, n.Definitions):
            nested = [d for d in holder.datadefs if isinstance(d, n.Definitions)]
        for node in self._with_nested(nested):
            if isinstance(node, n.Grouping):
                continue
            self._check_definitions(node, scope.child(node))

    def _with_nested(self, items):
        for item in items:
            yield item
            if isinstance(item, n.Rpc):
                yield from (io for io in (item.input, item.output) if io is not None)

    def _check_typedef(self, td: n.Typedef, scope: Scope) -> Optional[ResolvedType]:
        try:
            resolved = resolve_type(td.type, scope)
        except YangTypeError as exc:
            self.report_type_error(exc, td)
            return None
        if td.default is not None:
            try:
                validate_default(td.default, resolved)
            except YangTypeError as exc:
                self.report_default_error(exc, td)
                return None
        return resolved

    # -- tree construction

    def _attach(self, parent: SchemaNode, node: SchemaNode) -> bool:
        existing = parent.child(node.name)
        if existing is not None:
            self.report(
                "DUP_SIBLING",
                f"'{node.name}' is already defined under {parent.path() if parent.kind is not NodeKind.MODULE else 'the module'}",
                node.span,
                existing.span,
            )
            return False
        node.parent = parent
        parent.children.append(node)
        return True

    def _new(self, stmt, kind: NodeKind, parent: SchemaNode) -> SchemaNode:
        node = SchemaNode(stmt.name, kind, parent.module, stmt=stmt, parent=parent)
        node.description = getattr(stmt, "description", None)
        node.reference = getattr(stmt, "reference", None)
        node.musts = [m.condition for m in getattr(stmt, "musts", [])]
        explicit = getattr(stmt, "config", None)
        if kind in (NodeKind.RPC, NodeKind.NOTIFICATION) or parent.kind in (NodeKind.RPC, NodeKind.INPUT, NodeKind.OUTPUT, NodeKind.NOTIFICATION) or parent.config is None:
            node.config = None
        elif explicit is None:
            node.config = parent.config
        else:
            if explicit and parent.config is False:
                self.report("INVALID_CONFIG", f"'{stmt.name}' is config true under a config false node", stmt.span)
            node.config = explicit and parent.config
        return node

    def _build_bodies(self, spec: n.Specification, ctx: ModuleContext, root: SchemaNode) -> None:
        for body in spec.bodies:
            if isinstance(body, (n.Extension, n.Typedef, n.Grouping)):
                continue
            if isinstance(body, n.Rpc):
                self._build_rpc(body, ctx.top, root)
            elif isinstance(body, n.Notification):
                node = self._new(body, NodeKind.NOTIFICATION, root)
                if self._attach(root, node):
                    self._build_datadefs(body.datadefs, ctx.top.child(body), node)
            else:
                self._build_datadefs([body], ctx.top, root)

    def _build_rpc(self, rpc: n.Rpc, scope: Scope, parent: SchemaNode) -> None:
        node = self._new(rpc, NodeKind.RPC, parent)
        if not self._attach(parent, node):
            return
        inner = scope.child(rpc)
        for io, kind in ((rpc.input, NodeKind.INPUT), (rpc.output, NodeKind.OUTPUT)):
            if io is not None:
                self._build_io(io, kind, inner, node)
        self._build_datadefs(rpc.datadefs, inner, node)

    def _build_io(self, io: n.IOBlock, kind: NodeKind, scope: Scope, parent: SchemaNode) -> Optional[SchemaNode]:
        io_node = self._new(io, kind, parent)
        if not self._attach(parent, io_node):
            return None
        self._build_datadefs(io.datadefs, scope.child(io), io_node)
        return io_node

    def _build_datadefs(self, datadefs, scope: Scope, parent: SchemaNode) -> None:
        for dd in datadefs:
            if isinstance(dd, n.Uses):
                for node in self.expand_uses(dd, scope, parent):
                    self._attach(parent, node)
            elif isinstance(dd, n.Augment):
                self._pending.append(_PendingAugment(dd, scope, parent, scope.ctx.module))
            else:
                node = self._build_node(dd, scope, parent)
                if node is not None:
                    self._attach(parent, node)

    def _build_node(self, dd, scope: Scope, parent: SchemaNode) -> Optional[SchemaNode]:
        """Create the schema node for a container, leaf, leaf-list, list,
        choice or anyxml, without attaching it to ``parent``."""
        if isinstance(dd, (n.Leaf, n.LeafList)):
            kind = NodeKind.LEAF if isinstance(dd, n.Leaf) else NodeKind.LEAF_LIST
            try:
                resolved = resolve_type(dd.type, scope)
            except YangTypeError as exc:
                self.report_type_error(exc, dd)
                return None
            if dd.default is not None:
                try:
                    validate_default(dd.default, resolved)
                except YangTypeError as exc:
                    self.report_default_error(exc, dd)
                    return None
            node = self._new(dd, kind, parent)
            node.type = resolved
            node.default = dd.default if dd.default is not None else (resolved.default or (None,))[0]
            node.mandatory = dd.mandatory
            if kind is NodeKind.LEAF_LIST:
                node.min_elements, node.max_elements = dd.min_elements, dd.max_elements
            return node
        if isinstance(dd, n.Container):
            node = self._new(dd, NodeKind.CONTAINER, parent)
            node.presence = dd.presence
            self._build_datadefs(dd.datadefs, scope.child(dd), node)
            return node
        if isinstance(dd, n.ListNode):
            node = self._new(dd, NodeKind.LIST, parent)
            node.min_elements, node.max_elements = dd.min_elements, dd.max_elements
            self._build_datadefs(dd.datadefs, scope.child(dd), node)
            return node
        if isinstance(dd, n.AnyXml):
            node = self._new(dd, NodeKind.ANYXML, parent)
            node.mandatory = dd.mandatory
            return node
        if isinstance(dd, n.Choice):
            node = self._new(dd, NodeKind.CHOICE, parent)
            node.mandatory = dd.mandatory
            node.default = dd.default
            for arm in dd.arms:
                case = self._build_case(arm, scope, node)
                if case is not None:
                    self._attach(node, case)
            self._check_choice_default(node, dd.default, dd)
            return node
        raise TypeError(f"not a data node: {dd!r}")

    def _build_case(self, arm, scope: Scope, choice: SchemaNode) -> Optional[SchemaNode]:
        case = self._new(arm, NodeKind.CASE, choice)
        if isinstance(arm, n.Case):
            self._build_datadefs(arm.datadefs, scope, case)
            return case
        # Short case: an implicit case of the same name holding the node.
        inner = self._build_node(arm, scope, case)
        if inner is None:
            return None
        case.description = case.reference = None
        case.musts = []
        self._attach(case, inner)
        return case

    def _check_choice_default(self, choice: SchemaNode, default: Optional[str], stmt: n.Statement) -> bool:
        if default is not None and choice.child(default) is None:
            cases = ", ".join(c.name for c in choice.children) or "none"
            self.report(
                "CHOICE_DEFAULT_NOT_FOUND",
                f"default '{default}' of choice '{choice.name}' is not one of its cases ({cases})",
                stmt.span,
            )
            return False
        return True

    # -- uses

    def expand_uses(self, uses: n.Uses, scope: Scope, parent: SchemaNode) -> list[SchemaNode]:
        """Instantiate the grouping named by ``uses`` for insertion under ``parent``.

        The grouping's data definitions are built afresh (so every use gets
        its own copy), with names resolved where the grouping is declared
        and the nodes owned by ``parent``'s module. Refinements are then
        overlaid. Returns the new, not yet attached, nodes.
        """
        try:
            found = scope.lookup_grouping(uses.grouping)
        except YangTypeError as exc:
            self.report_type_error(exc, uses)
            return []
        if found is None:
            self.report("UNKNOWN_GROUPING", f"grouping '{uses.grouping}' is not declared in scope", uses.span)
            return []
        grouping, decl_scope = found
        if any(g is grouping for g in self._grouping_stack):
            start = next(i for i, g in enumerate(self._grouping_stack) if g is grouping)
            cycle = self._grouping_stack[start:]
            key = frozenset(id(g) for g in cycle)
            if key not in self._cycles:
                self._cycles.add(key)
                chain = " -> ".join([g.name for g in cycle] + [grouping.name])
                self.report("CIRCULAR_GROUPING", f"grouping '{grouping.name}' uses itself ({chain})", uses.span)
            return []
        holder = SchemaNode(parent.name, parent.kind, parent.module, stmt=parent.stmt, parent=parent.parent, config=parent.config)
        self._grouping_stack.append(grouping)
        try:
            self._build_datadefs(grouping.datadefs, decl_scope.child(grouping), holder)
        finally:
            self._grouping_stack.pop()
        for pending in self._pending:
            if pending.context is holder:
                pending.context = parent
        for refinement in uses.refinements:
            self._refine(refinement, holder)
        nodes = holder.children
        for node in nodes:
            node.parent = None
        return nodes

    _REFINE_KIND = {
        n.RefineKind.CONTAINER: NodeKind.CONTAINER,
        n.RefineKind.LEAF: NodeKind.LEAF,
        n.RefineKind.LEAF_LIST: NodeKind.LEAF_LIST,
        n.RefineKind.LIST: NodeKind.LIST,
        n.RefineKind.CHOICE: NodeKind.CHOICE,
        n.RefineKind.CASE: NodeKind.CASE,
        n.RefineKind.ANYXML: NodeKind.ANYXML,
    }

    def _refine(self, ref: n.Refinement, within: SchemaNode) -> None:
        target = within.child(ref.name)
        if target is None:
            self.report(
                "REFINE_TARGET_NOT_FOUND",
                f"refinement of {ref.kind.value} '{ref.name}' matches no node of the grouping",
                ref.span,
            )
            return
        if target.kind is not self._REFINE_KIND[ref.kind]:
            self.report(
                "REFINE_KIND_MISMATCH",
                f"'{ref.name}' is a {target.kind.value}, not a {ref.kind.value}",
                ref.span,
                target.span,
            )
            return
        if ref.default is not None:
            if target.kind is NodeKind.LEAF:
                try:
                    validate_default(ref.default, target.type)
                except YangTypeError as exc:
                    self.report_default_error(exc, ref)
                    return
            elif not self._check_choice_default(target, ref.default, ref):
                return
            target.default = ref.default
        target.musts = target.musts + [m.condition for m in ref.musts]
        for attr in ("presence", "mandatory", "min_elements", "max_elements", "description", "reference"):
            value = getattr(ref, attr)
            if value is not None:
                setattr(target, attr, value)
        if ref.config is not None:
            target.config = ref.config
        for nested in ref.refinements:
            self._refine(nested, target)

    # -- augment

    def _run_pending(self) -> None:
        while self._pending:
            item = self._pending.pop(0)
            self.apply_augment(item.augment, item.scope, item.context, item.module)

    def apply_augment(
        self,
        aug: n.Augment,
        scope: Scope,
        context: Optional[SchemaNode] = None,
        module: Optional[str] = None,
    ) -> bool:
        """Graft the payload of ``aug`` onto its target node.

        Top-level augments (``context`` is the module root or None) resolve
        their target from the root; nested ones relative to ``context``.
        Returns True when the payload was attached.
        """
        ctx = scope.ctx
        module = module or ctx.module
        try:
            path = SchemaNodeId.parse(aug.target)
        except ValueError as exc:
            self.report("AUGMENT_TARGET_NOT_FOUND", str(exc), aug.span)
            return False
        for prefix, _ in path.steps:
            if prefix is not None and prefix in ctx.prefixes:
                other = ctx.prefixes[prefix]
                if other != ctx.module and other in self.registry.specs:
                    self.module_tree(other)
        if context is not None and context.kind is NodeKind.MODULE:
            context = None
        try:
            target = resolve_schema_node(path, context, self.tree, ctx.prefixes, module)
        except PathError as exc:
            self.report("AUGMENT_TARGET_NOT_FOUND", f"augment target '{aug.target}': {exc}", aug.span)
            return False

        problem = self._payload_problem(aug, target)
        if problem:
            self.report("AUGMENT_PAYLOAD_MISMATCH", f"augment '{aug.target}': {problem}", aug.span)
            return False

        holder = SchemaNode(target.name, target.kind, module, stmt=target.stmt, parent=target.parent, config=target.config)
        if target.kind is NodeKind.CHOICE:
            for arm in list(aug.cases) + list(aug.datadefs):
                case = self._build_case(arm, scope, holder)
                if case is not None:
                    self._attach(holder, case)
        elif target.kind is NodeKind.RPC:
            for io, kind in ((aug.input, NodeKind.INPUT), (aug.output, NodeKind.OUTPUT)):
                if io is not None:
                    self._build_io(io, kind, scope, holder)
            self._build_datadefs(aug.datadefs, scope, holder)
        else:
            self._build_datadefs(aug.datadefs, scope, holder)

        for node in holder.children:
            existing = target.child(node.name)
            if existing is not None:
                self.report(
                    "AUGMENT_NAME_COLLISION",
                    f"augment '{aug.target}' adds '{node.name}', which already exists there",
                    node.span,
                    existing.span,
                )
                return False
        for pending in self._pending:
            if pending.context is holder:
                pending.context = target
        for node in holder.children:
            node.parent = target
            target.children.append(node)
            if target.module != module and not self._quiet:
                self._post_roots.append(node)
        return True

    @staticmethod
    def _payload_problem(aug: n.Augment, target: SchemaNode) -> Optional[str]:
        if target.kind in _TERMINAL:
            return f"target {target.kind.value} '{target.name}' cannot have children"
        if aug.cases and target.kind is not NodeKind.CHOICE:
            return f"case statements can only augment a choice (target is {target.kind.value} '{target.name}')"
        if (aug.input or aug.output) and target.kind is not NodeKind.RPC:
            return f"input/output can only augment an rpc (target is {target.kind.value} '{target.name}')"
        if target.kind is NodeKind.RPC:
            for io in (aug.input, aug.output):
                if io is not None and target.child(io.name) is not None:
                    return f"rpc already has an {io.name}"
        if target.kind is NodeKind.CHOICE:
            bad = next((d for d in aug.datadefs if not isinstance(d, _SHORT_CASE)), None)
            if bad is not None:
                return f"'{bad.keyword}' cannot be a case of choice '{target.name}'"
        return None

    # -- list keys, unique, keyref

    def _post_checks(self, root: SchemaNode) -> None:
        self._check_keys_and_uniques(root)
        for node in root.walk():
            if node.kind in (NodeKind.LEAF, NodeKind.LEAF_LIST) and node.type is not None:
                if node.type.base.family == "keyref":
                    self.bag.extend(check_keyref(node, self.tree, self._prefixes_for(node)) if not self._quiet else [])

    def _check_keys_and_uniques(self, root: SchemaNode) -> None:
        if self._quiet:
            return
        for node in root.walk():
            if node.kind is NodeKind.LIST:
                self.bag.extend(check_list_keys(node, self.tree))
                self.bag.extend(check_unique(node, self.tree))

    def _prefixes_for(self, node: SchemaNode) -> dict[str, str]:
        spec_file = node.stmt.span.file
        for name, spec in self.registry.specs.items():
            if spec.file == spec_file:
                return self.registry.prefix_tables.get(name, {})
        return {}

    # -- extensions

    def _check_extension_uses(self, spec: n.Specification) -> None:
        ctx = self.context(spec.name)
        for stmt in n.iter_statements(spec):
            for use in stmt.extension_uses:
                self._check_extension_use(use, ctx)

    def _check_extension_use(self, use: n.ExtensionUse, ctx: ModuleContext) -> None:
        try:
            other = ctx.foreign(use.keyword_prefix)
        except YangTypeError as exc:
            self.report(
                "UNKNOWN_EXTENSION",
                f"extension '{use.keyword}' cannot be resolved: {exc.message}",
                use.span,
            )
            return
        owner = other or ctx
        ext = owner.extensions.get(use.keyword_name)
        if ext is None:
            self.report(
                "UNKNOWN_EXTENSION",
                f"extension '{use.keyword_name}' is not declared in module '{owner.module}'",
                use.span,
            )
            return
        if ext.argument is not None and use.argument is None:
            self.report("EXTENSION_ARGUMENT", f"extension '{use.keyword}' requires argument '{ext.argument.name}'", use.span)
        elif ext.argument is None and use.argument is not None:
            self.report("EXTENSION_ARGUMENT", f"extension '{use.keyword}' takes no argument", use.span)


def _key_span(node: SchemaNode) -> SourceSpan:
    raw_key = node.stmt.raw.find("key") if node.stmt is not None else None
    return raw_key.span if raw_key is not None else node.span


def check_list_keys(node: SchemaNode, tree: SchemaTree) -> list[Diagnostic]:
    """Each key component must name a distinct direct leaf child of the list."""
    diags = []
    seen: set[str] = set()
    span = _key_span(node)
    for name in node.key_names:
        if name in seen:
            diags.append(error("DUP_KEY_COMPONENT", f"key of list '{node.name}' names '{name}' twice", span))
            continue
        seen.add(name)
        child = node.child(name)
        if child is None:
            diags.append(error("KEY_LEAF_NOT_FOUND", f"key '{name}' of list '{node.name}' is not a child of the list", span))
        elif child.kind is not NodeKind.LEAF:
            diags.append(
                error("KEY_LEAF_NOT_FOUND", f"key '{name}' of list '{node.name}' is a {child.kind.value}, not a leaf", span)
            )
    return diags


def check_unique(node: SchemaNode, tree: SchemaTree) -> list[Diagnostic]:
    """Each unique component must be a distinct leaf beneath the list."""
    diags = []
    stmt = node.stmt
    for unique in getattr(stmt, "uniques", []):
        seen: set[str] = set()
        for component in unique.argument.split():
            if component in seen:
                diags.append(
                    error("DUP_UNIQUE_COMPONENT", f"unique of list '{node.name}' names '{component}' twice", unique.span)
                )
                continue
            seen.add(component)
            try:
                path = SchemaNodeId.parse(component)
                if path.absolute:
                    raise ValueError("unique components must be descendant paths")
                target = resolve_schema_node(path, node, tree, module=node.module)
            except (ValueError, PathError) as exc:
                diags.append(
                    error("UNIQUE_NOT_FOUND", f"unique component '{component}' of list '{node.name}': {exc}", unique.span)
                )
                continue
            if target.kind is not NodeKind.LEAF:
                diags.append(
                    error(
                        "UNIQUE_NOT_LEAF",
                        f"unique component '{component}' of list '{node.name}' is a {target.kind.value}, not a leaf",
                        unique.span,
                    )
                )
    return diags


_PREDICATE_RE = re.compile(r"\[[^\]]*\]")


def check_keyref(node: SchemaNode, tree: SchemaTree, prefixes: dict[str, str]) -> list[Diagnostic]:
    """The keyref path of a leaf must reach a key leaf of some list."""
    text = node.type.space.path
    restriction = node.type.space.path
    span = node.span
    try:
        target = _follow_keyref(_PREDICATE_RE.sub("", text), node, tree, prefixes)
    except (ValueError, PathError) as exc:
        return [error("KEYREF_TARGET_INVALID", f"keyref path '{restriction}' of '{node.name}': {exc}", span)]
    owner = target.data_parent()
    if target.kind is not NodeKind.LEAF or owner is None or owner.kind is not NodeKind.LIST or target.name not in owner.key_names:
        return [
            error(
                "KEYREF_TARGET_INVALID",
                f"keyref path '{restriction}' of '{node.name}' reaches {target.kind.value} '{target.name}', "
                "which is not a list key leaf",
                span,
            )
        ]
    return []


def _follow_keyref(path: str, node: SchemaNode, tree: SchemaTree, prefixes: dict[str, str]) -> SchemaNode:
    path = path.strip()
    if path.startswith("/"):
        return resolve_schema_node(SchemaNodeId.parse(path), None, tree, prefixes, node.module)
    parts = [p.strip() for p in path.split("/")]
    current = node
    while parts and parts[0] in ("..", "."):
        if parts.pop(0) == "..":
            current = current.data_parent()
            if current is None or current.kind is NodeKind.MODULE and parts and parts[0] == "..":
                raise ValueError("path climbs above the module root")
    if not parts:
        return current
    rel = SchemaNodeId.parse("/".join(parts))
    if current.kind is NodeKind.MODULE:
        return resolve_schema_node(SchemaNodeId(rel.steps, True), None, tree, prefixes, node.module)
    return resolve_schema_node(rel, current, tree, prefixes, node.module)


def check(spec: n.Specification, registry: ModuleRegistry) -> CheckResult:
    """Semantically check ``spec``; returns its diagnostics and schema tree."""
    if spec.name not in registry.specs:
        registry.specs[spec.name] = spec
    return Checker(registry).check(spec)
