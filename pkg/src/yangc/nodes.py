"""Typed AST for YANG modules and submodules.

Every node keeps the :class:`~yangc.syntax.RawStatement` it was built
from (``raw``), which supplies source spans for diagnostics. Optional
single-valued substatements default to ``None``; repeated ones are lists.
"""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .lexing import SourceSpan
from .syntax import RawStatement


@dataclass(kw_only=True, eq=False)
class Statement:
    raw: RawStatement = field(repr=False)
    extension_uses: list["ExtensionUse"] = field(default_factory=list, repr=False)

    @property
    def span(self) -> SourceSpan:
        return self.raw.span

    @property
    def keyword(self) -> str:
        return self.raw.keyword


@dataclass(kw_only=True, eq=False)
class Documented(Statement):
    status: Optional[str] = None
    description: Optional[str] = None
    reference: Optional[str] = None


@dataclass(kw_only=True, eq=False)
class ExtensionUse(Statement):
    """A prefixed statement such as ``myext:c-define "MY_INTERFACES";``."""

    keyword_prefix: str
    keyword_name: str
    argument: Optional[str] = None

    @property
    def children(self) -> list[RawStatement]:
        return self.raw.children


@dataclass(kw_only=True, eq=False)
class Import(Statement):
    module_name: str
    prefix: str


@dataclass(kw_only=True, eq=False)
class Include(Statement):
    submodule_name: str


@dataclass(kw_only=True, eq=False)
class Revision(Statement):
    date: str
    description: Optional[str] = None


@dataclass(kw_only=True, eq=False)
class ArgumentDecl(Statement):
    name: str
    yin_element: Optional[bool] = None


@dataclass(kw_only=True, eq=False)
class Extension(Documented):
    name: str
    argument: Optional[ArgumentDecl] = None


@dataclass(kw_only=True, eq=False)
class EnumSpec(Documented):
    name: str
    value: Optional[int] = None


@dataclass(kw_only=True, eq=False)
class RestrictionStmt(Statement):
    """``range``, ``length``, ``pattern`` or ``path`` under a type, or the
    ``(N)`` width of ``bits (N)`` (kind ``bit-width``)."""

    kind: str
    argument: str
    error_message: Optional[str] = None
    error_app_tag: Optional[str] = None
    description: Optional[str] = None
    reference: Optional[str] = None


@dataclass(kw_only=True, eq=False)
class TypeSpec(Statement):
    name: str
    enums: list[EnumSpec] = field(default_factory=list)
    restriction: Optional[RestrictionStmt] = None

    @property
    def prefix(self) -> Optional[str]:
        head, sep, _ = self.name.partition(":")
        return head if sep else None

    @property
    def local_name(self) -> str:
        return self.name.rpartition(":")[2]


@dataclass(kw_only=True, eq=False)
class Typedef(Documented):
    name: str
    type: TypeSpec
    units: Optional[str] = None
    default: Optional[str] = None


@dataclass(kw_only=True, eq=False)
class Must(Statement):
    condition: str
    error_message: Optional[str] = None
    error_app_tag: Optional[str] = None
    description: Optional[str] = None
    reference: Optional[str] = None


@dataclass(kw_only=True, eq=False)
class Definitions(Documented):
    """Statements that may hold local typedefs, groupings and data nodes."""

    typedefs: list[Typedef] = field(default_factory=list)
    groupings: list["Grouping"] = field(default_factory=list)
    datadefs: list["DataDef"] = field(default_factory=list)


@dataclass(kw_only=True, eq=False)
class Grouping(Definitions):
    name: str


@dataclass(kw_only=True, eq=False)
class Container(Definitions):
    name: str
    musts: list[Must] = field(default_factory=list)
    presence: Optional[bool] = None
    config: Optional[bool] = None


@dataclass(kw_only=True, eq=False)
class Leaf(Documented):
    name: str
    type: TypeSpec
    musts: list[Must] = field(default_factory=list)
    units: Optional[str] = None
    default: Optional[str] = None
    config: Optional[bool] = None
    mandatory: Optional[bool] = None


@dataclass(kw_only=True, eq=False)
class LeafList(Documented):
    name: str
    type: TypeSpec
    musts: list[Must] = field(default_factory=list)
    units: Optional[str] = None
    default: Optional[str] = None
    config: Optional[bool] = None
    min_elements: Optional[int] = None
    max_elements: Optional[Union[int, str]] = None
    mandatory: Optional[bool] = None


@dataclass(kw_only=True, eq=False)
class ListNode(Definitions):
    name: str
    musts: list[Must] = field(default_factory=list)
    uniques: list["Unique"] = field(default_factory=list)
    key: Optional[str] = None
    config: Optional[bool] = None
    min_elements: Optional[int] = None
    max_elements: Optional[Union[int, str]] = None
    ordered_by: Optional[str] = None

    @property
    def key_names(self) -> list[str]:
        return self.key.split() if self.key else []


@dataclass(kw_only=True, eq=False)
class Unique(Statement):
    argument: str


@dataclass(kw_only=True, eq=False)
class AnyXml(Documented):
    name: str
    config: Optional[bool] = None
    mandatory: Optional[bool] = None


@dataclass(kw_only=True, eq=False)
class Case(Documented):
    name: str
    datadefs: list["DataDef"] = field(default_factory=list)


# A short case is a bare container, leaf, leaf-list, list or anyxml
# directly under a choice.
ShortCase = Union[Container, Leaf, LeafList, ListNode, AnyXml]
CaseArm = Union[Case, Container, Leaf, LeafList, ListNode, AnyXml]


@dataclass(kw_only=True, eq=False)
class Choice(Documented):
    name: str
    arms: list[CaseArm] = field(default_factory=list)
    default: Optional[str] = None
    mandatory: Optional[bool] = None


class RefineKind(enum.Enum):
    CONTAINER = "container"
    LEAF = "leaf"
    LEAF_LIST = "leaf-list"
    LIST = "list"
    CHOICE = "choice"
    CASE = "case"
    ANYXML = "anyxml"


@dataclass(kw_only=True, eq=False)
class Refinement(Statement):
    """Overlay for one node copied out of a grouping.

    Which fields may be set depends on ``kind``; the builder enforces that.
    Container, list and choice refinements nest further refinements.
    """

    kind: RefineKind
    name: str
    musts: list[Must] = field(default_factory=list)
    refinements: list["Refinement"] = field(default_factory=list)
    presence: Optional[bool] = None
    config: Optional[bool] = None
    default: Optional[str] = None
    mandatory: Optional[bool] = None
    min_elements: Optional[int] = None
    max_elements: Optional[Union[int, str]] = None
    description: Optional[str] = None
    reference: Optional[str] = None


@dataclass(kw_only=True, eq=False)
class Uses(Documented):
    grouping: str
    refinements: list[Refinement] = field(default_factory=list)


@dataclass(kw_only=True, eq=False)
class IOBlock(Definitions):
    """``input`` or ``output`` of an rpc; same payload shape as a container."""

    @property
    def name(self) -> str:
        return self.raw.keyword


@dataclass(kw_only=True, eq=False)
class Augment(Documented):
    target: str
    datadefs: list["DataDef"] = field(default_factory=list)
    cases: list[Case] = field(default_factory=list)
    input: Optional[IOBlock] = None
    output: Optional[IOBlock] = None
    when: Optional[str] = None


@dataclass(kw_only=True, eq=False)
class Rpc(Definitions):
    name: str
    input: Optional[IOBlock] = None
    output: Optional[IOBlock] = None


@dataclass(kw_only=True, eq=False)
class Notification(Definitions):
    name: str


DataDef = Union[Container, Leaf, LeafList, ListNode, Choice, AnyXml, Uses, Augment]
Body = Union[Extension, Typedef, Grouping, DataDef, Rpc, Notification]
Linkage = Union[Import, Include]


class SpecKind(enum.Enum):
    MODULE = "module"
    SUBMODULE = "submodule"


@dataclass(kw_only=True, eq=False)
class ModuleHeader(Statement):
    namespace: Optional[str] = None
    prefix: Optional[str] = None
    yang_version: Optional[str] = None


@dataclass(kw_only=True, eq=False)
class SubmoduleHeader(Statement):
    belongs_to: Optional[str] = None
    belongs_to_prefix: Optional[str] = None
    yang_version: Optional[str] = None


@dataclass(kw_only=True, eq=False)
class Meta:
    organization: Optional[str] = None
    contact: Optional[str] = None
    description: Optional[str] = None
    reference: Optional[str] = None


@dataclass(kw_only=True, eq=False)
class Specification(Statement):
    kind: SpecKind
    name: str
    header: Union[ModuleHeader, SubmoduleHeader]
    metas: Meta = field(default_factory=Meta)
    linkages: list[Linkage] = field(default_factory=list)
    revisions: list[Revision] = field(default_factory=list)
    bodies: list[Body] = field(default_factory=list)
    file: str = "<string>"

    @property
    def is_module(self) -> bool:
        return self.kind is SpecKind.MODULE

    @property
    def prefix(self) -> Optional[str]:
        return self.header.prefix if isinstance(self.header, ModuleHeader) else None

    @property
    def namespace(self) -> Optional[str]:
        return self.header.namespace if isinstance(self.header, ModuleHeader) else None

    @property
    def belongs_to(self) -> Optional[str]:
        return self.header.belongs_to if isinstance(self.header, SubmoduleHeader) else None

    @property
    def imports(self) -> list[Import]:
        return [l for l in self.linkages if isinstance(l, Import)]

    @property
    def includes(self) -> list[Include]:
        return [l for l in self.linkages if isinstance(l, Include)]

    def bodies_of(self, cls) -> list:
        return [b for b in self.bodies if isinstance(b, cls)]


def iter_statements(node: Statement) -> Iterator[Statement]:
    """Yield ``node`` and every typed statement beneath it, depth first."""
    yield node
    for f in dataclasses.fields(node):
        if f.name == "raw":
            continue
        value = getattr(node, f.name)
        if isinstance(value, Statement):
            yield from iter_statements(value)
        elif isinstance(value, list):
            for item in value:
                if isinstance(item, Statement):
                    yield from iter_statements(item)
