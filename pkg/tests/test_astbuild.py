import pytest
from hypothesis import given, settings, strategies as st

from yangc import nodes as n
from yangc.astbuild import ALL_KEYWORDS, build
from yangc.syntax import RawStatement, to_yang

from conftest import built, codes, header, module, raw_of


def one_body(source):
    spec, diags = built(module(source))
    assert codes(diags) == [], diags
    (body,) = spec.bodies
    return body


def test_counter32_typedef():
    td = one_body(
        """
        typedef counter32 {
          type uint32;
          description "The counter32 type represents...";
          reference "RFC 2578 (STD 58)";
        }
        """
    )
    assert isinstance(td, n.Typedef)
    assert (td.name, td.type.name) == ("counter32", "uint32")
    assert td.description == "The counter32 type represents..."
    assert td.reference == "RFC 2578 (STD 58)"


def test_duplicate_contact_keeps_first():
    spec, diags = built(module('contact "first";\ncontact "second";'))
    assert codes(diags) == ["DUP_SUBSTATEMENT"]
    assert spec.metas.contact == "first"
    assert diags[0].span.start_line == 4


def test_interfaces_list():
    lst = one_body(
        """
        list interfaces {
          key index;
          leaf index { type int8; }
          leaf name { type string; }
          leaf type { type string; }
          leaf speed { type int64; }
        }
        """
    )
    assert lst.key == "index" and lst.key_names == ["index"]
    assert [d.name for d in lst.datadefs] == ["index", "name", "type", "speed"]
    assert all(isinstance(d, n.Leaf) for d in lst.datadefs)


def test_module_header_and_linkages():
    spec, diags = built(
        """
        module router {
          namespace "urn:madynes:xml:ns:yang:router";
          prefix router;
          yang-version 1;
          import yang-types { prefix yang; }
          include routing-policies;
          revision 2008-01-01 { description "first"; }
        }
        """
    )
    assert codes(diags) == []
    assert spec.is_module and spec.namespace == "urn:madynes:xml:ns:yang:router"
    assert spec.prefix == "router" and spec.header.yang_version == "1"
    assert [(i.module_name, i.prefix) for i in spec.imports] == [("yang-types", "yang")]
    assert [i.submodule_name for i in spec.includes] == ["routing-policies"]
    assert [(r.date, r.description) for r in spec.revisions] == [("2008-01-01", "first")]


def test_submodule_header():
    spec, diags = built("submodule routing-policies { belongs-to router ; revision 2008-01-01; }")
    assert codes(diags) == []
    assert not spec.is_module and spec.belongs_to == "router"
    assert spec.prefix is None


def test_missing_revision_is_a_warning():
    spec, diags = built('module m { namespace "urn:m"; prefix m; }')
    assert [(d.code, d.is_error) for d in diags] == [("MISSING_REVISION", False)]


@pytest.mark.parametrize(
    "source, expected",
    [
        ("module m { prefix m; revision 2008-01-01; }", "MISSING_NS_OR_PREFIX"),
        ('module m { namespace "urn:m"; revision 2008-01-01; }', "MISSING_NS_OR_PREFIX"),
        ("submodule s { revision 2008-01-01; }", "MISSING_SUBSTATEMENT"),
    ],
)
def test_header_requirements(source, expected):
    spec, diags = built(source)
    assert spec is not None
    assert codes(diags) == [expected]


@pytest.mark.parametrize(
    "body, expected",
    [
        ("typedef t { units s; }", "MISSING_SUBSTATEMENT"),
        ("leaf l { }", "MISSING_SUBSTATEMENT"),
        ("list l { key k; }", "LIST_WITHOUT_DATADEF"),
        ("container c { frobnicate x; }", "UNKNOWN_KEYWORD"),
        ("container c { key k; }", "MISPLACED_SUBSTATEMENT"),
        ("container c { config yes; }", "BAD_ARGUMENT"),
        ("container c { presence maybe; }", "BAD_ARGUMENT"),
        ("leaf-list l { type int8; min-elements -1; }", "BAD_ARGUMENT"),
        ("leaf-list l { type int8; max-elements 0; }", "BAD_ARGUMENT"),
        ("list l { ordered-by random; leaf x { type int8; } }", "BAD_ARGUMENT"),
        ("container c { status gone; }", "BAD_ARGUMENT"),
        ("leaf l { type enumeration { enum a; range 1; } }", "MISPLACED_SUBSTATEMENT"),
        ("leaf l { type int8 { range 1; range 2; } }", "DUP_SUBSTATEMENT"),
        ("augment /x { description d; }", "MISSING_SUBSTATEMENT"),
        ("rpc r { input x { } }", "BAD_ARGUMENT"),
        ("extension e { argument a { yin-element perhaps; } }", "BAD_ARGUMENT"),
        ("choice c { case k { choice inner { } } }", "MISPLACED_SUBSTATEMENT"),
        ("container c { uses g { leaf x { mandatory true; } } }", "MISPLACED_SUBSTATEMENT"),
    ],
)
def test_structural_errors(body, expected):
    spec, diags = built(module(body))
    assert codes(diags) == [expected]


def test_faulty_block_is_skipped_and_siblings_kept():
    spec, diags = built(module("typedef broken { units s; }\nleaf ok { type int8; }\nlist empty { }"))
    assert codes(diags) == ["MISSING_SUBSTATEMENT", "LIST_WITHOUT_DATADEF"]
    assert [b.name for b in spec.bodies] == ["ok"]


def test_bits_width_becomes_restriction():
    leaf = one_body("leaf ip { type bits (32); }")
    assert leaf.type.name == "bits"
    assert (leaf.type.restriction.kind, leaf.type.restriction.argument) == ("bit-width", "32")


def test_choice_arms_and_short_cases():
    choice = one_body(
        """
        choice transport {
          default tcp;
          case tcp { leaf port { type uint16; } }
          leaf udp { type empty; }
          container sctp { }
        }
        """
    )
    assert [type(a).__name__ for a in choice.arms] == ["Case", "Leaf", "Container"]
    assert choice.default == "tcp"


def test_uses_refinements_nest():
    uses = one_body(
        """
        uses g {
          container outer {
            presence true;
            leaf inner { default 3; must "x"; }
          }
        }
        """
    )
    (outer,) = uses.refinements
    assert (outer.kind, outer.name, outer.presence) == (n.RefineKind.CONTAINER, "outer", True)
    (inner,) = outer.refinements
    assert (inner.kind, inner.default, [m.condition for m in inner.musts]) == (n.RefineKind.LEAF, "3", ["x"])


def test_rpc_and_notification():
    spec, diags = built(
        module(
            """
            rpc activate-software-image {
              input { leaf image-name { type string; } }
              output { leaf status { type string; } }
            }
            notification link-failure {
              description "A link failure has been detected";
              leaf if-index { type int32 { range "1 .. max"; } }
            }
            """
        )
    )
    assert codes(diags) == []
    rpc, notif = spec.bodies
    assert rpc.input.name == "input" and [d.name for d in rpc.input.datadefs] == ["image-name"]
    assert [d.name for d in rpc.output.datadefs] == ["status"]
    assert notif.datadefs[0].type.restriction.argument == "1 .. max"


def test_extension_and_use():
    spec, diags = built(
        module(
            """
            extension c-define {
              description "Takes as argument a name string.";
              argument "name";
            }
            container c { t:c-define "MY_INTERFACES"; }
            """
        )
    )
    assert codes(diags) == []
    ext, container = spec.bodies
    assert ext.argument.name == "name" and ext.argument.yin_element is None
    (use,) = container.extension_uses
    assert (use.keyword_prefix, use.keyword_name, use.argument) == ("t", "c-define", "MY_INTERFACES")


def test_extension_use_inside_simple_statement_is_kept():
    spec, _ = built(module('leaf l { type int8; description "d" { t:note x; } }'))
    assert [u.keyword for u in spec.bodies[0].extension_uses] == ["t:note"]


def test_body_order_is_preserved():
    names = ["z", "a", "m", "b"]
    spec, _ = built(module("\n".join(f"leaf {x} {{ type int8; }}" for x in names)))
    assert [b.name for b in spec.bodies] == names


def test_iter_statements_reaches_nested_nodes():
    spec, _ = built(module("container c { list l { key k; leaf k { type int8; } } }"))
    kinds = [type(s).__name__ for s in n.iter_statements(spec)]
    assert kinds[:2] == ["Specification", "ModuleHeader"]
    assert kinds.index("Container") < kinds.index("ListNode") < kinds.index("Leaf") < kinds.index("TypeSpec")


# -- properties

# (parent statement text with {} placeholder, repeated keyword, argument)
_AT_MOST_ONCE = [
    ("container c {{ {} }}", "description", "d"),
    ("container c {{ {} }}", "presence", "true"),
    ("container c {{ {} }}", "config", "false"),
    ("leaf l {{ type int8; {} }}", "units", "u"),
    ("leaf l {{ type int8; {} }}", "default", "1"),
    ("leaf l {{ type int8; {} }}", "mandatory", "true"),
    ("leaf-list l {{ type int8; {} }}", "max-elements", "unbounded"),
    ("list l {{ leaf k {{ type int8; }} {} }}", "key", "k"),
    ("list l {{ leaf k {{ type int8; }} {} }}", "ordered-by", "user"),
    ("typedef t {{ type int8; {} }}", "reference", "r"),
    ("choice c {{ {} }}", "default", "x"),
    ("anyxml a {{ {} }}", "status", "current"),
    ("extension e {{ {} }}", "argument", "a"),
    ("{}", "organization", "o"),
    ("{}", "contact", "c"),
]


@settings(max_examples=60)
@given(st.sampled_from(_AT_MOST_ONCE), st.integers(2, 6))
def test_n_duplicates_give_n_minus_one_diagnostics(case, count):
    parent, keyword, arg = case
    subs = " ".join(f'{keyword} "{arg}";' for _ in range(count))
    spec, diags = built(module(parent.format(subs)))
    assert codes(diags) == ["DUP_SUBSTATEMENT"] * (count - 1)
    if parent != "{}":
        assert len(spec.bodies) == 1


_keywords = st.sampled_from(sorted(ALL_KEYWORDS - {"module", "submodule"}) + ["x:ext", "bogus"])
_args = st.one_of(st.none(), st.sampled_from(["a", "1", "true", "x:y", "1..2", "/a/b", ""]))


def _stmts(depth):
    base = st.builds(RawStatement, _keywords, _args)
    if depth == 0:
        return base
    return st.one_of(base, st.builds(RawStatement, _keywords, _args, st.lists(_stmts(depth - 1), max_size=3)))


@settings(max_examples=200)
@given(st.sampled_from(["module", "submodule"]), st.lists(_stmts(3), max_size=5))
def test_build_never_aborts(top, children):
    raw = raw_of(to_yang(RawStatement(top, "m", children)))
    spec, diags = build(raw)
    assert isinstance(spec, n.Specification)
    assert all(d.span.file == "t.yang" for d in diags)
