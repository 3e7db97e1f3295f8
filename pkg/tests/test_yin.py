from xml.dom import minidom

import pytest
from hypothesis import given, settings, strategies as st

from yangc.astbuild import build
from yangc.resolver import load_file, resolve_linkages
from yangc.syntax import RawStatement, to_yang
from yangc.yin import ARGUMENT_TABLE, YIN_NAMESPACE, emit_yin, extension_styles

from conftest import ROUTER, built, module, raw_of
from yin_reader import read_yin


def yin_of(body, **kw):
    spec, _ = built(module(body, **kw))
    return spec, emit_yin(spec)


def test_prefix_is_a_value_attribute():
    _, text = yin_of("")
    assert '  <prefix value="t"/>\n' in text


def test_description_is_a_text_element():
    _, text = yin_of('description "text";')
    assert "  <description>\n    <text>text</text>\n  </description>\n" in text
    doc = minidom.parseString(text)
    (desc,) = [e for e in doc.documentElement.childNodes if getattr(e, "tagName", None) == "description"]
    assert desc.getElementsByTagName("text")[0].firstChild.data == "text"


def test_minimal_module_has_only_header_children():
    spec, _ = built('module m { namespace "urn:m"; prefix m; }')
    text = emit_yin(spec)
    assert text == (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<module xmlns="{YIN_NAMESPACE}" xmlns:m="urn:m" name="m">\n'
        '  <namespace uri="urn:m"/>\n'
        '  <prefix value="m"/>\n'
        "</module>\n"
    )


def test_namespace_override():
    spec, _ = built('module m { namespace "urn:m"; prefix m; }')
    assert 'xmlns="urn:other"' in emit_yin(spec, yin_namespace="urn:other")


def test_escaping():
    _, text = yin_of("""leaf l { type string; default "<a & 'b'>\\n\\t\\"x\\""; description "1 < 2 & 'q'"; }""")
    assert 'value="&lt;a &amp; &apos;b&apos;&gt;&#10;&#9;&quot;x&quot;"' in text
    assert "<text>1 &lt; 2 &amp; &apos;q&apos;</text>" in text
    assert "CDATA" not in text


def test_extension_argument_attribute_and_element():
    spec, text = yin_of(
        """
        extension attr { argument "name"; }
        extension elem { argument "body" { yin-element true; } }
        container c { t:attr "A"; t:elem "B"; t:unknown "C"; }
        """
    )
    assert '<t:attr name="A"/>' in text
    assert "<t:elem>\n      <t:body>B</t:body>\n    </t:elem>" in text
    assert '<t:unknown value="C"/>' in text


def test_extension_styles_from_registry():
    spec, _ = load_file(ROUTER / "router.yang")
    registry, _ = resolve_linkages(spec, [str(ROUTER)])
    styles = extension_styles(spec, registry)
    assert styles[("myext", "c-define")].name == "name"
    text = emit_yin(spec, registry)
    assert '<myext:c-define name="MY_INTERFACES"/>' in text
    assert 'xmlns:yang="urn:madynes:xml:ns:yang:yang-types"' in text


def test_unresolved_import_gets_placeholder_namespace():
    _, text = yin_of("import lib { prefix l; } container c { zz:thing; }")
    assert 'xmlns:l="urn:yangc:module:lib"' in text and 'xmlns:zz="urn:yangc:prefix:zz"' in text
    minidom.parseString(text)


def test_submodule_root():
    spec, _ = built("submodule s { belongs-to m { prefix mm; } revision 2008-01-01; }")
    text = emit_yin(spec)
    assert "<submodule " in text and '<belongs-to module="m">' in text
    assert read_yin(text) == spec.raw


def test_keyword_table_covers_builder_keywords():
    from yangc.astbuild import ALL_KEYWORDS

    missing = sorted(k for k in ALL_KEYWORDS if k not in ARGUMENT_TABLE)
    assert missing == []


@pytest.mark.parametrize("name", ["router", "yang-types", "routing-policies", "my-extensions"])
def test_router_fixtures_round_trip(name):
    spec, _ = load_file(ROUTER / f"{name}.yang")
    registry, _ = resolve_linkages(spec, [str(ROUTER)])
    text = emit_yin(spec, registry)
    assert text == emit_yin(spec, registry)
    assert read_yin(text, extension_styles(spec, registry)) == spec.raw


_ident = st.from_regex(r"[a-z][a-z0-9\-]{0,6}", fullmatch=True)
_kw = st.sampled_from(sorted(ARGUMENT_TABLE) + ["x:ext", "y:other", "plain"])
_arg = st.one_of(
    st.none(),
    st.text(
        alphabet=st.characters(blacklist_categories=("Cs", "Cc"), blacklist_characters="￾￿"),
        max_size=10,
    ),
    st.sampled_from(["a\nb", " lead", "tab\there", "<&>\"'"]),
)


def _stmts(depth):
    leaf = st.builds(RawStatement, _kw, _arg)
    if depth == 0:
        return leaf
    return st.one_of(leaf, st.builds(RawStatement, _kw, _arg, st.lists(_stmts(depth - 1), max_size=3)))


@settings(max_examples=150)
@given(st.lists(_stmts(2), max_size=4))
def test_round_trip_arbitrary_trees(children):
    tree = RawStatement("module", "m", [RawStatement("namespace", "urn:m"), RawStatement("prefix", "x")] + children)
    spec, _ = build(raw_of(to_yang(tree)))
    text = emit_yin(spec)
    assert read_yin(text, extension_styles(spec)) == spec.raw
