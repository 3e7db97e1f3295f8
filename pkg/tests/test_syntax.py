import pytest
from hypothesis import given, settings, strategies as st

from yangc.diagnostics import YangSyntaxError
from yangc.syntax import RawStatement, parse_text, to_yang


def test_module_header():
    raw = parse_text('module router { namespace "urn:madynes:xml:ns:yang:router"; prefix router; }')
    assert (raw.keyword, raw.argument, len(raw.children)) == ("module", "router", 2)
    assert raw.children[0] == RawStatement("namespace", "urn:madynes:xml:ns:yang:router")


def test_extension_use_parses_like_builtin():
    raw = parse_text('module m { container c { myext:c-define "MY_INTERFACES"; } }')
    use = raw.children[0].children[0]
    assert use == RawStatement("myext:c-define", "MY_INTERFACES")
    assert use.is_extension_use and use.prefix == "myext"


def test_empty_block():
    raw = parse_text("module m { }")
    assert (raw.keyword, raw.argument, raw.children) == ("module", "m", [])


def test_bits_width_joins_argument():
    raw = parse_text("module m { leaf ip { type bits (32); } }")
    assert raw.children[0].children[0].argument == "bits (32)"


def test_number_argument_is_a_string():
    raw = parse_text("module m { leaf l { type int8; default 7; } }")
    assert raw.children[0].children[1].argument == "7"


def test_statement_span_covers_terminator():
    raw = parse_text("module m {\n  prefix p;\n}")
    span = raw.children[0].span
    assert (span.start_line, span.start_col, span.end_line, span.end_col) == (2, 3, 2, 12)


@pytest.mark.parametrize(
    "source, code",
    [
        ("", "NOT_A_MODULE"),
        ("container c { }", "NOT_A_MODULE"),
        ("module a { } module b { }", "MULTIPLE_TOP_LEVEL"),
        ("module a { } }", "UNBALANCED_BRACES"),
        ("module a { leaf x { type int8; }", "UNBALANCED_BRACES"),
        ("module a { prefix p }", "UNEXPECTED_TOKEN"),
        ("module a { ; }", "UNEXPECTED_TOKEN"),
        ("module a { prefix p q; }", "UNEXPECTED_TOKEN"),
        ('module a { "x"; }', "UNEXPECTED_TOKEN"),
        ("module a { prefix p;", "UNBALANCED_BRACES"),
    ],
)
def test_syntax_errors(source, code):
    with pytest.raises(YangSyntaxError) as info:
        parse_text(source)
    assert info.value.diagnostic.code == code


def test_first_error_wins():
    with pytest.raises(YangSyntaxError) as info:
        parse_text("module a {\n  prefix p q;\n  }\n}\n")
    assert info.value.diagnostic.span.start_line == 2


def test_walk_and_find():
    raw = parse_text("module m { container c { leaf l { type int8; } } prefix p; }")
    assert [s.keyword for s in raw.walk()] == ["module", "container", "leaf", "type", "prefix"]
    assert raw.find("prefix").argument == "p"
    assert raw.find("nothing") is None


# -- round trip

_ident = st.from_regex(r"[a-z][a-z0-9\-]{0,6}", fullmatch=True)
_keyword = st.one_of(_ident, st.tuples(_ident, _ident).map(":".join))
_argument = st.one_of(st.none(), st.text(max_size=12).filter(lambda s: all(ord(c) >= 0x20 or c in "\t\n" for c in s)))


def _statements(depth):
    if depth == 0:
        return st.builds(RawStatement, _keyword, _argument)
    return st.builds(RawStatement, _keyword, _argument, st.lists(_statements(depth - 1), max_size=3))


@settings(max_examples=150)
@given(_ident, st.lists(_statements(2), max_size=4))
def test_to_yang_round_trip(name, children):
    tree = RawStatement("module", name, children)
    assert parse_text(to_yang(tree)) == tree


@given(st.lists(_statements(0), max_size=6))
def test_child_count_matches_statements(children):
    tree = parse_text(to_yang(RawStatement("module", "m", children)))
    assert len(tree.children) == len(children)
    assert all(c.children == [] for c in tree.children)
