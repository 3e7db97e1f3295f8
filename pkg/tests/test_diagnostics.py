import json

import pytest
from hypothesis import given, strategies as st

from yangc.diagnostics import CODES, Diagnostic, DiagnosticBag, Severity, error, has_errors, render, warning
from yangc.lexing import SourceSpan


def at(line, col, file="router.yang"):
    return SourceSpan.point(file, line, col)


def test_human_format():
    out = render([error("DUP_PREFIX", "prefix 'x' is already bound", at(3, 3))])
    assert out == "router.yang:3:3: error[DUP_PREFIX]: prefix 'x' is already bound\n"


def test_empty():
    assert render([]) == "" and render([], "machine") == ""


def test_mixed_severities_in_source_order():
    diags = [error("UNKNOWN_TYPE", "b", at(9, 1)), warning("MISSING_REVISION", "a", at(1, 1))]
    assert render(diags).splitlines() == [
        "router.yang:1:1: warning[MISSING_REVISION]: a",
        "router.yang:9:1: error[UNKNOWN_TYPE]: b",
    ]
    assert has_errors(diags) and not has_errors(diags[1:])


def test_machine_format_fields():
    (line,) = render([error("KEY_LEAF_NOT_FOUND", "m", at(4, 5))], "machine").splitlines()
    assert json.loads(line) == {
        "file": "router.yang",
        "line": 4,
        "col": 5,
        "severity": "error",
        "code": "KEY_LEAF_NOT_FOUND",
        "message": "m",
    }


def test_unknown_format():
    with pytest.raises(ValueError):
        render([], "xml")


def test_closed_code_set():
    with pytest.raises(ValueError):
        Diagnostic(Severity.ERROR, "MADE_UP", "m", at(1, 1))
    assert "DUP_PREFIX" in CODES and "MISSING_REVISION" in CODES


def test_bag_keeps_order_and_drops_exact_repeats():
    bag = DiagnosticBag()
    a, b = error("UNKNOWN_TYPE", "x", at(5, 1)), error("UNKNOWN_TYPE", "y", at(2, 1))
    bag.extend([a, b, a])
    assert bag.to_list() == [a, b] and len(bag) == 2


_codes = st.sampled_from(sorted(CODES))
_span = st.builds(at, st.integers(1, 50), st.integers(1, 80), st.sampled_from(["a.yang", "b.yang"]))


@given(st.lists(st.tuples(_span, _codes), unique=True, max_size=20))
def test_rendering_is_injective(items):
    diags = [error(code, "same message", span) for span, code in items]
    lines = render(diags).splitlines()
    assert len(lines) == len(set(lines)) == len(diags)
