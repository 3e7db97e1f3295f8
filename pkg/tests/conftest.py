from __future__ import annotations

import textwrap
from pathlib import Path

import pytest

from yangc.astbuild import build
from yangc.lexing import tokenize
from yangc.pipeline import compile_source
from yangc.syntax import parse

FIXTURES = Path(__file__).parent / "fixtures"
ROUTER = FIXTURES / "router"
NEGATIVE = FIXTURES / "negative"


def header(name: str = "t", prefix: str = "t") -> str:
    return f'namespace "urn:test:{name}"; prefix {prefix}; revision 2008-01-01;'


def module(body: str, name: str = "t", prefix: str = "t") -> str:
    """Wrap ``body`` in a minimal module with namespace, prefix and revision."""
    return f"module {name} {{\n  {header(name, prefix)}\n{textwrap.dedent(body)}\n}}\n"


def raw_of(source: str):
    return parse(tokenize(source, "t.yang"), "t.yang")


def built(source: str):
    return build(raw_of(source))


def compiled(source: str, paths=(".",)):
    return compile_source(textwrap.dedent(source), "t.yang", list(paths))


def codes(diags) -> list[str]:
    return [d.code for d in diags if d.is_error]


@pytest.fixture
def write_tree(tmp_path):
    """Write ``{relative path: text}`` under tmp_path and return tmp_path."""

    def write(files: dict[str, str]) -> Path:
        for rel, text in files.items():
            target = tmp_path / rel
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(textwrap.dedent(text), encoding="utf-8")
        return tmp_path

    return write


# criterion number -> (title, passed); filled by test_acceptance.
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number} ({title}): {'PASS' if passed else 'FAIL'}")
