"""Command-line entry point: ``yangc [-h] [-f format] [-o outputfile] [-p paths] file [file]*``."""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence, TextIO

from .diagnostics import DiagnosticBag, error, has_errors, render
from .lexing import SourceSpan
from .pipeline import compile_source
from .resolver import search_paths as build_search_paths
from .yin import YIN_NAMESPACE, emit_yin

SYNOPTIC = "yangc [-h] [-f format] [-o outputfile] [-p paths] file [file]*"
FORMATS = ("yin",)
YIN_NAMESPACE_VAR = "YANGC_YIN_NAMESPACE"

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2

HELP = f"""usage: {SYNOPTIC}

Check YANG modules and submodules, optionally translating them.

  -h             print this synoptic and exit
  -f format      output format of the translation ({", ".join(FORMATS)})
  -o outputfile  write the translation here (standard output if not given);
                 ignored if no format is given
  -p paths       directories searched for imported and included
                 specifications; entries separated by '{os.pathsep}', may repeat.
                 Searched before ${{YANG_PATH}}, then the current directory.

Diagnostics go to standard error. Exit status: 0 when no errors were found,
1 when some specification is invalid, 2 on usage or I/O errors.
"""


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    input_files: list[str]
    show_help: bool = False
    format: Optional[str] = None
    output_file: Optional[str] = None
    search_paths: list[str] = field(default_factory=list)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit on its own
        raise UsageError(message)


def parse_args(argv: Sequence[str], environ=None) -> CliConfig:
    parser = _Parser(prog="yangc", add_help=False)
    parser.add_argument("-h", action="store_true", dest="show_help")
    parser.add_argument("-f", dest="format")
    parser.add_argument("-o", dest="output_file")
    parser.add_argument("-p", dest="paths", action="append", default=[])
    parser.add_argument("files", nargs="*")
    ns = parser.parse_args(list(argv))
    config = CliConfig(
        input_files=ns.files,
        show_help=ns.show_help,
        format=ns.format,
        output_file=ns.output_file,
        search_paths=build_search_paths(ns.paths, environ),
    )
    if config.show_help:
        return config
    if not config.input_files:
        raise UsageError("no input file")
    if config.format is not None and config.format not in FORMATS:
        raise UsageError(f"unknown format '{config.format}' (known: {', '.join(FORMATS)})")
    if config.format is not None and config.output_file and len(config.input_files) > 1:
        raise UsageError("-o names a single file but several inputs were given")
    return config


def run(argv: Sequence[str], stdout: TextIO = sys.stdout, stderr: TextIO = sys.stderr, environ=None) -> int:
    environ = os.environ if environ is None else environ
    try:
        config = parse_args(argv, environ)
    except UsageError as exc:
        stderr.write(f"usage: {SYNOPTIC}\nyangc: error: {exc}\n")
        return EXIT_USAGE
    if config.show_help:
        stdout.write(HELP)
        return EXIT_OK

    status = EXIT_OK
    documents: list[str] = []
    for path in config.input_files:
        try:
            with open(path, encoding="utf-8") as fh:
                source = fh.read()
        except (OSError, UnicodeDecodeError) as exc:
            reason = exc.strerror if isinstance(exc, OSError) and exc.strerror else str(exc)
            diag = error("FILE_NOT_READABLE", f"cannot read file: {reason}", SourceSpan.point(path))
            stderr.write(render([diag]))
            status = EXIT_USAGE
            continue
        result = compile_source(source, path, config.search_paths)
        bag = DiagnosticBag()
        bag.extend(result.diagnostics)
        stderr.write(render(bag))
        stderr.flush()
        if has_errors(bag) and status == EXIT_OK:
            status = EXIT_INVALID
        if config.format == "yin" and result.spec is not None:
            namespace = environ.get(YIN_NAMESPACE_VAR, YIN_NAMESPACE)
            documents.append(emit_yin(result.spec, result.registry, namespace))

    if documents:
        text = "".join(documents)
        if config.output_file:
            try:
                with open(config.output_file, "w", encoding="utf-8", newline="\n") as fh:
                    fh.write(text)
            except OSError as exc:
                stderr.write(f"yangc: error: cannot write {config.output_file}: {exc.strerror or exc}\n")
                return EXIT_USAGE
        else:
            stdout.write(text)
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
