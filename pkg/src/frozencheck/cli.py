"""frozencheck command line: lint, classify, run, and ast.

Exit codes:
  0  success; no error-severity diagnostics
  1  lint found error-severity diagnostics
  2  usage, config, lex, parse, or model failure
  3  runtime fault during `run` (fault on stderr, e.g. "FrozenError: ...")
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from . import __version__
from .config import Config, ConfigError, load_config
from .lexer import LexError, tokenize
from .model import ModelError, ProgramAnalysis, build_model
from .nodes import Node, Program
from .parser import ParseFailure, parse_program
from .patterns import classify_program
from .render import (
    build_json_document,
    render_classifications_text,
    render_diagnostics_text,
    render_json,
)
from .rules import Severity, lint

EXIT_OK = 0
EXIT_LINT_ERRORS = 1
EXIT_INPUT_ERROR = 2
EXIT_RUNTIME_FAULT = 3


class _InputError(Exception):
    """Anything that maps to exit code 2."""


def _build_argparser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frozencheck",
        description="Lint, classify, and execute MiniRuby programs against "
        "object-immutability patterns.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_analysis_command(name: str, help_text: str) -> argparse.ArgumentParser:
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("files", nargs="+", metavar="FILE")
        cmd.add_argument("--config", metavar="PATH", help="config file path")
        cmd.add_argument("--format", choices=("text", "json"), dest="format")
        cmd.add_argument(
            "--immutable-by-default",
            action="store_true",
            default=None,
            help="treat every class not on the allow list as a lint finding "
            "unless it matches an immutable pattern",
        )
        return cmd

    add_analysis_command("lint", "report immutability defects")
    add_analysis_command("classify", "report the pattern each class matches")

    run_cmd = sub.add_parser("run", help="execute a program")
    run_cmd.add_argument("file", metavar="FILE")

    ast_cmd = sub.add_parser("ast", help="dump the parsed syntax tree")
    ast_cmd.add_argument("file", metavar="FILE")
    return parser


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _parse_file(path: str) -> Program:
    source = _read_file(path)
    try:
        return parse_program(tokenize(source, path))
    except LexError as exc:
        raise _InputError(f"{exc.span}: error: {exc.message}") from exc
    except ParseFailure as exc:
        lines = [f"{err.span}: error: {err.message}" for err in exc.errors]
        raise _InputError("\n".join(lines)) from exc


def _load_effective_config(args: argparse.Namespace) -> Config:
    config = load_config(args.config)
    return config.with_overrides(
        immutable_by_default=args.immutable_by_default,
        format=args.format,
    )


def _cmd_analysis(args: argparse.Namespace, out, err) -> int:
    try:
        config = _load_effective_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=err)
        return EXIT_INPUT_ERROR

    diagnostics = []
    classifications = []
    failures: list[str] = []
    for path in args.files:
        try:
            tree = _parse_file(path)
            graph = build_model(tree)
        except _InputError as exc:
            failures.append(str(exc))
            continue
        except ModelError as exc:
            failures.append(f"{path}: error: {exc}")
            continue
        analysis = ProgramAnalysis(graph)
        if args.command == "lint":
            diagnostics.extend(lint(graph, config, analysis))
        else:
            classifications.extend(
                (path, result) for result in classify_program(graph, analysis)
            )

    for failure in failures:
        print(failure, file=err)

    if config.format == "json":
        out.write(render_json(build_json_document(diagnostics, classifications)))
    elif args.command == "lint":
        out.write(render_diagnostics_text(diagnostics))
    else:
        out.write(render_classifications_text(classifications))

    if failures:
        return EXIT_INPUT_ERROR
    if any(d.severity is Severity.ERROR for d in diagnostics):
        return EXIT_LINT_ERRORS
    return EXIT_OK


def _cmd_run(args: argparse.Namespace, out, err) -> int:
    from .runtime import evaluate

    tree = _parse_file(args.file)
    result = evaluate(tree)
    for line in result.stdout_lines:
        out.write(line + "\n")
    if result.error is not None:
        location = f" at {result.error.span}" if result.error.span else ""
        print(f"{result.error.kind.value}: {result.error.message}{location}", file=err)
        return EXIT_RUNTIME_FAULT
    return EXIT_OK


def _cmd_ast(args: argparse.Namespace, out, err) -> int:
    tree = _parse_file(args.file)
    out.write(dump_tree(tree))
    return EXIT_OK


def dump_tree(tree: Program) -> str:
    lines: list[str] = []

    def emit(node: Node, depth: int) -> None:
        pad = "  " * depth
        label = type(node).__name__.lower()
        detail = _node_detail(node)
        span = node.span
        where = f"{span.start_line}:{span.start_col}..{span.end_line}:{span.end_col}"
        lines.append(f"{pad}{label}{detail} [{where}]")
        from .nodes import child_nodes

        for child in child_nodes(node):
            emit(child, depth + 1)

    emit(tree, 0)
    return "\n".join(lines) + "\n"


def _node_detail(node: Node) -> str:
    parts = []
    for field in dataclasses.fields(node):
        if field.name == "span":
            continue
        value = getattr(node, field.name)
        if isinstance(value, (str, int, bool)) or value is None:
            parts.append(f"{field.name}={value!r}")
        elif hasattr(value, "value") and not isinstance(value, Node):
            parts.append(f"{field.name}={value.value}")
        elif isinstance(value, list) and value and all(
            isinstance(v, str) for v in value
        ):
            parts.append(f"{field.name}={value!r}")
    return " " + " ".join(parts) if parts else ""


def main(argv: list[str] | None = None) -> int:
    parser = _build_argparser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, matching our contract; --version
        # and --help exit 0.
        return int(exc.code or 0)

    out = sys.stdout
    err = sys.stderr
    try:
        if args.command in ("lint", "classify"):
            return _cmd_analysis(args, out, err)
        if args.command == "run":
            return _cmd_run(args, out, err)
        return _cmd_ast(args, out, err)
    except _InputError as exc:
        print(exc, file=err)
        return EXIT_INPUT_ERROR
