"""frozencheck: immutability-pattern linting and execution for MiniRuby.

The pipeline is tokenize -> parse -> build_model -> classify/lint, with a
tree-walking interpreter (`evaluate`) providing the runtime semantics the
static layer is checked against.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .config import Config, ConfigError, load_config
from .lexer import LexError, Token, TokenKind, tokenize
from .model import (
    AccessorFact,
    ClassGraph,
    ClassInfo,
    ConstructorFacts,
    Exposure,
    MethodInfo,
    ModelError,
    ProgramAnalysis,
    accessor_facts,
    build_model,
    constructor_facts,
)
from .parser import ParseError, ParseFailure, parse_program, parse_source
from .patterns import (
    Pattern,
    PatternClassification,
    classify,
    classify_program,
    explain,
)
from .printer import pretty_print
from .rules import Diagnostic, RULES, Severity, lint
from .runtime import (
    ExecutionResult,
    FaultKind,
    Instance,
    Interpreter,
    RuntimeFault,
    clone_object,
    evaluate,
    freeze_object,
    is_frozen,
    set_ivar,
)


def analyze_source(source: str, file_id: str = "<input>") -> ClassGraph:
    """Parse source and build its class graph."""
    return build_model(parse_source(source, file_id))


def run_source(source: str, file_id: str = "<input>") -> ExecutionResult:
    """Parse and execute source, capturing stdout and the first fault."""
    return evaluate(parse_source(source, file_id))
