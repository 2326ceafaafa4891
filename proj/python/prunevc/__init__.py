"""Incremental pruning of verification conditions."""

from ._prunevc import (
    ConfigError,
    EvalError,
    GraphError,
    ParseError,
    Session,
    Term,
    UniverseTooLarge,
    lcs_length,
    max_weight_matching,
    fuzz,
)

__all__ = [
    "ConfigError",
    "EvalError",
    "GraphError",
    "ParseError",
    "Session",
    "Term",
    "UniverseTooLarge",
    "lcs_length",
    "max_weight_matching",
    "fuzz",
]
