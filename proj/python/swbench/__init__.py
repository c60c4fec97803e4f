"""Python bindings for the SignWriting composition workbench."""

from ._core import (
    Registry,
    SwbError,
    canonicalize,
    closure,
    describe,
    evaluate,
    match,
    render_svg,
    run_cli,
    validate,
)

__all__ = [
    "Registry",
    "SwbError",
    "canonicalize",
    "closure",
    "describe",
    "evaluate",
    "match",
    "render_svg",
    "run_cli",
    "validate",
]
