"""Recoverable robust shortest path solvers."""

from ._core import (
    Instance,
    RrspError,
    approx,
    evaluate,
    generate,
    lp_text,
    make_instance,
    solve,
)

__all__ = [
    "Instance",
    "RrspError",
    "approx",
    "evaluate",
    "generate",
    "lp_text",
    "make_instance",
    "solve",
]
