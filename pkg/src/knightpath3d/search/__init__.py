"""Exhaustive and heuristic searches for long non-crossing knight tours."""

from __future__ import annotations

from ..lattice import Box
from .config import GENERATOR_NAME, SearchConfig, SearchResult, StopReason
from .exhaustive import solve_exhaustive, upper_bound
from .graph import KnightGraph, knight_graph
from .heuristic import solve_heuristic

__all__ = [
    "GENERATOR_NAME",
    "KnightGraph",
    "SearchConfig",
    "SearchResult",
    "StopReason",
    "knight_graph",
    "solve",
    "solve_exhaustive",
    "solve_heuristic",
    "upper_bound",
]


def solve(box: Box, config: SearchConfig) -> SearchResult:
    if config.mode == "exhaustive":
        return solve_exhaustive(box, config)
    return solve_heuristic(box, config)
