"""Solver and verifier for longest non-crossing knight tours in 3D boxes."""

from .geometry import Intersection, IntersectionKind, Segment, classify_intersection, segments_conflict
from .lattice import Box, BoxTransform, Cell, MoveOffset, canonical_start_cells, knight_moves, knight_offsets, symmetries
from .records import Comparison, RecordEntry, Status, builtin_records, compare
from .search import SearchConfig, SearchResult, StopReason, solve, solve_exhaustive, solve_heuristic, upper_bound
from .tour import Tour, VerifyReport, Violation, ViolationKind, coverage, segments_of, verify

__version__ = "0.1.0"
