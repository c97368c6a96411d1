"""Published record lengths and comparison of new results against them."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .lattice import Box
from .tour import cells_for_length, coverage_of


@dataclass(frozen=True)
class RecordEntry:
    dims: tuple[int, int, int]
    length: int
    closed: bool
    source: str

    def __post_init__(self) -> None:
        if tuple(sorted(self.dims)) != tuple(self.dims):
            raise ValueError(f"record dims must be sorted ascending, got {self.dims}")
        if self.length < 0:
            raise ValueError("record length must be non-negative")

    @property
    def box(self) -> Box:
        return Box(*self.dims)

    def coverage(self) -> tuple[Fraction, int]:
        return coverage_of(cells_for_length(self.length, self.closed), self.box)


_BUILTIN = (
    RecordEntry((2, 2, 3), 4, True, "published"),
    RecordEntry((2, 3, 3), 8, True, "published"),
    RecordEntry((2, 4, 4), 14, False, "published"),
    RecordEntry((3, 3, 4), 20, False, "published"),
    RecordEntry((3, 4, 4), 27, False, "published"),
    RecordEntry((3, 3, 3), 15, False, "published"),
    RecordEntry((4, 4, 4), 46, False, "published"),
    RecordEntry((5, 5, 5), 88, False, "published"),
    RecordEntry((6, 6, 6), 159, False, "published"),
    RecordEntry((7, 7, 7), 258, False, "published"),
    RecordEntry((8, 8, 8), 395, False, "published"),
)


def builtin_records() -> list[RecordEntry]:
    return list(_BUILTIN)


def lookup(
    dims: Sequence[int], closed: bool, registry: Optional[Iterable[RecordEntry]] = None
) -> Optional[RecordEntry]:
    """Record for a box shape in any axis order, or ``None``."""
    key = tuple(sorted(dims))
    for entry in builtin_records() if registry is None else registry:
        if entry.dims == key and entry.closed == closed:
            return entry
    return None


def record_length(dims: Sequence[int], closed: bool) -> Optional[int]:
    entry = lookup(dims, closed)
    return entry.length if entry else None


class Status(enum.Enum):
    BELOW = "below"
    MATCHES = "matches"
    IMPROVES = "improves"
    UNLISTED = "unlisted"


@dataclass(frozen=True)
class Comparison:
    status: Status
    delta: int = 0
    record: Optional[RecordEntry] = None

    def __str__(self) -> str:
        if self.status in (Status.BELOW, Status.IMPROVES):
            return f"{self.status.value}({self.delta})"
        return self.status.value


def compare_length(
    dims: Sequence[int], length: int, closed: bool,
    registry: Optional[Iterable[RecordEntry]] = None,
) -> Comparison:
    entry = lookup(dims, closed, registry)
    if entry is None:
        return Comparison(Status.UNLISTED)
    if length < entry.length:
        return Comparison(Status.BELOW, entry.length - length, entry)
    if length > entry.length:
        return Comparison(Status.IMPROVES, length - entry.length, entry)
    return Comparison(Status.MATCHES, 0, entry)


def compare(result, registry: Optional[Iterable[RecordEntry]] = None) -> Comparison:
    """Compare a search result (or a bare tour) with the registry."""
    tour = getattr(result, "best", result)
    return compare_length(tour.box.dims, tour.length, tour.closed, registry)
