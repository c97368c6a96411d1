"""Tours, the all-pairs verifier and coverage statistics."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .geometry import InvalidSegment, Segment, segments_conflict
from .lattice import Box, BoxTransform, Cell, is_knight_step


@dataclass(frozen=True)
class Tour:
    """Ordered cells visited by the knight; ``closed`` adds the jump back to the start.

    Construction does not validate anything: use :func:`verify` for that.
    """

    box: Box
    cells: tuple[Cell, ...]
    closed: bool = False

    def __init__(self, box: Box, cells: Iterable[Sequence[int]], closed: bool = False):
        object.__setattr__(self, "box", box)
        object.__setattr__(self, "cells", tuple(Cell(*c) for c in cells))
        object.__setattr__(self, "closed", bool(closed))

    @property
    def length(self) -> int:
        """Number of jumps."""
        n = len(self.cells)
        if self.closed:
            return n
        return max(n - 1, 0)

    def __len__(self) -> int:
        return len(self.cells)

    def reversed(self) -> Tour:
        return Tour(self.box, self.cells[::-1], self.closed)

    def transformed(self, g: BoxTransform) -> Tour:
        return Tour(self.box, (g(c) for c in self.cells), self.closed)


class ViolationKind(enum.Enum):
    OUT_OF_BOUNDS = "OutOfBounds"
    REPEATED_CELL = "RepeatedCell"
    NOT_KNIGHT_STEP = "NotKnightStep"
    CROSSING = "Crossing"
    CLOSURE_NOT_KNIGHT_STEP = "ClosureNotKnightStep"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    indices: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind.value}({', '.join(map(str, self.indices))})"


@dataclass
class VerifyReport:
    ok: bool
    length: int
    cells_visited: int
    coverage: Fraction
    percent: int
    violations: list[Violation] = field(default_factory=list)

    def kinds(self) -> set[ViolationKind]:
        return {v.kind for v in self.violations}

    def summary(self) -> str:
        status = "ok" if self.ok else "INVALID"
        lines = [
            f"status: {status}",
            f"length: {self.length}",
            f"cells visited: {self.cells_visited}",
            f"coverage: {self.coverage.numerator}/{self.coverage.denominator} ({self.percent}%)",
        ]
        if self.violations:
            lines.append(f"violations: {len(self.violations)}")
            lines.extend(f"  {v}" for v in self.violations)
        return "\n".join(lines)


def round_half_up(value: Fraction) -> int:
    return int((value + Fraction(1, 2)) // 1)


def coverage_of(cells_visited: int, box: Box) -> tuple[Fraction, int]:
    frac = Fraction(cells_visited, box.volume)
    return frac, round_half_up(100 * frac)


def cells_for_length(length: int, closed: bool) -> int:
    """Distinct cells visited by a tour of ``length`` jumps."""
    return length if closed else length + 1


def coverage(tour: Tour) -> tuple[Fraction, int]:
    """Fraction of the box visited and the same as a whole percent (half rounds up)."""
    return coverage_of(cells_for_length(tour.length, tour.closed), tour.box)


def segments_of(tour: Tour) -> list[Segment]:
    """Segments in visit order, including the closing one for closed tours.

    Cells repeated back to back would make a zero-length segment; those raise
    :class:`InvalidSegment`.
    """
    cells = tour.cells
    if len(cells) < 2:
        return []
    segs = [Segment(cells[i], cells[i + 1]) for i in range(len(cells) - 1)]
    if tour.closed:
        segs.append(Segment(cells[-1], cells[0]))
    return segs


def _joints(tour: Tour) -> list[tuple[Cell, Cell]]:
    cells = tour.cells
    pairs = [(cells[i], cells[i + 1]) for i in range(len(cells) - 1)]
    if tour.closed and len(cells) >= 2:
        pairs.append((cells[-1], cells[0]))
    return pairs


def verify(tour: Tour) -> VerifyReport:
    """Check a tour from scratch and report every rule it breaks.

    Checks run in order: bounds, distinct cells, knight steps (closure
    included) and finally every pair of segments for shared points.  The only
    contact allowed is the common cell of two consecutive segments.
    """
    cells = tour.cells
    box = tour.box
    violations: list[Violation] = []

    for i, c in enumerate(cells):
        if not box.contains(c):
            violations.append(Violation(ViolationKind.OUT_OF_BOUNDS, (i,)))

    first_seen: dict[Cell, int] = {}
    for i, c in enumerate(cells):
        if c in first_seen:
            violations.append(Violation(ViolationKind.REPEATED_CELL, (first_seen[c], i)))
        else:
            first_seen[c] = i

    for i in range(len(cells) - 1):
        if not is_knight_step(cells[i], cells[i + 1]):
            violations.append(Violation(ViolationKind.NOT_KNIGHT_STEP, (i, i + 1)))
    if tour.closed and cells and not is_knight_step(cells[-1], cells[0]):
        violations.append(Violation(ViolationKind.CLOSURE_NOT_KNIGHT_STEP, (len(cells) - 1, 0)))

    segs: list[Segment | None] = []
    for a, b in _joints(tour):
        try:
            segs.append(Segment(a, b))
        except InvalidSegment:
            segs.append(None)  # already reported as a repeat / bad step

    m = len(segs)
    for i in range(m):
        s = segs[i]
        if s is None:
            continue
        for j in range(i + 1, m):
            t = segs[j]
            if t is None:
                continue
            shared = None
            if j == i + 1:
                shared = s.b
            elif tour.closed and i == 0 and j == m - 1:
                shared = s.a
            if segments_conflict(s, t, shared):
                violations.append(Violation(ViolationKind.CROSSING, (i, j)))

    frac, pct = coverage(tour)
    return VerifyReport(
        ok=not violations,
        length=tour.length,
        cells_visited=len(cells),
        coverage=frac,
        percent=pct,
        violations=violations,
    )


def is_certified(tour: Tour) -> bool:
    return verify(tour).ok
