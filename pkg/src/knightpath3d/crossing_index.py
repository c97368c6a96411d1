"""Bucketed broad phase for "does this segment hit anything already laid down?".

Each committed segment is filed under every lattice point (i, j, k) inside its
closed bounding box.  Two closed integer boxes that intersect always share
such a lattice point (take the larger of the lower corners), so a query only
needs the buckets of its own bounding box.  A knight segment's box spans
extents {0, 1, 2}, i.e. at most 1 * 2 * 3 = 6 buckets.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product
from typing import Optional

from .geometry import Segment, Vec, segments_conflict
from .lattice import Box


def bucket_keys(seg: Segment) -> list[Vec]:
    lo, hi = seg.bbox()
    return list(product(*(range(lo[i], hi[i] + 1) for i in range(3))))


class CrossingIndex:
    """Committed segments of a path under construction, removable LIFO only."""

    def __init__(self, box: Box):
        self.box = box
        self.segments: list[Segment] = []
        self._keys: list[list[Vec]] = []
        self._buckets: dict[Vec, list[int]] = defaultdict(list)

    def __len__(self) -> int:
        return len(self.segments)

    def insert(self, seg: Segment) -> int:
        if not (self.box.contains(seg.a) and self.box.contains(seg.b)):
            raise ValueError(f"segment {seg.a}-{seg.b} leaves box {self.box}")
        sid = len(self.segments)
        keys = bucket_keys(seg)
        for key in keys:
            self._buckets[key].append(sid)
        self.segments.append(seg)
        self._keys.append(keys)
        return sid

    def remove_last(self) -> None:
        if not self.segments:
            raise IndexError("remove_last on an empty CrossingIndex")
        sid = len(self.segments) - 1
        for key in self._keys.pop():
            bucket = self._buckets[key]
            bucket.pop()  # LIFO: sid is always the newest entry
            if not bucket:
                del self._buckets[key]
        self.segments.pop()
        assert sid == len(self.segments)

    def candidates(self, seg: Segment) -> set[int]:
        """Ids of committed segments whose bounding box touches ``seg``'s."""
        found: set[int] = set()
        for key in bucket_keys(seg):
            bucket = self._buckets.get(key)
            if bucket:
                found.update(bucket)
        return found

    def conflicts(self, candidate: Segment, allowed_shared: Optional[Vec] = None) -> bool:
        for sid in sorted(self.candidates(candidate)):
            if segments_conflict(self.segments[sid], candidate, allowed_shared):
                return True
        return False

    def bucket_snapshot(self) -> dict[Vec, tuple[int, ...]]:
        return {k: tuple(v) for k, v in self._buckets.items() if v}

    def copy(self) -> CrossingIndex:
        other = CrossingIndex(self.box)
        for seg in self.segments:
            other.insert(seg)
        return other
