"""Knight move graph of a box with a precomputed edge-conflict table.

Search loops never touch geometry: two knight jumps with four distinct
endpoints conflict iff their closed segments share a point, and that is
decided once per box here (broad phase by lattice buckets, narrow phase by
:func:`geometry.classify_intersection`).  Jumps sharing an endpoint never
conflict inside a path, because two distinct knight segments from one cell
meet only at that cell and a knight segment has no lattice point inside it.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache

from ..crossing_index import bucket_keys
from ..geometry import Segment, classify_intersection
from ..lattice import Box, Cell, knight_moves


class KnightGraph:
    """Cells numbered in lexicographic order; edges numbered by first appearance."""

    def __init__(self, box: Box):
        self.box = box
        self.cells: list[Cell] = list(box.cells())
        self.index: dict[Cell, int] = {c: i for i, c in enumerate(self.cells)}
        self.edges: list[tuple[int, int]] = []
        self.edge_id: dict[tuple[int, int], int] = {}
        self.adj: list[list[tuple[int, int]]] = []
        for u, cell in enumerate(self.cells):
            row = []
            for nb in knight_moves(box, cell):
                v = self.index[nb]
                key = (min(u, v), max(u, v))
                eid = self.edge_id.get(key)
                if eid is None:
                    eid = self.edge_id[key] = len(self.edges)
                    self.edges.append(key)
                row.append((v, eid))
            self.adj.append(row)
        self.conflicts: list[tuple[int, ...]] = self._build_conflicts()
        self.conflict_sets: list[frozenset[int]] = [frozenset(c) for c in self.conflicts]

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def segment(self, eid: int) -> Segment:
        u, v = self.edges[eid]
        return Segment(self.cells[u], self.cells[v])

    def edge_between(self, u: int, v: int) -> int | None:
        return self.edge_id.get((min(u, v), max(u, v)))

    def _build_conflicts(self) -> list[tuple[int, ...]]:
        buckets: dict[tuple[int, int, int], list[int]] = defaultdict(list)
        segs = [self.segment(e) for e in range(len(self.edges))]
        for eid, seg in enumerate(segs):
            for key in bucket_keys(seg):
                buckets[key].append(eid)
        pairs: set[tuple[int, int]] = set()
        for members in buckets.values():
            for i, e in enumerate(members):
                for f in members[i + 1 :]:
                    pairs.add((e, f) if e < f else (f, e))
        out: list[list[int]] = [[] for _ in self.edges]
        for e, f in sorted(pairs):
            if set(self.edges[e]) & set(self.edges[f]):
                continue
            if classify_intersection(segs[e], segs[f]):
                out[e].append(f)
                out[f].append(e)
        return [tuple(sorted(c)) for c in out]


@lru_cache(maxsize=32)
def knight_graph(box: Box) -> KnightGraph:
    return KnightGraph(box)


def reachable_count(
    graph: KnightGraph,
    visited: list[bool] | bytearray,
    head: int,
    blocked: list[int] | None = None,
) -> int:
    """Cells reachable from ``head`` through unvisited cells, not counting ``head``.

    With ``blocked`` given, edges with a positive count are skipped as well.
    """
    adj = graph.adj
    seen = {head}
    stack = [head]
    while stack:
        u = stack.pop()
        for v, eid in adj[u]:
            if v in seen or visited[v]:
                continue
            if blocked is not None and blocked[eid]:
                continue
            seen.add(v)
            stack.append(v)
    return len(seen) - 1
