"""Depth-first branch and bound for the longest non-crossing knight path.

Roots are restricted to one start cell per symmetry orbit.  For closed tours
the start is additionally the least cell of the cycle and the cycle is
oriented so that its second cell is less than its last one.  Every image of
a cycle under the box symmetries is a cycle too, and the image minimising
the least cell has a canonical least cell, so no optimum is lost.
"""

from __future__ import annotations

import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Optional

from ..lattice import Box, Cell, canonical_start_cells
from ..tour import Tour, verify
from .config import SearchConfig, SearchResult, StopReason
from .graph import KnightGraph, knight_graph, reachable_count


class _Stop(Exception):
    def __init__(self, reason: StopReason):
        self.reason = reason


def upper_bound(box: Box, visited: Iterable[tuple[int, int, int]], head: tuple[int, int, int]) -> int:
    """Admissible bound on further jumps from ``head``.

    Counts the cells reachable from ``head`` by knight jumps through unvisited
    cells.  Crossings are ignored; they can only remove options.
    """
    graph = knight_graph(box)
    mask = bytearray(graph.n_cells)
    for c in visited:
        mask[graph.index[Cell(*c)]] = 1
    return reachable_count(graph, mask, graph.index[Cell(*head)])


class _Shared:
    """Best length seen by any worker; only ever raised."""

    def __init__(self, value=None):
        self.value = value

    def get(self) -> int:
        return self.value.value if self.value is not None else -1

    def offer(self, length: int) -> None:
        if self.value is None:
            return
        with self.value.get_lock():
            if length > self.value.value:
                self.value.value = length


class BranchAndBound:
    """One search over a list of root work units with a private state."""

    CHECK_EVERY = 2048

    def __init__(
        self,
        graph: KnightGraph,
        closed: bool,
        deadline: Optional[float] = None,
        target: Optional[int] = None,
        prune: bool = True,
        shared: Optional[_Shared] = None,
    ):
        self.graph = graph
        self.closed = closed
        self.deadline = deadline
        self.target = target
        self.prune = prune
        self.shared = shared or _Shared()
        n = graph.n_cells
        self.visited = bytearray(n)
        self.blocked = [0] * graph.n_edges
        self.path: list[int] = []
        self.nodes = 0
        self.best_len = -1
        self.best_path: list[int] = []

    # -- roots -------------------------------------------------------------

    def units(self) -> list[tuple[int, Optional[int]]]:
        """Root work units ``(start, first_move)``; ``None`` means "stay put"."""
        g = self.graph
        out: list[tuple[int, Optional[int]]] = []
        for cell in canonical_start_cells(g.box):
            s = g.index[cell]
            if not self.closed:
                out.append((s, None))
            for v, _ in g.adj[s]:
                if self.closed and v < s:
                    continue
                out.append((s, v))
        return out

    def run(self, units: Iterable[tuple[int, Optional[int]]]) -> None:
        for start, first in units:
            self._run_unit(start, first)

    def _run_unit(self, s: int, first: Optional[int]) -> None:
        g = self.graph
        visited = self.visited
        if self.closed:
            for u in range(s):
                visited[u] = 1
        visited[s] = 1
        self.path = [s]
        try:
            if first is None:
                self._record(0)
            else:
                eid = g.edge_between(s, first)
                self._push(first, eid)
                try:
                    if self.closed:
                        self._dfs_closed(first, s)
                    else:
                        self._dfs_open(first, 1)
                finally:
                    self._pop(first, eid)
        finally:
            for u in range(s + 1 if self.closed else 0):
                visited[u] = 0
            visited[s] = 0
            self.path = []

    # -- state -------------------------------------------------------------

    def _push(self, v: int, eid: int) -> None:
        self.visited[v] = 1
        self.path.append(v)
        blocked = self.blocked
        for f in self.graph.conflicts[eid]:
            blocked[f] += 1

    def _pop(self, v: int, eid: int) -> None:
        blocked = self.blocked
        for f in self.graph.conflicts[eid]:
            blocked[f] -= 1
        self.path.pop()
        self.visited[v] = 0

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes % self.CHECK_EVERY == 0 and self.deadline is not None:
            if time.perf_counter() >= self.deadline:
                raise _Stop(StopReason.TIME_LIMIT)

    def _record(self, length: int) -> None:
        if length > self.best_len:
            self.best_len = length
            self.best_path = list(self.path)
            self.shared.offer(length)
            if self.target is not None and length >= self.target:
                raise _Stop(StopReason.TARGET_REACHED)

    def _incumbent(self) -> int:
        return max(self.best_len, self.shared.get())

    # -- open paths --------------------------------------------------------

    def _dfs_open(self, head: int, length: int) -> None:
        self._tick()
        self._record(length)
        if self.prune:
            bound = reachable_count(self.graph, self.visited, head, self.blocked)
            if length + bound <= self._incumbent():
                return
        visited = self.visited
        blocked = self.blocked
        for v, eid in self.graph.adj[head]:
            if visited[v] or blocked[eid]:
                continue
            self._push(v, eid)
            try:
                self._dfs_open(v, length + 1)
            finally:
                self._pop(v, eid)

    # -- closed tours ------------------------------------------------------

    def _dfs_closed(self, head: int, start: int) -> None:
        self._tick()
        path = self.path
        n = len(path)
        if n >= 3 and path[1] < path[-1]:
            close = self.graph.edge_between(head, start)
            if close is not None and not self.blocked[close]:
                self._record(n)
        if self.prune:
            bound = reachable_count(self.graph, self.visited, head, self.blocked)
            if n + bound <= self._incumbent():
                return
        visited = self.visited
        blocked = self.blocked
        for v, eid in self.graph.adj[head]:
            if visited[v] or blocked[eid]:
                continue
            self._push(v, eid)
            try:
                self._dfs_closed(v, start)
            finally:
                self._pop(v, eid)

    def best_tour(self) -> Tour:
        g = self.graph
        cells = [g.cells[i] for i in self.best_path]
        if self.closed and len(cells) < 3:
            cells = []
        return Tour(g.box, cells, self.closed)


def _certified(tour: Tour) -> Tour:
    report = verify(tour)
    if not report.ok:
        raise RuntimeError(f"search produced an uncertified tour: {report.violations}")
    return tour


def _worker_init(value) -> None:
    global _WORKER_SHARED
    _WORKER_SHARED = _Shared(value)


_WORKER_SHARED: Optional[_Shared] = None


def _worker_run(box: Box, closed: bool, unit, deadline, target):
    bnb = BranchAndBound(knight_graph(box), closed, deadline, target, shared=_WORKER_SHARED)
    reason = StopReason.COMPLETED
    try:
        bnb.run([unit])
    except _Stop as stop:
        reason = stop.reason
    return bnb.best_len, bnb.best_path, bnb.nodes, reason


def solve_exhaustive(box: Box, config: SearchConfig, prune: bool = True) -> SearchResult:
    """Find the longest non-crossing path (or cycle) in ``box``.

    ``optimal`` is set only when the whole reduced space was searched.
    ``prune=False`` switches off the reachability bound (reference runs).
    """
    t0 = time.perf_counter()
    deadline = t0 + config.time_limit if config.time_limit is not None else None
    graph = knight_graph(box)
    bnb = BranchAndBound(graph, config.closed, deadline, config.target_length, prune=prune)
    units = bnb.units()
    reason = StopReason.COMPLETED

    if config.threads > 1 and len(units) > 1:
        ctx = multiprocessing.get_context("spawn")
        best_value = ctx.Value("i", -1)
        with ProcessPoolExecutor(
            max_workers=config.threads, mp_context=ctx,
            initializer=_worker_init, initargs=(best_value,),
        ) as pool:
            futures = [
                pool.submit(_worker_run, box, config.closed, u, deadline, config.target_length)
                for u in units
            ]
            for fut in futures:
                length, path, nodes, why = fut.result()
                bnb.nodes += nodes
                if length > bnb.best_len:
                    bnb.best_len, bnb.best_path = length, path
                if why is not StopReason.COMPLETED and reason is StopReason.COMPLETED:
                    reason = why
    else:
        try:
            bnb.run(units)
        except _Stop as stop:
            reason = stop.reason

    best = _certified(bnb.best_tour())
    return SearchResult(
        best=best,
        optimal=reason is StopReason.COMPLETED,
        nodes_expanded=bnb.nodes,
        restarts_done=0,
        elapsed=time.perf_counter() - t0,
        stopped_by=reason,
        history=[best.length],
    )
