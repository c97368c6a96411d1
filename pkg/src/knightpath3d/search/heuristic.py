"""Multi-start Warnsdorff-style construction, optionally widened into a beam.

Each restart draws a start cell from the seeded generator and extends the
path one jump at a time.  A candidate jump is scored by its onward degree:
the number of legal non-crossing jumps available from its destination once
it is made.  The smallest positive onward degree wins, dead ends (degree 0)
are taken only when nothing else is left, and ties go to a random draw.
With ``beam_width > 1`` the best ``beam_width`` children of the whole beam
survive each step under the same ranking.
"""

from __future__ import annotations

import multiprocessing
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from ..lattice import Box
from ..tour import Tour, verify
from .config import SearchConfig, SearchResult, StopReason
from .graph import KnightGraph, knight_graph


@dataclass
class _State:
    path: list[int]
    visited: bytearray
    blocked: list[int]

    def child(self, graph: KnightGraph, v: int, eid: int) -> _State:
        blocked = self.blocked[:]
        for f in graph.conflicts[eid]:
            blocked[f] += 1
        visited = bytearray(self.visited)
        visited[v] = 1
        return _State(self.path + [v], visited, blocked)


def _legal(graph: KnightGraph, state: _State) -> list[tuple[int, int]]:
    head = state.path[-1]
    visited, blocked = state.visited, state.blocked
    return [(v, e) for v, e in graph.adj[head] if not visited[v] and not blocked[e]]


def _onward(graph: KnightGraph, state: _State, v: int, eid: int) -> int:
    extra = graph.conflict_sets[eid]
    visited, blocked = state.visited, state.blocked
    return sum(
        1 for w, f in graph.adj[v] if not visited[w] and not blocked[f] and f not in extra
    )


def _closable(graph: KnightGraph, state: _State) -> bool:
    path = state.path
    if len(path) < 3:
        return False
    close = graph.edge_between(path[-1], path[0])
    return close is not None and not state.blocked[close]


def _rank(onward: int, rng: random.Random) -> tuple[bool, int, float]:
    return (onward == 0, onward, rng.random())


class _Construction:
    """One restart: grow from ``start`` and remember the best path or cycle seen."""

    def __init__(self, graph: KnightGraph, closed: bool, beam_width: int, rng: random.Random):
        self.graph = graph
        self.closed = closed
        self.beam_width = beam_width
        self.rng = rng
        self.nodes = 0
        self.best_len = -1
        self.best_path: list[int] = []

    def _offer(self, state: _State) -> None:
        if self.closed:
            if _closable(self.graph, state) and len(state.path) > self.best_len:
                self.best_len = len(state.path)
                self.best_path = list(state.path)
        elif len(state.path) - 1 > self.best_len:
            self.best_len = len(state.path) - 1
            self.best_path = list(state.path)

    def run(self, start: int) -> None:
        g = self.graph
        visited = bytearray(g.n_cells)
        visited[start] = 1
        beam = [_State([start], visited, [0] * g.n_edges)]
        self._offer(beam[0])
        while beam:
            scored = []
            for bi, state in enumerate(beam):
                for v, eid in _legal(g, state):
                    self.nodes += 1
                    scored.append((_rank(_onward(g, state, v, eid), self.rng), bi, v, eid))
            if not scored:
                break
            scored.sort()
            beam = [beam[bi].child(g, v, eid) for _, bi, v, eid in scored[: self.beam_width]]
            for state in beam:
                self._offer(state)


def solve_heuristic(box: Box, config: SearchConfig) -> SearchResult:
    """Best certified tour over ``config.restarts`` seeded constructions.

    Stops early at ``config.target_length`` or ``config.time_limit``.  With
    ``threads == 1`` the result depends only on ``box`` and ``config``
    (unless the time limit cuts the run short).
    """
    if config.threads > 1 and config.restarts > 1:
        return _solve_parallel(box, config)
    t0 = time.perf_counter()
    deadline = t0 + config.time_limit if config.time_limit is not None else None
    graph = knight_graph(box)
    rng = random.Random(config.seed)
    best_len = -1
    best_path: list[int] = []
    history: list[int] = []
    nodes = 0
    restarts = 0
    reason = StopReason.COMPLETED

    for _ in range(config.restarts):
        if deadline is not None and time.perf_counter() >= deadline:
            reason = StopReason.TIME_LIMIT
            break
        start = rng.randrange(graph.n_cells)
        run = _Construction(graph, config.closed, config.beam_width, rng)
        run.run(start)
        nodes += run.nodes
        restarts += 1
        if run.best_len > best_len:
            best_len, best_path = run.best_len, run.best_path
        history.append(max(best_len, 0))
        if config.target_length is not None and best_len >= config.target_length:
            reason = StopReason.TARGET_REACHED
            break

    cells = [graph.cells[i] for i in best_path]
    if config.closed and len(cells) < 3:
        cells = []
    best = Tour(box, cells, config.closed)
    report = verify(best)
    if not report.ok:
        raise RuntimeError(f"heuristic produced an uncertified tour: {report.violations}")
    return SearchResult(
        best=best,
        optimal=False,
        nodes_expanded=nodes,
        restarts_done=restarts,
        elapsed=time.perf_counter() - t0,
        stopped_by=reason,
        history=history,
    )


def _solve_parallel(box: Box, config: SearchConfig) -> SearchResult:
    """Split the restarts into one chunk per worker, each with a derived seed.

    The merge keeps the longest tour, preferring the lowest chunk on ties.
    """
    t0 = time.perf_counter()
    n = min(config.threads, config.restarts)
    seeder = random.Random(config.seed)
    chunks = []
    for i in range(n):
        share = config.restarts // n + (1 if i < config.restarts % n else 0)
        chunks.append(replace(config, threads=1, restarts=share, seed=seeder.getrandbits(63)))
    ctx = multiprocessing.get_context("spawn")
    with ProcessPoolExecutor(max_workers=n, mp_context=ctx) as pool:
        results = list(pool.map(solve_heuristic, [box] * n, chunks))
    best = results[0]
    for r in results[1:]:
        if r.length > best.length:
            best = r
    reasons = {r.stopped_by for r in results}
    reason = StopReason.COMPLETED
    for why in (StopReason.TARGET_REACHED, StopReason.TIME_LIMIT):
        if why in reasons:
            reason = why
            break
    history: list[int] = []
    for r in results:
        for h in r.history:
            history.append(max(h, history[-1]) if history else h)
    return SearchResult(
        best=best.best,
        optimal=False,
        nodes_expanded=sum(r.nodes_expanded for r in results),
        restarts_done=sum(r.restarts_done for r in results),
        elapsed=time.perf_counter() - t0,
        stopped_by=reason,
        history=history,
    )
